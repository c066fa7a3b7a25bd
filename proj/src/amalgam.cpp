#include "dichotomy/amalgam.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "dichotomy/errors.hpp"

namespace dichotomy {

namespace {

constexpr std::size_t kMaxEnumDim = 20;

std::size_t ipow(std::size_t b, std::size_t e)
{
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

FpVec apply_perm(const Perm& s, const FpVec& v)
{
    FpVec w(v.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) w[s[i]] = v[i];
    return w;
}

bool is_perm(const Perm& s, std::size_t n)
{
    if (s.size() != n) return false;
    std::vector<char> hit(n, 0);
    for (std::size_t x : s) {
        if (x >= n || hit[x]) return false;
        hit[x] = 1;
    }
    return true;
}

// The vector is a representative of its line: first nonzero coordinate equals 1.
bool line_representative(const FpVec& v, std::size_t& support)
{
    support = 0;
    bool first = true;
    for (auto c : v) {
        if (!c) continue;
        if (first && c != 1) return false;
        first = false;
        ++support;
    }
    return support > 0;
}

Subspace symmetric_closure(Subspace W, const std::vector<Perm>& gens)
{
    bool grew = true;
    while (grew) {
        grew = false;
        auto rows = W.basis();
        for (const auto& s : gens)
            for (const auto& r : rows)
                if (W.add(apply_perm(s, r))) grew = true;
    }
    return W;
}

bool same_class_relation(const KStructure& A, const KStructure& B, const std::vector<std::size_t>& f)
{
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t j = i + 1; j < A.dim; ++j)
            if ((A.eclass[i] == A.eclass[j]) != (B.eclass[f[i]] == B.eclass[f[j]])) return false;
    return true;
}

}  // namespace

std::size_t KStructure::class_count() const
{
    std::size_t k = 0;
    for (std::size_t c : eclass) k = std::max(k, c + 1);
    return k;
}

std::vector<std::vector<std::size_t>> KStructure::classes() const
{
    std::vector<std::vector<std::size_t>> out(class_count());
    for (std::size_t i = 0; i < dim; ++i) out[eclass[i]].push_back(i);
    return out;
}

Subspace KStructure::tag(std::size_t n) const { return n < tags.size() ? tags[n] : Subspace(p, dim); }

void KStructure::normalize()
{
    if (eclass.size() != dim) throw ShapeError("class list does not match the dimension");
    std::map<std::size_t, std::size_t> ren;
    for (auto& c : eclass) {
        auto [it, fresh] = ren.try_emplace(c, ren.size());
        c = it->second;
    }
    for (const auto& t : tags)
        if (t.ambient() != dim || t.p() != p) throw ShapeError("tag lives in the wrong space");
    while (!tags.empty() && tags.back().dim() == 0) tags.pop_back();
}

KStructure seed_structure(unsigned p)
{
    KStructure K;
    K.p = p;
    return K;
}

std::vector<FpVec> uncovered_vectors(const KStructure& K)
{
    if (K.dim > kMaxEnumDim) throw GuardError("structure too large to enumerate");
    std::vector<FpVec> out;
    std::size_t total = ipow(K.p, K.dim);
    for (std::size_t x = 1; x < total; ++x) {
        FpVec v = fp_decode(static_cast<std::uint32_t>(x), K.p, K.dim);
        std::size_t support;
        if (!line_representative(v, support) || support < 2) continue;
        bool covered = false;
        for (const auto& t : K.tags)
            if (t.contains(v)) {
                covered = true;
                break;
            }
        if (!covered) out.push_back(std::move(v));
    }
    return out;
}

bool satisfies_phi1(const KStructure& K)
{
    for (const auto& t : K.tags)
        if (!t.axis_free()) return false;
    return uncovered_vectors(K).empty();
}

KStructure substructure(const KStructure& B, const std::vector<std::size_t>& coords)
{
    KStructure A;
    A.p = B.p;
    A.dim = coords.size();
    for (std::size_t c : coords) {
        if (c >= B.dim) throw PreconditionError("substructure coordinate out of range");
        A.eclass.push_back(B.eclass[c]);
    }
    Subspace span = Subspace::coordinate(B.p, B.dim, coords);
    for (const auto& t : B.tags) {
        Subspace m = t.meet(span);
        Subspace r(B.p, A.dim);
        for (const auto& row : m.basis()) {
            FpVec w(A.dim);
            for (std::size_t j = 0; j < A.dim; ++j) w[j] = row[coords[j]];
            r.add(w);
        }
        A.tags.push_back(std::move(r));
    }
    A.normalize();
    return A;
}

bool is_embedding(const KStructure& A, const KStructure& B, const std::vector<std::size_t>& f)
{
    if (A.p != B.p || f.size() != A.dim) return false;
    std::vector<char> hit(B.dim, 0);
    for (std::size_t x : f) {
        if (x >= B.dim || hit[x]) return false;
        hit[x] = 1;
    }
    if (!same_class_relation(A, B, f)) return false;
    Subspace span = Subspace::coordinate(B.p, B.dim, f);
    std::size_t n = std::max(A.tags.size(), B.tags.size());
    for (std::size_t i = 0; i < n; ++i)
        if (!(A.tag(i).image(f, B.dim) == B.tag(i).meet(span))) return false;
    return true;
}

bool is_automorphism(const KStructure& K, const Perm& s)
{
    if (!is_perm(s, K.dim)) return false;
    if (!same_class_relation(K, K, s)) return false;
    for (const auto& t : K.tags)
        if (!(t.image(s, K.dim) == t)) return false;
    return true;
}

std::vector<std::size_t> induced_class_map(const KStructure& A, const KStructure& B,
                                           const std::vector<std::size_t>& f)
{
    std::vector<std::size_t> m(A.class_count(), kUnmatched);
    for (std::size_t i = 0; i < A.dim; ++i) m[A.eclass[i]] = B.eclass[f[i]];
    return m;
}

Residue prime_residue(const FiniteRing& R, const ElemSet& I)
{
    if (!is_maximal_ideal(R, I)) throw PreconditionError("ideal is not maximal");
    Residue res;
    std::size_t q = R.size() / I.size();
    res.p = static_cast<unsigned>(q);
    res.map.assign(R.size(), 0);
    for (Elem r = 0; r < R.size(); ++r) {
        bool found = false;
        for (std::size_t k = 0; k < q && !found; ++k)
            if (contains(I, R.sub(r, R.from_int(static_cast<long long>(k))))) {
                res.map[r] = static_cast<unsigned>(k);
                found = true;
            }
        if (!found) throw PreconditionError("residue field is not a prime field");
    }
    return res;
}

TaggedModule to_tagged_module(const KStructure& K, RingPtr R, const ElemSet& I)
{
    Residue res = prime_residue(*R, I);
    if (res.p != K.p) throw PreconditionError("residue field does not match the structure");
    std::vector<unsigned> orders(K.dim, K.p);
    std::vector<MElem> ga(R->size() * K.dim);
    for (Elem r = 0; r < R->size(); ++r)
        for (std::size_t i = 0; i < K.dim; ++i)
            ga[r * K.dim + i] = static_cast<MElem>(res.map[r] * ipow(K.p, i));
    TaggedModule T{FiniteModule(std::move(R), std::move(orders), std::move(ga)), {}};
    for (const auto& t : K.tags) T.tags.push_back(t.elements());
    return T;
}

std::vector<MElem> basis_elements(const KStructure& K)
{
    std::vector<MElem> X;
    for (std::size_t i = 0; i < K.dim; ++i) X.push_back(static_cast<MElem>(ipow(K.p, i)));
    return X;
}

std::vector<MElem> perm_to_element_map(const KStructure& K, const Perm& s)
{
    std::size_t total = ipow(K.p, K.dim);
    std::vector<MElem> map(total);
    std::vector<std::size_t> w(K.dim);
    for (std::size_t i = 0; i < K.dim; ++i) w[i] = ipow(K.p, s[i]);
    for (std::size_t x = 0; x < total; ++x) {
        std::size_t y = 0, r = x;
        for (std::size_t i = 0; i < K.dim; ++i) {
            y += (r % K.p) * w[i];
            r /= K.p;
        }
        map[x] = static_cast<MElem>(y);
    }
    return map;
}

Partition amalgamate_equivalence(const Partition& J, const Partition& K, const std::vector<std::size_t>& ell)
{
    if (ell.size() != J.size()) throw ShapeError("ell needs one entry per J-class");
    std::map<int, std::size_t> bj, bk;
    for (std::size_t b = 0; b < J.size(); ++b)
        for (int x : J[b])
            if (!bj.emplace(x, b).second) throw ShapeError("J-classes overlap");
    for (std::size_t b = 0; b < K.size(); ++b)
        for (int x : K[b])
            if (!bk.emplace(x, b).second) throw ShapeError("K-classes overlap");
    for (std::size_t v : ell)
        if (v != kUnmatched && v >= K.size()) throw ShapeError("ell points past the K-classes");
    for (auto [x, b] : bj) {
        auto it = bk.find(x);
        if (it != bk.end() && ell[b] != it->second)
            throw PreconditionError("ell is not permissible at point " + std::to_string(x));
    }
    std::vector<int> pts;
    for (auto& [x, b] : bj) pts.push_back(x);
    for (auto& [x, b] : bk)
        if (!bj.count(x)) pts.push_back(x);
    std::sort(pts.begin(), pts.end());
    std::map<int, std::size_t> idx;
    for (std::size_t i = 0; i < pts.size(); ++i) idx[pts[i]] = i;
    std::vector<std::size_t> parent(pts.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    auto unite = [&](int a, int b) { parent[find(idx[a])] = find(idx[b]); };
    for (const auto& blk : J)
        for (int x : blk) unite(x, blk.front());
    for (const auto& blk : K)
        for (int x : blk) unite(x, blk.front());
    for (std::size_t b = 0; b < J.size(); ++b)
        if (ell[b] != kUnmatched && !J[b].empty() && !K[ell[b]].empty()) unite(J[b].front(), K[ell[b]].front());
    auto check_side = [&](const Partition& P, const char* side) {
        for (std::size_t a = 0; a < P.size(); ++a)
            for (std::size_t b = a + 1; b < P.size(); ++b)
                if (!P[a].empty() && !P[b].empty() && find(idx[P[a].front()]) == find(idx[P[b].front()]))
                    throw PreconditionError(std::string("ell merges two ") + side + "-classes");
    };
    check_side(J, "J");
    check_side(K, "K");
    std::map<std::size_t, std::vector<int>> groups;
    for (int x : pts) groups[find(idx[x])].push_back(x);
    Partition out;
    for (auto& [r, blk] : groups) out.push_back(blk);
    std::sort(out.begin(), out.end());
    return out;
}

void repair_tags(KStructure& K, const std::vector<std::vector<std::size_t>>& protect, const RepairOptions& opt)
{
    if (K.dim > kMaxEnumDim) throw GuardError("structure too large to repair");
    for (const auto& s : opt.symmetry) {
        if (!is_perm(s, K.dim)) throw ShapeError("symmetry generator is not a permutation of the coordinates");
        if (!same_class_relation(K, K, s)) throw PreconditionError("symmetry generator breaks the classes");
    }
    std::vector<Subspace> spans;
    for (const auto& P : protect) spans.push_back(Subspace::coordinate(K.p, K.dim, P));
    std::vector<std::vector<Subspace>> seen(spans.size());
    for (std::size_t j = 0; j < spans.size(); ++j)
        for (const auto& t : K.tags) seen[j].push_back(t.meet(spans[j]));
    Subspace zero(K.p, K.dim);
    auto admissible = [&](const Subspace& T, std::size_t n) {
        if (!T.axis_free()) return false;
        for (std::size_t j = 0; j < spans.size(); ++j)
            if (!(T.meet(spans[j]) == (n < seen[j].size() ? seen[j][n] : zero))) return false;
        return true;
    };
    if (!opt.symmetry.empty())
        for (std::size_t n = 0; n < K.tags.size(); ++n) {
            Subspace T = symmetric_closure(K.tags[n], opt.symmetry);
            if (!admissible(T, n)) throw Error("tag " + std::to_string(n) + " has no invariant admissible closure");
            K.tags[n] = T;
        }
    std::size_t total = ipow(K.p, K.dim);
    for (std::size_t x = 1; x < total; ++x) {
        FpVec v = fp_decode(static_cast<std::uint32_t>(x), K.p, K.dim);
        std::size_t support;
        if (!line_representative(v, support) || support < 2) continue;
        bool covered = false;
        for (const auto& t : K.tags)
            if (t.contains(v)) {
                covered = true;
                break;
            }
        if (covered) continue;
        Subspace W = Subspace::span(K.p, K.dim, {v});
        if (!opt.symmetry.empty()) W = symmetric_closure(W, opt.symmetry);
        if (!opt.prefer_extend && admissible(W, K.tags.size())) {
            K.tags.push_back(std::move(W));
            continue;
        }
        bool placed = false;
        for (std::size_t n = 0; n < K.tags.size() && !placed; ++n) {
            Subspace T = K.tags[n].join(W);
            if (admissible(T, n)) {
                K.tags[n] = std::move(T);
                placed = true;
            }
        }
        if (!placed && opt.prefer_extend && admissible(W, K.tags.size())) {
            K.tags.push_back(std::move(W));
            placed = true;
        }
        if (!placed) throw Error("vector " + std::to_string(x) + " cannot be covered by an admissible tag");
    }
    if (!satisfies_phi1(K)) throw Error("tag repair left Phi1 unsatisfied");
}

AmalgamResult tagged_disjoint_amalgamate(const KStructure& M, const KStructure& M0, const std::vector<std::size_t>& i0,
                                         const KStructure& M1, const std::vector<std::size_t>& i1,
                                         std::vector<std::size_t> ell, const RepairOptions& opt)
{
    if (M.p != M0.p || M.p != M1.p) throw PreconditionError("structures over different residue fields");
    if (!is_embedding(M, M0, i0) || !is_embedding(M, M1, i1))
        throw PreconditionError("the common part is not a substructure of both sides");
    if (!satisfies_phi1(M0) || !satisfies_phi1(M1)) throw PreconditionError("amalgamation inputs must satisfy Phi1");

    AmalgamResult out;
    std::size_t d0 = M0.dim;
    out.emb0.resize(d0);
    std::iota(out.emb0.begin(), out.emb0.end(), 0);
    out.emb1.assign(M1.dim, kUnmatched);
    for (std::size_t j = 0; j < M.dim; ++j) out.emb1[i1[j]] = i0[j];
    std::size_t next = d0;
    for (auto& e : out.emb1)
        if (e == kUnmatched) e = next++;

    KStructure& N = out.N;
    N.p = M0.p;
    N.dim = next;

    Partition pj(M1.class_count()), pk(M0.class_count());
    for (std::size_t c = 0; c < M1.dim; ++c) pj[M1.eclass[c]].push_back(static_cast<int>(out.emb1[c]));
    for (std::size_t c = 0; c < d0; ++c) pk[M0.eclass[c]].push_back(static_cast<int>(c));
    if (ell.empty()) {
        ell.assign(M1.class_count(), kUnmatched);
        for (std::size_t j = 0; j < M.dim; ++j) ell[M1.eclass[i1[j]]] = M0.eclass[i0[j]];
    }
    Partition merged = amalgamate_equivalence(pj, pk, ell);
    N.eclass.assign(N.dim, 0);
    for (std::size_t b = 0; b < merged.size(); ++b)
        for (int x : merged[b]) N.eclass[static_cast<std::size_t>(x)] = b;

    std::size_t ntags = std::max(M0.tags.size(), M1.tags.size());
    for (std::size_t n = 0; n < ntags; ++n)
        N.tags.push_back(M0.tag(n).widen(N.dim).join(M1.tag(n).image(out.emb1, N.dim)));
    N.normalize();
    if (!is_embedding(M0, N, out.emb0) || !is_embedding(M1, N, out.emb1))
        throw Error("summed tags do not restrict to the inputs");
    repair_tags(N, {out.emb0, out.emb1}, opt);
    N.normalize();
    return out;
}

KStructure grow(const KStructure& B, const GrowSpec& spec)
{
    KStructure C = B;
    std::size_t next_class = B.class_count();
    for (std::size_t sz : spec.class_sizes) {
        if (sz == 0) throw ShapeError("a new class needs at least one point");
        for (std::size_t i = 0; i < sz; ++i) C.eclass.push_back(next_class);
        C.dim += sz;
        ++next_class;
    }
    if (C.dim == B.dim) throw PreconditionError("grow must add a class");
    for (auto& t : C.tags) t = t.widen(C.dim);
    std::vector<std::size_t> old(B.dim);
    std::iota(old.begin(), old.end(), 0);
    repair_tags(C, {old}, RepairOptions{spec.symmetry, spec.prefer_extend});
    C.normalize();
    return C;
}

std::vector<Constraint> enumerate_constraints(const KStructure& B, std::size_t max_constraints)
{
    if (B.dim > 16) throw GuardError("too many substructures to enumerate");
    std::size_t k = B.class_count();
    if (k > 8) throw GuardError("too many class permutations to enumerate");
    std::vector<Constraint> out;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << B.dim); ++mask) {
        std::vector<std::size_t> S;
        for (std::size_t i = 0; i < B.dim; ++i)
            if (mask >> i & 1) S.push_back(i);
        KStructure A = substructure(B, S);
        std::vector<std::size_t> f(S.size());
        std::vector<char> used(B.dim, 0);
        std::function<void(std::size_t)> rec = [&](std::size_t j) {
            if (j == S.size()) {
                if (!is_embedding(A, B, f)) return;
                std::vector<std::size_t> fe(k, kUnmatched);
                for (std::size_t t = 0; t < S.size(); ++t) fe[B.eclass[S[t]]] = B.eclass[f[t]];
                std::vector<std::size_t> h(k);
                std::iota(h.begin(), h.end(), 0);
                do {
                    bool ext = true;
                    for (std::size_t c = 0; c < k && ext; ++c)
                        if (fe[c] != kUnmatched && h[c] != fe[c]) ext = false;
                    if (!ext) continue;
                    if (out.size() >= max_constraints) throw GuardError("too many bigness constraints");
                    out.push_back({S, f, h});
                } while (std::next_permutation(h.begin(), h.end()));
                return;
            }
            for (std::size_t y = 0; y < B.dim; ++y) {
                if (used[y]) continue;
                bool ok = true;
                for (std::size_t t = 0; t < j && ok; ++t)
                    if ((B.eclass[S[t]] == B.eclass[S[j]]) != (B.eclass[f[t]] == B.eclass[y])) ok = false;
                if (!ok) continue;
                used[y] = 1;
                f[j] = y;
                rec(j + 1);
                used[y] = 0;
            }
        };
        rec(0);
    }
    return out;
}

std::optional<std::vector<std::size_t>> find_extension(const KStructure& B, const KStructure& C,
                                                       const Constraint& c, bool inside_B_only)
{
    std::vector<std::size_t> g(B.dim, kUnmatched);
    std::vector<char> used(C.dim, 0);
    for (std::size_t j = 0; j < c.S.size(); ++j) {
        if (C.eclass[c.f[j]] != c.h[B.eclass[c.S[j]]]) return std::nullopt;
        g[c.S[j]] = c.f[j];
        used[c.f[j]] = 1;
    }
    std::size_t limit = inside_B_only ? B.dim : C.dim;
    std::optional<std::vector<std::size_t>> found;
    std::function<bool(std::size_t)> rec = [&](std::size_t x) {
        while (x < B.dim && g[x] != kUnmatched) ++x;
        if (x == B.dim) {
            if (is_embedding(B, C, g)) {
                found = g;
                return true;
            }
            return false;
        }
        std::size_t target = c.h[B.eclass[x]];
        for (std::size_t y = 0; y < limit; ++y) {
            if (used[y] || C.eclass[y] != target) continue;
            used[y] = 1;
            g[x] = y;
            if (rec(x + 1)) return true;
            g[x] = kUnmatched;
            used[y] = 0;
        }
        return false;
    };
    rec(0);
    return found;
}

bool check_certificate_entry(const KStructure& B, const KStructure& C, const CertificateEntry& e)
{
    std::size_t k = B.class_count();
    if (e.S.size() != e.f.size() || e.h.size() != k || e.g.size() != B.dim) return false;
    if (!is_perm(e.h, k)) return false;
    for (std::size_t x : e.S)
        if (x >= B.dim) return false;
    if (!is_embedding(substructure(B, e.S), B, e.f)) return false;
    if (!is_embedding(B, C, e.g)) return false;
    for (std::size_t j = 0; j < e.S.size(); ++j) {
        if (e.g[e.S[j]] != e.f[j]) return false;
    }
    for (std::size_t x = 0; x < B.dim; ++x)
        if (C.eclass[e.g[x]] != e.h[B.eclass[x]]) return false;
    return true;
}

BigExtension make_big_extension(const KStructure& B, const GrowSpec& spec)
{
    if (!satisfies_phi1(B)) throw PreconditionError("base structure does not satisfy Phi1");
    BigExtension out;
    out.C = grow(B, spec);
    for (const auto& c : enumerate_constraints(B)) {
        auto g = find_extension(B, out.C, c, true);
        if (!g) g = find_extension(B, out.C, c, false);
        if (!g) {
            // glue a copy of B onto C along f[A], sending the classes of the copy along h
            KStructure A = substructure(B, c.S);
            AmalgamResult r = tagged_disjoint_amalgamate(A, out.C, c.f, B, c.S, c.h);
            out.C = std::move(r.N);
            g = r.emb1;
            ++out.amalgamation_steps;
        }
        out.certificate.push_back({c.S, c.f, c.h, *g});
    }
    for (const auto& e : out.certificate)
        if (!check_certificate_entry(B, out.C, e)) throw Error("bigness certificate failed to replay");
    return out;
}

LimitChain build_chain(const KStructure& seed, const std::vector<GrowSpec>& steps)
{
    LimitChain chain;
    chain.stages.push_back(seed);
    for (const auto& s : steps) {
        BigExtension ext = make_big_extension(chain.stages.back(), s);
        chain.stages.push_back(std::move(ext.C));
        chain.certificates.push_back(std::move(ext.certificate));
    }
    return chain;
}

LimitChain standard_chain(unsigned p)
{
    std::vector<GrowSpec> steps{
        {{1, 1}, {{1, 0}}},
        {{1}, {{1, 0, 2}, {1, 2, 0}}},
        {},
    };
    return build_chain(seed_structure(p), steps);
}

bool verify_chain(const LimitChain& chain)
{
    if (chain.stages.empty() || chain.certificates.size() + 1 != chain.stages.size()) return false;
    for (const auto& s : chain.stages)
        if (!satisfies_phi1(s)) return false;
    for (std::size_t k = 0; k + 1 < chain.stages.size(); ++k) {
        const KStructure& B = chain.stages[k];
        const KStructure& C = chain.stages[k + 1];
        std::vector<std::size_t> iota(B.dim);
        std::iota(iota.begin(), iota.end(), 0);
        if (!is_embedding(B, C, iota)) return false;
        if (C.class_count() <= B.class_count()) return false;
        std::set<std::vector<std::vector<std::size_t>>> want, have;
        for (const auto& c : enumerate_constraints(B)) want.insert({c.S, c.f, c.h});
        for (const auto& e : chain.certificates[k]) {
            if (!check_certificate_entry(B, C, e)) return false;
            have.insert({e.S, e.f, e.h});
        }
        if (want != have) return false;
    }
    return true;
}

void for_each_class_automorphism(const KStructure& K, const std::vector<std::size_t>& h,
                                 const std::function<bool(const Perm&)>& visit)
{
    if (!is_perm(h, K.class_count())) throw PreconditionError("h is not a permutation of the classes");
    Perm s(K.dim);
    std::vector<char> used(K.dim, 0);
    std::function<bool(std::size_t)> rec = [&](std::size_t x) {
        if (x == K.dim) return is_automorphism(K, s) && !visit(s);
        for (std::size_t y = 0; y < K.dim; ++y) {
            if (used[y] || K.eclass[y] != h[K.eclass[x]]) continue;
            used[y] = 1;
            s[x] = y;
            if (rec(x + 1)) return true;
            used[y] = 0;
        }
        return false;
    };
    rec(0);
}

Perm lift_permutation(const LimitChain& chain, std::size_t m, const std::vector<std::size_t>& h)
{
    if (m + 1 >= chain.stages.size()) throw BudgetError("chain too short to lift at this stage");
    const KStructure& B = chain.stages[m];
    if (!is_perm(h, B.class_count())) throw PreconditionError("h is not a permutation of the stage classes");
    for (const auto& e : chain.certificates[m]) {
        if (!e.S.empty() || e.h != h) continue;
        for (std::size_t y : e.g)
            if (y >= B.dim) throw BudgetError("back-and-forth does not close inside this stage");
        if (!is_automorphism(B, e.g)) throw Error("certificate map is not an automorphism");
        return e.g;
    }
    throw BudgetError("no certificate entry for this permutation");
}

OrbitStructure cyclic_orbit_structure(std::size_t orbits, unsigned p)
{
    OrbitStructure out;
    out.rotation.resize(3 * orbits);
    for (std::size_t i = 0; i < out.rotation.size(); ++i) out.rotation[i] = i - i % 3 + (i % 3 + 1) % 3;
    GrowSpec spec{std::vector<std::size_t>(3 * orbits, 1), {out.rotation}, true};
    out.K = grow(seed_structure(p), spec);
    return out;
}

}  // namespace dichotomy
