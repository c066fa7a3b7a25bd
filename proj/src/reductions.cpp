#include "dichotomy/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <map>
#include <numeric>
#include <set>

#include "dichotomy/errors.hpp"

namespace dichotomy {

namespace {

TableModule build_tables(RingPtr ring, std::size_t n, const std::function<std::size_t(std::size_t, std::size_t)>& add,
                         const std::function<std::size_t(Elem, std::size_t)>& act)
{
    ModuleTables t;
    t.size = static_cast<std::int64_t>(n);
    t.add.assign(n, std::vector<std::int64_t>(n));
    t.action.assign(ring->size(), std::vector<std::int64_t>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) t.add[a][b] = static_cast<std::int64_t>(add(a, b));
    for (Elem r = 0; r < ring->size(); ++r)
        for (std::size_t a = 0; a < n; ++a) t.action[r][a] = static_cast<std::int64_t>(act(r, a));
    t.zero = 0;
    return module_from_tables(std::move(ring), t);
}

// Ring element -> integer representative for Z/n.
std::vector<long long> integer_values(const FiniteRing& R)
{
    std::vector<long long> v(R.size(), -1);
    for (std::size_t k = 0; k < R.size(); ++k) v[R.from_int(static_cast<long long>(k))] = static_cast<long long>(k);
    return v;
}

unsigned cyclic_modulus(const FiniteRing& R)
{
    if (R.additive_order(R.one()) != R.size())
        throw PreconditionError("free-like reductions need a ring of the form Z/n");
    return static_cast<unsigned>(R.size());
}

long long reduce_int(long long a, unsigned n, bool integral) { return integral ? a : zn_mod(a, n); }

ZnVec to_zn(const IntVec& v, unsigned n)
{
    ZnVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = zn_mod(v[i], n);
    return out;
}

// Whether the square matrix is invertible over Z/n (or Z).
bool invertible(std::vector<IntVec> A, unsigned n, bool integral)
{
    std::size_t s = A.size();
    if (integral) {
        // Bareiss elimination; invertible over Z iff the determinant is a unit.
        std::vector<std::vector<BigInt>> M(s, std::vector<BigInt>(s));
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) M[i][j] = A[i][j];
        BigInt prev = 1;
        int sign = 1;
        for (std::size_t k = 0; k < s; ++k) {
            std::size_t p = k;
            while (p < s && M[p][k] == 0) ++p;
            if (p == s) return false;
            if (p != k) {
                std::swap(M[p], M[k]);
                sign = -sign;
            }
            for (std::size_t i = k + 1; i < s; ++i)
                for (std::size_t j = k + 1; j < s; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
            prev = M[k][k];
        }
        BigInt det = s ? prev * sign : BigInt(1);
        return det == 1 || det == -1;
    }
    for (unsigned p = 2, m = n; m > 1; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        std::vector<std::vector<long long>> B(s, std::vector<long long>(s));
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) B[i][j] = zn_mod(A[i][j], p);
        for (std::size_t k = 0; k < s; ++k) {
            std::size_t q = k;
            while (q < s && B[q][k] == 0) ++q;
            if (q == s) return false;
            std::swap(B[q], B[k]);
            long long inv = 1;
            while (B[k][k] * inv % p != 1) ++inv;
            for (std::size_t i = k + 1; i < s; ++i) {
                long long f = B[i][k] * inv % p;
                if (!f) continue;
                for (std::size_t j = k; j < s; ++j) B[i][j] = zn_mod(B[i][j] - f * B[k][j], p);
            }
        }
    }
    return true;
}

}  // namespace

void validate_endo(const EndoStructure& S)
{
    const auto& V = S.module;
    if (S.T.size() != V.size()) throw ShapeError("endomorphism needs one image per element");
    for (MElem t : S.T)
        if (t >= V.size()) throw ShapeError("endomorphism image out of range");
    for (MElem a = 0; a < V.size(); ++a)
        for (MElem b = 0; b < V.size(); ++b)
            if (S.T[V.add(a, b)] != V.add(S.T[a], S.T[b])) throw AxiomError("endomorphism is not additive");
    for (Elem r = 0; r < V.ring().size(); ++r)
        for (MElem a = 0; a < V.size(); ++a)
            if (S.T[V.act(r, a)] != V.act(r, S.T[a])) throw AxiomError("endomorphism does not commute with the action");
}

std::optional<std::vector<MElem>> endo_isomorphic(const EndoStructure& A, const EndoStructure& B)
{
    if (A.module.size() != B.module.size()) return std::nullopt;
    std::optional<std::vector<MElem>> found;
    for_each_isomorphism(TaggedModule{A.module, {}}, TaggedModule{B.module, {}}, [&](const std::vector<MElem>& f) {
        for (MElem a = 0; a < A.module.size(); ++a)
            if (f[A.T[a]] != B.T[f[a]]) return true;
        found = f;
        return false;
    });
    return found;
}

std::vector<std::vector<MElem>> all_endomorphisms(const FiniteModule& V)
{
    std::size_t k = V.rank();
    double count = std::pow(static_cast<double>(V.size()), static_cast<double>(k));
    if (count > 1e6) throw GuardError("too many candidate endomorphisms");
    std::vector<std::vector<MElem>> out;
    std::vector<MElem> images(k, 0);
    while (true) {
        if (auto f = extend_from_basis(V, V, images)) out.push_back(std::move(*f));
        std::size_t i = k;
        while (i > 0 && images[i - 1] + 1 == V.size()) images[--i] = 0;
        if (i == 0) break;
        ++images[i - 1];
    }
    return out;
}

SubmoduleView submodule_view(const FiniteModule& M, const MSet& S)
{
    if (!is_submodule(M, S)) throw PreconditionError("not a submodule");
    std::vector<std::size_t> index(M.size(), 0);
    for (std::size_t i = 0; i < S.size(); ++i) index[S[i]] = i;
    auto tm = build_tables(
        M.ring_ptr(), S.size(), [&](std::size_t a, std::size_t b) { return index[M.add(S[a], S[b])]; },
        [&](Elem r, std::size_t a) { return index[M.act(r, S[a])]; });
    SubmoduleView v{tm.module, std::vector<MElem>(S.size())};
    for (std::size_t e = 0; e < S.size(); ++e) v.to_ambient[e] = S[static_cast<std::size_t>(tm.elem_to_label[e])];
    return v;
}

QuotientModule quotient_module(const FiniteModule& M, const MSet& S, std::size_t max_size)
{
    MSet J = submodule_generated(M, S);
    std::size_t n = M.size() / J.size();
    if (n > max_size) throw GuardError("quotient module exceeds size bound");
    std::vector<std::size_t> id(M.size(), SIZE_MAX);
    std::vector<MElem> reps;
    for (MElem a = 0; a < M.size(); ++a) {
        if (id[a] != SIZE_MAX) continue;
        for (MElem j : J) id[M.add(a, j)] = reps.size();
        reps.push_back(a);
    }
    auto tm = build_tables(
        M.ring_ptr(), n, [&](std::size_t a, std::size_t b) { return id[M.add(reps[a], reps[b])]; },
        [&](Elem r, std::size_t a) { return id[M.act(r, reps[a])]; });
    QuotientModule q{tm.module, std::vector<MElem>(M.size())};
    for (MElem a = 0; a < M.size(); ++a) q.proj[a] = tm.label_to_elem[id[a]];
    return q;
}

FiniteModule pullback_module(RingPtr R, const ElemSet& I, const FiniteModule& M)
{
    if (!is_ideal(*R, I)) throw PreconditionError("not an ideal");
    Quotient Q = quotient_ring(*R, I);
    if (!(Q.ring == M.ring())) throw PreconditionError("module is not over the quotient ring");
    std::size_t k = M.rank();
    std::vector<MElem> ga(R->size() * k);
    for (Elem r = 0; r < R->size(); ++r)
        for (std::size_t i = 0; i < k; ++i) ga[r * k + i] = M.act(Q.proj[r], M.gen(i));
    return FiniteModule(std::move(R), M.orders(), std::move(ga));
}

TaggedModule endo_to_four_submodules(const EndoStructure& S)
{
    validate_endo(S);
    const auto& V = S.module;
    auto n = static_cast<MElem>(V.size());
    TaggedModule W{FiniteModule::direct_sum(V, V), std::vector<MSet>(4)};
    for (MElem a = 0; a < n; ++a) {
        W.tags[0].push_back(a);
        W.tags[1].push_back(n * a);
        W.tags[2].push_back(a + n * a);
        W.tags[3].push_back(a + n * S.T[a]);
    }
    for (auto& t : W.tags) t = make_set(std::move(t));
    return W;
}

EndoStructure four_submodules_decode(const TaggedModule& W, std::vector<MElem>* to_ambient)
{
    const auto& M = W.module;
    const MSet &U0 = W.tag(0), &U1 = W.tag(1), &U2 = W.tag(2), &U3 = W.tag(3);
    for (std::size_t i = 0; i < 4; ++i)
        if (!is_submodule(M, W.tag(i))) throw DecodeError("tag " + std::to_string(i) + " is not a submodule");
    if (mintersect(U0, U1).size() != 1 || U0.size() * U1.size() != M.size())
        throw DecodeError("U0 + U1 is not a direct sum equal to W");
    if (mintersect(U2, U0).size() != 1 || mintersect(U2, U1).size() != 1 || U2.size() != U0.size() ||
        U2.size() != U1.size())
        throw DecodeError("U2 is not complementary to U0 and U1");
    if (mintersect(U3, U1).size() != 1 || U3.size() != U0.size()) throw DecodeError("U3 is not a graph over U0");
    std::vector<std::pair<MElem, MElem>> parts(M.size());
    for (MElem a : U0)
        for (MElem b : U1) parts[M.add(a, b)] = {a, b};
    std::map<MElem, MElem> phi_inv;
    for (MElem u : U2) phi_inv[parts[u].second] = parts[u].first;
    std::map<MElem, MElem> T;
    for (MElem u : U3) T[parts[u].first] = phi_inv.at(parts[u].second);

    SubmoduleView V = submodule_view(M, U0);
    std::vector<MElem> from_ambient(M.size(), 0);
    for (MElem e = 0; e < V.to_ambient.size(); ++e) from_ambient[V.to_ambient[e]] = e;
    EndoStructure S{V.module, std::vector<MElem>(V.module.size())};
    for (MElem e = 0; e < S.T.size(); ++e) S.T[e] = from_ambient[T.at(V.to_ambient[e])];
    try {
        validate_endo(S);
    } catch (const AxiomError& e) {
        throw DecodeError(std::string("decoded map is not an endomorphism: ") + e.what());
    }
    if (to_ambient) *to_ambient = V.to_ambient;
    return S;
}

EndoStructure endo_from_poly_module(const FiniteModule& M, const PresentedRing::Finite& P)
{
    if (!(M.ring() == P.ring)) throw PreconditionError("module is not over the given polynomial quotient");
    auto n = P.n.convert_to<unsigned>();
    auto base = std::make_shared<const FiniteRing>(zmod(n));
    std::size_t k = M.rank();
    std::vector<MElem> ga(n * k);
    for (unsigned c = 0; c < n; ++c)
        for (std::size_t i = 0; i < k; ++i) ga[base->from_int(c) * k + i] = M.act(P.constants[c], M.gen(i));
    EndoStructure S{FiniteModule(base, M.orders(), std::move(ga)), std::vector<MElem>(M.size())};
    for (MElem a = 0; a < M.size(); ++a) S.T[a] = M.act(P.x, a);
    validate_endo(S);
    return S;
}

FiniteModule poly_module_from_endo(const EndoStructure& S, const PresentedRing& ring, const PresentedRing::Finite& P)
{
    validate_endo(S);
    const auto& V = S.module;
    auto n = P.n.convert_to<unsigned>();
    if (!(V.ring() == zmod(n))) throw PreconditionError("endomorphism structure is not over the base ring");
    auto apply = [&](const std::vector<BigInt>& coeffs, MElem a) {
        MElem acc = 0, power = a;
        for (const auto& c : coeffs) {
            acc = V.add(acc, V.act(V.ring().from_int(static_cast<long long>(mod_floor(c, n))), power));
            power = S.T[power];
        }
        return acc;
    };
    for (MElem a = 0; a < V.size(); ++a)
        if (apply(ring.poly_modulus(), a) != 0) throw PreconditionError("the modulus does not annihilate T");
    std::size_t k = V.rank();
    std::vector<MElem> ga(P.ring.size() * k);
    for (Elem r = 0; r < P.ring.size(); ++r)
        for (std::size_t i = 0; i < k; ++i) ga[r * k + i] = apply(P.elements[r], V.gen(i));
    return FiniteModule(std::make_shared<const FiniteRing>(P.ring), V.orders(), std::move(ga));
}

FreeTagged free_cover(const TaggedModule& M, std::size_t copies, bool integral)
{
    const auto& V = M.module;
    unsigned n = cyclic_modulus(V.ring());
    if (copies < 1) throw PreconditionError("need at least one copy");
    std::size_t m = V.size(), k = m * copies;
    auto e = [&](MElem a, std::size_t j) { return a + m * j; };
    auto values = integer_values(V.ring());
    std::set<IntVec> seen;
    std::vector<IntVec> kernel;
    auto push = [&](IntVec v, std::vector<IntVec>& out) {
        for (auto& x : v) x = reduce_int(x, n, integral);
        if (std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; })) return;
        if (seen.insert(v).second) out.push_back(std::move(v));
    };
    for (std::size_t j = 0; j < copies; ++j) {
        for (MElem a = 0; a < m; ++a)
            for (MElem b = a; b < m; ++b) {
                IntVec v(k, 0);
                ++v[e(a, j)];
                ++v[e(b, j)];
                --v[e(V.add(a, b), j)];
                push(std::move(v), kernel);
            }
        for (Elem r = 0; r < V.ring().size(); ++r) {
            if (values[r] < 2) continue;
            for (MElem a = 0; a < m; ++a) {
                IntVec v(k, 0);
                v[e(a, j)] += values[r];
                --v[e(V.act(r, a), j)];
                push(std::move(v), kernel);
            }
        }
    }
    for (std::size_t j = 1; j < copies; ++j)
        for (MElem a = 0; a < m; ++a) {
            IntVec v(k, 0);
            ++v[e(a, 0)];
            --v[e(a, j)];
            push(std::move(v), kernel);
        }
    FreeTagged F{n, integral, k, {}, {kernel}};
    for (std::size_t j = 0; j < copies; ++j)
        for (MElem a = 0; a < m; ++a) F.basis.push_back(std::to_string(a) + ":" + std::to_string(j));
    for (const auto& tag : M.tags) {
        std::vector<IntVec> gens = kernel;
        for (MElem a : tag) {
            if (a == 0) continue;
            IntVec v(k, 0);
            v[e(a, 0)] = 1;
            gens.push_back(std::move(v));
        }
        F.tags.push_back(std::move(gens));
    }
    return F;
}

FreeLikeTagged freelike_from_free(const FreeTagged& F, std::size_t max_rank)
{
    std::size_t k = F.rank, rank = k;
    for (const auto& t : F.tags) rank += t.size();
    if (rank > max_rank) throw GuardError("free-like rank " + std::to_string(rank) + " exceeds the bound");
    FreeLikeTagged N{F.modulus, F.integral, rank, {}, {}, {}, k};
    for (const auto& b : F.basis) N.basis.push_back("e:" + b);
    std::vector<std::size_t> all(rank);
    std::iota(all.begin(), all.end(), 0);
    std::vector<IntVec> ustar;
    for (std::size_t i = 0; i < k; ++i) {
        IntVec v(rank, 0);
        v[i] = 1;
        ustar.push_back(std::move(v));
    }
    N.tags.push_back(std::move(ustar));
    N.complements.push_back(std::vector<std::size_t>(all.begin() + static_cast<std::ptrdiff_t>(k), all.end()));
    std::size_t next = k;
    for (std::size_t t = 0; t < F.tags.size(); ++t) {
        std::vector<IntVec> u, v;
        std::size_t first = next;
        for (std::size_t i = 0; i < F.tags[t].size(); ++i, ++next) {
            const auto& g = F.tags[t][i];
            if (g.size() != k) throw ShapeError("tag generator has the wrong length");
            N.basis.push_back("d:" + std::to_string(t) + ":" + std::to_string(i));
            IntVec a(rank, 0), b(rank, 0);
            a[next] = 1;
            b[next] = 1;
            for (std::size_t c = 0; c < k; ++c) b[c] = reduce_int(-g[c], F.modulus, F.integral);
            u.push_back(std::move(a));
            v.push_back(std::move(b));
        }
        std::vector<std::size_t> comp;
        for (std::size_t c = 0; c < rank; ++c)
            if (c < first || c >= next) comp.push_back(c);
        N.tags.push_back(std::move(u));
        N.complements.push_back(comp);
        N.tags.push_back(std::move(v));
        N.complements.push_back(std::move(comp));
    }
    return N;
}

FreeLikeTagged freelike_normalize(const TaggedModule& M, std::size_t copies, bool integral, std::size_t max_rank)
{
    if (M.module.size() * copies > max_rank)
        throw GuardError("free cover rank " + std::to_string(M.module.size() * copies) + " exceeds the bound");
    return freelike_from_free(free_cover(M, copies, integral), max_rank);
}

std::optional<std::size_t> freelike_certificate_failure(const FreeLikeTagged& N)
{
    if (N.complements.size() != N.tags.size()) return 0;
    for (std::size_t t = 0; t < N.tags.size(); ++t) {
        std::vector<char> in_comp(N.rank, 0);
        for (auto c : N.complements[t]) {
            if (c >= N.rank || in_comp[c]) return t;
            in_comp[c] = 1;
        }
        std::vector<std::size_t> rest;
        for (std::size_t c = 0; c < N.rank; ++c)
            if (!in_comp[c]) rest.push_back(c);
        if (rest.size() != N.tags[t].size()) return t;
        std::vector<IntVec> A;
        for (const auto& g : N.tags[t]) {
            if (g.size() != N.rank) return t;
            IntVec row;
            for (auto c : rest) row.push_back(g[c]);
            A.push_back(std::move(row));
        }
        if (!invertible(std::move(A), N.modulus, N.integral)) return t;
    }
    return std::nullopt;
}

FreeTagged freelike_to_free(const FreeLikeTagged& N)
{
    unsigned n = N.modulus;
    std::size_t k = N.cover_rank, rank = N.rank;
    if (n < 1 || k > rank || N.basis.size() != rank) throw DecodeError("malformed free-like header");
    if (N.tags.empty() || N.tags.size() % 2 == 0) throw DecodeError("expected U_* followed by pairs U_n, V_n");
    for (const auto& t : N.tags)
        for (const auto& g : t)
            if (g.size() != rank) throw DecodeError("tag generator has the wrong length");
    {
        std::vector<ZnVec> gens;
        for (const auto& g : N.tags[0]) {
            for (std::size_t c = k; c < rank; ++c)
                if (zn_mod(g[c], n)) throw DecodeError("U_* leaves the cover coordinates");
            gens.push_back(to_zn(IntVec(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(k)), n));
        }
        auto L = ZnLattice::span(n, k, gens);
        for (std::size_t i = 0; i < k; ++i) {
            ZnVec e(k, 0);
            e[i] = 1 % n;
            if (!L.contains(e)) throw DecodeError("U_* is not the whole cover");
        }
    }
    FreeTagged F{n, N.integral, k, {}, {}};
    for (std::size_t i = 0; i < k; ++i) {
        const auto& b = N.basis[i];
        F.basis.push_back(b.rfind("e:", 0) == 0 ? b.substr(2) : b);
    }
    std::size_t w1 = rank - k;
    for (std::size_t t = 1; t < N.tags.size(); t += 2) {
        const auto& U = N.tags[t];
        const auto& V = N.tags[t + 1];
        // rows (P v | v restricted to the cover), P the projection off the cover
        std::vector<ZnVec> rows;
        for (const auto& v : V) {
            ZnVec row(rank);
            for (std::size_t c = 0; c < w1; ++c) row[c] = zn_mod(v[k + c], n);
            for (std::size_t c = 0; c < k; ++c) row[w1 + c] = zn_mod(v[c], n);
            rows.push_back(std::move(row));
        }
        auto L = ZnLattice::span(n, rank, rows);
        for (std::size_t i = 0; i < L.rows().size(); ++i)
            if (L.pivot(i) >= w1)
                throw DecodeError("tag " + std::to_string(t + 1) + " meets U_*: the recovered graph is not a function");
        std::vector<IntVec> image;
        for (const auto& b : U) {
            ZnVec w(rank, 0);
            for (std::size_t c = 0; c < w1; ++c) w[c] = zn_mod(b[k + c], n);
            w = L.reduce(std::move(w));
            for (std::size_t c = 0; c < w1; ++c)
                if (w[c]) throw DecodeError("tag " + std::to_string(t) + " is not inside the domain of the graph");
            IntVec c(k);
            for (std::size_t i = 0; i < k; ++i) c[i] = zn_mod(static_cast<long long>(b[i]) + w[w1 + i], n);
            image.push_back(std::move(c));
        }
        F.tags.push_back(std::move(image));
    }
    return F;
}

FreeLikeRecovery free_cover_quotient(const FreeTagged& F, std::size_t max_size)
{
    unsigned n = F.modulus;
    std::size_t k = F.rank;
    if (n < 1 || F.tags.empty()) throw DecodeError("cover without a kernel tag");
    auto convert = [&](const std::vector<IntVec>& gens) {
        std::vector<ZnVec> out;
        for (const auto& g : gens) {
            if (g.size() != k) throw DecodeError("cover generator has the wrong length");
            out.push_back(to_zn(g, n));
        }
        return out;
    };
    auto L = ZnLattice::span(n, k, convert(F.tags[0]));
    std::map<ZnVec, std::size_t> label;
    std::vector<ZnVec> reps{ZnVec(k, 0)};
    label[reps[0]] = 0;
    auto sum = [&](const ZnVec& a, const ZnVec& b, long long s) {
        ZnVec c(k);
        for (std::size_t i = 0; i < k; ++i) c[i] = zn_mod(static_cast<long long>(a[i]) + s * b[i], n);
        return L.reduce(std::move(c));
    };
    std::vector<ZnVec> units(k, ZnVec(k, 0));
    for (std::size_t i = 0; i < k; ++i) units[i][i] = 1 % n;
    for (std::size_t q = 0; q < reps.size(); ++q)
        for (const auto& u : units) {
            ZnVec c = sum(reps[q], u, 1);
            if (label.count(c)) continue;
            if (reps.size() >= max_size) throw GuardError("recovered module exceeds size bound");
            label[c] = reps.size();
            reps.push_back(std::move(c));
        }
    auto ring = std::make_shared<const FiniteRing>(zmod(n));
    auto values = integer_values(*ring);
    ZnVec zero(k, 0);
    auto tm = build_tables(
        ring, reps.size(), [&](std::size_t a, std::size_t b) { return label.at(sum(reps[a], reps[b], 1)); },
        [&](Elem r, std::size_t a) { return label.at(sum(zero, reps[a], values[r])); });
    FreeLikeRecovery out{TaggedModule{tm.module, {}}, {}};
    auto elem_of = [&](const ZnVec& v) { return tm.label_to_elem[label.at(L.reduce(v))]; };
    for (const auto& u : units) out.cover_image.push_back(elem_of(u));
    for (std::size_t t = 1; t < F.tags.size(); ++t) {
        MSet gens;
        for (const auto& g : convert(F.tags[t])) gens.push_back(elem_of(g));
        out.module.tags.push_back(submodule_generated(tm.module, make_set(std::move(gens))));
    }
    return out;
}

FreeLikeRecovery freelike_recover(const FreeLikeTagged& N, std::size_t max_size)
{
    return free_cover_quotient(freelike_to_free(N), max_size);
}

SplitCertificate lemma_split(unsigned n, std::size_t k0, std::size_t k1, const std::vector<ZnVec>& h)
{
    if (h.size() != k0) throw ShapeError("need one image per basis vector of the first summand");
    std::size_t k = k0 + k1;
    SplitCertificate S;
    for (std::size_t i = 0; i < k; ++i) {
        ZnVec f(k, 0), g(k, 0);
        f[i] = g[i] = 1 % n;
        if (i < k0) {
            if (h[i].size() != k1) throw ShapeError("image has the wrong length");
            for (std::size_t c = 0; c < k1; ++c) {
                f[k0 + c] = zn_mod(-static_cast<long long>(h[i][c]), n);
                g[k0 + c] = h[i][c] % n;
            }
            S.complement_basis.push_back(f);
        }
        S.forward.push_back(std::move(f));
        S.inverse.push_back(std::move(g));
    }
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
        ZnVec row(k, 0);
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t c = 0; c < k; ++c)
                row[c] = zn_mod(static_cast<long long>(row[c]) + static_cast<long long>(S.forward[i][j]) * S.inverse[j][c], n);
        for (std::size_t c = 0; c < k; ++c) ok = ok && row[c] == (c == i ? 1 % n : 0);
    }
    auto N = ZnLattice::span(n, k, S.complement_basis);
    std::vector<ZnVec> sum = S.complement_basis;
    for (std::size_t c = 0; c < k1; ++c) {
        ZnVec e(k, 0);
        e[k0 + c] = 1 % n;
        sum.push_back(std::move(e));
    }
    auto L = ZnLattice::span(n, k, sum);
    std::uint64_t full = 1, part = 1;
    for (std::size_t i = 0; i < k; ++i) full *= n;
    for (std::size_t i = 0; i < k0; ++i) part *= n;
    // N + M1 is everything and |N| |M1| = |M|, so the sum is direct
    S.verified = ok && L.size() == full && N.size() == part;
    return S;
}

TheoremBCoded theoremB_code(RingPtr R, Elem x, Elem y, const EndoStructure& S, std::size_t max_w)
{
    if (x >= R->size() || y >= R->size()) throw ShapeError("ring element out of range");
    auto X = ideal_generated(*R, {x}), Y = ideal_generated(*R, {y});
    if (intersect(X, Y).size() != 1) throw PreconditionError("hypothesis (1) fails: (x) and (y) meet");
    ElemSet I = ideal_sum(*R, annihilator(*R, {x}), annihilator(*R, {y}));
    if (contains(I, R->one())) throw PreconditionError("hypothesis (2) fails: 1 is in Ann x + Ann y");
    if (R->mul(x, y) != R->zero() || !contains(I, x) || !contains(I, y))
        throw Error("internal: xy = 0 and x, y in Ann x + Ann y should follow from the hypotheses");
    validate_endo(S);
    FiniteModule VR = pullback_module(R, I, S.module);
    std::size_t v = VR.size();
    double wsize = static_cast<double>(v) * std::pow(static_cast<double>(R->size()), static_cast<double>(v));
    if (wsize > static_cast<double>(max_w)) throw GuardError("W exceeds size bound");

    ModuleTables rt;
    rt.size = static_cast<std::int64_t>(R->size());
    rt.add.assign(R->size(), std::vector<std::int64_t>(R->size()));
    rt.action = rt.add;
    for (Elem a = 0; a < R->size(); ++a)
        for (Elem b = 0; b < R->size(); ++b) {
            rt.add[a][b] = R->add(a, b);
            rt.action[a][b] = R->mul(a, b);
        }
    rt.zero = R->zero();
    TableModule reg = module_from_tables(R, rt);
    FiniteModule W = VR;
    for (std::size_t i = 0; i < v; ++i) W = FiniteModule::direct_sum(W, reg.module);
    auto coord = [&](std::size_t copy, Elem r) {
        std::size_t w = v;
        for (std::size_t i = 0; i < copy; ++i) w *= R->size();
        return static_cast<MElem>(reg.label_to_elem[r] * w);
    };
    MSet gens;
    for (MElem a = 0; a < v; ++a) {
        gens.push_back(W.sub(coord(a, x), a));
        gens.push_back(W.sub(coord(a, y), S.T[a]));
    }
    auto Q = quotient_module(W, make_set(std::move(gens)), W.size());
    TheoremBCoded C{Q.module, std::vector<MElem>(v), I};
    for (MElem a = 0; a < v; ++a) C.pi[a] = Q.proj[a];
    return C;
}

EndoStructure theoremB_decode(const FiniteModule& M, Elem x, Elem y)
{
    const FiniteRing& R = M.ring();
    if (x >= R.size() || y >= R.size()) throw ShapeError("ring element out of range");
    ElemSet I = ideal_sum(R, annihilator(R, {x}), annihilator(R, {y}));
    Quotient Q = quotient_ring(R, I);
    auto Sring = std::make_shared<const FiniteRing>(Q.ring);
    MSet xM;
    for (MElem c = 0; c < M.size(); ++c) xM.push_back(M.act(x, c));
    xM = make_set(std::move(xM));
    std::vector<std::size_t> index(M.size(), SIZE_MAX);
    for (std::size_t i = 0; i < xM.size(); ++i) index[xM[i]] = i;
    auto tm = build_tables(
        Sring, xM.size(), [&](std::size_t a, std::size_t b) { return index[M.add(xM[a], xM[b])]; },
        [&](Elem s, std::size_t a) {
            auto i = index[M.act(Q.lift[s], xM[a])];
            if (i == SIZE_MAX) throw DecodeError("xM is not a submodule");
            return i;
        });
    std::vector<std::set<MElem>> rel(M.size());
    for (MElem c = 0; c < M.size(); ++c) rel[M.act(x, c)].insert(M.act(y, c));
    EndoStructure S{tm.module, std::vector<MElem>(xM.size())};
    for (std::size_t i = 0; i < xM.size(); ++i) {
        const auto& ws = rel[xM[i]];
        if (ws.size() != 1) throw DecodeError("the relation xc = v, yc = w is not a function at an element of xM");
        MElem w = *ws.begin();
        if (index[w] == SIZE_MAX) throw DecodeError("the relation xc = v, yc = w leaves xM");
        S.T[tm.label_to_elem[i]] = tm.label_to_elem[index[w]];
    }
    try {
        validate_endo(S);
    } catch (const AxiomError& e) {
        throw DecodeError(std::string("decoded map is not an endomorphism: ") + e.what());
    }
    return S;
}

bool theoremB_claims_hold(const TheoremBCoded& C, const EndoStructure& S, Elem x, Elem y)
{
    const auto& M = C.module;
    MSet image = make_set(C.pi);
    if (image.size() != C.pi.size()) return false;
    MSet xM;
    for (MElem c = 0; c < M.size(); ++c) xM.push_back(M.act(x, c));
    if (make_set(std::move(xM)) != image) return false;
    std::set<std::pair<MElem, MElem>> rel, graph;
    for (MElem c = 0; c < M.size(); ++c) rel.insert({M.act(x, c), M.act(y, c)});
    for (MElem v = 0; v < S.module.size(); ++v) graph.insert({C.pi[v], C.pi[S.T[v]]});
    std::set<std::pair<MElem, MElem>> restricted;
    for (const auto& p : rel)
        if (mcontains(image, p.second)) restricted.insert(p);
    return restricted == graph && rel.size() == graph.size();
}

}  // namespace dichotomy
