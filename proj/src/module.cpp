#include "dichotomy/module.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_map>

#include "dichotomy/errors.hpp"

namespace dichotomy {

FiniteModule::FiniteModule(RingPtr ring, std::vector<unsigned> orders, std::vector<MElem> gen_action)
    : ring_(std::move(ring)), orders_(std::move(orders)), gen_action_(std::move(gen_action))
{
    if (!ring_) throw ShapeError("module without a ring");
    std::size_t k = orders_.size();
    std::size_t nr = ring_->size();
    size_ = 1;
    for (unsigned o : orders_) {
        if (o < 2) throw ShapeError("cyclic factor order must be at least 2");
        weight_.push_back(size_);
        size_ *= o;
        if (size_ > (std::size_t{1} << 31)) throw GuardError("module carrier too large");
        if (o != 2) all2_ = false;
    }
    if (gen_action_.size() != nr * k) throw ShapeError("generator action table has wrong size");
    for (MElem v : gen_action_)
        if (v >= size_) throw ShapeError("generator action entry out of range");
    for (std::size_t i = 0; i < k; ++i) {
        if (gen_action_[ring_->one() * k + i] != gen(i)) throw AxiomError("1 does not act as identity");
        for (Elem r = 0; r < nr; ++r)
            if (scale(orders_[i], gen_action_[r * k + i]) != 0)
                throw AxiomError("action not compatible with the additive order of a generator");
    }
    for (std::size_t i = 0; i < k; ++i)
        for (Elem r = 0; r < nr; ++r)
            for (Elem s = 0; s < nr; ++s) {
                MElem rs = gen_action_[r * k + i], ss = gen_action_[s * k + i];
                if (gen_action_[ring_->add(r, s) * k + i] != add(rs, ss))
                    throw AxiomError("(r+s)a != ra+sa");
                if (gen_action_[ring_->mul(r, s) * k + i] != act(r, ss)) throw AxiomError("(rs)a != r(sa)");
            }
}

FiniteModule FiniteModule::zero_module(RingPtr ring) { return FiniteModule(std::move(ring), {}, {}); }

FiniteModule FiniteModule::regular(RingPtr ring)
{
    // decompose the additive group of the ring through the table route
    const FiniteRing& R = *ring;
    ModuleTables t;
    t.size = static_cast<std::int64_t>(R.size());
    t.add.assign(R.size(), std::vector<std::int64_t>(R.size()));
    t.action = t.add;
    for (Elem a = 0; a < R.size(); ++a)
        for (Elem b = 0; b < R.size(); ++b) {
            t.add[a][b] = R.add(a, b);
            t.action[a][b] = R.mul(a, b);
        }
    t.zero = R.zero();
    return module_from_tables(std::move(ring), t).module;
}

FiniteModule FiniteModule::direct_sum(const FiniteModule& a, const FiniteModule& b)
{
    if (!a.same_ring(b)) throw PreconditionError("direct sum over different rings");
    std::vector<unsigned> orders = a.orders_;
    orders.insert(orders.end(), b.orders_.begin(), b.orders_.end());
    std::size_t ka = a.rank(), kb = b.rank(), k = ka + kb;
    std::vector<MElem> ga(a.ring().size() * k);
    for (Elem r = 0; r < a.ring().size(); ++r) {
        for (std::size_t i = 0; i < ka; ++i) ga[r * k + i] = a.gen_action_[r * ka + i];
        for (std::size_t i = 0; i < kb; ++i)
            ga[r * k + ka + i] = static_cast<MElem>(b.gen_action_[r * kb + i] * a.size_);
    }
    return FiniteModule(a.ring_, std::move(orders), std::move(ga));
}

MElem FiniteModule::add(MElem a, MElem b) const
{
    if (all2_) return a ^ b;
    std::size_t out = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        unsigned o = orders_[i];
        unsigned da = a % o, db = b % o;
        a /= o;
        b /= o;
        out += ((da + db) % o) * weight_[i];
    }
    return static_cast<MElem>(out);
}

MElem FiniteModule::neg(MElem a) const
{
    if (all2_) return a;
    std::size_t out = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        unsigned o = orders_[i];
        unsigned d = a % o;
        a /= o;
        out += ((o - d) % o) * weight_[i];
    }
    return static_cast<MElem>(out);
}

MElem FiniteModule::scale(long long k, MElem a) const
{
    std::size_t out = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        long long o = orders_[i];
        long long d = a % o;
        a /= static_cast<MElem>(o);
        long long c = ((k % o) * d) % o;
        if (c < 0) c += o;
        out += static_cast<std::size_t>(c) * weight_[i];
    }
    return static_cast<MElem>(out);
}

MElem FiniteModule::act(Elem r, MElem a) const
{
    std::size_t k = orders_.size();
    const MElem* row = gen_action_.data() + static_cast<std::size_t>(r) * k;
    MElem acc = 0;
    if (all2_) {
        for (std::size_t i = 0; a; ++i, a >>= 1)
            if (a & 1) acc ^= row[i];
        return acc;
    }
    for (std::size_t i = 0; i < k; ++i) {
        unsigned d = a % orders_[i];
        a /= orders_[i];
        if (d) acc = add(acc, d == 1 ? row[i] : scale(d, row[i]));
    }
    return acc;
}

unsigned FiniteModule::additive_order(MElem a) const
{
    unsigned ord = 1;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        unsigned o = orders_[i];
        unsigned d = a % o;
        a /= o;
        ord = std::lcm(ord, o / std::gcd(d, o));
    }
    return ord;
}

std::vector<unsigned> FiniteModule::coords(MElem a) const
{
    std::vector<unsigned> c(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        c[i] = a % orders_[i];
        a /= orders_[i];
    }
    return c;
}

MElem FiniteModule::from_coords(const std::vector<unsigned>& c) const
{
    if (c.size() != orders_.size()) throw ShapeError("coordinate vector has wrong length");
    std::size_t out = 0;
    for (std::size_t i = 0; i < c.size(); ++i) out += (c[i] % orders_[i]) * weight_[i];
    return static_cast<MElem>(out);
}

bool FiniteModule::operator==(const FiniteModule& o) const
{
    return same_ring(o) && orders_ == o.orders_ && gen_action_ == o.gen_action_;
}

// ---- table form

namespace {

std::vector<unsigned> prime_factors(std::size_t n)
{
    std::vector<unsigned> ps;
    for (std::size_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(static_cast<unsigned>(p));
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(static_cast<unsigned>(n));
    return ps;
}

bool is_power_of(unsigned q, unsigned p)
{
    while (q % p == 0) q /= p;
    return q == 1;
}

}  // namespace

TableModule module_from_tables(RingPtr ring, const ModuleTables& t)
{
    if (!ring) throw ShapeError("module without a ring");
    const FiniteRing& R = *ring;
    if (t.size < 1) throw ShapeError("module size must be positive");
    auto n = static_cast<std::size_t>(t.size);
    if (t.add.size() != n) throw ShapeError("add table has wrong row count");
    for (const auto& row : t.add) {
        if (row.size() != n) throw ShapeError("add table has a row of wrong length");
        for (auto v : row)
            if (v < 0 || v >= t.size) throw ShapeError("add table entry out of range");
    }
    if (t.action.size() != R.size()) throw ShapeError("action table must have one row per ring element");
    for (const auto& row : t.action) {
        if (row.size() != n) throw ShapeError("action table has a row of wrong length");
        for (auto v : row)
            if (v < 0 || v >= t.size) throw ShapeError("action table entry out of range");
    }
    if (t.zero < 0 || t.zero >= t.size) throw ShapeError("zero index out of range");
    auto A = [&](std::size_t a, std::size_t b) { return static_cast<std::size_t>(t.add[a][b]); };
    auto S = [&](std::size_t r, std::size_t a) { return static_cast<std::size_t>(t.action[r][a]); };
    auto z = static_cast<std::size_t>(t.zero);

    for (std::size_t a = 0; a < n; ++a) {
        if (A(a, z) != a) throw AxiomError("module zero is not an additive identity");
        bool inv = false;
        for (std::size_t b = 0; b < n; ++b) {
            if (A(a, b) != A(b, a)) throw AxiomError("module addition not commutative");
            inv = inv || A(a, b) == z;
        }
        if (!inv) throw AxiomError("module element without additive inverse");
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (A(A(a, b), c) != A(a, A(b, c))) throw AxiomError("module addition not associative");
    for (std::size_t a = 0; a < n; ++a) {
        if (S(R.one(), a) != a) throw AxiomError("1 does not act as identity");
        for (Elem r = 0; r < R.size(); ++r) {
            for (std::size_t b = 0; b < n; ++b)
                if (S(r, A(a, b)) != A(S(r, a), S(r, b))) throw AxiomError("r(a+b) != ra+rb");
            for (Elem s = 0; s < R.size(); ++s) {
                if (S(R.add(r, s), a) != A(S(r, a), S(s, a))) throw AxiomError("(r+s)a != ra+sa");
                if (S(R.mul(r, s), a) != S(r, S(s, a))) throw AxiomError("(rs)a != r(sa)");
            }
        }
    }

    auto order = [&](std::size_t a) {
        unsigned k = 1;
        for (std::size_t x = a; x != z; x = A(x, a)) ++k;
        return k;
    };
    std::vector<unsigned> ord(n);
    for (std::size_t a = 0; a < n; ++a) ord[a] = order(a);

    // greedy cyclic decomposition inside each primary part
    std::vector<std::size_t> gens;
    std::vector<unsigned> gen_orders;
    for (unsigned p : prime_factors(n)) {
        std::vector<char> inH(n, 0);
        inH[z] = 1;
        std::vector<std::size_t> H{z};
        std::size_t part = 0;
        for (std::size_t a = 0; a < n; ++a)
            if (is_power_of(ord[a], p)) ++part;
        while (H.size() < part) {
            std::size_t best = n;
            unsigned best_q = 0;
            for (std::size_t a = 0; a < n; ++a) {
                if (!is_power_of(ord[a], p) || inH[a]) continue;
                unsigned q = 1;
                for (std::size_t x = a; !inH[x]; x = A(x, a)) ++q;
                if (q > best_q) {
                    best_q = q;
                    best = a;
                }
            }
            std::size_t pick = n;
            for (std::size_t h : H) {
                std::size_t b = A(best, h);
                if (ord[b] == best_q) {
                    pick = b;
                    break;
                }
            }
            if (pick == n) throw Error("cyclic decomposition failed");
            gens.push_back(pick);
            gen_orders.push_back(best_q);
            std::vector<std::size_t> next;
            std::size_t m = z;
            for (unsigned i = 0; i < best_q; ++i, m = A(m, pick))
                for (std::size_t h : H) {
                    std::size_t x = A(h, m);
                    if (!inH[x]) {
                        inH[x] = 1;
                        next.push_back(x);
                    }
                }
            H.insert(H.end(), next.begin(), next.end());
        }
    }

    std::size_t k = gens.size();
    std::vector<std::size_t> weight(k);
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        weight[i] = total;
        total *= gen_orders[i];
    }
    if (total != n) throw Error("cyclic decomposition has wrong size");
    TableModule out;
    out.elem_to_label.assign(n, -1);
    out.label_to_elem.assign(n, 0);
    out.elem_to_label[0] = static_cast<std::int64_t>(z);
    for (std::size_t idx = 1; idx < n; ++idx) {
        std::size_t i = 0;
        while ((idx / weight[i]) % gen_orders[i] == 0) ++i;
        auto prev = static_cast<std::size_t>(out.elem_to_label[idx - weight[i]]);
        out.elem_to_label[idx] = static_cast<std::int64_t>(A(prev, gens[i]));
    }
    std::vector<char> seen(n, 0);
    for (std::size_t idx = 0; idx < n; ++idx) {
        auto l = static_cast<std::size_t>(out.elem_to_label[idx]);
        if (seen[l]) throw Error("cyclic decomposition is not a bijection");
        seen[l] = 1;
        out.label_to_elem[l] = static_cast<MElem>(idx);
    }
    std::vector<MElem> ga(R.size() * k);
    for (Elem r = 0; r < R.size(); ++r)
        for (std::size_t i = 0; i < k; ++i) ga[r * k + i] = out.label_to_elem[S(r, gens[i])];
    out.module = FiniteModule(std::move(ring), std::move(gen_orders), std::move(ga));
    return out;
}

ModuleTables module_tables(const FiniteModule& M)
{
    ModuleTables t;
    std::size_t n = M.size();
    t.size = static_cast<std::int64_t>(n);
    t.add.assign(n, std::vector<std::int64_t>(n));
    for (MElem a = 0; a < n; ++a)
        for (MElem b = 0; b < n; ++b) t.add[a][b] = M.add(a, b);
    t.action.assign(M.ring().size(), std::vector<std::int64_t>(n));
    for (Elem r = 0; r < M.ring().size(); ++r)
        for (MElem a = 0; a < n; ++a) t.action[r][a] = M.act(r, a);
    t.zero = 0;
    return t;
}

// ---- sets

const MSet& TaggedModule::tag(std::size_t i) const
{
    static const MSet zero_tag{0};
    return i < tags.size() ? tags[i] : zero_tag;
}

void TaggedModule::normalize_tags()
{
    while (!tags.empty() && tags.back().size() == 1) tags.pop_back();
}

MSet make_set(std::vector<MElem> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool mcontains(const MSet& s, MElem x) { return std::binary_search(s.begin(), s.end(), x); }

MSet mintersect(const MSet& a, const MSet& b)
{
    MSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

MSet munion(const MSet& a, const MSet& b)
{
    MSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

MSet mdifference(const MSet& a, const MSet& b)
{
    MSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool msubset(const MSet& a, const MSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

MSet full_set(const FiniteModule& M)
{
    MSet s(M.size());
    std::iota(s.begin(), s.end(), MElem{0});
    return s;
}

MSet cyclic_submodule(const FiniteModule& M, MElem a)
{
    std::vector<MElem> v;
    for (Elem r = 0; r < M.ring().size(); ++r) v.push_back(M.act(r, a));
    return make_set(std::move(v));
}

MSet submodule_sum(const FiniteModule& M, const MSet& A, const MSet& B)
{
    std::vector<char> in(M.size(), 0);
    std::vector<MElem> out;
    for (MElem a : A)
        for (MElem b : B) {
            MElem x = M.add(a, b);
            if (!in[x]) {
                in[x] = 1;
                out.push_back(x);
            }
        }
    return make_set(std::move(out));
}

MSet submodule_generated(const FiniteModule& M, const MSet& S)
{
    for (MElem s : S)
        if (s >= M.size()) throw ShapeError("element out of range");
    MSet H{0};
    std::vector<char> in(M.size(), 0);
    in[0] = 1;
    for (MElem s : S) {
        if (in[s]) continue;
        MSet orbit = cyclic_submodule(M, s);
        std::vector<MElem> add;
        for (MElem h : H)
            for (MElem o : orbit) {
                MElem x = M.add(h, o);
                if (!in[x]) {
                    in[x] = 1;
                    add.push_back(x);
                }
            }
        H.insert(H.end(), add.begin(), add.end());
    }
    return make_set(std::move(H));
}

bool is_submodule(const FiniteModule& M, const MSet& S)
{
    if (!mcontains(S, 0)) return false;
    for (MElem a : S) {
        if (a >= M.size()) return false;
        for (Elem r = 0; r < M.ring().size(); ++r)
            if (!mcontains(S, M.act(r, a))) return false;
    }
    for (MElem a : S)
        for (MElem b : S)
            if (!mcontains(S, M.add(a, b))) return false;
    return true;
}

ElemSet element_annihilator(const FiniteModule& M, MElem a)
{
    ElemSet out;
    for (Elem r = 0; r < M.ring().size(); ++r)
        if (M.act(r, a) == 0) out.push_back(r);
    return out;
}

ElemSet module_annihilator(const FiniteModule& M, const MSet& S)
{
    ElemSet out;
    for (Elem r = 0; r < M.ring().size(); ++r) {
        bool kills = true;
        for (MElem a : S)
            if (M.act(r, a) != 0) {
                kills = false;
                break;
            }
        if (kills) out.push_back(r);
    }
    return out;
}

MSet delta_set(const FiniteModule& M, const ElemSet& I)
{
    MSet out;
    for (MElem a = 1; a < M.size(); ++a) {
        bool ok = true;
        for (Elem r = 0; r < M.ring().size() && ok; ++r) ok = (M.act(r, a) == 0) == contains(I, r);
        if (ok) out.push_back(a);
    }
    return out;
}

MSet r_star(const FiniteModule& M, const MSet& Y)
{
    std::vector<MElem> out;
    for (MElem y : Y)
        for (Elem r = 0; r < M.ring().size(); ++r) {
            MElem x = M.act(r, y);
            if (x != 0) out.push_back(x);
        }
    return make_set(std::move(out));
}

std::vector<MSet> sim_classes(const FiniteModule& M, const MSet& S)
{
    std::map<MSet, std::vector<MElem>> groups;
    std::vector<MSet> order;
    for (MElem a : S) {
        MSet key = cyclic_submodule(M, a);
        auto [it, fresh] = groups.try_emplace(key);
        if (fresh) order.push_back(key);
        it->second.push_back(a);
    }
    std::vector<MSet> out;
    for (const auto& k : order) out.push_back(make_set(groups[k]));
    std::sort(out.begin(), out.end(), [](const MSet& a, const MSet& b) { return a.front() < b.front(); });
    return out;
}

IndependenceReport is_I_independent(const FiniteModule& M, const ElemSet& I, const std::vector<MElem>& X,
                                    std::size_t max_tuples)
{
    std::size_t nr = M.ring().size();
    double tuples = 1;
    for (std::size_t i = 0; i < X.size(); ++i) tuples *= static_cast<double>(nr);
    if (tuples > static_cast<double>(max_tuples)) throw GuardError("independence check exceeds tuple bound");
    IndependenceReport rep;
    std::vector<Elem> r(X.size(), 0);
    while (true) {
        MElem sum = 0;
        bool allI = true;
        for (std::size_t i = 0; i < X.size(); ++i) {
            sum = M.add(sum, M.act(r[i], X[i]));
            allI = allI && contains(I, r[i]);
        }
        if ((sum == 0) != allI) {
            rep.independent = false;
            rep.coefficients = r;
            rep.relation_outside_ideal = sum == 0;
            return rep;
        }
        std::size_t i = 0;
        while (i < r.size() && ++r[i] == nr) r[i++] = 0;
        if (i == r.size()) break;
    }
    return rep;
}

bool check_phi0(const TaggedModule& V, const std::vector<MElem>& X, const ElemSet& I)
{
    if (!is_I_independent(V.module, I, X).independent) return false;
    if (submodule_generated(V.module, make_set(X)).size() != V.module.size()) return false;
    for (const auto& t : V.tags)
        if (!is_submodule(V.module, t)) return false;
    return true;
}

MSet lemma26_set(const TaggedModule& V, const ElemSet& I)
{
    MSet d = delta_set(V.module, I);
    for (const auto& t : V.tags) d = mdifference(d, t);
    return r_star(V.module, d);
}

bool check_phi1(const TaggedModule& V, const std::vector<MElem>& X, const ElemSet& I)
{
    if (!check_phi0(V, X, I)) throw PreconditionError("structure fails Phi0");
    MSet rx = r_star(V.module, make_set(X));
    bool holds = true;
    for (MElem a : delta_set(V.module, I)) {
        bool tagged = false;
        for (const auto& t : V.tags) tagged = tagged || mcontains(t, a);
        if (mcontains(rx, a) == tagged) {
            holds = false;
            break;
        }
    }
    if (holds && rx != lemma26_set(V, I)) throw Error("Phi1 holds but the R*X identity fails");
    return holds;
}

// ---- isomorphism

namespace {

struct Signatures {
    std::vector<std::uint32_t> cls_a, cls_b;
    std::vector<std::size_t> class_size;
    std::vector<unsigned> order_a;
};

// Exact per-element invariants: additive order, annihilator, tag membership.
std::optional<Signatures> signatures(const TaggedModule& A, const TaggedModule& B)
{
    std::size_t ntags = std::max(A.tag_count(), B.tag_count());
    std::size_t nr = A.module.ring().size();
    std::size_t width = 1 + (nr + 63) / 64 + (ntags + 63) / 64;
    std::size_t tag_word = 1 + (nr + 63) / 64;
    auto rows = [&](const TaggedModule& T) {
        std::size_t n = T.module.size();
        std::vector<std::uint64_t> s(n * width, 0);
        for (MElem a = 0; a < n; ++a) {
            std::uint64_t* row = &s[a * width];
            row[0] = T.module.additive_order(a);
            for (Elem r = 0; r < nr; ++r)
                if (T.module.act(r, a) == 0) row[1 + r / 64] |= std::uint64_t{1} << (r % 64);
        }
        for (std::size_t j = 0; j < ntags; ++j)
            for (MElem a : T.tag(j)) s[a * width + tag_word + j / 64] |= std::uint64_t{1} << (j % 64);
        return s;
    };
    auto sa = rows(A), sb = rows(B);
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
    std::vector<const std::uint64_t*> reps;
    auto id_of = [&](const std::uint64_t* row, bool may_add) -> std::optional<std::uint32_t> {
        std::uint64_t h = 1469598103934665603ull;
        for (std::size_t w = 0; w < width; ++w) h = (h ^ row[w]) * 1099511628211ull;
        auto& bucket = buckets[h];
        for (std::uint32_t id : bucket)
            if (std::equal(row, row + width, reps[id])) return id;
        if (!may_add) return std::nullopt;
        bucket.push_back(static_cast<std::uint32_t>(reps.size()));
        reps.push_back(row);
        return bucket.back();
    };
    Signatures out;
    std::size_t n = A.module.size();
    out.cls_a.resize(n);
    out.cls_b.resize(n);
    out.order_a.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        out.cls_a[a] = *id_of(&sa[a * width], true);
        out.order_a[a] = static_cast<unsigned>(sa[a * width]);
    }
    for (std::size_t b = 0; b < n; ++b) {
        auto id = id_of(&sb[b * width], false);
        if (!id) return std::nullopt;
        out.cls_b[b] = *id;
    }
    std::vector<std::size_t> ca(reps.size(), 0), cb(reps.size(), 0);
    for (auto c : out.cls_a) ++ca[c];
    for (auto c : out.cls_b) ++cb[c];
    if (ca != cb) return std::nullopt;
    out.class_size = ca;
    return out;
}

class IsoSearch {
public:
    IsoSearch(const TaggedModule& A, const TaggedModule& B, Signatures sig, std::size_t budget)
        : A_(A.module), B_(B.module), sig_(std::move(sig)), budget_(budget)
    {
        fwd_.assign(A_.size(), kNone);
        bwd_.assign(B_.size(), kNone);
        by_class_.resize(sig_.class_size.size());
        for (MElem b = 0; b < B_.size(); ++b) by_class_[sig_.cls_b[b]].push_back(b);
        choose_generators();
    }

    std::optional<std::vector<MElem>> run()
    {
        fwd_[0] = 0;
        bwd_[0] = 0;
        domain_.push_back(0);
        if (!search(0)) return std::nullopt;
        return fwd_;
    }

    void run_all(const std::function<bool(const std::vector<MElem>&)>& visit)
    {
        visit_ = &visit;
        run();
    }

private:
    static constexpr MElem kNone = ~MElem{0};

    void choose_generators()
    {
        std::vector<char> inH(A_.size(), 0);
        inH[0] = 1;
        MSet H{0};
        while (H.size() < A_.size()) {
            MElem best = 0;
            bool have = false;
            for (MElem a = 1; a < A_.size(); ++a) {
                if (inH[a]) continue;
                if (!have) {
                    best = a;
                    have = true;
                    continue;
                }
                unsigned oa = sig_.order_a[a], ob = sig_.order_a[best];
                std::size_t sa = sig_.class_size[sig_.cls_a[a]], sb = sig_.class_size[sig_.cls_a[best]];
                if (oa > ob || (oa == ob && sa < sb)) best = a;
            }
            gens_.push_back(best);
            MSet orbit = cyclic_submodule(A_, best);
            std::vector<Elem> reps;
            std::vector<char> seen(A_.size(), 0);
            for (Elem r = 0; r < A_.ring().size(); ++r) {
                MElem x = A_.act(r, best);
                if (!seen[x]) {
                    seen[x] = 1;
                    reps.push_back(r);
                }
            }
            orbit_reps_.push_back(std::move(reps));
            std::vector<MElem> add;
            for (MElem h : H)
                for (MElem o : orbit) {
                    MElem x = A_.add(h, o);
                    if (!inH[x]) {
                        inH[x] = 1;
                        add.push_back(x);
                    }
                }
            H.insert(H.end(), add.begin(), add.end());
        }
    }

    bool assign(MElem x, MElem y)
    {
        if (fwd_[x] != kNone) return fwd_[x] == y;
        if (bwd_[y] != kNone) return false;
        if (sig_.cls_a[x] != sig_.cls_b[y]) return false;
        fwd_[x] = y;
        bwd_[y] = x;
        undo_.push_back(x);
        domain_.push_back(x);
        return true;
    }

    void rollback(std::size_t mark, std::size_t dmark)
    {
        while (undo_.size() > mark) {
            MElem x = undo_.back();
            undo_.pop_back();
            bwd_[fwd_[x]] = kNone;
            fwd_[x] = kNone;
        }
        domain_.resize(dmark);
    }

    bool extend(MElem g, MElem img, const std::vector<Elem>& reps)
    {
        std::size_t base = domain_.size();
        for (Elem r : reps) {
            MElem rg = A_.act(r, g), ri = B_.act(r, img);
            for (std::size_t i = 0; i < base; ++i) {
                MElem s = domain_[i];
                if (!assign(A_.add(s, rg), B_.add(fwd_[s], ri))) return false;
            }
        }
        return true;
    }

    bool search(std::size_t depth)
    {
        if (depth == gens_.size()) return !visit_ || !(*visit_)(fwd_);
        MElem g = gens_[depth];
        for (MElem y : by_class_[sig_.cls_a[g]]) {
            if (bwd_[y] != kNone) continue;
            if (++nodes_ > budget_) throw GuardError("isomorphism search exceeds node budget");
            std::size_t mark = undo_.size(), dmark = domain_.size();
            if (extend(g, y, orbit_reps_[depth]) && search(depth + 1)) return true;
            rollback(mark, dmark);
        }
        return false;
    }

    const FiniteModule& A_;
    const FiniteModule& B_;
    Signatures sig_;
    std::size_t budget_;
    std::size_t nodes_ = 0;
    const std::function<bool(const std::vector<MElem>&)>* visit_ = nullptr;
    std::vector<MElem> gens_;
    std::vector<std::vector<Elem>> orbit_reps_;
    std::vector<std::vector<MElem>> by_class_;
    std::vector<MElem> fwd_, bwd_, undo_, domain_;
};

}  // namespace

std::optional<std::vector<MElem>> brute_force_isomorphic(const TaggedModule& A, const TaggedModule& B,
                                                         const IsoOptions& opt)
{
    if (!A.module.same_ring(B.module)) throw PreconditionError("isomorphism test over different rings");
    if (A.module.size() != B.module.size()) return std::nullopt;
    std::size_t ntags = std::max(A.tag_count(), B.tag_count());
    for (std::size_t j = 0; j < ntags; ++j)
        if (A.tag(j).size() != B.tag(j).size()) return std::nullopt;
    auto sig = signatures(A, B);
    if (!sig) return std::nullopt;
    IsoSearch s(A, B, std::move(*sig), opt.max_nodes);
    return s.run();
}

void for_each_isomorphism(const TaggedModule& A, const TaggedModule& B,
                          const std::function<bool(const std::vector<MElem>&)>& visit, const IsoOptions& opt)
{
    if (!A.module.same_ring(B.module)) throw PreconditionError("isomorphism test over different rings");
    if (A.module.size() != B.module.size()) return;
    std::size_t ntags = std::max(A.tag_count(), B.tag_count());
    for (std::size_t j = 0; j < ntags; ++j)
        if (A.tag(j).size() != B.tag(j).size()) return;
    auto sig = signatures(A, B);
    if (!sig) return;
    IsoSearch s(A, B, std::move(*sig), opt.max_nodes);
    s.run_all(visit);
}

bool verify_isomorphism(const TaggedModule& A, const TaggedModule& B, const std::vector<MElem>& map)
{
    const FiniteModule& M = A.module;
    const FiniteModule& N = B.module;
    if (!M.same_ring(N) || M.size() != N.size() || map.size() != M.size()) return false;
    std::vector<char> hit(N.size(), 0);
    for (MElem y : map) {
        if (y >= N.size() || hit[y]) return false;
        hit[y] = 1;
    }
    if (map[0] != 0) return false;
    for (std::size_t i = 0; i < M.rank(); ++i) {
        MElem g = M.gen(i);
        for (MElem a = 0; a < M.size(); ++a)
            if (map[M.add(a, g)] != N.add(map[a], map[g])) return false;
        for (Elem r = 0; r < M.ring().size(); ++r)
            if (map[M.act(r, g)] != N.act(r, map[g])) return false;
    }
    std::size_t ntags = std::max(A.tag_count(), B.tag_count());
    for (std::size_t j = 0; j < ntags; ++j) {
        std::vector<MElem> img;
        for (MElem a : A.tag(j)) img.push_back(map[a]);
        if (make_set(std::move(img)) != B.tag(j)) return false;
    }
    return true;
}

std::optional<std::vector<MElem>> extend_from_basis(const FiniteModule& A, const FiniteModule& B,
                                                    const std::vector<MElem>& images)
{
    if (images.size() != A.rank()) throw ShapeError("need one image per basis element");
    for (std::size_t i = 0; i < A.rank(); ++i)
        if (B.scale(A.orders()[i], images[i]) != 0) return std::nullopt;
    std::vector<MElem> map(A.size(), 0);
    std::vector<std::size_t> weight(A.rank());
    std::size_t w = 1;
    for (std::size_t i = 0; i < A.rank(); ++i) {
        weight[i] = w;
        w *= A.orders()[i];
    }
    for (std::size_t idx = 1; idx < A.size(); ++idx) {
        std::size_t i = 0;
        while ((idx / weight[i]) % A.orders()[i] == 0) ++i;
        map[idx] = B.add(map[idx - weight[i]], images[i]);
    }
    for (std::size_t i = 0; i < A.rank(); ++i)
        for (Elem r = 0; r < A.ring().size(); ++r)
            if (map[A.act(r, A.gen(i))] != B.act(r, images[i])) return std::nullopt;
    return map;
}

}  // namespace dichotomy
