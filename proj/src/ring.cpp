#include "dichotomy/ring.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "dichotomy/errors.hpp"

namespace dichotomy {

namespace {

void check_shape(const RingTables& t)
{
    if (t.size < 1) throw ShapeError("ring size must be positive");
    auto n = static_cast<std::size_t>(t.size);
    auto square = [&](const std::vector<std::vector<std::int64_t>>& tab, const char* what) {
        if (tab.size() != n) throw ShapeError(std::string(what) + " table has wrong row count");
        for (const auto& row : tab) {
            if (row.size() != n) throw ShapeError(std::string(what) + " table has a row of wrong length");
            for (auto v : row)
                if (v < 0 || v >= t.size) throw ShapeError(std::string(what) + " table entry out of range");
        }
    };
    square(t.add, "add");
    square(t.mul, "mul");
    if (t.zero < 0 || t.zero >= t.size) throw ShapeError("zero index out of range");
    if (t.one < 0 || t.one >= t.size) throw ShapeError("one index out of range");
}

std::vector<std::string> default_names(std::size_t n)
{
    std::vector<std::string> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = std::to_string(i);
    return out;
}

}  // namespace

AxiomReport check_ring_axioms(const RingTables& t)
{
    check_shape(t);
    auto n = static_cast<Elem>(t.size);
    auto A = [&](Elem a, Elem b) { return static_cast<Elem>(t.add[a][b]); };
    auto M = [&](Elem a, Elem b) { return static_cast<Elem>(t.mul[a][b]); };
    auto z = static_cast<Elem>(t.zero);
    auto o = static_cast<Elem>(t.one);
    AxiomReport rep;
    auto fail = [&](const char* ax, std::vector<Elem> w) {
        rep.ok = false;
        rep.axiom = ax;
        rep.witness = std::move(w);
        return rep;
    };
    for (Elem a = 0; a < n; ++a) {
        if (A(a, z) != a || A(z, a) != a) return fail("additive identity", {a});
        bool has_inv = false;
        for (Elem b = 0; b < n && !has_inv; ++b) has_inv = A(a, b) == z;
        if (!has_inv) return fail("additive inverse", {a});
        if (M(a, o) != a || M(o, a) != a) return fail("multiplicative identity", {a});
        for (Elem b = 0; b < n; ++b) {
            if (A(a, b) != A(b, a)) return fail("additive commutativity", {a, b});
            if (M(a, b) != M(b, a)) return fail("multiplicative commutativity", {a, b});
        }
    }
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            for (Elem c = 0; c < n; ++c) {
                if (A(A(a, b), c) != A(a, A(b, c))) return fail("additive associativity", {a, b, c});
                if (M(M(a, b), c) != M(a, M(b, c))) return fail("multiplicative associativity", {a, b, c});
                if (M(a, A(b, c)) != A(M(a, b), M(a, c))) return fail("distributivity", {a, b, c});
            }
    if (n > 1 && z == o) return fail("zero equals one in a nontrivial ring", {z});
    return rep;
}

FiniteRing::FiniteRing() : FiniteRing(1, {0}, {0}, 0, 0) {}

FiniteRing::FiniteRing(std::size_t n, std::vector<Elem> add, std::vector<Elem> mul, Elem zero, Elem one,
                       std::vector<std::string> names)
    : n_(n), add_(std::move(add)), mul_(std::move(mul)), zero_(zero), one_(one), names_(std::move(names))
{
    if (n_ == 0) throw ShapeError("ring size must be positive");
    if (add_.size() != n_ * n_ || mul_.size() != n_ * n_) throw ShapeError("ring tables have wrong size");
    RingTables t = tables();
    AxiomReport rep = check_ring_axioms(t);
    if (!rep.ok) throw AxiomError("ring axiom fails: " + rep.axiom);
    if (names_.empty()) names_ = default_names(n_);
    if (names_.size() != n_) throw ShapeError("ring element names have wrong length");
    neg_.assign(n_, 0);
    for (Elem a = 0; a < n_; ++a)
        for (Elem b = 0; b < n_; ++b)
            if (this->add(a, b) == zero_) neg_[a] = b;
}

FiniteRing FiniteRing::from_tables(const RingTables& t, std::vector<std::string> names)
{
    check_shape(t);
    auto n = static_cast<std::size_t>(t.size);
    std::vector<Elem> add(n * n), mul(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            add[a * n + b] = static_cast<Elem>(t.add[a][b]);
            mul[a * n + b] = static_cast<Elem>(t.mul[a][b]);
        }
    return FiniteRing(n, std::move(add), std::move(mul), static_cast<Elem>(t.zero), static_cast<Elem>(t.one),
                      std::move(names));
}

RingTables FiniteRing::tables() const
{
    RingTables t;
    t.size = static_cast<std::int64_t>(n_);
    t.add.assign(n_, std::vector<std::int64_t>(n_));
    t.mul.assign(n_, std::vector<std::int64_t>(n_));
    for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < n_; ++b) {
            t.add[a][b] = add_[a * n_ + b];
            t.mul[a][b] = mul_[a * n_ + b];
        }
    t.zero = zero_;
    t.one = one_;
    return t;
}

bool FiniteRing::operator==(const FiniteRing& o) const
{
    return n_ == o.n_ && add_ == o.add_ && mul_ == o.mul_ && zero_ == o.zero_ && one_ == o.one_;
}

Elem FiniteRing::from_int(long long k) const
{
    auto ord = static_cast<long long>(additive_order(one_));
    k %= ord;
    if (k < 0) k += ord;
    Elem acc = zero_;
    for (long long i = 0; i < k; ++i) acc = add(acc, one_);
    return acc;
}

Elem FiniteRing::pow(Elem a, unsigned k) const
{
    Elem acc = one_;
    for (unsigned i = 0; i < k; ++i) acc = mul(acc, a);
    return acc;
}

unsigned FiniteRing::additive_order(Elem a) const
{
    unsigned k = 1;
    for (Elem x = a; x != zero_; x = add(x, a)) ++k;
    return k;
}

bool FiniteRing::is_unit(Elem a) const
{
    for (Elem b = 0; b < n_; ++b)
        if (mul(a, b) == one_) return true;
    return false;
}

bool FiniteRing::is_zero_divisor(Elem a) const
{
    for (Elem b = 0; b < n_; ++b)
        if (b != zero_ && mul(a, b) == zero_) return true;
    return false;
}

bool FiniteRing::is_nilpotent(Elem a) const
{
    Elem x = a;
    for (std::size_t i = 0; i <= n_; ++i) {
        if (x == zero_) return true;
        x = mul(x, a);
    }
    return false;
}

std::optional<Elem> FiniteRing::parse_element(const std::string& s) const
{
    std::string t;
    for (char c : s)
        if (c != ' ') t += c;
    for (Elem a = 0; a < n_; ++a)
        if (names_[a] == t) return a;
    if (!t.empty() && t[0] == '#') t = t.substr(1);
    if (!t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        unsigned long v = std::stoul(t);
        if (v < n_) return static_cast<Elem>(v);
    }
    return std::nullopt;
}

bool contains(const ElemSet& s, Elem x) { return std::binary_search(s.begin(), s.end(), x); }

bool is_subset(const ElemSet& a, const ElemSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

ElemSet intersect(const ElemSet& a, const ElemSet& b)
{
    ElemSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool ideal_less(const ElemSet& a, const ElemSet& b)
{
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

ElemSet ideal_generated(const FiniteRing& R, const ElemSet& gens)
{
    std::vector<char> in(R.size(), 0);
    std::vector<Elem> members{R.zero()};
    in[R.zero()] = 1;
    for (Elem g : gens) {
        if (g >= R.size()) throw ShapeError("generator out of range");
        if (in[g]) continue;
        std::vector<Elem> principal;
        std::vector<char> seen(R.size(), 0);
        for (Elem r = 0; r < R.size(); ++r) {
            Elem x = R.mul(r, g);
            if (!seen[x]) {
                seen[x] = 1;
                principal.push_back(x);
            }
        }
        std::vector<Elem> next;
        for (Elem m : members)
            for (Elem p : principal) {
                Elem x = R.add(m, p);
                if (!in[x]) {
                    in[x] = 1;
                    next.push_back(x);
                }
            }
        members.insert(members.end(), next.begin(), next.end());
    }
    std::sort(members.begin(), members.end());
    return members;
}

bool is_ideal(const FiniteRing& R, const ElemSet& I)
{
    if (!contains(I, R.zero())) return false;
    for (Elem a : I)
        for (Elem b : I)
            if (!contains(I, R.add(a, b))) return false;
    for (Elem a : I)
        for (Elem r = 0; r < R.size(); ++r)
            if (!contains(I, R.mul(r, a))) return false;
    return true;
}

ElemSet ideal_sum(const FiniteRing& R, const ElemSet& I, const ElemSet& J)
{
    std::set<Elem> s;
    for (Elem a : I)
        for (Elem b : J) s.insert(R.add(a, b));
    return ElemSet(s.begin(), s.end());
}

std::vector<ElemSet> all_ideals(const FiniteRing& R, std::size_t max_carrier)
{
    if (R.size() > max_carrier)
        throw GuardError("ring carrier " + std::to_string(R.size()) + " exceeds bound " + std::to_string(max_carrier));
    std::set<ElemSet> found;
    std::vector<ElemSet> work;
    for (Elem a = 0; a < R.size(); ++a) {
        ElemSet p = ideal_generated(R, {a});
        if (found.insert(p).second) work.push_back(p);
    }
    // every ideal of a finite ring is a finite sum of principal ideals
    std::vector<ElemSet> principal(found.begin(), found.end());
    while (!work.empty()) {
        ElemSet I = std::move(work.back());
        work.pop_back();
        for (const ElemSet& P : principal) {
            if (is_subset(P, I)) continue;
            ElemSet S = ideal_sum(R, I, P);
            if (found.insert(S).second) work.push_back(S);
        }
    }
    std::vector<ElemSet> out(found.begin(), found.end());
    std::sort(out.begin(), out.end(), ideal_less);
    return out;
}

ElemSet annihilator(const FiniteRing& R, const ElemSet& X)
{
    ElemSet out;
    for (Elem a = 0; a < R.size(); ++a) {
        bool kills = true;
        for (Elem x : X)
            if (R.mul(a, x) != R.zero()) {
                kills = false;
                break;
            }
        if (kills) out.push_back(a);
    }
    return out;
}

bool is_prime_ideal(const FiniteRing& R, const ElemSet& P)
{
    if (P.size() == R.size()) return false;
    for (Elem a = 0; a < R.size(); ++a) {
        if (contains(P, a)) continue;
        for (Elem b = 0; b < R.size(); ++b)
            if (!contains(P, b) && contains(P, R.mul(a, b))) return false;
    }
    return true;
}

bool is_maximal_ideal(const FiniteRing& R, const ElemSet& M)
{
    if (M.size() == R.size()) return false;
    for (Elem a = 0; a < R.size(); ++a) {
        if (contains(M, a)) continue;
        ElemSet gens = M;
        gens.push_back(a);
        std::sort(gens.begin(), gens.end());
        if (ideal_generated(R, gens).size() != R.size()) return false;
    }
    return true;
}

Quotient quotient_ring(const FiniteRing& R, const ElemSet& I)
{
    if (!is_ideal(R, I)) throw PreconditionError("quotient by a set that is not an ideal");
    std::size_t n = R.size();
    Quotient q;
    q.proj.assign(n, ~Elem{0});
    for (Elem a = 0; a < n; ++a) {
        if (q.proj[a] != ~Elem{0}) continue;
        auto c = static_cast<Elem>(q.lift.size());
        q.lift.push_back(a);
        for (Elem i : I) q.proj[R.add(a, i)] = c;
    }
    std::size_t m = q.lift.size();
    std::vector<Elem> add(m * m), mul(m * m);
    for (Elem c = 0; c < m; ++c)
        for (Elem d = 0; d < m; ++d) {
            add[c * m + d] = q.proj[R.add(q.lift[c], q.lift[d])];
            mul[c * m + d] = q.proj[R.mul(q.lift[c], q.lift[d])];
        }
    std::vector<std::string> names(m);
    for (Elem c = 0; c < m; ++c) names[c] = R.name(q.lift[c]);
    q.ring = FiniteRing(m, std::move(add), std::move(mul), q.proj[R.zero()], q.proj[R.one()], std::move(names));
    return q;
}

FiniteRing product_ring(const std::vector<FiniteRing>& factors)
{
    if (factors.empty()) return FiniteRing();
    if (factors.size() == 1) return factors[0];
    std::size_t n = 1;
    for (const auto& f : factors) n *= f.size();
    auto split = [&](std::size_t x) {
        std::vector<Elem> d;
        for (const auto& f : factors) {
            d.push_back(static_cast<Elem>(x % f.size()));
            x /= f.size();
        }
        return d;
    };
    auto join = [&](const std::vector<Elem>& d) {
        std::size_t x = 0, s = 1;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            x += d[i] * s;
            s *= factors[i].size();
        }
        return static_cast<Elem>(x);
    };
    std::vector<Elem> add(n * n), mul(n * n);
    std::vector<std::string> names(n);
    for (std::size_t a = 0; a < n; ++a) {
        auto da = split(a);
        std::string nm = "(";
        for (std::size_t i = 0; i < factors.size(); ++i) nm += (i ? "," : "") + factors[i].name(da[i]);
        names[a] = nm + ")";
        for (std::size_t b = 0; b < n; ++b) {
            auto db = split(b);
            std::vector<Elem> s(factors.size()), p(factors.size());
            for (std::size_t i = 0; i < factors.size(); ++i) {
                s[i] = factors[i].add(da[i], db[i]);
                p[i] = factors[i].mul(da[i], db[i]);
            }
            add[a * n + b] = join(s);
            mul[a * n + b] = join(p);
        }
    }
    std::vector<Elem> z, o;
    for (const auto& f : factors) {
        z.push_back(f.zero());
        o.push_back(f.one());
    }
    return FiniteRing(n, std::move(add), std::move(mul), join(z), join(o), std::move(names));
}

Spectrum spectrum(const FiniteRing& R, std::size_t max_carrier)
{
    auto ideals = all_ideals(R, max_carrier);
    Spectrum s;
    for (const auto& I : ideals) {
        if (I.size() == R.size()) continue;
        if (is_prime_ideal(R, I)) s.primes.push_back(I);
        bool maximal = true;
        for (const auto& J : ideals)
            if (J.size() != R.size() && J.size() > I.size() && is_subset(I, J)) maximal = false;
        if (maximal) s.maximal.push_back(I);
    }
    for (Elem a = 0; a < R.size(); ++a) {
        if (R.is_nilpotent(a)) s.nilradical.push_back(a);
        if (R.is_idempotent(a)) s.idempotents.push_back(a);
    }
    ElemSet jac;
    for (Elem a = 0; a < R.size(); ++a) jac.push_back(a);
    for (const auto& M : s.maximal) jac = intersect(jac, M);
    s.jacobson = jac;
    s.jacobson_is_nil = s.jacobson == s.nilradical;
    return s;
}

bool is_local(const FiniteRing& R)
{
    if (R.trivial()) return false;
    // local iff the non-units are closed under addition
    std::vector<Elem> nonunits;
    for (Elem a = 0; a < R.size(); ++a)
        if (!R.is_unit(a)) nonunits.push_back(a);
    for (Elem a : nonunits)
        for (Elem b : nonunits)
            if (R.is_unit(R.add(a, b))) return false;
    return true;
}

CrtSplit crt_split(const FiniteRing& R)
{
    CrtSplit out;
    std::vector<Elem> idem;
    for (Elem a = 0; a < R.size(); ++a)
        if (R.is_idempotent(a)) idem.push_back(a);
    for (Elem e : idem) {
        if (e == R.zero()) continue;
        bool primitive = true;
        for (Elem f : idem) {
            Elem ef = R.mul(e, f);
            if (ef != R.zero() && ef != e) primitive = false;
        }
        if (primitive) out.idempotents.push_back(e);
    }
    out.coords.assign(R.size(), {});
    for (Elem e : out.idempotents) {
        std::set<Elem> s;
        for (Elem r = 0; r < R.size(); ++r) s.insert(R.mul(e, r));
        std::vector<Elem> mem(s.begin(), s.end());
        std::vector<Elem> index(R.size(), 0);
        for (Elem i = 0; i < mem.size(); ++i) index[mem[i]] = i;
        std::size_t m = mem.size();
        std::vector<Elem> add(m * m), mul(m * m);
        std::vector<std::string> names(m);
        for (Elem i = 0; i < m; ++i) {
            names[i] = R.name(mem[i]);
            for (Elem j = 0; j < m; ++j) {
                add[i * m + j] = index[R.add(mem[i], mem[j])];
                mul[i * m + j] = index[R.mul(mem[i], mem[j])];
            }
        }
        out.factors.emplace_back(m, std::move(add), std::move(mul), index[R.zero()], index[e], std::move(names));
        for (Elem r = 0; r < R.size(); ++r) out.coords[r].push_back(index[R.mul(e, r)]);
        out.members.push_back(std::move(mem));
    }
    return out;
}

std::optional<std::vector<Elem>> ring_isomorphism(const FiniteRing& A, const FiniteRing& B)
{
    std::size_t n = A.size();
    if (B.size() != n) return std::nullopt;
    auto profile = [](const FiniteRing& R, Elem a) {
        return std::tuple<unsigned, bool, bool, bool>(R.additive_order(a), R.is_unit(a), R.is_idempotent(a),
                                                       R.is_nilpotent(a));
    };
    std::vector<std::tuple<unsigned, bool, bool, bool>> pa(n), pb(n);
    for (Elem a = 0; a < n; ++a) {
        pa[a] = profile(A, a);
        pb[a] = profile(B, a);
    }
    {
        auto sa = pa, sb = pb;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return std::nullopt;
    }
    // additive generators of A, greedily by order
    std::vector<Elem> gens;
    {
        std::vector<char> span(n, 0);
        std::vector<Elem> members{A.zero()};
        span[A.zero()] = 1;
        while (members.size() < n) {
            Elem best = 0;
            unsigned best_ord = 0;
            for (Elem a = 0; a < n; ++a)
                if (!span[a] && A.additive_order(a) > best_ord) {
                    best = a;
                    best_ord = A.additive_order(a);
                }
            gens.push_back(best);
            std::vector<Elem> next;
            for (Elem m : members)
                for (Elem x = best;; x = A.add(x, best)) {
                    Elem y = A.add(m, x);
                    if (!span[y]) {
                        span[y] = 1;
                        next.push_back(y);
                    }
                    if (x == A.zero()) break;
                }
            members.insert(members.end(), next.begin(), next.end());
        }
    }
    constexpr Elem kNone = ~Elem{0};
    std::vector<Elem> phi(n, kNone), inv(n, kNone);
    std::vector<Elem> domain{A.zero()};
    phi[A.zero()] = B.zero();
    inv[B.zero()] = A.zero();
    std::function<bool(std::size_t)> rec = [&](std::size_t level) -> bool {
        if (level == gens.size()) {
            if (phi[A.one()] != B.one()) return false;
            for (Elem a = 0; a < n; ++a)
                for (Elem b = 0; b < n; ++b)
                    if (phi[A.mul(a, b)] != B.mul(phi[a], phi[b])) return false;
            return true;
        }
        Elem g = gens[level];
        for (Elem cand = 0; cand < n; ++cand) {
            if (inv[cand] != kNone || pb[cand] != pa[g]) continue;
            std::vector<Elem> added;
            bool ok = true;
            std::size_t base = domain.size();
            for (std::size_t i = 0; i < base && ok; ++i) {
                Elem s = domain[i];
                Elem x = g, y = cand;
                while (x != A.zero()) {
                    Elem a = A.add(s, x), b = B.add(phi[s], y);
                    if (phi[a] == kNone) {
                        if (inv[b] != kNone) {
                            ok = false;
                            break;
                        }
                        phi[a] = b;
                        inv[b] = a;
                        added.push_back(a);
                        domain.push_back(a);
                    } else if (phi[a] != b) {
                        ok = false;
                        break;
                    }
                    x = A.add(x, g);
                    y = B.add(y, cand);
                }
                if (ok && y != B.zero()) ok = false;
            }
            if (ok && rec(level + 1)) return true;
            for (Elem a : added) {
                inv[phi[a]] = kNone;
                phi[a] = kNone;
            }
            domain.resize(base);
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return phi;
}

}  // namespace dichotomy
