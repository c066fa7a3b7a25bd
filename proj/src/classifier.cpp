#include "dichotomy/classifier.hpp"

#include <algorithm>
#include <map>

#include "dichotomy/errors.hpp"
#include "dichotomy/module.hpp"

namespace dichotomy {

std::string to_string(WitnessKind k)
{
    switch (k) {
    case WitnessKind::ThmA: return "ThmA";
    case WitnessKind::ThmB: return "ThmB";
    case WitnessKind::ThmC: return "ThmC";
    case WitnessKind::NonMaximalPrime: return "NonMaximalPrime";
    case WitnessKind::InfOrthIdempotents: return "InfOrthIdempotents";
    }
    return "?";
}

WitnessKind witness_kind_from_string(const std::string& s)
{
    for (auto k : {WitnessKind::ThmA, WitnessKind::ThmB, WitnessKind::ThmC, WitnessKind::NonMaximalPrime,
                   WitnessKind::InfOrthIdempotents})
        if (to_string(k) == s) return k;
    throw ShapeError("unknown witness kind '" + s + "'");
}

std::string to_string(Truth t) { return t == Truth::True ? "true" : t == Truth::False ? "false" : "unsupported"; }

bool ideals_linearly_ordered(const std::vector<ElemSet>& ideals)
{
    for (std::size_t i = 0; i < ideals.size(); ++i)
        for (std::size_t j = i + 1; j < ideals.size(); ++j)
            if (!is_subset(ideals[i], ideals[j]) && !is_subset(ideals[j], ideals[i])) return false;
    return true;
}

namespace {

std::string set_str(const FiniteRing& R, const ElemSet& s)
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + R.name(s[i]);
    return out + "}";
}

LocalChain chain_of(const FiniteRing& F)
{
    LocalChain c;
    c.factor = F;
    ElemSet m;
    for (Elem a = 0; a < F.size(); ++a)
        if (!F.is_unit(a)) m.push_back(a);
    for (Elem x : m)
        if (ideal_generated(F, {x}) == m) {
            c.maximal_generator = x;
            break;
        }
    ElemSet cur = ideal_generated(F, {F.one()});
    Elem p = F.one();
    for (;;) {
        c.chain.push_back(cur);
        if (cur.size() == 1) break;
        p = F.mul(p, c.maximal_generator);
        ElemSet next = ideal_generated(F, {p});
        if (next == cur) break;
        cur = std::move(next);
    }
    return c;
}

}  // namespace

Verdict classify_finite(const FiniteRing& R, std::size_t max_carrier)
{
    if (R.size() > max_carrier) throw GuardError("ring of order " + std::to_string(R.size()) + " exceeds the carrier guard");
    Verdict v;
    auto split = crt_split(R);
    v.transcript.push_back("local factors: " + std::to_string(split.factors.size()));
    for (std::size_t i = 0; i < split.factors.size(); ++i) {
        const auto& F = split.factors[i];
        auto ideals = all_ideals(F, max_carrier);
        if (ideals_linearly_ordered(ideals)) {
            auto c = chain_of(F);
            c.idempotent = split.idempotents[i];
            v.transcript.push_back("factor " + std::to_string(i) + " (idempotent " + R.name(c.idempotent) +
                                   "): chain of " + std::to_string(c.chain.size()) + " ideals, maximal ideal generated by " +
                                   F.name(c.maximal_generator));
            v.factors.push_back(std::move(c));
            continue;
        }
        Witness w;
        w.kind = WitnessKind::ThmB;
        FiniteRing Q = R;
        if (split.factors.size() > 1) {
            Elem comp = R.sub(R.one(), split.idempotents[i]);
            ElemSet K = ideal_generated(R, {comp});
            w.path.push_back(K);
            v.transcript.push_back("pass to factor " + std::to_string(i) + ": quotient by (" + R.name(comp) + ")");
            Q = quotient_ring(R, K).ring;
        }
        auto qi = all_ideals(Q, max_carrier);
        for (std::size_t a = 0; a < qi.size() && w.elements.empty(); ++a)
            for (std::size_t b = a + 1; b < qi.size() && w.elements.empty(); ++b) {
                const auto &I = qi[a], &J = qi[b];
                if (is_subset(I, J) || is_subset(J, I)) continue;
                ElemSet K = intersect(I, J);
                v.transcript.push_back("incomparable ideals " + set_str(Q, I) + " and " + set_str(Q, J));
                Elem r = 0, s = 0;
                for (Elem e : I)
                    if (!contains(J, e)) {
                        r = e;
                        break;
                    }
                for (Elem e : J)
                    if (!contains(I, e)) {
                        s = e;
                        break;
                    }
                if (K.size() > 1) {
                    auto q = quotient_ring(Q, K);
                    w.path.push_back(K);
                    v.transcript.push_back("quotient by their intersection " + set_str(Q, K));
                    r = q.proj[r];
                    s = q.proj[s];
                    Q = std::move(q.ring);
                }
                w.elements = {Q.name(r), Q.name(s)};
            }
        v.transcript.push_back("ThmB witness x = " + w.elements[0] + ", y = " + w.elements[1]);
        v.witness = std::move(w);
        v.witness_ring = std::move(Q);
        v.pir = false;
        v.factors.clear();
        return v;
    }
    v.pir = true;
    return v;
}

FiniteRing replay_path(const FiniteRing& R, const std::vector<ElemSet>& path)
{
    FiniteRing Q = R;
    for (const auto& K0 : path) {
        ElemSet K = K0;
        std::sort(K.begin(), K.end());
        K.erase(std::unique(K.begin(), K.end()), K.end());
        for (Elem e : K)
            if (e >= Q.size()) throw ShapeError("quotient path element out of range");
        if (!is_ideal(Q, K)) throw ShapeError("quotient path entry is not an ideal");
        Q = quotient_ring(Q, K).ring;
    }
    return Q;
}

VerifyResult verify_witness(const FiniteRing& R0, const Witness& w)
{
    FiniteRing R = replay_path(R0, w.path);
    VerifyResult out;
    auto& t = out.transcript;
    if (!w.path.empty()) t.push_back("replayed " + std::to_string(w.path.size()) + " quotient(s), ring of order " + std::to_string(R.size()));
    std::vector<Elem> e;
    for (const auto& s : w.elements) {
        auto a = R.parse_element(s);
        if (!a) throw ShapeError("cannot parse element '" + s + "'");
        e.push_back(*a);
    }
    auto need = [&](std::size_t k) {
        if (e.size() != k) throw ShapeError(to_string(w.kind) + " needs " + std::to_string(k) + " element(s)");
    };
    bool ok = false;
    switch (w.kind) {
    case WitnessKind::ThmA: {
        need(1);
        bool unit = R.is_unit(e[0]), zd = R.is_zero_divisor(e[0]);
        t.push_back(std::string("unit: ") + (unit ? "yes" : "no"));
        t.push_back(std::string("zero divisor: ") + (zd ? "yes" : "no"));
        ok = !unit && !zd;
        break;
    }
    case WitnessKind::ThmB: {
        need(2);
        ElemSet X = ideal_generated(R, {e[0]}), Y = ideal_generated(R, {e[1]});
        ElemSet meet = intersect(X, Y);
        ElemSet I = ideal_sum(R, annihilator(R, {e[0]}), annihilator(R, {e[1]}));
        bool c1 = meet.size() == 1, c2 = !contains(I, R.one());
        t.push_back("(x) meet (y) = " + set_str(R, meet) + (c1 ? ": zero" : ": nonzero"));
        t.push_back("Ann x + Ann y = " + set_str(R, I) + (c2 ? ": proper" : ": contains 1"));
        ok = c1 && c2;
        break;
    }
    case WitnessKind::ThmC: {
        bool desc = true, nonzero = true;
        ElemSet prev;
        for (std::size_t i = 0; i < e.size(); ++i) {
            ElemSet I = annihilator(R, {e[i]});
            if (I.size() == 1) nonzero = false;
            if (i && !(is_subset(I, prev) && I != prev)) desc = false;
            prev = I;
        }
        t.push_back(std::string("given prefix strictly descending: ") + (desc ? "yes" : "no"));
        t.push_back(std::string("given ideals nonzero: ") + (nonzero ? "yes" : "no"));
        t.push_back("a finite ring has no infinite strictly descending chain of ideals");
        ok = false;
        break;
    }
    case WitnessKind::NonMaximalPrime: {
        ElemSet P = ideal_generated(R, ElemSet(e.begin(), e.end()));
        bool prime = is_prime_ideal(R, P), maximal = is_maximal_ideal(R, P);
        t.push_back("ideal " + set_str(R, P) + (prime ? " is prime" : " is not prime") + (maximal ? ", maximal" : ", not maximal"));
        ok = prime && !maximal;
        break;
    }
    case WitnessKind::InfOrthIdempotents: {
        std::size_t n = 0;
        for (Elem a = 0; a < R.size(); ++a) n += R.is_idempotent(a);
        t.push_back("the ring has " + std::to_string(n) + " idempotents");
        ok = false;
        break;
    }
    }
    out.truth = ok ? Truth::True : Truth::False;
    return out;
}

namespace {

bool prime_int(const BigInt& n)
{
    if (n < 2) return false;
    for (BigInt p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

}  // namespace

VerifyResult verify_witness(const PresentedRing& R, const Witness& w)
{
    if (R.finite()) {
        auto F = R.to_finite();
        Witness v = w;
        for (auto& s : v.elements) s = R.to_string(R.parse(s));
        return verify_witness(F.ring, v);
    }
    if (!w.path.empty()) throw ShapeError("quotient paths are only meaningful for finite rings");
    VerifyResult out;
    auto& t = out.transcript;
    std::vector<PresentedRing::Element> e;
    for (const auto& s : w.elements) e.push_back(R.parse(s));
    bool integers = R.kind() == PresentedRing::Kind::Integers;
    auto unsupported = [&](const std::string& why) {
        t.push_back("unsupported: " + why);
        out.truth = Truth::Unsupported;
        return out;
    };
    switch (w.kind) {
    case WitnessKind::ThmA: {
        if (e.size() != 1) throw ShapeError("ThmA needs 1 element");
        auto unit = R.is_unit(e[0]);
        auto zd = R.is_zero_divisor(e[0]);
        if (!unit || !zd) return unsupported("unit or zero-divisor test undecided for " + R.describe());
        t.push_back(std::string("unit: ") + (*unit ? "yes" : "no"));
        t.push_back(std::string("zero divisor: ") + (*zd ? "yes" : "no"));
        out.truth = !*unit && !*zd ? Truth::True : Truth::False;
        return out;
    }
    case WitnessKind::ThmB: {
        if (e.size() != 2) throw ShapeError("ThmB needs 2 elements");
        if (!integers) return unsupported("ThmB hypotheses over " + R.describe());
        bool z0 = R.is_zero(e[0]), z1 = R.is_zero(e[1]);
        // In a domain (x) meet (y) = 0 forces one of them to be 0, and then its annihilator is everything.
        t.push_back(std::string("(x) meet (y) = 0: ") + (z0 || z1 ? "yes" : "no, xy is a nonzero common multiple"));
        if (z0 || z1) t.push_back("Ann x + Ann y contains 1");
        out.truth = Truth::False;
        return out;
    }
    case WitnessKind::ThmC: {
        if (!integers) return unsupported("annihilator chains over " + R.describe());
        t.push_back("Z is a domain: its annihilator ideals are 0 and Z");
        out.truth = Truth::False;
        return out;
    }
    case WitnessKind::NonMaximalPrime: {
        if (e.size() != 1) return unsupported("prime ideals with several generators over " + R.describe());
        if (integers) {
            BigInt g = e[0][0] < 0 ? BigInt(-e[0][0]) : e[0][0];
            bool prime = g == 0 || prime_int(g), maximal = g != 0 && prime;
            t.push_back("(" + R.to_string(e[0]) + ")" + (prime ? " is prime" : " is not prime") + (maximal ? ", maximal" : ", not maximal"));
            out.truth = prime && !maximal ? Truth::True : Truth::False;
            return out;
        }
        if (prime_int(R.base_modulus()) && R.is_zero(e[0])) {
            t.push_back("(0) in a polynomial ring over a field is prime and not maximal");
            out.truth = Truth::True;
            return out;
        }
        return unsupported("prime ideal test over " + R.describe());
    }
    case WitnessKind::InfOrthIdempotents: {
        if (integers)
            t.push_back("Z has only the idempotents 0 and 1");
        else
            t.push_back("idempotents of (Z/n)[x] are those of Z/n, a finite set");
        out.truth = Truth::False;
        return out;
    }
    }
    return out;
}

namespace {

struct Group {
    std::vector<unsigned> orders;  // prime powers
    std::size_t size = 1;
    std::vector<std::size_t> weight;

    std::vector<unsigned> coords(std::size_t a) const
    {
        std::vector<unsigned> c(orders.size());
        for (std::size_t i = 0; i < orders.size(); ++i) {
            c[i] = static_cast<unsigned>(a % orders[i]);
            a /= orders[i];
        }
        return c;
    }
    std::size_t add(std::size_t a, std::size_t b) const
    {
        std::size_t out = 0;
        for (std::size_t i = 0; i < orders.size(); ++i) {
            out += ((a % orders[i] + b % orders[i]) % orders[i]) * weight[i];
            a /= orders[i];
            b /= orders[i];
        }
        return out;
    }
    unsigned order_of(std::size_t a) const
    {
        unsigned k = 1;
        for (std::size_t x = a; x != 0; x = add(x, a)) ++k;
        return k;
    }
};

using Map = std::vector<std::uint32_t>;

// Partitions of e into nonincreasing parts.
void partitions(unsigned e, unsigned max, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out)
{
    if (e == 0) {
        out.push_back(cur);
        return;
    }
    for (unsigned k = std::min(e, max); k >= 1; --k) {
        cur.push_back(k);
        partitions(e - k, k, cur, out);
        cur.pop_back();
    }
}

std::vector<Group> abelian_groups(std::size_t n)
{
    std::vector<std::vector<std::vector<unsigned>>> per_prime;  // choices of cyclic orders per prime
    std::size_t m = n;
    for (unsigned p = 2; m > 1; ++p) {
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (!e) continue;
        std::vector<std::vector<unsigned>> parts, choices;
        std::vector<unsigned> cur;
        partitions(e, e, cur, parts);
        for (const auto& part : parts) {
            std::vector<unsigned> ords;
            for (unsigned k : part) {
                unsigned q = 1;
                for (unsigned i = 0; i < k; ++i) q *= p;
                ords.push_back(q);
            }
            choices.push_back(ords);
        }
        per_prime.push_back(choices);
    }
    std::vector<std::vector<unsigned>> combos{{}};
    for (const auto& choices : per_prime) {
        std::vector<std::vector<unsigned>> next;
        for (const auto& c : combos)
            for (const auto& ch : choices) {
                auto d = c;
                d.insert(d.end(), ch.begin(), ch.end());
                next.push_back(d);
            }
        combos = std::move(next);
    }
    std::vector<Group> out;
    for (auto& ords : combos) {
        Group g;
        g.orders = ords;
        for (unsigned q : ords) {
            g.weight.push_back(g.size);
            g.size *= q;
        }
        out.push_back(std::move(g));
    }
    return out;
}

// All additive endomorphisms, as full tables.
std::vector<Map> endomorphisms(const Group& G)
{
    std::vector<std::vector<std::size_t>> images(G.orders.size());
    for (std::size_t i = 0; i < G.orders.size(); ++i)
        for (std::size_t b = 0; b < G.size; ++b)
            if (G.orders[i] % G.order_of(b) == 0) images[i].push_back(b);
    std::vector<Map> out;
    std::vector<std::size_t> pick(G.orders.size(), 0);
    for (;;) {
        Map f(G.size);
        for (std::size_t a = 0; a < G.size; ++a) {
            auto c = G.coords(a);
            std::size_t v = 0;
            for (std::size_t i = 0; i < c.size(); ++i)
                for (unsigned k = 0; k < c[i]; ++k) v = G.add(v, images[i][pick[i]]);
            f[a] = static_cast<std::uint32_t>(v);
        }
        out.push_back(std::move(f));
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == images[i].size()) pick[i++] = 0;
        if (i == pick.size()) break;
    }
    return out;
}

Map compose(const Map& f, const Map& g)  // f after g
{
    Map h(g.size());
    for (std::size_t a = 0; a < g.size(); ++a) h[a] = f[g[a]];
    return h;
}

Map sum(const Group& G, const Map& f, const Map& g)
{
    Map h(f.size());
    for (std::size_t a = 0; a < f.size(); ++a) h[a] = static_cast<std::uint32_t>(G.add(f[a], g[a]));
    return h;
}

// A minimal-ish set of ring generators over 1, chosen greedily.
std::vector<Elem> ring_generators(const FiniteRing& R)
{
    std::vector<Elem> gens;
    std::vector<char> in(R.size(), 0);
    auto close = [&]() {
        std::vector<Elem> members;
        for (Elem a = 0; a < R.size(); ++a)
            if (in[a]) members.push_back(a);
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = 0; j <= i; ++j)
                for (Elem c : {R.add(members[i], members[j]), R.mul(members[i], members[j])})
                    if (!in[c]) {
                        in[c] = 1;
                        members.push_back(c);
                    }
    };
    in[R.zero()] = in[R.one()] = 1;
    close();
    for (Elem a = 0; a < R.size(); ++a)
        if (!in[a]) {
            gens.push_back(a);
            in[a] = 1;
            close();
        }
    return gens;
}

// Extends the generator images to a ring homomorphism R -> End(G), or fails.
std::optional<std::vector<Map>> extend_action(const FiniteRing& R, const Group& G, const std::vector<Elem>& gens,
                                              const std::vector<const Map*>& images)
{
    std::vector<Map> phi(R.size());
    std::vector<char> have(R.size(), 0);
    std::vector<Elem> members;
    auto set = [&](Elem r, Map f) {
        if (have[r]) return phi[r] == f;
        have[r] = 1;
        phi[r] = std::move(f);
        members.push_back(r);
        return true;
    };
    Map id(G.size), zero(G.size, 0);
    for (std::size_t a = 0; a < G.size; ++a) id[a] = static_cast<std::uint32_t>(a);
    if (!set(R.zero(), zero) || !set(R.one(), id)) return std::nullopt;
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (!set(gens[i], *images[i])) return std::nullopt;
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            Elem a = members[i], b = members[j];
            if (!set(R.add(a, b), sum(G, phi[a], phi[b]))) return std::nullopt;
            if (!set(R.mul(a, b), compose(phi[a], phi[b]))) return std::nullopt;
            if (!set(R.mul(b, a), compose(phi[b], phi[a]))) return std::nullopt;
        }
    if (members.size() != R.size()) return std::nullopt;
    return phi;
}

}  // namespace

Census count_modules_upto(const FiniteRing& R, std::size_t bound, std::uint64_t max_candidates)
{
    if (bound > 64) throw GuardError("census bound above 64");
    Census c;
    c.counts.assign(bound + 1, 0);
    if (bound >= 1) c.counts[1] = 1;
    auto gens = ring_generators(R);
    auto ring = std::make_shared<const FiniteRing>(R);
    for (std::size_t n = 2; n <= bound; ++n)
        for (const auto& G : abelian_groups(n)) {
            auto ends = endomorphisms(G);
            std::uint64_t total = 1;
            for (std::size_t i = 0; i < gens.size(); ++i) {
                total *= ends.size();
                if (total > max_candidates) throw GuardError("census enumeration exceeds the candidate guard");
            }
            c.actions += total;
            if (c.actions > max_candidates) throw GuardError("census enumeration exceeds the candidate guard");
            std::map<std::vector<std::size_t>, std::vector<TaggedModule>> buckets;
            std::vector<std::size_t> pick(gens.size(), 0);
            for (;;) {
                std::vector<const Map*> imgs;
                for (std::size_t i = 0; i < gens.size(); ++i) imgs.push_back(&ends[pick[i]]);
                if (auto phi = extend_action(R, G, gens, imgs)) {
                    std::vector<MElem> ga(R.size() * G.orders.size());
                    for (Elem r = 0; r < R.size(); ++r)
                        for (std::size_t i = 0; i < G.orders.size(); ++i) ga[r * G.orders.size() + i] = (*phi)[r][G.weight[i]];
                    TaggedModule M{FiniteModule(ring, G.orders, std::move(ga)), {}};
                    std::vector<std::size_t> key;
                    for (Elem r = 0; r < R.size(); ++r) {
                        std::size_t fixed = 0, kernel = 0;
                        for (std::size_t a = 0; a < G.size; ++a) {
                            fixed += (*phi)[r][a] == a;
                            kernel += (*phi)[r][a] == 0;
                        }
                        key.push_back(fixed);
                        key.push_back(kernel);
                    }
                    auto& bucket = buckets[key];
                    bool seen = false;
                    for (const auto& N : bucket)
                        if (brute_force_isomorphic(N, M)) {
                            seen = true;
                            break;
                        }
                    if (!seen) bucket.push_back(std::move(M));
                }
                std::size_t i = 0;
                while (i < pick.size() && ++pick[i] == ends.size()) pick[i++] = 0;
                if (i == pick.size()) break;
            }
            for (const auto& [k, b] : buckets) c.counts[n] += b.size();
        }
    return c;
}

}  // namespace dichotomy
