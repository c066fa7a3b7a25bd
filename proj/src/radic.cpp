#include "dichotomy/radic.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "dichotomy/errors.hpp"
#include "dichotomy/zn.hpp"

namespace dichotomy {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

bool is_prime(const BigInt& p)
{
    if (p < 2) return false;
    for (BigInt d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

BigInt power(const BigInt& b, unsigned e)
{
    BigInt out = 1;
    for (unsigned i = 0; i < e; ++i) out *= b;
    return out;
}

struct KeyHash {
    std::size_t operator()(const std::vector<u64>& v) const
    {
        u64 h = 1469598103934665603ull;
        for (u64 x : v) h = (h ^ x) * 1099511628211ull;
        return static_cast<std::size_t>(h);
    }
};

u64 mod_signed(long long c, u64 Q)
{
    long long r = c % static_cast<long long>(Q);
    return static_cast<u64>(r < 0 ? r + static_cast<long long>(Q) : r);
}

void axpy(std::vector<u64>& acc, long long c, const std::vector<u64>& x, u64 Q)
{
    u64 cm = mod_signed(c, Q);
    for (std::size_t i = 0; i < acc.size(); ++i)
        acc[i] = static_cast<u64>((static_cast<u128>(acc[i]) + static_cast<u128>(cm) * x[i]) % Q);
}

}  // namespace

Truncation::Truncation(PresentedRing ring, PresentedRing::Element r, unsigned depth)
    : ring_(std::move(ring)), r_(ring_.normalize(std::move(r))), depth_(depth), base_(0)
{
    if (depth_ < 1) throw PreconditionError("truncation depth must be positive");
    if (ring_.kind() == PresentedRing::Kind::Integers) {
        if (!is_prime(r_[0])) throw PreconditionError("over Z the element r must be a prime");
        if (r_[0] > 1'000'000) throw GuardError("prime too large");
        base_ = r_[0].convert_to<u64>();
    } else if (ring_.kind() == PresentedRing::Kind::Polynomial) {
        if (r_ != ring_.variable()) throw PreconditionError("over (Z/n)[x] the element r must be x");
        if (ring_.base_modulus() > 1'000'000'000) throw GuardError("base modulus too large");
        base_ = ring_.base_modulus().convert_to<u64>();
    } else {
        throw PreconditionError("truncation supports Z with a prime r and (Z/n)[x] with r = x, not " + ring_.describe());
    }
}

std::uint64_t Truncation::coordinate_modulus(unsigned k) const
{
    if (!integers()) return base_;
    BigInt q = power(base_, k);
    if (q >= (BigInt(1) << 62)) throw GuardError("r^depth does not fit in 62 bits");
    return q.convert_to<u64>();
}

std::vector<std::uint64_t> Truncation::coordinates(const PresentedRing::Element& a, unsigned k) const
{
    if (integers()) return {mod_floor(a[0], power(base_, k)).convert_to<u64>()};
    std::vector<u64> out(k, 0);
    for (std::size_t i = 0; i < std::min<std::size_t>(k, a.size()); ++i)
        out[i] = mod_floor(a[i], base_).convert_to<u64>();
    return out;
}

TruncatedProElement truncate(const Truncation& T, const PresentedRing::Element& a0, unsigned depth)
{
    auto a = T.ring().normalize(a0);
    if (T.integers()) return {{mod_floor(a[0], power(T.base(), depth))}, depth};
    if (a.size() > depth) a.resize(depth);
    return {T.ring().normalize(std::move(a)), depth};
}

TruncatedProElement truncate(const Truncation& T, const PresentedRing::Element& a) { return truncate(T, a, T.depth()); }

namespace {
void same_depth(const TruncatedProElement& a, const TruncatedProElement& b)
{
    if (a.depth != b.depth)
        throw PreconditionError("depth mismatch: " + std::to_string(a.depth) + " vs " + std::to_string(b.depth));
}
}  // namespace

TruncatedProElement tadd(const Truncation& T, const TruncatedProElement& a, const TruncatedProElement& b)
{
    same_depth(a, b);
    return truncate(T, T.ring().add(a.value, b.value), a.depth);
}

TruncatedProElement tsub(const Truncation& T, const TruncatedProElement& a, const TruncatedProElement& b)
{
    same_depth(a, b);
    return truncate(T, T.ring().sub(a.value, b.value), a.depth);
}

TruncatedProElement tmul(const Truncation& T, const TruncatedProElement& a, const TruncatedProElement& b)
{
    same_depth(a, b);
    return truncate(T, T.ring().mul(a.value, b.value), a.depth);
}

TruncatedProElement project(const Truncation& T, const TruncatedProElement& a, unsigned k)
{
    if (k > a.depth) throw PreconditionError("cannot project to a greater depth");
    return truncate(T, a.value, k);
}

bool tequal(const Truncation& T, const TruncatedProElement& a, const TruncatedProElement& b)
{
    same_depth(a, b);
    return T.ring().is_zero(tsub(T, a, b).value);
}

bool divisible(const Truncation& T, const TruncatedProElement& a, unsigned n)
{
    if (n > a.depth) throw PreconditionError("divisibility beyond the depth is not decided");
    return T.ring().is_zero(truncate(T, a.value, n).value);
}

TruncatedProElement divide(const Truncation& T, const TruncatedProElement& a, unsigned n)
{
    if (!divisible(T, a, n)) throw PreconditionError("not divisible");
    if (T.integers()) return truncate(T, {a.value[0] / power(T.base(), n)}, a.depth - n);
    PresentedRing::Element q;
    for (std::size_t i = n; i < a.value.size(); ++i) q.push_back(a.value[i]);
    return truncate(T, q, a.depth - n);
}

unsigned valuation(const Truncation& T, const TruncatedProElement& a)
{
    unsigned n = 0;
    while (n < a.depth && divisible(T, a, n + 1)) ++n;
    return n;
}

std::string to_string(const Truncation& T, const TruncatedProElement& a)
{
    return T.ring().to_string(a.value) + " (depth " + std::to_string(a.depth) + ")";
}

TruncatedProElement gamma_value(const Truncation& T, const GammaElement& g, unsigned depth)
{
    PresentedRing::Element sum = T.ring().from_int(0), rp = T.ring().from_int(1);
    unsigned i = 0;
    for (unsigned e : g.s) {
        if (e >= depth) break;
        while (i < e) {
            rp = T.ring().mul(rp, T.r());
            ++i;
        }
        sum = T.ring().add(sum, rp);
    }
    return truncate(T, sum, depth);
}

std::string GammaPolynomial::to_string() const
{
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < monomials.size(); ++i) {
        long long c = coefficients[i];
        if (c == 0) continue;
        out << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        long long a = c < 0 ? -c : c;
        std::string mono;
        for (std::size_t v = 0; v < monomials[i].size(); ++v) {
            if (!monomials[i][v]) continue;
            if (!mono.empty()) mono += "*";
            mono += "g" + std::to_string(v + 1);
            if (monomials[i][v] > 1) mono += "^" + std::to_string(monomials[i][v]);
        }
        if (mono.empty())
            out << a;
        else if (a == 1)
            out << mono;
        else
            out << a << "*" << mono;
        first = false;
    }
    return first ? "0" : out.str();
}

IndependenceCertificate independence_certificate(const Truncation& T, const std::vector<GammaElement>& gammas,
                                                 unsigned degree, unsigned height, std::uint64_t max_half)
{
    unsigned m = T.depth();
    std::size_t v = gammas.size();
    std::vector<std::vector<unsigned>> monos{std::vector<unsigned>(v, 0)};
    for (unsigned d = 1; d <= degree; ++d) {
        // exponent vectors of total degree d, lexicographically decreasing
        std::vector<unsigned> e(v, 0);
        std::vector<std::vector<unsigned>> layer;
        auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
            if (i + 1 == v) {
                e[i] = left;
                layer.push_back(e);
                return;
            }
            for (unsigned k = left + 1; k-- > 0;) {
                e[i] = k;
                self(self, i + 1, left - k);
            }
        };
        if (v) rec(rec, 0, d);
        monos.insert(monos.end(), layer.begin(), layer.end());
    }
    std::vector<TruncatedProElement> gv;
    for (const auto& g : gammas) gv.push_back(gamma_value(T, g, m));
    u64 Q = T.coordinate_modulus(m);
    std::vector<std::vector<u64>> mu;
    for (const auto& mono : monos) {
        TruncatedProElement p = truncate(T, T.ring().from_int(1), m);
        for (std::size_t i = 0; i < v; ++i)
            for (unsigned k = 0; k < mono[i]; ++k) p = tmul(T, p, gv[i]);
        mu.push_back(T.coordinates(p.value, m));
    }
    std::size_t M = monos.size(), ha = (M + 1) / 2, hb = M - ha;
    u64 base = 2ull * height + 1;
    auto count = [&](std::size_t k) {
        u64 c = 1;
        for (std::size_t i = 0; i < k; ++i) {
            if (c > max_half / base + 1) throw GuardError("certificate enumeration exceeds the bound");
            c *= base;
        }
        if (c > max_half) throw GuardError("certificate enumeration exceeds the bound");
        return c;
    };
    u64 na = count(ha), nb = count(hb);
    auto digits = [&](u64 idx, std::size_t k) {
        std::vector<long long> c(k);
        for (std::size_t i = 0; i < k; ++i) {
            c[i] = static_cast<long long>(idx % base) - static_cast<long long>(height);
            idx /= base;
        }
        return c;
    };
    auto value = [&](const std::vector<long long>& c, std::size_t offset) {
        std::vector<u64> acc(mu[0].size(), 0);
        for (std::size_t i = 0; i < c.size(); ++i) axpy(acc, c[i], mu[offset + i], Q);
        return acc;
    };
    auto zero_index = [&](std::size_t k) {
        u64 z = 0, w = 1;
        for (std::size_t i = 0; i < k; ++i, w *= base) z += height * w;
        return z;
    };
    u64 za = zero_index(ha), zb = zero_index(hb);
    std::unordered_map<std::vector<u64>, std::pair<u64, u64>, KeyHash> table;
    table.reserve(static_cast<std::size_t>(na));
    for (u64 i = 0; i < na; ++i) {
        auto key = value(digits(i, ha), 0);
        auto it = table.find(key);
        if (it == table.end())
            table.emplace(std::move(key), std::make_pair(i, UINT64_MAX));
        else if (it->second.first == za && it->second.second == UINT64_MAX)
            it->second.second = i;
    }
    IndependenceCertificate cert;
    cert.degree = degree;
    cert.height = height;
    cert.depth = m;
    u128 total = 1;
    for (std::size_t i = 0; i < M; ++i) total = std::min<u128>(total * base, u128(UINT64_MAX));
    cert.polynomials = static_cast<u64>(total) - 1;
    for (u64 j = 0; j < nb; ++j) {
        auto vb = value(digits(j, hb), ha);
        for (auto& x : vb) x = (Q - x) % Q;
        auto it = table.find(vb);
        if (it == table.end()) continue;
        u64 a = it->second.first;
        if (a == za && j == zb) a = it->second.second;
        if (a == UINT64_MAX) continue;
        GammaPolynomial p;
        p.monomials = monos;
        p.coefficients = digits(a, ha);
        auto cb = digits(j, hb);
        p.coefficients.insert(p.coefficients.end(), cb.begin(), cb.end());
        cert.counterexample = std::move(p);
        return cert;
    }
    cert.certified = true;
    return cert;
}

GammaElement gap_pattern(unsigned start, unsigned gap, unsigned depth)
{
    GammaElement g;
    unsigned step = gap;
    for (unsigned p = start; p < depth; p += step, ++step) g.s.push_back(p);
    return g;
}

GammaSearch greedy_gammas(const Truncation& T, std::size_t count, unsigned degree, unsigned height)
{
    GammaSearch out;
    unsigned m = T.depth();
    while (out.gammas.size() < count) {
        bool found = false;
        for (unsigned start = 0; start < m && !found; ++start)
            for (unsigned gap = 1; gap <= m && !found; ++gap) {
                auto g = gap_pattern(start, gap, m);
                bool used = false;
                for (const auto& h : out.gammas) used = used || h.s == g.s;
                if (used) continue;
                auto trial = out.gammas;
                trial.push_back(g);
                auto cert = independence_certificate(T, trial, degree, height);
                if (cert.certified) {
                    out.gammas = std::move(trial);
                    out.certificates.push_back(std::move(cert));
                    found = true;
                } else {
                    out.last_failure = std::move(cert);
                }
            }
        if (!found) return out;
    }
    out.complete = true;
    return out;
}

std::string to_string(const MembershipAnswer& a)
{
    std::string k = a.kind == MembershipAnswer::Kind::True ? "true" : a.kind == MembershipAnswer::Kind::False ? "false" : "unknown";
    return k + " (depth " + std::to_string(a.depth) + ", j " + std::to_string(a.divisions) + ")";
}

namespace {

// Smallest j < depth with r^j t in the span of gens, everything read mod r^depth.
std::optional<unsigned> first_multiple(const std::vector<IntVec>& gens, const IntVec& t, u64 base, unsigned depth)
{
    u64 Q = 1;
    for (unsigned i = 0; i < depth; ++i) Q *= base;
    auto q = static_cast<std::uint32_t>(Q);
    std::size_t width = t.size();
    std::vector<ZnVec> rows;
    for (const auto& g : gens) {
        ZnVec v(width);
        for (std::size_t i = 0; i < width; ++i) v[i] = zn_mod(g[i], q);
        rows.push_back(std::move(v));
    }
    auto L = ZnLattice::span(q, width, rows);
    ZnVec x(width);
    for (std::size_t i = 0; i < width; ++i) x[i] = zn_mod(t[i], q);
    for (unsigned j = 0; j < depth; ++j) {
        if (L.contains(x)) return j;
        for (auto& c : x) c = static_cast<std::uint32_t>(static_cast<u64>(c) * base % Q);
    }
    return std::nullopt;
}

}  // namespace

MembershipAnswer pure_closure_membership(const PureSubmoduleRep& G, const IntVec& a, unsigned budget)
{
    const auto& T = G.trunc;
    if (!T.integers()) throw PreconditionError("membership solving is implemented for R = Z");
    std::size_t width = G.rank * (G.gammas.size() + 1);
    if (a.size() != width) throw ShapeError("target has the wrong length");
    if (T.coordinate_modulus(T.depth()) >= (u64{1} << 31)) throw GuardError("r^depth too large for the lattice solver");
    for (const auto& g : G.generators)
        if (g.size() != width) throw ShapeError("generator has the wrong length");
    MembershipAnswer ans;
    ans.depth = T.depth();
    auto j = first_multiple(G.generators, a, T.base(), T.depth());
    // A j > 0 counts only when one level shallower agrees: a free part of a outside the span
    // reaches the span at j = depth - valuation, which moves with the depth.
    if (j && *j > 0 && (T.depth() < 2 || first_multiple(G.generators, a, T.base(), T.depth() - 1) != j)) j.reset();
    if (!j) return ans;
    ans.kind = *j <= budget ? MembershipAnswer::Kind::True : MembershipAnswer::Kind::Unknown;
    ans.divisions = *j;
    return ans;
}

PureSubmoduleRep code_freelike(const Truncation& T, std::size_t rank, const std::vector<std::vector<IntVec>>& tags,
                               const std::vector<GammaElement>& gammas, unsigned degree, unsigned height)
{
    if (!T.integers()) throw PreconditionError("code_freelike is implemented for R = Z");
    if (gammas.size() != tags.size()) throw PreconditionError("need one gamma per tag");
    auto cert = independence_certificate(T, gammas, degree, height);
    if (!cert.certified)
        throw PreconditionError("gammas are not certified independent: " + cert.counterexample->to_string() +
                                " vanishes mod r^" + std::to_string(T.depth()));
    std::size_t blocks = tags.size() + 1;
    PureSubmoduleRep G{T, rank, gammas, {}};
    for (std::size_t i = 0; i < rank; ++i) {
        IntVec e(rank * blocks, 0);
        e[i] = 1;
        G.generators.push_back(std::move(e));
    }
    for (std::size_t n = 0; n < tags.size(); ++n)
        for (const auto& g : tags[n]) {
            if (g.size() != rank) throw ShapeError("tag generator has the wrong length");
            IntVec v(rank * blocks, 0);
            std::copy(g.begin(), g.end(), v.begin() + static_cast<std::ptrdiff_t>((n + 1) * rank));
            G.generators.push_back(std::move(v));
        }
    return G;
}

PureSubmoduleRep code_freelike(const Truncation& T, const FreeLikeTagged& N, const std::vector<GammaElement>& gammas,
                               unsigned degree, unsigned height)
{
    if (!N.integral) throw PreconditionError("the free-like module must have integer coordinates");
    return code_freelike(T, N.rank, N.tags, gammas, degree, height);
}

MembershipAnswer mkchar_test(const PureSubmoduleRep& G, std::size_t n, const IntVec& a, unsigned budget)
{
    if (n < 1 || n > G.gammas.size()) throw PreconditionError("tag index out of range");
    if (a.size() != G.rank) throw ShapeError("vector has the wrong length");
    IntVec t(G.rank * (G.gammas.size() + 1), 0);
    std::copy(a.begin(), a.end(), t.begin() + static_cast<std::ptrdiff_t>(n * G.rank));
    return pure_closure_membership(G, t, budget);
}

std::vector<std::vector<std::uint64_t>> numeric_generators(const PureSubmoduleRep& G)
{
    const auto& T = G.trunc;
    u64 Q = T.coordinate_modulus(T.depth());
    std::vector<u64> gv{1 % Q};
    for (const auto& g : G.gammas) gv.push_back(T.coordinates(gamma_value(T, g, T.depth()).value, T.depth())[0]);
    std::vector<std::vector<u64>> out;
    for (const auto& g : G.generators) {
        std::vector<u64> v(G.rank, 0);
        for (std::size_t b = 0; b < gv.size(); ++b)
            for (std::size_t i = 0; i < G.rank; ++i)
                v[i] = static_cast<u64>((static_cast<u128>(v[i]) + static_cast<u128>(mod_signed(g[b * G.rank + i], Q)) * gv[b]) % Q);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace dichotomy
