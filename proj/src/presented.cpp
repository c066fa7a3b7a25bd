#include "dichotomy/presented.hpp"

#include <boost/integer/common_factor.hpp>
#include <cctype>

#include "dichotomy/errors.hpp"

namespace dichotomy {

BigInt mod_floor(const BigInt& a, const BigInt& n)
{
    BigInt r = a % n;
    if (r < 0) r += n;
    return r;
}

namespace {

BigInt gcd_big(BigInt a, BigInt b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        BigInt t = a % b;
        a = b;
        b = t;
    }
    return a;
}

BigInt radical(BigInt n)
{
    BigInt r = 1;
    for (BigInt p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            r *= p;
            while (n % p == 0) n /= p;
        }
    if (n > 1) r *= n;
    return r;
}

}  // namespace

PresentedRing PresentedRing::integers() { return PresentedRing(); }

PresentedRing PresentedRing::zmod(const BigInt& n)
{
    if (n < 1) throw ShapeError("Z/n needs n >= 1");
    PresentedRing R;
    R.kind_ = Kind::IntegersMod;
    R.n_ = n;
    return R;
}

PresentedRing PresentedRing::poly_quotient(const BigInt& n, const std::vector<BigInt>& monic)
{
    if (n < 1) throw ShapeError("base modulus must be >= 1");
    if (monic.size() < 2 || monic.back() != 1) throw ShapeError("modulus must be monic of degree >= 1");
    PresentedRing R;
    R.kind_ = Kind::PolyQuotient;
    R.n_ = n;
    for (const auto& c : monic) R.g_.push_back(mod_floor(c, n));
    R.g_.back() = 1;
    return R;
}

PresentedRing PresentedRing::polynomial(const BigInt& n)
{
    if (n < 1) throw ShapeError("base modulus must be >= 1");
    PresentedRing R;
    R.kind_ = Kind::Polynomial;
    R.n_ = n;
    return R;
}

std::string PresentedRing::describe() const
{
    switch (kind_) {
    case Kind::Integers: return "Z";
    case Kind::IntegersMod: return "Z/" + n_.str();
    case Kind::Polynomial: return "Z/" + n_.str() + "[x]";
    case Kind::PolyQuotient: {
        Element g(g_.begin(), g_.end());
        return "Z/" + n_.str() + "[x]/(" + PresentedRing::polynomial(n_).to_string(g) + ")";
    }
    }
    return "?";
}

BigInt PresentedRing::cardinality() const
{
    if (kind_ == Kind::IntegersMod) return n_;
    if (kind_ == Kind::PolyQuotient) {
        BigInt c = 1;
        for (std::size_t i = 0; i + 1 < g_.size(); ++i) c *= n_;
        return c;
    }
    throw PreconditionError("cardinality of an infinite ring");
}

PresentedRing::Element PresentedRing::normalize(Element a) const
{
    if (a.empty()) a.push_back(0);
    switch (kind_) {
    case Kind::Integers: {
        if (a.size() > 1) throw ShapeError("Z has no variable");
        return a;
    }
    case Kind::IntegersMod: {
        if (a.size() > 1) throw ShapeError("Z/n has no variable");
        a[0] = mod_floor(a[0], n_);
        return a;
    }
    case Kind::Polynomial: {
        for (auto& c : a) c = mod_floor(c, n_);
        while (a.size() > 1 && a.back() == 0) a.pop_back();
        return a;
    }
    case Kind::PolyQuotient: {
        std::size_t d = g_.size() - 1;
        for (std::size_t k = a.size(); k-- > d;) {
            BigInt c = a[k];
            if (c == 0) continue;
            for (std::size_t i = 0; i <= d; ++i) a[k - d + i] -= c * g_[i];
        }
        a.resize(d);
        for (auto& c : a) c = mod_floor(c, n_);
        return a;
    }
    }
    return a;
}

PresentedRing::Element PresentedRing::from_int(const BigInt& k) const { return normalize({k}); }

PresentedRing::Element PresentedRing::variable() const
{
    if (!has_variable()) throw PreconditionError("ring has no variable");
    return normalize({0, 1});
}

PresentedRing::Element PresentedRing::add(const Element& a, const Element& b) const
{
    Element c(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    return normalize(std::move(c));
}

PresentedRing::Element PresentedRing::neg(const Element& a) const
{
    Element c = a;
    for (auto& x : c) x = -x;
    return normalize(std::move(c));
}

PresentedRing::Element PresentedRing::mul(const Element& a, const Element& b) const
{
    Element c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return normalize(std::move(c));
}

bool PresentedRing::is_zero(const Element& a) const
{
    for (const auto& c : normalize(a))
        if (c != 0) return false;
    return true;
}

std::optional<bool> PresentedRing::is_unit(const Element& a0) const
{
    Element a = normalize(a0);
    switch (kind_) {
    case Kind::Integers: return a[0] == 1 || a[0] == -1;
    case Kind::IntegersMod: return gcd_big(a[0], n_) == 1;
    case Kind::Polynomial: {
        // unit iff constant term is a unit and the rest is nilpotent
        if (gcd_big(a[0], n_) != 1) return false;
        BigInt rad = radical(n_);
        for (std::size_t i = 1; i < a.size(); ++i)
            if (a[i] % rad != 0) return false;
        return true;
    }
    case Kind::PolyQuotient: {
        if (cardinality() > 256) return std::nullopt;
        auto F = to_finite();
        return F.ring.is_unit(F.index_of(a));
    }
    }
    return std::nullopt;
}

std::optional<bool> PresentedRing::is_zero_divisor(const Element& a0) const
{
    Element a = normalize(a0);
    switch (kind_) {
    case Kind::Integers: return a[0] == 0;
    case Kind::IntegersMod: return n_ > 1 && gcd_big(a[0], n_) != 1;
    case Kind::Polynomial: {
        // McCoy: a zero divisor of R[x] is killed by a nonzero constant
        if (n_ == 1) return false;
        BigInt g = n_;
        for (const auto& c : a) g = gcd_big(g, c);
        return g > 1;
    }
    case Kind::PolyQuotient: {
        if (cardinality() > 256) return std::nullopt;
        auto F = to_finite();
        return F.ring.is_zero_divisor(F.index_of(a));
    }
    }
    return std::nullopt;
}

std::string PresentedRing::to_string(const Element& a0) const
{
    Element a = normalize(a0);
    if (!has_variable()) return a[0].str();
    std::string out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        std::string term;
        if (i == 0)
            term = a[i].str();
        else {
            if (a[i] != 1) term = a[i].str();
            term += "x";
            if (i > 1) term += "^" + std::to_string(i);
        }
        out += (out.empty() ? "" : "+") + term;
    }
    return out.empty() ? "0" : out;
}

PresentedRing::Element PresentedRing::parse(const std::string& s0) const
{
    std::string s;
    for (char c : s0)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ShapeError("empty element");
    Element acc{0};
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        BigInt coef = j > i ? BigInt(s.substr(i, j - i)) : BigInt(1);
        bool had_digits = j > i;
        i = j;
        if (i < s.size() && s[i] == '*') ++i;
        std::size_t deg = 0;
        if (i < s.size() && s[i] == 'x') {
            ++i;
            deg = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::size_t k = i;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
                if (k == i) throw ShapeError("bad exponent in '" + s0 + "'");
                deg = std::stoul(s.substr(i, k - i));
                i = k;
            }
        } else if (!had_digits) {
            throw ShapeError("cannot parse element '" + s0 + "'");
        }
        if (deg > 0 && !has_variable()) throw ShapeError("ring " + describe() + " has no variable");
        if (i < s.size() && s[i] != '+' && s[i] != '-') throw ShapeError("cannot parse element '" + s0 + "'");
        Element term(deg + 1, 0);
        term[deg] = sign * coef;
        acc.resize(std::max(acc.size(), term.size()), 0);
        for (std::size_t k = 0; k < term.size(); ++k) acc[k] += term[k];
    }
    if (kind_ == Kind::Integers) return acc;
    return normalize(acc);
}

PresentedRing::Finite PresentedRing::to_finite(std::size_t max_size) const
{
    if (!finite()) throw PreconditionError("ring " + describe() + " is infinite");
    if (cardinality() > max_size) throw GuardError("ring " + describe() + " exceeds size bound");
    auto size = static_cast<std::size_t>(cardinality());
    std::size_t d = kind_ == Kind::PolyQuotient ? g_.size() - 1 : 1;
    auto nn = static_cast<std::size_t>(n_);
    Finite F;
    F.degree = d;
    F.n = n_;
    F.elements.resize(size);
    for (std::size_t idx = 0; idx < size; ++idx) {
        Element e(d);
        std::size_t t = idx;
        for (std::size_t k = 0; k < d; ++k) {
            e[k] = t % nn;
            t /= nn;
        }
        F.elements[idx] = e;
    }
    std::vector<Elem> add(size * size), mul(size * size);
    std::vector<std::string> names(size);
    for (std::size_t a = 0; a < size; ++a) {
        names[a] = to_string(F.elements[a]);
        for (std::size_t b = 0; b < size; ++b) {
            add[a * size + b] = F.index_of(this->add(F.elements[a], F.elements[b]));
            mul[a * size + b] = F.index_of(this->mul(F.elements[a], F.elements[b]));
        }
    }
    F.ring = FiniteRing(size, std::move(add), std::move(mul), F.index_of(from_int(0)), F.index_of(from_int(1)),
                        std::move(names));
    for (std::size_t k = 0; k < nn; ++k) F.constants.push_back(F.index_of(from_int(k)));
    if (kind_ == Kind::PolyQuotient) F.x = F.index_of(variable());
    return F;
}

Elem PresentedRing::Finite::index_of(const Element& a) const
{
    std::size_t idx = 0, s = 1;
    auto nn = static_cast<std::size_t>(n);
    for (std::size_t k = 0; k < degree; ++k) {
        std::size_t c = k < a.size() ? static_cast<std::size_t>(mod_floor(a[k], n)) : 0;
        idx += c * s;
        s *= nn;
    }
    return static_cast<Elem>(idx);
}

}  // namespace dichotomy
