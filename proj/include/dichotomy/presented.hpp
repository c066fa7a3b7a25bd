#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "dichotomy/ring.hpp"

namespace dichotomy {

using BigInt = boost::multiprecision::cpp_int;

// Z, Z/n, (Z/n)[x]/(g) with g monic, and (Z/n)[x], all with normal-form arithmetic.
class PresentedRing {
public:
    enum class Kind { Integers, IntegersMod, PolyQuotient, Polynomial };
    using Element = std::vector<BigInt>;  // coefficients, constant term first

    static PresentedRing integers();
    static PresentedRing zmod(const BigInt& n);
    static PresentedRing poly_quotient(const BigInt& n, const std::vector<BigInt>& monic);
    static PresentedRing polynomial(const BigInt& n);

    Kind kind() const { return kind_; }
    const BigInt& base_modulus() const { return n_; }  // 0 for Z
    const std::vector<BigInt>& poly_modulus() const { return g_; }
    bool has_variable() const { return kind_ == Kind::PolyQuotient || kind_ == Kind::Polynomial; }
    bool finite() const { return kind_ == Kind::IntegersMod || kind_ == Kind::PolyQuotient; }
    BigInt cardinality() const;  // requires finite()
    std::string describe() const;

    Element normalize(Element a) const;
    Element from_int(const BigInt& k) const;
    Element variable() const;
    Element add(const Element& a, const Element& b) const;
    Element neg(const Element& a) const;
    Element sub(const Element& a, const Element& b) const { return add(a, neg(b)); }
    Element mul(const Element& a, const Element& b) const;
    bool is_zero(const Element& a) const;
    bool equal(const Element& a, const Element& b) const { return normalize(a) == normalize(b); }

    // nullopt when the catalog cannot decide (very large finite quotients).
    std::optional<bool> is_unit(const Element& a) const;
    std::optional<bool> is_zero_divisor(const Element& a) const;

    std::string to_string(const Element& a) const;
    Element parse(const std::string& s) const;  // throws ShapeError

    struct Finite {
        FiniteRing ring;
        std::vector<Element> elements;  // index -> normal form
        std::vector<Elem> constants;    // k in Z/n -> index of the constant k
        Elem x = 0;                     // index of the variable (PolyQuotient only)
        Elem index_of(const Element& a) const;
        std::size_t degree = 0;
        BigInt n = 0;
    };
    Finite to_finite(std::size_t max_size = 4096) const;

private:
    Kind kind_ = Kind::Integers;
    BigInt n_ = 0;
    std::vector<BigInt> g_;
};

BigInt mod_floor(const BigInt& a, const BigInt& n);

}  // namespace dichotomy
