#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dichotomy/presented.hpp"
#include "dichotomy/reductions.hpp"

namespace dichotomy {

// Arithmetic in R/(r^m) standing in for the completion along r.
// Supported: R = Z with r prime, and R = (Z/n)[x] with r = x.
class Truncation {
public:
    Truncation(PresentedRing ring, PresentedRing::Element r, unsigned depth);

    const PresentedRing& ring() const { return ring_; }
    const PresentedRing::Element& r() const { return r_; }
    unsigned depth() const { return depth_; }
    bool integers() const { return ring_.kind() == PresentedRing::Kind::Integers; }
    // For Z: the prime r; for (Z/n)[x]: n.
    std::uint64_t base() const { return base_; }

    // Coordinates of a value at depth k: one residue mod r^k for Z, k coefficients mod n otherwise.
    std::vector<std::uint64_t> coordinates(const PresentedRing::Element& a, unsigned k) const;
    std::uint64_t coordinate_modulus(unsigned k) const;

private:
    PresentedRing ring_;
    PresentedRing::Element r_;
    unsigned depth_;
    std::uint64_t base_;
};

struct TruncatedProElement {
    PresentedRing::Element value;  // normal form mod r^depth
    unsigned depth = 0;
};

TruncatedProElement truncate(const Truncation& T, const PresentedRing::Element& a, unsigned depth);
TruncatedProElement truncate(const Truncation& T, const PresentedRing::Element& a);
// Depth mismatches throw PreconditionError.
TruncatedProElement tadd(const Truncation& T, const TruncatedProElement& a, const TruncatedProElement& b);
TruncatedProElement tsub(const Truncation& T, const TruncatedProElement& a, const TruncatedProElement& b);
TruncatedProElement tmul(const Truncation& T, const TruncatedProElement& a, const TruncatedProElement& b);
TruncatedProElement project(const Truncation& T, const TruncatedProElement& a, unsigned k);
bool tequal(const Truncation& T, const TruncatedProElement& a, const TruncatedProElement& b);
// a lies in r^n times the depth-m elements iff its value is 0 mod r^n.
bool divisible(const Truncation& T, const TruncatedProElement& a, unsigned n);
// The quotient, at depth m - n. Throws PreconditionError when not divisible.
TruncatedProElement divide(const Truncation& T, const TruncatedProElement& a, unsigned n);
// Largest n <= depth with a divisible by r^n.
unsigned valuation(const Truncation& T, const TruncatedProElement& a);
std::string to_string(const Truncation& T, const TruncatedProElement& a);

// sigma_s = sum of r^i over i in s; s is read below the depth.
struct GammaElement {
    std::vector<unsigned> s;  // sorted
};
TruncatedProElement gamma_value(const Truncation& T, const GammaElement& g, unsigned depth);

// A polynomial in the Gamma variables with integer coefficients.
struct GammaPolynomial {
    std::vector<std::vector<unsigned>> monomials;  // exponent vectors
    std::vector<long long> coefficients;
    std::string to_string() const;
};

struct IndependenceCertificate {
    bool certified = false;
    std::optional<GammaPolynomial> counterexample;  // nonzero, vanishing mod r^m
    unsigned degree = 0, height = 0, depth = 0;
    std::uint64_t polynomials = 0;  // nonzero polynomials covered
};
// Exhaustive over total degree <= degree and coefficients in [-height, height], by meeting in the middle.
// Throws GuardError when a half of the enumeration passes max_half.
IndependenceCertificate independence_certificate(const Truncation& T, const std::vector<GammaElement>& gammas,
                                                 unsigned degree, unsigned height,
                                                 std::uint64_t max_half = 20'000'000);

// Candidates are read below the depth from positions start, start+g, start+2g+1, start+3g+3, ...
struct GammaSearch {
    std::vector<GammaElement> gammas;
    std::vector<IndependenceCertificate> certificates;  // one per accepted step
    bool complete = false;
    std::optional<IndependenceCertificate> last_failure;
};
GammaElement gap_pattern(unsigned start, unsigned gap, unsigned depth);
GammaSearch greedy_gammas(const Truncation& T, std::size_t count, unsigned degree, unsigned height);

// A submodule of the completion to the power k, given by generators in formal coordinates: block 0 is the
// R-part, block n is the coefficient of gamma_n. Solving happens over R/(r^m); needs R = Z.
struct PureSubmoduleRep {
    Truncation trunc;
    std::size_t rank = 0;
    std::vector<GammaElement> gammas;
    std::vector<IntVec> generators;  // length rank * (gammas + 1)
};

struct MembershipAnswer {
    enum class Kind { True, False, Unknown } kind = Kind::False;
    unsigned depth = 0;
    unsigned divisions = 0;  // the j with r^j a in the span, when True or Unknown
};
std::string to_string(const MembershipAnswer& a);
// Smallest j < depth with r^j a in the span mod r^m. A j > 0 must also be the answer mod r^(m-1), else the
// answer is False. Unknown when j exceeds the budget.
MembershipAnswer pure_closure_membership(const PureSubmoduleRep& G, const IntVec& a, unsigned budget);

// Tags of M over Z are M_1..M_t; M_0 is the whole free module and contributes the standard basis.
// Throws PreconditionError unless there is one gamma per tag and they are certified at (degree, height).
PureSubmoduleRep code_freelike(const Truncation& T, std::size_t rank, const std::vector<std::vector<IntVec>>& tags,
                               const std::vector<GammaElement>& gammas, unsigned degree, unsigned height);
PureSubmoduleRep code_freelike(const Truncation& T, const FreeLikeTagged& N, const std::vector<GammaElement>& gammas,
                               unsigned degree, unsigned height);
// gamma_n a in G, for tag n counted from 1.
MembershipAnswer mkchar_test(const PureSubmoduleRep& G, std::size_t n, const IntVec& a, unsigned budget);

// The generators evaluated in the completion, as residues mod r^m.
std::vector<std::vector<std::uint64_t>> numeric_generators(const PureSubmoduleRep& G);

}  // namespace dichotomy
