#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dichotomy/presented.hpp"
#include "dichotomy/ring.hpp"

namespace dichotomy {

enum class WitnessKind { ThmA, ThmB, ThmC, NonMaximalPrime, InfOrthIdempotents };
std::string to_string(WitnessKind k);
WitnessKind witness_kind_from_string(const std::string& s);  // throws ShapeError

// Elements are given by name in the ring reached after replaying the quotient path.
//   ThmA: r.  ThmB: x, y.  ThmC: a_1, a_2, ... with I_n = Ann(a_n).
//   NonMaximalPrime: generators of the prime.  InfOrthIdempotents: none.
struct Witness {
    WitnessKind kind = WitnessKind::ThmA;
    std::vector<ElemSet> path;  // each ideal lives in the previous quotient; finite rings only
    std::vector<std::string> elements;
};

struct LocalChain {
    FiniteRing factor;
    Elem idempotent = 0;             // in the input ring
    Elem maximal_generator = 0;      // in the factor
    std::vector<ElemSet> chain;      // (x^i) for i = 0..k, ending at the zero ideal
};

struct Verdict {
    bool pir = false;
    std::vector<LocalChain> factors;  // filled for every chain factor
    std::optional<Witness> witness;   // set when not a PIR
    FiniteRing witness_ring;          // the ring the witness lives in
    std::vector<std::string> transcript;
};

bool ideals_linearly_ordered(const std::vector<ElemSet>& ideals);
Verdict classify_finite(const FiniteRing& R, std::size_t max_carrier = kDefaultMaxCarrier);

enum class Truth { True, False, Unsupported };
std::string to_string(Truth t);
struct VerifyResult {
    Truth truth = Truth::False;
    std::vector<std::string> transcript;
};
// Throws ShapeError when an element does not parse or the path is not a chain of ideals.
VerifyResult verify_witness(const FiniteRing& R, const Witness& w);
VerifyResult verify_witness(const PresentedRing& R, const Witness& w);
// Replays the path by successive quotients.
FiniteRing replay_path(const FiniteRing& R, const std::vector<ElemSet>& path);

struct Census {
    std::vector<std::size_t> counts;  // counts[k] = isomorphism classes of order k, k <= bound
    std::uint64_t actions = 0;        // action tables enumerated
};
// Throws GuardError when the enumeration would pass max_candidates.
Census count_modules_upto(const FiniteRing& R, std::size_t bound, std::uint64_t max_candidates = 20'000'000);

}  // namespace dichotomy
