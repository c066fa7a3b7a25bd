#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dichotomy/module.hpp"
#include "dichotomy/presented.hpp"
#include "dichotomy/zn.hpp"

namespace dichotomy {

// A module with an endomorphism, T given on elements.
struct EndoStructure {
    FiniteModule module;
    std::vector<MElem> T;
};
// Throws AxiomError when T is not additive or does not commute with the action.
void validate_endo(const EndoStructure& S);
// A module isomorphism intertwining the two endomorphisms, if any.
std::optional<std::vector<MElem>> endo_isomorphic(const EndoStructure& A, const EndoStructure& B);
// Every endomorphism of V, in lexicographic order of the images of the basis.
std::vector<std::vector<MElem>> all_endomorphisms(const FiniteModule& V);

// A submodule as a module in its own right; element i of `module` is to_ambient[i].
struct SubmoduleView {
    FiniteModule module;
    std::vector<MElem> to_ambient;
};
SubmoduleView submodule_view(const FiniteModule& M, const MSet& S);

struct QuotientModule {
    FiniteModule module;
    std::vector<MElem> proj;  // element of the ambient -> element of the quotient
};
// M / (submodule generated by S). Throws GuardError when the quotient passes max_size.
QuotientModule quotient_module(const FiniteModule& M, const MSet& S, std::size_t max_size = 1024);

// M over R/I viewed over R. M's ring must equal quotient_ring(R, I).ring.
FiniteModule pullback_module(RingPtr R, const ElemSet& I, const FiniteModule& M);

// W = V x V with tags V x 0, 0 x V, the diagonal and the graph of T.
TaggedModule endo_to_four_submodules(const EndoStructure& S);
// Throws DecodeError naming the failed condition. to_ambient receives, per element of the result, its
// element of the first tag.
EndoStructure four_submodules_decode(const TaggedModule& W, std::vector<MElem>* to_ambient = nullptr);

// M over the finite form of (Z/n)[x]/(g); the result is over Z/n with T the action of x.
EndoStructure endo_from_poly_module(const FiniteModule& M, const PresentedRing::Finite& P);
// Inverse direction, x acting as T. Throws PreconditionError when g(T) != 0.
FiniteModule poly_module_from_endo(const EndoStructure& S, const PresentedRing& ring, const PresentedRing::Finite& P);

// Free-like tagged modules over Z/n (or Z), truncated to finite rank. Vectors are integer coordinates.
using IntVec = std::vector<long long>;

// A free module with tags given by generator lists; the first tag is the kernel of the cover map.
struct FreeTagged {
    unsigned modulus = 0;  // the ring acting on the covered module is Z/modulus
    bool integral = false; // coordinates over Z rather than Z/modulus
    std::size_t rank = 0;
    std::vector<std::string> basis;
    std::vector<std::vector<IntVec>> tags;
};

struct FreeLikeTagged {
    unsigned modulus = 0;
    bool integral = false;
    std::size_t rank = 0;
    std::vector<std::string> basis;         // "e:<label>" for the cover, "d:<tag>:<i>" for the rest
    std::vector<std::vector<IntVec>> tags;  // U_*, then U_n and V_n for every tag n of the cover
    // A tag together with the unit vectors at these indices is a basis of the whole module.
    std::vector<std::vector<std::size_t>> complements;
    std::size_t cover_rank = 0;  // U_* is spanned by the first cover_rank basis vectors
};

// Tags: the kernel of the cover map, then the preimage of every tag of M. Copy j of element a is basis
// vector a + |M| * j. Throws PreconditionError unless the ring is Z/n.
FreeTagged free_cover(const TaggedModule& M, std::size_t copies = 2, bool integral = false);
// New basis vectors d, one per listed generator of each tag; eps sends d to its generator.
FreeLikeTagged freelike_from_free(const FreeTagged& F, std::size_t max_rank = 4096);
FreeLikeTagged freelike_normalize(const TaggedModule& M, std::size_t copies = 2, bool integral = false,
                                  std::size_t max_rank = 4096);

// Checks that every tag with its recorded complement forms a basis. Returns the first failing tag, if any.
std::optional<std::size_t> freelike_certificate_failure(const FreeLikeTagged& N);

// Recovers the cover tags as images of the eps maps. Throws DecodeError on malformed input.
FreeTagged freelike_to_free(const FreeLikeTagged& N);
struct FreeLikeRecovery {
    TaggedModule module;
    std::vector<MElem> cover_image;  // basis vector of the cover -> element of the recovered module
};
FreeLikeRecovery free_cover_quotient(const FreeTagged& F, std::size_t max_size = 4096);
FreeLikeRecovery freelike_recover(const FreeLikeTagged& N, std::size_t max_size = 4096);

// M = R^k0 + R^k1 over Z/n; h sends e_i (i < k0) to h[i] in R^k1. The graph {a - h(a)} and the
// automorphism a + b -> a - h(a) + b realising M = N + R^k1, each checked.
struct SplitCertificate {
    std::vector<ZnVec> complement_basis;  // a - h(a) for the basis of R^k0
    std::vector<ZnVec> forward, inverse;  // rows are images of basis vectors
    bool verified = false;
};
SplitCertificate lemma_split(unsigned n, std::size_t k0, std::size_t k1, const std::vector<ZnVec>& h);

// Coding endomorphism structures over S = R/(Ann x + Ann y) into R-modules.
struct TheoremBCoded {
    FiniteModule module;
    std::vector<MElem> pi;  // element of V -> element of the module
    ElemSet ideal;          // Ann x + Ann y
};
// Throws PreconditionError naming (1) (x)∩(y) = 0 or (2) 1 not in Ann x + Ann y; GuardError past max_w.
TheoremBCoded theoremB_code(RingPtr R, Elem x, Elem y, const EndoStructure& S, std::size_t max_w = 1u << 16);
EndoStructure theoremB_decode(const FiniteModule& M, Elem x, Elem y);
// pi[V] = xM, and T(v) = w iff some c has xc = pi(v) and yc = pi(w). Exhaustive.
bool theoremB_claims_hold(const TheoremBCoded& C, const EndoStructure& S, Elem x, Elem y);

}  // namespace dichotomy
