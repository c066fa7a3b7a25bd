#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "dichotomy/fp.hpp"
#include "dichotomy/module.hpp"

namespace dichotomy {

// A coordinate permutation: coordinate i goes to perm[i].
using Perm = std::vector<std::size_t>;
inline constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

// A member of the tagged class with an equivalence relation on the basis, written over the residue
// field F_p: the module is F_p^dim with the coordinate vectors as the basis X.
struct KStructure {
    unsigned p = 2;
    std::size_t dim = 0;
    std::vector<std::size_t> eclass;  // class id per coordinate, numbered by first coordinate
    std::vector<Subspace> tags;

    std::size_t class_count() const;
    std::vector<std::vector<std::size_t>> classes() const;
    Subspace tag(std::size_t n) const;  // zero past the end
    void normalize();
    bool operator==(const KStructure& o) const = default;
};

KStructure seed_structure(unsigned p = 2);

// Phi1 read on the basis: axis lines meet no tag, every other nonzero vector lies in some tag.
bool satisfies_phi1(const KStructure& K);
std::vector<FpVec> uncovered_vectors(const KStructure& K);

KStructure substructure(const KStructure& B, const std::vector<std::size_t>& coords);
// f sends coordinate i of A to coordinate f[i] of B.
bool is_embedding(const KStructure& A, const KStructure& B, const std::vector<std::size_t>& f);
bool is_automorphism(const KStructure& K, const Perm& s);
// A-class -> B-class under an embedding f.
std::vector<std::size_t> induced_class_map(const KStructure& A, const KStructure& B,
                                           const std::vector<std::size_t>& f);

// The module over R obtained by letting R act through R/I = F_p.
struct Residue {
    unsigned p = 2;
    std::vector<unsigned> map;  // ring element -> residue
};
Residue prime_residue(const FiniteRing& R, const ElemSet& I);
TaggedModule to_tagged_module(const KStructure& K, RingPtr R, const ElemSet& I);
std::vector<MElem> basis_elements(const KStructure& K);
std::vector<MElem> perm_to_element_map(const KStructure& K, const Perm& s);

// Equivalence relations on two sets glued along their intersection; ell sends a J-block to a
// K-block or kUnmatched.
using Partition = std::vector<std::vector<int>>;
Partition amalgamate_equivalence(const Partition& J, const Partition& K, const std::vector<std::size_t>& ell);

struct RepairOptions {
    std::vector<Perm> symmetry;  // generators; the repaired tags are invariant under them
    bool prefer_extend = true;
};
// Covers every uncovered vector without changing the tags seen by the protected coordinate sets.
// Each uncovered line, closed under the symmetry, is added to the first existing tag that stays
// admissible, or else becomes a fresh tag. Without prefer_extend the fresh tag is tried first.
void repair_tags(KStructure& K, const std::vector<std::vector<std::size_t>>& protect, const RepairOptions& opt);

struct AmalgamResult {
    KStructure N;
    std::vector<std::size_t> emb0, emb1;
};
// M sits in M0 via i0 and in M1 via i1. ell sends M1-classes to M0-classes (kUnmatched for a new
// class); when empty the classes are glued along the shared points only.
AmalgamResult tagged_disjoint_amalgamate(const KStructure& M, const KStructure& M0, const std::vector<std::size_t>& i0,
                                         const KStructure& M1, const std::vector<std::size_t>& i1,
                                         std::vector<std::size_t> ell = {}, const RepairOptions& opt = {});

// New coordinates are appended as new classes of the given sizes. Symmetry generators act on all
// coordinates of the result, which comes out invariant under them.
struct GrowSpec {
    std::vector<std::size_t> class_sizes{1};
    std::vector<Perm> symmetry;
    bool prefer_extend = true;
};
KStructure grow(const KStructure& B, const GrowSpec& spec);

// One bigness constraint and its witness: S generates A inside B, f embeds A into B, h permutes
// the classes of B extending f, and g embeds B into C extending f with g/E = h.
struct CertificateEntry {
    std::vector<std::size_t> S, f, h, g;
};
struct Constraint {
    std::vector<std::size_t> S, f, h;
};
std::vector<Constraint> enumerate_constraints(const KStructure& B, std::size_t max_constraints = 1'000'000);
std::optional<std::vector<std::size_t>> find_extension(const KStructure& B, const KStructure& C,
                                                       const Constraint& c, bool inside_B_only);
bool check_certificate_entry(const KStructure& B, const KStructure& C, const CertificateEntry& e);

struct BigExtension {
    KStructure C;
    std::vector<CertificateEntry> certificate;
    std::size_t amalgamation_steps = 0;
};
BigExtension make_big_extension(const KStructure& B, const GrowSpec& spec = {});

struct LimitChain {
    std::vector<KStructure> stages;
    std::vector<std::vector<CertificateEntry>> certificates;  // certificates[k]: stage k+1 over stage k
};
LimitChain build_chain(const KStructure& seed, const std::vector<GrowSpec>& steps);
// Seed, two swapped points, three points with full symmetry, then one more point.
LimitChain standard_chain(unsigned p = 2);
// Re-checks inclusions, certificate entries and certificate coverage.
bool verify_chain(const LimitChain& chain);

// Visits automorphisms s with class(s(x)) = h(class(x)) until visit returns false.
void for_each_class_automorphism(const KStructure& K, const std::vector<std::size_t>& h,
                                 const std::function<bool(const Perm&)>& visit);
// An automorphism of stage m inducing h, read off the certificate of stage m+1.
// Throws BudgetError when the chain is too short or the certificate leaves stage m.
Perm lift_permutation(const LimitChain& chain, std::size_t m, const std::vector<std::size_t>& h);

// 3*orbits coordinates in singleton classes, built in one step and invariant under the rotation
// of every orbit at once.
struct OrbitStructure {
    KStructure K;
    Perm rotation;
};
OrbitStructure cyclic_orbit_structure(std::size_t orbits, unsigned p = 2);

}  // namespace dichotomy
