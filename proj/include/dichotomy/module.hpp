#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dichotomy/ring.hpp"

namespace dichotomy {

using MElem = std::uint32_t;
using MSet = std::vector<MElem>;  // sorted, no repeats

// A finite module stored as a product of cyclic groups Z/orders[i] with basis e_i.
// An element is the mixed-radix integer of its coordinates, first coordinate least significant.
// The action is determined by the images r*e_i.
class FiniteModule {
public:
    FiniteModule() = default;
    // gen_action[r * rank + i] = r * e_i. Validates; throws ShapeError / AxiomError.
    FiniteModule(RingPtr ring, std::vector<unsigned> orders, std::vector<MElem> gen_action);
    static FiniteModule zero_module(RingPtr ring);
    // The ring acting on itself.
    static FiniteModule regular(RingPtr ring);
    // Direct sum, first summand in the low coordinates.
    static FiniteModule direct_sum(const FiniteModule& a, const FiniteModule& b);

    const FiniteRing& ring() const { return *ring_; }
    const RingPtr& ring_ptr() const { return ring_; }
    std::size_t size() const { return size_; }
    std::size_t rank() const { return orders_.size(); }
    const std::vector<unsigned>& orders() const { return orders_; }
    const std::vector<MElem>& gen_action() const { return gen_action_; }
    bool elementary2() const { return all2_; }

    MElem zero() const { return 0; }
    MElem gen(std::size_t i) const { return static_cast<MElem>(weight_[i]); }
    MElem add(MElem a, MElem b) const;
    MElem neg(MElem a) const;
    MElem sub(MElem a, MElem b) const { return add(a, neg(b)); }
    MElem scale(long long k, MElem a) const;
    MElem act(Elem r, MElem a) const;
    unsigned additive_order(MElem a) const;
    std::vector<unsigned> coords(MElem a) const;
    MElem from_coords(const std::vector<unsigned>& c) const;

    bool same_ring(const FiniteModule& o) const { return ring_ == o.ring_ || *ring_ == *o.ring_; }
    bool operator==(const FiniteModule& o) const;

private:
    RingPtr ring_;
    std::vector<unsigned> orders_;
    std::vector<std::size_t> weight_;
    std::vector<MElem> gen_action_;
    std::size_t size_ = 1;
    bool all2_ = true;
};

// Table form as read from a file; labels are 0..size-1.
struct ModuleTables {
    std::int64_t size = 0;
    std::vector<std::vector<std::int64_t>> add;
    std::vector<std::vector<std::int64_t>> action;  // ring-size x size
    std::int64_t zero = 0;
};

// Validates the tables exhaustively and finds a cyclic decomposition.
struct TableModule {
    FiniteModule module;
    std::vector<MElem> label_to_elem;
    std::vector<std::int64_t> elem_to_label;
};
TableModule module_from_tables(RingPtr ring, const ModuleTables& t);
ModuleTables module_tables(const FiniteModule& M);

struct TaggedModule {
    FiniteModule module;
    std::vector<MSet> tags;  // tags past the end are {0}

    const MSet& tag(std::size_t i) const;
    std::size_t tag_count() const { return tags.size(); }
    // Drops trailing zero tags.
    void normalize_tags();
};

MSet make_set(std::vector<MElem> v);
bool mcontains(const MSet& s, MElem x);
MSet mintersect(const MSet& a, const MSet& b);
MSet munion(const MSet& a, const MSet& b);
MSet mdifference(const MSet& a, const MSet& b);
bool msubset(const MSet& a, const MSet& b);

MSet full_set(const FiniteModule& M);
MSet submodule_generated(const FiniteModule& M, const MSet& S);
bool is_submodule(const FiniteModule& M, const MSet& S);
MSet submodule_sum(const FiniteModule& M, const MSet& A, const MSet& B);
MSet cyclic_submodule(const FiniteModule& M, MElem a);
ElemSet element_annihilator(const FiniteModule& M, MElem a);
ElemSet module_annihilator(const FiniteModule& M, const MSet& S);

// The section 2 vocabulary.
MSet delta_set(const FiniteModule& M, const ElemSet& I);
MSet r_star(const FiniteModule& M, const MSet& Y);
std::vector<MSet> sim_classes(const FiniteModule& M, const MSet& S);

struct IndependenceReport {
    bool independent = true;
    std::vector<Elem> coefficients;  // violating tuple
    bool relation_outside_ideal = false;
};
// Throws GuardError if |R|^|X| exceeds max_tuples.
IndependenceReport is_I_independent(const FiniteModule& M, const ElemSet& I, const std::vector<MElem>& X,
                                    std::size_t max_tuples = 10'000'000);

// Phi0: X is an I-basis and the tags are submodules. Phi1: a in R*X iff a in no tag, for a in Delta.
bool check_phi0(const TaggedModule& V, const std::vector<MElem>& X, const ElemSet& I);
// Throws PreconditionError when Phi0 fails.
bool check_phi1(const TaggedModule& V, const std::vector<MElem>& X, const ElemSet& I);
// R*(Delta minus union of tags).
MSet lemma26_set(const TaggedModule& V, const ElemSet& I);

// Brute-force isomorphism of tagged modules, tags matched index by index.
// The map is returned as a table over the elements of A. Throws GuardError past max_nodes.
struct IsoOptions {
    std::size_t max_nodes = 10'000'000;
};
std::optional<std::vector<MElem>> brute_force_isomorphic(const TaggedModule& A, const TaggedModule& B,
                                                         const IsoOptions& opt = {});
// Calls visit on every isomorphism until it returns false.
void for_each_isomorphism(const TaggedModule& A, const TaggedModule& B,
                          const std::function<bool(const std::vector<MElem>&)>& visit, const IsoOptions& opt = {});
bool verify_isomorphism(const TaggedModule& A, const TaggedModule& B, const std::vector<MElem>& map);
// Extends images of the basis e_i additively.
std::optional<std::vector<MElem>> extend_from_basis(const FiniteModule& A, const FiniteModule& B,
                                                    const std::vector<MElem>& images);

}  // namespace dichotomy
