#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dichotomy {

using Elem = std::uint32_t;
using ElemSet = std::vector<Elem>;  // always sorted, no repeats

// Raw tables as read from a file, before any validation.
struct RingTables {
    std::int64_t size = 0;
    std::vector<std::vector<std::int64_t>> add;
    std::vector<std::vector<std::int64_t>> mul;
    std::int64_t zero = 0;
    std::int64_t one = 0;
};

struct AxiomReport {
    bool ok = true;
    std::string axiom;          // empty when ok
    std::vector<Elem> witness;  // offending elements
};

// Throws ShapeError on malformed tables; axiom failures are reported, not thrown.
AxiomReport check_ring_axioms(const RingTables& t);

class FiniteRing {
public:
    FiniteRing();
    // Validates shape and axioms; throws ShapeError / AxiomError.
    FiniteRing(std::size_t n, std::vector<Elem> add, std::vector<Elem> mul, Elem zero, Elem one,
               std::vector<std::string> names = {});
    static FiniteRing from_tables(const RingTables& t, std::vector<std::string> names = {});

    std::size_t size() const { return n_; }
    Elem add(Elem a, Elem b) const { return add_[a * n_ + b]; }
    Elem mul(Elem a, Elem b) const { return mul_[a * n_ + b]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem zero() const { return zero_; }
    Elem one() const { return one_; }
    bool trivial() const { return n_ == 1; }
    Elem from_int(long long k) const;
    Elem pow(Elem a, unsigned k) const;
    unsigned additive_order(Elem a) const;

    bool is_unit(Elem a) const;
    bool is_zero_divisor(Elem a) const;  // some b != 0 with ab = 0
    bool is_idempotent(Elem a) const { return mul(a, a) == a; }
    bool is_nilpotent(Elem a) const;

    const std::string& name(Elem a) const { return names_[a]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<Elem> parse_element(const std::string& s) const;

    RingTables tables() const;
    bool operator==(const FiniteRing& o) const;

private:
    std::size_t n_ = 0;
    std::vector<Elem> add_, mul_, neg_;
    Elem zero_ = 0, one_ = 0;
    std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const FiniteRing>;

inline constexpr std::size_t kDefaultMaxCarrier = 64;

ElemSet ideal_generated(const FiniteRing& R, const ElemSet& gens);
bool is_ideal(const FiniteRing& R, const ElemSet& I);
// Canonical order: by cardinality, then lexicographically.
std::vector<ElemSet> all_ideals(const FiniteRing& R, std::size_t max_carrier = kDefaultMaxCarrier);
ElemSet annihilator(const FiniteRing& R, const ElemSet& X);
ElemSet ideal_sum(const FiniteRing& R, const ElemSet& I, const ElemSet& J);
ElemSet intersect(const ElemSet& a, const ElemSet& b);
bool contains(const ElemSet& s, Elem x);
bool is_subset(const ElemSet& a, const ElemSet& b);
bool ideal_less(const ElemSet& a, const ElemSet& b);
bool is_prime_ideal(const FiniteRing& R, const ElemSet& P);
bool is_maximal_ideal(const FiniteRing& R, const ElemSet& M);

struct Quotient {
    FiniteRing ring;
    std::vector<Elem> proj;  // element of R -> coset index
    std::vector<Elem> lift;  // coset index -> least representative
};
Quotient quotient_ring(const FiniteRing& R, const ElemSet& I);

// Elements are tuples in mixed radix with the first factor least significant.
FiniteRing product_ring(const std::vector<FiniteRing>& factors);

struct Spectrum {
    std::vector<ElemSet> maximal;
    std::vector<ElemSet> primes;
    ElemSet nilradical;
    ElemSet jacobson;
    ElemSet idempotents;
    bool jacobson_is_nil = false;
};
Spectrum spectrum(const FiniteRing& R, std::size_t max_carrier = kDefaultMaxCarrier);

struct CrtSplit {
    std::vector<Elem> idempotents;           // primitive, pairwise orthogonal, sum to one
    std::vector<FiniteRing> factors;         // factor i is e_i R with unit e_i
    std::vector<std::vector<Elem>> members;  // factor element index -> element of R
    std::vector<std::vector<Elem>> coords;   // element of R -> tuple of factor indices
};
CrtSplit crt_split(const FiniteRing& R);
bool is_local(const FiniteRing& R);

std::optional<std::vector<Elem>> ring_isomorphism(const FiniteRing& A, const FiniteRing& B);

// Small catalog.
FiniteRing zmod(unsigned n);
FiniteRing galois_field4();
// F_p[x_1..x_k] modulo the monomials outside `standard` (a down-closed list of exponent vectors).
FiniteRing monomial_quotient(unsigned p, const std::vector<std::vector<unsigned>>& standard,
                             const std::vector<std::string>& vars);
struct CatalogEntry {
    std::string name;
    FiniteRing ring;
};
std::vector<CatalogEntry> small_catalog();
std::optional<FiniteRing> catalog_ring(const std::string& name);

}  // namespace dichotomy
