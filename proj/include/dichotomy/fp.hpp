#pragma once

#include <cstdint>
#include <vector>

namespace dichotomy {

using FpVec = std::vector<std::uint8_t>;

unsigned fp_inverse(unsigned a, unsigned p);

// A subspace of F_p^n kept in reduced row echelon form.
class Subspace {
public:
    Subspace() = default;
    Subspace(unsigned p, std::size_t n) : p_(p), n_(n) {}
    static Subspace span(unsigned p, std::size_t n, const std::vector<FpVec>& vecs);
    static Subspace whole(unsigned p, std::size_t n);
    static Subspace coordinate(unsigned p, std::size_t n, const std::vector<std::size_t>& axes);

    unsigned p() const { return p_; }
    std::size_t ambient() const { return n_; }
    std::size_t dim() const { return rows_.size(); }
    const std::vector<FpVec>& basis() const { return rows_; }

    FpVec reduce(FpVec v) const;
    bool contains(const FpVec& v) const;
    bool add(const FpVec& v);  // true if the span grew
    bool contains_axis(std::size_t i) const;
    bool axis_free() const;

    Subspace join(const Subspace& o) const;
    Subspace meet(const Subspace& o) const;
    bool subset_of(const Subspace& o) const;
    bool operator==(const Subspace& o) const { return p_ == o.p_ && n_ == o.n_ && rows_ == o.rows_; }
    bool operator<(const Subspace& o) const { return rows_ < o.rows_; }

    // Pads the ambient space with zero coordinates.
    Subspace widen(std::size_t n) const;
    // Coordinate map: coordinate i goes to coordinate map[i] in an ambient space of size n.
    Subspace image(const std::vector<std::size_t>& map, std::size_t n) const;
    // The part of the subspace living on the first k coordinates, as a subspace of F_p^k.
    Subspace restrict_prefix(std::size_t k) const;

    // All elements, encoded in mixed radix with coordinate 0 least significant.
    std::vector<std::uint32_t> elements() const;

private:
    void insert_reduced(FpVec v);
    unsigned p_ = 2;
    std::size_t n_ = 0;
    std::vector<FpVec> rows_;  // sorted by pivot
};

std::uint32_t fp_encode(const FpVec& v, unsigned p);
FpVec fp_decode(std::uint32_t x, unsigned p, std::size_t n);
FpVec fp_axis(std::size_t n, std::size_t i);

}  // namespace dichotomy
