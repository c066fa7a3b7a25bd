#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace dichotomy {

using ZnVec = std::vector<std::uint32_t>;

std::uint32_t zn_mod(long long a, std::uint32_t n);

// A submodule of (Z/n)^k in Howell form: pivots increase, each pivot divides n, entries above a pivot
// are reduced below it, and the rows are saturated so that reduction decides membership.
class ZnLattice {
public:
    ZnLattice(std::uint32_t n, std::size_t k) : n_(n), k_(k) {}
    static ZnLattice span(std::uint32_t n, std::size_t k, const std::vector<ZnVec>& gens);

    std::uint32_t modulus() const { return n_; }
    std::size_t width() const { return k_; }
    const std::vector<ZnVec>& rows() const { return rows_; }
    std::size_t pivot(std::size_t row) const;
    // Canonical representative of v modulo the lattice.
    ZnVec reduce(ZnVec v) const;
    bool contains(const ZnVec& v) const;
    bool subset_of(const ZnLattice& o) const;
    bool operator==(const ZnLattice& o) const { return n_ == o.n_ && k_ == o.k_ && rows_ == o.rows_; }
    // Number of elements.
    std::uint64_t size() const;

private:
    std::uint32_t n_;
    std::size_t k_;
    std::vector<ZnVec> rows_;
};

// Coefficients c with sum c_i gens_i = b, if any.
std::optional<ZnVec> zn_solve(std::uint32_t n, std::size_t k, const std::vector<ZnVec>& gens, const ZnVec& b);

}  // namespace dichotomy
