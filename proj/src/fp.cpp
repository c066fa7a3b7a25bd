#include "dichotomy/fp.hpp"

#include <algorithm>

#include "dichotomy/errors.hpp"

namespace dichotomy {

unsigned fp_inverse(unsigned a, unsigned p)
{
    a %= p;
    if (a == 0) throw PreconditionError("zero has no inverse");
    unsigned r = 1;
    for (unsigned e = p - 2, b = a; e; e >>= 1, b = b * b % p)
        if (e & 1) r = r * b % p;
    return r;
}

namespace {

std::size_t pivot(const FpVec& v)
{
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) return i;
    return v.size();
}

}  // namespace

Subspace Subspace::span(unsigned p, std::size_t n, const std::vector<FpVec>& vecs)
{
    Subspace s(p, n);
    for (const auto& v : vecs) s.add(v);
    return s;
}

Subspace Subspace::whole(unsigned p, std::size_t n)
{
    Subspace s(p, n);
    for (std::size_t i = 0; i < n; ++i) s.rows_.push_back(fp_axis(n, i));
    return s;
}

Subspace Subspace::coordinate(unsigned p, std::size_t n, const std::vector<std::size_t>& axes)
{
    Subspace s(p, n);
    for (std::size_t i : axes) s.add(fp_axis(n, i));
    return s;
}

FpVec Subspace::reduce(FpVec v) const
{
    if (v.size() != n_) throw ShapeError("vector length does not match the ambient space");
    for (const auto& r : rows_) {
        std::size_t pc = pivot(r);
        unsigned c = v[pc];
        if (!c) continue;
        for (std::size_t i = pc; i < n_; ++i) v[i] = static_cast<std::uint8_t>((v[i] + (p_ - c) * r[i]) % p_);
    }
    return v;
}

bool Subspace::contains(const FpVec& v) const
{
    FpVec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](std::uint8_t x) { return x == 0; });
}

void Subspace::insert_reduced(FpVec v)
{
    std::size_t pc = pivot(v);
    unsigned inv = fp_inverse(v[pc], p_);
    for (auto& x : v) x = static_cast<std::uint8_t>(x * inv % p_);
    for (auto& r : rows_) {
        unsigned c = r[pc];
        if (!c) continue;
        for (std::size_t i = 0; i < n_; ++i) r[i] = static_cast<std::uint8_t>((r[i] + (p_ - c) * v[i]) % p_);
    }
    auto it = std::lower_bound(rows_.begin(), rows_.end(), pc,
                               [](const FpVec& r, std::size_t k) { return pivot(r) < k; });
    rows_.insert(it, std::move(v));
}

bool Subspace::add(const FpVec& v)
{
    FpVec r = reduce(v);
    if (pivot(r) == n_) return false;
    insert_reduced(std::move(r));
    return true;
}

bool Subspace::contains_axis(std::size_t i) const { return contains(fp_axis(n_, i)); }

bool Subspace::axis_free() const
{
    for (std::size_t i = 0; i < n_; ++i)
        if (contains_axis(i)) return false;
    return true;
}

Subspace Subspace::join(const Subspace& o) const
{
    Subspace s = *this;
    for (const auto& r : o.rows_) s.add(r);
    return s;
}

Subspace Subspace::meet(const Subspace& o) const
{
    // Zassenhaus: rows (u|u) and (w|0); rows with vanishing left half span the intersection
    Subspace big(p_, 2 * n_);
    for (const auto& u : rows_) {
        FpVec v(u);
        v.insert(v.end(), u.begin(), u.end());
        big.add(v);
    }
    for (const auto& w : o.rows_) {
        FpVec v(w);
        v.resize(2 * n_, 0);
        big.add(v);
    }
    Subspace out(p_, n_);
    for (const auto& r : big.rows_)
        if (pivot(r) >= n_) out.add(FpVec(r.begin() + static_cast<std::ptrdiff_t>(n_), r.end()));
    return out;
}

bool Subspace::subset_of(const Subspace& o) const
{
    for (const auto& r : rows_)
        if (!o.contains(r)) return false;
    return true;
}

Subspace Subspace::widen(std::size_t n) const
{
    if (n < n_) throw PreconditionError("cannot narrow a subspace by widening");
    Subspace s(p_, n);
    for (auto r : rows_) {
        r.resize(n, 0);
        s.rows_.push_back(std::move(r));
    }
    return s;
}

Subspace Subspace::image(const std::vector<std::size_t>& map, std::size_t n) const
{
    if (map.size() != n_) throw ShapeError("coordinate map has wrong length");
    Subspace s(p_, n);
    for (const auto& r : rows_) {
        FpVec v(n, 0);
        for (std::size_t i = 0; i < n_; ++i) v[map[i]] = r[i];
        s.add(v);
    }
    return s;
}

Subspace Subspace::restrict_prefix(std::size_t k) const
{
    std::vector<std::size_t> axes;
    for (std::size_t i = 0; i < k; ++i) axes.push_back(i);
    Subspace m = meet(coordinate(p_, n_, axes));
    Subspace s(p_, k);
    for (const auto& r : m.rows_) s.add(FpVec(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(k)));
    return s;
}

std::vector<std::uint32_t> Subspace::elements() const
{
    std::vector<std::uint32_t> enc;
    for (const auto& r : rows_) enc.push_back(fp_encode(r, p_));
    std::vector<FpVec> out{FpVec(n_, 0)};
    for (const auto& r : rows_) {
        std::size_t m = out.size();
        for (unsigned c = 1; c < p_; ++c)
            for (std::size_t j = 0; j < m; ++j) {
                FpVec v = out[j];
                for (std::size_t i = 0; i < n_; ++i) v[i] = static_cast<std::uint8_t>((v[i] + c * r[i]) % p_);
                out.push_back(std::move(v));
            }
    }
    std::vector<std::uint32_t> res;
    res.reserve(out.size());
    for (const auto& v : out) res.push_back(fp_encode(v, p_));
    std::sort(res.begin(), res.end());
    return res;
}

std::uint32_t fp_encode(const FpVec& v, unsigned p)
{
    std::uint64_t x = 0, w = 1;
    for (auto c : v) {
        x += c * w;
        w *= p;
    }
    return static_cast<std::uint32_t>(x);
}

FpVec fp_decode(std::uint32_t x, unsigned p, std::size_t n)
{
    FpVec v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = static_cast<std::uint8_t>(x % p);
        x /= p;
    }
    return v;
}

FpVec fp_axis(std::size_t n, std::size_t i)
{
    FpVec v(n, 0);
    v[i] = 1;
    return v;
}

}  // namespace dichotomy
