#include "dichotomy/zn.hpp"

#include <numeric>
#include <tuple>
#include <utility>

#include "dichotomy/errors.hpp"

namespace dichotomy {

namespace {

using i64 = long long;

i64 xgcd(i64 a, i64 b, i64& s, i64& t)
{
    i64 s0 = 1, t0 = 0, s1 = 0, t1 = 1;
    while (b != 0) {
        i64 q = a / b;
        std::tie(a, b) = std::make_pair(b, a - q * b);
        std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
        std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
    }
    s = s0;
    t = t0;
    return a;
}

void axpy(ZnVec& y, i64 a, const ZnVec& x, std::uint32_t n)
{
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = zn_mod(static_cast<i64>(y[i]) + a * x[i], n);
}

bool is_zero(const ZnVec& v)
{
    for (auto x : v)
        if (x) return false;
    return true;
}

// Rows of gens in Howell form, pivots restricted to the first `limit` columns.
std::vector<ZnVec> howell(std::uint32_t n, std::size_t limit, std::vector<ZnVec> rows)
{
    std::size_t r = 0;
    for (std::size_t j = 0; j < limit && r < rows.size(); ++j) {
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][j] == 0) continue;
            i64 a = rows[r][j], b = rows[i][j], s, t;
            i64 g = xgcd(a, b, s, t);
            i64 u = b / g, v = a / g;
            ZnVec nr(rows[r].size()), ni(rows[r].size());
            for (std::size_t c = 0; c < nr.size(); ++c) {
                nr[c] = zn_mod(s * rows[r][c] + t * rows[i][c], n);
                ni[c] = zn_mod(-u * rows[r][c] + v * rows[i][c], n);
            }
            rows[r] = std::move(nr);
            rows[i] = std::move(ni);
        }
        std::uint32_t p = rows[r][j];
        if (p == 0) continue;
        auto g = std::gcd(p, n);
        if (g != p) {
            std::uint32_t unit = 0;
            for (std::uint32_t u = 1; u < n && !unit; ++u)
                if (std::gcd(u, n) == 1 && static_cast<std::uint64_t>(u) * p % n == g) unit = u;
            for (auto& x : rows[r]) x = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * unit % n);
        }
        for (std::size_t i = 0; i < r; ++i) axpy(rows[i], -static_cast<i64>(rows[i][j] / g), rows[r], n);
        ZnVec sat = rows[r];
        for (auto& x : sat) x = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * (n / g) % n);
        if (!is_zero(sat)) rows.push_back(std::move(sat));
        ++r;
    }
    rows.resize(std::min(r, rows.size()));
    std::vector<ZnVec> out;
    for (auto& row : rows)
        if (!is_zero(row)) out.push_back(std::move(row));
    return out;
}

std::size_t lead(const ZnVec& v)
{
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) return i;
    return v.size();
}

}  // namespace

std::uint32_t zn_mod(long long a, std::uint32_t n)
{
    long long r = a % static_cast<long long>(n);
    return static_cast<std::uint32_t>(r < 0 ? r + n : r);
}

ZnLattice ZnLattice::span(std::uint32_t n, std::size_t k, const std::vector<ZnVec>& gens)
{
    if (n < 1) throw ShapeError("modulus must be positive");
    ZnLattice L(n, k);
    std::vector<ZnVec> rows;
    for (const auto& g : gens) {
        if (g.size() != k) throw ShapeError("generator has the wrong length");
        ZnVec v(k);
        for (std::size_t i = 0; i < k; ++i) v[i] = g[i] % n;
        if (!is_zero(v)) rows.push_back(std::move(v));
    }
    L.rows_ = howell(n, k, std::move(rows));
    return L;
}

std::size_t ZnLattice::pivot(std::size_t row) const { return lead(rows_[row]); }

ZnVec ZnLattice::reduce(ZnVec v) const
{
    if (v.size() != k_) throw ShapeError("vector has the wrong length");
    for (auto& x : v) x %= n_;
    for (const auto& row : rows_) {
        std::size_t j = lead(row);
        axpy(v, -static_cast<i64>(v[j] / row[j]), row, n_);
    }
    return v;
}

bool ZnLattice::contains(const ZnVec& v) const { return is_zero(reduce(v)); }

bool ZnLattice::subset_of(const ZnLattice& o) const
{
    for (const auto& row : rows_)
        if (!o.contains(row)) return false;
    return true;
}

std::uint64_t ZnLattice::size() const
{
    std::uint64_t s = 1;
    for (const auto& row : rows_) s *= n_ / row[lead(row)];
    return s;
}

std::optional<ZnVec> zn_solve(std::uint32_t n, std::size_t k, const std::vector<ZnVec>& gens, const ZnVec& b)
{
    if (b.size() != k) throw ShapeError("target has the wrong length");
    std::size_t m = gens.size();
    std::vector<ZnVec> rows;
    for (std::size_t i = 0; i < m; ++i) {
        if (gens[i].size() != k) throw ShapeError("generator has the wrong length");
        ZnVec v(k + m, 0);
        for (std::size_t c = 0; c < k; ++c) v[c] = gens[i][c] % n;
        v[k + i] = 1 % n;
        rows.push_back(std::move(v));
    }
    rows = howell(n, k, std::move(rows));
    ZnVec w(k + m, 0);
    for (std::size_t c = 0; c < k; ++c) w[c] = b[c] % n;
    for (const auto& row : rows) {
        std::size_t j = lead(row);
        if (j >= k) break;
        axpy(w, -static_cast<i64>(w[j] / row[j]), row, n);
    }
    for (std::size_t c = 0; c < k; ++c)
        if (w[c]) return std::nullopt;
    ZnVec coef(m);
    for (std::size_t i = 0; i < m; ++i) coef[i] = zn_mod(-static_cast<i64>(w[k + i]), n);
    return coef;
}

}  // namespace dichotomy
