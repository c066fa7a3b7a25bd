#pragma once

// Independent brute-force oracles used by the unit and acceptance tests.
// They read ring and module tables directly and share no code paths with the library's algorithms.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "dichotomy/module.hpp"
#include "dichotomy/ring.hpp"

namespace oracle {

using dichotomy::Elem;
using dichotomy::ElemSet;
using dichotomy::FiniteRing;

inline ElemSet from_mask(std::uint32_t m, std::size_t n)
{
    ElemSet s;
    for (Elem i = 0; i < n; ++i)
        if (m >> i & 1) s.push_back(i);
    return s;
}

inline void canonical_sort(std::vector<ElemSet>& v)
{
    std::sort(v.begin(), v.end(), [](const ElemSet& a, const ElemSet& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
}

// Every subset of the carrier, kept when it is an ideal. Carriers up to 20 elements.
inline std::vector<ElemSet> subset_scan_ideals(const FiniteRing& R)
{
    std::size_t n = R.size();
    std::vector<ElemSet> out;
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) {
        if (!(m >> R.zero() & 1)) continue;
        bool ok = true;
        for (Elem a = 0; a < n && ok; ++a) {
            if (!(m >> a & 1)) continue;
            for (Elem b = 0; b < n && ok; ++b) {
                if ((m >> b & 1) && !(m >> R.add(a, b) & 1)) ok = false;
                if (!(m >> R.mul(a, b) & 1)) ok = false;
            }
        }
        if (ok) out.push_back(from_mask(m, n));
    }
    canonical_sort(out);
    return out;
}

inline ElemSet principal(const FiniteRing& R, Elem a)
{
    std::set<Elem> s;
    for (Elem r = 0; r < R.size(); ++r) s.insert(R.mul(r, a));
    return {s.begin(), s.end()};
}

inline bool every_ideal_principal(const FiniteRing& R)
{
    for (const auto& I : subset_scan_ideals(R)) {
        bool found = false;
        for (Elem a : I) found = found || principal(R, a) == I;
        if (!found) return false;
    }
    return true;
}

inline bool includes(const ElemSet& big, const ElemSet& small)
{
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline std::vector<ElemSet> maximal_ideals(const FiniteRing& R)
{
    auto all = subset_scan_ideals(R);
    std::vector<ElemSet> out;
    for (const auto& I : all) {
        if (I.size() == R.size()) continue;
        bool maximal = true;
        for (const auto& J : all)
            if (J.size() != R.size() && J.size() > I.size() && includes(J, I)) maximal = false;
        if (maximal) out.push_back(I);
    }
    return out;
}

inline std::vector<ElemSet> prime_ideals(const FiniteRing& R)
{
    std::vector<ElemSet> out;
    for (const auto& P : subset_scan_ideals(R)) {
        if (P.size() == R.size()) continue;
        std::vector<char> in(R.size(), 0);
        for (Elem p : P) in[p] = 1;
        bool prime = true;
        for (Elem a = 0; a < R.size() && prime; ++a)
            for (Elem b = 0; b < R.size() && prime; ++b)
                if (in[R.mul(a, b)] && !in[a] && !in[b]) prime = false;
        if (prime) out.push_back(P);
    }
    return out;
}

inline ElemSet nilpotents(const FiniteRing& R)
{
    ElemSet out;
    for (Elem a = 0; a < R.size(); ++a) {
        Elem x = a;
        for (std::size_t k = 0; k <= R.size(); ++k) x = R.mul(x, a);
        if (x == R.zero()) out.push_back(a);
    }
    return out;
}

inline ElemSet idempotents(const FiniteRing& R)
{
    ElemSet out;
    for (Elem a = 0; a < R.size(); ++a)
        if (R.mul(a, a) == a) out.push_back(a);
    return out;
}

inline bool ideals_form_chain(const FiniteRing& R)
{
    auto all = subset_scan_ideals(R);
    for (const auto& I : all)
        for (const auto& J : all)
            if (!includes(I, J) && !includes(J, I)) return false;
    return true;
}

struct Graph {
    int n = 0;
    std::set<std::pair<int, int>> edges;  // u < v
};

inline std::vector<Graph> all_graphs(int n)
{
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
    std::vector<Graph> out;
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << pairs.size()); ++m) {
        Graph g;
        g.n = n;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (m >> i & 1) g.edges.insert(pairs[i]);
        out.push_back(g);
    }
    return out;
}

inline bool graphs_isomorphic(const Graph& a, const Graph& b)
{
    if (a.n != b.n || a.edges.size() != b.edges.size()) return false;
    std::vector<int> p(a.n);
    for (int i = 0; i < a.n; ++i) p[i] = i;
    do {
        bool ok = true;
        for (auto [u, v] : a.edges) {
            int x = std::min(p[u], p[v]), y = std::max(p[u], p[v]);
            if (!b.edges.count({x, y})) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

// Every subset of the module carrier closed under addition and the action. Carriers up to 16 elements.
inline std::vector<dichotomy::MSet> subset_scan_submodules(const dichotomy::FiniteModule& M)
{
    std::size_t n = M.size();
    std::vector<dichotomy::MSet> out;
    for (std::uint32_t m = 1; m < (std::uint32_t{1} << n); m += 2) {
        bool ok = true;
        for (dichotomy::MElem a = 0; a < n && ok; ++a) {
            if (!(m >> a & 1)) continue;
            for (dichotomy::MElem b = 0; b < n && ok; ++b)
                if ((m >> b & 1) && !(m >> M.add(a, b) & 1)) ok = false;
            for (Elem r = 0; r < M.ring().size() && ok; ++r)
                if (!(m >> M.act(r, a) & 1)) ok = false;
        }
        if (!ok) continue;
        dichotomy::MSet s;
        for (dichotomy::MElem a = 0; a < n; ++a)
            if (m >> a & 1) s.push_back(a);
        out.push_back(s);
    }
    return out;
}

// Bijections of the carriers that respect addition, the action and the two maps.
inline bool endo_structures_isomorphic(const dichotomy::FiniteModule& A, const std::vector<dichotomy::MElem>& TA,
                                       const dichotomy::FiniteModule& B, const std::vector<dichotomy::MElem>& TB)
{
    if (A.size() != B.size()) return false;
    std::vector<dichotomy::MElem> f(A.size());
    for (dichotomy::MElem i = 0; i < f.size(); ++i) f[i] = i;
    do {
        bool ok = true;
        for (dichotomy::MElem a = 0; a < A.size() && ok; ++a) {
            ok = f[TA[a]] == TB[f[a]];
            for (dichotomy::MElem b = 0; b < A.size() && ok; ++b) ok = f[A.add(a, b)] == B.add(f[a], f[b]);
            for (Elem r = 0; r < A.ring().size() && ok; ++r) ok = f[A.act(r, a)] == B.act(r, f[a]);
        }
        if (ok) return true;
    } while (std::next_permutation(f.begin(), f.end()));
    return false;
}

// Modules over Z/n of a given order are the abelian groups of that order with exponent dividing n:
// per prime p, partitions of v_p(order) into parts at most v_p(n).
inline std::size_t zn_module_count(unsigned order, unsigned n)
{
    std::size_t count = 1;
    for (unsigned p = 2; order > 1; ++p) {
        unsigned e = 0, cap = 0;
        while (order % p == 0) {
            order /= p;
            ++e;
        }
        for (unsigned m = n; m % p == 0; m /= p) ++cap;
        if (!e) continue;
        // partitions of e with parts <= cap
        std::vector<std::size_t> ways(e + 1, 0);
        ways[0] = 1;
        for (unsigned part = 1; part <= cap; ++part)
            for (unsigned t = part; t <= e; ++t) ways[t] += ways[t - part];
        count *= ways[e];
    }
    return count;
}

// Modules over F2[x,y]/(x^2,xy,y^2) of F2-dimension k: pairs of k x k matrices with
// X^2 = XY = YX = Y^2 = 0, up to simultaneous conjugation. Matrices are row bitmasks.
inline std::size_t square_zero_pair_count(unsigned k)
{
    using Mat = std::vector<std::uint32_t>;
    auto mul = [k](const Mat& a, const Mat& b) {
        Mat c(k, 0);
        for (unsigned i = 0; i < k; ++i)
            for (unsigned j = 0; j < k; ++j)
                if (a[i] >> j & 1) c[i] ^= b[j];
        return c;
    };
    auto zero = [](const Mat& a) { return std::all_of(a.begin(), a.end(), [](std::uint32_t r) { return r == 0; }); };
    std::vector<Mat> all;
    for (std::uint32_t code = 0; code < (std::uint32_t{1} << (k * k)); ++code) {
        Mat m(k);
        for (unsigned i = 0; i < k; ++i) m[i] = code >> (i * k) & ((1u << k) - 1);
        all.push_back(m);
    }
    Mat id(k);
    for (unsigned i = 0; i < k; ++i) id[i] = 1u << i;
    std::vector<std::pair<Mat, Mat>> gl;  // (g, g^-1)
    for (const auto& g : all)
        for (const auto& h : all)
            if (mul(g, h) == id) gl.push_back({g, h});
    std::set<std::pair<Mat, Mat>> classes;
    for (const auto& X : all) {
        if (!zero(mul(X, X))) continue;
        for (const auto& Y : all) {
            if (!zero(mul(Y, Y)) || !zero(mul(X, Y)) || !zero(mul(Y, X))) continue;
            std::pair<Mat, Mat> best{X, Y};
            for (const auto& [g, h] : gl) best = std::min(best, std::make_pair(mul(mul(g, X), h), mul(mul(g, Y), h)));
            classes.insert(best);
        }
    }
    return classes.size();
}

}  // namespace oracle
