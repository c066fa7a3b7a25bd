#include <random>
#include <set>

#include "doctest.h"
#include "dichotomy/errors.hpp"
#include "dichotomy/fp.hpp"

using namespace dichotomy;

namespace {

// All F_p-combinations of the given vectors, closed by brute force.
std::set<FpVec> closure(unsigned p, std::size_t n, const std::vector<FpVec>& gens)
{
    std::set<FpVec> out{FpVec(n, 0)};
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<FpVec> cur(out.begin(), out.end());
        for (const auto& a : cur)
            for (const auto& g : gens) {
                FpVec s(n);
                for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<std::uint8_t>((a[i] + g[i]) % p);
                if (out.insert(s).second) grew = true;
            }
    }
    return out;
}

std::set<FpVec> members(const Subspace& S)
{
    std::set<FpVec> out;
    for (auto x : S.elements()) out.insert(fp_decode(x, S.p(), S.ambient()));
    return out;
}

FpVec random_vec(std::mt19937& rng, unsigned p, std::size_t n)
{
    FpVec v(n);
    for (auto& x : v) x = static_cast<std::uint8_t>(rng() % p);
    return v;
}

}  // namespace

TEST_SUITE("fp")
{
    TEST_CASE("inverse")
    {
        CHECK(fp_inverse(3, 7) == 5);
        CHECK(fp_inverse(1, 2) == 1);
        CHECK_THROWS_AS(fp_inverse(0, 5), PreconditionError);
    }

    TEST_CASE("encode and decode")
    {
        CHECK(fp_encode({1, 0, 1}, 2) == 5);
        CHECK(fp_encode({2, 1}, 3) == 5);
        CHECK(fp_decode(5, 3, 2) == FpVec{2, 1});
        CHECK(fp_axis(3, 1) == FpVec{0, 1, 0});
    }

    TEST_CASE("span matches brute-force closure")
    {
        std::mt19937 rng(7);
        for (unsigned p : {2u, 3u, 5u})
            for (int trial = 0; trial < 30; ++trial) {
                std::size_t n = 1 + rng() % 4;
                std::vector<FpVec> gens;
                for (std::size_t k = rng() % 4; k > 0; --k) gens.push_back(random_vec(rng, p, n));
                Subspace S = Subspace::span(p, n, gens);
                auto want = closure(p, n, gens);
                CHECK(members(S) == want);
                std::size_t size = 1;
                for (std::size_t d = 0; d < S.dim(); ++d) size *= p;
                CHECK(size == want.size());
                for (const auto& v : want) CHECK(S.contains(v));
            }
    }

    TEST_CASE("join and meet agree with set operations")
    {
        std::mt19937 rng(11);
        for (unsigned p : {2u, 3u})
            for (int trial = 0; trial < 40; ++trial) {
                std::size_t n = 2 + rng() % 3;
                std::vector<FpVec> ga, gb;
                for (std::size_t k = rng() % 3; k > 0; --k) ga.push_back(random_vec(rng, p, n));
                for (std::size_t k = rng() % 3; k > 0; --k) gb.push_back(random_vec(rng, p, n));
                Subspace A = Subspace::span(p, n, ga), B = Subspace::span(p, n, gb);
                auto sa = members(A), sb = members(B);
                std::set<FpVec> inter;
                for (const auto& v : sa)
                    if (sb.count(v)) inter.insert(v);
                CHECK(members(A.meet(B)) == inter);
                std::vector<FpVec> all = ga;
                all.insert(all.end(), gb.begin(), gb.end());
                CHECK(members(A.join(B)) == closure(p, n, all));
                CHECK(A.meet(B).subset_of(A));
                CHECK(A.subset_of(A.join(B)));
                CHECK((A.join(B) == B.join(A)));
            }
    }

    TEST_CASE("canonical form")
    {
        Subspace a = Subspace::span(2, 3, {{1, 1, 0}, {0, 1, 1}});
        Subspace b = Subspace::span(2, 3, {{1, 0, 1}, {1, 1, 0}});
        CHECK(a == b);
        CHECK_FALSE(a.add({0, 1, 1}));
        CHECK(a.add({1, 0, 0}));
        CHECK(a == Subspace::whole(2, 3));
    }

    TEST_CASE("axes")
    {
        Subspace s = Subspace::span(2, 3, {{1, 1, 0}, {0, 1, 1}});
        CHECK(s.axis_free());
        CHECK_FALSE(Subspace::span(2, 3, {{1, 1, 0}, {0, 1, 0}}).axis_free());
        CHECK(Subspace::coordinate(3, 3, {0, 2}).contains_axis(2));
        CHECK_FALSE(Subspace::coordinate(3, 3, {0, 2}).contains_axis(1));
    }

    TEST_CASE("widen, image and restrict")
    {
        Subspace s = Subspace::span(2, 2, {{1, 1}});
        CHECK(s.widen(3) == Subspace::span(2, 3, {{1, 1, 0}}));
        CHECK(s.image({2, 0}, 3) == Subspace::span(2, 3, {{1, 0, 1}}));
        Subspace t = Subspace::span(3, 3, {{1, 2, 0}, {0, 1, 1}});
        CHECK(t.restrict_prefix(2) == Subspace::span(3, 2, {{1, 2}}));
        CHECK(t.restrict_prefix(0).dim() == 0);
        CHECK_THROWS_AS(s.widen(1), PreconditionError);
        CHECK_THROWS_AS(s.image({0}, 3), ShapeError);
        CHECK_THROWS_AS(s.reduce({1, 0, 0}), ShapeError);
    }

    TEST_CASE("elements are sorted codes")
    {
        auto e = Subspace::span(2, 3, {{1, 1, 0}, {0, 1, 1}}).elements();
        CHECK(e == std::vector<std::uint32_t>{0, 3, 5, 6});
        CHECK(Subspace(3, 2).elements() == std::vector<std::uint32_t>{0});
    }
}
