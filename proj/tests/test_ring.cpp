#include <random>

#include "doctest.h"
#include "dichotomy/errors.hpp"
#include "dichotomy/presented.hpp"
#include "dichotomy/ring.hpp"
#include "oracles.hpp"

using namespace dichotomy;

namespace {

FiniteRing small3()
{
    return *catalog_ring("F2[x,y]/(x^2,xy,y^2)");
}

Elem el(const FiniteRing& R, const char* name)
{
    auto e = R.parse_element(name);
    REQUIRE(e.has_value());
    return *e;
}

}  // namespace

TEST_SUITE("ring")
{
    TEST_CASE("axiom scan accepts modular arithmetic and rejects a corrupted table")
    {
        CHECK(check_ring_axioms(zmod(4).tables()).ok);
        CHECK(check_ring_axioms(zmod(6).tables()).ok);
        RingTables t = zmod(4).tables();
        t.mul[3][3] = 0;
        AxiomReport rep = check_ring_axioms(t);
        CHECK_FALSE(rep.ok);
        REQUIRE(!rep.witness.empty());
        // the reported triple really violates the named law
        auto M = [&](Elem a, Elem b) { return t.mul[a][b]; };
        auto A = [&](Elem a, Elem b) { return t.add[a][b]; };
        if (rep.axiom == "multiplicative associativity") {
            auto& w = rep.witness;
            CHECK(M(static_cast<Elem>(M(w[0], w[1])), w[2]) != M(w[0], static_cast<Elem>(M(w[1], w[2]))));
        } else {
            REQUIRE(rep.axiom == "distributivity");
            auto& w = rep.witness;
            CHECK(M(w[0], static_cast<Elem>(A(w[1], w[2]))) !=
                  A(static_cast<Elem>(M(w[0], w[1])), static_cast<Elem>(M(w[0], w[2]))));
        }
    }

    TEST_CASE("malformed tables are a shape error, not an axiom failure")
    {
        RingTables t = zmod(3).tables();
        t.add[1].pop_back();
        CHECK_THROWS_AS(check_ring_axioms(t), ShapeError);
        t = zmod(3).tables();
        t.mul[0][0] = 7;
        CHECK_THROWS_AS(FiniteRing::from_tables(t), ShapeError);
        t = zmod(3).tables();
        t.mul[2][2] = 2;
        CHECK_THROWS_AS(FiniteRing::from_tables(t), AxiomError);
    }

    TEST_CASE("one-element ring is legal")
    {
        FiniteRing z1 = zmod(1);
        CHECK(z1.trivial());
        CHECK(all_ideals(z1).size() == 1);
        CHECK(product_ring({}).trivial());
    }

    TEST_CASE("ideal generation")
    {
        FiniteRing z4 = zmod(4);
        CHECK(ideal_generated(z4, {2}) == ElemSet{0, 2});
        CHECK(ideal_generated(z4, {}) == ElemSet{0});
        FiniteRing R = small3();
        Elem x = el(R, "x");
        CHECK(ideal_generated(R, {x}) == ElemSet{0, x});
    }

    TEST_CASE("ideal lattices")
    {
        CHECK(all_ideals(zmod(4)) == std::vector<ElemSet>{{0}, {0, 2}, {0, 1, 2, 3}});
        CHECK(all_ideals(zmod(2)).size() == 2);
        auto z6 = all_ideals(zmod(6));
        REQUIRE(z6.size() == 4);
        CHECK(z6[1] == ElemSet{0, 3});
        CHECK(z6[2] == ElemSet{0, 2, 4});
        CHECK_THROWS_AS(all_ideals(zmod(65)), GuardError);
        CHECK(all_ideals(zmod(65), 100).size() == 4);
    }

    TEST_CASE("ideal lattice agrees with the subset scan on the catalog")
    {
        for (const auto& e : small_catalog()) {
            INFO(e.name);
            auto ideals = all_ideals(e.ring);
            CHECK(ideals == oracle::subset_scan_ideals(e.ring));
            for (const auto& I : ideals) CHECK(is_ideal(e.ring, I));
        }
    }

    TEST_CASE("annihilators")
    {
        FiniteRing z4 = zmod(4);
        CHECK(annihilator(z4, {2}) == ElemSet{0, 2});
        CHECK(annihilator(z4, {1}) == ElemSet{0});
        FiniteRing R = small3();
        Elem x = el(R, "x"), y = el(R, "y"), xy = el(R, "x+y");
        ElemSet m{0, x, y, xy};
        std::sort(m.begin(), m.end());
        CHECK(annihilator(R, {x}) == m);
    }

    TEST_CASE("triple annihilator equals single annihilator on every subset")
    {
        for (const char* name : {"Z/4", "Z/6", "Z/8", "F2[x,y]/(x^2,xy,y^2)", "Z/2xZ/4"}) {
            FiniteRing R = *catalog_ring(name);
            for (std::uint32_t m = 0; m < (1u << R.size()); ++m) {
                ElemSet X = oracle::from_mask(m, R.size());
                ElemSet a = annihilator(R, X);
                CHECK(is_ideal(R, a));
                CHECK(annihilator(R, annihilator(R, a)) == a);
            }
        }
    }

    TEST_CASE("quotients")
    {
        FiniteRing z4 = zmod(4);
        Quotient q = quotient_ring(z4, {0, 2});
        CHECK(ring_isomorphism(q.ring, zmod(2)).has_value());
        Quotient id = quotient_ring(z4, {0});
        CHECK(id.ring.size() == 4);
        Quotient q6 = quotient_ring(zmod(6), {0, 3});
        CHECK(ring_isomorphism(q6.ring, zmod(3)).has_value());
        CHECK(quotient_ring(z4, {0, 1, 2, 3}).ring.trivial());
        CHECK_THROWS_AS(quotient_ring(z4, {0, 1}), PreconditionError);
    }

    TEST_CASE("projection is a surjective homomorphism with kernel I")
    {
        for (const auto& e : small_catalog()) {
            for (const auto& I : all_ideals(e.ring)) {
                Quotient q = quotient_ring(e.ring, I);
                const FiniteRing& R = e.ring;
                ElemSet kernel;
                for (Elem a = 0; a < R.size(); ++a) {
                    if (q.proj[a] == q.ring.zero()) kernel.push_back(a);
                    for (Elem b = 0; b < R.size(); ++b) {
                        CHECK(q.proj[R.add(a, b)] == q.ring.add(q.proj[a], q.proj[b]));
                        CHECK(q.proj[R.mul(a, b)] == q.ring.mul(q.proj[a], q.proj[b]));
                    }
                }
                CHECK(kernel == I);
                CHECK(q.ring.size() * I.size() == R.size());
            }
        }
    }

    TEST_CASE("products")
    {
        CHECK(ring_isomorphism(product_ring({zmod(2), zmod(3)}), zmod(6)).has_value());
        CHECK(product_ring({zmod(5)}) == zmod(5));
        CHECK(oracle::idempotents(product_ring({zmod(2), zmod(2)})).size() == 4);
        CHECK_FALSE(ring_isomorphism(product_ring({zmod(2), zmod(2)}), zmod(4)).has_value());
        CHECK_FALSE(ring_isomorphism(zmod(4), *catalog_ring("F2[x]/(x^2)")).has_value());
    }

    TEST_CASE("spectrum examples")
    {
        Spectrum s6 = spectrum(zmod(6));
        CHECK(s6.maximal == std::vector<ElemSet>{{0, 3}, {0, 2, 4}});
        CHECK(s6.nilradical == ElemSet{0});
        CHECK(s6.idempotents == ElemSet{0, 1, 3, 4});
        Spectrum f = spectrum(zmod(7));
        CHECK(f.maximal == std::vector<ElemSet>{{0}});
        CHECK(f.jacobson == ElemSet{0});
        CHECK(f.jacobson_is_nil);
        Spectrum s4 = spectrum(zmod(4));
        CHECK(s4.nilradical == ElemSet{0, 2});
        CHECK(s4.jacobson == ElemSet{0, 2});
        CHECK(s4.idempotents == ElemSet{0, 1});
    }

    TEST_CASE("spectrum agrees with the oracle on the catalog")
    {
        for (const auto& e : small_catalog()) {
            INFO(e.name);
            Spectrum s = spectrum(e.ring);
            CHECK(s.maximal == oracle::maximal_ideals(e.ring));
            CHECK(s.primes == oracle::prime_ideals(e.ring));
            CHECK(s.nilradical == oracle::nilpotents(e.ring));
            CHECK(s.idempotents == oracle::idempotents(e.ring));
            CHECK(s.jacobson_is_nil);
            for (const auto& M : s.maximal) CHECK(is_maximal_ideal(e.ring, M));
        }
    }

    TEST_CASE("CRT splitting")
    {
        CrtSplit s12 = crt_split(zmod(12));
        CHECK(s12.idempotents == std::vector<Elem>{4, 9});
        REQUIRE(s12.factors.size() == 2);
        CHECK(ring_isomorphism(s12.factors[0], zmod(3)).has_value());
        CHECK(ring_isomorphism(s12.factors[1], zmod(4)).has_value());
        CHECK(crt_split(zmod(4)).factors.size() == 1);
        CrtSplit s6 = crt_split(zmod(6));
        REQUIRE(s6.factors.size() == 2);
        for (const auto& f : s6.factors) CHECK(oracle::subset_scan_ideals(f).size() == 2);
    }

    TEST_CASE("CRT splitting reassembles every catalog ring")
    {
        for (const auto& e : small_catalog()) {
            INFO(e.name);
            const FiniteRing& R = e.ring;
            CrtSplit s = crt_split(R);
            Elem sum = R.zero();
            for (std::size_t i = 0; i < s.idempotents.size(); ++i) {
                sum = R.add(sum, s.idempotents[i]);
                for (std::size_t j = 0; j < s.idempotents.size(); ++j)
                    if (i != j) CHECK(R.mul(s.idempotents[i], s.idempotents[j]) == R.zero());
            }
            CHECK(sum == R.one());
            for (const auto& f : s.factors) CHECK(oracle::maximal_ideals(f).size() == 1);
            std::set<std::vector<Elem>> images;
            for (Elem a = 0; a < R.size(); ++a) {
                images.insert(s.coords[a]);
                for (Elem b = 0; b < R.size(); ++b)
                    for (std::size_t i = 0; i < s.factors.size(); ++i) {
                        CHECK(s.coords[R.add(a, b)][i] == s.factors[i].add(s.coords[a][i], s.coords[b][i]));
                        CHECK(s.coords[R.mul(a, b)][i] == s.factors[i].mul(s.coords[a][i], s.coords[b][i]));
                    }
            }
            CHECK(images.size() == R.size());
        }
    }

    TEST_CASE("every element of a finite ring is a unit or a zero divisor")
    {
        for (const auto& e : small_catalog())
            for (Elem a = 0; a < e.ring.size(); ++a) CHECK(e.ring.is_unit(a) != e.ring.is_zero_divisor(a));
    }

    TEST_CASE("ring isomorphism finds maps only between isomorphic rings")
    {
        auto cat = small_catalog();
        for (std::size_t i = 0; i < cat.size(); ++i)
            for (std::size_t j = 0; j < cat.size(); ++j) {
                auto iso = ring_isomorphism(cat[i].ring, cat[j].ring);
                CHECK(iso.has_value() == (i == j));
            }
    }

    TEST_CASE("presented rings: normal forms and arithmetic")
    {
        std::mt19937 rng(7);
        std::uniform_int_distribution<int> coef(-20, 20);
        std::vector<PresentedRing> rings{PresentedRing::integers(), PresentedRing::zmod(12),
                                         PresentedRing::poly_quotient(4, {1, 0, 1}),
                                         PresentedRing::poly_quotient(3, {2, 1, 0, 1}), PresentedRing::polynomial(6)};
        for (const auto& R : rings) {
            INFO(R.describe());
            auto rand = [&] {
                PresentedRing::Element e;
                std::size_t len = R.has_variable() ? 4 : 1;
                for (std::size_t i = 0; i < len; ++i) e.push_back(coef(rng));
                return R.normalize(e);
            };
            for (int t = 0; t < 60; ++t) {
                auto a = rand(), b = rand(), c = rand();
                CHECK(R.normalize(a) == a);
                CHECK(R.add(a, b) == R.add(b, a));
                CHECK(R.mul(a, b) == R.mul(b, a));
                CHECK(R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c)));
                CHECK(R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c)));
                CHECK(R.add(a, R.neg(a)) == R.from_int(0));
                CHECK(R.mul(a, R.from_int(1)) == a);
                CHECK(R.parse(R.to_string(a)) == a);
            }
        }
    }

    TEST_CASE("presented rings: units and zero divisors")
    {
        auto Z = PresentedRing::integers();
        CHECK(*Z.is_unit(Z.from_int(-1)));
        CHECK_FALSE(*Z.is_unit(Z.from_int(2)));
        CHECK_FALSE(*Z.is_zero_divisor(Z.from_int(2)));
        auto P = PresentedRing::polynomial(4);
        CHECK(*P.is_unit(P.parse("1+2x")));
        CHECK_FALSE(*P.is_unit(P.parse("1+x")));
        CHECK(*P.is_zero_divisor(P.parse("2+2x^3")));
        CHECK_FALSE(*P.is_zero_divisor(P.parse("2+x")));
        auto Q = PresentedRing::poly_quotient(2, {0, 0, 1});
        CHECK(*Q.is_zero_divisor(Q.variable()));
        CHECK(*Q.is_unit(Q.parse("1+x")));
        CHECK_THROWS_AS(Z.parse("x"), ShapeError);
        CHECK_THROWS_AS(Z.parse("3y"), ShapeError);
    }

    TEST_CASE("finite presented quotients become table rings")
    {
        auto F = PresentedRing::poly_quotient(2, {1, 1, 1}).to_finite();
        CHECK(F.ring.size() == 4);
        CHECK(all_ideals(F.ring).size() == 2);
        CHECK(ring_isomorphism(F.ring, galois_field4()).has_value());
        auto G = PresentedRing::poly_quotient(2, {0, 0, 1}).to_finite();
        CHECK(ring_isomorphism(G.ring, *catalog_ring("F2[x]/(x^2)")).has_value());
        CHECK(G.ring.mul(G.x, G.x) == G.ring.zero());
        CHECK_THROWS_AS(PresentedRing::integers().to_finite(), PreconditionError);
    }
}
