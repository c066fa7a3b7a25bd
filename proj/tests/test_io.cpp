#include "doctest.h"
#include "dichotomy/errors.hpp"
#include "dichotomy/io.hpp"

using namespace dichotomy;

TEST_SUITE("io")
{
    TEST_CASE("rings")
    {
        auto z4 = ring_from_json(parse_json(R"({"size":4,"add":[[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]],
            "mul":[[0,0,0,0],[0,1,2,3],[0,2,0,2],[0,3,2,1]],"zero":0,"one":1})"));
        REQUIRE(z4.finite);
        CHECK(*z4.finite == zmod(4));
        CHECK(*ring_from_json(ring_to_json(zmod(6))).finite == zmod(6));
        CHECK(ring_from_json(json("F4")).finite->size() == 4);
        CHECK(ring_from_json(parse_json(R"({"catalog":"Z/8"})")).finite->size() == 8);
        auto Z = ring_from_json(parse_json(R"({"kind":"Z"})"));
        CHECK(Z.presented);
        CHECK_FALSE(Z.finite);
        auto Q = ring_from_json(parse_json(R"({"kind":"polyquot","n":2,"modulus":[0,0,1]})"));
        CHECK(Q.finite->size() == 4);
        CHECK(ring_from_json(parse_json(R"({"kind":"poly","n":3})")).presented->kind() == PresentedRing::Kind::Polynomial);
        CHECK_THROWS_AS(ring_from_json(json("nope")), ShapeError);
        CHECK_THROWS_AS(ring_from_json(parse_json(R"({"kind":"Q"})")), ShapeError);
        CHECK_THROWS_AS(ring_from_json(parse_json(R"({"size":2})")), ShapeError);
        CHECK_THROWS_AS(parse_json("{"), ShapeError);
        CHECK_THROWS_AS(ring_from_json(parse_json(R"({"size":2,"add":[[0,1],[1,0]],"mul":[[0,0],[0,0]],"zero":0,"one":1})")),
                        AxiomError);
    }

    TEST_CASE("modules in table and compact form")
    {
        // Z/4 acting on Z/2 x Z/2 through Z/2, labels scrambled
        auto f = module_from_json(parse_json(R"({"ring":"Z/4","size":4,
            "add":[[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]],
            "action":[[0,0,0,0],[0,1,2,3],[0,0,0,0],[0,1,2,3]],
            "tags":[[0,3],[0,1]]})"));
        CHECK(f.module.module.size() == 4);
        REQUIRE(f.module.tags.size() == 2);
        CHECK(f.module.tags[0].size() == 2);
        auto back = module_from_json(module_to_json(f.module, f.ring.source));
        CHECK(back.module.module == f.module.module);
        CHECK(back.module.tags == f.module.tags);
        auto gens = module_to_json(f.module, f.ring.source, 1);
        CHECK(gens.contains("tag_generators"));
        CHECK(module_from_json(gens).module.tags == f.module.tags);
        CHECK_THROWS_AS(module_from_json(parse_json(R"({"ring":"Z/2","orders":[2],"gen_action":[[0],[1]],"tags":[[0,5]]})")),
                        ShapeError);
        CHECK_THROWS_AS(module_from_json(parse_json(R"({"ring":"Z/2","orders":[2],"gen_action":[[0]]})")), ShapeError);
    }

    TEST_CASE("tag generators span the tag")
    {
        auto R = std::make_shared<const FiniteRing>(zmod(2));
        auto N = build_engine(R, {0}, 2);
        for (const auto& t : N.module.tags) {
            auto g = tag_generators(N.module.module, t);
            CHECK(submodule_generated(N.module.module, g) == t);
        }
    }

    TEST_CASE("endo structures")
    {
        auto R = std::make_shared<const FiniteRing>(zmod(2));
        FiniteModule V(R, {2, 2}, {0, 0, 1, 2});
        EndoStructure S{V, {0, 2, 0, 2}};  // e0 -> e1, e1 -> 0
        auto j = endo_to_json(S, json("Z/2"));
        auto back = endo_from_json(j);
        CHECK(back.T == S.T);
        j["T"] = json::array({0, 1, 0, 0});
        CHECK_THROWS(endo_from_json(j));
    }

    TEST_CASE("graphs")
    {
        auto G = graph_from_text("# path\n3\n0 1\n1 2\n");
        CHECK(G.n == 3);
        CHECK(G.edges.size() == 2);
        CHECK(graph_from_text(graph_to_text(G)).edges == G.edges);
        CHECK_THROWS_AS(graph_from_text("3\n1 0\n"), ShapeError);
        CHECK_THROWS_AS(graph_from_text("3\n0 3\n"), ShapeError);
        CHECK_THROWS_AS(graph_from_text("3\n0 1 2\n"), ShapeError);
        CHECK_THROWS_AS(graph_from_text("x\n"), ShapeError);
        CHECK_THROWS_AS(graph_from_text(""), ShapeError);
        CHECK_THROWS_AS(graph_from_text("2\n0 1\n0 1\n"), ShapeError);
    }

    TEST_CASE("contexts, witnesses and free-like modules")
    {
        DecodeContext c;
        c.base0 = {2, 3};
        c.base1 = {4};
        c.ideal = {0};
        c.vertices = 3;
        auto d = context_from_json(context_to_json(c));
        CHECK(d.base0 == c.base0);
        CHECK(d.vertices == c.vertices);
        Witness w{WitnessKind::ThmB, {{0, 2}}, {"x", "y"}};
        auto v = witness_from_json(witness_to_json(w));
        CHECK(v.kind == w.kind);
        CHECK(v.path == w.path);
        CHECK(v.elements == w.elements);
        CHECK_THROWS_AS(witness_from_json(parse_json(R"({"kind":"ThmZ"})")), ShapeError);
        FreeLikeTagged N;
        N.modulus = 4;
        N.rank = 2;
        N.basis = {"e:0", "d:0:0"};
        N.tags = {{{1, 0}}};
        N.complements = {{1}};
        N.cover_rank = 1;
        auto M = freelike_from_json(freelike_to_json(N));
        CHECK(M.tags == N.tags);
        CHECK(M.basis == N.basis);
        auto verdict = verdict_to_json(classify_finite(*catalog_ring("F2[x,y]/(x^2,xy,y^2)")));
        CHECK(verdict["verdict"] == "BorelComplete");
        CHECK(verdict["witness"]["kind"] == "ThmB");
    }
}
