#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "dichotomy/amalgam.hpp"
#include "dichotomy/module.hpp"

namespace dichotomy {

struct Graph {
    std::size_t n = 0;
    std::set<std::pair<std::size_t, std::size_t>> edges;  // u < v
};
// Throws ShapeError for loops, reversed pairs or vertices out of range.
void validate_graph(const Graph& G);

// Which tags of a coded module play which role.
struct DecodeContext {
    std::size_t sort0 = 0, sort1 = 1;
    std::vector<std::size_t> base0, base1;
    std::size_t rq = 0, rt = 0, ug = 0;
    ElemSet ideal;
    std::optional<std::size_t> vertices;
};

// The doubled module over a chain stage. Coordinates 0..d0-1 carry the first sort, d0.. the second;
// the second sort has one class per pair of first-sort points.
struct Engine {
    RingPtr ring;
    ElemSet ideal;
    std::size_t stage = 0;
    LimitChain chain;  // the first sort is its last stage
    KStructure sort0, sort1;
    std::vector<Perm> symmetry0, symmetry1;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // lexicographic pairs of first-sort points
    std::vector<std::size_t> k0;                            // pair index -> class of the second sort
    TaggedModule module;
    DecodeContext context;

    std::size_t vertex_capacity() const { return sort0.class_count(); }
};

// Stage 1: two points; stage 2: three points with full symmetry; stage 3: four classes {x},{y},{z},{a,b,c}
// with the rotation (x y z)(a b c). Throws GuardError when the carrier would pass max_carrier.
Engine build_engine(RingPtr ring, const ElemSet& I, std::size_t stage = 3, std::size_t max_carrier = 1u << 22);

struct CodedGraph {
    TaggedModule module;
    DecodeContext context;
};
// Vertex v is the v-th class of the first sort. Throws ShapeError when the graph does not fit.
CodedGraph code_graph(const Engine& N, const Graph& G);
// Second-sort basis points whose pair joins two adjacent vertices.
std::vector<std::size_t> coded_points(const Engine& N, const Graph& G);

// Every intermediate set of the decoder, in order.
struct DecodeTrace {
    MSet delta0, delta1, rx0, rx1;
    std::vector<MSet> sim0;      // lines of R*X0, sorted by least element
    MSet rstar_t;
    std::vector<MSet> e1;        // fibres of K over R*X1
    std::vector<MSet> e0;        // vertex classes in R*X0, sorted by least element
    MSet rq_star, rqg_star;
    Graph graph;
};
// Throws DecodeError naming the stage that produced malformed data.
DecodeTrace decode_trace(const TaggedModule& V, const DecodeContext& ctx);
Graph recover_graph(const TaggedModule& V, const DecodeContext& ctx);

// h sends vertex v of G to h[v] of H. Returns an element map (N, U_G) -> (N, U_H), verified.
// Throws PreconditionError if h is not a graph isomorphism, BudgetError if the engine cannot lift it.
std::vector<MElem> lift_graph_iso(const Engine& N, const Graph& G, const Graph& H, const std::vector<std::size_t>& h);

}  // namespace dichotomy
