#include "dichotomy/coder.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "dichotomy/errors.hpp"

namespace dichotomy {

namespace {

bool is_perm(const std::vector<std::size_t>& s, std::size_t n)
{
    if (s.size() != n) return false;
    std::vector<char> hit(n, 0);
    for (std::size_t x : s) {
        if (x >= n || hit[x]) return false;
        hit[x] = 1;
    }
    return true;
}

std::vector<std::pair<std::size_t, std::size_t>> point_pairs(std::size_t n)
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) out.push_back({i, j});
    return out;
}

std::size_t pair_index(std::size_t n, std::size_t a, std::size_t b)
{
    if (a > b) std::swap(a, b);
    return a * n - a * (a + 1) / 2 + (b - a - 1);
}

Perm induced_on_pairs(const Perm& s, std::size_t n)
{
    auto P = point_pairs(n);
    Perm out(P.size());
    for (std::size_t k = 0; k < P.size(); ++k) out[k] = pair_index(n, s[P[k].first], s[P[k].second]);
    return out;
}

FpVec unit_sum(std::size_t dim, std::initializer_list<std::size_t> coords)
{
    FpVec v(dim, 0);
    for (std::size_t c : coords) v[c] = static_cast<std::uint8_t>(v[c] + 1);
    return v;
}

// Element map of a coordinate permutation of F_p^dim.
std::vector<MElem> coordinate_map(unsigned p, std::size_t dim, const Perm& s)
{
    KStructure K;
    K.p = p;
    K.dim = dim;
    return perm_to_element_map(K, s);
}

}  // namespace

void validate_graph(const Graph& G)
{
    for (auto [u, v] : G.edges) {
        if (u == v) throw ShapeError("graph has a loop at " + std::to_string(u));
        if (u > v) throw ShapeError("edges must be listed as u < v");
        if (v >= G.n) throw ShapeError("edge endpoint " + std::to_string(v) + " out of range");
    }
}

Engine build_engine(RingPtr ring, const ElemSet& I, std::size_t stage, std::size_t max_carrier)
{
    Residue res = prime_residue(*ring, I);
    unsigned p = res.p;
    Engine N;
    N.ring = ring;
    N.ideal = I;
    N.stage = stage;
    std::vector<GrowSpec> steps;
    switch (stage) {
    case 1:
        steps = {{{1, 1}, {{1, 0}}}};
        break;
    case 2:
        steps = {{{1, 1}, {{1, 0}}}, {{1}, {{1, 0, 2}, {1, 2, 0}}}};
        break;
    case 3:
        steps = {{{1, 1, 1, 3}, {{1, 2, 0, 4, 5, 3}}}};
        break;
    default:
        throw PreconditionError("engine stage must be 1, 2 or 3");
    }
    N.symmetry0 = steps.back().symmetry;
    std::size_t d0 = 0;
    for (const auto& s : steps)
        for (std::size_t c : s.class_sizes) d0 += c;
    std::size_t d1 = d0 * (d0 - 1) / 2;
    double carrier = 1;
    for (std::size_t i = 0; i < d0 + d1; ++i) carrier *= p;
    if (carrier > static_cast<double>(max_carrier))
        throw GuardError("engine carrier " + std::to_string(static_cast<unsigned long long>(carrier)) + " exceeds the guard");

    N.chain = build_chain(seed_structure(p), steps);
    N.sort0 = N.chain.stages.back();
    N.pairs = point_pairs(d0);
    for (const auto& s : N.symmetry0) N.symmetry1.push_back(induced_on_pairs(s, d0));
    N.sort1 = grow(seed_structure(p), {std::vector<std::size_t>(d1, 1), N.symmetry1, true});
    N.k0.resize(d1);
    for (std::size_t i = 0; i < d1; ++i) N.k0[i] = N.sort1.eclass[i];

    std::size_t dim = d0 + d1;
    std::vector<std::size_t> lo(d0), hi(d1), shift(d1);
    std::iota(lo.begin(), lo.end(), 0);
    std::iota(hi.begin(), hi.end(), d0);
    std::iota(shift.begin(), shift.end(), d0);
    std::vector<Subspace> tags;
    tags.push_back(Subspace::coordinate(p, dim, lo));
    tags.push_back(Subspace::coordinate(p, dim, hi));
    DecodeContext& ctx = N.context;
    ctx.sort0 = 0;
    ctx.sort1 = 1;
    for (const auto& t : N.sort0.tags) {
        ctx.base0.push_back(tags.size());
        tags.push_back(t.widen(dim));
    }
    for (const auto& t : N.sort1.tags) {
        ctx.base1.push_back(tags.size());
        tags.push_back(t.image(shift, dim));
    }
    Subspace T(p, dim), Q(p, dim);
    for (std::size_t k = 0; k < N.pairs.size(); ++k) {
        auto [x, y] = N.pairs[k];
        for (std::size_t z = 0; z < d1; ++z) {
            if (N.sort1.eclass[z] != N.k0[k]) continue;
            T.add(unit_sum(dim, {x, y, d0 + z}));
            if (N.sort0.eclass[x] == N.sort0.eclass[y]) Q.add(fp_axis(dim, d0 + z));
        }
    }
    ctx.rq = tags.size();
    tags.push_back(Q);
    ctx.rt = tags.size();
    tags.push_back(T);
    ctx.ug = tags.size();
    ctx.ideal = I;

    std::vector<unsigned> orders(dim, p);
    std::vector<MElem> ga(ring->size() * dim);
    std::size_t w = 1;
    for (std::size_t i = 0; i < dim; ++i, w *= p)
        for (Elem r = 0; r < ring->size(); ++r) ga[r * dim + i] = static_cast<MElem>(res.map[r] * w);
    N.module.module = FiniteModule(ring, std::move(orders), std::move(ga));
    for (const auto& t : tags) N.module.tags.push_back(t.elements());
    return N;
}

std::vector<std::size_t> coded_points(const Engine& N, const Graph& G)
{
    validate_graph(G);
    if (G.n > N.vertex_capacity())
        throw ShapeError("graph has " + std::to_string(G.n) + " vertices but the engine stage has " +
                         std::to_string(N.vertex_capacity()) + " classes");
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < N.pairs.size(); ++k) {
        std::size_t a = N.sort0.eclass[N.pairs[k].first], b = N.sort0.eclass[N.pairs[k].second];
        if (!G.edges.count({std::min(a, b), std::max(a, b)})) continue;
        for (std::size_t z = 0; z < N.sort1.dim; ++z)
            if (N.sort1.eclass[z] == N.k0[k]) out.push_back(z);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CodedGraph code_graph(const Engine& N, const Graph& G)
{
    std::size_t d0 = N.sort0.dim, dim = d0 + N.sort1.dim;
    Subspace U(N.sort0.p, dim);
    for (std::size_t z : coded_points(N, G)) U.add(fp_axis(dim, d0 + z));
    CodedGraph out{N.module, N.context};
    out.module.tags.push_back(U.elements());
    out.context.vertices = G.n;
    return out;
}

DecodeTrace decode_trace(const TaggedModule& V, const DecodeContext& ctx)
{
    const FiniteModule& M = V.module;
    const FiniteRing& R = M.ring();
    DecodeTrace tr;
    std::size_t n = M.size();
    auto mark = [&](const MSet& s) {
        std::vector<char> b(n, 0);
        for (MElem a : s) b[a] = 1;
        return b;
    };
    const MSet& P0 = V.tag(ctx.sort0);
    const MSet& P1 = V.tag(ctx.sort1);
    if (P0.size() * P1.size() != n || mintersect(P0, P1) != MSet{0})
        throw DecodeError("sorts: the two sort tags do not split the module");
    std::vector<char> in1 = mark(P1);

    auto delta_of = [&](const MSet& P) {
        MSet out;
        for (MElem a : P) {
            if (a == 0) continue;
            bool ok = true;
            for (Elem r = 0; r < R.size() && ok; ++r) ok = (M.act(r, a) == 0) == contains(ctx.ideal, r);
            if (ok) out.push_back(a);
        }
        return out;
    };
    auto basis_lines = [&](const MSet& delta, const std::vector<std::size_t>& base) {
        std::vector<std::vector<char>> marks;
        for (std::size_t j : base) marks.push_back(mark(V.tag(j)));
        MSet keep;
        for (MElem a : delta)
            if (std::none_of(marks.begin(), marks.end(), [&](const auto& m) { return m[a] != 0; })) keep.push_back(a);
        return r_star(M, keep);
    };
    tr.delta0 = delta_of(P0);
    tr.delta1 = delta_of(P1);
    tr.rx0 = basis_lines(tr.delta0, ctx.base0);
    tr.rx1 = basis_lines(tr.delta1, ctx.base1);
    std::vector<char> inx0 = mark(tr.rx0), inx1 = mark(tr.rx1);

    tr.sim0 = sim_classes(M, tr.rx0);
    std::sort(tr.sim0.begin(), tr.sim0.end());
    std::vector<std::size_t> line(n, kUnmatched);
    for (std::size_t c = 0; c < tr.sim0.size(); ++c)
        for (MElem a : tr.sim0[c]) line[a] = c;

    // w = pi0(w) + pi1(w) with pi0(w) in P0 and pi1(w) in P1
    auto split = [&](MElem w) {
        for (MElem a : P0) {
            MElem b = M.add(w, M.neg(a));
            if (in1[b]) return std::pair<MElem, MElem>{a, b};
        }
        throw DecodeError("sorts: element outside the sum of the sorts");
    };

    std::map<MElem, std::pair<std::size_t, std::size_t>> pair_of;
    for (MElem w : V.tag(ctx.rt)) {
        auto [u, c] = split(w);
        if (!inx1[c]) continue;
        tr.rstar_t.push_back(w);
        std::optional<std::pair<std::size_t, std::size_t>> found;
        for (MElem a : tr.rx0) {
            MElem b = M.add(u, M.neg(a));
            if (!inx0[b] || line[a] == line[b]) continue;
            std::pair<std::size_t, std::size_t> pr{std::min(line[a], line[b]), std::max(line[a], line[b])};
            if (found && *found != pr) throw DecodeError("K: a triple element splits over two pairs of lines");
            found = pr;
        }
        if (!found) throw DecodeError("K: an element of R*T is not a sum over two lines of R*X0");
        auto [it, fresh] = pair_of.emplace(c, *found);
        if (!fresh && it->second != *found) throw DecodeError("K: a point of R*X1 lies over two pairs of lines");
    }

    std::map<std::pair<std::size_t, std::size_t>, MSet> fibres;
    for (MElem c : tr.rx1) {
        auto it = pair_of.find(c);
        if (it == pair_of.end()) throw DecodeError("E1: a point of R*X1 is outside the range of K");
        fibres[it->second].push_back(c);
    }
    for (auto& [pr, f] : fibres) tr.e1.push_back(f);
    std::sort(tr.e1.begin(), tr.e1.end());

    std::vector<std::size_t> parent(tr.sim0.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    tr.rq_star = mintersect(V.tag(ctx.rq), tr.rx1);
    for (MElem c : tr.rq_star) {
        auto [a, b] = pair_of.at(c);
        parent[find(a)] = find(b);
    }
    std::map<std::size_t, MSet> groups;
    for (std::size_t c = 0; c < tr.sim0.size(); ++c) {
        MSet& g = groups[find(c)];
        g.insert(g.end(), tr.sim0[c].begin(), tr.sim0[c].end());
    }
    for (auto& [r, g] : groups) {
        std::sort(g.begin(), g.end());
        tr.e0.push_back(g);
    }
    std::sort(tr.e0.begin(), tr.e0.end());
    std::vector<std::size_t> vertex_of_line(tr.sim0.size());
    for (std::size_t v = 0; v < tr.e0.size(); ++v)
        for (MElem a : tr.e0[v]) vertex_of_line[line[a]] = v;

    tr.rqg_star = mintersect(V.tag(ctx.ug), tr.rx1);
    std::vector<char> coded = mark(tr.rqg_star);
    Graph& G = tr.graph;
    G.n = tr.e0.size();
    for (MElem c : tr.rqg_star) {
        auto [a, b] = pair_of.at(c);
        std::size_t u = vertex_of_line[a], v = vertex_of_line[b];
        if (u == v) throw DecodeError("edges: the coded tag joins a vertex to itself");
        G.edges.insert({std::min(u, v), std::max(u, v)});
    }
    for (MElem c : tr.rx1) {
        auto [a, b] = pair_of.at(c);
        std::size_t u = vertex_of_line[a], v = vertex_of_line[b];
        bool edge = u != v && G.edges.count({std::min(u, v), std::max(u, v)});
        if (edge != (coded[c] != 0)) throw DecodeError("edges: the coded tag is not a union of vertex pairs");
    }

    if (ctx.vertices) {
        std::size_t want = *ctx.vertices;
        if (want > G.n) throw DecodeError("vertices: context asks for more vertices than the module has");
        std::vector<std::size_t> degree(G.n, 0);
        for (auto [u, v] : G.edges) ++degree[u], ++degree[v];
        std::vector<std::size_t> keep;
        std::size_t surplus = G.n - want;
        for (std::size_t v = G.n; v-- > 0;) {
            if (surplus && degree[v] == 0) {
                --surplus;
                continue;
            }
            keep.push_back(v);
        }
        if (surplus) throw DecodeError("vertices: too few isolated vertices to drop");
        std::reverse(keep.begin(), keep.end());
        std::vector<std::size_t> ren(G.n, kUnmatched);
        for (std::size_t i = 0; i < keep.size(); ++i) ren[keep[i]] = i;
        Graph H;
        H.n = want;
        for (auto [u, v] : G.edges) H.edges.insert({ren[u], ren[v]});
        G = H;
    }
    return tr;
}

Graph recover_graph(const TaggedModule& V, const DecodeContext& ctx) { return decode_trace(V, ctx).graph; }

std::vector<MElem> lift_graph_iso(const Engine& N, const Graph& G, const Graph& H, const std::vector<std::size_t>& h)
{
    validate_graph(G);
    validate_graph(H);
    if (G.n != H.n || h.size() != G.n || !is_perm(h, G.n)) throw PreconditionError("h is not a bijection of the vertices");
    if (G.edges.size() != H.edges.size()) throw PreconditionError("h is not a graph isomorphism");
    for (auto [u, v] : G.edges)
        if (!H.edges.count({std::min(h[u], h[v]), std::max(h[u], h[v])}))
            throw PreconditionError("h sends the edge " + std::to_string(u) + "-" + std::to_string(v) + " to a non-edge");
    std::size_t k = N.vertex_capacity();
    if (G.n > k) throw ShapeError("graph does not fit the engine");
    std::vector<std::size_t> hc(k);
    std::iota(hc.begin(), hc.end(), 0);
    std::copy(h.begin(), h.end(), hc.begin());

    CodedGraph A = code_graph(N, G), B = code_graph(N, H);
    std::size_t d0 = N.sort0.dim, d1 = N.sort1.dim;
    std::optional<std::vector<MElem>> result;
    for_each_class_automorphism(N.sort0, hc, [&](const Perm& s0) {
        Perm on_pairs = induced_on_pairs(s0, d0);
        std::vector<std::size_t> h1(N.sort1.class_count(), kUnmatched);
        for (std::size_t q = 0; q < N.pairs.size(); ++q) h1[N.k0[q]] = N.k0[on_pairs[q]];
        bool lifted = false;
        for_each_class_automorphism(N.sort1, h1, [&](const Perm& s1) {
            Perm s(d0 + d1);
            for (std::size_t i = 0; i < d0; ++i) s[i] = s0[i];
            for (std::size_t j = 0; j < d1; ++j) s[d0 + j] = d0 + s1[j];
            auto map = coordinate_map(N.sort0.p, d0 + d1, s);
            if (verify_isomorphism(A.module, B.module, map)) {
                result = std::move(map);
                lifted = true;
            }
            return !lifted;
        });
        return !lifted;
    });
    if (!result) throw BudgetError("no automorphism of this engine stage induces h");
    return *result;
}

}  // namespace dichotomy
