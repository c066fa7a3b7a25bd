#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dichotomy/amalgam.hpp"
#include "dichotomy/classifier.hpp"
#include "dichotomy/coder.hpp"
#include "dichotomy/errors.hpp"
#include "dichotomy/radic.hpp"
#include "dichotomy/reductions.hpp"
#include "oracles.hpp"

using namespace dichotomy;

namespace {

// Pinned budgets and thresholds.
constexpr double kRingCoreSeconds = 10.0;
constexpr double kCodingSeconds = 300.0;
constexpr std::size_t kCatalogMin = 10;
constexpr std::size_t kMinEngineClasses = 4;
constexpr std::size_t kPairCodingStructures = 19;
constexpr unsigned kRadicPrime = 2, kRadicDepth = 16;
constexpr unsigned kDefaultDegree = 2, kDefaultHeight = 3;
constexpr unsigned kMembershipDegree = 1, kMembershipHeight = 3;
constexpr unsigned kMembershipBudget = 4;
constexpr std::size_t kMinMembershipQueries = 30;
constexpr std::size_t kRerepresentations = 100;
constexpr std::size_t kChainStages = 4;

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

RingPtr ring_of(unsigned n) { return std::make_shared<const FiniteRing>(zmod(n)); }

FiniteModule cyclic_product(RingPtr R, const std::vector<unsigned>& ord)
{
    if (ord.empty()) return FiniteModule::zero_module(R);
    std::size_t k = ord.size();
    std::vector<MElem> ga(R->size() * k);
    std::size_t w = 1;
    for (std::size_t i = 0; i < k; ++i) {
        for (Elem r = 0; r < R->size(); ++r) ga[r * k + i] = static_cast<MElem>((r % ord[i]) * w);
        w *= ord[i];
    }
    return FiniteModule(R, ord, ga);
}

FiniteModule vector_space(RingPtr F, std::size_t k)
{
    std::vector<MElem> ga(F->size() * k, 0);
    for (std::size_t i = 0; i < k; ++i) ga[F->one() * k + i] = MElem{1} << i;
    return FiniteModule(F, std::vector<unsigned>(k, 2), ga);
}

std::set<ElemSet> as_set(const std::vector<ElemSet>& v) { return {v.begin(), v.end()}; }

// 1. all_ideals, spectrum and crt_split against the subset scan.
Outcome ring_core()
{
    auto t0 = Clock::now();
    auto catalog = small_catalog();
    const char* required[] = {"Z/2", "Z/4", "Z/6", "Z/8", "Z/12", "F4", "F2[x]/(x^2)", "F2[x]/(x^3)",
                              "F2[x,y]/(x^2,xy,y^2)", "Z/2xZ/4"};
    std::size_t mismatches = 0;
    std::ostringstream why;
    for (const char* name : required)
        if (!catalog_ring(name)) {
            ++mismatches;
            why << " missing " << name << ";";
        }
    for (const auto& e : catalog) {
        const FiniteRing& R = e.ring;
        auto bad = [&](const char* what) {
            ++mismatches;
            why << " " << e.name << ": " << what << ";";
        };
        if (R.size() > 16) bad("order above 16");
        auto ideals = oracle::subset_scan_ideals(R);
        if (all_ideals(R) != ideals) bad("all_ideals");
        auto sp = spectrum(R);
        auto maximal = oracle::maximal_ideals(R);
        if (as_set(sp.maximal) != as_set(maximal)) bad("maximal ideals");
        if (as_set(sp.primes) != as_set(oracle::prime_ideals(R))) bad("primes");
        if (sp.nilradical != oracle::nilpotents(R)) bad("nilradical");
        if (sp.idempotents != oracle::idempotents(R)) bad("idempotents");
        ElemSet jac(R.size());
        std::iota(jac.begin(), jac.end(), 0);
        for (const auto& M : maximal) jac = intersect(jac, M);
        if (sp.jacobson != jac) bad("jacobson");
        if (sp.jacobson_is_nil != (jac == sp.nilradical)) bad("jacobson_is_nil");

        // The split: orthogonal primitive idempotents summing to one, local factors, and coordinates
        // that form a ring isomorphism onto the product of the factor tables.
        auto split = crt_split(R);
        const auto& es = split.idempotents;
        if (es.size() != maximal.size() || split.factors.size() != es.size()) bad("factor count");
        Elem sum = R.zero();
        for (std::size_t i = 0; i < es.size(); ++i) {
            sum = R.add(sum, es[i]);
            if (!R.is_idempotent(es[i]) || es[i] == R.zero()) bad("idempotent");
            for (std::size_t j = i + 1; j < es.size(); ++j)
                if (R.mul(es[i], es[j]) != R.zero()) bad("orthogonality");
            for (Elem f : oracle::idempotents(R))
                if (f != R.zero() && f != es[i] && R.mul(f, es[i]) == f) bad("not primitive");
        }
        if (sum != R.one()) bad("idempotents do not sum to one");
        for (const auto& F : split.factors)
            if (oracle::maximal_ideals(F).size() != 1) bad("factor not local");
        std::set<std::vector<Elem>> seen;
        bool hom = true;
        for (Elem a = 0; a < R.size(); ++a) {
            seen.insert(split.coords[a]);
            for (Elem b = 0; hom && b < R.size(); ++b)
                for (std::size_t i = 0; hom && i < split.factors.size(); ++i) {
                    const auto& F = split.factors[i];
                    hom = split.coords[R.add(a, b)][i] == F.add(split.coords[a][i], split.coords[b][i]) &&
                          split.coords[R.mul(a, b)][i] == F.mul(split.coords[a][i], split.coords[b][i]);
                }
        }
        if (!hom) bad("coordinates are not a ring map");
        if (seen.size() != R.size()) bad("coordinates not injective");
    }
    double s = seconds_since(t0);
    std::ostringstream d;
    d << catalog.size() << " rings, " << mismatches << " mismatches, " << s << " s (budget " << kRingCoreSeconds << " s)"
      << why.str();
    return {mismatches == 0 && catalog.size() >= kCatalogMin && s < kRingCoreSeconds, d.str()};
}

// 2. PIR verdicts exactly where every ideal is principal; witnesses verified; chains equal all_ideals.
Outcome classifier()
{
    std::size_t pir = 0, borel = 0, mismatches = 0;
    std::ostringstream why;
    for (const auto& e : small_catalog()) {
        auto v = classify_finite(e.ring);
        bool expect = oracle::every_ideal_principal(e.ring);
        if (v.pir != expect) {
            ++mismatches;
            why << " " << e.name << ": verdict;";
            continue;
        }
        if (v.pir) {
            ++pir;
            for (const auto& f : v.factors)
                if (as_set(f.chain) != as_set(all_ideals(f.factor)) || !oracle::ideals_form_chain(f.factor)) {
                    ++mismatches;
                    why << " " << e.name << ": chain;";
                }
        } else {
            ++borel;
            if (!v.witness || verify_witness(e.ring, *v.witness).truth != Truth::True) {
                ++mismatches;
                why << " " << e.name << ": witness;";
            }
        }
    }
    std::ostringstream d;
    d << pir << " PIR, " << borel << " BorelComplete, " << mismatches << " mismatches" << why.str();
    return {mismatches == 0 && pir > 0 && borel > 0, d.str()};
}

Graph from_oracle(const oracle::Graph& g)
{
    Graph G;
    G.n = static_cast<std::size_t>(g.n);
    for (auto [u, v] : g.edges) G.edges.insert({static_cast<std::size_t>(u), static_cast<std::size_t>(v)});
    return G;
}

oracle::Graph to_oracle(const Graph& G)
{
    oracle::Graph g;
    g.n = static_cast<int>(G.n);
    for (auto [u, v] : G.edges) g.edges.insert({static_cast<int>(u), static_cast<int>(v)});
    return g;
}

std::vector<std::vector<std::size_t>> graph_isomorphisms(const oracle::Graph& a, const oracle::Graph& b)
{
    std::vector<std::vector<std::size_t>> out;
    if (a.n != b.n || a.edges.size() != b.edges.size()) return out;
    std::vector<std::size_t> p(static_cast<std::size_t>(a.n));
    std::iota(p.begin(), p.end(), 0);
    do {
        bool ok = true;
        for (auto [u, v] : a.edges) {
            int x = static_cast<int>(std::min(p[u], p[v])), y = static_cast<int>(std::max(p[u], p[v]));
            ok = ok && b.edges.count({x, y});
        }
        if (ok) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// 3. Coding over F2 at the four-class stage.
Outcome coding()
{
    auto t0 = Clock::now();
    Engine N = build_engine(ring_of(2), {0}, 3);
    std::size_t classes = N.sort0.class_count();
    std::size_t round_trips = 0, round_fail = 0;
    for (int n = 0; n <= 4; ++n)
        for (const auto& g : oracle::all_graphs(n)) {
            CodedGraph c = code_graph(N, from_oracle(g));
            ++round_trips;
            if (!oracle::graphs_isomorphic(to_oracle(recover_graph(c.module, c.context)), g)) ++round_fail;
        }

    std::vector<oracle::Graph> gs;
    for (int n = 0; n <= 3; ++n)
        for (const auto& g : oracle::all_graphs(n)) gs.push_back(g);
    std::vector<CodedGraph> coded;
    for (const auto& g : gs) coded.push_back(code_graph(N, from_oracle(g)));
    std::size_t pairs = 0, positives = 0, pair_fail = 0, lifted = 0;
    for (std::size_t i = 0; i < gs.size(); ++i)
        for (std::size_t j = i; j < gs.size(); ++j) {
            ++pairs;
            bool same = oracle::graphs_isomorphic(gs[i], gs[j]);
            // a coded output is the module together with its declared vertex count
            bool out = coded[i].context.vertices == coded[j].context.vertices &&
                       brute_force_isomorphic(coded[i].module, coded[j].module).has_value();
            if (same != out) ++pair_fail;
            if (!same) continue;
            ++positives;
            bool witnessed = false;
            for (const auto& h : graph_isomorphisms(gs[i], gs[j])) {
                try {
                    auto map = lift_graph_iso(N, from_oracle(gs[i]), from_oracle(gs[j]), h);
                    witnessed = verify_isomorphism(coded[i].module, coded[j].module, map);
                } catch (const BudgetError&) {
                }
                if (witnessed) break;
            }
            if (witnessed)
                ++lifted;
            else
                ++pair_fail;
        }
    double s = seconds_since(t0);
    std::ostringstream d;
    d << classes << " classes at stage 3; " << round_trips - round_fail << "/" << round_trips << " round trips; "
      << pairs << " pairs, " << positives << " isomorphic, " << lifted << " lifted, " << pair_fail << " failures; " << s
      << " s (budget " << kCodingSeconds << " s)";
    return {classes >= kMinEngineClasses && round_fail == 0 && pair_fail == 0 && s < kCodingSeconds, d.str()};
}

// 4. Endomorphism structures coded through x, y over F2[x,y]/(x^2,xy,y^2).
Outcome pair_coding()
{
    auto R = std::make_shared<const FiniteRing>(*catalog_ring("F2[x,y]/(x^2,xy,y^2)"));
    Elem x = *R->parse_element("x"), y = *R->parse_element("y");
    ElemSet I = ideal_sum(*R, annihilator(*R, {x}), annihilator(*R, {y}));
    auto S = std::make_shared<const FiniteRing>(quotient_ring(*R, I).ring);
    std::vector<EndoStructure> suite{{FiniteModule::zero_module(S), {0}}};
    for (std::size_t k : {1, 2}) {
        auto V = vector_space(S, k);
        for (auto& T : all_endomorphisms(V)) suite.push_back({V, T});
    }
    std::size_t fail = 0;
    std::vector<FiniteModule> coded;
    for (const auto& E : suite) {
        auto C = theoremB_code(R, x, y, E);
        if (!theoremB_claims_hold(C, E, x, y)) ++fail;
        auto D = theoremB_decode(C.module, x, y);
        if (!oracle::endo_structures_isomorphic(D.module, D.T, E.module, E.T)) ++fail;
        coded.push_back(C.module);
    }
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < suite.size(); ++i)
        for (std::size_t j = i + 1; j < suite.size(); ++j) {
            ++pairs;
            bool in = oracle::endo_structures_isomorphic(suite[i].module, suite[i].T, suite[j].module, suite[j].T);
            bool out = brute_force_isomorphic(TaggedModule{coded[i], {}}, TaggedModule{coded[j], {}}).has_value();
            if (in != out) ++fail;
        }
    std::ostringstream d;
    d << suite.size() << " structures, " << pairs << " pairs, " << fail << " failures";
    return {suite.size() == kPairCodingStructures && fail == 0, d.str()};
}

// 5. Free-like normalisation and recovery on every Z/4-module of order <= 8 with <= 2 tags.
bool split_holds(const FreeLikeTagged& N, std::size_t t)
{
    const auto& U = N.tags[1 + 2 * t];
    const auto& V = N.tags[2 + 2 * t];
    std::size_t k1 = N.cover_rank;
    std::vector<ZnVec> h;
    std::vector<std::size_t> dcols;
    for (std::size_t i = 0; i < U.size(); ++i) {
        auto it = std::find(U[i].begin(), U[i].end(), 1);
        dcols.push_back(static_cast<std::size_t>(it - U[i].begin()));
        ZnVec g(k1);
        for (std::size_t c = 0; c < k1; ++c) g[c] = zn_mod(-V[i][c], N.modulus);
        h.push_back(std::move(g));
    }
    auto S = lemma_split(N.modulus, U.size(), k1, h);
    if (!S.verified) return false;
    for (std::size_t i = 0; i < U.size(); ++i)
        for (std::size_t c = 0; c < U.size() + k1; ++c) {
            long long want = c < U.size() ? V[i][dcols[c]] : V[i][c - U.size()];
            if (S.complement_basis[i][c] != zn_mod(want, N.modulus)) return false;
        }
    return true;
}

Outcome freelike()
{
    auto Z4 = ring_of(4);
    std::vector<std::vector<unsigned>> shapes{{}, {2}, {4}, {2, 2}, {4, 2}, {2, 2, 2}};
    std::size_t instances = 0, fail = 0, splits = 0;
    for (const auto& shape : shapes) {
        auto V = cyclic_product(Z4, shape);
        auto subs = oracle::subset_scan_submodules(V);
        std::vector<std::vector<MSet>> tag_lists{{}};
        for (const auto& a : subs) {
            tag_lists.push_back({a});
            for (const auto& b : subs) tag_lists.push_back({a, b});
        }
        for (const auto& tags : tag_lists) {
            ++instances;
            TaggedModule M{V, tags};
            auto N = freelike_normalize(M);
            bool ok = !freelike_certificate_failure(N).has_value();
            for (std::size_t t = 0; ok && t < tags.size(); ++t) {
                ok = split_holds(N, t);
                splits += ok;
            }
            auto back = freelike_recover(N);
            std::vector<MElem> map(V.size());
            for (MElem a = 0; a < V.size(); ++a) map[a] = back.cover_image[a];
            ok = ok && verify_isomorphism(M, back.module, map);
            if (!ok) ++fail;
        }
    }
    std::ostringstream d;
    d << instances << " tagged modules, " << splits << " splits verified, " << fail << " failures";
    return {fail == 0, d.str()};
}

// 6. radic/TFAB.
// Membership in the Z-span of integer vectors of length <= 2, through a Hermite form.
bool z_span_contains(const std::vector<IntVec>& gens, const IntVec& a)
{
    std::vector<IntVec> rows = gens;
    std::size_t k = a.size();
    std::vector<IntVec> basis;
    for (std::size_t col = 0; col < k; ++col) {
        // gcd-reduce column col over the remaining rows
        for (;;) {
            std::size_t piv = rows.size();
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (rows[i][col] != 0 && (piv == rows.size() || std::llabs(rows[i][col]) < std::llabs(rows[piv][col])))
                    piv = i;
            if (piv == rows.size()) break;
            bool done = true;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == piv || rows[i][col] == 0) continue;
                long long q = rows[i][col] / rows[piv][col];
                for (std::size_t c = 0; c < k; ++c) rows[i][c] -= q * rows[piv][c];
                done = done && rows[i][col] == 0;
            }
            if (done) {
                basis.push_back(rows[piv]);
                rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(piv));
                break;
            }
        }
    }
    IntVec r = a;
    for (const auto& b : basis) {
        std::size_t col = 0;
        while (b[col] == 0) ++col;
        if (r[col] % b[col] != 0) return false;
        long long q = r[col] / b[col];
        for (std::size_t c = 0; c < k; ++c) r[c] -= q * b[c];
    }
    return std::all_of(r.begin(), r.end(), [](long long v) { return v == 0; });
}

FreeLikeTagged small_freelike(std::size_t rank, std::vector<std::vector<IntVec>> tags,
                              std::vector<std::vector<std::size_t>> complements)
{
    FreeLikeTagged N;
    N.modulus = 4;
    N.integral = true;
    N.rank = rank;
    for (std::size_t i = 0; i < rank; ++i) N.basis.push_back("b" + std::to_string(i));
    N.tags = std::move(tags);
    N.complements = std::move(complements);
    N.cover_rank = rank;
    return N;
}

std::vector<FreeLikeTagged> membership_suite()
{
    IntVec e0{1, 0}, e1{0, 1}, d{1, 1}, a{1, -1}, w{2, 1}, v{1, 2};
    std::vector<FreeLikeTagged> s;
    s.push_back(small_freelike(1, {{IntVec{1}}}, {{}}));
    s.push_back(small_freelike(1, {{}, {IntVec{1}}}, {{0}, {}}));
    s.push_back(small_freelike(1, {{}, {IntVec{-1}}, {}}, {{0}, {}, {0}}));
    s.push_back(small_freelike(2, {{e0}, {e1}, {d}}, {{1}, {0}, {0}}));
    s.push_back(small_freelike(2, {{w}, {v}, {a}}, {{0}, {1}, {0}}));
    s.push_back(small_freelike(2, {{e0, e1}, {}, {d}}, {{}, {0, 1}, {1}}));
    s.push_back(small_freelike(2, {{IntVec{3, 1}}, {IntVec{-2, -1}}}, {{0}, {0}}));
    s.push_back(small_freelike(2, {{d, e1}, {w}}, {{}, {0}}));
    return s;
}

std::vector<IntVec> queries(std::size_t rank)
{
    if (rank == 1) return {{0}, {1}, {-1}, {2}, {7}, {16}};
    return {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2}, {2, 0}, {3, 3}, {-2, -1}, {4, 2}, {5, 7}, {3, 1}, {0, 2}};
}

struct Answer {
    MembershipAnswer::Kind kind;
    unsigned divisions;
    bool operator==(const Answer&) const = default;
};

std::vector<Answer> all_answers(const PureSubmoduleRep& G, std::size_t tags, const std::vector<IntVec>& qs)
{
    std::vector<Answer> out;
    for (std::size_t n = 1; n <= tags; ++n)
        for (const auto& q : qs) {
            auto r = mkchar_test(G, n, q, kMembershipBudget);
            out.push_back({r.kind, r.divisions});
        }
    return out;
}

Outcome radic()
{
    Truncation T(PresentedRing::integers(), {kRadicPrime}, kRadicDepth);
    std::ostringstream d;

    auto at_defaults = greedy_gammas(T, 3, kDefaultDegree, kDefaultHeight);
    bool independent = at_defaults.complete &&
                       independence_certificate(T, at_defaults.gammas, kDefaultDegree, kDefaultHeight).certified;
    d << "gammas at degree " << kDefaultDegree << " height " << kDefaultHeight << ": " << at_defaults.gammas.size()
      << "/3 certified";
    if (at_defaults.last_failure && at_defaults.last_failure->counterexample)
        d << " (" << at_defaults.last_failure->counterexample->to_string() << " vanishes mod 2^" << kRadicDepth << ")";

    auto search = greedy_gammas(T, 3, kMembershipDegree, kMembershipHeight);
    if (!search.complete) return {false, d.str() + "; no gammas for membership"};
    const auto& gammas = search.gammas;

    std::size_t asked = 0, disagree = 0, unknown = 0;
    std::vector<PureSubmoduleRep> reps;
    auto suite = membership_suite();
    for (const auto& N : suite) {
        if (freelike_certificate_failure(N)) return {false, d.str() + "; suite instance is not free-like"};
        std::vector<GammaElement> gs(gammas.begin(), gammas.begin() + static_cast<std::ptrdiff_t>(N.tags.size()));
        auto G = code_freelike(T, N, gs, kMembershipDegree, kMembershipHeight);
        for (std::size_t n = 0; n < N.tags.size(); ++n)
            for (const auto& q : queries(N.rank)) {
                ++asked;
                auto r = mkchar_test(G, n + 1, q, kMembershipBudget);
                bool truth = z_span_contains(N.tags[n], q);
                if (r.kind == MembershipAnswer::Kind::Unknown) ++unknown;
                if ((r.kind == MembershipAnswer::Kind::True) != truth) ++disagree;
            }
        reps.push_back(std::move(G));
    }
    d << "; " << asked << " membership queries, " << disagree << " disagreements, " << unknown << " unknown at budget "
      << kMembershipBudget;

    // Re-representation: gamma digits at or past the depth, generator entries shifted by multiples of r^m,
    // generators replaced by unimodular combinations, queries shifted by multiples of r^m.
    std::mt19937 rng(20261019);
    const long long q = 1LL << kRadicDepth;
    std::size_t changed = 0;
    for (std::size_t trial = 0; trial < kRerepresentations; ++trial) {
        const auto& N = suite[trial % suite.size()];
        const auto& G0 = reps[trial % suite.size()];
        auto base = all_answers(G0, N.tags.size(), queries(N.rank));
        PureSubmoduleRep G = G0;
        for (auto& g : G.gammas) {
            g.s.push_back(kRadicDepth + rng() % 8);
            std::sort(g.s.begin(), g.s.end());
            g.s.erase(std::unique(g.s.begin(), g.s.end()), g.s.end());
        }
        for (std::size_t i = 0; i + 1 < G.generators.size(); ++i) {
            std::size_t j = i + 1 + rng() % (G.generators.size() - i - 1);
            long long c = static_cast<long long>(rng() % 5) - 2;
            for (std::size_t k = 0; k < G.generators[i].size(); ++k) G.generators[i][k] += c * G.generators[j][k];
        }
        std::shuffle(G.generators.begin(), G.generators.end(), rng);
        for (auto& g : G.generators)
            for (auto& x : g) x += q * (static_cast<long long>(rng() % 5) - 2);
        std::vector<Answer> moved;
        for (std::size_t n = 1; n <= N.tags.size(); ++n)
            for (auto qv : queries(N.rank)) {
                for (auto& x : qv) x += q * (static_cast<long long>(rng() % 5) - 2);
                auto r = mkchar_test(G, n, qv, kMembershipBudget);
                moved.push_back({r.kind, r.divisions});
            }
        if (moved != base) ++changed;
    }
    d << "; " << kRerepresentations << " re-representations, " << changed << " changed answers";
    bool pass = independent && asked >= kMinMembershipQueries && disagree == 0 && unknown == 0 && changed == 0;
    return {pass, d.str()};
}

// 7. The standard chain, its certificates, and lifting of class permutations.
Outcome amalgam()
{
    LimitChain ch = standard_chain();
    std::size_t entries = 0, bad_entries = 0;
    for (std::size_t k = 0; k + 1 < ch.stages.size(); ++k)
        for (const auto& e : ch.certificates[k]) {
            ++entries;
            if (!check_certificate_entry(ch.stages[k], ch.stages[k + 1], e)) ++bad_entries;
        }
    bool replay = verify_chain(ch);
    std::size_t lifted = 0, tried = 0;
    for (std::size_t m : {1u, 2u}) {
        std::vector<std::size_t> h(ch.stages[m].class_count());
        std::iota(h.begin(), h.end(), 0);
        do {
            ++tried;
            Perm s = lift_permutation(ch, m, h);
            if (is_automorphism(ch.stages[m], s) && induced_class_map(ch.stages[m], ch.stages[m], s) == h) ++lifted;
        } while (std::next_permutation(h.begin(), h.end()));
    }
    std::ostringstream d;
    d << ch.stages.size() << " stages, " << entries << " certificate entries (" << bad_entries << " bad), replay "
      << (replay ? "ok" : "failed") << "; " << lifted << "/" << tried << " class permutations lifted at stages 1 and 2";
    return {ch.stages.size() == kChainStages && bad_entries == 0 && replay && lifted == tried, d.str()};
}

// 8. Module census.
Outcome census()
{
    auto z4 = count_modules_upto(zmod(4), 4);
    auto sq = count_modules_upto(*catalog_ring("F2[x,y]/(x^2,xy,y^2)"), 8);
    auto z8 = count_modules_upto(zmod(8), 8);
    bool z4_ok = z4.counts[1] == 1 && z4.counts[2] == 1 && z4.counts[4] == 2;
    bool oracle_ok = z8.counts[8] == oracle::zn_module_count(8, 8) && sq.counts[8] == oracle::square_zero_pair_count(3);
    std::ostringstream d;
    d << "Z/4 orders 1,2,4: " << z4.counts[1] << "," << z4.counts[2] << "," << z4.counts[4] << "; order 8: "
      << sq.counts[8] << " over F2[x,y]/(x^2,xy,y^2) vs " << z8.counts[8] << " over Z/8; oracles "
      << (oracle_ok ? "agree" : "disagree");
    return {z4_ok && sq.counts[8] > z8.counts[8] && oracle_ok, d.str()};
}

// 9. Four submodules and polynomial modules.
Outcome reductions()
{
    auto F2 = ring_of(2), Z4 = ring_of(4);
    std::size_t four = 0, fail = 0;
    for (const auto& V : {vector_space(F2, 1), vector_space(F2, 2), cyclic_product(Z4, {4})})
        for (const auto& T : all_endomorphisms(V)) {
            ++four;
            std::vector<MElem> amb;
            auto D = four_submodules_decode(endo_to_four_submodules({V, T}), &amb);
            bool ok = verify_isomorphism(TaggedModule{D.module, {}}, TaggedModule{V, {}}, amb);
            for (MElem e = 0; ok && e < D.module.size(); ++e) ok = amb[D.T[e]] == T[amb[e]];
            if (!ok) ++fail;
        }

    // Every module over (Z/n)[x]/(g) on the listed carriers: an endomorphism T of the carrier with g(T) = 0.
    struct PolyCase {
        unsigned n;
        std::vector<BigInt> g;
        std::vector<std::vector<unsigned>> shapes;
    };
    std::vector<PolyCase> cases{{2, {0, 0, 1}, {{2}, {2, 2}, {2, 2, 2}}},
                                {2, {1, 1, 1}, {{2}, {2, 2}, {2, 2, 2}}},
                                {2, {1, 0, 0, 1}, {{2}, {2, 2}, {2, 2, 2}}},
                                {4, {0, 0, 1}, {{2}, {4}, {2, 2}, {4, 2}}},
                                {3, {0, 0, 1}, {{3}, {3, 3}}}};
    std::size_t modules = 0;
    for (const auto& c : cases) {
        auto P = PresentedRing::poly_quotient(c.n, c.g);
        auto F = P.to_finite();
        for (const auto& shape : c.shapes) {
            auto V = cyclic_product(ring_of(c.n), shape);
            for (const auto& T : all_endomorphisms(V)) {
                FiniteModule M;
                try {
                    M = poly_module_from_endo({V, T}, P, F);
                } catch (const PreconditionError&) {
                    continue;  // g(T) != 0
                }
                ++modules;
                auto E = endo_from_poly_module(M, F);
                bool ok = E.T == T;
                for (Elem r = 0; ok && r < F.ring.size(); ++r)
                    for (MElem a = 0; ok && a < M.size(); ++a) ok = E.T[M.act(r, a)] == M.act(r, E.T[a]);
                for (Elem r = 0; ok && r < E.module.ring().size(); ++r)
                    for (MElem a = 0; ok && a < E.module.size(); ++a)
                        ok = E.T[E.module.act(r, a)] == E.module.act(r, E.T[a]);
                if (!ok) ++fail;
            }
        }
    }
    std::ostringstream d;
    d << four << " four-submodule round trips, " << modules << " polynomial modules, " << fail << " failures";
    return {fail == 0 && four == 2 + 16 + 4 && modules > 0, d.str()};
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance checks, one line per criterion"};
    std::vector<int> known_red;
    std::vector<int> only;
    app.add_option("--known-red", known_red, "criteria expected to fail; they do not affect the exit code")->delimiter(',');
    app.add_option("--only", only, "run only these criteria")->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"ring core vs subset scan", ring_core},
        {"classifier dichotomy", classifier},
        {"graph coding faithfulness", coding},
        {"x,y coding round trip", pair_coding},
        {"free-like reduction", freelike},
        {"radic/TFAB", radic},
        {"amalgam chain", amalgam},
        {"module census", census},
        {"four-submodule and polynomial reductions", reductions},
    };
    int unexpected = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        int id = static_cast<int>(i + 1);
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        bool red = std::find(known_red.begin(), known_red.end(), id) != known_red.end();
        std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL") << (red && !o.pass ? " (known red)" : "")
                  << " [" << criteria[i].first << "] " << o.detail << " (" << seconds_since(t0) << " s)" << std::endl;
        if (!o.pass && !red) ++unexpected;
    }
    return unexpected == 0 ? 0 : 1;
}
