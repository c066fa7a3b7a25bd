#include "dichotomy/io.hpp"

#include <fstream>
#include <sstream>

#include "dichotomy/errors.hpp"

namespace dichotomy {

json parse_json(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ShapeError(std::string("malformed JSON: ") + e.what());
    }
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ShapeError("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json read_json_file(const std::string& path) { return parse_json(read_text_file(path)); }

namespace {

// Wraps nlohmann access errors (missing keys, wrong types) as ShapeError.
template <class F>
auto guarded(const char* what, F&& f)
{
    try {
        return f();
    } catch (const json::exception& e) {
        throw ShapeError(std::string(what) + ": " + e.what());
    }
}

std::vector<BigInt> big_list(const json& j)
{
    std::vector<BigInt> out;
    for (const auto& x : j) out.push_back(BigInt(x.get<long long>()));
    return out;
}

MElem checked_elem(long long a, std::size_t size)
{
    if (a < 0 || static_cast<std::size_t>(a) >= size) throw ShapeError("element " + std::to_string(a) + " out of range");
    return static_cast<MElem>(a);
}

}  // namespace

RingSpec ring_from_json(const json& j)
{
    return guarded("ring", [&] {
        RingSpec s;
        s.source = j;
        if (j.is_string() || (j.is_object() && j.contains("catalog"))) {
            std::string name = j.is_string() ? j.get<std::string>() : j.at("catalog").get<std::string>();
            auto R = catalog_ring(name);
            if (!R) throw ShapeError("no catalog ring named '" + name + "'");
            s.finite = std::make_shared<const FiniteRing>(std::move(*R));
            return s;
        }
        if (!j.is_object()) throw ShapeError("ring must be an object or a catalog name");
        if (j.contains("kind")) {
            std::string k = j.at("kind").get<std::string>();
            if (k == "Z")
                s.presented = PresentedRing::integers();
            else if (k == "Zmod")
                s.presented = PresentedRing::zmod(j.at("n").get<long long>());
            else if (k == "polyquot")
                s.presented = PresentedRing::poly_quotient(j.at("n").get<long long>(), big_list(j.at("modulus")));
            else if (k == "poly")
                s.presented = PresentedRing::polynomial(j.at("n").get<long long>());
            else
                throw ShapeError("unknown ring kind '" + k + "'");
            if (s.presented->finite()) {
                s.finite_form = s.presented->to_finite();
                s.finite = std::make_shared<const FiniteRing>(s.finite_form->ring);
            }
            return s;
        }
        RingTables t;
        t.size = j.at("size").get<std::int64_t>();
        t.add = j.at("add").get<std::vector<std::vector<std::int64_t>>>();
        t.mul = j.at("mul").get<std::vector<std::vector<std::int64_t>>>();
        t.zero = j.at("zero").get<std::int64_t>();
        t.one = j.at("one").get<std::int64_t>();
        std::vector<std::string> names;
        if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
        s.finite = std::make_shared<const FiniteRing>(FiniteRing::from_tables(t, std::move(names)));
        return s;
    });
}

json ring_to_json(const FiniteRing& R)
{
    auto t = R.tables();
    return json{{"size", t.size}, {"add", t.add}, {"mul", t.mul}, {"zero", t.zero}, {"one", t.one}, {"names", R.names()}};
}

namespace {

struct ReadModule {
    FiniteModule module;
    std::vector<MElem> label_to_elem;  // identity for the compact form
};

ReadModule read_module(const json& j, const RingPtr& ring)
{
    ReadModule out;
    if (j.contains("add")) {
        ModuleTables t;
        t.size = j.at("size").get<std::int64_t>();
        t.add = j.at("add").get<std::vector<std::vector<std::int64_t>>>();
        t.action = j.at("action").get<std::vector<std::vector<std::int64_t>>>();
        t.zero = j.value("zero", std::int64_t{0});
        auto tm = module_from_tables(ring, t);
        out.module = std::move(tm.module);
        out.label_to_elem = std::move(tm.label_to_elem);
        return out;
    }
    auto orders = j.at("orders").get<std::vector<unsigned>>();
    auto ga = j.at("gen_action").get<std::vector<std::vector<long long>>>();
    if (ga.size() != ring->size()) throw ShapeError("gen_action needs one row per ring element");
    std::vector<MElem> flat;
    std::size_t size = 1;
    for (unsigned q : orders) size *= q;
    for (const auto& row : ga) {
        if (row.size() != orders.size()) throw ShapeError("gen_action row has the wrong length");
        for (long long a : row) flat.push_back(checked_elem(a, size));
    }
    out.module = FiniteModule(ring, orders, std::move(flat));
    out.label_to_elem.resize(out.module.size());
    for (MElem a = 0; a < out.module.size(); ++a) out.label_to_elem[a] = a;
    return out;
}

std::vector<MSet> read_tags(const json& j, const ReadModule& m)
{
    std::vector<MSet> tags;
    if (j.contains("tags"))
        for (const auto& t : j.at("tags")) {
            MSet s;
            for (long long a : t.get<std::vector<long long>>()) s.push_back(m.label_to_elem[checked_elem(a, m.module.size())]);
            tags.push_back(make_set(std::move(s)));
        }
    else if (j.contains("tag_generators"))
        for (const auto& t : j.at("tag_generators")) {
            MSet s;
            for (long long a : t.get<std::vector<long long>>()) s.push_back(m.label_to_elem[checked_elem(a, m.module.size())]);
            tags.push_back(submodule_generated(m.module, make_set(std::move(s))));
        }
    return tags;
}

}  // namespace

ModuleFile module_from_json(const json& j, const RingSpec& ring)
{
    return guarded("module", [&] {
        if (!ring.finite) throw ShapeError("modules need a finite ring");
        auto m = read_module(j, ring.finite);
        ModuleFile f{ring, {m.module, read_tags(j, m)}};
        return f;
    });
}

ModuleFile module_from_json(const json& j)
{
    return guarded("module", [&] { return module_from_json(j, ring_from_json(j.at("ring"))); });
}

MSet tag_generators(const FiniteModule& M, const MSet& S)
{
    MSet gens, cur{0};
    for (MElem a : S)
        if (!mcontains(cur, a)) {
            gens.push_back(a);
            cur = submodule_generated(M, gens);
        }
    return gens;
}

json module_to_json(const TaggedModule& M, const json& ring_ref, std::size_t max_listed)
{
    const auto& mod = M.module;
    json j;
    j["ring"] = ring_ref;
    j["orders"] = mod.orders();
    json ga = json::array();
    for (Elem r = 0; r < mod.ring().size(); ++r) {
        json row = json::array();
        for (std::size_t i = 0; i < mod.rank(); ++i) row.push_back(mod.gen_action()[r * mod.rank() + i]);
        ga.push_back(row);
    }
    j["gen_action"] = ga;
    bool large = false;
    for (const auto& t : M.tags) large = large || t.size() > max_listed;
    if (large) {
        json tg = json::array();
        for (const auto& t : M.tags) {
            auto g = tag_generators(mod, t);
            if (submodule_generated(mod, g) != t) {
                large = false;
                break;
            }
            tg.push_back(g);
        }
        if (large) j["tag_generators"] = tg;
    }
    if (!large) j["tags"] = M.tags;
    return j;
}

EndoStructure endo_from_json(const json& j, const RingSpec* ring)
{
    return guarded("endo", [&] {
        RingSpec rs = ring ? *ring : ring_from_json(j.at("ring"));
        if (!rs.finite) throw ShapeError("modules need a finite ring");
        auto m = read_module(j, rs.finite);
        auto Tl = j.at("T").get<std::vector<long long>>();
        if (Tl.size() != m.module.size()) throw ShapeError("T needs one image per element");
        EndoStructure S{m.module, std::vector<MElem>(m.module.size())};
        for (std::size_t l = 0; l < Tl.size(); ++l) S.T[m.label_to_elem[l]] = m.label_to_elem[checked_elem(Tl[l], Tl.size())];
        validate_endo(S);
        return S;
    });
}

json endo_to_json(const EndoStructure& S, const json& ring_ref)
{
    json j = module_to_json(TaggedModule{S.module, {}}, ring_ref);
    j.erase("tags");
    j["T"] = S.T;
    return j;
}

json context_to_json(const DecodeContext& c)
{
    json j{{"sort0", c.sort0}, {"sort1", c.sort1}, {"base0", c.base0}, {"base1", c.base1},
           {"rq", c.rq},       {"rt", c.rt},       {"ug", c.ug},       {"ideal", c.ideal}};
    if (c.vertices) j["vertices"] = *c.vertices;
    return j;
}

DecodeContext context_from_json(const json& j)
{
    return guarded("context", [&] {
        DecodeContext c;
        c.sort0 = j.at("sort0").get<std::size_t>();
        c.sort1 = j.at("sort1").get<std::size_t>();
        c.base0 = j.at("base0").get<std::vector<std::size_t>>();
        c.base1 = j.at("base1").get<std::vector<std::size_t>>();
        c.rq = j.at("rq").get<std::size_t>();
        c.rt = j.at("rt").get<std::size_t>();
        c.ug = j.at("ug").get<std::size_t>();
        c.ideal = j.at("ideal").get<ElemSet>();
        if (j.contains("vertices")) c.vertices = j.at("vertices").get<std::size_t>();
        return c;
    });
}

Graph graph_from_text(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    Graph G;
    bool have_n = false;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<long long> nums;
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                long long v = std::stoll(tok, &used);
                if (used != tok.size()) throw ShapeError("bad token '" + tok + "' in graph");
                nums.push_back(v);
            } catch (const std::logic_error&) {
                throw ShapeError("bad token '" + tok + "' in graph");
            }
        }
        if (nums.empty()) continue;
        if (!have_n) {
            if (nums.size() != 1 || nums[0] < 0) throw ShapeError("graph must start with the vertex count");
            G.n = static_cast<std::size_t>(nums[0]);
            have_n = true;
            continue;
        }
        if (nums.size() != 2 || nums[0] < 0 || nums[1] < 0) throw ShapeError("graph edge lines hold two vertices");
        auto u = static_cast<std::size_t>(nums[0]), v = static_cast<std::size_t>(nums[1]);
        if (!G.edges.insert({u, v}).second) throw ShapeError("repeated edge in graph");
    }
    if (!have_n) throw ShapeError("empty graph file");
    validate_graph(G);
    return G;
}

std::string graph_to_text(const Graph& G)
{
    std::string s = std::to_string(G.n) + "\n";
    for (auto [u, v] : G.edges) s += std::to_string(u) + " " + std::to_string(v) + "\n";
    return s;
}

json freelike_to_json(const FreeLikeTagged& N)
{
    return json{{"modulus", N.modulus}, {"integral", N.integral}, {"rank", N.rank},        {"basis", N.basis},
                {"tags", N.tags},       {"complements", N.complements}, {"cover_rank", N.cover_rank}};
}

FreeLikeTagged freelike_from_json(const json& j)
{
    return guarded("free-like module", [&] {
        FreeLikeTagged N;
        N.modulus = j.at("modulus").get<unsigned>();
        N.integral = j.at("integral").get<bool>();
        N.rank = j.at("rank").get<std::size_t>();
        N.basis = j.at("basis").get<std::vector<std::string>>();
        N.tags = j.at("tags").get<std::vector<std::vector<IntVec>>>();
        N.complements = j.at("complements").get<std::vector<std::vector<std::size_t>>>();
        N.cover_rank = j.at("cover_rank").get<std::size_t>();
        return N;
    });
}

json witness_to_json(const Witness& w)
{
    return json{{"kind", to_string(w.kind)}, {"path", w.path}, {"elements", w.elements}};
}

Witness witness_from_json(const json& j)
{
    return guarded("witness", [&] {
        Witness w;
        w.kind = witness_kind_from_string(j.at("kind").get<std::string>());
        if (j.contains("path")) w.path = j.at("path").get<std::vector<ElemSet>>();
        if (j.contains("elements")) w.elements = j.at("elements").get<std::vector<std::string>>();
        return w;
    });
}

json verdict_to_json(const Verdict& v)
{
    json j;
    j["verdict"] = v.pir ? "PIR" : "BorelComplete";
    json factors = json::array();
    for (const auto& f : v.factors) {
        json chain = json::array();
        for (const auto& I : f.chain) {
            json names = json::array();
            for (Elem a : I) names.push_back(f.factor.name(a));
            chain.push_back(names);
        }
        factors.push_back({{"order", f.factor.size()},
                           {"idempotent", f.idempotent},
                           {"maximal_generator", f.factor.name(f.maximal_generator)},
                           {"chain", chain}});
    }
    j["factors"] = factors;
    if (v.witness) {
        j["witness"] = witness_to_json(*v.witness);
        j["witness_ring_order"] = v.witness_ring.size();
    }
    j["transcript"] = v.transcript;
    return j;
}

}  // namespace dichotomy
