#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "dichotomy/errors.hpp"
#include "dichotomy/io.hpp"

using namespace dichotomy;

namespace {

const char* kFormats = R"(Exit codes: 0 ok (PIR for classify), 1 verification false, 2 parse/shape/precondition error,
3 guard or budget refusal, 4 decode error, 5 verification unsupported, 10 BorelComplete.

File formats (JSON unless noted; "-" or an omitted optional file reads stdin):
  ring     := {"size":n,"add":[[..]],"mul":[[..]],"zero":i,"one":j,"names":[..]?}
            | {"kind":"Z"} | {"kind":"Zmod","n":k} | {"kind":"polyquot","n":k,"modulus":[c0,..,1]}
            | {"kind":"poly","n":k} | {"catalog":NAME} | NAME
  module   := {"ring":ring,"size":n,"add":[[..]],"action":[[..]],"tags":[[label..]..]?}
            | {"ring":ring,"orders":[q..],"gen_action":[[elem..]..],("tags"|"tag_generators"):[[elem..]..]?}
              gen_action[r][i] = r*e_i; elements are mixed-radix codes, first coordinate least significant
  endo     := module + {"T":[image..]}
  coded    := module + {"context":{"sort0","sort1","base0","base1","rq","rt","ug","ideal","vertices"}}
  engine   := {"ring":ring,"ideal":[elem..],"stage":k}
  graph    := text: vertex count, then "u v" per line with u < v, 0-indexed; '#' comments
  freelike := {"modulus","integral","rank","basis","tags","complements","cover_rank"}
  witness  := {"kind":"ThmA"|"ThmB"|"ThmC"|"NonMaximalPrime"|"InfOrthIdempotents","path":[[elem..]..],"elements":[name..]}
  chain    := {"stages":[{"p","dim","eclass","tags":[[[coef..]..]..]}..],"certificates":[[{"S","f","h","g"}..]..]}
  tfab-code output := "rank K", "depth M", "modulus 2^M", one "gamma s0 s1 .." line per gamma,
                      then one generator per line as K space-separated residues mod 2^M)";

std::string slurp(const std::string& path)
{
    if (path.empty() || path == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        return s.str();
    }
    return read_text_file(path);
}

json load(const std::string& path) { return parse_json(slurp(path)); }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// A catalog name when the ring is in the catalog, the full tables otherwise.
json ring_ref(const FiniteRing& R)
{
    for (const auto& e : small_catalog())
        if (e.ring == R) return e.name;
    return ring_to_json(R);
}

std::string strip_name(const std::string& s)
{
    auto eq = s.find('=');
    return eq == std::string::npos ? s : s.substr(eq + 1);
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

Elem ring_elem(const FiniteRing& R, const std::string& s)
{
    auto a = R.parse_element(strip_name(s));
    if (!a) throw ShapeError("cannot parse ring element '" + s + "'");
    return *a;
}

struct EngineFile {
    RingSpec ring;
    ElemSet ideal;
    std::size_t stage = 3;
};

EngineFile engine_file(const json& j)
{
    EngineFile e;
    try {
        e.ring = ring_from_json(j.at("ring"));
        e.ideal = j.at("ideal").get<ElemSet>();
        e.stage = j.value("stage", std::size_t{3});
    } catch (const json::exception& ex) {
        throw ShapeError(std::string("engine file: ") + ex.what());
    }
    if (!e.ring.finite) throw ShapeError("engine ring must be finite");
    return e;
}

Engine make_engine(const EngineFile& e) { return build_engine(e.ring.finite, e.ideal, e.stage); }

json kstructure_to_json(const KStructure& K)
{
    json tags = json::array();
    for (const auto& t : K.tags) tags.push_back(t.basis());
    return {{"p", K.p}, {"dim", K.dim}, {"eclass", K.eclass}, {"tags", tags}};
}

KStructure kstructure_from_json(const json& j)
{
    KStructure K;
    K.p = j.at("p").get<unsigned>();
    K.dim = j.at("dim").get<std::size_t>();
    K.eclass = j.at("eclass").get<std::vector<std::size_t>>();
    if (K.eclass.size() != K.dim) throw ShapeError("eclass needs one entry per coordinate");
    for (const auto& t : j.at("tags")) {
        auto rows = t.get<std::vector<FpVec>>();
        for (const auto& r : rows)
            if (r.size() != K.dim) throw ShapeError("tag row has the wrong length");
        K.tags.push_back(Subspace::span(K.p, K.dim, rows));
    }
    return K;
}

json chain_to_json(const LimitChain& C)
{
    json stages = json::array(), certs = json::array();
    for (const auto& s : C.stages) stages.push_back(kstructure_to_json(s));
    for (const auto& level : C.certificates) {
        json l = json::array();
        for (const auto& e : level) l.push_back({{"S", e.S}, {"f", e.f}, {"h", e.h}, {"g", e.g}});
        certs.push_back(l);
    }
    return {{"stages", stages}, {"certificates", certs}};
}

LimitChain chain_from_json(const json& j)
{
    try {
        LimitChain C;
        for (const auto& s : j.at("stages")) C.stages.push_back(kstructure_from_json(s));
        for (const auto& level : j.at("certificates")) {
            std::vector<CertificateEntry> l;
            for (const auto& e : level)
                l.push_back({e.at("S").get<std::vector<std::size_t>>(), e.at("f").get<std::vector<std::size_t>>(),
                             e.at("h").get<std::vector<std::size_t>>(), e.at("g").get<std::vector<std::size_t>>()});
            C.certificates.push_back(std::move(l));
        }
        return C;
    } catch (const json::exception& ex) {
        throw ShapeError(std::string("chain file: ") + ex.what());
    }
}

int run_guarded(const std::function<int()>& f)
{
    try {
        return f();
    } catch (const DecodeError& e) {
        std::cerr << "decode error: " << e.what() << "\n";
        return 4;
    } catch (const GuardError& e) {
        std::cerr << "guard: " << e.what() << "\n";
        return 3;
    } catch (const BudgetError& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Finite-ring dichotomy toolkit: classification, module coders and reductions"};
    app.footer(kFormats);
    app.require_subcommand(1);
    std::function<int()> action;

    std::size_t max_carrier = kDefaultMaxCarrier, stage = 3, max_order = 16, copies = 2, tfab_copies = 1;
    unsigned depth = 16, degree = 2, height = 3;
    std::string in1, in2, in3, xs, ys;
    bool integral = false;

    auto* classify = app.add_subcommand("classify", "PIR certificate or Borel-completeness witness for a finite ring");
    classify->add_option("ring", in1, "ring file")->required();
    classify->add_option("--max-carrier", max_carrier, "largest ring order accepted")->capture_default_str();
    classify->callback([&] {
        action = [&] {
            auto R = ring_from_json(load(in1));
            if (!R.finite) throw PreconditionError("classify needs a finite ring");
            auto v = classify_finite(*R.finite, max_carrier);
            emit(verdict_to_json(v));
            return v.pir ? 0 : 10;
        };
    });

    auto* census = app.add_subcommand("census", "isomorphism classes of modules per order");
    census->add_option("ring", in1, "ring file")->required();
    census->add_option("--max-order", max_order, "largest module order")->capture_default_str();
    census->callback([&] {
        action = [&] {
            auto R = ring_from_json(load(in1));
            if (!R.finite) throw PreconditionError("census needs a finite ring");
            auto c = count_modules_upto(*R.finite, max_order);
            std::cout << "order classes\n";
            for (std::size_t k = 1; k < c.counts.size(); ++k) std::cout << k << " " << c.counts[k] << "\n";
            return 0;
        };
    });

    std::string thmA, thmB, thmC, prime, wfile;
    bool idempotents = false;
    auto* verify = app.add_subcommand("verify-witness", "check the hypotheses of a Borel-completeness witness");
    verify->add_option("ring", in1, "ring file")->required();
    verify->add_option("--thmA", thmA, "r=ELEM: neither unit nor zero divisor");
    verify->add_option("--thmB", thmB, "x=ELEM,y=ELEM: (x)(y) meet in 0 and Ann x + Ann y is proper");
    verify->add_option("--thmC", thmC, "a1,a2,...: annihilator chain Ann(a1) > Ann(a2) > ...");
    verify->add_option("--prime", prime, "g1,g2,...: generators of a prime that is not maximal");
    verify->add_flag("--idempotents", idempotents, "infinitely many orthogonal idempotents");
    verify->add_option("--witness", wfile, "witness file");
    verify->callback([&] {
        action = [&] {
            auto R = ring_from_json(load(in1));
            Witness w;
            int given = !thmA.empty() + !thmB.empty() + !thmC.empty() + !prime.empty() + idempotents + !wfile.empty();
            if (given != 1) throw ShapeError("give exactly one witness");
            if (!wfile.empty()) {
                w = witness_from_json(load(wfile));
            } else if (!thmA.empty()) {
                w = {WitnessKind::ThmA, {}, {strip_name(thmA)}};
            } else if (!thmB.empty()) {
                w.kind = WitnessKind::ThmB;
                for (const auto& s : split_list(thmB)) w.elements.push_back(strip_name(s));
            } else if (!thmC.empty()) {
                w = {WitnessKind::ThmC, {}, split_list(thmC)};
            } else if (!prime.empty()) {
                w = {WitnessKind::NonMaximalPrime, {}, split_list(prime)};
            } else {
                w.kind = WitnessKind::InfOrthIdempotents;
            }
            VerifyResult r = R.presented ? verify_witness(*R.presented, w) : verify_witness(*R.finite, w);
            emit({{"result", to_string(r.truth)}, {"witness", witness_to_json(w)}, {"transcript", r.transcript}});
            return r.truth == Truth::True ? 0 : r.truth == Truth::False ? 1 : 5;
        };
    });

    std::string ideal_list, engine_ring = "Z/2";
    auto* engine = app.add_subcommand("engine", "write an engine file for code-graph");
    engine->add_option("--ring", engine_ring, "ring file or catalog name")->capture_default_str();
    engine->add_option("--ideal", ideal_list, "maximal ideal as comma-separated element names; default: the maximal ideal of a local ring");
    engine->add_option("--stage", stage, "chain stage (1, 2 or 3)")->capture_default_str();
    engine->callback([&] {
        action = [&] {
            json rj = catalog_ring(engine_ring) ? json(engine_ring) : load(engine_ring);
            auto R = ring_from_json(rj);
            if (!R.finite) throw PreconditionError("the engine needs a finite ring");
            ElemSet I;
            if (!ideal_list.empty()) {
                for (const auto& s : split_list(ideal_list)) I.push_back(ring_elem(*R.finite, s));
                std::sort(I.begin(), I.end());
            } else {
                auto sp = spectrum(*R.finite);
                if (sp.maximal.size() != 1) throw PreconditionError("ring is not local; pass --ideal");
                I = sp.maximal[0];
            }
            EngineFile e{R, I, stage};
            make_engine(e);  // validates
            emit({{"ring", rj}, {"ideal", I}, {"stage", stage}});
            return 0;
        };
    });

    auto* code = app.add_subcommand("code-graph", "code a graph as a tagged module");
    code->add_option("engine", in1, "engine file")->required();
    code->add_option("graph", in2, "graph file")->required();
    code->callback([&] {
        action = [&] {
            auto ej = load(in1);
            auto e = engine_file(ej);
            auto N = make_engine(e);
            auto C = code_graph(N, graph_from_text(slurp(in2)));
            json j = module_to_json(C.module, ej.at("ring"));
            j["context"] = context_to_json(C.context);
            emit(j);
            return 0;
        };
    });

    auto* decode = app.add_subcommand("decode-module", "recover the graph from a coded module");
    decode->add_option("coded", in1, "coded module file");
    decode->callback([&] {
        action = [&] {
            auto j = load(in1);
            auto m = module_from_json(j);
            if (!j.contains("context")) throw ShapeError("coded module needs a context");
            std::cout << graph_to_text(recover_graph(m.module, context_from_json(j.at("context"))));
            return 0;
        };
    });

    std::string map_list;
    auto* lift = app.add_subcommand("lift-iso", "lift a graph isomorphism to the coded modules");
    lift->add_option("engine", in1, "engine file")->required();
    lift->add_option("G", in2, "source graph")->required();
    lift->add_option("H", in3, "target graph")->required();
    lift->add_option("--map", map_list, "h(0),h(1),...: vertex images")->required();
    lift->callback([&] {
        action = [&] {
            auto e = engine_file(load(in1));
            auto N = make_engine(e);
            auto G = graph_from_text(slurp(in2)), H = graph_from_text(slurp(in3));
            std::vector<std::size_t> h;
            for (const auto& s : split_list(map_list)) {
                try {
                    h.push_back(std::stoul(s));
                } catch (const std::logic_error&) {
                    throw ShapeError("bad vertex '" + s + "' in --map");
                }
            }
            auto f = lift_graph_iso(N, G, H, h);
            const auto& M = N.module.module;
            std::vector<MElem> images;
            for (std::size_t i = 0; i < M.rank(); ++i) images.push_back(f[M.gen(i)]);
            emit({{"verified", true}, {"basis_images", images}});
            return 0;
        };
    });

    auto* reduce = app.add_subcommand("reduce", "reductions between module classes");
    reduce->require_subcommand(1);
    auto* e4 = reduce->add_subcommand("endo-4sub", "endomorphism structure to four tagged submodules");
    e4->add_option("endo", in1, "endo file");
    e4->callback([&] {
        action = [&] {
            auto S = endo_from_json(load(in1));
            emit(module_to_json(endo_to_four_submodules(S), ring_ref(S.module.ring())));
            return 0;
        };
    });
    auto* f4 = reduce->add_subcommand("4sub-endo", "four tagged submodules back to an endomorphism structure");
    f4->add_option("module", in1, "module file");
    f4->callback([&] {
        action = [&] {
            auto m = module_from_json(load(in1));
            auto S = four_submodules_decode(m.module);
            emit(endo_to_json(S, ring_ref(S.module.ring())));
            return 0;
        };
    });
    auto* pe = reduce->add_subcommand("polymod-endo", "module over (Z/n)[x]/(g) to a Z/n-module with the action of x");
    pe->add_option("module", in1, "module file over a polyquot ring");
    pe->callback([&] {
        action = [&] {
            auto m = module_from_json(load(in1));
            if (!m.ring.finite_form || m.ring.presented->kind() != PresentedRing::Kind::PolyQuotient)
                throw PreconditionError("polymod-endo needs a module over a polyquot ring");
            auto S = endo_from_poly_module(m.module.module, *m.ring.finite_form);
            emit(endo_to_json(S, ring_ref(S.module.ring())));
            return 0;
        };
    });
    auto* fl = reduce->add_subcommand("freelike", "tagged Z/n-module to a free-like tagged module");
    fl->add_option("module", in1, "module file over Z/n");
    fl->add_option("--copies", copies, "copies of each element in the free cover")->capture_default_str();
    fl->add_flag("--integral", integral, "integer coordinates");
    fl->callback([&] {
        action = [&] {
            auto m = module_from_json(load(in1));
            emit(freelike_to_json(freelike_normalize(m.module, copies, integral)));
            return 0;
        };
    });
    auto* fd = reduce->add_subcommand("freelike-decode", "free-like tagged module back to a tagged module");
    fd->add_option("freelike", in1, "free-like file");
    fd->callback([&] {
        action = [&] {
            auto rec = freelike_recover(freelike_from_json(load(in1)));
            emit(module_to_json(rec.module, ring_ref(rec.module.module.ring())));
            return 0;
        };
    });
    auto* bc = reduce->add_subcommand("thmB-code", "endomorphism structure over R/(Ann x + Ann y) to an R-module");
    bc->add_option("ring", in1, "ring file for R")->required();
    bc->add_option("endo", in2, "endo file; its module is read over R/(Ann x + Ann y)")->required();
    bc->add_option("--x", xs, "element x")->required();
    bc->add_option("--y", ys, "element y")->required();
    bc->callback([&] {
        action = [&] {
            auto R = ring_from_json(load(in1));
            if (!R.finite) throw PreconditionError("thmB-code needs a finite ring");
            Elem x = ring_elem(*R.finite, xs), y = ring_elem(*R.finite, ys);
            ElemSet I = ideal_sum(*R.finite, annihilator(*R.finite, {x}), annihilator(*R.finite, {y}));
            RingSpec S;
            S.finite = std::make_shared<const FiniteRing>(quotient_ring(*R.finite, I).ring);
            auto E = endo_from_json(load(in2), &S);
            auto C = theoremB_code(R.finite, x, y, E);
            json j = module_to_json(TaggedModule{C.module, {}}, R.source);
            j.erase("tags");
            j["x"] = R.finite->name(x);
            j["y"] = R.finite->name(y);
            emit(j);
            return 0;
        };
    });
    auto* bd = reduce->add_subcommand("thmB-decode", "R-module back to an endomorphism structure");
    bd->add_option("module", in1, "module file, with \"x\" and \"y\" or the flags");
    bd->add_option("--x", xs, "element x");
    bd->add_option("--y", ys, "element y");
    bd->callback([&] {
        action = [&] {
            auto j = load(in1);
            auto m = module_from_json(j);
            std::string sx = xs.empty() ? j.value("x", std::string()) : xs;
            std::string sy = ys.empty() ? j.value("y", std::string()) : ys;
            if (sx.empty() || sy.empty()) throw ShapeError("x and y are needed");
            const auto& R = m.module.module.ring();
            auto S = theoremB_decode(m.module.module, ring_elem(R, sx), ring_elem(R, sy));
            emit(endo_to_json(S, ring_ref(S.module.ring())));
            return 0;
        };
    });

    auto* tfab = app.add_subcommand("tfab-code", "graph to generators of a torsion-free abelian group, truncated mod 2^depth");
    tfab->add_option("graph", in1, "graph file")->required();
    tfab->add_option("--stage", stage, "engine stage")->capture_default_str();
    tfab->add_option("--depth", depth, "truncation depth m")->capture_default_str();
    tfab->add_option("--degree", degree, "certificate degree bound")->capture_default_str();
    tfab->add_option("--height", height, "certificate coefficient bound")->capture_default_str();
    tfab->add_option("--copies", tfab_copies, "copies of each element in the free cover")->capture_default_str();
    tfab->callback([&] {
        action = [&] {
            auto G = graph_from_text(slurp(in1));
            auto F2 = std::make_shared<const FiniteRing>(zmod(2));
            auto N = build_engine(F2, {0}, stage);
            auto C = code_graph(N, G);
            auto L = freelike_normalize(C.module, tfab_copies, true);
            Truncation T(PresentedRing::integers(), {2}, depth);
            auto search = greedy_gammas(T, L.tags.size(), degree, height);
            if (!search.complete)
                throw GuardError("found only " + std::to_string(search.gammas.size()) + " of " + std::to_string(L.tags.size()) +
                                 " certified gammas at depth " + std::to_string(depth) + ", degree " + std::to_string(degree) +
                                 ", height " + std::to_string(height));
            auto P = code_freelike(T, L, search.gammas, degree, height);
            std::cout << "rank " << P.rank << "\ndepth " << depth << "\nmodulus 2^" << depth << "\n";
            for (const auto& g : search.gammas) {
                std::cout << "gamma";
                for (unsigned s : g.s) std::cout << " " << s;
                std::cout << "\n";
            }
            for (const auto& v : numeric_generators(P)) {
                for (std::size_t i = 0; i < v.size(); ++i) std::cout << (i ? " " : "") << v[i];
                std::cout << "\n";
            }
            return 0;
        };
    });

    std::size_t stages = 4;
    auto* chain = app.add_subcommand("chain", "build, verify or inspect amalgam chains");
    chain->require_subcommand(1);
    auto* cb = chain->add_subcommand("build", "the standard chain with its bigness certificates");
    cb->add_option("--stages", stages, "number of stages, 1 to 4")->capture_default_str();
    cb->callback([&] {
        action = [&] {
            if (stages < 1 || stages > 4) throw ShapeError("--stages must be between 1 and 4");
            auto C = standard_chain();
            C.stages.resize(stages);
            C.certificates.resize(stages - 1);
            emit(chain_to_json(C));
            return 0;
        };
    });
    auto* cv = chain->add_subcommand("verify", "replay every certificate of a chain file");
    cv->add_option("chain", in1, "chain file");
    cv->callback([&] {
        action = [&] {
            bool ok = verify_chain(chain_from_json(load(in1)));
            std::cout << (ok ? "true" : "false") << "\n";
            return ok ? 0 : 1;
        };
    });
    auto* ci = chain->add_subcommand("inspect", "per-stage summary of a chain file");
    ci->add_option("chain", in1, "chain file");
    ci->callback([&] {
        action = [&] {
            auto C = chain_from_json(load(in1));
            std::cout << "stage dim classes tags certificates\n";
            for (std::size_t k = 0; k < C.stages.size(); ++k)
                std::cout << k << " " << C.stages[k].dim << " " << C.stages[k].class_count() << " " << C.stages[k].tags.size()
                          << " " << (k < C.certificates.size() ? C.certificates[k].size() : 0) << "\n";
            return 0;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return run_guarded(action);
}
