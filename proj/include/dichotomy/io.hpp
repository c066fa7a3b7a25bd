#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "dichotomy/classifier.hpp"
#include "dichotomy/coder.hpp"
#include "dichotomy/presented.hpp"
#include "dichotomy/radic.hpp"
#include "dichotomy/reductions.hpp"

namespace dichotomy {

using json = nlohmann::json;

// Parse failures of any kind surface as ShapeError.
json parse_json(const std::string& text);
json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);

// Ring files:
//   {"size": n, "add": [[..]], "mul": [[..]], "zero": i, "one": j, "names": [..]?}
//   {"kind": "Z"} | {"kind": "Zmod", "n": k} | {"kind": "polyquot", "n": k, "modulus": [c0, .., 1]}
//   {"kind": "poly", "n": k}  for (Z/n)[x]
//   {"catalog": "<name>"}  or just the string "<name>"
struct RingSpec {
    json source;                               // as read, for echoing into outputs
    std::optional<PresentedRing> presented;    // set for "kind" rings
    std::optional<PresentedRing::Finite> finite_form;  // finite presented rings
    RingPtr finite;                            // set whenever the ring is finite
};
RingSpec ring_from_json(const json& j);
json ring_to_json(const FiniteRing& R);

// Module files. Table form: {"ring", "size", "add", "action", "tags": [[labels]]}.
// Compact form: {"ring", "orders", "gen_action", "tags"?: [[elements]], "tag_generators"?: [[elements]]}.
// gen_action[r][i] = r * e_i. Elements of the compact form are mixed-radix codes, first coordinate least significant.
struct ModuleFile {
    RingSpec ring;
    TaggedModule module;
};
ModuleFile module_from_json(const json& j);
ModuleFile module_from_json(const json& j, const RingSpec& ring);
// Compact form; tags are written as generator lists when they have more than `max_listed` elements.
json module_to_json(const TaggedModule& M, const json& ring_ref, std::size_t max_listed = 4096);
MSet tag_generators(const FiniteModule& M, const MSet& S);

// Endo files add "T": [element images] to a module file.
EndoStructure endo_from_json(const json& j, const RingSpec* ring = nullptr);
json endo_to_json(const EndoStructure& S, const json& ring_ref);

// Coded modules add "context": {sort0, sort1, base0, base1, rq, rt, ug, ideal, vertices}.
json context_to_json(const DecodeContext& c);
DecodeContext context_from_json(const json& j);

// Graphs: first line vertex count, then one "u v" per line, 0-indexed, u < v. '#' starts a comment.
Graph graph_from_text(const std::string& text);
std::string graph_to_text(const Graph& G);

json freelike_to_json(const FreeLikeTagged& N);
FreeLikeTagged freelike_from_json(const json& j);

// {"kind": "ThmB", "path": [[..]], "elements": [..]}
json witness_to_json(const Witness& w);
Witness witness_from_json(const json& j);
json verdict_to_json(const Verdict& v);

}  // namespace dichotomy
