#pragma once

#include <string>

#include <json.hpp>

#include "foldwork/bipyramid.hpp"
#include "foldwork/flaps.hpp"
#include "foldwork/foldcore.hpp"
#include "foldwork/gadgets.hpp"
#include "foldwork/layerdp.hpp"
#include "foldwork/ncl.hpp"
#include "foldwork/treedecomp.hpp"

// JSON for every instance and result type. Rationals are [num, den]; numbers
// that do not fit in 64 bits are written as decimal strings. Readers throw
// InvalidInput on anything malformed.
namespace foldwork::io {

using Json = nlohmann::json;

Json to_json(const Rat& r);
Rat rat_from_json(const Json& j);
Json to_json(const Point& p);
Point point_from_json(const Json& j);
Json bigint_json(const BigInt& v);

Json to_json(const CreasePattern& cp);
CreasePattern crease_pattern_from_json(const Json& j);

Json to_json(const FlapInstance& inst);
FlapInstance flap_instance_from_json(const Json& j);
Json to_json(const FlapState& st);
FlapState flap_state_from_json(const Json& j);

Json to_json(const NclGraph& g);
NclGraph ncl_graph_from_json(const Json& j);
Json orientation_json(const NclGraph& g, Orientation o);
Orientation orientation_from_json(const NclGraph& g, const Json& j);
Json biadjacency_json(const Biadjacency& b);
Biadjacency biadjacency_from_json(const Json& j);

Json to_json(const GadgetBlueprint& bp);
GadgetBlueprint blueprint_from_json(const Json& j);
Json to_json(const GridRouting& r);
GridRouting routing_from_json(const Json& j);
Json to_json(const CompiledNcl& c);

Json to_json(const NiceTreeDecomposition& ntd);
/// Cell id -> facet ids, top to bottom.
Json layering_json(const GlobalLayering& l);
Json to_json(const CyclicPolygonSolution& s);
Json to_json(const Bipyramid3D& b);

/// Two-space indent plus trailing newline; the canonical byte form.
std::string dump(const Json& j);
/// Throws InvalidInput with the parser's message.
Json parse(const std::string& text);
Json read_file(const std::string& path);

}  // namespace foldwork::io
