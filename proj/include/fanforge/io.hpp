#pragma once

// Text formats: Fan JSON, TypeCone JSON, ARQuiver JSON, ROFF polytopes, DOT
// exchange graphs and seed input files. Every writer is byte-deterministic.

#include "fanforge/arquiver.hpp"
#include "fanforge/clusterfan.hpp"
#include "fanforge/exchange.hpp"
#include "fanforge/polyhedra.hpp"
#include "fanforge/typecone.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fanforge {

std::string fan_to_json(const Fan& fan);
/// Throws InvalidInput on malformed text or an invalid fan.
Fan fan_from_json(std::string_view text);

std::string typecone_to_json(const TypeCone& tc);
/// Reads N, dim and the facet rows; walls and dependencies are not restored.
TypeCone typecone_from_json(std::string_view text);

std::string arquiver_to_json(const ARQuiver& ar);

/// ROFF: `ROFF`, then `V F`, then V vertex lines of `p/q` coordinates, then F
/// facet lines `k i_1 .. i_k` listing the vertices on each facet.
std::string polytope_to_roff(const VPolytope& p);

struct RoffPolytope {
    std::vector<RatVec> points;  // in file order
    std::vector<std::vector<int>> faces;
};

RoffPolytope roff_from_text(std::string_view text);

/// Nodes are the maximal cones (labelled by their ray indices), edges the walls.
/// With `annotate`, edges carry the wall dependency alpha r + alpha' r' = sum alpha_i s_i.
std::string exchange_graph_to_dot(const Fan& fan, bool annotate);

/// Either `{"b": [[..]], "labels": [..]}` or
/// `{"triangulation": {"polygon": m, "diagonals": [[a, b], ..]}}`.
struct SeedInput {
    Seed seed;
    std::optional<Triangulation> triangulation;
    std::vector<std::string> labels;  // names of the initial cluster variables, may be empty
};

SeedInput seed_from_json(std::string_view text);

/// Comma-separated arrows `2>1,3>2` (source>target).
std::vector<std::pair<int, int>> parse_orientation(std::string_view text);

}  // namespace fanforge
