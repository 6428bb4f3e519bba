#pragma once

// Relative Auslander-Reiten meshes of the type A cluster category, read on
// polygon diagonals, and the wall-level shadow of the mutation theorem.

#include "fanforge/clusterfan.hpp"
#include "fanforge/typecone.hpp"

#include <string>
#include <vector>

namespace fanforge {

/// tau rotates both endpoints one step forward, (a, b) -> (a + 1, b + 1) mod m;
/// tau^{-1} rotates them back. This orientation matches seed_from_triangulation.
Diagonal rotate_forward(const Diagonal& d, int polygon_size);
Diagonal rotate_backward(const Diagonal& d, int polygon_size);

/// All diagonals of the polygon in sorted order.
std::vector<Diagonal> all_diagonals(int polygon_size);

/// L -> M_1 (+ M_2) -> tau^{-1} L. Middles are the corner-cut diagonals
/// (a-1, b) and (a, b-1), dropping boundary edges.
struct RelativeMesh {
    Diagonal start;
    std::vector<Diagonal> middles;
    Diagonal end;
    bool excluded = false;  // start is tau of a diagonal of the initial triangulation
    IntVec normal;          // h_L + h_{tau^{-1} L} - sum h_M over the fan rays; empty when excluded
};

struct RelativeMeshes {
    std::vector<RelativeMesh> all;       // one per diagonal, ordered by start
    std::vector<IntVec> normals;         // non-excluded normals, descending lex order
    int excluded_count() const;
};

/// Requires `e` to be the enumeration of seed_from_triangulation(t).
/// Throws InvalidInput when the diagonal-to-ray dictionary is inconsistent.
RelativeMeshes relative_ar_meshes(const Triangulation& t, const FanEnumeration& e);

struct MutationReport {
    bool walls_in_two = true;        // every codimension-one face of a cone lies in exactly two cones
    bool regular = true;             // exchange graph is n-regular
    bool connected = true;
    bool dependencies_exact = true;  // alpha r + alpha' r' = sum alpha_i s_i holds on the rays
    int unit_walls = 0;              // walls with alpha = alpha' = 1
    int wall_count = 0;
    std::vector<std::string> problems;

    bool ok() const { return walls_in_two && regular && connected && dependencies_exact; }
};

MutationReport verify_mutation_theorem(const Fan& fan, const ExchangeGraph& graph, int threads = 1);

}  // namespace fanforge
