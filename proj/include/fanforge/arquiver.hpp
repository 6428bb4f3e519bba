#pragma once

// Auslander-Reiten quivers of D_Q = mod KQ plus the shifted injectives, for
// simply-laced Dynkin quivers, knitted as a window of ZQ. Mesh equations,
// their solution over the injective coordinates, and the ABHY polytope.

#include "fanforge/clusterfan.hpp"
#include "fanforge/polyhedra.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fanforge {

/// Vertices 1..n. Underlying trees, by type:
///   A_n: path 1 - 2 - ... - n
///   D_n: path 1 - ... - (n-1), plus the edge (n-2) - n        (n >= 4)
///   E_n: path 1 - ... - (n-1), plus the edge 3 - n            (n = 6, 7, 8)
struct DynkinQuiver {
    char type = 'A';
    int rank = 0;
    std::vector<std::pair<int, int>> arrows;  // (source, target), 1-based
};

/// Validates the tree. Throws InvalidInput.
DynkinQuiver make_quiver(char type, int rank, std::vector<std::pair<int, int>> arrows);

/// Every arrow points to the smaller label: 1 <- 2 <- ... (for D and E, along the tree).
DynkinQuiver linear_quiver(char type, int rank);

/// Exchange matrix with b_ij = #(j -> i) - #(i -> j).
IntMat exchange_matrix(const DynkinQuiver& q);

enum class VertexKind { Module, ShiftedInjective };

struct ARVertex {
    int slice = 0;   // -1 for the shifted injectives
    int vertex = 0;  // tree vertex, 1-based
    IntVec dim;      // dimension vector; -dim I_j for I_j[-1]
    IntVec g;        // index with respect to the shifted injectives, g(I_j[-1]) = e_j
    VertexKind kind = VertexKind::Module;
};

/// q + t = r_1 + ... + r_k + c: start q, end t = tau^{-1} q, middles r_i.
struct MeshRelation {
    int start = 0;
    std::vector<int> middles;
    int end = 0;
    int coeff_id = 0;  // index of the parameter c carried by this mesh
};

struct ARQuiver {
    DynkinQuiver quiver;
    std::vector<ARVertex> vertices;         // knitting order: slice, then sinks first
    std::vector<std::pair<int, int>> arrows;
    std::vector<MeshRelation> meshes;       // knitting order of the start vertex
    std::vector<int> projection_vertices;   // I_1..I_n

    int find(int slice, int vertex) const;  // -1 when outside the window
    int n() const { return quiver.rank; }
};

struct KnitOptions {
    bool enable_type_e = false;
};

/// Throws UnsupportedType for type E unless enabled.
ARQuiver knit_ar_quiver(const DynkinQuiver& q, const KnitOptions& options = {});

std::vector<MeshRelation> mesh_equations(const ARQuiver& ar);

/// constant . c + linear . x, where c runs over meshes and x over the
/// injective coordinates q_{I_1}..q_{I_n}.
struct AffineFunctional {
    RatVec constant;
    RatVec linear;

    bool operator==(const AffineFunctional&) const = default;
};

/// One functional per vertex, by back-substitution in reverse knitting order.
/// Throws SingularSystem if a vertex is neither a mesh start nor an injective.
std::vector<AffineFunctional> abhy_functionals(const ARQuiver& ar);

/// {x : functional_v(x) >= 0 for every vertex v}, written as A x <= b with one
/// row per vertex in vertex order. Throws NonPositiveParameter, InvalidInput.
HPolytope abhy_polytope(const ARQuiver& ar, const RatVec& c);

/// For linear type A: the polygon labels (i, j) of q_{i j}, i.e.
/// (slice m, vertex j) -> (m + 2, m + j + 3). nullopt for other quivers.
std::optional<std::pair<int, int>> diagonal_label(const ARQuiver& ar, int v);

bool is_linear_a(const DynkinQuiver& q);

/// `q_{1 3}` under the type A dictionary, `q_{m,j}` (slice, vertex) otherwise.
std::string coordinate_name(const ARQuiver& ar, int v);
/// The parameter of a mesh, named after its end vertex: `c_{2 4}` or `c_{m,j}`.
std::string parameter_name(const ARQuiver& ar, const MeshRelation& mesh);

/// `q_{1 3} + q_{2 4} = q_{1 4} + c_{2 4}`
std::string format_mesh(const ARQuiver& ar, const MeshRelation& mesh);
/// `q_{1 3} = c_{2 4} + c_{2 5} - q_{2 5}`
std::string format_functional(const ARQuiver& ar, int v, const AffineFunctional& f);

}  // namespace fanforge
