#pragma once

// Seeds, g-vector mutation and enumeration of g-vector fans, plus the
// polygon-triangulation model of type A used as an independent oracle.

#include "fanforge/polyhedra.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fanforge {

/// Exchange matrix with its g- and c-matrices. Columns of `g` are the
/// g-vectors of the current cluster variables in the initial basis.
struct Seed {
    IntMat b;
    IntMat g;
    IntMat c;
    std::vector<std::string> cluster_ids;

    int rank() const { return static_cast<int>(b.rows()); }
    IntVec g_vector(int k) const { return g.col(k); }

    /// Sorted g-vector columns: identifies the cluster in finite type.
    std::vector<std::vector<std::int64_t>> cluster_key() const;

    bool operator==(const Seed& other) const {
        return b == other.b && g == other.g && c == other.c && cluster_ids == other.cluster_ids;
    }
};

/// Canonical identifier of a cluster variable, keyed by its g-vector: `g(1,-1,0)`.
std::string cluster_id(const IntVec& g);

/// Whether D B is skew-symmetric for some positive diagonal D.
bool is_skew_symmetrizable(const IntMat& b);

/// Seed with the given exchange matrix and identity g- and c-matrices.
/// Throws InvalidInput unless b is square and skew-symmetrizable.
Seed initial_seed(const IntMat& b);

/// Mutation in direction k (0-based). The exchange matrix follows the usual
/// matrix mutation; c- and g-matrices follow the sign-coherent tropical
/// recurrences, with eps the sign of the k-th c-vector:
///   c'_j = c_j + [eps b_kj]_+ c_k (j != k),    c'_k = -c_k
///   g'_k = -g_k + sum_i [-eps b_ik]_+ g_i,       g'_j = g_j (j != k)
Seed mutate_seed(const Seed& s, int k);

/// A diagonal {a, b} of a convex polygon with vertices 1..m, a < b.
struct Diagonal {
    int a = 0;
    int b = 0;

    auto operator<=>(const Diagonal&) const = default;
};

Diagonal make_diagonal(int x, int y);
bool crosses(const Diagonal& d, const Diagonal& e);
std::string to_string(const Diagonal& d);

struct Triangulation {
    int polygon_size = 0;
    std::vector<Diagonal> diagonals;  // position k corresponds to seed direction k

    int rank() const { return polygon_size - 3; }
    /// Sorted diagonal list, the canonical identity of the triangulation.
    std::vector<Diagonal> key() const;
};

/// Validates: polygon_size >= 4, exactly polygon_size - 3 distinct diagonals,
/// endpoints non-adjacent, no two crossing. Throws InvalidInput otherwise.
Triangulation make_triangulation(int polygon_size, std::vector<Diagonal> diagonals);

/// All diagonals from vertex 1.
Triangulation fan_triangulation(int polygon_size);

/// Zig-zag triangulation 1-3, 3-m, m-4, 4-(m-1), ... with no internal triangle.
Triangulation snake_triangulation(int polygon_size);

/// The triangles of the triangulation, each as sorted vertex triple.
std::vector<std::array<int, 3>> triangles(const Triangulation& t);

/// Replaces diagonal k by the other diagonal of the quadrilateral around it.
Triangulation flip(const Triangulation& t, int k);

/// b_ij = +1 when diagonals i and j bound a common triangle and j follows i
/// counterclockwise around that triangle, -1 when it precedes, 0 otherwise.
/// g- and c-matrices start as identity.
Seed seed_from_triangulation(const Triangulation& t);

struct ExchangeEdge {
    int a = 0;  // cone indices, a < b
    int b = 0;
    int ray_a = 0;  // ray of cone a not in cone b
    int ray_b = 0;  // ray of cone b not in cone a
};

/// Clusters and the mutations between them.
struct ExchangeGraph {
    int n_nodes = 0;
    std::vector<ExchangeEdge> edges;  // sorted by (a, b)

    std::vector<std::vector<int>> adjacency() const;
    bool is_regular(int degree) const;
    bool is_connected() const;
};

struct EnumerationOptions {
    std::size_t budget = 100000;
    int threads = 1;
};

/// Result of a breadth-first closure of the mutation class.
struct FanEnumeration {
    Fan fan;
    ExchangeGraph graph;
    std::vector<Seed> seeds;  // seeds[i] realizes cone i of the fan
};

/// Default budget, overridable through FANFORGE_BUDGET.
std::size_t default_budget();

/// Enumerates all seeds reachable from s0 up to cluster equality. Rays are the
/// distinct g-vectors ordered as: e_1..e_n, then the remaining rays in
/// descending lexicographic order, then -e_1..-e_n. The initial cluster is the
/// positive orthant. Throws BudgetExceeded when more than `budget` clusters
/// are found. Output does not depend on the thread count.
FanEnumeration enumerate_fan(const Seed& s0, const EnumerationOptions& options = {});

/// Triangulations of the polygon as graph nodes joined by flips.
struct FlipGraph {
    std::vector<Triangulation> nodes;  // sorted by key()
    std::vector<std::pair<int, int>> edges;  // i < j, sorted
};

FlipGraph flip_graph(int polygon_size);

/// Cluster <-> triangulation correspondence obtained by mutating the seed of
/// t0 in lockstep with flips of t0.
struct TriangulationMatch {
    bool consistent = true;
    std::vector<std::string> problems;
    std::vector<Triangulation> cone_triangulation;  // per cone of the fan
    std::map<Diagonal, int> ray_of_diagonal;
};

/// Requires `e` to be the enumeration of seed_from_triangulation(t0).
TriangulationMatch match_triangulations(const Triangulation& t0, const FanEnumeration& e);

/// Whether the exchange graph of `e` is isomorphic to flip_graph(t0.polygon_size)
/// through the lockstep correspondence, which sends the initial cluster to t0.
bool isomorphic_to_flip_graph(const Triangulation& t0, const FanEnumeration& e);

}  // namespace fanforge
