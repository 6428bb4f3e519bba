#pragma once

// Wall-crossing dependencies of a complete simplicial fan, its type cone and
// the polytopes Q_c attached to a simplicial type cone.

#include "fanforge/polyhedra.hpp"

#include <vector>

namespace fanforge {

/// Two adjacent maximal cones. `shared` is the common (n-1)-face;
/// `r` is the ray of cone_a not in cone_b and `r_prime` the converse.
struct Wall {
    int cone_a = 0;
    int cone_b = 0;
    Cone shared;
    int r = 0;
    int r_prime = 0;
};

/// All adjacent pairs of maximal cones, ordered by (cone_a, cone_b).
std::vector<Wall> walls(const Fan& fan);

/// alpha r + alpha' r' = sum_i middle[i] shared[i], normalized by alpha + alpha' = 2.
struct LinearDependency {
    Wall wall;
    Rational alpha;
    Rational alpha_prime;
    std::vector<Rational> middle;  // aligned with wall.shared

    /// The functional h -> alpha h_r + alpha' h_r' - sum middle_i h_{s_i} on R^N.
    RatVec normal(int n_rays) const;
};

/// Throws DegenerateWall when the n+1 rays have more than a one-dimensional
/// kernel, or when r and r' lie on the same side of the wall.
LinearDependency wall_dependency(const Fan& fan, const Wall& wall);

struct UerpViolation {
    int r = 0;
    int r_prime = 0;
    int first_wall = 0;  // indices into walls(fan)
    int second_wall = 0;
};

struct UerpReport {
    bool holds = true;        // full dependency vectors agree for every exchanged pair
    bool weak_holds = true;   // agreement only on rays shared by both supports
    std::vector<UerpViolation> violations;

    bool readings_disagree() const { return holds != weak_holds; }
};

UerpReport unique_exchange_check(const Fan& fan, int threads = 1);

struct TypeConeOptions {
    int threads = 1;
};

/// The type cone {h : alpha h_r + alpha' h_r' > sum alpha_i h_{s_i} for every wall}.
struct TypeCone {
    int n_rays = 0;
    int dim = 0;
    std::vector<Wall> walls;
    std::vector<LinearDependency> dependencies;  // one per wall
    std::vector<RatVec> raw_inequalities;        // one per wall
    std::vector<IntVec> distinct;                // primitive, deduplicated, descending lex order
    std::vector<IntVec> facets;                  // irredundant subset of `distinct`, same order
    /// Per facet, a height vector orthogonal to the lineality space on which
    /// that facet vanishes and every other distinct inequality is positive.
    std::vector<RatVec> certificates;

    /// Facet normals as rows.
    IntMat k_matrix() const;
    bool is_simplicial() const;
    /// Strict membership: every facet inequality holds strictly.
    bool contains(const RatVec& h) const;
};

TypeCone type_cone(const Fan& fan, const TypeConeOptions& options = {});

/// Dependencies whose normal is (a positive multiple of) a facet.
std::vector<LinearDependency> facet_dependencies(const TypeCone& tc);

/// P_h for a height vector with K h = c, together with the slack embedding
/// x -> h - G x that identifies it with {q >= 0 : K q = c}.
struct QcPolytope {
    HPolytope polytope;
    RatVec h;
    IntMat g;

    RatVec slack(const RatVec& x) const;
};

/// Solves K h = c exactly. When possible h vanishes on the rays -e_1..-e_n,
/// which makes the coordinates of P_h the slack coordinates of those rays.
/// Throws NotSimplicial, NonPositiveParameter or InconsistentSystem.
QcPolytope qc_polytope(const Fan& fan, const TypeCone& tc, const RatVec& c);

}  // namespace fanforge
