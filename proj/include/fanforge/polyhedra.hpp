#pragma once

// Cones, fans and polytopes over exact rationals.

#include "fanforge/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fanforge {

using Cone = std::vector<int>;  // sorted ray indices

/// A fan given by primitive integer rays and maximal cones over ray indices.
///
/// Ray order is meaningful: it is the row order of the ray matrix G and the
/// coordinate order of height vectors. Cones are kept sorted, and the cone list
/// is sorted lexicographically. Build through make_fan() to get that form.
struct Fan {
    int dim = 0;
    std::vector<IntVec> rays;
    std::vector<Cone> cones;
    std::vector<std::string> labels;

    int n_rays() const { return static_cast<int>(rays.size()); }
    int n_cones() const { return static_cast<int>(cones.size()); }

    /// N x n matrix whose rows are the rays.
    IntMat ray_matrix() const;

    /// Index of a ray equal to primitive(v), or -1.
    int find_ray(const IntVec& v) const;
};

/// Normalizes rays to primitive vectors, sorts every cone and the cone list,
/// fills default labels `r1..rN`. Throws InvalidInput on repeated rays, bad
/// indices or dimension mismatches.
Fan make_fan(int dim, std::vector<IntVec> rays, std::vector<Cone> cones,
             std::vector<std::string> labels = {});

/// {x : A x <= b}
struct HPolytope {
    RatMat a;
    RatVec b;

    int dim() const { return static_cast<int>(a.cols()); }
};

/// Points in lexicographic order without repetition.
struct VPolytope {
    int dim = 0;
    std::vector<RatVec> vertices;
};

VPolytope make_vpolytope(int dim, std::vector<RatVec> points);

/// Exact vertex enumeration by scanning n-subsets of rows.
///
/// Throws Empty, Unbounded or DimensionDeficient (no interior point). For an
/// infeasible system with a lineality space Empty is reported, not Unbounded.
VPolytope vertices(const HPolytope& p);

/// Irredundant facet description of conv(points): one row per facet with a
/// primitive integer outer normal, rows in lexicographic order. Computed by the
/// double description method on the homogenized point set.
/// Throws DimensionDeficient if the points do not affinely span R^n.
HPolytope facets(const VPolytope& p);

/// For each point of `p`, the indices of the rows of `h` tight at it.
std::vector<std::vector<int>> incidences(const VPolytope& p, const HPolytope& h);

/// Outer normal fan: rays are the facet normals, one maximal cone per vertex.
/// Cones are simplicial exactly when the polytope is simple.
Fan normal_fan(const VPolytope& p);

/// {x : G x <= h} with G the ray matrix of the fan, rows in fan order.
HPolytope p_h(const Fan& fan, const RatVec& h);

/// Same primitive rays (as sets) and the induced bijection carries maximal
/// cones onto maximal cones.
bool fan_eq(const Fan& a, const Fan& b);

/// Inverse of the n x n matrix whose columns are the rays of a simplicial
/// cone. Throws NotSimplicial if the rays are dependent.
RatMat cone_inverse(const Fan& fan, const Cone& cone);

/// Membership of a point in a simplicial cone, given cone_inverse().
bool in_cone(const RatMat& inverse, const RatVec& point);

struct FanCheckOptions {
    std::uint64_t rng_seed = 0;
    int random_probes = 100;
    bool pairwise = true;
    int threads = 1;
};

struct FanCheck {
    bool primitive_distinct = true;
    bool simplicial = true;
    bool pairwise_faces = true;
    bool walls_in_two = true;
    bool probes_covered = true;
    std::vector<std::string> problems;

    bool ok() const {
        return primitive_distinct && simplicial && pairwise_faces && walls_in_two && probes_covered;
    }
};

/// Certifies the fan invariants: rays primitive and distinct, every cone
/// simplicial of full rank, every two cones meeting in a common face (one
/// exact feasibility problem per pair), every wall in exactly two cones, and
/// probe coverage (rays, pairwise sums and differences, seeded random
/// rational points). Coverage is a completeness proxy, not a proof.
FanCheck check_fan(const Fan& fan, const FanCheckOptions& options = {});

/// Seeded rational points with numerators in [-1000, 1000] and denominators
/// in [1, 97]; identical on every platform for a given seed.
std::vector<RatVec> random_rational_points(int dim, int count, std::uint64_t seed);

}  // namespace fanforge
