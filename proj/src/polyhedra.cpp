#include "fanforge/polyhedra.hpp"

#include "fanforge/error.hpp"
#include "fanforge/linalg.hpp"
#include "fanforge/lp.hpp"
#include "fanforge/parallel.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace fanforge {

IntMat Fan::ray_matrix() const {
    IntMat g(n_rays(), dim);
    for (int i = 0; i < n_rays(); ++i) g.row(i) = rays[static_cast<std::size_t>(i)].transpose();
    return g;
}

int Fan::find_ray(const IntVec& v) const {
    const IntVec p = primitive(v);
    for (int i = 0; i < n_rays(); ++i) {
        if (rays[static_cast<std::size_t>(i)] == p) return i;
    }
    return -1;
}

Fan make_fan(int dim, std::vector<IntVec> rays, std::vector<Cone> cones, std::vector<std::string> labels) {
    if (dim <= 0) throw Error(ErrorCode::InvalidInput, "fan dimension must be positive");
    std::set<std::vector<std::int64_t>> seen;
    for (auto& r : rays) {
        if (r.size() != dim) throw Error(ErrorCode::InvalidInput, "ray length differs from fan dimension");
        if (r.isZero()) throw Error(ErrorCode::InvalidInput, "zero ray");
        r = primitive(r);
        if (!seen.insert(to_std(r)).second) throw Error(ErrorCode::InvalidInput, "repeated ray");
    }
    for (auto& c : cones) {
        std::sort(c.begin(), c.end());
        if (std::adjacent_find(c.begin(), c.end()) != c.end()) {
            throw Error(ErrorCode::InvalidInput, "cone repeats a ray index");
        }
        for (int idx : c) {
            if (idx < 0 || idx >= static_cast<int>(rays.size())) {
                throw Error(ErrorCode::InvalidInput, "cone refers to missing ray " + std::to_string(idx));
            }
        }
    }
    std::sort(cones.begin(), cones.end());
    cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
    if (labels.empty()) {
        for (std::size_t i = 0; i < rays.size(); ++i) labels.push_back("r" + std::to_string(i + 1));
    }
    if (labels.size() != rays.size()) throw Error(ErrorCode::InvalidInput, "label count differs from ray count");
    return Fan{dim, std::move(rays), std::move(cones), std::move(labels)};
}

VPolytope make_vpolytope(int dim, std::vector<RatVec> points) {
    for (const auto& p : points) {
        if (p.size() != dim) throw Error(ErrorCode::InvalidInput, "point length differs from dimension");
    }
    std::sort(points.begin(), points.end(), LexLess{});
    points.erase(std::unique(points.begin(), points.end(),
                             [](const RatVec& a, const RatVec& b) { return a == b; }),
                 points.end());
    return VPolytope{dim, std::move(points)};
}

namespace {

bool feasible_point(const HPolytope& p, const RatVec& x) {
    for (Eigen::Index i = 0; i < p.a.rows(); ++i) {
        if (p.a.row(i).dot(x) > p.b(i)) return false;
    }
    return true;
}

/// Vertices of a system whose matrix has full column rank, possibly none.
std::vector<RatVec> scan_vertices(const HPolytope& p) {
    const int m = static_cast<int>(p.a.rows());
    const int n = p.dim();
    std::vector<RatVec> found;
    for_each_subset(m, n, [&](const std::vector<int>& rows) {
        const RatMat sub = select_rows(p.a, rows);
        RatVec rhs(n);
        for (int i = 0; i < n; ++i) rhs(i) = p.b(rows[static_cast<std::size_t>(i)]);
        const auto r = rref(sub);
        if (r.rank() < n) return;
        const auto x = solve(sub, rhs);
        if (x && feasible_point(p, *x)) found.push_back(*x);
    });
    return make_vpolytope(n, std::move(found)).vertices;
}

bool has_recession_direction(const HPolytope& p) {
    const int m = static_cast<int>(p.a.rows());
    const int n = p.dim();
    bool found = false;
    for_each_subset(m, n - 1, [&](const std::vector<int>& rows) {
        if (found) return;
        const RatMat sub = select_rows(p.a, rows);
        const RatMat ker = kernel(sub);
        if (ker.cols() != 1) return;
        const RatVec d = ker.col(0);
        const RatVec image = p.a * d;
        const bool nonpositive = (image.array() <= Rational(0)).all();
        const bool nonnegative = (image.array() >= Rational(0)).all();
        if (nonpositive || nonnegative) found = true;
    });
    return found;
}

Eigen::Index affine_rank(const std::vector<RatVec>& points) {
    if (points.empty()) return -1;
    const auto n = points.front().size();
    RatMat diffs(n, static_cast<Eigen::Index>(points.size()) - 1);
    for (std::size_t i = 1; i < points.size(); ++i) {
        diffs.col(static_cast<Eigen::Index>(i) - 1) = points[i] - points.front();
    }
    return rank(diffs);
}

}  // namespace

VPolytope vertices(const HPolytope& p) {
    const int n = p.dim();
    if (p.b.size() != p.a.rows()) throw Error(ErrorCode::InvalidInput, "bounds length differs from row count");
    if (n == 0) throw Error(ErrorCode::InvalidInput, "zero-dimensional polytope");

    const auto row_space = rref(p.a);
    if (row_space.rank() < n) {
        // A lineality space exists: nonempty means unbounded. Test feasibility on
        // the row space, where the reduced system is pointed.
        const RatMat basis = row_space.reduced.topRows(row_space.rank()).transpose();
        const HPolytope reduced{p.a * basis, p.b};
        const bool nonempty = reduced.dim() == 0
                                  ? (p.b.array() >= Rational(0)).all()
                                  : !scan_vertices(reduced).empty();
        if (nonempty) throw Error(ErrorCode::Unbounded, "inequality system has a lineality space");
        throw Error(ErrorCode::Empty, "no feasible point");
    }

    auto verts = scan_vertices(p);
    if (verts.empty()) throw Error(ErrorCode::Empty, "no feasible point");
    if (has_recession_direction(p)) throw Error(ErrorCode::Unbounded, "recession cone is nonzero");
    if (affine_rank(verts) < n) throw Error(ErrorCode::DimensionDeficient, "polytope has no interior point");
    return VPolytope{n, std::move(verts)};
}

namespace {

using Bits = std::vector<std::uint64_t>;

bool subset_of(const Bits& a, const Bits& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if ((a[i] & ~b[i]) != 0) return false;
    return true;
}

int popcount(const Bits& a) {
    int c = 0;
    for (auto w : a) c += __builtin_popcountll(w);
    return c;
}

struct DdRay {
    RatVec y;
    Bits zeros;
};

RatVec primitive_rational(const RatVec& v) { return to_rational(primitive(v)); }

/// Extreme rays of the pointed cone {y : M y >= 0}, M of full column rank.
std::vector<RatVec> extreme_rays(const RatMat& m) {
    const int rows = static_cast<int>(m.rows());
    const int d = static_cast<int>(m.cols());
    const std::size_t words = static_cast<std::size_t>(rows + 63) / 64;
    auto set_bit = [](Bits& b, int i) { b[static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64); };

    // Greedy choice of d independent rows for the initial simplicial cone.
    std::vector<int> initial;
    RatMat chosen(0, d);
    for (int i = 0; i < rows && static_cast<int>(initial.size()) < d; ++i) {
        RatMat trial(chosen.rows() + 1, d);
        trial.topRows(chosen.rows()) = chosen;
        trial.row(chosen.rows()) = m.row(i);
        if (rank(trial) == trial.rows()) {
            chosen = trial;
            initial.push_back(i);
        }
    }
    if (static_cast<int>(initial.size()) < d) {
        throw Error(ErrorCode::DimensionDeficient, "points do not affinely span the ambient space");
    }
    const RatMat inv = *inverse(chosen);
    std::vector<bool> processed(static_cast<std::size_t>(rows), false);
    std::vector<DdRay> rays;
    for (int k = 0; k < d; ++k) {
        DdRay r{primitive_rational(inv.col(k)), Bits(words, 0)};
        for (int j = 0; j < d; ++j)
            if (j != k) set_bit(r.zeros, initial[static_cast<std::size_t>(j)]);
        rays.push_back(std::move(r));
    }
    for (int i : initial) processed[static_cast<std::size_t>(i)] = true;

    for (int i = 0; i < rows; ++i) {
        if (processed[static_cast<std::size_t>(i)]) continue;
        std::vector<Rational> value(rays.size());
        std::vector<std::size_t> pos, neg;
        std::vector<DdRay> next;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            value[k] = m.row(i).dot(rays[k].y);
            if (value[k] > 0) pos.push_back(k);
            else if (value[k] < 0) neg.push_back(k);
        }
        for (std::size_t k = 0; k < rays.size(); ++k) {
            if (value[k] < 0) continue;
            DdRay r = rays[k];
            if (value[k] == 0) set_bit(r.zeros, i);
            next.push_back(std::move(r));
        }
        for (auto p : pos) {
            for (auto q : neg) {
                Bits common(words);
                for (std::size_t w = 0; w < words; ++w) common[w] = rays[p].zeros[w] & rays[q].zeros[w];
                if (popcount(common) < d - 2) continue;
                bool adjacent = true;
                for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
                    if (k == p || k == q) continue;
                    if (subset_of(common, rays[k].zeros)) adjacent = false;
                }
                if (!adjacent) continue;
                DdRay r{primitive_rational(RatVec(value[p] * rays[q].y - value[q] * rays[p].y)), common};
                set_bit(r.zeros, i);
                next.push_back(std::move(r));
            }
        }
        rays = std::move(next);
        processed[static_cast<std::size_t>(i)] = true;
    }
    std::vector<RatVec> out;
    out.reserve(rays.size());
    for (auto& r : rays) out.push_back(std::move(r.y));
    return out;
}

}  // namespace

HPolytope facets(const VPolytope& p) {
    const int n = p.dim;
    if (p.vertices.empty()) throw Error(ErrorCode::DimensionDeficient, "no points");
    RatMat homog(static_cast<Eigen::Index>(p.vertices.size()), n + 1);
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        homog.row(row).head(n) = p.vertices[i].transpose();
        homog(row, n) = 1;
    }
    if (rank(homog) < n + 1) {
        throw Error(ErrorCode::DimensionDeficient, "points do not affinely span the ambient space");
    }
    // y = (a, beta) with a.v + beta >= 0 for every point: inner normal a.
    std::vector<std::pair<IntVec, Rational>> rows;
    for (const RatVec& y : extreme_rays(homog)) {
        RatVec normal = -y.head(n);
        if (normal.isZero()) continue;
        const IntVec prim = primitive(normal);
        // positive factor taking `normal` to `prim`
        Eigen::Index k = 0;
        while (prim(k) == 0) ++k;
        const Rational factor = Rational(prim(k)) / normal(k);
        rows.emplace_back(prim, y(n) * factor);
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return LexLess{}(a.first, b.first); });
    HPolytope out{RatMat(static_cast<Eigen::Index>(rows.size()), n), RatVec(static_cast<Eigen::Index>(rows.size()))};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.a.row(static_cast<Eigen::Index>(i)) = to_rational(rows[i].first).transpose();
        out.b(static_cast<Eigen::Index>(i)) = rows[i].second;
    }
    return out;
}

std::vector<std::vector<int>> incidences(const VPolytope& p, const HPolytope& h) {
    std::vector<std::vector<int>> out;
    out.reserve(p.vertices.size());
    for (const auto& v : p.vertices) {
        std::vector<int> tight;
        for (Eigen::Index i = 0; i < h.a.rows(); ++i) {
            if (h.a.row(i).dot(v) == h.b(i)) tight.push_back(static_cast<int>(i));
        }
        out.push_back(std::move(tight));
    }
    return out;
}

Fan normal_fan(const VPolytope& p) {
    const HPolytope h = facets(p);
    const int n = p.dim;
    // Facet rows are sorted ascending; rays are listed in descending order.
    const int m = static_cast<int>(h.a.rows());
    std::vector<IntVec> rays;
    for (int i = m - 1; i >= 0; --i) rays.push_back(primitive(RatVec(h.a.row(i).transpose())));
    std::vector<Cone> cones;
    for (const auto& tight : incidences(p, h)) {
        if (static_cast<int>(tight.size()) < n) continue;
        if (rank(select_rows(h.a, tight)) < n) continue;  // not a vertex of the hull
        Cone c;
        for (int t : tight) c.push_back(m - 1 - t);
        cones.push_back(std::move(c));
    }
    return make_fan(n, std::move(rays), std::move(cones));
}

HPolytope p_h(const Fan& fan, const RatVec& h) {
    if (h.size() != fan.n_rays()) {
        throw Error(ErrorCode::InvalidInput, "height vector has length " + std::to_string(h.size()) +
                                                 ", fan has " + std::to_string(fan.n_rays()) + " rays");
    }
    return HPolytope{to_rational(fan.ray_matrix()), h};
}

bool fan_eq(const Fan& a, const Fan& b) {
    if (a.dim != b.dim || a.n_rays() != b.n_rays() || a.n_cones() != b.n_cones()) return false;
    std::vector<int> map(static_cast<std::size_t>(a.n_rays()));
    for (int i = 0; i < a.n_rays(); ++i) {
        const int j = b.find_ray(a.rays[static_cast<std::size_t>(i)]);
        if (j < 0) return false;
        map[static_cast<std::size_t>(i)] = j;
    }
    std::set<Cone> target(b.cones.begin(), b.cones.end());
    for (const auto& c : a.cones) {
        Cone image;
        for (int r : c) image.push_back(map[static_cast<std::size_t>(r)]);
        std::sort(image.begin(), image.end());
        if (!target.contains(image)) return false;
    }
    return true;
}

RatMat cone_inverse(const Fan& fan, const Cone& cone) {
    RatMat cols(fan.dim, static_cast<Eigen::Index>(cone.size()));
    for (std::size_t k = 0; k < cone.size(); ++k) {
        cols.col(static_cast<Eigen::Index>(k)) = to_rational(fan.rays[static_cast<std::size_t>(cone[k])]);
    }
    auto inv = inverse(cols);
    if (!inv) throw Error(ErrorCode::NotSimplicial, "cone rays are not a basis");
    return *inv;
}

bool in_cone(const RatMat& inverse, const RatVec& point) {
    const RatVec coeffs = inverse * point;
    return (coeffs.array() >= Rational(0)).all();
}

std::vector<RatVec> random_rational_points(int dim, int count, std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    std::vector<RatVec> out;
    for (int k = 0; k < count; ++k) {
        RatVec p(dim);
        for (int i = 0; i < dim; ++i) {
            const auto num = static_cast<std::int64_t>(engine() % 2001) - 1000;
            const auto den = static_cast<std::int64_t>(engine() % 97) + 1;
            p(i) = Rational(num, den);
        }
        out.push_back(std::move(p));
    }
    return out;
}

namespace {

/// Exact test that two simplicial cones meet in the face spanned by their common rays.
bool meet_in_common_face(const Fan& fan, const Cone& c1, const Cone& c2) {
    const int n = fan.dim;
    const auto k1 = static_cast<Eigen::Index>(c1.size());
    const auto k2 = static_cast<Eigen::Index>(c2.size());
    // sum a_r r - sum b_s s = 0 and the weight outside the common rays is 1.
    RatMat m = RatMat::Zero(n + 1, k1 + k2);
    for (Eigen::Index j = 0; j < k1; ++j) {
        const int r = c1[static_cast<std::size_t>(j)];
        m.col(j).head(n) = to_rational(fan.rays[static_cast<std::size_t>(r)]);
        if (!std::binary_search(c2.begin(), c2.end(), r)) m(n, j) = 1;
    }
    for (Eigen::Index j = 0; j < k2; ++j) {
        const int s = c2[static_cast<std::size_t>(j)];
        m.col(k1 + j).head(n) = -to_rational(fan.rays[static_cast<std::size_t>(s)]);
        if (!std::binary_search(c1.begin(), c1.end(), s)) m(n, k1 + j) = 1;
    }
    RatVec rhs = RatVec::Zero(n + 1);
    rhs(n) = 1;
    return !nonnegative_solution(m, rhs).feasible();
}

}  // namespace

FanCheck check_fan(const Fan& fan, const FanCheckOptions& options) {
    FanCheck out;
    const int n = fan.dim;
    auto problem = [&](bool& flag, std::string msg) {
        flag = false;
        if (out.problems.size() < 20) out.problems.push_back(std::move(msg));
    };

    std::set<std::vector<std::int64_t>> seen;
    for (const auto& r : fan.rays) {
        if (primitive(r) != r || r.isZero()) problem(out.primitive_distinct, "ray not primitive");
        if (!seen.insert(to_std(r)).second) problem(out.primitive_distinct, "repeated ray");
    }

    std::vector<RatMat> inverses(fan.cones.size());
    for (std::size_t c = 0; c < fan.cones.size(); ++c) {
        const auto& cone = fan.cones[c];
        if (static_cast<int>(cone.size()) != n) {
            problem(out.simplicial, "cone " + std::to_string(c) + " has " + std::to_string(cone.size()) + " rays");
            continue;
        }
        try {
            inverses[c] = cone_inverse(fan, cone);
        } catch (const Error&) {
            problem(out.simplicial, "cone " + std::to_string(c) + " is not full rank");
        }
    }
    if (!out.simplicial) return out;

    std::map<Cone, int> wall_count;
    for (const auto& cone : fan.cones) {
        for (int skip = 0; skip < n; ++skip) {
            Cone wall;
            for (int i = 0; i < n; ++i)
                if (i != skip) wall.push_back(cone[static_cast<std::size_t>(i)]);
            ++wall_count[wall];
        }
    }
    for (const auto& [wall, count] : wall_count) {
        if (count != 2) problem(out.walls_in_two, "a wall borders " + std::to_string(count) + " cones");
    }

    if (options.pairwise) {
        const std::size_t c = fan.cones.size();
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < c; ++i)
            for (std::size_t j = i + 1; j < c; ++j) pairs.emplace_back(i, j);
        std::vector<char> proper(pairs.size(), 1);
        parallel_for(pairs.size(), options.threads, [&](std::size_t k) {
            proper[k] = meet_in_common_face(fan, fan.cones[pairs[k].first], fan.cones[pairs[k].second]) ? 1 : 0;
        });
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            if (!proper[k]) {
                problem(out.pairwise_faces, "cones " + std::to_string(pairs[k].first) + " and " +
                                                std::to_string(pairs[k].second) + " overlap improperly");
            }
        }
    }

    std::vector<RatVec> probes;
    for (const auto& r : fan.rays) probes.push_back(to_rational(r));
    for (std::size_t i = 0; i < fan.rays.size(); ++i) {
        for (std::size_t j = i + 1; j < fan.rays.size(); ++j) {
            probes.push_back(to_rational(IntVec(fan.rays[i] + fan.rays[j])));
            probes.push_back(to_rational(IntVec(fan.rays[i] - fan.rays[j])));
        }
    }
    for (auto& p : random_rational_points(n, options.random_probes, options.rng_seed)) probes.push_back(std::move(p));
    std::vector<char> covered(probes.size(), 0);
    parallel_for(probes.size(), options.threads, [&](std::size_t k) {
        for (const auto& inv : inverses) {
            if (in_cone(inv, probes[k])) {
                covered[k] = 1;
                return;
            }
        }
    });
    for (std::size_t k = 0; k < probes.size(); ++k) {
        if (!covered[k]) problem(out.probes_covered, "probe " + std::to_string(k) + " lies in no cone");
    }
    return out;
}

}  // namespace fanforge
