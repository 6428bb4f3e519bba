#include "fanforge/typecone.hpp"

#include "fanforge/error.hpp"
#include "fanforge/linalg.hpp"
#include "fanforge/lp.hpp"
#include "fanforge/parallel.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fanforge {

std::vector<Wall> walls(const Fan& fan) {
    std::map<Cone, std::vector<int>> by_face;
    for (int c = 0; c < fan.n_cones(); ++c) {
        const Cone& cone = fan.cones[static_cast<std::size_t>(c)];
        for (std::size_t skip = 0; skip < cone.size(); ++skip) {
            Cone face;
            for (std::size_t i = 0; i < cone.size(); ++i)
                if (i != skip) face.push_back(cone[i]);
            by_face[face].push_back(c);
        }
    }
    std::vector<Wall> out;
    for (const auto& [face, owners] : by_face) {
        if (owners.size() != 2) continue;
        Wall w;
        w.cone_a = std::min(owners[0], owners[1]);
        w.cone_b = std::max(owners[0], owners[1]);
        w.shared = face;
        auto other = [&](int c) {
            for (int r : fan.cones[static_cast<std::size_t>(c)])
                if (!std::binary_search(face.begin(), face.end(), r)) return r;
            return -1;
        };
        w.r = other(w.cone_a);
        w.r_prime = other(w.cone_b);
        out.push_back(std::move(w));
    }
    std::sort(out.begin(), out.end(), [](const Wall& a, const Wall& b) {
        return std::tie(a.cone_a, a.cone_b, a.shared) < std::tie(b.cone_a, b.cone_b, b.shared);
    });
    return out;
}

RatVec LinearDependency::normal(int n_rays) const {
    RatVec v = RatVec::Zero(n_rays);
    v(wall.r) += alpha;
    v(wall.r_prime) += alpha_prime;
    for (std::size_t i = 0; i < wall.shared.size(); ++i) v(wall.shared[i]) -= middle[i];
    return v;
}

LinearDependency wall_dependency(const Fan& fan, const Wall& wall) {
    const int n = fan.dim;
    RatMat m(n, static_cast<Eigen::Index>(wall.shared.size()) + 2);
    m.col(0) = to_rational(fan.rays[static_cast<std::size_t>(wall.r)]);
    m.col(1) = to_rational(fan.rays[static_cast<std::size_t>(wall.r_prime)]);
    for (std::size_t i = 0; i < wall.shared.size(); ++i) {
        m.col(static_cast<Eigen::Index>(i) + 2) = to_rational(fan.rays[static_cast<std::size_t>(wall.shared[i])]);
    }
    const RatMat ker = kernel(m);
    if (ker.cols() != 1) {
        throw Error(ErrorCode::DegenerateWall, "wall between cones " + std::to_string(wall.cone_a) + " and " +
                                                   std::to_string(wall.cone_b) + " has a kernel of dimension " +
                                                   std::to_string(ker.cols()));
    }
    const RatVec v = ker.col(0);
    if (v(0) * v(1) <= 0) {
        throw Error(ErrorCode::DegenerateWall, "exchanged rays of the wall between cones " +
                                                   std::to_string(wall.cone_a) + " and " +
                                                   std::to_string(wall.cone_b) + " are not on opposite sides");
    }
    const Rational scale = Rational(2) / (v(0) + v(1));
    LinearDependency dep{wall, v(0) * scale, v(1) * scale, {}};
    for (std::size_t i = 0; i < wall.shared.size(); ++i) {
        dep.middle.push_back(-v(static_cast<Eigen::Index>(i) + 2) * scale);
    }
    return dep;
}

UerpReport unique_exchange_check(const Fan& fan, int threads) {
    const auto ws = walls(fan);
    std::vector<LinearDependency> deps(ws.size());
    parallel_for(ws.size(), threads, [&](std::size_t i) { deps[i] = wall_dependency(fan, ws[i]); });

    std::map<std::pair<int, int>, std::vector<int>> groups;
    for (std::size_t i = 0; i < ws.size(); ++i) {
        groups[std::minmax(ws[i].r, ws[i].r_prime)].push_back(static_cast<int>(i));
    }
    UerpReport report;
    for (const auto& [pair, members] : groups) {
        const int first = members.front();
        const RatVec base = deps[static_cast<std::size_t>(first)].normal(fan.n_rays());
        for (std::size_t k = 1; k < members.size(); ++k) {
            const int other = members[k];
            const RatVec v = deps[static_cast<std::size_t>(other)].normal(fan.n_rays());
            if (v == base) continue;
            report.holds = false;
            report.violations.push_back({pair.first, pair.second, first, other});
            // weak reading: compare on r, r' and on rays shared by both walls
            bool agree = base(pair.first) == v(pair.first) && base(pair.second) == v(pair.second);
            for (int s : ws[static_cast<std::size_t>(first)].shared) {
                const auto& sh = ws[static_cast<std::size_t>(other)].shared;
                if (std::binary_search(sh.begin(), sh.end(), s)) agree = agree && base(s) == v(s);
            }
            if (!agree) report.weak_holds = false;
        }
    }
    return report;
}

IntMat TypeCone::k_matrix() const {
    IntMat k(static_cast<Eigen::Index>(facets.size()), n_rays);
    for (std::size_t i = 0; i < facets.size(); ++i) k.row(static_cast<Eigen::Index>(i)) = facets[i].transpose();
    return k;
}

bool TypeCone::is_simplicial() const {
    const int expected = n_rays - dim;
    return static_cast<int>(facets.size()) == expected && rank(to_rational(k_matrix())) == expected;
}

bool TypeCone::contains(const RatVec& h) const {
    if (h.size() != n_rays) return false;
    for (const auto& f : facets) {
        if (to_rational(f).dot(h) <= 0) return false;
    }
    return true;
}

namespace {

/// Orthogonal projection onto ker(G^T), the complement of the lineality space.
RatVec project_off_lineality(const RatMat& g, const RatVec& h) {
    const RatMat gram = g.transpose() * g;
    const auto t = solve(gram, RatVec(g.transpose() * h));
    return h - g * *t;
}

/// Some h with a.h >= 1 for every row a, or nullopt.
std::optional<RatVec> strictly_positive_point(const std::vector<IntVec>& rows, int n_rays) {
    const auto m = static_cast<Eigen::Index>(rows.size());
    RatMat lp = RatMat::Zero(m, 2 * n_rays + m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const RatVec a = to_rational(rows[static_cast<std::size_t>(i)]);
        lp.row(i).head(n_rays) = a.transpose();
        lp.row(i).segment(n_rays, n_rays) = -a.transpose();
        lp(i, 2 * n_rays + i) = -1;
    }
    const auto f = nonnegative_solution(lp, RatVec::Constant(m, Rational(1)));
    if (!f.feasible()) return std::nullopt;
    return RatVec(f.solution->head(n_rays) - f.solution->segment(n_rays, n_rays));
}

}  // namespace

TypeCone type_cone(const Fan& fan, const TypeConeOptions& options) {
    TypeCone tc;
    tc.n_rays = fan.n_rays();
    tc.dim = fan.dim;
    tc.walls = walls(fan);
    tc.dependencies.resize(tc.walls.size());
    parallel_for(tc.walls.size(), options.threads,
                 [&](std::size_t i) { tc.dependencies[i] = wall_dependency(fan, tc.walls[i]); });
    std::set<std::vector<std::int64_t>, std::greater<>> unique;
    for (const auto& d : tc.dependencies) {
        tc.raw_inequalities.push_back(d.normal(tc.n_rays));
        unique.insert(to_std(primitive(tc.raw_inequalities.back())));
    }
    for (const auto& u : unique) tc.distinct.push_back(from_std(u));

    // A distinct normal is a facet iff it is not a nonnegative combination of the others.
    const std::size_t m = tc.distinct.size();
    std::vector<std::optional<RatVec>> separator(m);
    parallel_for(m, options.threads, [&](std::size_t j) {
        RatMat others(tc.n_rays, static_cast<Eigen::Index>(m) - 1);
        Eigen::Index col = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (i != j) others.col(col++) = to_rational(tc.distinct[i]);
        const auto f = nonnegative_solution(others, to_rational(tc.distinct[j]));
        if (!f.feasible()) separator[j] = RatVec(-f.certificate);  // a_i.s >= 0 (i != j), a_j.s < 0
    });
    std::vector<std::size_t> facet_index;
    for (std::size_t j = 0; j < m; ++j) {
        if (separator[j]) {
            facet_index.push_back(j);
            tc.facets.push_back(tc.distinct[j]);
        }
    }

    // Interior point: from K h = 1 when K has independent rows, otherwise by LP.
    std::optional<RatVec> interior;
    const RatMat k = to_rational(tc.k_matrix());
    if (!tc.facets.empty() && rank(k) == k.rows()) {
        interior = solve(k, RatVec::Constant(k.rows(), Rational(1)));
    } else if (!tc.distinct.empty()) {
        interior = strictly_positive_point(tc.distinct, tc.n_rays);
    }
    if (interior) {
        const RatMat g = to_rational(fan.ray_matrix());
        for (std::size_t f = 0; f < facet_index.size(); ++f) {
            const RatVec a = to_rational(tc.distinct[facet_index[f]]);
            const RatVec& s = *separator[facet_index[f]];
            const Rational t = a.dot(*interior) / -a.dot(s);
            tc.certificates.push_back(project_off_lineality(g, RatVec(*interior + t * s)));
        }
    }
    return tc;
}

std::vector<LinearDependency> facet_dependencies(const TypeCone& tc) {
    std::set<std::vector<std::int64_t>> facets;
    for (const auto& f : tc.facets) facets.insert(to_std(f));
    std::vector<LinearDependency> out;
    for (std::size_t i = 0; i < tc.dependencies.size(); ++i) {
        if (facets.contains(to_std(primitive(tc.raw_inequalities[i])))) out.push_back(tc.dependencies[i]);
    }
    return out;
}

RatVec QcPolytope::slack(const RatVec& x) const { return h - to_rational(g) * x; }

QcPolytope qc_polytope(const Fan& fan, const TypeCone& tc, const RatVec& c) {
    if (!tc.is_simplicial()) {
        throw Error(ErrorCode::NotSimplicial, "type cone has " + std::to_string(tc.facets.size()) +
                                                  " facets, expected " + std::to_string(tc.n_rays - tc.dim));
    }
    if (c.size() != static_cast<Eigen::Index>(tc.facets.size())) {
        throw Error(ErrorCode::InvalidInput, "expected " + std::to_string(tc.facets.size()) + " parameters, got " +
                                                 std::to_string(c.size()));
    }
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        if (c(i) <= 0) throw Error(ErrorCode::NonPositiveParameter, "parameter " + std::to_string(i + 1) + " is not positive");
    }
    const RatMat k = to_rational(tc.k_matrix());
    const IntMat g = fan.ray_matrix();
    if (!(k * to_rational(g)).isZero()) throw Error(ErrorCode::InconsistentSystem, "K G is not zero");

    std::vector<int> keep;
    for (int r = 0; r < fan.n_rays(); ++r) {
        const IntVec& ray = fan.rays[static_cast<std::size_t>(r)];
        const bool negative_unit = ray.minCoeff() == -1 && ray.maxCoeff() == 0 && ray.cwiseAbs().sum() == 1;
        if (!negative_unit) keep.push_back(r);
    }
    std::optional<RatVec> h;
    if (static_cast<int>(keep.size()) == fan.n_rays() - fan.dim) {
        RatMat sub(k.rows(), static_cast<Eigen::Index>(keep.size()));
        for (std::size_t j = 0; j < keep.size(); ++j) sub.col(static_cast<Eigen::Index>(j)) = k.col(keep[j]);
        if (rank(sub) == sub.cols()) {
            const auto part = solve(sub, c);
            if (part) {
                h = RatVec::Zero(fan.n_rays());
                for (std::size_t j = 0; j < keep.size(); ++j) (*h)(keep[j]) = (*part)(static_cast<Eigen::Index>(j));
            }
        }
    }
    if (!h) h = solve(k, c);
    if (!h) throw Error(ErrorCode::InconsistentSystem, "K h = c has no solution");
    return QcPolytope{p_h(fan, *h), *h, g};
}

}  // namespace fanforge
