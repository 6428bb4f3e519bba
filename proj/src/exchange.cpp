#include "fanforge/exchange.hpp"

#include "fanforge/error.hpp"
#include "fanforge/parallel.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fanforge {

namespace {

int wrap(int v, int m) { return ((v - 1) % m + m) % m + 1; }

bool is_boundary(int a, int b, int m) {
    const int d = std::abs(a - b);
    return d == 1 || d == m - 1 || d == 0;
}

}  // namespace

Diagonal rotate_forward(const Diagonal& d, int polygon_size) {
    return make_diagonal(wrap(d.a + 1, polygon_size), wrap(d.b + 1, polygon_size));
}

Diagonal rotate_backward(const Diagonal& d, int polygon_size) {
    return make_diagonal(wrap(d.a - 1, polygon_size), wrap(d.b - 1, polygon_size));
}

std::vector<Diagonal> all_diagonals(int polygon_size) {
    std::vector<Diagonal> out;
    for (int a = 1; a <= polygon_size; ++a)
        for (int b = a + 2; b <= polygon_size; ++b)
            if (!is_boundary(a, b, polygon_size)) out.push_back({a, b});
    return out;
}

int RelativeMeshes::excluded_count() const {
    return static_cast<int>(std::count_if(all.begin(), all.end(), [](const RelativeMesh& m) { return m.excluded; }));
}

RelativeMeshes relative_ar_meshes(const Triangulation& t, const FanEnumeration& e) {
    const int m = t.polygon_size;
    const auto match = match_triangulations(t, e);
    if (!match.consistent) {
        throw Error(ErrorCode::InvalidInput, "diagonal dictionary is inconsistent: " +
                                                 (match.problems.empty() ? std::string("?") : match.problems.front()));
    }
    std::set<Diagonal> rotated_initial;
    for (const auto& d : t.diagonals) rotated_initial.insert(rotate_forward(d, m));  // tau T_i

    auto ray = [&](const Diagonal& d) {
        auto it = match.ray_of_diagonal.find(d);
        if (it == match.ray_of_diagonal.end()) throw Error(ErrorCode::InvalidInput, "no ray for diagonal " + to_string(d));
        return it->second;
    };

    RelativeMeshes out;
    std::set<std::vector<std::int64_t>, std::greater<>> normals;
    for (const auto& l : all_diagonals(m)) {
        RelativeMesh mesh;
        mesh.start = l;
        mesh.end = rotate_backward(l, m);
        for (auto [x, y] : {std::pair{l.a - 1, l.b}, std::pair{l.a, l.b - 1}}) {
            x = wrap(x, m);
            y = wrap(y, m);
            if (!is_boundary(x, y, m)) mesh.middles.push_back(make_diagonal(x, y));
        }
        std::sort(mesh.middles.begin(), mesh.middles.end());
        mesh.excluded = rotated_initial.contains(l);
        if (!mesh.excluded) {
            mesh.normal = IntVec::Zero(e.fan.n_rays());
            mesh.normal(ray(mesh.start)) += 1;
            mesh.normal(ray(mesh.end)) += 1;
            for (const auto& mid : mesh.middles) mesh.normal(ray(mid)) -= 1;
            normals.insert(to_std(mesh.normal));
        }
        out.all.push_back(std::move(mesh));
    }
    for (const auto& v : normals) out.normals.push_back(from_std(v));
    return out;
}

MutationReport verify_mutation_theorem(const Fan& fan, const ExchangeGraph& graph, int threads) {
    MutationReport report;
    std::map<Cone, int> face_count;
    for (const auto& cone : fan.cones) {
        for (std::size_t skip = 0; skip < cone.size(); ++skip) {
            Cone face;
            for (std::size_t i = 0; i < cone.size(); ++i)
                if (i != skip) face.push_back(cone[i]);
            ++face_count[face];
        }
    }
    for (const auto& [face, count] : face_count) {
        if (count != 2) {
            report.walls_in_two = false;
            report.problems.push_back("face of " + std::to_string(face.size()) + " rays lies in " +
                                      std::to_string(count) + " cones");
        }
    }
    report.regular = graph.is_regular(fan.dim);
    if (!report.regular) report.problems.push_back("exchange graph is not " + std::to_string(fan.dim) + "-regular");
    report.connected = graph.is_connected();
    if (!report.connected) report.problems.push_back("exchange graph is not connected");

    const auto ws = walls(fan);
    report.wall_count = static_cast<int>(ws.size());
    std::vector<std::optional<LinearDependency>> deps(ws.size());
    std::vector<std::string> failure(ws.size());
    parallel_for(ws.size(), threads, [&](std::size_t i) {
        try {
            deps[i] = wall_dependency(fan, ws[i]);
        } catch (const Error& err) {
            failure[i] = err.what();
        }
    });
    for (std::size_t i = 0; i < ws.size(); ++i) {
        if (!deps[i]) {
            report.dependencies_exact = false;
            report.problems.push_back(failure[i]);
            continue;
        }
        const auto& d = *deps[i];
        RatVec lhs = d.alpha * to_rational(fan.rays[static_cast<std::size_t>(d.wall.r)]) +
                     d.alpha_prime * to_rational(fan.rays[static_cast<std::size_t>(d.wall.r_prime)]);
        for (std::size_t k = 0; k < d.middle.size(); ++k) {
            lhs -= d.middle[k] * to_rational(fan.rays[static_cast<std::size_t>(d.wall.shared[k])]);
        }
        if (!lhs.isZero()) {
            report.dependencies_exact = false;
            report.problems.push_back("dependency across wall " + std::to_string(i) + " does not vanish");
        }
        if (d.alpha == 1 && d.alpha_prime == 1) ++report.unit_walls;
    }
    if (static_cast<int>(ws.size()) != static_cast<int>(graph.edges.size())) {
        report.walls_in_two = false;
        report.problems.push_back("wall count differs from exchange graph edge count");
    }
    return report;
}

}  // namespace fanforge
