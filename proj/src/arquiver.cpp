#include "fanforge/arquiver.hpp"

#include "fanforge/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace fanforge {

namespace {

std::set<std::pair<int, int>> tree_edges(char type, int n) {
    std::set<std::pair<int, int>> edges;
    const int path_end = type == 'A' ? n : n - 1;
    for (int i = 1; i < path_end; ++i) edges.insert({i, i + 1});
    if (type == 'D') edges.insert({n - 2, n});
    if (type == 'E') edges.insert({3, n});
    return edges;
}

bool positive(const IntVec& v) { return (v.array() >= 0).all() && (v.array() > 0).any(); }

/// Tree vertices with every target of j before j; ties broken by label.
std::vector<int> sinks_first(const DynkinQuiver& q) {
    const int n = q.rank;
    std::vector<int> pending(static_cast<std::size_t>(n + 1), 0);
    std::vector<std::vector<int>> sources_of(static_cast<std::size_t>(n + 1));
    for (auto [s, t] : q.arrows) {
        ++pending[static_cast<std::size_t>(s)];
        sources_of[static_cast<std::size_t>(t)].push_back(s);
    }
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int j = 1; j <= n; ++j)
        if (pending[static_cast<std::size_t>(j)] == 0) ready.push(j);
    std::vector<int> order;
    while (!ready.empty()) {
        const int j = ready.top();
        ready.pop();
        order.push_back(j);
        for (int s : sources_of[static_cast<std::size_t>(j)])
            if (--pending[static_cast<std::size_t>(s)] == 0) ready.push(s);
    }
    return order;
}

/// reach[i][j] = 1 when there is a path i -> j (including i = j).
std::vector<std::vector<int>> reachability(const DynkinQuiver& q) {
    const auto n = static_cast<std::size_t>(q.rank);
    std::vector<std::vector<int>> reach(n + 1, std::vector<int>(n + 1, 0));
    for (std::size_t i = 1; i <= n; ++i) {
        std::vector<int> stack{static_cast<int>(i)};
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            if (reach[i][static_cast<std::size_t>(v)]) continue;
            reach[i][static_cast<std::size_t>(v)] = 1;
            for (auto [s, t] : q.arrows)
                if (s == v) stack.push_back(t);
        }
    }
    return reach;
}

}  // namespace

DynkinQuiver make_quiver(char type, int rank, std::vector<std::pair<int, int>> arrows) {
    if (type != 'A' && type != 'D' && type != 'E') {
        throw Error(ErrorCode::InvalidInput, std::string("unknown Dynkin type '") + type + "'");
    }
    const bool rank_ok = (type == 'A' && rank >= 1) || (type == 'D' && rank >= 4) ||
                         (type == 'E' && rank >= 6 && rank <= 8);
    if (!rank_ok) throw Error(ErrorCode::InvalidInput, std::string("no Dynkin diagram ") + type + std::to_string(rank));
    std::set<std::pair<int, int>> seen;
    for (auto [s, t] : arrows) {
        if (s < 1 || t < 1 || s > rank || t > rank || s == t) {
            throw Error(ErrorCode::InvalidInput, "bad arrow " + std::to_string(s) + "->" + std::to_string(t));
        }
        if (!seen.insert(std::minmax(s, t)).second) {
            throw Error(ErrorCode::InvalidInput, "repeated edge " + std::to_string(s) + "-" + std::to_string(t));
        }
    }
    if (seen != tree_edges(type, rank)) {
        throw Error(ErrorCode::InvalidInput, std::string("arrows do not form the tree of ") + type + std::to_string(rank));
    }
    std::sort(arrows.begin(), arrows.end());
    return DynkinQuiver{type, rank, std::move(arrows)};
}

DynkinQuiver linear_quiver(char type, int rank) {
    std::vector<std::pair<int, int>> arrows;
    if (rank >= 1 && rank <= 64) {
        for (auto [a, b] : tree_edges(type, rank)) arrows.push_back({b, a});
    }
    return make_quiver(type, rank, arrows);
}

IntMat exchange_matrix(const DynkinQuiver& q) {
    IntMat b = IntMat::Zero(q.rank, q.rank);
    for (auto [s, t] : q.arrows) {
        b(t - 1, s - 1) += 1;
        b(s - 1, t - 1) -= 1;
    }
    return b;
}

bool is_linear_a(const DynkinQuiver& q) {
    if (q.type != 'A') return false;
    for (auto [s, t] : q.arrows)
        if (s != t + 1) return false;
    return true;
}

int ARQuiver::find(int slice, int vertex) const {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i].slice == slice && vertices[i].vertex == vertex) return static_cast<int>(i);
    }
    return -1;
}

ARQuiver knit_ar_quiver(const DynkinQuiver& q, const KnitOptions& options) {
    if (q.type == 'E' && !options.enable_type_e) {
        throw Error(ErrorCode::UnsupportedType, "type E knitting is disabled");
    }
    const int n = q.rank;
    const auto order = sinks_first(q);
    const auto reach = reachability(q);
    std::vector<std::vector<int>> targets(static_cast<std::size_t>(n + 1)), sources(static_cast<std::size_t>(n + 1));
    for (auto [s, t] : q.arrows) {
        targets[static_cast<std::size_t>(s)].push_back(t);
        sources[static_cast<std::size_t>(t)].push_back(s);
    }

    ARQuiver ar;
    ar.quiver = q;
    std::map<std::pair<int, int>, std::pair<IntVec, IntVec>> classes;  // (slice, vertex) -> (dim, g)
    std::map<std::pair<int, int>, int> index;
    std::vector<IntVec> injective(static_cast<std::size_t>(n + 1));
    for (int j = 1; j <= n; ++j) {
        IntVec dim(n);
        for (int i = 1; i <= n; ++i) dim(i - 1) = reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        injective[static_cast<std::size_t>(j)] = dim;
    }
    for (int j : order) {
        const IntVec g = IntVec::Unit(n, j - 1);
        classes[{-1, j}] = {IntVec(-injective[static_cast<std::size_t>(j)]), g};
    }
    for (int j : order) {
        index[{-1, j}] = static_cast<int>(ar.vertices.size());
        ar.vertices.push_back({-1, j, classes[{-1, j}].first, classes[{-1, j}].second, VertexKind::ShiftedInjective});
    }

    std::vector<bool> alive(static_cast<std::size_t>(n + 1), true);
    for (int m = -1; std::any_of(alive.begin() + 1, alive.end(), [](bool b) { return b; }); ++m) {
        if (m > 4 * n + 8) throw Error(ErrorCode::SingularSystem, "knitting does not terminate");
        for (int j : order) {
            auto [dim, g] = classes.at({m, j});
            dim = -dim;
            g = -g;
            for (int b : sources[static_cast<std::size_t>(j)]) {
                dim += classes.at({m, b}).first;
                g += classes.at({m, b}).second;
            }
            for (int a : targets[static_cast<std::size_t>(j)]) {
                dim += classes.at({m + 1, a}).first;
                g += classes.at({m + 1, a}).second;
            }
            classes[{m + 1, j}] = {dim, g};
            const auto slot = static_cast<std::size_t>(j);
            alive[slot] = alive[slot] && positive(dim);
            if (alive[slot]) {
                index[{m + 1, j}] = static_cast<int>(ar.vertices.size());
                ar.vertices.push_back({m + 1, j, dim, g, VertexKind::Module});
            }
        }
    }

    auto at = [&](int m, int j) {
        auto it = index.find({m, j});
        return it == index.end() ? -1 : it->second;
    };
    for (const auto& v : ar.vertices) {
        for (int a : targets[static_cast<std::size_t>(v.vertex)]) {
            // arrow v.vertex -> a in Q gives (m, a) -> (m, j) and (m, j) -> (m + 1, a)
            const int self = at(v.slice, v.vertex);
            if (int s = at(v.slice, a); s >= 0) ar.arrows.push_back({s, self});
            if (int t = at(v.slice + 1, a); t >= 0) ar.arrows.push_back({self, t});
        }
    }
    std::sort(ar.arrows.begin(), ar.arrows.end());

    for (std::size_t i = 0; i < ar.vertices.size(); ++i) {
        const auto& v = ar.vertices[i];
        const int end = at(v.slice + 1, v.vertex);
        if (end < 0) continue;
        MeshRelation mesh{static_cast<int>(i), {}, end, static_cast<int>(ar.meshes.size())};
        for (int b : sources[static_cast<std::size_t>(v.vertex)]) mesh.middles.push_back(at(v.slice, b));
        for (int a : targets[static_cast<std::size_t>(v.vertex)]) mesh.middles.push_back(at(v.slice + 1, a));
        std::erase(mesh.middles, -1);
        std::sort(mesh.middles.begin(), mesh.middles.end());
        ar.meshes.push_back(std::move(mesh));
    }

    for (int j = 1; j <= n; ++j) {
        int found = -1;
        for (std::size_t i = 0; i < ar.vertices.size(); ++i) {
            const auto& v = ar.vertices[i];
            if (v.kind == VertexKind::Module && v.dim == injective[static_cast<std::size_t>(j)]) found = static_cast<int>(i);
        }
        if (found < 0) throw Error(ErrorCode::SingularSystem, "injective I_" + std::to_string(j) + " not found");
        ar.projection_vertices.push_back(found);
    }
    return ar;
}

std::vector<MeshRelation> mesh_equations(const ARQuiver& ar) { return ar.meshes; }

std::vector<AffineFunctional> abhy_functionals(const ARQuiver& ar) {
    const auto nv = ar.vertices.size();
    const auto nm = static_cast<Eigen::Index>(ar.meshes.size());
    std::vector<std::optional<AffineFunctional>> f(nv);
    for (std::size_t j = 0; j < ar.projection_vertices.size(); ++j) {
        f[static_cast<std::size_t>(ar.projection_vertices[j])] =
            AffineFunctional{RatVec::Zero(nm), RatVec(RatVec::Unit(ar.n(), static_cast<Eigen::Index>(j)))};
    }
    std::vector<int> mesh_of(nv, -1);
    for (const auto& mesh : ar.meshes) mesh_of[static_cast<std::size_t>(mesh.start)] = mesh.coeff_id;
    for (std::size_t i = nv; i-- > 0;) {
        if (f[i]) continue;
        if (mesh_of[i] < 0) {
            throw Error(ErrorCode::SingularSystem, "vertex " + std::to_string(i) + " is neither injective nor a mesh start");
        }
        const auto& mesh = ar.meshes[static_cast<std::size_t>(mesh_of[i])];
        // q_start = sum q_middles + c - q_end
        auto term = [&](int v) -> const AffineFunctional& {
            if (!f[static_cast<std::size_t>(v)]) throw Error(ErrorCode::SingularSystem, "mesh term not yet isolated");
            return *f[static_cast<std::size_t>(v)];
        };
        AffineFunctional g{RatVec(-term(mesh.end).constant), RatVec(-term(mesh.end).linear)};
        for (int r : mesh.middles) {
            g.constant += term(r).constant;
            g.linear += term(r).linear;
        }
        g.constant(mesh.coeff_id) += 1;
        f[i] = std::move(g);
    }
    std::vector<AffineFunctional> out;
    for (auto& x : f) out.push_back(std::move(*x));
    return out;
}

HPolytope abhy_polytope(const ARQuiver& ar, const RatVec& c) {
    if (c.size() != static_cast<Eigen::Index>(ar.meshes.size())) {
        throw Error(ErrorCode::InvalidInput, "expected " + std::to_string(ar.meshes.size()) + " parameters, got " +
                                                 std::to_string(c.size()));
    }
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        if (c(i) <= 0) throw Error(ErrorCode::NonPositiveParameter, "parameter " + std::to_string(i + 1) + " is not positive");
    }
    const auto fs = abhy_functionals(ar);
    HPolytope p{RatMat(static_cast<Eigen::Index>(fs.size()), ar.n()), RatVec(static_cast<Eigen::Index>(fs.size()))};
    for (std::size_t i = 0; i < fs.size(); ++i) {
        p.a.row(static_cast<Eigen::Index>(i)) = -fs[i].linear.transpose();
        p.b(static_cast<Eigen::Index>(i)) = fs[i].constant.dot(c);
    }
    return p;
}

std::optional<std::pair<int, int>> diagonal_label(const ARQuiver& ar, int v) {
    if (!is_linear_a(ar.quiver)) return std::nullopt;
    const auto& x = ar.vertices[static_cast<std::size_t>(v)];
    return std::pair{x.slice + 2, x.slice + x.vertex + 3};
}

std::string coordinate_name(const ARQuiver& ar, int v) {
    if (auto d = diagonal_label(ar, v)) return "q_{" + std::to_string(d->first) + " " + std::to_string(d->second) + "}";
    const auto& x = ar.vertices[static_cast<std::size_t>(v)];
    return "q_{" + std::to_string(x.slice) + "," + std::to_string(x.vertex) + "}";
}

std::string parameter_name(const ARQuiver& ar, const MeshRelation& mesh) {
    return "c" + coordinate_name(ar, mesh.end).substr(1);
}

std::string format_mesh(const ARQuiver& ar, const MeshRelation& mesh) {
    std::string out = coordinate_name(ar, mesh.start) + " + " + coordinate_name(ar, mesh.end) + " =";
    for (std::size_t i = 0; i < mesh.middles.size(); ++i) {
        out += (i == 0 ? " " : " + ") + coordinate_name(ar, mesh.middles[i]);
    }
    out += (mesh.middles.empty() ? " " : " + ") + parameter_name(ar, mesh);
    return out;
}

std::string format_functional(const ARQuiver& ar, int v, const AffineFunctional& f) {
    std::vector<std::pair<Rational, std::string>> terms;
    for (Eigen::Index i = 0; i < f.constant.size(); ++i) {
        if (f.constant(i) != 0) terms.push_back({f.constant(i), parameter_name(ar, ar.meshes[static_cast<std::size_t>(i)])});
    }
    for (Eigen::Index j = 0; j < f.linear.size(); ++j) {
        if (f.linear(j) != 0) terms.push_back({f.linear(j), coordinate_name(ar, ar.projection_vertices[static_cast<std::size_t>(j)])});
    }
    std::ostringstream out;
    out << coordinate_name(ar, v) << " =";
    if (terms.empty()) out << " 0";
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& [coef, name] = terms[i];
        const bool negative = coef < 0;
        if (i == 0) {
            out << (negative ? " -" : " ");
        } else {
            out << (negative ? " - " : " + ");
        }
        const Rational mag = negative ? Rational(-coef) : coef;
        if (mag != 1) out << to_string(mag) << " ";
        out << name;
    }
    return out.str();
}

}  // namespace fanforge
