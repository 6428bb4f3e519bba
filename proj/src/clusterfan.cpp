#include "fanforge/clusterfan.hpp"

#include "fanforge/error.hpp"
#include "fanforge/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>

namespace fanforge {

namespace {

std::int64_t pos(std::int64_t x) { return x > 0 ? x : 0; }

}  // namespace

std::vector<std::vector<std::int64_t>> Seed::cluster_key() const {
    std::vector<std::vector<std::int64_t>> key;
    for (int k = 0; k < rank(); ++k) key.push_back(to_std(g.col(k)));
    std::sort(key.begin(), key.end());
    return key;
}

std::string cluster_id(const IntVec& g) {
    std::string s = "g(";
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(g(i));
    }
    return s + ")";
}

bool is_skew_symmetrizable(const IntMat& b) {
    const Eigen::Index n = b.rows();
    if (b.cols() != n) return false;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (b(i, i) != 0) return false;
        for (Eigen::Index j = 0; j < n; ++j) {
            if ((b(i, j) > 0) != (b(j, i) < 0) && (b(i, j) != 0 || b(j, i) != 0)) return false;
        }
    }
    // Propagate d_j = d_i * b_ij / -b_ji along the support graph and check consistency.
    std::vector<Rational> d(static_cast<std::size_t>(n), Rational(0));
    for (Eigen::Index root = 0; root < n; ++root) {
        if (d[static_cast<std::size_t>(root)] != 0) continue;
        d[static_cast<std::size_t>(root)] = 1;
        std::deque<Eigen::Index> queue{root};
        while (!queue.empty()) {
            const Eigen::Index i = queue.front();
            queue.pop_front();
            for (Eigen::Index j = 0; j < n; ++j) {
                if (b(i, j) == 0) continue;
                const Rational want = d[static_cast<std::size_t>(i)] * Rational(b(i, j)) / Rational(-b(j, i));
                if (d[static_cast<std::size_t>(j)] == 0) {
                    d[static_cast<std::size_t>(j)] = want;
                    queue.push_back(j);
                } else if (d[static_cast<std::size_t>(j)] != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

Seed initial_seed(const IntMat& b) {
    if (b.rows() == 0 || b.rows() != b.cols()) throw Error(ErrorCode::InvalidInput, "exchange matrix must be square and nonempty");
    if (!is_skew_symmetrizable(b)) throw Error(ErrorCode::InvalidInput, "exchange matrix is not skew-symmetrizable");
    const Eigen::Index n = b.rows();
    Seed s{b, IntMat::Identity(n, n), IntMat::Identity(n, n), {}};
    for (Eigen::Index k = 0; k < n; ++k) s.cluster_ids.push_back(cluster_id(s.g.col(k)));
    return s;
}

Seed mutate_seed(const Seed& s, int k) {
    const int n = s.rank();
    if (k < 0 || k >= n) throw Error(ErrorCode::InvalidInput, "mutation direction out of range");
    const IntVec ck = s.c.col(k);
    const bool positive = (ck.array() >= 0).all();
    if (!positive && !(ck.array() <= 0).all()) {
        throw Error(ErrorCode::InvalidInput, "c-vector " + std::to_string(k) + " is not sign-coherent");
    }
    const std::int64_t eps = positive ? 1 : -1;

    Seed out = s;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == k || j == k) {
                out.b(i, j) = -s.b(i, j);
            } else {
                out.b(i, j) = s.b(i, j) + pos(s.b(i, k)) * pos(s.b(k, j)) - pos(-s.b(i, k)) * pos(-s.b(k, j));
            }
        }
    }
    for (int j = 0; j < n; ++j) {
        out.c.col(j) = j == k ? IntVec(-ck) : IntVec(s.c.col(j) + pos(eps * s.b(k, j)) * ck);
    }
    IntVec gk = -s.g.col(k);
    for (int i = 0; i < n; ++i) gk += pos(-eps * s.b(i, k)) * s.g.col(i);
    out.g.col(k) = gk;
    out.cluster_ids[static_cast<std::size_t>(k)] = cluster_id(gk);
    return out;
}

Diagonal make_diagonal(int x, int y) { return x < y ? Diagonal{x, y} : Diagonal{y, x}; }

bool crosses(const Diagonal& d, const Diagonal& e) {
    return (d.a < e.a && e.a < d.b && d.b < e.b) || (e.a < d.a && d.a < e.b && e.b < d.b);
}

std::string to_string(const Diagonal& d) { return std::to_string(d.a) + "-" + std::to_string(d.b); }

std::vector<Diagonal> Triangulation::key() const {
    auto k = diagonals;
    std::sort(k.begin(), k.end());
    return k;
}

Triangulation make_triangulation(int polygon_size, std::vector<Diagonal> diagonals) {
    const int m = polygon_size;
    if (m < 4) throw Error(ErrorCode::InvalidInput, "polygon needs at least 4 vertices");
    if (static_cast<int>(diagonals.size()) != m - 3) {
        throw Error(ErrorCode::InvalidInput, "a triangulation of an " + std::to_string(m) + "-gon has " +
                                                 std::to_string(m - 3) + " diagonals");
    }
    for (auto& d : diagonals) {
        d = make_diagonal(d.a, d.b);
        if (d.a < 1 || d.b > m) throw Error(ErrorCode::InvalidInput, "diagonal endpoint outside polygon");
        const int gap = d.b - d.a;
        if (gap < 2 || gap > m - 2) throw Error(ErrorCode::InvalidInput, "diagonal " + to_string(d) + " is a boundary edge");
    }
    for (std::size_t i = 0; i < diagonals.size(); ++i) {
        for (std::size_t j = i + 1; j < diagonals.size(); ++j) {
            if (diagonals[i] == diagonals[j]) throw Error(ErrorCode::InvalidInput, "repeated diagonal");
            if (crosses(diagonals[i], diagonals[j])) {
                throw Error(ErrorCode::InvalidInput,
                            "diagonals " + to_string(diagonals[i]) + " and " + to_string(diagonals[j]) + " cross");
            }
        }
    }
    return Triangulation{m, std::move(diagonals)};
}

Triangulation fan_triangulation(int polygon_size) {
    std::vector<Diagonal> ds;
    for (int v = 3; v < polygon_size; ++v) ds.push_back({1, v});
    return make_triangulation(polygon_size, ds);
}

Triangulation snake_triangulation(int polygon_size) {
    std::vector<Diagonal> ds;
    int left = 1;
    int right = 3;
    bool move_left = true;
    while (static_cast<int>(ds.size()) < polygon_size - 3) {
        ds.push_back(make_diagonal(left, right));
        if (move_left) {
            left = left == 1 ? polygon_size : left - 1;
        } else {
            ++right;
        }
        move_left = !move_left;
    }
    return make_triangulation(polygon_size, ds);
}

namespace {

std::set<Diagonal> edge_set(const Triangulation& t) {
    std::set<Diagonal> e(t.diagonals.begin(), t.diagonals.end());
    for (int v = 1; v <= t.polygon_size; ++v) e.insert(make_diagonal(v, v % t.polygon_size + 1));
    return e;
}

}  // namespace

std::vector<std::array<int, 3>> triangles(const Triangulation& t) {
    const auto e = edge_set(t);
    std::vector<std::array<int, 3>> out;
    const int m = t.polygon_size;
    for (int p = 1; p <= m; ++p)
        for (int q = p + 1; q <= m; ++q)
            for (int r = q + 1; r <= m; ++r)
                if (e.contains({p, q}) && e.contains({q, r}) && e.contains({p, r})) out.push_back({p, q, r});
    return out;
}

Triangulation flip(const Triangulation& t, int k) {
    if (k < 0 || k >= static_cast<int>(t.diagonals.size())) throw Error(ErrorCode::InvalidInput, "flip index out of range");
    const Diagonal d = t.diagonals[static_cast<std::size_t>(k)];
    const auto e = edge_set(t);
    int inside = 0;
    int outside = 0;
    for (int x = 1; x <= t.polygon_size; ++x) {
        if (x == d.a || x == d.b) continue;
        if (!e.contains(make_diagonal(x, d.a)) || !e.contains(make_diagonal(x, d.b))) continue;
        (x > d.a && x < d.b ? inside : outside) = x;
    }
    Triangulation out = t;
    out.diagonals[static_cast<std::size_t>(k)] = make_diagonal(inside, outside);
    return out;
}

Seed seed_from_triangulation(const Triangulation& t) {
    const int n = t.rank();
    IntMat b = IntMat::Zero(n, n);
    std::map<Diagonal, int> index;
    for (int k = 0; k < n; ++k) index[t.diagonals[static_cast<std::size_t>(k)]] = k;
    for (const auto& tri : triangles(t)) {
        // sides in counterclockwise order
        const std::array<Diagonal, 3> sides{make_diagonal(tri[0], tri[1]), make_diagonal(tri[1], tri[2]),
                                            make_diagonal(tri[2], tri[0])};
        for (int s = 0; s < 3; ++s) {
            const auto i = index.find(sides[static_cast<std::size_t>(s)]);
            const auto j = index.find(sides[static_cast<std::size_t>((s + 1) % 3)]);
            if (i == index.end() || j == index.end()) continue;
            b(i->second, j->second) += 1;
            b(j->second, i->second) -= 1;
        }
    }
    return initial_seed(b);
}

std::vector<std::vector<int>> ExchangeGraph::adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_nodes));
    for (const auto& e : edges) {
        adj[static_cast<std::size_t>(e.a)].push_back(e.b);
        adj[static_cast<std::size_t>(e.b)].push_back(e.a);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
}

bool ExchangeGraph::is_regular(int degree) const {
    for (const auto& a : adjacency()) {
        if (static_cast<int>(a.size()) != degree) return false;
    }
    return true;
}

bool ExchangeGraph::is_connected() const {
    if (n_nodes == 0) return true;
    const auto adj = adjacency();
    std::vector<bool> seen(static_cast<std::size_t>(n_nodes), false);
    std::deque<int> queue{0};
    seen[0] = true;
    int count = 1;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                ++count;
                queue.push_back(w);
            }
        }
    }
    return count == n_nodes;
}

std::size_t default_budget() {
    if (const char* env = std::getenv("FANFORGE_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        throw Error(ErrorCode::InvalidInput, "FANFORGE_BUDGET must be a positive integer");
    }
    return 100000;
}

namespace {

using Key = std::vector<std::vector<std::int64_t>>;

/// 0 for e_i, 2 for -e_i, 1 otherwise; the index of the basis vector or -1.
std::pair<int, int> ray_group(const std::vector<std::int64_t>& v) {
    int nonzero = -1;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if (nonzero >= 0) return {1, -1};
        nonzero = static_cast<int>(i);
    }
    if (nonzero < 0) return {1, -1};
    const auto x = v[static_cast<std::size_t>(nonzero)];
    if (x == 1) return {0, nonzero};
    if (x == -1) return {2, nonzero};
    return {1, -1};
}

bool ray_order(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    const auto ga = ray_group(a);
    const auto gb = ray_group(b);
    if (ga.first != gb.first) return ga.first < gb.first;
    if (ga.first != 1) return ga.second < gb.second;
    return a > b;
}

}  // namespace

FanEnumeration enumerate_fan(const Seed& s0, const EnumerationOptions& options) {
    const int n = s0.rank();
    std::vector<Seed> seeds{s0};
    std::map<Key, int> index{{s0.cluster_key(), 0}};
    std::set<std::pair<int, int>> raw_edges;

    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        std::vector<Seed> mutated(frontier.size() * static_cast<std::size_t>(n));
        parallel_for(mutated.size(), options.threads, [&](std::size_t i) {
            mutated[i] = mutate_seed(seeds[static_cast<std::size_t>(frontier[i / static_cast<std::size_t>(n)])],
                                     static_cast<int>(i % static_cast<std::size_t>(n)));
        });
        std::vector<int> next;
        for (std::size_t i = 0; i < mutated.size(); ++i) {
            const int from = frontier[i / static_cast<std::size_t>(n)];
            auto key = mutated[i].cluster_key();
            auto [it, inserted] = index.try_emplace(std::move(key), static_cast<int>(seeds.size()));
            if (inserted) {
                if (seeds.size() >= options.budget) {
                    throw Error(ErrorCode::BudgetExceeded, "more than " + std::to_string(options.budget) +
                                                               " clusters; the seed is probably not of finite type");
                }
                seeds.push_back(std::move(mutated[i]));
                next.push_back(it->second);
            }
            raw_edges.insert(std::minmax(from, it->second));
        }
        frontier = std::move(next);
    }

    // Canonical ray order and cone order.
    std::set<std::vector<std::int64_t>> distinct;
    for (const auto& s : seeds)
        for (int k = 0; k < n; ++k) distinct.insert(to_std(s.g.col(k)));
    std::vector<std::vector<std::int64_t>> ray_list(distinct.begin(), distinct.end());
    std::sort(ray_list.begin(), ray_list.end(), ray_order);
    std::map<std::vector<std::int64_t>, int> ray_index;
    for (std::size_t i = 0; i < ray_list.size(); ++i) ray_index[ray_list[i]] = static_cast<int>(i);

    std::vector<Cone> cones;
    for (const auto& s : seeds) {
        Cone c;
        for (int k = 0; k < n; ++k) c.push_back(ray_index.at(to_std(s.g.col(k))));
        std::sort(c.begin(), c.end());
        cones.push_back(std::move(c));
    }
    std::vector<int> order(seeds.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return cones[static_cast<std::size_t>(x)] < cones[static_cast<std::size_t>(y)];
    });
    std::vector<int> position(seeds.size());
    for (std::size_t i = 0; i < order.size(); ++i) position[static_cast<std::size_t>(order[i])] = static_cast<int>(i);

    std::vector<IntVec> rays;
    for (const auto& r : ray_list) rays.push_back(from_std(r));
    FanEnumeration out;
    out.fan = make_fan(n, std::move(rays), cones);
    for (int i : order) out.seeds.push_back(seeds[static_cast<std::size_t>(i)]);

    out.graph.n_nodes = static_cast<int>(seeds.size());
    for (const auto& [x, y] : raw_edges) {
        if (x == y) continue;
        const int a = std::min(position[static_cast<std::size_t>(x)], position[static_cast<std::size_t>(y)]);
        const int b = std::max(position[static_cast<std::size_t>(x)], position[static_cast<std::size_t>(y)]);
        const Cone& ca = out.fan.cones[static_cast<std::size_t>(a)];
        const Cone& cb = out.fan.cones[static_cast<std::size_t>(b)];
        Cone only_a, only_b;
        std::set_difference(ca.begin(), ca.end(), cb.begin(), cb.end(), std::back_inserter(only_a));
        std::set_difference(cb.begin(), cb.end(), ca.begin(), ca.end(), std::back_inserter(only_b));
        if (only_a.size() != 1 || only_b.size() != 1) {
            throw Error(ErrorCode::InvalidInput, "a mutation changed more than one cluster variable");
        }
        out.graph.edges.push_back({a, b, only_a[0], only_b[0]});
    }
    std::sort(out.graph.edges.begin(), out.graph.edges.end(),
              [](const ExchangeEdge& e, const ExchangeEdge& f) { return std::tie(e.a, e.b) < std::tie(f.a, f.b); });
    return out;
}

FlipGraph flip_graph(int polygon_size) {
    std::map<std::vector<Diagonal>, Triangulation> found;
    std::vector<Triangulation> stack{fan_triangulation(polygon_size)};
    while (!stack.empty()) {
        Triangulation t = std::move(stack.back());
        stack.pop_back();
        auto key = t.key();
        if (found.contains(key)) continue;
        for (int k = 0; k < t.rank(); ++k) stack.push_back(flip(t, k));
        found.emplace(std::move(key), Triangulation{t.polygon_size, t.key()});
    }
    FlipGraph g;
    std::map<std::vector<Diagonal>, int> index;
    for (auto& [key, t] : found) {
        index[key] = static_cast<int>(g.nodes.size());
        g.nodes.push_back(t);
    }
    std::set<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        for (int k = 0; k < g.nodes[i].rank(); ++k) {
            const int j = index.at(flip(g.nodes[i], k).key());
            edges.insert(std::minmax(static_cast<int>(i), j));
        }
    }
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

TriangulationMatch match_triangulations(const Triangulation& t0, const FanEnumeration& e) {
    TriangulationMatch out;
    const Fan& fan = e.fan;
    auto problem = [&](std::string msg) {
        out.consistent = false;
        if (out.problems.size() < 20) out.problems.push_back(std::move(msg));
    };
    const int n = t0.rank();
    if (fan.dim != n) {
        problem("fan dimension differs from triangulation rank");
        return out;
    }
    std::map<Cone, int> cone_index;
    for (int i = 0; i < fan.n_cones(); ++i) cone_index[fan.cones[static_cast<std::size_t>(i)]] = i;
    out.cone_triangulation.assign(static_cast<std::size_t>(fan.n_cones()), Triangulation{});
    std::vector<bool> seen(static_cast<std::size_t>(fan.n_cones()), false);
    std::map<int, Diagonal> diagonal_of_ray;

    std::deque<std::pair<Seed, Triangulation>> queue;
    queue.emplace_back(seed_from_triangulation(t0), t0);
    std::set<std::vector<Diagonal>> visited{t0.key()};
    while (!queue.empty()) {
        auto [seed, tri] = std::move(queue.front());
        queue.pop_front();
        Cone c;
        for (int k = 0; k < n; ++k) {
            const int r = fan.find_ray(seed.g.col(k));
            if (r < 0) {
                problem("g-vector outside the fan");
                return out;
            }
            c.push_back(r);
            const Diagonal d = tri.diagonals[static_cast<std::size_t>(k)];
            auto [it, fresh] = out.ray_of_diagonal.try_emplace(d, r);
            if (!fresh && it->second != r) problem("diagonal " + to_string(d) + " meets two rays");
            auto [jt, fresh_ray] = diagonal_of_ray.try_emplace(r, d);
            if (!fresh_ray && !(jt->second == d)) problem("ray " + std::to_string(r) + " meets two diagonals");
        }
        std::sort(c.begin(), c.end());
        const auto ci = cone_index.find(c);
        if (ci == cone_index.end()) {
            problem("cluster is not a cone of the fan");
            return out;
        }
        const auto slot = static_cast<std::size_t>(ci->second);
        if (seen[slot] && out.cone_triangulation[slot].key() != tri.key()) {
            problem("cone reached with two different triangulations");
        }
        seen[slot] = true;
        out.cone_triangulation[slot] = tri;
        for (int k = 0; k < n; ++k) {
            Triangulation next = flip(tri, k);
            if (visited.insert(next.key()).second) queue.emplace_back(mutate_seed(seed, k), std::move(next));
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) problem("some cones have no triangulation");
    return out;
}

bool isomorphic_to_flip_graph(const Triangulation& t0, const FanEnumeration& e) {
    const auto match = match_triangulations(t0, e);
    if (!match.consistent) return false;
    const FlipGraph fg = flip_graph(t0.polygon_size);
    if (static_cast<int>(fg.nodes.size()) != e.graph.n_nodes) return false;
    std::map<std::vector<Diagonal>, int> node_of;
    for (std::size_t i = 0; i < fg.nodes.size(); ++i) node_of[fg.nodes[i].key()] = static_cast<int>(i);
    std::vector<int> image;
    std::set<int> used;
    for (const auto& t : match.cone_triangulation) {
        const auto it = node_of.find(t.key());
        if (it == node_of.end()) return false;
        image.push_back(it->second);
        used.insert(it->second);
    }
    if (used.size() != fg.nodes.size()) return false;
    // initial cluster (positive orthant, cone 0) goes to t0
    if (image[0] != node_of.at(t0.key())) return false;
    std::set<std::pair<int, int>> mapped;
    for (const auto& edge : e.graph.edges) {
        mapped.insert(std::minmax(image[static_cast<std::size_t>(edge.a)], image[static_cast<std::size_t>(edge.b)]));
    }
    return mapped == std::set<std::pair<int, int>>(fg.edges.begin(), fg.edges.end());
}

}  // namespace fanforge
