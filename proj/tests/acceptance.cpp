// End-to-end acceptance checks. One PASS/FAIL line per criterion; exit code 1
// if any fails. Optional argv[1]: path to the fanforge binary for CLI checks.

#include "fanforge/arquiver.hpp"
#include "fanforge/clusterfan.hpp"
#include "fanforge/error.hpp"
#include "fanforge/exchange.hpp"
#include "fanforge/io.hpp"
#include "fanforge/linalg.hpp"
#include "fanforge/polyhedra.hpp"
#include "fanforge/typecone.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace fanforge;

namespace {

std::string g_cli;

struct Outcome {
    bool ok = true;
    std::vector<std::string> notes;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (notes.size() < 5) notes.push_back(what);
        }
    }
};

using Key = std::vector<std::int64_t>;

std::set<Key> key_set(const std::vector<IntVec>& vs) {
    std::set<Key> s;
    for (const auto& v : vs) s.insert(to_std(v));
    return s;
}

IntVec iv(std::initializer_list<std::int64_t> xs) {
    IntVec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (auto x : xs) v(i++) = x;
    return v;
}

std::int64_t catalan(int k) {
    std::int64_t c = 1;
    for (int i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

/// Up to four distinct triangulations of the (n+3)-gon.
std::vector<Triangulation> sample_triangulations(int n) {
    const int m = n + 3;
    const auto fg = flip_graph(m);
    std::vector<Triangulation> out{fan_triangulation(m), snake_triangulation(m), fg.nodes[fg.nodes.size() / 2],
                                   fg.nodes.back()};
    std::vector<Triangulation> unique;
    std::set<std::vector<Diagonal>> seen;
    for (const auto& t : out)
        if (seen.insert(t.key()).second) unique.push_back(t);
    return unique;
}

/// All orientations of the A_n path.
std::vector<DynkinQuiver> all_orientations(int n) {
    std::vector<DynkinQuiver> out;
    for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
        std::vector<std::pair<int, int>> arrows;
        for (int i = 1; i < n; ++i) arrows.push_back((mask >> (i - 1)) & 1 ? std::pair{i, i + 1} : std::pair{i + 1, i});
        out.push_back(make_quiver('A', n, arrows));
    }
    return out;
}

/// Integers without the `/1` denominator.
std::string short_str(const Rational& q) {
    std::string s = to_string(q);
    if (s.ends_with("/1")) s.resize(s.size() - 2);
    return s;
}

std::string row_key(const HPolytope& p, Eigen::Index i) {
    std::string s;
    for (Eigen::Index j = 0; j < p.a.cols(); ++j) s += short_str(p.a(i, j)) + " ";
    return s + "<= " + short_str(p.b(i));
}

std::set<std::string> row_set(const HPolytope& p) {
    std::set<std::string> s;
    for (Eigen::Index i = 0; i < p.a.rows(); ++i) s.insert(row_key(p, i));
    return s;
}

bool realizes(const Fan& fan, const HPolytope& p) {
    try {
        return fan_eq(normal_fan(vertices(p)), fan);
    } catch (const Error&) {
        return false;
    }
}

struct CommandResult {
    int status = -1;
    std::string out;
};

CommandResult run(const std::string& cmd) {
    CommandResult r;
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int st = pclose(pipe);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

// 1. A2 worked example: mesh equations, functionals, polytope, vertices, type cone.
Outcome criterion_a2() {
    Outcome o;
    const ARQuiver ar = knit_ar_quiver(linear_quiver('A', 2));
    std::set<std::string> eqs;
    for (const auto& m : mesh_equations(ar)) eqs.insert(format_mesh(ar, m));
    o.expect(eqs == std::set<std::string>{"q_{1 3} + q_{2 4} = q_{1 4} + c_{2 4}", "q_{1 4} + q_{2 5} = q_{2 4} + c_{2 5}",
                                          "q_{2 4} + q_{3 5} = q_{2 5} + c_{3 5}"},
             "mesh equations");
    const auto fs = abhy_functionals(ar);
    std::set<std::string> fun;
    for (int v = 0; v < static_cast<int>(fs.size()); ++v)
        if (std::find(ar.projection_vertices.begin(), ar.projection_vertices.end(), v) == ar.projection_vertices.end())
            fun.insert(format_functional(ar, v, fs[static_cast<std::size_t>(v)]));
    o.expect(fun == std::set<std::string>{"q_{1 3} = c_{2 4} + c_{2 5} - q_{2 5}", "q_{1 4} = c_{2 5} + c_{3 5} - q_{3 5}",
                                          "q_{2 4} = c_{3 5} + q_{2 5} - q_{3 5}"},
             "functionals");
    // coordinates (q_{2 5}, q_{3 5}), c = ones
    const HPolytope p = abhy_polytope(ar, RatVec::Constant(3, Rational(1)));
    o.expect(row_set(p) == std::set<std::string>{"-1 0 <= 0", "0 -1 <= 0", "1 0 <= 2", "0 1 <= 2", "-1 1 <= 1"},
             "inequalities");
    std::vector<std::string> vs;
    for (const auto& v : vertices(p).vertices) vs.push_back(short_str(v(0)) + "," + short_str(v(1)));
    o.expect(vs == std::vector<std::string>{"0,0", "0,1", "1,2", "2,0", "2,2"}, "vertices");
    const Fan fan = enumerate_fan(initial_seed(exchange_matrix(linear_quiver('A', 2)))).fan;
    o.expect(fan.n_rays() == 5 && fan.n_cones() == 5, "A2 fan size");
    const auto tc = type_cone(fan);
    o.expect(key_set(tc.facets) == key_set({iv({1, -1, 1, 0, 0}), iv({0, 1, -1, 1, 0}), iv({0, 0, 1, -1, 1})}),
             "A2 type cone facets");
    o.expect(fan_eq(normal_fan(vertices(p)), fan), "A2 polytope realizes the fan");
    if (!g_cli.empty()) {
        const auto r = run(g_cli + " paper-a2");
        o.expect(r.status == 0 && r.out.find("OK") != std::string::npos, "CLI paper-a2");
    }
    return o;
}

// 2. Counting laws for A_n, n = 1..5.
Outcome criterion_counts() {
    Outcome o;
    for (int n = 1; n <= 5; ++n) {
        const int big_n = n * (n + 3) / 2;
        for (const auto& q : all_orientations(n)) {
            const auto ar = knit_ar_quiver(q);
            o.expect(static_cast<int>(ar.vertices.size()) == big_n, "AR vertex count n=" + std::to_string(n));
            o.expect(static_cast<int>(ar.meshes.size()) == big_n - n, "mesh count n=" + std::to_string(n));
        }
        std::vector<Seed> seeds;
        for (const auto& t : sample_triangulations(n <= 1 ? 1 : n)) {
            if (n == 1) break;
            seeds.push_back(seed_from_triangulation(t));
        }
        if (n == 1) seeds.push_back(seed_from_triangulation(fan_triangulation(4)));
        const auto orientations = all_orientations(n);
        seeds.push_back(initial_seed(exchange_matrix(orientations.front())));
        seeds.push_back(initial_seed(exchange_matrix(orientations.back())));
        for (const auto& s : seeds) {
            const auto e = enumerate_fan(s);
            const std::string tag = " n=" + std::to_string(n);
            o.expect(e.fan.n_rays() == big_n, "ray count" + tag);
            o.expect(e.fan.n_cones() == catalan(n + 1), "cone count" + tag);
            const auto tc = type_cone(e.fan);
            o.expect(static_cast<int>(tc.facets.size()) == big_n - n, "type cone facets" + tag);
            o.expect(check_fan(e.fan, {.pairwise = n <= 4}).ok(), "fan invariants" + tag);
        }
    }
    return o;
}

Fan perturbed_orthant() {
    std::vector<IntVec> rays{iv({1, 0, 0}), iv({-1, 0, 0}), iv({0, 1, 0}), iv({0, -1, 0}), iv({1, 0, 1}), iv({0, 0, -1})};
    std::vector<Cone> cones;
    for (int x : {0, 1})
        for (int y : {2, 3})
            for (int z : {4, 5}) cones.push_back({x, y, z});
    return make_fan(3, rays, cones);
}

// 3. Unique exchange relation property.
Outcome criterion_uerp() {
    Outcome o;
    for (int n = 1; n <= 5; ++n) {
        const auto ts = n == 1 ? std::vector<Triangulation>{fan_triangulation(4)} : sample_triangulations(n);
        o.expect(n == 1 || ts.size() >= 3, "three triangulations n=" + std::to_string(n));
        for (const auto& t : ts) {
            const Fan f = enumerate_fan(seed_from_triangulation(t)).fan;
            const auto r = unique_exchange_check(f);
            o.expect(r.holds && r.weak_holds, "UERP n=" + std::to_string(n));
        }
    }
    const auto bad = unique_exchange_check(perturbed_orthant());
    o.expect(!bad.holds && !bad.violations.empty(), "perturbed orthant must violate UERP");
    return o;
}

// 4. Realization iff the heights lie in the type cone.
Outcome criterion_cfz() {
    Outcome o;
    std::mt19937_64 rng(4);
    std::vector<Fan> fans;
    for (int n = 1; n <= 4; ++n) {
        const auto ts = n == 1 ? std::vector<Triangulation>{fan_triangulation(4)} : sample_triangulations(n);
        for (const auto& t : ts) fans.push_back(enumerate_fan(seed_from_triangulation(t)).fan);
    }
    fans.push_back(enumerate_fan(seed_from_triangulation(snake_triangulation(8))).fan);
    for (const auto& f : fans) {
        const auto tc = type_cone(f);
        const auto k = static_cast<Eigen::Index>(tc.facets.size());
        for (int trial = 0; trial < 10; ++trial) {
            RatVec c(k);
            for (Eigen::Index i = 0; i < k; ++i)
                c(i) = Rational(1 + static_cast<int>(rng() % 9), 1 + static_cast<int>(rng() % 5));
            const auto qc = qc_polytope(f, tc, c);
            o.expect(tc.contains(qc.h), "qc height inside the type cone");
            o.expect(realizes(f, qc.polytope), "c in the positive orthant must realize");
        }
        // outside: violate one facet, others strictly positive
        const RatVec inner = *solve(to_rational(tc.k_matrix()), RatVec::Constant(k, Rational(1)));
        for (int trial = 0; trial < 5; ++trial) {
            const std::size_t i = static_cast<std::size_t>(rng() % tc.facets.size());
            const RatVec& s = tc.certificates[i];
            Rational slack = 1;
            for (const auto& d : tc.facets)
                if (d != tc.facets[i]) slack = std::min(slack, to_rational(d).dot(s));
            const Rational depth(1 + static_cast<int>(rng() % 4), 3);
            // facet i gets -depth * slack / 2, the others stay positive
            const RatVec h = s - (depth * slack / 2) * inner;
            o.expect(!tc.contains(h), "perturbed height must leave the type cone");
            o.expect(!realizes(f, p_h(f, h)), "height outside the type cone must not realize");
        }
    }
    return o;
}

// 5. Relative AR meshes give the type cone facets.
Outcome criterion_relative_meshes() {
    Outcome o;
    for (int n = 1; n <= 5; ++n) {
        const auto ts = n == 1 ? std::vector<Triangulation>{fan_triangulation(4)} : sample_triangulations(n);
        for (const auto& t : ts) {
            const auto e = enumerate_fan(seed_from_triangulation(t));
            const auto rm = relative_ar_meshes(t, e);
            const auto tc = type_cone(e.fan);
            const std::string tag = " n=" + std::to_string(n);
            o.expect(key_set(rm.normals) == key_set(tc.facets), "mesh normals equal facets" + tag);
            o.expect(rm.normals.size() == tc.facets.size(), "no duplicate normals" + tag);
            o.expect(rm.excluded_count() == n, "excluded count" + tag);
        }
    }
    return o;
}

// 6. ABHY polytope equals the type cone polytope for linear A_n, c = ones.
Outcome criterion_abhy_qc() {
    Outcome o;
    for (int n = 1; n <= 4; ++n) {
        const auto q = linear_quiver('A', n);
        const auto ar = knit_ar_quiver(q);
        const Fan fan = enumerate_fan(initial_seed(exchange_matrix(q))).fan;
        const auto tc = type_cone(fan);
        const auto ones_mesh = RatVec::Constant(static_cast<Eigen::Index>(ar.meshes.size()), Rational(1));
        const auto ones_tc = RatVec::Constant(static_cast<Eigen::Index>(tc.facets.size()), Rational(1));
        const auto qc = qc_polytope(fan, tc, ones_tc);
        const auto ab = abhy_polytope(ar, ones_mesh);
        const std::string tag = " n=" + std::to_string(n);
        o.expect(row_set(ab) == row_set(qc.polytope), "inequalities" + tag);
        const auto va = vertices(ab);
        const auto vq = vertices(qc.polytope);
        o.expect(va.vertices == vq.vertices, "vertices" + tag);
        // slack coordinates h - G x agree with the ABHY functionals at every vertex
        const auto fs = abhy_functionals(ar);
        for (const auto& x : vq.vertices) {
            const RatVec s = qc.slack(x);
            for (std::size_t v = 0; v < fs.size(); ++v) {
                Rational val = fs[v].linear.dot(x);
                for (Eigen::Index i = 0; i < fs[v].constant.size(); ++i) val += fs[v].constant(i);
                const int r = fan.find_ray(ar.vertices[v].g);
                o.expect(r >= 0 && s(r) == val, "slack coordinate" + tag);
            }
        }
    }
    return o;
}

// 7. Mutation: involution, exchange graph shape, walls, flip graph isomorphism.
Outcome criterion_mutation() {
    Outcome o;
    std::mt19937_64 rng(7);
    int checked = 0;
    while (checked < 1000) {
        const int n = 1 + static_cast<int>(rng() % 6);
        const auto fg_nodes = flip_graph(n + 3).nodes;
        Seed s = seed_from_triangulation(fg_nodes[rng() % fg_nodes.size()]);
        const int steps = static_cast<int>(rng() % 6);
        for (int i = 0; i < steps; ++i) s = mutate_seed(s, static_cast<int>(rng() % static_cast<unsigned>(n)));
        const int k = static_cast<int>(rng() % static_cast<unsigned>(n));
        o.expect(mutate_seed(mutate_seed(s, k), k) == s, "mutation is an involution");
        ++checked;
    }
    for (int m = 4; m <= 9; ++m) {
        for (const auto& t : {fan_triangulation(m), snake_triangulation(m)}) {
            const auto e = enumerate_fan(seed_from_triangulation(t));
            const int n = m - 3;
            const std::string tag = " m=" + std::to_string(m);
            o.expect(e.graph.is_regular(n), "n-regular" + tag);
            o.expect(e.graph.is_connected(), "connected" + tag);
            o.expect(isomorphic_to_flip_graph(t, e), "flip graph isomorphism" + tag);
            if (m <= 8) o.expect(verify_mutation_theorem(e.fan, e.graph).ok(), "walls in two cones" + tag);
        }
    }
    return o;
}

/// Every artifact of the pipeline for one seed, concatenated.
std::string artifacts(const Triangulation& t, int threads) {
    const auto e = enumerate_fan(seed_from_triangulation(t), {.threads = threads});
    const auto tc = type_cone(e.fan, {threads});
    const auto qc = qc_polytope(e.fan, tc, RatVec::Constant(static_cast<Eigen::Index>(tc.facets.size()), Rational(1)));
    std::ostringstream out;
    out << fan_to_json(e.fan) << typecone_to_json(tc) << polytope_to_roff(vertices(qc.polytope))
        << exchange_graph_to_dot(e.fan, true);
    const auto u = unique_exchange_check(e.fan, threads);
    out << u.holds << u.weak_holds << u.violations.size();
    const auto fc = check_fan(e.fan, {.rng_seed = 0, .pairwise = t.rank() <= 3, .threads = threads});
    out << fc.ok() << fc.problems.size();
    return out.str();
}

// 8. Determinism across runs and thread counts.
Outcome criterion_determinism() {
    Outcome o;
    for (int n = 1; n <= 4; ++n) {
        const auto t = snake_triangulation(n + 3);
        const auto ref = artifacts(t, 1);
        o.expect(ref == artifacts(t, 1), "repeat run n=" + std::to_string(n));
        o.expect(ref == artifacts(t, 4), "threads 1 vs 4 n=" + std::to_string(n));
    }
    for (int n = 1; n <= 3; ++n) {
        const auto ar = knit_ar_quiver(linear_quiver('A', n));
        o.expect(arquiver_to_json(ar) == arquiver_to_json(knit_ar_quiver(linear_quiver('A', n))), "AR quiver JSON");
    }
    if (!g_cli.empty()) {
        const std::vector<std::string> pipelines{
            "fan --type A --rank 4",
            "fan --type A --rank 4 | {} typecone",
            "fan --type A --rank 4 | {} typecone --report",
            "fan --type D --rank 4 | {} realize",
            "fan --type A --rank 3 | {} graph --annotate",
            "verify --type A --rank 3",
            "abhy --type A --rank 3",
        };
        for (const auto& p : pipelines) {
            std::vector<std::string> outs;
            for (int threads : {1, 1, 4}) {
                const std::string pre = g_cli + " --threads " + std::to_string(threads) + " ";
                std::string cmd = pre + p;
                for (auto pos = cmd.find("{}"); pos != std::string::npos; pos = cmd.find("{}"))
                    cmd.replace(pos, 2, g_cli + " --threads " + std::to_string(threads));
                const auto r = run(cmd);
                o.expect(r.status == 0, "CLI exit status: " + p);
                outs.push_back(r.out);
            }
            o.expect(outs[0] == outs[1] && outs[0] == outs[2] && !outs[0].empty(), "CLI bytes: " + p);
        }
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_cli = argv[1];
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "A2 worked example reproduced", 1.0, criterion_a2},
        {2, "counting laws for A_n, n <= 5", 30.0, criterion_counts},
        {3, "unique exchange relation property", 0.0, criterion_uerp},
        {4, "realization iff height in the type cone", 60.0, criterion_cfz},
        {5, "relative AR meshes give the type cone facets", 0.0, criterion_relative_meshes},
        {6, "ABHY polytope equals the type cone polytope", 0.0, criterion_abhy_qc},
        {7, "mutation involution and exchange graph", 0.0, criterion_mutation},
        {8, "byte-identical output across runs and threads", 0.0, criterion_determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_s > 0 && secs > c.limit_s) o.expect(false, "time limit exceeded");
        std::printf("criterion %d %s (%.2f s): %s\n", c.id, o.ok ? "PASS" : "FAIL", secs, c.name);
        for (const auto& note : o.notes) std::printf("  - %s\n", note.c_str());
        failed += o.ok ? 0 : 1;
    }
    std::fflush(stdout);
    return failed == 0 ? 0 : 1;
}
