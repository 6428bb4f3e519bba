#include "doctest.h"
#include "helpers.hpp"

#include "fanforge/exchange.hpp"

#include <set>

using namespace fanforge;
using testing::iv;

namespace {

std::set<std::vector<std::int64_t>> as_set(const std::vector<IntVec>& vs) {
    std::set<std::vector<std::int64_t>> s;
    for (const auto& v : vs) s.insert(to_std(v));
    return s;
}

std::vector<Triangulation> three_triangulations(int m) {
    const auto fg = flip_graph(m);
    std::vector<Triangulation> out{fan_triangulation(m)};
    std::set<std::vector<Diagonal>> seen{out[0].key()};
    for (const auto& t : {snake_triangulation(m), fg.nodes[fg.nodes.size() / 2], fg.nodes.back(), fg.nodes.front()}) {
        if (out.size() == 3) break;
        if (seen.insert(t.key()).second) out.push_back(t);
    }
    return out;
}

}  // namespace

TEST_CASE("rotation of diagonals") {
    CHECK(rotate_forward({1, 3}, 5) == Diagonal{2, 4});
    CHECK(rotate_forward({3, 5}, 5) == Diagonal{1, 4});
    CHECK(rotate_backward(rotate_forward({2, 5}, 7), 7) == Diagonal{2, 5});
    for (int m = 4; m <= 9; ++m) {
        const auto ds = all_diagonals(m);
        CHECK(static_cast<int>(ds.size()) == m * (m - 3) / 2);
        for (const auto& d : ds) {
            Diagonal x = d;
            int order = 0;
            do {
                x = rotate_forward(x, m);
                ++order;
            } while (x != d);
            CHECK(m % order == 0);
        }
    }
}

TEST_CASE("relative meshes") {
    SUBCASE("A1 square") {
        const auto t = fan_triangulation(4);
        const auto rm = relative_ar_meshes(t, enumerate_fan(seed_from_triangulation(t)));
        CHECK(rm.excluded_count() == 1);
        REQUIRE(rm.normals.size() == 1);
        CHECK(rm.normals[0] == iv({1, 1}));
    }
    SUBCASE("A2 pentagon equals the type cone facets") {
        const auto t = fan_triangulation(5);
        const auto e = enumerate_fan(seed_from_triangulation(t));
        const auto rm = relative_ar_meshes(t, e);
        CHECK(rm.normals.size() == 3);
        CHECK(rm.normals == type_cone(e.fan).facets);
    }
    SUBCASE("middles never contain start or end") {
        const auto t = snake_triangulation(8);
        const auto rm = relative_ar_meshes(t, enumerate_fan(seed_from_triangulation(t)));
        for (const auto& mesh : rm.all) {
            CHECK(!mesh.middles.empty());
            CHECK(mesh.middles.size() <= 2);
            for (const auto& d : mesh.middles) {
                CHECK(d != mesh.start);
                CHECK(d != mesh.end);
            }
        }
    }
}

TEST_CASE("property: relative meshes give the type cone facets") {
    for (int n = 1; n <= 4; ++n) {
        const int big_n = n * (n + 3) / 2;
        for (const auto& t : three_triangulations(n + 3)) {
            const auto e = enumerate_fan(seed_from_triangulation(t));
            const auto rm = relative_ar_meshes(t, e);
            CHECK(rm.excluded_count() == n);
            CHECK(static_cast<int>(rm.all.size()) == big_n);
            CHECK(static_cast<int>(rm.normals.size()) == big_n - n);
            CHECK(as_set(rm.normals) == as_set(type_cone(e.fan).facets));
        }
    }
}

TEST_CASE("mutation theorem at wall level") {
    SUBCASE("A1") {
        const auto e = enumerate_fan(initial_seed(IntMat::Zero(1, 1)));
        const auto r = verify_mutation_theorem(e.fan, e.graph);
        CHECK(r.ok());
        CHECK(r.wall_count == 1);
    }
    SUBCASE("A2 and A3") {
        for (int m : {5, 6}) {
            const auto e = enumerate_fan(seed_from_triangulation(snake_triangulation(m)));
            const auto r = verify_mutation_theorem(e.fan, e.graph);
            CHECK(r.ok());
            CHECK(r.wall_count == static_cast<int>(e.graph.edges.size()));
        }
    }
    SUBCASE("a broken fan is reported") {
        // drop one cone of the A2 fan
        const Fan a2 = testing::a2_fan();
        const Fan broken = make_fan(2, a2.rays, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
        ExchangeGraph g;
        g.n_nodes = 4;
        g.edges = {{0, 1, 0, 2}, {1, 2, 1, 3}, {2, 3, 2, 4}};
        const auto r = verify_mutation_theorem(broken, g);
        CHECK_FALSE(r.walls_in_two);
        CHECK_FALSE(r.regular);
        CHECK_FALSE(r.ok());
    }
}
