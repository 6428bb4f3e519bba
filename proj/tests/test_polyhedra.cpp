#include "doctest.h"
#include "helpers.hpp"

#include "fanforge/error.hpp"
#include "fanforge/linalg.hpp"
#include "fanforge/lp.hpp"

#include <algorithm>
#include <random>

using namespace fanforge;
using testing::hpoly;
using testing::iv;
using testing::rv;

namespace {

ErrorCode error_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected fanforge::Error");
    return ErrorCode::InvalidInput;
}

// Planar oracle: intersect every pair of boundary lines by Cramer's rule and
// keep the feasible intersection points.
std::vector<RatVec> planar_vertices_oracle(const HPolytope& p) {
    std::vector<RatVec> out;
    for (Eigen::Index i = 0; i < p.a.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < p.a.rows(); ++j) {
            const Rational det = p.a(i, 0) * p.a(j, 1) - p.a(i, 1) * p.a(j, 0);
            if (det == 0) continue;
            const Rational x = (p.b(i) * p.a(j, 1) - p.a(i, 1) * p.b(j)) / det;
            const Rational y = (p.a(i, 0) * p.b(j) - p.b(i) * p.a(j, 0)) / det;
            bool ok = true;
            for (Eigen::Index k = 0; k < p.a.rows(); ++k) ok = ok && p.a(k, 0) * x + p.a(k, 1) * y <= p.b(k);
            if (ok) out.push_back(rv({x, y}));
        }
    }
    return make_vpolytope(2, out).vertices;
}

}  // namespace

TEST_CASE("exact rank, kernel and solve") {
    RatMat m(2, 3);
    m << 1, 2, 3, 2, 4, 6;
    CHECK(rank(m) == 1);
    const RatMat k = kernel(m);
    CHECK(k.cols() == 2);
    CHECK((m * k).isZero());
    const auto x = solve(m, rv({1, 2}));
    REQUIRE(x);
    CHECK(m * *x == rv({1, 2}));
    CHECK_FALSE(solve(m, rv({1, 3})));
    RatMat sq(2, 2);
    sq << 2, 1, 1, 1;
    CHECK(determinant(sq) == 1);
    CHECK(*inverse(sq) * sq == RatMat::Identity(2, 2));
}

TEST_CASE("rational text round trip") {
    CHECK(to_string(Rational(3, 2)) == "3/2");
    CHECK(to_string(Rational(0)) == "0/1");
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(parse_rational(" 7 ") == 7);
    CHECK(parse_rational_list("1,1/2,-3") == rv({1, Rational(1, 2), -3}));
    CHECK(error_of([] { parse_rational("1/0"); }) == ErrorCode::InvalidInput);
    CHECK(error_of([] { parse_rational("abc"); }) == ErrorCode::InvalidInput);
    CHECK(primitive(rv({Rational(2, 3), Rational(-4, 3), 0})) == iv({1, -2, 0}));
}

TEST_CASE("phase-one simplex: feasible and Farkas certificate") {
    RatMat a(2, 3);
    a << 1, 1, 0, 0, 1, 1;
    const auto ok = nonnegative_solution(a, rv({1, 1}));
    REQUIRE(ok.feasible());
    CHECK(a * *ok.solution == rv({1, 1}));
    CHECK((ok.solution->array() >= Rational(0)).all());

    const auto bad = nonnegative_solution(a, rv({-1, 1}));
    REQUIRE_FALSE(bad.feasible());
    const RatVec yA = a.transpose() * bad.certificate;
    CHECK((yA.array() <= Rational(0)).all());
    CHECK(bad.certificate.dot(rv({-1, 1})) > 0);
}

TEST_CASE("vertices: unit square") {
    const auto p = hpoly({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {1, 1, 1, 1});
    const auto v = vertices(p);
    CHECK(v.vertices.size() == 4);
    CHECK(v.vertices.front() == rv({-1, -1}));
    CHECK(v.vertices.back() == rv({1, 1}));
}

TEST_CASE("vertices: A2 pentagon against the line-intersection oracle") {
    const auto p = hpoly({{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}}, {2, 2, 1, 0, 0});
    const auto expected = planar_vertices_oracle(p);
    REQUIRE(expected.size() == 5);
    CHECK(vertices(p).vertices == expected);
    CHECK(expected == make_vpolytope(2, {rv({0, 0}), rv({2, 0}), rv({2, 2}), rv({1, 2}), rv({0, 1})}).vertices);
}

TEST_CASE("vertices: error kinds are distinct") {
    CHECK(error_of([] { vertices(hpoly({{-1, 0}, {0, -1}}, {0, 0})); }) == ErrorCode::Unbounded);
    CHECK(error_of([] { vertices(hpoly({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {-1, 0, 1, 1})); }) ==
          ErrorCode::Empty);
    CHECK(error_of([] { vertices(hpoly({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {0, 0, 1, 1})); }) ==
          ErrorCode::DimensionDeficient);
    // a strip: lineality direction y
    CHECK(error_of([] { vertices(hpoly({{1, 0}, {-1, 0}}, {1, 1})); }) == ErrorCode::Unbounded);
    CHECK(error_of([] { vertices(hpoly({{1, 0}, {-1, 0}}, {-1, 0})); }) == ErrorCode::Empty);
}

TEST_CASE("normal fans of small polytopes") {
    SUBCASE("unit square") {
        const auto sq = vertices(hpoly({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {1, 1, 1, 1}));
        CHECK(fan_eq(normal_fan(sq), testing::quadrant_fan()));
    }
    SUBCASE("A2 pentagon") {
        const auto pent = make_vpolytope(2, {rv({0, 0}), rv({2, 0}), rv({2, 2}), rv({1, 2}), rv({0, 1})});
        const Fan f = normal_fan(pent);
        CHECK(f.n_rays() == 5);
        CHECK(f.n_cones() == 5);
        CHECK(fan_eq(f, testing::a2_fan()));
        CHECK(check_fan(f).ok());
    }
    SUBCASE("standard simplex") {
        const Fan f = normal_fan(make_vpolytope(2, {rv({0, 0}), rv({1, 0}), rv({0, 1})}));
        CHECK(f.n_rays() == 3);
        CHECK(f.n_cones() == 3);
        CHECK(f.find_ray(iv({1, 1})) >= 0);
    }
    SUBCASE("segment is dimension deficient in the plane") {
        CHECK(error_of([] { normal_fan(make_vpolytope(2, {rv({0, 0}), rv({1, 1})})); }) ==
              ErrorCode::DimensionDeficient);
    }
}

TEST_CASE("p_h") {
    const Fan a2 = testing::a2_fan();
    const auto pent = p_h(a2, rv({2, 2, 1, 0, 0}));
    CHECK(pent.a.row(2) == rv({-1, 1}).transpose());
    CHECK(vertices(pent).vertices.size() == 5);

    const auto origin = p_h(a2, RatVec::Zero(5));
    CHECK((origin.a * rv({0, 0}) - origin.b).maxCoeff() <= 0);
    CHECK(error_of([&] { vertices(origin); }) == ErrorCode::DimensionDeficient);

    const auto seg = vertices(p_h(testing::a1_fan(), rv({1, 1})));
    CHECK(seg.vertices == std::vector<RatVec>{rv({-1}), rv({1})});
    CHECK(error_of([&] { p_h(a2, rv({1, 2})); }) == ErrorCode::InvalidInput);
}

TEST_CASE("fan_eq") {
    const Fan a2 = testing::a2_fan();
    CHECK(fan_eq(a2, a2));
    CHECK(fan_eq(a2, normal_fan(vertices(p_h(a2, rv({2, 2, 1, 0, 0}))))));
    const Fan broken = normal_fan(vertices(p_h(a2, rv({2, 2, 3, 0, 0}))));
    CHECK_FALSE(fan_eq(a2, broken));
    CHECK(broken.n_rays() == 4);

    // invariant under relabeling the rays
    std::vector<int> perm{3, 0, 4, 1, 2};
    std::vector<IntVec> rays(5);
    for (int i = 0; i < 5; ++i) rays[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = a2.rays[static_cast<std::size_t>(i)];
    std::vector<Cone> cones;
    for (const auto& c : a2.cones) {
        Cone image;
        for (int r : c) image.push_back(perm[static_cast<std::size_t>(r)]);
        cones.push_back(image);
    }
    const Fan relabeled = make_fan(2, rays, cones);
    CHECK(fan_eq(a2, relabeled));
    CHECK(fan_eq(relabeled, a2));
    CHECK_FALSE(fan_eq(a2, testing::quadrant_fan()));
}

TEST_CASE("check_fan catches broken fans") {
    CHECK(check_fan(testing::a2_fan()).ok());
    CHECK(check_fan(testing::a1_fan()).ok());
    // missing cone: walls border one cone and probes escape
    auto f = testing::a2_fan();
    f.cones.pop_back();
    const auto r = check_fan(f);
    CHECK_FALSE(r.walls_in_two);
    CHECK_FALSE(r.probes_covered);
    // overlapping cones
    const Fan overlap = make_fan(2, {iv({1, 0}), iv({0, 1}), iv({1, 1}), iv({-1, 0}), iv({0, -1})},
                                 {{0, 1}, {1, 2}, {0, 2}, {1, 3}, {3, 4}, {0, 4}});
    CHECK_FALSE(check_fan(overlap).pairwise_faces);
}

TEST_CASE("property: facets and vertices are mutually inverse on random polytopes") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const int dim = 2 + static_cast<int>(seed % 2);
        auto pts = random_rational_points(dim, 12, seed);
        const auto hull = facets(make_vpolytope(dim, pts));
        const auto verts = vertices(hull);
        for (const auto& v : verts.vertices) {
            CHECK(std::find(pts.begin(), pts.end(), v) != pts.end());
        }
        CHECK(vertices(facets(verts)).vertices == verts.vertices);
        const auto again = facets(verts);
        CHECK(again.a == hull.a);
        CHECK(again.b == hull.b);
    }
}

TEST_CASE("property: normal fan rays of P_h come from the fan") {
    const Fan a2 = testing::a2_fan();
    std::mt19937_64 rng(7);
    int bounded = 0;
    for (int trial = 0; trial < 30; ++trial) {
        RatVec h(5);
        for (int i = 0; i < 5; ++i) h(i) = Rational(static_cast<std::int64_t>(rng() % 7) - 1);
        VPolytope v;
        try {
            v = vertices(p_h(a2, h));
        } catch (const Error&) {
            continue;
        }
        ++bounded;
        for (const auto& r : normal_fan(v).rays) CHECK(a2.find_ray(r) >= 0);
    }
    CHECK(bounded > 5);
}
