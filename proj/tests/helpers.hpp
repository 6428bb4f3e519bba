#pragma once

#include "fanforge/polyhedra.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace testing {

inline fanforge::RatVec rv(std::initializer_list<fanforge::Rational> xs) {
    fanforge::RatVec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (const auto& x : xs) v(i++) = x;
    return v;
}

inline fanforge::IntVec iv(std::initializer_list<std::int64_t> xs) {
    fanforge::IntVec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (auto x : xs) v(i++) = x;
    return v;
}

inline fanforge::HPolytope hpoly(std::initializer_list<std::initializer_list<fanforge::Rational>> rows,
                                 std::initializer_list<fanforge::Rational> bounds) {
    const auto m = static_cast<Eigen::Index>(rows.size());
    const auto n = static_cast<Eigen::Index>(rows.begin()->size());
    fanforge::HPolytope p{fanforge::RatMat(m, n), rv(bounds)};
    Eigen::Index i = 0;
    for (const auto& r : rows) p.a.row(i++) = rv(r).transpose();
    return p;
}

/// The A2 g-vector fan in the ray order used throughout the tests.
inline fanforge::Fan a2_fan() {
    return fanforge::make_fan(2, {iv({1, 0}), iv({0, 1}), iv({-1, 1}), iv({-1, 0}), iv({0, -1})},
                              {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
}

inline fanforge::Fan quadrant_fan() {
    return fanforge::make_fan(2, {iv({1, 0}), iv({-1, 0}), iv({0, 1}), iv({0, -1})},
                              {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

inline fanforge::Fan a1_fan() { return fanforge::make_fan(1, {iv({1}), iv({-1})}, {{0}, {1}}); }

inline std::vector<std::vector<fanforge::Rational>> as_lists(const fanforge::VPolytope& p) {
    std::vector<std::vector<fanforge::Rational>> out;
    for (const auto& v : p.vertices) out.emplace_back(v.data(), v.data() + v.size());
    return out;
}

}  // namespace testing
