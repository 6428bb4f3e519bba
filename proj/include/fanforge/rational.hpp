#pragma once

// Exact scalar and dense container types shared by every module.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fanforge {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RatVec = Vec<Rational>;
using RatMat = Mat<Rational>;
using IntVec = Vec<std::int64_t>;
using IntMat = Mat<std::int64_t>;

/// Serializes as `p/q`, always with an explicit denominator (`0/1`, `-3/2`).
std::string to_string(const Rational& q);

/// Parses `p`, `p/q` or a plain decimal integer. Throws fanforge::Error on malformed text.
Rational parse_rational(std::string_view text);

/// Comma separated rationals, e.g. `1,1/2,3`.
RatVec parse_rational_list(std::string_view text);

/// Lexicographic three-way comparison of two vectors of equal length.
template <typename DerivedA, typename DerivedB>
std::strong_ordering lex_compare(const Eigen::MatrixBase<DerivedA>& a,
                                 const Eigen::MatrixBase<DerivedB>& b) {
    const Eigen::Index len = std::min(a.size(), b.size());
    for (Eigen::Index i = 0; i < len; ++i) {
        if (a(i) < b(i)) return std::strong_ordering::less;
        if (b(i) < a(i)) return std::strong_ordering::greater;
    }
    return a.size() <=> b.size();
}

struct LexLess {
    template <typename DerivedA, typename DerivedB>
    bool operator()(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) const {
        return lex_compare(a, b) == std::strong_ordering::less;
    }
};

/// Scales a rational vector by a positive factor so that it becomes a primitive integer
/// vector (gcd of entries 1). The zero vector maps to itself. Direction is never flipped.
IntVec primitive(const RatVec& v);
IntVec primitive(const IntVec& v);

RatVec to_rational(const IntVec& v);
RatMat to_rational(const IntMat& m);

/// Throws if a rational does not fit in int64 or is not integral.
std::int64_t to_int64(const Rational& q);

std::vector<std::int64_t> to_std(const IntVec& v);
IntVec from_std(const std::vector<std::int64_t>& v);

}  // namespace fanforge
