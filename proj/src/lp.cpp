#include "fanforge/lp.hpp"

#include "fanforge/error.hpp"

#include <vector>

namespace fanforge {

Feasibility nonnegative_solution(const RatMat& a, const RatVec& b) {
    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();
    if (b.size() != m) throw Error(ErrorCode::InvalidInput, "lp: rhs length mismatch");

    // Tableau [A | I | b] with rows flipped so that b >= 0; artificials start basic.
    const Eigen::Index width = n + m + 1;
    RatMat t = RatMat::Zero(m, width);
    std::vector<int> sign(static_cast<std::size_t>(m), 1);
    for (Eigen::Index i = 0; i < m; ++i) {
        const int s = b(i) < 0 ? -1 : 1;
        sign[static_cast<std::size_t>(i)] = s;
        for (Eigen::Index j = 0; j < n; ++j) t(i, j) = s < 0 ? Rational(-a(i, j)) : a(i, j);
        t(i, n + i) = 1;
        t(i, width - 1) = s < 0 ? Rational(-b(i)) : b(i);
    }
    std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

    auto cost = [n](Eigen::Index j) { return j >= n ? 1 : 0; };
    // Reduced cost row d_j = c_j - sum_i c_{B_i} t(i, j), kept up to date with the tableau.
    RatVec reduced(width);
    for (Eigen::Index j = 0; j < width; ++j) {
        Rational d = j == width - 1 ? Rational(0) : Rational(cost(j));
        for (Eigen::Index i = 0; i < m; ++i) d -= t(i, j);
        reduced(j) = d;
    }

    while (true) {
        Eigen::Index entering = -1;
        for (Eigen::Index j = 0; j < n + m; ++j) {
            if (reduced(j) < 0) {
                entering = j;
                break;
            }
        }
        if (entering < 0) break;

        Eigen::Index leaving = -1;
        Rational best_ratio;
        for (Eigen::Index i = 0; i < m; ++i) {
            if (t(i, entering) <= 0) continue;
            const Rational ratio = t(i, width - 1) / t(i, entering);
            if (leaving < 0 || ratio < best_ratio ||
                (ratio == best_ratio && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leaving)])) {
                leaving = i;
                best_ratio = ratio;
            }
        }
        // Phase one is bounded below by zero, so a ratio row always exists.
        if (leaving < 0) throw Error(ErrorCode::SingularSystem, "lp: unbounded phase-one direction");

        const Rational inv = Rational(1) / t(leaving, entering);
        for (Eigen::Index j = 0; j < width; ++j) {
            if (t(leaving, j) != 0) t(leaving, j) *= inv;
        }
        for (Eigen::Index i = 0; i < m; ++i) {
            if (i == leaving || t(i, entering) == 0) continue;
            const Rational f = t(i, entering);
            for (Eigen::Index j = 0; j < width; ++j) {
                if (t(leaving, j) != 0) t(i, j) -= f * t(leaving, j);
            }
        }
        if (reduced(entering) != 0) {
            const Rational f = reduced(entering);
            for (Eigen::Index j = 0; j < width; ++j) {
                if (t(leaving, j) != 0) reduced(j) -= f * t(leaving, j);
            }
        }
        basis[static_cast<std::size_t>(leaving)] = entering;
    }

    // Objective value is -reduced(rhs).
    Feasibility out;
    if (reduced(width - 1) == 0) {
        RatVec x = RatVec::Zero(n);
        for (Eigen::Index i = 0; i < m; ++i) {
            const Eigen::Index var = basis[static_cast<std::size_t>(i)];
            if (var < n) x(var) = t(i, width - 1);
        }
        out.solution = std::move(x);
        return out;
    }
    // y = c_B^T B^{-1}; the artificial block of the reduced row is 1 - y.
    out.certificate = RatVec(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const Rational y = Rational(1) - reduced(n + i);
        out.certificate(i) = sign[static_cast<std::size_t>(i)] < 0 ? Rational(-y) : y;
    }
    return out;
}

}  // namespace fanforge
