#include "fanforge/rational.hpp"

#include "fanforge/error.hpp"

#include <charconv>
#include <limits>
#include <numeric>

namespace fanforge {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::Unbounded: return "Unbounded";
        case ErrorCode::Empty: return "Empty";
        case ErrorCode::DimensionDeficient: return "DimensionDeficient";
        case ErrorCode::UnsupportedType: return "UnsupportedType";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::DegenerateWall: return "DegenerateWall";
        case ErrorCode::NotSimplicial: return "NotSimplicial";
        case ErrorCode::InconsistentSystem: return "InconsistentSystem";
    }
    return "Unknown";
}

std::string to_string(const Rational& q) {
    return boost::multiprecision::numerator(q).str() + "/" +
           boost::multiprecision::denominator(q).str();
}

namespace {

bool is_integer_text(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

Integer parse_integer(std::string_view s) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view s = trim(text);
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        if (!is_integer_text(s)) {
            throw Error(ErrorCode::InvalidInput, "malformed rational '" + std::string(text) + "'");
        }
        return Rational(parse_integer(s));
    }
    const auto num = s.substr(0, slash);
    const auto den = s.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den)) {
        throw Error(ErrorCode::InvalidInput, "malformed rational '" + std::string(text) + "'");
    }
    const Integer d = parse_integer(den);
    if (d == 0) throw Error(ErrorCode::InvalidInput, "zero denominator in '" + std::string(text) + "'");
    return Rational(parse_integer(num), d);
}

RatVec parse_rational_list(std::string_view text) {
    std::vector<Rational> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto end = comma == std::string_view::npos ? text.size() : comma;
        values.push_back(parse_rational(text.substr(start, end - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    RatVec out(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) out(static_cast<Eigen::Index>(i)) = values[i];
    return out;
}

IntVec primitive(const RatVec& v) {
    Integer lcm_den = 1;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        lcm_den = boost::multiprecision::lcm(lcm_den, boost::multiprecision::denominator(v(i)));
    }
    std::vector<Integer> ints(static_cast<std::size_t>(v.size()));
    Integer g = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const Rational scaled = v(i) * Rational(lcm_den);
        ints[static_cast<std::size_t>(i)] = boost::multiprecision::numerator(scaled);
        g = boost::multiprecision::gcd(g, boost::multiprecision::abs(ints[static_cast<std::size_t>(i)]));
    }
    IntVec out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        Integer x = ints[static_cast<std::size_t>(i)];
        if (g != 0) x /= g;
        out(i) = to_int64(Rational(x));
    }
    return out;
}

IntVec primitive(const IntVec& v) {
    std::int64_t g = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) g = std::gcd(g, v(i) < 0 ? -v(i) : v(i));
    if (g <= 1) return v;
    return v / g;
}

RatVec to_rational(const IntVec& v) {
    RatVec out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = Rational(v(i));
    return out;
}

RatMat to_rational(const IntMat& m) {
    RatMat out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
    return out;
}

std::int64_t to_int64(const Rational& q) {
    if (boost::multiprecision::denominator(q) != 1) {
        throw Error(ErrorCode::InvalidInput, "expected an integer, got " + to_string(q));
    }
    const Integer& n = boost::multiprecision::numerator(q);
    if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min()) {
        throw Error(ErrorCode::InvalidInput, "integer out of int64 range: " + n.str());
    }
    return n.convert_to<std::int64_t>();
}

std::vector<std::int64_t> to_std(const IntVec& v) {
    return std::vector<std::int64_t>(v.data(), v.data() + v.size());
}

IntVec from_std(const std::vector<std::int64_t>& v) {
    IntVec out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
    return out;
}

}  // namespace fanforge
