#pragma once

// Independent reference computations for the test suites. Everything here is brute force
// over machine integers or high-precision floating point; nothing calls into the library
// paths these routines are used to check.

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using i64 = std::int64_t;
using Real = boost::multiprecision::cpp_dec_float_100;

inline bool is_square(i64 v, i64* root = nullptr) {
    if (v < 0) return false;
    auto r = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(v))));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    if (root) *root = r;
    return r * r == v;
}

// Partial quotients of sqrt(D) by floating-point floor iteration.
inline std::vector<i64> cf_terms_by_float(i64 D, int terms) {
    std::vector<i64> out;
    Real x = boost::multiprecision::sqrt(Real(D));
    for (int i = 0; i < terms; ++i) {
        Real a = boost::multiprecision::floor(x);
        out.push_back(a.convert_to<i64>());
        x = 1 / (x - a);
    }
    return out;
}

// Smallest b in [1, limit] with D b^2 + N a perfect square, as (a, b).
inline std::optional<std::pair<i64, i64>> min_pell_scan(i64 D, i64 N, i64 limit) {
    for (i64 b = 1; b <= limit; ++b) {
        i64 a;
        if (is_square(D * b * b + N, &a)) return std::make_pair(a, b);
    }
    return std::nullopt;
}

using IVec = std::pair<i64, i64>;

// Every (x, y) in the box with x^2 + dxy - y^2 = -1, by double loop.
inline std::set<IVec> roots_box(i64 d, i64 bound) {
    std::set<IVec> out;
    for (i64 x = -bound; x <= bound; ++x)
        for (i64 y = -bound; y <= bound; ++y)
            if (x * x + d * x * y - y * y == -1) out.insert({x, y});
    return out;
}

using IMat = std::array<i64, 4>;  // row-major

// Every M with entries in [-bound, bound] and M^T [[2,d],[d,-2]] M = [[2,d],[d,-2]], by
// looping over all four entries.
inline std::set<IMat> isometries_box(i64 d, i64 bound) {
    std::set<IMat> out;
    auto q = [d](i64 x, i64 y) { return 2 * x * x + 2 * d * x * y - 2 * y * y; };
    auto b = [d](i64 x0, i64 y0, i64 x1, i64 y1) { return 2 * x0 * x1 + d * (x0 * y1 + y0 * x1) - 2 * y0 * y1; };
    for (i64 a = -bound; a <= bound; ++a)
        for (i64 c = -bound; c <= bound; ++c) {
            if (q(a, c) != 2) continue;
            for (i64 e = -bound; e <= bound; ++e)
                for (i64 f = -bound; f <= bound; ++f)
                    if (q(e, f) == -2 && b(a, c, e, f) == d) out.insert({a, e, c, f});
        }
    return out;
}

// (a + b sqrt(D))/2 raised to k, in floating point; returns the (a, b) coefficients.
inline std::pair<Real, Real> half_power_float(i64 a, i64 b, i64 D, int k) {
    Real s = boost::multiprecision::sqrt(Real(D));
    Real v = boost::multiprecision::pow((Real(a) + Real(b) * s) / 2, k);
    Real w = boost::multiprecision::pow((Real(a) - Real(b) * s) / 2, k);
    return {v + w, (v - w) / s};
}

}  // namespace oracle
