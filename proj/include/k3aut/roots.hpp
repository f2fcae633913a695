#pragma once

#include "k3aut/lattice.hpp"
#include "k3aut/pell.hpp"

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

namespace k3aut {

/// A (-2)-vector of L_d with its effectivity and irreducibility relative to the walls.
struct Root {
    Vec2 v;
    bool effective;
    bool irreducible;
};

struct Chamber {
    Vec2 wall_u;    // root (0,1)
    Vec2 wall_w;    // root (d,-1)
    Vec2 normal_u;  // Q_d * wall_u
    Vec2 normal_w;  // Q_d * wall_w
    Vec2 ray_u;     // primitive boundary ray on the hyperplane of wall_u
    Vec2 ray_w;     // primitive boundary ray on the hyperplane of wall_w
    Vec2 interior_point;
};

enum class ChamberPosition { interior, boundary, outside };

inline const char* to_string(ChamberPosition p) {
    switch (p) {
        case ChamberPosition::interior: return "interior";
        case ChamberPosition::boundary: return "boundary";
        case ChamberPosition::outside: return "outside";
    }
    return "?";
}

namespace detail {

inline void sort_unique(std::vector<Vec2>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Root attached to the unit (a + b sqrt(d^2+4))/2 of norm -1.
inline Vec2 root_of_unit(const Integer& d, const OrderElement& u) {
    return {exact_div(u.a() + d * u.b(), 2, "root_of_unit"), -u.b()};
}

inline void push_unit_roots(const Integer& d, const OrderElement& u, std::vector<Vec2>& out) {
    for (const OrderElement& e : {u, u.conjugate()}) {
        Vec2 r = root_of_unit(d, e);
        out.push_back(r);
        out.push_back(-r);
    }
}

// Chamber geometry for any d >= 1. Only odd d is covered by the wall theory; even d is
// used by the flagged best-effort pipeline.
inline Chamber chamber_geometry(const Integer& d) {
    Gram2 Q = gram_for_degree(d);
    Chamber ch;
    ch.wall_u = {0, 1};
    ch.wall_w = {d, -1};
    ch.normal_u = Q.matrix() * ch.wall_u;
    ch.normal_w = Q.matrix() * ch.wall_w;
    ch.ray_u = {2, d};
    ch.ray_w = {d * d + 2, -d};
    for (Vec2* r : {&ch.ray_u, &ch.ray_w}) {
        Integer g = gcd(r->x, r->y);
        *r = {r->x / g, r->y / g};
    }
    ch.interior_point = {1, 0};
    return ch;
}

}  // namespace detail

/// All integer solutions of x^2 + dxy - y^2 = -1 with |x|, |y| <= bound, sorted.
///
/// Exhaustive over x; for each x the quadratic in y is solved exactly.
inline std::vector<Vec2> roots_by_scan(const Integer& d, const Integer& bound) {
    if (d < 1) throw domain_error("d must be >= 1");
    if (bound < 1) throw domain_error("bound must be >= 1");
    std::vector<Vec2> out;
    const Integer D = d * d + 4;
    for (Integer x = -bound; x <= bound; ++x) {
        // y^2 - d x y - (x^2 + 1) = 0
        Integer disc = D * x * x + 4;
        if (!is_square(disc)) continue;
        Integer s = isqrt(disc);
        for (const Integer& num : {d * x + s, d * x - s}) {
            if (num % 2 != 0) continue;
            Integer y = num / 2;
            if (abs(y) <= bound && x * x + d * x * y - y * y == -1) out.push_back({x, y});
        }
    }
    detail::sort_unique(out);
    return out;
}

/// Roots +-eta^(2k+1), +-conj(eta)^(2k+1) for k <= k_max, mapped by (a,b) -> ((a+db)/2, -b).
inline std::vector<Vec2> roots_from_units(const Integer& d, unsigned k_max) {
    require_odd_degree(d);
    std::vector<Vec2> out;
    OrderElement eta = fundamental_negative_unit(d);
    OrderElement eta2 = mul(eta, eta);
    OrderElement u = eta;
    for (unsigned k = 0; k <= k_max; ++k) {
        detail::push_unit_roots(d, u, out);
        u = mul(u, eta2);
    }
    detail::sort_unique(out);
    return out;
}

/// Unit-generated roots truncated to the box |x|, |y| <= bound.
inline std::vector<Vec2> roots_from_units_in_box(const Integer& d, const Integer& bound) {
    require_odd_degree(d);
    std::vector<Vec2> all;
    OrderElement eta = fundamental_negative_unit(d);
    OrderElement eta2 = mul(eta, eta);
    // |y| = b grows strictly with k, so the box is exhausted once b > bound.
    for (OrderElement u = eta; u.b() <= bound; u = mul(u, eta2)) detail::push_unit_roots(d, u, all);
    std::vector<Vec2> out;
    std::copy_if(all.begin(), all.end(), std::back_inserter(out),
                 [&](const Vec2& r) { return abs(r.x) <= bound && abs(r.y) <= bound; });
    detail::sort_unique(out);
    return out;
}

/// The two irreducible roots (0,1) and (d,-1).
inline std::pair<Vec2, Vec2> walls(const Integer& d) {
    require_odd_degree(d);
    return {{0, 1}, {d, -1}};
}

inline Chamber kahler_chamber(const Integer& d) {
    require_odd_degree(d);
    return detail::chamber_geometry(d);
}

inline ChamberPosition in_chamber(const Chamber& ch, const Vec2& v) {
    auto dot = [](const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; };
    Integer pu = dot(v, ch.normal_u);
    Integer pw = dot(v, ch.normal_w);
    if (pu > 0 && pw > 0) return ChamberPosition::interior;
    if ((pu == 0 && pw >= 0) || (pw == 0 && pu >= 0)) return ChamberPosition::boundary;
    return ChamberPosition::outside;
}

/// Nonnegative (a, b) with r = a*(0,1) + b*(d,-1), if any.
inline std::optional<std::pair<Integer, Integer>> decompose_root(const Integer& d, const Vec2& r) {
    require_odd_degree(d);
    if (quad(gram_for_degree(d), r) != -2)
        throw domain_error("decompose_root: " + to_string(r) + " is not a (-2)-vector");
    if (r.x % d != 0) return std::nullopt;
    Integer b = r.x / d;
    Integer a = r.y + b;
    if (a < 0 || b < 0) return std::nullopt;
    return std::make_pair(std::move(a), std::move(b));
}

inline Root classify_root(const Integer& d, const Vec2& r) {
    auto dec = decompose_root(d, r);
    Root root{r, dec.has_value(), false};
    if (dec) {
        const auto& [a, b] = *dec;
        root.irreducible = (a == 1 && b == 0) || (a == 0 && b == 1);
    }
    return root;
}

}  // namespace k3aut
