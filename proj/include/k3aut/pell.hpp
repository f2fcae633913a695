#pragma once

#include "k3aut/integer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace k3aut {

inline void require_nonsquare_positive(const Integer& D) {
    if (D <= 0) throw domain_error("D must be positive, got " + D.str());
    if (is_square(D)) throw domain_error("D must not be a perfect square, got " + D.str());
}

inline void require_odd_degree(const Integer& d) {
    if (d < 1 || d % 2 == 0)
        throw domain_error("d must be an odd positive integer, got " + d.str());
}

/// An algebraic integer (a + b*sqrt(D)) / 2 of the real quadratic field Q(sqrt(D)).
///
/// Elements are constrained to the ring {(a + b*sqrt(D))/2 : a = bD (mod 2), 4 | a^2 - D b^2},
/// which contains every solution of a^2 - D b^2 = +-4 and is closed under multiplication.
/// For D = d^2 + 4 with d odd this is Z[(d + sqrt(D))/2], the ring holding eta.
class OrderElement {
  public:
    OrderElement(Integer a, Integer b, Integer D) : a_(std::move(a)), b_(std::move(b)), D_(std::move(D)) {
        require_nonsquare_positive(D_);
        if (mod_floor(a_ - b_ * D_, 2) != 0 || mod_floor(a_ * a_ - D_ * b_ * b_, 4) != 0)
            throw domain_error("(" + a_.str() + " + " + b_.str() + "*sqrt(" + D_.str() +
                               "))/2 is not in the order");
    }

    static OrderElement one(const Integer& D) { return {2, 0, D}; }

    const Integer& a() const { return a_; }
    const Integer& b() const { return b_; }
    const Integer& D() const { return D_; }

    // (a^2 - D b^2) / 4; integral by the class invariant.
    Integer norm() const { return (a_ * a_ - D_ * b_ * b_) / 4; }
    OrderElement conjugate() const { return {a_, -b_, D_}; }

    friend bool operator==(const OrderElement&, const OrderElement&) = default;

  private:
    Integer a_;
    Integer b_;
    Integer D_;
};

inline OrderElement mul(const OrderElement& x, const OrderElement& y) {
    if (x.D() != y.D())
        throw domain_error("mul: mismatched D (" + x.D().str() + " vs " + y.D().str() + ")");
    const Integer& D = x.D();
    Integer a = exact_div(x.a() * y.a() + D * x.b() * y.b(), 2, "OrderElement::mul");
    Integer b = exact_div(x.a() * y.b() + x.b() * y.a(), 2, "OrderElement::mul");
    return {std::move(a), std::move(b), D};
}

inline Integer norm(const OrderElement& x) { return x.norm(); }
inline OrderElement conjugate(const OrderElement& x) { return x.conjugate(); }

inline OrderElement pow(const OrderElement& x, unsigned k) {
    OrderElement result = OrderElement::one(x.D());
    OrderElement base = x;
    while (k > 0) {
        if (k & 1U) result = mul(result, base);
        k >>= 1U;
        if (k > 0) base = mul(base, base);
    }
    return result;
}

inline std::string to_string(const OrderElement& x) {
    return "(" + x.a().str() + "," + x.b().str() + "," + x.D().str() + ")";
}

/// Integer pair with a^2 - D b^2 = N, N in {-4, -1, 1, 4}.
class PellSolution {
  public:
    PellSolution(Integer a, Integer b, Integer D, int N)
        : a_(std::move(a)), b_(std::move(b)), D_(std::move(D)), N_(N) {
        require_nonsquare_positive(D_);
        if (N_ != -4 && N_ != -1 && N_ != 1 && N_ != 4)
            throw domain_error("N must be one of -4, -1, 1, 4");
        if (a_ * a_ - D_ * b_ * b_ != N_)
            throw domain_error("(" + a_.str() + "," + b_.str() + ") does not solve a^2 - " +
                               D_.str() + " b^2 = " + std::to_string(N_));
    }

    const Integer& a() const { return a_; }
    const Integer& b() const { return b_; }
    const Integer& D() const { return D_; }
    int N() const { return N_; }

    friend bool operator==(const PellSolution&, const PellSolution&) = default;

  private:
    Integer a_;
    Integer b_;
    Integer D_;
    int N_;
};

inline std::string to_string(const PellSolution& s) {
    return "(" + s.a().str() + "," + s.b().str() + ")";
}

struct ContinuedFraction {
    Integer a0;
    std::vector<Integer> period;
};

/// Periodic continued fraction sqrt(D) = [a0; period...], period ending in 2*a0.
inline ContinuedFraction cf_sqrt(const Integer& D) {
    require_nonsquare_positive(D);
    ContinuedFraction cf{isqrt(D), {}};
    Integer m = 0;
    Integer den = 1;
    Integer a = cf.a0;
    do {
        m = den * a - m;
        den = (D - m * m) / den;
        a = (cf.a0 + m) / den;
        cf.period.push_back(a);
    } while (a != 2 * cf.a0);
    return cf;
}

struct Convergent {
    Integer p;
    Integer q;
};

// First `count` convergents p_k/q_k of the expansion, cycling through the period.
inline std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t count) {
    std::vector<Convergent> out;
    out.reserve(count);
    Integer p_prev = 1, p = cf.a0;
    Integer q_prev = 0, q = 1;
    for (std::size_t k = 0; k < count; ++k) {
        out.push_back({p, q});
        const Integer& t = cf.period[k % cf.period.size()];
        Integer p_next = t * p + p_prev;
        Integer q_next = t * q + q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(p_next);
        q = std::move(q_next);
    }
    return out;
}

/// Fundamental solution of x^2 - D y^2 = -1 when the period is odd, else of x^2 - D y^2 = 1.
inline PellSolution fundamental_pm1(const Integer& D) {
    ContinuedFraction cf = cf_sqrt(D);
    const std::size_t l = cf.period.size();
    Convergent c = convergents(cf, l).back();
    return {c.p, c.q, D, l % 2 == 1 ? -1 : 1};
}

namespace detail {

struct DiscriminantUnit {
    Integer t;
    Integer u;
    int norm;
};

// Fundamental unit (t + u sqrt(disc))/2 of the quadratic order of discriminant `disc`,
// read off the first period of the continued fraction of (s + sqrt(disc))/2, s = disc mod 2.
inline DiscriminantUnit fundamental_unit(const Integer& disc) {
    require_nonsquare_positive(disc);
    const Integer sigma = disc % 2;
    if (mod_floor(disc, 4) != sigma)
        throw domain_error(disc.str() + " is not a discriminant");
    const Integer root = isqrt(disc);
    Integer P = sigma, Q = 2;
    // p = p_{i-1}, p_prev = p_{i-2}; likewise for q.
    Integer p_prev = 0, p = 1;
    Integer q_prev = 1, q = 0;
    for (unsigned i = 0;; ++i) {
        Integer a = (P + root) / Q;
        Integer p_next = a * p + p_prev;
        Integer q_next = a * q + q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(p_next);
        q = std::move(q_next);
        P = a * Q - P;
        Q = (disc - P * P) / Q;
        if (Q == 2) {
            DiscriminantUnit unit{2 * p - sigma * q, q, i % 2 == 0 ? -1 : 1};
            if (unit.t * unit.t - disc * unit.u * unit.u != 4 * unit.norm)
                throw consistency_error("fundamental unit failed its norm check");
            return unit;
        }
    }
}

// Smallest unit > 1 of the ring of OrderElement over D, expressed over D.
inline OrderElement fundamental_order_unit(const Integer& D) {
    require_nonsquare_positive(D);
    const Integer r = mod_floor(D, 4);
    if (r == 0 || r == 1) {
        DiscriminantUnit u = fundamental_unit(D);
        return {u.t, u.u, D};
    }
    DiscriminantUnit u = fundamental_unit(4 * D);
    return {u.t, 2 * u.u, D};
}

}  // namespace detail

/// Minimal positive solution of a^2 - D b^2 = -4, or nullopt when -4 is not represented.
inline std::optional<PellSolution> solve_pell4(const Integer& D) {
    OrderElement unit = detail::fundamental_order_unit(D);
    if (unit.norm() != -1) return std::nullopt;
    return PellSolution(unit.a(), unit.b(), D, -4);
}

/// eta = (d + sqrt(d^2 + 4)) / 2, the norm -1 generator of the unit group for odd d.
inline OrderElement fundamental_negative_unit(const Integer& d) {
    require_odd_degree(d);
    OrderElement eta(d, 1, d * d + 4);
    if (eta.norm() != -1) throw consistency_error("eta does not have norm -1");
    return eta;
}

/// eta^(2k+1) by repeated multiplication with eta^2.
inline OrderElement odd_unit_power(const Integer& d, unsigned k) {
    OrderElement eta = fundamental_negative_unit(d);
    OrderElement eta2 = mul(eta, eta);
    OrderElement r = eta;
    for (unsigned i = 0; i < k; ++i) r = mul(r, eta2);
    return r;
}

/// First n solutions of a^2 - (d^2 + 4) b^2 = -4 from the explicit two-term recurrence
/// a' = (a(d^2 + 2) + b(d^3 + 4d)) / 2,  b' = (a d + b(d^2 + 2)) / 2,  starting at (d, 1).
inline std::vector<PellSolution> solutions_by_recurrence(const Integer& d, std::size_t n) {
    require_odd_degree(d);
    if (n < 1) throw domain_error("solutions_by_recurrence: n must be >= 1");
    const Integer D = d * d + 4;
    std::vector<PellSolution> out;
    out.reserve(n);
    Integer a = d, b = 1;
    for (std::size_t i = 0; i < n; ++i) {
        out.emplace_back(a, b, D, -4);
        Integer a_next = exact_div(a * d * d + 2 * a + b * d * d * d + 4 * b * d, 2, "recurrence");
        Integer b_next = exact_div(a * d + b * d * d + 2 * b, 2, "recurrence");
        a = std::move(a_next);
        b = std::move(b_next);
    }
    return out;
}

/// The first `count` solutions with a, b > 0 of a^2 - D b^2 = N, ordered by size.
inline std::vector<PellSolution> pell_solutions(const Integer& D, int N, std::size_t count) {
    require_nonsquare_positive(D);
    std::vector<PellSolution> out;
    if (N == 4 || N == -4) {
        OrderElement unit = detail::fundamental_order_unit(D);
        const bool negative = unit.norm() == -1;
        if (N == -4 && !negative) return out;
        // norm -1 unit: odd powers carry -4, even powers +4
        const unsigned step = negative ? 2 : 1;
        OrderElement stride = pow(unit, step);
        OrderElement x = (N == -4 || !negative) ? unit : stride;
        for (std::size_t i = 0; i < count; ++i) {
            out.emplace_back(x.a(), x.b(), D, N);
            x = mul(x, stride);
        }
        return out;
    }
    if (N == 1 || N == -1) {
        PellSolution f = fundamental_pm1(D);
        if (N == -1 && f.N() == 1) return out;
        OrderElement unit(2 * f.a(), 2 * f.b(), D);
        const unsigned step = f.N() == -1 ? 2 : 1;
        OrderElement stride = pow(unit, step);
        OrderElement x = (N == f.N()) ? unit : stride;
        for (std::size_t i = 0; i < count; ++i) {
            out.emplace_back(x.a() / 2, x.b() / 2, D, N);
            x = mul(x, stride);
        }
        return out;
    }
    throw domain_error("N must be one of -4, -1, 1, 4");
}

}  // namespace k3aut
