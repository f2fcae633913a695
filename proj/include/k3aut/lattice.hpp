#pragma once

#include "k3aut/integer.hpp"

#include <utility>
#include <vector>

namespace k3aut {

/// Symmetric 2x2 integer Gram matrix of an even lattice.
class Gram2 {
  public:
    explicit Gram2(Mat2 m) : m_(std::move(m)) {
        if (m_.m01 != m_.m10) throw domain_error("Gram matrix must be symmetric: " + to_string(m_));
        if (m_.m00 % 2 != 0 || m_.m11 % 2 != 0)
            throw domain_error("Gram matrix must have even diagonal: " + to_string(m_));
    }

    const Mat2& matrix() const { return m_; }

    friend bool operator==(const Gram2&, const Gram2&) = default;

  private:
    Mat2 m_;
};

inline std::string to_string(const Gram2& g) { return to_string(g.matrix()); }

/// [[2, d], [d, -2]], the Neron-Severi form of the degree-d double plane.
inline Gram2 gram_for_degree(const Integer& d) {
    if (d < 1) throw domain_error("d must be >= 1, got " + d.str());
    return Gram2({2, d, d, -2});
}

inline Integer pair(const Gram2& G, const Vec2& v, const Vec2& w) {
    const Mat2& m = G.matrix();
    return v.x * (m.m00 * w.x + m.m01 * w.y) + v.y * (m.m10 * w.x + m.m11 * w.y);
}

inline Integer quad(const Gram2& G, const Vec2& v) { return pair(G, v, v); }

inline Integer discriminant(const Gram2& G) { return G.matrix().det(); }

struct Signature {
    int positive;
    int negative;
    friend bool operator==(const Signature&, const Signature&) = default;
};

inline Signature signature(const Gram2& G) {
    const Integer det = discriminant(G);
    if (det == 0) throw domain_error("signature of a degenerate form");
    if (det < 0) return {1, 1};
    return G.matrix().trace() > 0 ? Signature{2, 0} : Signature{0, 2};
}

struct SmithForm {
    Integer d1;
    Integer d2;
    Mat2 left;   // unimodular
    Mat2 right;  // unimodular; left * G * right = diag(d1, d2)
};

/// Smith normal form of a nondegenerate 2x2 integer matrix.
inline SmithForm smith_normal_form(const Mat2& input) {
    if (input.det() == 0) throw domain_error("smith_normal_form of a degenerate matrix");
    Mat2 A = input;
    Mat2 U = Mat2::identity();
    Mat2 V = Mat2::identity();
    auto left = [&](const Mat2& E) {
        A = E * A;
        U = E * U;
    };
    auto right = [&](const Mat2& E) {
        A = A * E;
        V = V * E;
    };
    const Mat2 swap{0, 1, 1, 0};

    for (;;) {
        // Bring the smallest nonzero entry to (0,0).
        const Integer* best = nullptr;
        int bi = 0, bj = 0;
        const Integer* entries[2][2] = {{&A.m00, &A.m01}, {&A.m10, &A.m11}};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (*entries[i][j] != 0 && (!best || abs(*entries[i][j]) < abs(*best))) {
                    best = entries[i][j];
                    bi = i;
                    bj = j;
                }
        if (bi == 1) left(swap);
        if (bj == 1) right(swap);

        Integer q = A.m10 / A.m00;
        left(Mat2{1, 0, -q, 1});
        q = A.m01 / A.m00;
        right(Mat2{1, -q, 0, 1});
        if (A.m10 != 0 || A.m01 != 0) continue;
        if (A.m11 % A.m00 != 0) {
            left(Mat2{1, 1, 0, 1});
            continue;
        }
        break;
    }
    if (A.m00 < 0) left(Mat2{-1, 0, 0, 1});
    if (A.m11 < 0) left(Mat2{1, 0, 0, -1});
    if (U * input * V != Mat2{A.m00, 0, 0, A.m11})
        throw consistency_error("smith_normal_form failed recomposition");
    return {A.m00, A.m11, U, V};
}

inline SmithForm smith_normal_form(const Gram2& G) { return smith_normal_form(G.matrix()); }

/// Element (x/den, y/den) of Q^2 reduced modulo Z^2: 0 <= x, y < den, den minimal.
struct RationalVec2 {
    Integer x;
    Integer y;
    Integer den;

    static RationalVec2 reduced(const Integer& x, const Integer& y, const Integer& den) {
        if (den == 0) throw domain_error("zero denominator");
        Integer n = abs(den);
        Integer rx = mod_floor(den < 0 ? -x : x, n);
        Integer ry = mod_floor(den < 0 ? -y : y, n);
        Integer g = gcd(gcd(rx, ry), n);
        return {rx / g, ry / g, n / g};
    }

    // Order of the class in Q^2 / Z^2.
    const Integer& order() const { return den; }
    bool is_integral() const { return den == 1; }

    friend bool operator==(const RationalVec2&, const RationalVec2&) = default;
};

inline std::string fraction_string(const Integer& num, const Integer& den) {
    Integer g = gcd(num, den);
    if (g == 0) g = 1;
    return den / g == 1 ? (num / g).str() : (num / g).str() + "/" + (den / g).str();
}

inline std::string to_string(const RationalVec2& v) {
    return "(" + fraction_string(v.x, v.den) + "," + fraction_string(v.y, v.den) + ")";
}

inline RationalVec2 operator*(const Mat2& m, const RationalVec2& g) {
    Vec2 v = m * Vec2{g.x, g.y};
    return RationalVec2::reduced(v.x, v.y, g.den);
}

inline RationalVec2 scale(const Integer& k, const RationalVec2& g) {
    return RationalVec2::reduced(k * g.x, k * g.y, g.den);
}

/// The finite group L*/L, as invariant factors d1 | d2 with one generator per factor.
struct DiscriminantGroup {
    Integer order;
    std::vector<Integer> cyclic_factors;
    std::vector<RationalVec2> generators;

    bool is_cyclic() const { return cyclic_factors.front() == 1; }
    // Generator of the whole group when cyclic.
    const RationalVec2& generator() const { return generators.back(); }
};

inline DiscriminantGroup discriminant_group(const Gram2& G) {
    const Integer det = discriminant(G);
    SmithForm snf = smith_normal_form(G);
    DiscriminantGroup grp{abs(det), {snf.d1, snf.d2}, {}};
    for (int i = 0; i < 2; ++i) {
        const Integer& f = i == 0 ? snf.d1 : snf.d2;
        Vec2 col = snf.right.column(i);
        grp.generators.push_back(RationalVec2::reduced(col.x, col.y, f));
    }
    if (grp.is_cyclic()) {
        // Prefer a dual-basis vector (a column of G^-1) when it generates.
        Mat2 adj = G.matrix().adjugate();
        for (int j = 0; j < 2; ++j) {
            Vec2 col = adj.column(j);
            RationalVec2 g = RationalVec2::reduced(col.x, col.y, det);
            if (g.order() == grp.order) {
                grp.generators.back() = g;
                break;
            }
        }
    }
    return grp;
}

}  // namespace k3aut
