#pragma once

#include "k3aut/lattice.hpp"
#include "k3aut/pell.hpp"
#include "k3aut/roots.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace k3aut {

inline bool is_isometry(const Gram2& G, const Mat2& m) {
    return m.transpose() * G.matrix() * m == G.matrix();
}

/// An element of O(L) = {M in GL2(Z) : M^T G M = G}, verified on construction.
class Isometry2 {
  public:
    Isometry2(Mat2 m, Gram2 gram) : m_(std::move(m)), gram_(std::move(gram)) {
        if (!is_isometry(gram_, m_))
            throw domain_error(to_string(m_) + " does not preserve " + to_string(gram_));
        det_ = m_.det() > 0 ? 1 : -1;
    }

    const Mat2& matrix() const { return m_; }
    const Gram2& gram() const { return gram_; }
    int det() const { return det_; }

    friend bool operator==(const Isometry2& l, const Isometry2& r) {
        return l.m_ == r.m_ && l.gram_ == r.gram_;
    }
    friend bool operator<(const Isometry2& l, const Isometry2& r) { return l.m_ < r.m_; }

  private:
    Mat2 m_;
    Gram2 gram_;
    int det_ = 1;
};

namespace detail {

// Builds an isometry that the caller derived by formula; a failure is an internal defect.
inline Isometry2 checked_isometry(const Mat2& m, const Gram2& G, const char* what) {
    if (!is_isometry(G, m))
        throw consistency_error(std::string(what) + " produced non-isometry " + to_string(m));
    return Isometry2(m, G);
}

}  // namespace detail

struct FamilyMatrices {
    Isometry2 r_plus;
    Isometry2 r_minus;
    Isometry2 s_plus;
    Isometry2 s_minus;
};

/// R+-, S+- attached to a solution (a, b) of a^2 - (d^2+4) b^2 = -4.
///
/// S-labels follow the displayed base matrices: S+ = [[-1,0],[-d,1]] and S- = [[-1,-d],[0,1]]
/// at (a, b) = (d, 1).
inline FamilyMatrices family_matrices(const Integer& d, const PellSolution& sol) {
    require_odd_degree(d);
    const Integer D = d * d + 4;
    if (sol.D() != D || sol.N() != -4)
        throw domain_error("family_matrices: (" + sol.a().str() + "," + sol.b().str() +
                           ") is not a solution of a^2 - " + D.str() + " b^2 = -4");
    const Integer& a = sol.a();
    const Integer& b = sol.b();
    const Gram2 Q = gram_for_degree(d);
    auto half = [](const Integer& v) { return exact_div(v, 2, "family_matrices"); };

    const Integer diag_plus = half((2 + d * d) * b - d * a);
    const Integer diag_minus = half((2 + d * d) * b + d * a);
    const Integer off_plus = half(-d * b + a);
    const Integer off_minus = half(-d * b - a);

    return {
        detail::checked_isometry({diag_plus, off_plus, off_plus, b}, Q, "R+"),
        detail::checked_isometry({diag_minus, off_minus, off_minus, b}, Q, "R-"),
        detail::checked_isometry({-b, off_plus, off_minus, b}, Q, "S+"),
        detail::checked_isometry({-b, off_minus, off_plus, b}, Q, "S-"),
    };
}

/// Every matrix with entries in [-bound, bound] preserving G, sorted.
///
/// The scan is exhaustive over the box column by column: column j must have norm G_jj and
/// the two columns must pair to G_01.
inline std::vector<Isometry2> brute_isometries(const Gram2& G, const Integer& bound) {
    if (bound < 1) throw domain_error("bound must be >= 1");
    const Mat2& g = G.matrix();
    std::vector<Vec2> first, second;
    for (Integer x = -bound; x <= bound; ++x)
        for (Integer y = -bound; y <= bound; ++y) {
            Vec2 v{x, y};
            Integer n = quad(G, v);
            if (n == g.m00) first.push_back(v);
            if (n == g.m11) second.push_back(v);
        }
    std::vector<Isometry2> out;
    for (const Vec2& c0 : first)
        for (const Vec2& c1 : second) {
            if (pair(G, c0, c1) != g.m01) continue;
            Mat2 m = Mat2::from_columns(c0, c1);
            if (abs(m.det()) != 1) continue;
            out.emplace_back(m, G);
        }
    std::sort(out.begin(), out.end());
    return out;
}

enum class Wall { u, w };

inline const char* to_string(Wall w) { return w == Wall::u ? "s_u" : "s_w"; }

/// x -> x + <x, r> r for a (-2)-vector r.
inline Isometry2 root_reflection(const Gram2& G, const Vec2& r) {
    if (quad(G, r) != -2) throw domain_error("reflection root must have square -2");
    Vec2 c0 = Vec2{1, 0} + pair(G, Vec2{1, 0}, r) * r;
    Vec2 c1 = Vec2{0, 1} + pair(G, Vec2{0, 1}, r) * r;
    return detail::checked_isometry(Mat2::from_columns(c0, c1), G, "root_reflection");
}

/// Reflection in the wall root (0,1) (which = u) or (d,-1) (which = w).
inline Isometry2 wall_reflection(const Integer& d, Wall which) {
    require_odd_degree(d);
    Vec2 root = which == Wall::u ? Vec2{0, 1} : Vec2{d, -1};
    return root_reflection(gram_for_degree(d), root);
}

/// The wall-exchanging involution [[1,d],[0,-1]] = -S0-.
inline Isometry2 wall_swap(const Integer& d) {
    return detail::checked_isometry({1, d, 0, -1}, gram_for_degree(d), "wall_swap");
}

enum class Residual { identity, swap };

inline const char* to_string(Residual r) { return r == Residual::identity ? "identity" : "swap"; }

/// m = sign * letters[0] * letters[1] * ... * residual.
struct WordDecomposition {
    int sign = 1;
    std::vector<Wall> letters;
    Residual residual = Residual::identity;
};

inline Mat2 recompose(const Integer& d, const WordDecomposition& w) {
    Mat2 m = Mat2::identity();
    for (Wall l : w.letters) m = m * wall_reflection(d, l).matrix();
    if (w.residual == Residual::swap) m = m * wall_swap(d).matrix();
    return w.sign < 0 ? -m : m;
}

/// Walks the image of the interior point (1,0) back into the Kahler chamber by wall reflections.
inline WordDecomposition decompose(const Integer& d, const Isometry2& iso) {
    require_odd_degree(d);
    const Gram2 Q = gram_for_degree(d);
    if (iso.gram() != Q) throw domain_error("decompose: isometry of a different lattice");
    const Vec2 base{1, 0};
    const Chamber ch = kahler_chamber(d);
    const Isometry2 su = wall_reflection(d, Wall::u);
    const Isometry2 sw = wall_reflection(d, Wall::w);

    WordDecomposition out;
    Mat2 cur = iso.matrix();
    if (pair(Q, cur * base, base) < 0) {
        out.sign = -1;
        cur = -cur;
    }
    Integer potential = pair(Q, cur * base, base);
    for (;;) {
        Vec2 p = cur * base;
        Integer pu = pair(Q, p, ch.wall_u);
        Integer pw = pair(Q, p, ch.wall_w);
        if (pu == 0 || pw == 0) throw consistency_error("interior point mapped onto a wall");
        if (pu > 0 && pw > 0) break;
        Wall l = pu < 0 ? Wall::u : Wall::w;
        cur = (l == Wall::u ? su : sw).matrix() * cur;
        out.letters.push_back(l);
        Integer next = pair(Q, cur * base, base);
        if (next >= potential) throw consistency_error("chamber walk potential did not decrease");
        potential = std::move(next);
    }
    if (cur == Mat2::identity()) {
        out.residual = Residual::identity;
    } else if (cur == wall_swap(d).matrix()) {
        out.residual = Residual::swap;
    } else {
        throw consistency_error("chamber walk residual " + to_string(cur) +
                                " is not in the chamber stabilizer");
    }
    if (recompose(d, out) != iso.matrix()) throw consistency_error("decompose failed recomposition");
    return out;
}

inline WordDecomposition decompose(const Integer& d, const Mat2& m) {
    require_odd_degree(d);
    return decompose(d, Isometry2(m, gram_for_degree(d)));
}

namespace detail {

// Isometries M mapping the chamber rays onto themselves (identity or exchanged).
// Both rays have the same square, so an isometry cannot rescale them.
inline std::vector<Isometry2> ray_stabilizer(const Integer& d) {
    const Gram2 Q = gram_for_degree(d);
    const Chamber ch = chamber_geometry(d);
    if (quad(Q, ch.ray_u) != quad(Q, ch.ray_w))
        throw consistency_error("chamber rays have different squares");
    const Mat2 source = Mat2::from_columns(ch.ray_u, ch.ray_w);
    const Integer det = source.det();
    std::vector<Isometry2> out;
    for (const Mat2& target : {source, Mat2::from_columns(ch.ray_w, ch.ray_u)}) {
        Mat2 num = target * source.adjugate();
        if (num.m00 % det != 0 || num.m01 % det != 0 || num.m10 % det != 0 || num.m11 % det != 0)
            continue;
        Mat2 m{num.m00 / det, num.m01 / det, num.m10 / det, num.m11 / det};
        if (is_isometry(Q, m)) out.emplace_back(m, Q);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// Isometries of L_d mapping the Kahler chamber onto itself: {I, [[1,d],[0,-1]]}.
inline std::vector<Isometry2> chamber_stabilizer(const Integer& d) {
    require_odd_degree(d);
    return detail::ray_stabilizer(d);
}

/// Element of <p, q> up to sign, p = S0+ and q = S0-: m = sign * product of letters.
struct SignedWord {
    int sign = 1;
    std::string letters;  // over {'p', 'q'}, freely reduced
};

inline std::string to_string(const SignedWord& w) {
    return std::string(w.sign < 0 ? "-" : "+") + (w.letters.empty() ? "1" : w.letters);
}

inline Mat2 evaluate(const Integer& d, const SignedWord& w) {
    FamilyMatrices f = family_matrices(d, PellSolution(d, 1, d * d + 4, -4));
    Mat2 m = Mat2::identity();
    for (char c : w.letters) m = m * (c == 'p' ? f.s_plus : f.s_minus).matrix();
    return w.sign < 0 ? -m : m;
}

/// Rewrites a chamber-walk decomposition over p, q using s_u = -p, s_w = -qpq, swap = -q.
inline SignedWord to_signed_word(const Integer& d, const WordDecomposition& dec) {
    SignedWord out;
    out.sign = dec.sign;
    std::string raw;
    for (Wall l : dec.letters) {
        raw += l == Wall::u ? "p" : "qpq";
        out.sign = -out.sign;
    }
    if (dec.residual == Residual::swap) {
        raw += "q";
        out.sign = -out.sign;
    }
    for (char c : raw) {
        if (!out.letters.empty() && out.letters.back() == c)
            out.letters.pop_back();
        else
            out.letters.push_back(c);
    }
    if (evaluate(d, out) != recompose(d, dec)) throw consistency_error("signed word mismatch");
    return out;
}

/// The 2n alternating words of each length n = 1..max_length in p and q (plus the empty word).
inline std::vector<std::string> alternating_words(unsigned max_length) {
    std::vector<std::string> out{""};
    for (unsigned n = 1; n <= max_length; ++n)
        for (char first : {'p', 'q'}) {
            std::string w;
            for (unsigned i = 0; i < n; ++i) w.push_back((i % 2 == 0) == (first == 'p') ? 'p' : 'q');
            out.push_back(std::move(w));
        }
    return out;
}

struct GroupReport {
    Integer d;
    Integer bound;
    Mat2 s_plus;
    Mat2 s_minus;
    Mat2 r_minus;
    Mat2 s_minus_s_plus;
    bool s_plus_involution = false;
    bool s_minus_involution = false;
    bool non_commuting = false;
    bool product_relation = false;  // R0- = S0- S0+
    std::size_t brute_count = 0;
    std::vector<std::pair<Mat2, SignedWord>> brute_words;
    bool all_brute_are_signed_words = false;
    unsigned word_search_length = 20;
    bool minus_identity_is_word = false;
    std::string structure;
};

inline constexpr const char* kComputedStructure = "{+-I} x <p,q>";
inline constexpr const char* kLiteralStructure = "<p> * <q>";

inline GroupReport group_report(const Integer& d, const Integer& bound, unsigned word_search_length = 20) {
    require_odd_degree(d);
    FamilyMatrices f = family_matrices(d, PellSolution(d, 1, d * d + 4, -4));
    const Mat2 I = Mat2::identity();
    GroupReport rep;
    rep.d = d;
    rep.bound = bound;
    rep.s_plus = f.s_plus.matrix();
    rep.s_minus = f.s_minus.matrix();
    rep.r_minus = f.r_minus.matrix();
    rep.s_minus_s_plus = rep.s_minus * rep.s_plus;
    rep.s_plus_involution = rep.s_plus * rep.s_plus == I;
    rep.s_minus_involution = rep.s_minus * rep.s_minus == I;
    rep.non_commuting = rep.s_plus * rep.s_minus != rep.s_minus * rep.s_plus;
    rep.product_relation = rep.r_minus == rep.s_minus_s_plus;

    std::vector<Isometry2> brute = brute_isometries(gram_for_degree(d), bound);
    rep.brute_count = brute.size();
    rep.all_brute_are_signed_words = true;
    for (const Isometry2& iso : brute) {
        SignedWord w = to_signed_word(d, decompose(d, iso));
        if (evaluate(d, w) != iso.matrix()) rep.all_brute_are_signed_words = false;
        rep.brute_words.emplace_back(iso.matrix(), std::move(w));
    }

    rep.word_search_length = word_search_length;
    for (const std::string& letters : alternating_words(word_search_length))
        if (evaluate(d, SignedWord{1, letters}) == -I) rep.minus_identity_is_word = true;
    rep.structure = rep.minus_identity_is_word ? kLiteralStructure : kComputedStructure;
    return rep;
}

}  // namespace k3aut
