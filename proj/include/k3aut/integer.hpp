#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>

namespace k3aut {

// Expression templates off: every arithmetic result is a plain Integer value.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;

// Raised on inputs outside an operation's domain (bad d, square D, non-root, ...).
class domain_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Raised when an internally constructed object fails its own re-verification.
class consistency_error : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

inline std::string to_string(const Integer& v) { return v.str(); }

// Floor of the square root; v >= 0.
inline Integer isqrt(const Integer& v) {
    if (v < 0) throw domain_error("isqrt of negative value");
    return boost::multiprecision::sqrt(v);
}

inline bool is_square(const Integer& v) {
    if (v < 0) return false;
    Integer r = isqrt(v);
    return r * r == v;
}

// Euclidean remainder in [0, |m|).
inline Integer mod_floor(const Integer& v, const Integer& m) {
    Integer r = v % m;
    if (r < 0) r += abs(m);
    return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    return boost::multiprecision::gcd(a, b);
}

// Divides exactly or throws; used where a formula carries a /2 that must be integral.
inline Integer exact_div(const Integer& num, const Integer& den, const char* what) {
    if (den == 0 || num % den != 0)
        throw domain_error(std::string("non-integral division in ") + what);
    return num / den;
}

struct Vec2 {
    Integer x;
    Integer y;

    friend bool operator==(const Vec2&, const Vec2&) = default;
    friend bool operator<(const Vec2& l, const Vec2& r) {
        return std::tie(l.x, l.y) < std::tie(r.x, r.y);
    }
    friend Vec2 operator-(const Vec2& v) { return {-v.x, -v.y}; }
    friend Vec2 operator+(const Vec2& l, const Vec2& r) { return {l.x + r.x, l.y + r.y}; }
    friend Vec2 operator*(const Integer& k, const Vec2& v) { return {k * v.x, k * v.y}; }
};

inline std::string to_string(const Vec2& v) {
    return "(" + v.x.str() + "," + v.y.str() + ")";
}

inline std::ostream& operator<<(std::ostream& os, const Vec2& v) { return os << to_string(v); }

// Row-major 2x2 integer matrix [[m00, m01], [m10, m11]].
struct Mat2 {
    Integer m00;
    Integer m01;
    Integer m10;
    Integer m11;

    static Mat2 identity() { return {1, 0, 0, 1}; }
    static Mat2 from_columns(const Vec2& c0, const Vec2& c1) { return {c0.x, c1.x, c0.y, c1.y}; }

    Integer det() const { return m00 * m11 - m01 * m10; }
    Integer trace() const { return m00 + m11; }
    Mat2 transpose() const { return {m00, m10, m01, m11}; }
    Vec2 column(int j) const { return j == 0 ? Vec2{m00, m10} : Vec2{m01, m11}; }
    Mat2 adjugate() const { return {m11, -m01, -m10, m00}; }

    Integer max_abs_entry() const {
        Integer r = abs(m00);
        for (const Integer* e : {&m01, &m10, &m11})
            if (abs(*e) > r) r = abs(*e);
        return r;
    }

    friend bool operator==(const Mat2&, const Mat2&) = default;
    friend bool operator<(const Mat2& l, const Mat2& r) {
        return std::tie(l.m00, l.m01, l.m10, l.m11) < std::tie(r.m00, r.m01, r.m10, r.m11);
    }
    friend Mat2 operator-(const Mat2& m) { return {-m.m00, -m.m01, -m.m10, -m.m11}; }
    friend Mat2 operator*(const Mat2& l, const Mat2& r) {
        return {l.m00 * r.m00 + l.m01 * r.m10, l.m00 * r.m01 + l.m01 * r.m11,
                l.m10 * r.m00 + l.m11 * r.m10, l.m10 * r.m01 + l.m11 * r.m11};
    }
    friend Vec2 operator*(const Mat2& m, const Vec2& v) {
        return {m.m00 * v.x + m.m01 * v.y, m.m10 * v.x + m.m11 * v.y};
    }
};

inline std::string to_string(const Mat2& m) {
    return "[[" + m.m00.str() + "," + m.m01.str() + "],[" + m.m10.str() + "," + m.m11.str() +
           "]]";
}

inline std::ostream& operator<<(std::ostream& os, const Mat2& m) { return os << to_string(m); }

}  // namespace k3aut
