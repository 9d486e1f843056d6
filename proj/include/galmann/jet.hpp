#pragma once

#include <cmath>
#include <ostream>

namespace galmann {

// Truncated Taylor jet: the value of a scalar function of one variable
// together with its first three derivatives at a point. Arithmetic obeys
// the Leibniz and chain rules exactly through order three, so curve
// derivatives never come from finite differencing.
struct Jet3 {
    double f = 0.0;    // value
    double df = 0.0;   // first derivative
    double d2f = 0.0;  // second derivative
    double d3f = 0.0;  // third derivative

    constexpr Jet3() = default;
    constexpr Jet3(double value) : f(value) {}
    constexpr Jet3(double value, double d1, double d2 = 0.0, double d3 = 0.0)
        : f(value), df(d1), d2f(d2), d3f(d3) {}

    // Jet of the identity map at t: (t, 1, 0, 0).
    static constexpr Jet3 variable(double t) { return {t, 1.0, 0.0, 0.0}; }
    static constexpr Jet3 constant(double c) { return {c, 0.0, 0.0, 0.0}; }

    friend constexpr bool operator==(const Jet3&, const Jet3&) = default;
};

constexpr Jet3 operator+(const Jet3& a) { return a; }
constexpr Jet3 operator-(const Jet3& a) { return {-a.f, -a.df, -a.d2f, -a.d3f}; }

constexpr Jet3 operator+(const Jet3& a, const Jet3& b) {
    return {a.f + b.f, a.df + b.df, a.d2f + b.d2f, a.d3f + b.d3f};
}

constexpr Jet3 operator-(const Jet3& a, const Jet3& b) {
    return {a.f - b.f, a.df - b.df, a.d2f - b.d2f, a.d3f - b.d3f};
}

// Leibniz rule: (fg)''' = f'''g + 3f''g' + 3f'g'' + fg'''.
constexpr Jet3 operator*(const Jet3& a, const Jet3& b) {
    return {a.f * b.f,
            a.f * b.df + a.df * b.f,
            a.f * b.d2f + 2.0 * a.df * b.df + a.d2f * b.f,
            a.f * b.d3f + 3.0 * a.df * b.d2f + 3.0 * a.d2f * b.df + a.d3f * b.f};
}

// Quotient q = a/b solved order by order from a = q*b. Pre: b.f != 0.
constexpr Jet3 operator/(const Jet3& a, const Jet3& b) {
    const double inv = 1.0 / b.f;
    const double q0 = a.f * inv;
    const double q1 = (a.df - q0 * b.df) * inv;
    const double q2 = (a.d2f - q0 * b.d2f - 2.0 * q1 * b.df) * inv;
    const double q3 = (a.d3f - q0 * b.d3f - 3.0 * q1 * b.d2f - 3.0 * q2 * b.df) * inv;
    return {q0, q1, q2, q3};
}

constexpr Jet3 operator+(const Jet3& a, double c) { return {a.f + c, a.df, a.d2f, a.d3f}; }
constexpr Jet3 operator+(double c, const Jet3& a) { return a + c; }
constexpr Jet3 operator-(const Jet3& a, double c) { return {a.f - c, a.df, a.d2f, a.d3f}; }
constexpr Jet3 operator-(double c, const Jet3& a) { return {c - a.f, -a.df, -a.d2f, -a.d3f}; }
constexpr Jet3 operator*(const Jet3& a, double c) { return {a.f * c, a.df * c, a.d2f * c, a.d3f * c}; }
constexpr Jet3 operator*(double c, const Jet3& a) { return a * c; }
constexpr Jet3 operator/(const Jet3& a, double c) { return a * (1.0 / c); }
constexpr Jet3 operator/(double c, const Jet3& a) { return Jet3::constant(c) / a; }

// Chain rule through order three (Faa di Bruno). f0..f3 are the outer
// derivatives evaluated at g.f.
constexpr Jet3 compose(double f0, double f1, double f2, double f3, const Jet3& g) {
    return {f0,
            f1 * g.df,
            f2 * g.df * g.df + f1 * g.d2f,
            f3 * g.df * g.df * g.df + 3.0 * f2 * g.df * g.d2f + f1 * g.d3f};
}

inline Jet3 sin(const Jet3& x) {
    const double s = std::sin(x.f), c = std::cos(x.f);
    return compose(s, c, -s, -c, x);
}

inline Jet3 cos(const Jet3& x) {
    const double s = std::sin(x.f), c = std::cos(x.f);
    return compose(c, -s, -c, s, x);
}

// d(tan) = 1 + tan^2; higher orders follow from that identity.
inline Jet3 tan(const Jet3& x) {
    const double v = std::tan(x.f);
    const double s = 1.0 + v * v;
    return compose(v, s, 2.0 * v * s, 2.0 * s * (1.0 + 3.0 * v * v), x);
}

inline Jet3 exp(const Jet3& x) {
    const double e = std::exp(x.f);
    return compose(e, e, e, e, x);
}

// Pre: x.f > 0.
inline Jet3 log(const Jet3& x) {
    const double inv = 1.0 / x.f;
    return compose(std::log(x.f), inv, -inv * inv, 2.0 * inv * inv * inv, x);
}

// Pre: x.f > 0.
inline Jet3 sqrt(const Jet3& x) {
    const double r = std::sqrt(x.f);
    const double d1 = 0.5 / r;
    const double d2 = -0.25 / (r * x.f);
    const double d3 = 0.375 / (r * x.f * x.f);
    return compose(r, d1, d2, d3, x);
}

inline Jet3 sinh(const Jet3& x) {
    const double s = std::sinh(x.f), c = std::cosh(x.f);
    return compose(s, c, s, c, x);
}

inline Jet3 cosh(const Jet3& x) {
    const double s = std::sinh(x.f), c = std::cosh(x.f);
    return compose(c, s, c, s, x);
}

// d(tanh) = 1 - tanh^2.
inline Jet3 tanh(const Jet3& x) {
    const double v = std::tanh(x.f);
    const double s = 1.0 - v * v;
    return compose(v, s, -2.0 * v * s, s * (6.0 * v * v - 2.0), x);
}

// Pre: x.f != 0 (the jet of |x| does not exist at 0).
inline Jet3 abs(const Jet3& x) {
    const double sign = x.f > 0.0 ? 1.0 : -1.0;
    return compose(std::abs(x.f), sign, 0.0, 0.0, x);
}

// Integer power, valid for any base (negative included). Pre: not both
// x.f == 0 and n < 0. Zero derivative coefficients are suppressed before
// touching std::pow so x.f == 0 never produces inf * 0.
inline Jet3 pow_integer(const Jet3& x, long long n) {
    if (n == 0) return Jet3::constant(1.0);
    const double c1 = static_cast<double>(n);
    const double c2 = c1 * static_cast<double>(n - 1);
    const double c3 = c2 * static_cast<double>(n - 2);
    const double u = x.f;
    const double p0 = std::pow(u, static_cast<double>(n));
    const double p1 = c1 != 0.0 ? c1 * std::pow(u, static_cast<double>(n - 1)) : 0.0;
    const double p2 = c2 != 0.0 ? c2 * std::pow(u, static_cast<double>(n - 2)) : 0.0;
    const double p3 = c3 != 0.0 ? c3 * std::pow(u, static_cast<double>(n - 3)) : 0.0;
    return compose(p0, p1, p2, p3, x);
}

// Real power by the power rule. Pre: x.f > 0.
inline Jet3 pow_real(const Jet3& x, double p) {
    const double u = x.f;
    const double p0 = std::pow(u, p);
    const double p1 = p * std::pow(u, p - 1.0);
    const double p2 = p * (p - 1.0) * std::pow(u, p - 2.0);
    const double p3 = p * (p - 1.0) * (p - 2.0) * std::pow(u, p - 3.0);
    return compose(p0, p1, p2, p3, x);
}

inline std::ostream& operator<<(std::ostream& out, const Jet3& j) {
    return out << "(" << j.f << ", " << j.df << ", " << j.d2f << ", " << j.d3f << ")";
}

}  // namespace galmann
