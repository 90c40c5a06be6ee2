#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>

namespace zetalab {

using Complex = std::complex<double>;

inline constexpr double PI = 3.141592653589793238462643383279502884;
inline constexpr double TWO_PI = 2.0 * PI;
inline constexpr double EULER_GAMMA = 0.577215664901532860606512090082402431;

// B_{2j} for j = 1..15, enough for all asymptotic series used here.
inline constexpr std::array<double, 15> BERNOULLI_2J = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

// Truncated Taylor jet: value plus derivatives up to order 3 with respect to
// one complex parameter. Enough for the second-derivative identities checked
// in the explicit-formula module (k <= 2 needs three levels).
struct Jet {
    std::array<Complex, 4> c{};  // c[j] = f^{(j)}

    static Jet constant(Complex v) {
        Jet j;
        j.c[0] = v;
        return j;
    }
    // the jet of s itself at the expansion point s0
    static Jet variable(Complex s0) {
        Jet j;
        j.c[0] = s0;
        j.c[1] = 1.0;
        return j;
    }

    Jet operator+(const Jet& o) const {
        Jet r;
        for (int i = 0; i < 4; ++i) r.c[i] = c[i] + o.c[i];
        return r;
    }
    Jet operator-(const Jet& o) const {
        Jet r;
        for (int i = 0; i < 4; ++i) r.c[i] = c[i] - o.c[i];
        return r;
    }
    Jet operator-() const {
        Jet r;
        for (int i = 0; i < 4; ++i) r.c[i] = -c[i];
        return r;
    }
    Jet operator*(const Jet& o) const {  // Leibniz
        Jet r;
        static constexpr int binom[4][4] = {
            {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
        for (int n = 0; n < 4; ++n) {
            Complex s = 0.0;
            for (int i = 0; i <= n; ++i) s += double(binom[n][i]) * c[i] * o.c[n - i];
            r.c[n] = s;
        }
        return r;
    }
    Jet operator*(Complex v) const {
        Jet r;
        for (int i = 0; i < 4; ++i) r.c[i] = c[i] * v;
        return r;
    }
    Jet operator*(double v) const { return *this * Complex(v, 0.0); }

    // Division solves f*q = g level by level.
    Jet operator/(const Jet& f) const {
        const Jet& g = *this;
        Jet q;
        q.c[0] = g.c[0] / f.c[0];
        q.c[1] = (g.c[1] - f.c[1] * q.c[0]) / f.c[0];
        q.c[2] = (g.c[2] - f.c[2] * q.c[0] - 2.0 * f.c[1] * q.c[1]) / f.c[0];
        q.c[3] = (g.c[3] - f.c[3] * q.c[0] - 3.0 * f.c[2] * q.c[1] - 3.0 * f.c[1] * q.c[2]) / f.c[0];
        return q;
    }
};

// exp(a*s) as a jet in s at s0
inline Jet jet_exp_linear(Complex a, Complex s0) {
    Jet r;
    Complex v = std::exp(a * s0);
    Complex p = 1.0;
    for (int i = 0; i < 4; ++i) {
        r.c[i] = v * p;
        p *= a;
    }
    return r;
}

// base^(-s) = exp(-s ln base) as a jet in s, base > 0
inline Jet jet_pow_negs(double base, Complex s0) {
    return jet_exp_linear(Complex(-std::log(base), 0.0), s0);
}

// Neumaier-compensated accumulator; deterministic for a fixed addend order.
struct Kahan {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct KahanComplex {
    Kahan re, im;
    void add(Complex z) {
        re.add(z.real());
        im.add(z.imag());
    }
    Complex value() const { return {re.value(), im.value()}; }
};

namespace detail {
inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                                   double b, double fa, double fm, double fb,
                                   double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int max_depth = 48) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
    return r;
}

inline double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= double(i);
    return r;
}

}  // namespace zetalab
