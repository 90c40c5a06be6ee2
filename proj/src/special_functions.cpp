#include "zetalab/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "zetalab/mangoldt.hpp"

namespace zetalab {
namespace {

const std::vector<double>& ln_table() {
    static const std::vector<double> tab = [] {
        std::vector<double> v(1 << 16, 0.0);
        for (std::size_t n = 1; n < v.size(); ++n) v[n] = std::log(double(n));
        return v;
    }();
    return tab;
}

double ln_n(std::uint64_t n) {
    const auto& t = ln_table();
    return n < t.size() ? t[n] : std::log(double(n));
}

constexpr int EM_MAX_J = 14;

double em_coeff(int j) { return BERNOULLI_2J[j - 1] / factorial(2 * j); }

// One Euler-Maclaurin pass at fixed N. Sets ok when the classical remainder
// bound |next term| * |s+2j+1| / (sigma+2j+1) drops below tol.
Complex em_fixed_scalar(Complex s, std::uint64_t N, double tol, bool& ok) {
    KahanComplex sum;
    for (std::uint64_t n = 1; n < N; ++n) sum.add(std::exp(-s * ln_n(n)));
    Complex Npow = std::exp(-s * std::log(double(N)));
    Complex acc = sum.value() + Npow * double(N) / (s - 1.0) + 0.5 * Npow;
    Complex poch = s;
    double Nfac = 1.0 / double(N);
    ok = false;
    for (int j = 1; j <= EM_MAX_J; ++j) {
        acc += poch * Npow * (em_coeff(j) * Nfac);
        Complex poch_next = poch * (s + double(2 * j - 1)) * (s + double(2 * j));
        double Nfac_next = Nfac / (double(N) * double(N));
        double tnext = std::abs(poch_next * Npow) * std::abs(em_coeff(j + 1)) * Nfac_next;
        double bound = tnext * std::abs(s + double(2 * j + 1)) /
                       std::max(s.real() + double(2 * j + 1), 0.5);
        if (bound <= tol) {
            ok = true;
            return acc;
        }
        poch = poch_next;
        Nfac = Nfac_next;
    }
    return acc;
}

Jet em_fixed_jet(Complex s, std::uint64_t N, double tol, bool& ok) {
    std::array<KahanComplex, 4> sum;
    for (std::uint64_t n = 1; n < N; ++n) {
        Jet t = jet_pow_negs(double(n), s);
        for (int i = 0; i < 4; ++i) sum[i].add(t.c[i]);
    }
    Jet S = Jet::variable(s);
    Jet Npow = jet_pow_negs(double(N), s);
    Jet acc;
    for (int i = 0; i < 4; ++i) acc.c[i] = sum[i].value();
    acc = acc + (Npow * double(N)) / (S - Jet::constant(1.0)) + Npow * 0.5;
    Jet poch = S;
    double Nfac = 1.0 / double(N);
    ok = false;
    for (int j = 1; j <= EM_MAX_J; ++j) {
        acc = acc + poch * Npow * (em_coeff(j) * Nfac);
        Jet poch_next = poch * (S + Jet::constant(double(2 * j - 1))) *
                        (S + Jet::constant(double(2 * j)));
        double Nfac_next = Nfac / (double(N) * double(N));
        double tnext =
            std::abs(poch_next.c[0] * Npow.c[0]) * std::abs(em_coeff(j + 1)) * Nfac_next;
        double bound = tnext * std::abs(s + double(2 * j + 1)) /
                       std::max(s.real() + double(2 * j + 1), 0.5);
        if (bound <= tol) {
            ok = true;
            return acc;
        }
        poch = poch_next;
        Nfac = Nfac_next;
    }
    return acc;
}

void check_zeta_args(Complex s, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
    if (s == Complex(1.0, 0.0)) throw std::domain_error("zeta pole at s = 1");
}

std::uint64_t em_start_n(double abs_t) {
    return std::max<std::uint64_t>(10, std::uint64_t(std::ceil(2.0 * abs_t)));
}

constexpr std::uint64_t EM_N_CAP = 1ull << 22;

// RH-true envelope for |psi(u) - u|, valid from u = 74 on; drives the
// stopping rule of the smooth-tail series.
double tail_fluct_bound(double N, Complex s) {
    double a = s.real() - 0.5;
    double lg = std::log(N);
    double base = std::pow(N, 0.5 - s.real());
    return base / (8.0 * PI) *
           (lg * lg + std::abs(s) * (lg * lg / a + 2.0 * lg / (a * a) + 2.0 / (a * a * a)));
}

Complex ipow(Complex base, int e) {
    Complex r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

void check_gamma_pole(Complex z) {
    if (z.imag() == 0.0 && z.real() < 0.5) {
        double r = std::round(z.real());
        if (r <= 0.0 && std::abs(z.real() - r) < 1e-12)
            throw std::domain_error("pole at non-positive integer");
    }
}

// asymptotic series at Re w >= 14
Complex polygamma_asym(int m, Complex w) {
    Complex iw = 1.0 / w;
    Complex iw2 = iw * iw;
    if (m == 0) {
        Complex acc = std::log(w) - 0.5 * iw;
        Complex p = iw2;
        for (int j = 1; j <= 12; ++j) {
            acc -= BERNOULLI_2J[j - 1] / (2.0 * j) * p;
            p *= iw2;
        }
        return acc;
    }
    Complex wm = ipow(iw, m);
    Complex acc = factorial(m - 1) * wm + 0.5 * factorial(m) * wm * iw;
    Complex p = wm * iw2;
    for (int j = 1; j <= 12; ++j) {
        acc += BERNOULLI_2J[j - 1] * (factorial(2 * j + m - 1) / factorial(2 * j)) * p;
        p *= iw2;
    }
    return (m % 2 == 1) ? acc : -acc;
}

}  // namespace

Complex zeta(ComplexPoint sp, double tol) {
    Complex s = sp.value();
    check_zeta_args(s, tol);
    for (std::uint64_t N = em_start_n(std::abs(sp.t)); N <= EM_N_CAP; N *= 2) {
        bool ok = false;
        Complex v = em_fixed_scalar(s, N, tol, ok);
        if (ok) return v;
    }
    throw std::runtime_error("zeta: tolerance unreachable at working precision");
}

Jet zeta_jet(Complex s, double tol) {
    check_zeta_args(s, tol);
    for (std::uint64_t N = em_start_n(std::abs(s.imag())); N <= EM_N_CAP; N *= 2) {
        bool ok = false;
        Jet v = em_fixed_jet(s, N, tol, ok);
        if (ok) return v;
    }
    throw std::runtime_error("zeta_jet: tolerance unreachable at working precision");
}

Complex log_deriv_zeta_partial(Complex s, std::uint64_t N) {
    auto table = shared_mangoldt(N);
    KahanComplex sum;
    std::size_t hi = table->upper_index(N);
    for (std::size_t i = 0; i < hi; ++i) {
        const auto& e = table->entries[i];
        sum.add(e.log_p * std::exp(-s * ln_n(e.n)));
    }
    return -sum.value();
}

Complex log_deriv_zeta_series(ComplexPoint sp, double tol, double margin) {
    if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
    if (!(sp.sigma > 1.0 + margin))
        throw std::domain_error("log_deriv_zeta_series needs sigma > 1 + margin");
    Complex s = sp.value();
    std::uint64_t N = 1ull << 12;
    const std::uint64_t cap = 1ull << 26;
    while (tail_fluct_bound(double(N), s) > tol) {
        if (N >= cap)
            throw std::runtime_error(
                "log_deriv_zeta_series: tail bound cannot reach tolerance at sane table size");
        N <<= 1;
    }
    Complex partial = log_deriv_zeta_partial(s, N);
    Complex smooth = std::exp((1.0 - s) * std::log(double(N))) / (s - 1.0);
    return partial - smooth;
}

Jet log_deriv_zeta_ratio(Complex s, double tol) {
    Jet z = zeta_jet(s, tol);
    Jet num;
    num.c[0] = z.c[1];
    num.c[1] = z.c[2];
    num.c[2] = z.c[3];
    Jet q = num / z;
    q.c[3] = 0.0;
    return q;
}

Complex polygamma(int order, Complex z) {
    if (order < 0 || order > 3) throw std::invalid_argument("polygamma order must be 0..3");
    check_gamma_pole(z);
    Complex w = z;
    Complex sub = 0.0;
    while (std::abs(w) < 14.0 || w.real() < 0.5) {
        sub += ipow(1.0 / w, order + 1);
        w += 1.0;
    }
    double sign = (order % 2 == 0) ? 1.0 : -1.0;
    return polygamma_asym(order, w) - sign * factorial(order) * sub;
}

Complex digamma(Complex z) { return polygamma(0, z); }

Complex log_gamma(Complex z) {
    if (!(z.real() > 0.0)) throw std::domain_error("log_gamma needs Re z > 0");
    Complex w = z;
    Complex corr = 0.0;
    while (std::abs(w) < 12.0 || w.real() < 0.5) {
        corr += std::log(w);
        w += 1.0;
    }
    Complex acc = (w - 0.5) * std::log(w) - w + 0.5 * std::log(TWO_PI);
    Complex iw = 1.0 / w;
    Complex iw2 = iw * iw;
    Complex p = iw;
    for (int j = 1; j <= 12; ++j) {
        acc += BERNOULLI_2J[j - 1] / double((2 * j) * (2 * j - 1)) * p;
        p *= iw2;
    }
    return acc - corr;
}

double riemann_siegel_theta(double t) {
    return log_gamma(Complex(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(PI);
}

double riemann_siegel_theta_deriv(double t) {
    return 0.5 * digamma(Complex(0.25, 0.5 * t)).real() - 0.5 * std::log(PI);
}

double rs_psi(double p) {
    auto sinc = [](double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; };
    double q1 = p - 0.25;
    if (std::abs(q1) < 0.125) {
        double a = TWO_PI * q1 * (q1 - 0.5);
        return sinc(a) * (q1 - 0.5) / (-sinc(TWO_PI * q1));
    }
    double q3 = p - 0.75;
    if (std::abs(q3) < 0.125) {
        double a = TWO_PI * q3 * (q3 + 0.5);
        return sinc(a) * (q3 + 0.5) / sinc(TWO_PI * q3);
    }
    return std::cos(TWO_PI * (p * p - p - 0.0625)) / std::cos(TWO_PI * p);
}

double riemann_siegel_Z(double t) {
    if (t < 10.0) throw std::domain_error("riemann_siegel_Z needs t >= 10");
    double tau = std::sqrt(t / TWO_PI);
    auto m = std::uint64_t(std::floor(tau));
    double p = tau - double(m);
    double th = riemann_siegel_theta(t);
    Kahan acc;
    for (std::uint64_t n = 1; n <= m; ++n)
        acc.add(std::cos(th - t * ln_n(n)) / std::sqrt(double(n)));
    double sign = (m % 2 == 0) ? -1.0 : 1.0;
    return 2.0 * acc.value() + sign * std::pow(t / TWO_PI, -0.25) * rs_psi(p);
}

double riemann_siegel_error_envelope(double t) { return 2.0 * std::pow(t / TWO_PI, -0.75); }

ZValue z_eval(double t) {
    ZValue r;
    if (t <= 4000.0) {
        double th = riemann_siegel_theta(t);
        Complex z = zeta(ComplexPoint{0.5, t}, 1e-11);
        r.value = (std::exp(Complex(0.0, th)) * z).real();
        r.envelope = 1e-9;
    } else {
        r.value = riemann_siegel_Z(t);
        r.envelope = riemann_siegel_error_envelope(t);
    }
    r.sign_reliable = std::abs(r.value) > r.envelope;
    return r;
}

double z_function(double t) { return z_eval(t).value; }

}  // namespace zetalab
