#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "bosemi/errors.hpp"
#include "bosemi/numeric.hpp"

namespace bosemi {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Termination policy for the series evaluators.
struct SeriesControl {
    double rel_tol = 1e-12;
    std::int64_t max_terms = 10'000'000;

    void validate() const {
        if (!(rel_tol > 0.0))
            throw domain_error("SeriesControl: rel_tol must be > 0");
        if (max_terms < 10)
            throw domain_error("SeriesControl: max_terms must be >= 10");
    }
};

namespace detail {

inline bool near_integer(double x, double tol = 1e-9) {
    return std::abs(x - std::round(x)) < tol;
}

}  // namespace detail

/// Gamma function on the real axis.
///
/// Lanczos approximation, g = 607/128 with the 14-term coefficient set
/// (Godfrey; the same set used by Numerical Recipes 3rd ed. gammln),
/// |relative error| < 1e-13 over the real axis; arguments below 1/2 go
/// through the reflection formula. Poles (non-positive integers) are a
/// domain error.
inline double gamma_fn(double x) {
    if (x <= 0.0 && x == std::floor(x))
        throw domain_error("gamma_fn: pole at non-positive integer argument");
    if (x < 0.5)
        return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));

    static constexpr double cof[14] = {
        57.1562356658629235,     -59.5979603554754912,
        14.1360979747417471,     -0.491913816097620199,
        0.339946499848118887e-4, 0.465236289270485756e-4,
        -0.983744753048795646e-4, 0.158088703224912494e-3,
        -0.210264441724104883e-3, 0.217439618115212643e-3,
        -0.164318106536763890e-3, 0.844182239838527433e-4,
        -0.261908384015814087e-4, 0.368991826595316234e-5};

    double ser = 0.999999999999997092;
    double y = x;
    for (const double c : cof) ser += c / ++y;
    const double tmp = x + 5.24218750000000000;
    // sqrt(2*pi) * tmp^(x+1/2) * exp(-tmp) * ser / x
    return 2.5066282746310005 * std::pow(tmp, x + 0.5) * std::exp(-tmp) * ser / x;
}

namespace detail {

// Euler-Maclaurin tail of sum_{n>=N} n^{-s}; valid for s > -13, s != 1.
// The cancellation between the partial sum and the N^{1-s}/(s-1) term
// ruins relative accuracy for s well below 1/2, so callers keep s >= 1/2
// and reach smaller arguments through the functional equation.
inline double zeta_euler_maclaurin(double s) {
    constexpr int N = 24;
    // B_2 .. B_16
    static constexpr double bern[8] = {
        1.0 / 6.0,   -1.0 / 30.0,    1.0 / 42.0, -1.0 / 30.0,
        5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0,  -3617.0 / 510.0};

    KahanSum acc;
    for (int n = 1; n < N; ++n) acc.add(std::pow(static_cast<double>(n), -s));
    acc.add(std::pow(static_cast<double>(N), 1.0 - s) / (s - 1.0));
    acc.add(0.5 * std::pow(static_cast<double>(N), -s));

    // B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    double poch = s;                                    // rising factorial, 2k-1 factors
    double fact = 2.0;                                  // (2k)!
    double npow = std::pow(static_cast<double>(N), -s - 1.0);
    for (int k = 1; k <= 8; ++k) {
        acc.add(bern[k - 1] / fact * poch * npow);
        poch *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        npow /= static_cast<double>(N) * N;
    }
    return acc.value();
}

// Riemann zeta on all of R \ {1}. Arguments below 1/2 use the functional
// equation zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s); the
// removable 0*inf at s=0 is handled by a short Taylor expansion.
inline double zeta_any(double s) {
    if (s == 1.0) throw domain_error("zeta: pole at s = 1");
    if (s >= 0.5) return zeta_euler_maclaurin(s);
    if (std::abs(s) < 1e-6) {
        // zeta(s) = -1/2 - s*ln(2*pi)/2 + O(s^2)
        return -0.5 - 0.5 * std::log(2.0 * kPi) * s;
    }
    return std::pow(2.0, s) * std::pow(kPi, s - 1.0) * std::sin(0.5 * kPi * s) *
           gamma_fn(1.0 - s) * zeta_euler_maclaurin(1.0 - s);
}

}  // namespace detail

/// Riemann zeta for s > 1 (the only regime the public contracts need).
inline double zeta(double s) {
    if (!(s > 1.0)) throw domain_error("zeta: requires s > 1");
    return detail::zeta_euler_maclaurin(s);
}

namespace detail {

// Direct compensated summation of sum_{n>=1} e^{-nv}/n^gamma, for |e^-v|
// bounded away from 1. Terms decrease monotonically in magnitude.
inline std::complex<double> bose_F_direct(double gamma, std::complex<double> v,
                                          const SeriesControl& ctl) {
    const std::complex<double> z = std::exp(-v);
    // |tail after term n| <= |term_n| * r/(1-r): terms shrink at least
    // geometrically with ratio r = |z| once n^-gamma is decreasing
    const double r = std::abs(z);
    const double tail_factor = r / (1.0 - r);
    std::complex<double> zn = 1.0;
    KahanSum re, im;
    for (std::int64_t n = 1; n <= ctl.max_terms; ++n) {
        zn *= z;
        const std::complex<double> term = zn * std::pow(static_cast<double>(n), -gamma);
        re.add(term.real());
        im.add(term.imag());
        const double mag = std::abs(std::complex<double>(re.value(), im.value()));
        if (std::abs(term) * tail_factor <= ctl.rel_tol * mag)
            return {re.value(), im.value()};
    }
    throw convergence_error("bose_einstein_F: direct series hit max_terms",
                            std::abs(std::complex<double>(re.value(), im.value())));
}

// Small-|v| branch: F(gamma,v) = Gamma(1-gamma) v^(gamma-1)
//                                + sum_{n>=0} zeta(gamma-n) (-v)^n / n!,
// convergent for |v| < 2*pi; only the non-integer-gamma branch is
// implemented (see the model module's non-goals for the integer case).
inline std::complex<double> bose_F_expansion(double gamma, std::complex<double> v,
                                             const SeriesControl& ctl) {
    if (near_integer(gamma))
        throw unsupported_branch_error(
            "bose_einstein_F: integer-order small-v expansion branch is not implemented");
    std::complex<double> acc = gamma_fn(1.0 - gamma) * std::pow(v, gamma - 1.0);
    std::complex<double> pw = 1.0;  // (-v)^n / n!
    int small_streak = 0;
    for (int n = 0; n <= 60; ++n) {
        const std::complex<double> term = zeta_any(gamma - n) * pw;
        acc += term;
        pw *= -v / static_cast<double>(n + 1);
        if (std::abs(term) <= ctl.rel_tol * std::abs(acc)) {
            if (++small_streak >= 2) return acc;
        } else {
            small_streak = 0;
        }
    }
    throw convergence_error("bose_einstein_F: expansion did not settle (|v| too large?)",
                            std::abs(acc));
}

// Oscillatory branch for |e^-v| ~ 1: half-period block sums fed through the
// incremental Euler transformation (Numerical Recipes eulsum, complex form),
// with compensated accumulation inside each block. The error estimate is the
// sum of the last three partial-sum deltas.
inline std::complex<double> bose_F_euler(double gamma, std::complex<double> v,
                                         const SeriesControl& ctl) {
    const double rev = v.real();
    double theta = std::fmod(std::abs(v.imag()), 2.0 * kPi);
    if (theta > kPi) theta = 2.0 * kPi - theta;
    if (theta < 1e-9) {
        // effectively a real ratio; fall back to the direct sum
        return bose_F_direct(gamma, v, ctl);
    }
    const std::int64_t block_len =
        std::max<std::int64_t>(1, std::llround(kPi / theta));

    std::vector<std::complex<double>> wksp;
    wksp.reserve(64);
    std::complex<double> sum = 0.0;
    double d1 = 0, d2 = 0, d3 = 0;
    std::int64_t n = 1;
    const double imv = v.imag();
    for (int j = 0; j < 4096; ++j) {
        KahanSum bre, bim;
        for (std::int64_t i = 0; i < block_len; ++i, ++n) {
            if (n > ctl.max_terms)
                throw convergence_error("bose_einstein_F: oscillatory series hit max_terms",
                                        std::abs(sum));
            const double r = std::exp(-rev * n) * std::pow(static_cast<double>(n), -gamma);
            const double ph = -imv * n;
            bre.add(r * std::cos(ph));
            bim.add(r * std::sin(ph));
        }
        const std::complex<double> block(bre.value(), bim.value());

        const std::complex<double> prev_sum = sum;
        if (j == 0) {
            wksp.push_back(block);
            sum = 0.5 * block;
        } else {
            std::complex<double> tmp = wksp[0];
            wksp[0] = block;
            for (std::size_t m = 0; m + 1 < wksp.size(); ++m) {
                const std::complex<double> dum = wksp[m + 1];
                wksp[m + 1] = 0.5 * (wksp[m] + tmp);
                tmp = dum;
            }
            const std::complex<double> next = 0.5 * (wksp.back() + tmp);
            if (std::abs(next) <= std::abs(wksp.back())) {
                wksp.push_back(next);
                sum += 0.5 * next;
            } else {
                sum += next;
            }
        }
        d3 = d2;
        d2 = d1;
        d1 = std::abs(sum - prev_sum);
        if (j >= 3 && d1 + d2 + d3 <= ctl.rel_tol * std::abs(sum)) return sum;
    }
    throw convergence_error("bose_einstein_F: Euler transformation did not converge",
                            std::abs(sum));
}

}  // namespace detail

/// Bose-Einstein integral function F(gamma, v) = sum_{n>=1} e^{-nv} / n^gamma
/// for Re v >= 0. Dispatch: exact zeta at v=0; the analytic small-v expansion
/// for |v| < 0.1 (non-integer gamma); direct summation while |e^-v| <= 0.98;
/// Euler-accelerated half-period blocks on and near the unit circle.
inline std::complex<double> bose_einstein_F(double gamma, std::complex<double> v,
                                            const SeriesControl& ctl = {}) {
    ctl.validate();
    if (v.real() < 0.0)
        throw domain_error("bose_einstein_F: requires Re v >= 0");
    if (v.real() == 0.0) {
        if (!(gamma > 1.0))
            throw domain_error("bose_einstein_F: requires gamma > 1 when Re v = 0");
    } else if (!(gamma > 0.0)) {
        throw domain_error("bose_einstein_F: requires gamma > 0 when Re v > 0");
    }
    if (v == std::complex<double>(0.0, 0.0)) return zeta(gamma);

    if (std::abs(v) < 0.1) {
        if (!detail::near_integer(gamma)) return detail::bose_F_expansion(gamma, v, ctl);
        if (std::abs(v) < 1e-4)
            throw unsupported_branch_error(
                "bose_einstein_F: integer gamma with |v| < 1e-4 needs the unimplemented "
                "logarithmic expansion branch");
        // integer gamma, moderate |v|: the series paths below still converge
    }
    if (std::exp(-v.real()) <= 0.98) return detail::bose_F_direct(gamma, v, ctl);
    return detail::bose_F_euler(gamma, v, ctl);
}

/// Bose-Einstein integral g_v(z) = sum_{n>=1} z^n / n^v for z in (0,1].
/// g_v(1) = zeta(v) needs v > 1; it diverges otherwise.
inline double polylog_g(double v, double z, const SeriesControl& ctl = {}) {
    ctl.validate();
    if (!(z > 0.0) || z > 1.0)
        throw domain_error("polylog_g: requires z in (0, 1]");
    if (z == 1.0) {
        if (!(v > 1.0))
            throw divergence_error("polylog_g: g_v(1) diverges for v <= 1");
        return zeta(v);
    }
    KahanSum acc;
    double zn = 1.0;
    for (std::int64_t n = 1; n <= ctl.max_terms; ++n) {
        zn *= z;
        const double term = zn * std::pow(static_cast<double>(n), -v);
        acc.add(term);
        // geometric tail bound; for v < 0 the term ratio still decreases
        // toward z, so the current ratio bounds everything that follows
        const double ratio =
            v >= 0.0 ? z : z * std::pow(1.0 + 1.0 / static_cast<double>(n), -v);
        if (ratio < 1.0 &&
            term * ratio / (1.0 - ratio) <= ctl.rel_tol * std::abs(acc.value()))
            return acc.value();
    }
    throw convergence_error("polylog_g: series hit max_terms", acc.value());
}

}  // namespace bosemi
