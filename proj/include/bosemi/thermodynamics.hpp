#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bosemi/errors.hpp"
#include "bosemi/model.hpp"
#include "bosemi/numeric.hpp"
#include "bosemi/special_functions.hpp"

namespace bosemi {

namespace detail {

// Bose factor 1/(e^x - 1) from the positive exponent x = beta*(eps - mu).
// expm1 below x=30; the log-space form above, which underflows cleanly to 0
// for x beyond ~745 instead of overflowing.
inline double bose_from_gap(double x) {
    if (!(x > 0.0)) throw domain_error("bose occupation: requires eps > mu");
    if (x <= 30.0) return 1.0 / std::expm1(x);
    const double e = std::exp(-x);
    return e / (1.0 - e);
}

}  // namespace detail

/// Mean Bose occupation 1/(e^{beta(eps-mu)} - 1); mu must lie strictly
/// below eps.
inline double occupation(double eps, double beta, double mu) {
    if (!(beta > 0.0)) throw domain_error("occupation: requires beta > 0");
    if (!(mu < eps)) throw domain_error("occupation: requires mu < eps");
    return detail::bose_from_gap(beta * (eps - mu));
}

/// Entropy of a single bosonic mode with mean occupation n:
/// (1+n)ln(1+n) - n ln n, with 0 ln 0 := 0. Written in a form stable for
/// both n -> 0 and n -> inf.
inline double bose_mode_entropy(double n) {
    if (n < 0.0) throw domain_error("bose_mode_entropy: occupation must be >= 0");
    if (n == 0.0) return 0.0;
    return n * std::log1p(1.0 / n) + std::log1p(n);
}

/// Solved grand-canonical state of a hopping model at (beta, mu).
///
/// mu always sits strictly below eps_min; mu_gap stores eps_min - mu exactly,
/// which matters when the gap is many orders below |eps_min| (deep in the
/// condensed regime) and the rounded mu alone cannot reproduce occ[0].
struct GrandCanonicalState {
    HoppingModel model;
    double beta = 0.0;
    double mu = 0.0;
    std::vector<double> occ;  // occ[m] = Bose(eps(k_m) - mu)
    double n_avg = 0.0;       // (1/L) sum occ
    double N0 = 0.0;          // occ[0]
    double eps_min = 0.0;
    double mu_gap = 0.0;      // eps_min - mu, exact
    DispersionTable table;
};

/// Solves mu so the average density matches n_target, by bisection on
/// ln(eps_min - mu); the density is strictly monotone in mu, and the log
/// variable keeps resolution near the stiff mu -> eps_min edge.
inline GrandCanonicalState solve_mu(const HoppingModel& model, double beta,
                                    double n_target, double tol = 1e-12) {
    if (!(beta > 0.0)) throw domain_error("solve_mu: requires beta > 0");
    if (!(n_target > 0.0)) throw domain_error("solve_mu: requires n_target > 0");
    if (!(tol > 0.0)) throw domain_error("solve_mu: requires tol > 0");

    DispersionTable tab = dispersion_table(model);
    const int L = model.L;
    const double eps_min = *std::min_element(tab.eps.begin(), tab.eps.end());
    std::vector<double> gap(L);
    for (int m = 0; m < L; ++m) gap[m] = tab.eps[m] - eps_min;

    const auto density = [&](double y) {
        KahanSum acc;
        for (int m = 0; m < L; ++m) acc.add(detail::bose_from_gap(beta * (gap[m] + y)));
        return acc.value() / L;
    };

    // Bracket: at y = 1/(4 beta n L) the k=0 mode alone already overshoots
    // the target; stretch y upward until the density drops below it.
    double y_lo = std::min(1.0, 1.0 / (4.0 * beta * n_target * L));
    int guard = 0;
    while (density(y_lo) < n_target) {
        y_lo *= 0.25;
        if (++guard > 2000 || y_lo < 1e-290)
            throw convergence_error("solve_mu: failed to bracket from below", y_lo);
    }
    double y_hi = std::max(2.0 * y_lo, 1.0);
    guard = 0;
    while (density(y_hi) > n_target) {
        y_hi *= 4.0;
        if (++guard > 2000)
            throw convergence_error("solve_mu: failed to bracket from above", y_hi);
    }

    double s_lo = std::log(y_lo), s_hi = std::log(y_hi);
    double y = y_lo, n = density(y_lo);
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
        const double s_mid = 0.5 * (s_lo + s_hi);
        y = std::exp(s_mid);
        n = density(y);
        if (std::abs(n - n_target) <= tol * n_target) {
            converged = true;
            break;
        }
        (n > n_target ? s_lo : s_hi) = s_mid;
    }
    if (!converged)
        throw convergence_error("solve_mu: bisection cap (200) exceeded", n);

    GrandCanonicalState st;
    st.model = model;
    st.beta = beta;
    st.eps_min = eps_min;
    st.mu_gap = y;
    st.mu = eps_min - y;
    st.occ.resize(L);
    KahanSum acc;
    for (int m = 0; m < L; ++m) {
        st.occ[m] = detail::bose_from_gap(beta * (gap[m] + y));
        acc.add(st.occ[m]);
    }
    st.n_avg = acc.value() / L;
    st.N0 = st.occ[0];
    st.table = std::move(tab);
    return st;
}

/// Finite-size chemical-potential correction below T_C:
/// delta_mu = -T ln(1 + 1/N0).
inline double delta_mu(double T, double N0) {
    if (!(T > 0.0)) throw domain_error("delta_mu: requires T > 0");
    if (!(N0 > 0.0)) throw domain_error("delta_mu: requires N0 > 0");
    return -T * std::log1p(1.0 / N0);
}

enum class TcMethod { ClosedForm, Quadrature };

inline const char* to_string(TcMethod m) {
    return m == TcMethod::ClosedForm ? "closed-form" : "quadrature";
}

/// BEC transition temperature; Tc > 0, beta_c = 1/Tc.
struct TcResult {
    double Tc = 0.0;
    double beta_c = 0.0;
    TcMethod method = TcMethod::ClosedForm;
};

/// Infinite-range model: T_C = t / ln(1 + 1/n), exactly.
inline TcResult tc_infinite_range(double t, double n) {
    if (!(t > 0.0)) throw domain_error("tc_infinite_range: requires t > 0");
    if (!(n > 0.0)) throw domain_error("tc_infinite_range: requires n > 0");
    const double beta_c = std::log1p(1.0 / n) / t;
    return {1.0 / beta_c, beta_c, TcMethod::ClosedForm};
}

namespace detail {

// Thermodynamic-limit power-law dispersion with the zeta coefficients and
// Gamma(1-gamma) cached, plus a cancellation-free eps(k) - eps(0) for the
// small-k branch where the two values agree to ~gamma-1 digits.
class ThermoDispersion {
public:
    ThermoDispersion(double gamma, double t) : gamma_(gamma), t_(t) {
        if (near_integer(gamma))
            throw unsupported_branch_error(
                "ThermoDispersion: integer gamma needs the unimplemented expansion branch");
        gamma_prefactor_ =
            gamma_fn(1.0 - gamma) * std::cos(0.5 * kPi * (gamma - 1.0));
        for (int n = 0; n <= 40; ++n) zc_.push_back(zeta_any(gamma - n));
        eps0_ = -2.0 * t * zc_[0];
    }

    double eps0() const { return eps0_; }

    // Leading small-k coefficient of eps(k)-eps(0): c * k^(gamma-1), c > 0
    // for 1 < gamma < 3.
    double leading_coefficient() const { return -2.0 * t_ * gamma_prefactor_; }

    double delta_eps(double k) const {
        if (k == 0.0) return 0.0;
        if (k < 0.1) {
            // -2t [ Gamma(1-g) cos(pi(g-1)/2) k^(g-1)
            //       + sum_{j>=1} (-1)^j zeta(g-2j) k^(2j) / (2j)! ]
            double analytic = 0.0;
            double k2j = k * k;
            double fact = 2.0;
            double sign = -1.0;
            for (int j = 1; 2 * j < static_cast<int>(zc_.size()); ++j) {
                analytic += sign * zc_[2 * j] * k2j / fact;
                k2j *= k * k;
                fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
                sign = -sign;
            }
            return -2.0 * t_ * (gamma_prefactor_ * std::pow(k, gamma_ - 1.0) + analytic);
        }
        return dispersion_thermo_limit(gamma_, t_, k) - eps0_;
    }

private:
    double gamma_, t_;
    double gamma_prefactor_;
    double eps0_;
    std::vector<double> zc_;
};

// 15-point Gauss-Kronrod rule with the embedded 7-point Gauss estimate.
struct Gk15Result {
    double integral;
    double error;
};

inline Gk15Result gk15(const std::vector<double>& fvals, double halfwidth) {
    static constexpr double wk[8] = {
        0.022935322010529, 0.063092092629979, 0.104790010322250,
        0.140653259715525, 0.169004726639267, 0.190350578064785,
        0.204432940075298, 0.209482141084728};
    static constexpr double wg[4] = {
        0.129484966168870, 0.279705391489277, 0.381830050505119,
        0.417959183673469};
    double ik = wk[7] * fvals[7];
    double ig = wg[3] * fvals[7];
    for (int i = 0; i < 7; ++i) {
        ik += wk[i] * (fvals[i] + fvals[14 - i]);
        if (i % 2 == 1) ig += wg[i / 2] * (fvals[i] + fvals[14 - i]);
    }
    return {ik * halfwidth, std::abs(ik - ig) * halfwidth};
}

inline const double* gk15_nodes() {
    static constexpr double xk[8] = {
        0.991455371120813, 0.949107912342759, 0.864864423359769,
        0.741531185599394, 0.586087235467691, 0.405845151377397,
        0.207784955007898, 0.0};
    return xk;
}

template <class F>
double gk15_adaptive(const F& f, double a, double b, double abs_tol, int depth = 0) {
    const double* xk = gk15_nodes();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    std::vector<double> fv(15);
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(mid - half * xk[i]);
        fv[14 - i] = f(mid + half * xk[i]);
    }
    fv[7] = f(mid);
    const Gk15Result r = gk15(fv, half);
    // second condition: the Gauss/Kronrod difference has reached its
    // floating-point floor; splitting further halves estimate and budget in
    // lockstep and would recurse forever
    if (r.error <= abs_tol || r.error <= 1e-14 * std::abs(r.integral) || depth >= 30)
        return r.integral;
    return gk15_adaptive(f, a, mid, 0.5 * abs_tol, depth + 1) +
           gk15_adaptive(f, mid, b, 0.5 * abs_tol, depth + 1);
}

// Excited-state density of the thermodynamic-limit power-law gas at
// mu = eps(0): (1/pi) int_0^pi dk Bose(eps(k) - eps(0)). The k=0 endpoint
// (the measure-zero condensate) is excluded by starting the panels at a
// delta whose omitted mass, bounded through the k^(gamma-1) expansion,
// stays below tol/10.
inline double excited_density(const ThermoDispersion& disp, double gamma,
                              double beta, double tol_abs) {
    // the quadrature itself cannot beat double precision; tolerances past
    // ~1e-14 are left to the caller's residual check to reject honestly
    const double quad_tol = std::max(tol_abs, 1e-14);
    const double c = disp.leading_coefficient();
    double delta = std::pow(
        std::max(1e-280, quad_tol * kPi * beta * c * (2.0 - gamma) / 20.0),
        1.0 / (2.0 - gamma));
    delta = std::min(delta, 1e-3);
    delta = std::max(delta, 1e-60);

    const auto f = [&](double k) { return bose_from_gap(beta * disp.delta_eps(k)); };

    // geometric panels toward the singular edge
    std::vector<double> edges;
    for (double e = delta; e < kPi; e *= 4.0) edges.push_back(e);
    edges.push_back(kPi);

    KahanSum acc;
    const double panel_tol = quad_tol * kPi / (10.0 * static_cast<double>(edges.size()));
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        acc.add(gk15_adaptive(f, edges[i], edges[i + 1], panel_tol));
    return acc.value() / kPi;
}

}  // namespace detail

/// Long-range model: beta_C solves n(beta; mu = eps(0)) = n_target via the
/// thermodynamic-limit density quadrature and bisection in beta. A finite-T
/// condensate only exists for 1 < gamma < 2.
inline TcResult tc_long_range(double gamma, double t, double n_target,
                              double tol = 1e-8) {
    if (!(gamma > 1.0 && gamma < 2.0))
        throw domain_error("tc_long_range: finite-T BEC requires 1 < gamma < 2");
    if (!(t > 0.0)) throw domain_error("tc_long_range: requires t > 0");
    if (!(n_target > 0.0)) throw domain_error("tc_long_range: requires n_target > 0");
    if (!(tol > 0.0)) throw domain_error("tc_long_range: requires tol > 0");

    const detail::ThermoDispersion disp(gamma, t);
    const double tol_abs = tol * n_target;
    const auto density = [&](double beta) {
        return detail::excited_density(disp, gamma, beta, tol_abs);
    };

    // density decreases monotonically in beta
    double lo = 0.5, hi = 1.0;
    int guard = 0;
    while (density(lo) < n_target) {
        lo *= 0.5;
        if (++guard > 200)
            throw convergence_error("tc_long_range: failed to bracket from below", lo);
    }
    guard = 0;
    while (density(hi) > n_target) {
        hi *= 2.0;
        if (++guard > 200)
            throw convergence_error("tc_long_range: failed to bracket from above", hi);
    }

    double beta = hi, n = 0.0;
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
        beta = 0.5 * (lo + hi);
        n = density(beta);
        if (std::abs(n - n_target) <= tol * n_target) {
            converged = true;
            break;
        }
        (n > n_target ? lo : hi) = beta;
    }
    if (!converged)
        throw convergence_error("tc_long_range: bisection cap (200) exceeded", n);
    return {1.0 / beta, beta, TcMethod::Quadrature};
}

/// Total grand-canonical entropy S = sum_m [(1+N_m)ln(1+N_m) - N_m ln N_m].
inline double thermal_entropy(const GrandCanonicalState& state) {
    KahanSum acc;
    for (const double n : state.occ) acc.add(bose_mode_entropy(n));
    return acc.value();
}

}  // namespace bosemi
