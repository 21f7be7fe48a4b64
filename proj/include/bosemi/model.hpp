#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "bosemi/errors.hpp"
#include "bosemi/numeric.hpp"
#include "bosemi/special_functions.hpp"

namespace bosemi {

enum class HoppingKind { NearestNeighbor, InfiniteRange, PowerLaw };

inline const char* to_string(HoppingKind k) {
    switch (k) {
        case HoppingKind::NearestNeighbor: return "nn";
        case HoppingKind::InfiniteRange: return "infinite";
        case HoppingKind::PowerLaw: return "powerlaw";
    }
    return "?";
}

/// Translation-invariant free-boson hopping model on a 1D ring of L sites.
///
/// NearestNeighbor: t between neighbors. InfiniteRange: t/L between every
/// pair, so eps(0) = -t and all other modes sit at zero. PowerLaw: t/n^gamma
/// at ring separation n, summed exactly as the finite-L mode sum
/// -2t sum_{n=1}^{L-1} cos(n k)/n^gamma (separations n and L-n count as
/// distinct hops).
struct HoppingModel {
    HoppingKind kind = HoppingKind::NearestNeighbor;
    double t = 1.0;      // hopping energy > 0
    int L = 2;           // site count >= 2
    double gamma = 0.0;  // PowerLaw exponent, > 1
    // PowerLaw only: tabulate the thermodynamic-limit dispersion eps_inf(k_m)
    // instead of the finite-L sum when building occupation tables.
    bool thermo_limit_dispersion = false;

    static HoppingModel nearest_neighbor(double t, int L) {
        HoppingModel m{HoppingKind::NearestNeighbor, t, L, 0.0, false};
        m.validate();
        return m;
    }
    static HoppingModel infinite_range(double t, int L) {
        HoppingModel m{HoppingKind::InfiniteRange, t, L, 0.0, false};
        m.validate();
        return m;
    }
    static HoppingModel power_law(double gamma, double t, int L, bool thermo_limit = false) {
        HoppingModel m{HoppingKind::PowerLaw, t, L, gamma, thermo_limit};
        m.validate();
        return m;
    }

    void validate() const {
        if (L < 2) throw domain_error("HoppingModel: L must be >= 2");
        if (!(t > 0.0)) throw domain_error("HoppingModel: t must be > 0");
        if (kind == HoppingKind::PowerLaw && !(gamma > 1.0))
            throw domain_error("HoppingModel: power-law gamma must be > 1 "
                               "(no well-defined thermodynamic limit otherwise)");
    }
};

/// Single-particle energies on the momentum grid k_m = 2*pi*m/L, m = 0..L-1.
struct DispersionTable {
    std::vector<double> k;
    std::vector<double> eps;
};

/// Thermodynamic-limit power-law dispersion eps_gamma(k) = -2t Re F(gamma, ik)
/// for gamma > 1, 0 <= k <= pi. k = 0 returns -2t zeta(gamma) exactly; the
/// analytic expansion covers k < 0.1 and the Euler-accelerated series the rest.
inline double dispersion_thermo_limit(double gamma, double t, double k,
                                      const SeriesControl& ctl = {}) {
    if (!(gamma > 1.0))
        throw domain_error("dispersion_thermo_limit: requires gamma > 1");
    if (!(t > 0.0)) throw domain_error("dispersion_thermo_limit: requires t > 0");
    if (!(k >= 0.0) || k > kPi + 1e-12)
        throw domain_error("dispersion_thermo_limit: requires 0 <= k <= pi");
    if (k == 0.0) return -2.0 * t * zeta(gamma);
    return -2.0 * t * bose_einstein_F(gamma, std::complex<double>(0.0, k), ctl).real();
}

namespace detail {

// Finite-L power-law mode energy at folded mode index mf in [0, L/2].
// The angle n*k_m is reduced exactly through the integer residue
// (n*mf) mod L, so mirrored modes agree bit for bit.
inline double power_law_eps(double gamma, double t, int L, int mf) {
    KahanSum acc;
    const double two_pi_over_L = 2.0 * kPi / L;
    long r = 0;
    for (int n = 1; n < L; ++n) {
        r += mf;
        if (r >= L) r -= L;
        acc.add(std::cos(two_pi_over_L * static_cast<double>(r)) *
                std::pow(static_cast<double>(n), -gamma));
    }
    return -2.0 * t * acc.value();
}

}  // namespace detail

/// eps(k_m) for one mode index m in [0, L-1]. The index is folded to
/// min(m, L-m) first, so the evenness eps(k) = eps(2*pi - k) is exact.
inline double dispersion_at(const HoppingModel& model, int m) {
    model.validate();
    if (m < 0 || m >= model.L)
        throw index_error("dispersion_at: mode index out of range");
    const int mf = std::min(m, model.L - m);
    switch (model.kind) {
        case HoppingKind::NearestNeighbor:
            return -2.0 * model.t * std::cos(2.0 * kPi * mf / model.L);
        case HoppingKind::InfiniteRange:
            return m == 0 ? -model.t : 0.0;
        case HoppingKind::PowerLaw:
            if (model.thermo_limit_dispersion)
                return dispersion_thermo_limit(model.gamma, model.t,
                                               2.0 * kPi * mf / model.L);
            return detail::power_law_eps(model.gamma, model.t, model.L, mf);
    }
    throw domain_error("dispersion_at: unknown hopping kind");
}

/// Tabulates eps over the full k grid. Deterministic; the upper half of the
/// grid is mirrored from the lower half. The finite-L power-law fill shares
/// cos/weight tables across modes but keeps the exact summation order of
/// dispersion_at, so the two agree bit for bit.
inline DispersionTable dispersion_table(const HoppingModel& model) {
    model.validate();
    const int L = model.L;
    DispersionTable tab;
    tab.k.resize(L);
    tab.eps.resize(L);
    for (int m = 0; m < L; ++m) tab.k[m] = 2.0 * kPi * m / L;

    const bool fast_power_law =
        model.kind == HoppingKind::PowerLaw && !model.thermo_limit_dispersion;
    std::vector<double> costab, w;
    if (fast_power_law) {
        costab.resize(L);
        w.resize(L);
        const double two_pi_over_L = 2.0 * kPi / L;
        for (int r = 0; r < L; ++r)
            costab[r] = std::cos(two_pi_over_L * static_cast<double>(r));
        for (int n = 1; n < L; ++n)
            w[n] = std::pow(static_cast<double>(n), -model.gamma);
    }

    for (int m = 0; m <= L / 2; ++m) {
        double e;
        if (fast_power_law) {
            KahanSum acc;
            long r = 0;
            for (int n = 1; n < L; ++n) {
                r += m;
                if (r >= L) r -= L;
                acc.add(costab[r] * w[n]);
            }
            e = -2.0 * model.t * acc.value();
        } else {
            e = dispersion_at(model, m);
        }
        tab.eps[m] = e;
        if (m != 0 && m != L - m) tab.eps[L - m] = e;
    }
    return tab;
}

/// Leading small-k behavior of the thermodynamic-limit power-law dispersion,
/// eps(k) - eps(0) ~ sigma * Re[(ik)^(gamma-1)] plus the analytic tail.
struct SmallKExpansion {
    double sigma = 0.0;              // -2 t Gamma(1 - gamma)
    double exponent = 0.0;           // gamma - 1
    std::vector<double> zeta_terms;  // zeta(gamma - n)/n!, n = 0..8
    double gamma = 0.0;
    double t = 0.0;

    /// eps_gamma(k) evaluated from the expansion (valid for small k; the
    /// analytic part is kept through k^8).
    double eval(double k) const {
        double analytic = 0.0;
        double k2j = 1.0;
        double sign = 1.0;
        for (std::size_t j = 0; 2 * j < zeta_terms.size(); ++j) {
            analytic += sign * zeta_terms[2 * j] * k2j;
            k2j *= k * k;
            sign = -sign;
        }
        const double branch =
            sigma * std::cos(0.5 * kPi * (gamma - 1.0)) * std::pow(k, gamma - 1.0);
        return branch - 2.0 * t * analytic;
    }
};

inline SmallKExpansion small_k_expansion(double gamma, double t) {
    if (!(gamma > 1.0 && gamma < 3.0))
        throw domain_error("small_k_expansion: requires 1 < gamma < 3");
    if (detail::near_integer(gamma))
        throw unsupported_branch_error(
            "small_k_expansion: integer gamma hits the unimplemented logarithmic branch; "
            "use the finite-L sum instead");
    if (!(t > 0.0)) throw domain_error("small_k_expansion: requires t > 0");

    SmallKExpansion ex;
    ex.gamma = gamma;
    ex.t = t;
    ex.sigma = -2.0 * t * gamma_fn(1.0 - gamma);
    ex.exponent = gamma - 1.0;
    double fact = 1.0;
    for (int n = 0; n <= 8; ++n) {
        if (n > 0) fact *= n;
        ex.zeta_terms.push_back(detail::zeta_any(gamma - n) / fact);
    }
    return ex;
}

}  // namespace bosemi
