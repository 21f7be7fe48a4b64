#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bosemi/errors.hpp"
#include "bosemi/numeric.hpp"
#include "bosemi/thermodynamics.hpp"

namespace bosemi {

/// Real symmetric Toeplitz truncation of the two-point function
/// G(d) = <a+_i a_{i+d}>; only the first row is stored.
struct CorrelationMatrix {
    int size = 0;
    std::vector<double> first_row;  // G(d), d = 0..size-1
};

/// Builds the contiguous-block truncation G_A of size LA from a solved state:
/// G(d) = (1/L) sum_m cos(k_m d) N_m, real by evenness of the occupations.
/// Angles are reduced exactly through integer residues mod L, and the m-sum
/// order matches the density sum in solve_mu, so G(0) == n_avg bit for bit.
inline CorrelationMatrix correlation_matrix(const GrandCanonicalState& state, int LA) {
    const int L = state.model.L;
    if (LA < 1 || LA > L)
        throw partition_error("correlation_matrix: requires 1 <= LA <= L");

    std::vector<double> costab(L);
    const double two_pi_over_L = 2.0 * kPi / L;
    for (int r = 0; r < L; ++r)
        costab[r] = std::cos(two_pi_over_L * static_cast<double>(r));

    CorrelationMatrix G;
    G.size = LA;
    G.first_row.resize(LA);
    for (int d = 0; d < LA; ++d) {
        KahanSum acc;
        long r = 0;
        for (int m = 0; m < L; ++m) {
            acc.add(state.occ[m] * costab[r]);
            r += d;
            if (r >= L) r -= L;
        }
        G.first_row[d] = acc.value() / L;
    }
    return G;
}

/// Eigenvalues of the dense symmetric Toeplitz matrix, descending.
/// Householder tridiagonalization + implicit-shift iteration via Eigen.
/// Roundoff negatives in [-1e-8, 0) are clipped to zero; anything below
/// -1e-8 signals a genuinely invalid matrix.
inline std::vector<double> spectrum(const CorrelationMatrix& G) {
    if (G.size < 1 || static_cast<int>(G.first_row.size()) != G.size)
        throw domain_error("spectrum: malformed correlation matrix");
    const int n = G.size;
    Eigen::MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = G.first_row[std::abs(i - j)];

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw convergence_error("spectrum: eigensolver failed to converge", 0.0);

    std::vector<double> gs(n);
    for (int i = 0; i < n; ++i) gs[i] = es.eigenvalues()(n - 1 - i);
    for (double& g : gs) {
        if (g < -1e-8)
            throw positivity_error("spectrum: eigenvalue below -1e-8; matrix is not a "
                                   "valid bosonic correlation matrix");
        if (g < 0.0) g = 0.0;
    }
    return gs;
}

/// E = sum_l [(1+g_l)ln(1+g_l) - g_l ln g_l] over a correlation spectrum.
inline double entropy_from_spectrum(const std::vector<double>& gs) {
    KahanSum acc;
    for (const double g : gs) {
        if (g < 0.0)
            throw domain_error("entropy_from_spectrum: eigenvalues must be >= 0");
        acc.add(bose_mode_entropy(g));
    }
    return acc.value();
}

/// One mutual-information evaluation E_M = (E_A + E_B - S)/2 at a bipartition.
struct EntropyReport {
    double E_A = 0.0;
    double E_B = 0.0;
    double S = 0.0;
    double E_M = 0.0;
    int LA = 0, LB = 0, L = 0;
    double beta = 0.0;
    double mu = 0.0;
};

/// Mutual information from an already-solved state. E_B comes from its own
/// (L-LA)-sized truncation; for the equal partition on the ring the two
/// blocks have identical Toeplitz truncations, so the spectrum is reused.
inline EntropyReport mutual_information(const GrandCanonicalState& state, int LA) {
    const int L = state.model.L;
    if (LA < 1 || LA >= L)
        throw partition_error("mutual_information: requires 1 <= LA < L");
    const int LB = L - LA;

    const CorrelationMatrix GA = correlation_matrix(state, LA);
    const std::vector<double> gsA = spectrum(GA);
    const double EA = entropy_from_spectrum(gsA);
    double EB;
    if (LB == LA) {
        EB = entropy_from_spectrum(gsA);
    } else {
        EB = entropy_from_spectrum(spectrum(correlation_matrix(state, LB)));
    }
    const double S = thermal_entropy(state);

    EntropyReport rep;
    rep.E_A = EA;
    rep.E_B = EB;
    rep.S = S;
    rep.E_M = 0.5 * (EA + EB - S);
    rep.LA = LA;
    rep.LB = LB;
    rep.L = L;
    rep.beta = state.beta;
    rep.mu = state.mu;
    return rep;
}

/// Solves the state at (model, beta, n_target) and evaluates the report.
inline EntropyReport mutual_information(const HoppingModel& model, double beta,
                                        double n_target, int LA, double tol = 1e-12) {
    return mutual_information(solve_mu(model, beta, n_target, tol), LA);
}

/// Closed-form infinite-range mutual information for occupations (N0, Nk):
/// E_M = [phi(g1A) + phi(g1B) - phi(Nk) - phi(N0)] / 2 with
/// g1A = LA N0/L + LB Nk/L and phi the single-mode entropy.
inline double analytic_mi_infinite_range(double L, double LA, double N0, double Nk) {
    if (!(L > 0.0) || !(LA > 0.0) || LA >= L)
        throw partition_error("analytic_mi_infinite_range: requires 0 < LA < L");
    if (N0 < 0.0 || Nk < 0.0)
        throw domain_error("analytic_mi_infinite_range: occupations must be >= 0");
    const double LB = L - LA;
    const double g1A = LA * N0 / L + LB * Nk / L;
    const double g1B = LB * N0 / L + LA * Nk / L;
    return 0.5 * (bose_mode_entropy(g1A) + bose_mode_entropy(g1B) -
                  bose_mode_entropy(Nk) - bose_mode_entropy(N0));
}

/// Asymptotic regimes of the infinite-range mutual information:
/// {above, at, below} T_C crossed with {LA << L, LA = L/2}.
enum class MiRegime {
    AboveSmallBlock,
    AboveEqual,
    AtSmallBlock,
    AtEqual,
    BelowSmallBlock,
    BelowEqual,
};

inline const char* to_string(MiRegime r) {
    switch (r) {
        case MiRegime::AboveSmallBlock: return "above-Tc/small-block";
        case MiRegime::AboveEqual: return "above-Tc/equal";
        case MiRegime::AtSmallBlock: return "at-Tc/small-block";
        case MiRegime::AtEqual: return "at-Tc/equal";
        case MiRegime::BelowSmallBlock: return "below-Tc/small-block";
        case MiRegime::BelowEqual: return "below-Tc/equal";
    }
    return "?";
}

struct RegimePrediction {
    MiRegime regime;
    double leading_mi;  // leading-term value of E_M in that regime
};

/// Classifies (L, LA, n, T, Tc) into exactly one regime and returns the
/// leading term: 0 above Tc for LA << L; the saturation constant above Tc at
/// equal partition; ln(n LA/sqrt(L))/2 and ln(n LA)/4 at Tc; ln(<N_A0>)/2
/// below Tc. Temperatures within 1e-6 relative of Tc classify as "at";
/// blocks must be either at most L/8 or exactly L/2.
inline RegimePrediction asymptotic_regime_mi(double L, double LA, double n, double T,
                                             double Tc) {
    if (!(L > 0.0) || !(LA > 0.0) || LA >= L)
        throw partition_error("asymptotic_regime_mi: requires 0 < LA < L");
    if (!(n > 0.0) || !(T > 0.0) || !(Tc > 0.0))
        throw domain_error("asymptotic_regime_mi: requires n, T, Tc > 0");

    const bool at = std::abs(T - Tc) <= 1e-6 * Tc;
    const bool equal = std::abs(LA - 0.5 * L) <= 1e-9 * L;
    const bool small = LA <= L / 8.0;
    if (!equal && !small)
        throw classification_error(
            "asymptotic_regime_mi: block is neither small (<= L/8) nor the equal partition");

    const double t = Tc * std::log1p(1.0 / n);  // hopping energy from Eq. (inf_Tc)

    if (at) {
        if (equal) return {MiRegime::AtEqual, 0.25 * std::log(n * LA)};
        return {MiRegime::AtSmallBlock, 0.5 * std::log(n * LA / std::sqrt(L))};
    }
    if (T > Tc) {
        if (!equal) return {MiRegime::AboveSmallBlock, 0.0};
        // saturation value from the closed form with thermodynamic-limit
        // occupations: Nk = n, N0 = 1/((1+1/n) e^{-t/T} - 1)
        const double N0 = 1.0 / ((1.0 + 1.0 / n) * std::exp(-t / T) - 1.0);
        const double Nk = n;
        const double g1 = 0.5 * (N0 + Nk);
        return {MiRegime::AboveEqual,
                0.5 * (2.0 * bose_mode_entropy(g1) - bose_mode_entropy(N0) -
                       bose_mode_entropy(Nk))};
    }
    // below Tc: condensate density n0 = n - 1/(e^{t/T} - 1) > 0
    const double n0 = n - 1.0 / std::expm1(t / T);
    const double NA0 = LA * n0;
    const MiRegime r = equal ? MiRegime::BelowEqual : MiRegime::BelowSmallBlock;
    return {r, 0.5 * std::log(NA0)};
}

}  // namespace bosemi
