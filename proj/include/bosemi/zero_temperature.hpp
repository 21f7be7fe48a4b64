#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "bosemi/errors.hpp"
#include "bosemi/numeric.hpp"
#include "bosemi/special_functions.hpp"

namespace bosemi {

/// Schmidt weights of the N-particle condensate across a contiguous
/// bipartition: lambda_l = C(N,l) (LA/L)^l (LB/L)^(N-l), l = 0..N.
struct SchmidtSpectrum {
    std::vector<double> lambdas;
    std::int64_t N = 0;
    std::int64_t LA = 0;
    std::int64_t L = 0;
};

/// Builds the Schmidt spectrum in log space (log-binomials via lgamma), so
/// N up to 10^6 stays free of overflow; far-tail weights underflow to zero.
inline SchmidtSpectrum schmidt_spectrum(std::int64_t N, std::int64_t LA, std::int64_t L) {
    if (N < 1) throw domain_error("schmidt_spectrum: requires N >= 1");
    if (LA < 1 || LA >= L)
        throw partition_error("schmidt_spectrum: requires 1 <= LA < L");

    const double lp = std::log(static_cast<double>(LA) / L);
    const double lq = std::log(static_cast<double>(L - LA) / L);
    const double lgn = std::lgamma(static_cast<double>(N) + 1.0);

    SchmidtSpectrum s;
    s.N = N;
    s.LA = LA;
    s.L = L;
    s.lambdas.resize(static_cast<std::size_t>(N) + 1);
    for (std::int64_t l = 0; l <= N; ++l) {
        // grouped so the A<->B swap maps onto commutative reorderings only;
        // mirrored spectra then agree bit for bit
        const double lg_pair = std::lgamma(static_cast<double>(l) + 1.0) +
                               std::lgamma(static_cast<double>(N - l) + 1.0);
        const double geo_pair =
            static_cast<double>(l) * lp + static_cast<double>(N - l) * lq;
        s.lambdas[static_cast<std::size_t>(l)] = std::exp(lgn - lg_pair + geo_pair);
    }
    // pin the normalization: lgamma noise leaves the raw sum ~1e-11 off at
    // N ~ 1e6. Summed in mirror pairs so the rescale is swap-invariant too.
    KahanSum total;
    {
        std::size_t i = 0, j = s.lambdas.size() - 1;
        for (; i < j; ++i, --j) total.add(s.lambdas[i] + s.lambdas[j]);
        if (i == j) total.add(s.lambdas[i]);
    }
    for (double& lam : s.lambdas) lam /= total.value();
    return s;
}

/// E = -sum_l lambda_l ln lambda_l, compensated; 0 ln 0 := 0. Terms are
/// consumed in mirror pairs (l, N-l), so swapping the partition reproduces
/// the same value exactly.
inline double entanglement_entropy_exact(const SchmidtSpectrum& spec) {
    if (spec.lambdas.empty())
        throw domain_error("entanglement_entropy_exact: empty spectrum");
    const auto term = [](double lam) {
        if (lam < 0.0)
            throw domain_error("entanglement_entropy_exact: negative weight");
        return lam > 0.0 ? -lam * std::log(lam) : 0.0;
    };
    KahanSum acc;
    std::size_t i = 0, j = spec.lambdas.size() - 1;
    for (; i < j; ++i, --j) acc.add(term(spec.lambdas[i]) + term(spec.lambdas[j]));
    if (i == j) acc.add(term(spec.lambdas[i]));
    return acc.value();
}

/// Equal-partition large-N law E ~ (1 + ln(N pi/2)) / 2.
inline double entropy_gaussian_asymptotic(double N) {
    if (!(N >= 1.0)) throw domain_error("entropy_gaussian_asymptotic: requires N >= 1");
    return 0.5 * (1.0 + std::log(0.5 * N * kPi));
}

/// Poisson-limit law for LB >> LA:
/// E ~ (1 + ln(2 pi N_A)) / 2 - 1/(12 N_A), N_A the mean count in A.
inline double entropy_poisson_asymptotic(double NA) {
    if (!(NA > 0.0)) throw domain_error("entropy_poisson_asymptotic: requires NA > 0");
    return 0.5 * (1.0 + std::log(2.0 * kPi * NA)) - 1.0 / (12.0 * NA);
}

/// Poisson weights e^{-NA} NA^l / l! for l = 0..l_max, normalized after
/// verifying the truncated tail mass is below 1e-12.
inline std::vector<double> poisson_spectrum(double NA, std::int64_t l_max) {
    if (!(NA > 0.0)) throw domain_error("poisson_spectrum: requires NA > 0");
    if (static_cast<double>(l_max) < 10.0 * NA)
        throw tail_mass_error("poisson_spectrum: l_max must be at least 10*NA");

    const double lnNA = std::log(NA);
    std::vector<double> w(static_cast<std::size_t>(l_max) + 1);
    KahanSum total;
    for (std::int64_t l = 0; l <= l_max; ++l) {
        const double ll = -NA + static_cast<double>(l) * lnNA -
                          std::lgamma(static_cast<double>(l) + 1.0);
        w[static_cast<std::size_t>(l)] = std::exp(ll);
        total.add(w[static_cast<std::size_t>(l)]);
    }
    const double mass = total.value();
    if (1.0 - mass > 1e-12)
        throw tail_mass_error("poisson_spectrum: truncated tail mass exceeds 1e-12");
    for (double& x : w) x /= mass;
    return w;
}

}  // namespace bosemi
