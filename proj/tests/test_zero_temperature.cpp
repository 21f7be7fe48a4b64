#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "bosemi/zero_temperature.hpp"
#include "oracles.hpp"

using namespace bosemi;
using Catch::Matchers::WithinAbs;

namespace {

// independent binomial weights C(N,l) p^l q^(N-l)
std::vector<double> binomial_weights(std::int64_t N, double p) {
    std::vector<double> w(static_cast<std::size_t>(N) + 1);
    for (std::int64_t l = 0; l <= N; ++l) {
        const double lc = std::lgamma(N + 1.0) - std::lgamma(l + 1.0) -
                          std::lgamma(N - l + 1.0);
        w[static_cast<std::size_t>(l)] =
            std::exp(lc + l * std::log(p) + (N - l) * std::log1p(-p));
    }
    return w;
}

}  // namespace

TEST_CASE("schmidt_spectrum small cases") {
    const auto s1 = schmidt_spectrum(1, 8, 16);
    REQUIRE(s1.lambdas.size() == 2);
    REQUIRE_THAT(s1.lambdas[0], WithinAbs(0.5, 1e-15));
    REQUIRE_THAT(s1.lambdas[1], WithinAbs(0.5, 1e-15));

    const auto s4 = schmidt_spectrum(4, 2, 4);
    const double expect[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
    for (int l = 0; l <= 4; ++l)
        REQUIRE_THAT(s4.lambdas[static_cast<std::size_t>(l)],
                     WithinAbs(expect[l], 1e-14));

    // unequal split against the direct binomial oracle
    const auto q4 = schmidt_spectrum(4, 1, 4);
    const auto ref = binomial_weights(4, 0.25);
    for (int l = 0; l <= 4; ++l)
        REQUIRE_THAT(q4.lambdas[static_cast<std::size_t>(l)],
                     WithinAbs(ref[static_cast<std::size_t>(l)], 1e-14));

    REQUIRE_THROWS_AS(schmidt_spectrum(0, 1, 2), domain_error);
    REQUIRE_THROWS_AS(schmidt_spectrum(4, 0, 4), partition_error);
    REQUIRE_THROWS_AS(schmidt_spectrum(4, 4, 4), partition_error);
}

TEST_CASE("schmidt normalization across sizes") {
    for (const std::int64_t N : {1LL, 7LL, 100LL, 10000LL, 100000LL}) {
        const auto s = schmidt_spectrum(N, 1, 3);
        KahanSum acc;
        for (const double lam : s.lambdas) acc.add(lam);
        REQUIRE_THAT(acc.value(), WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("entanglement entropy values") {
    REQUIRE_THAT(entanglement_entropy_exact(schmidt_spectrum(1, 4, 8)),
                 WithinAbs(std::log(2.0), 1e-14));

    // N = 4, equal partition: direct sum over the five weights
    const double w[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
    double ref = 0.0;
    for (const double lam : w) ref -= lam * std::log(lam);
    REQUIRE_THAT(entanglement_entropy_exact(schmidt_spectrum(4, 2, 4)),
                 WithinAbs(ref, 1e-14));
    REQUIRE_THAT(ref, WithinAbs(1.40753, 1e-5));

    // N = 1000 equal partition vs the Gaussian asymptotic
    const double e1000 = entanglement_entropy_exact(schmidt_spectrum(1000, 1, 2));
    REQUIRE_THAT(e1000, WithinAbs(entropy_gaussian_asymptotic(1000.0), 1e-3));
}

TEST_CASE("partition symmetry is exact") {
    for (const std::int64_t N : {3LL, 10LL, 501LL, 4096LL}) {
        const auto a = schmidt_spectrum(N, 3, 10);
        const auto b = schmidt_spectrum(N, 7, 10);
        REQUIRE(entanglement_entropy_exact(a) == entanglement_entropy_exact(b));
    }
}

TEST_CASE("gaussian asymptotic formula") {
    REQUIRE_THAT(entropy_gaussian_asymptotic(1000.0),
                 WithinAbs(0.5 * (1.0 + std::log(500.0 * kPi)), 1e-15));
    REQUIRE_THAT(entropy_gaussian_asymptotic(2.0),
                 WithinAbs(0.5 * (1.0 + std::log(kPi)), 1e-15));
    REQUIRE_THAT(entropy_gaussian_asymptotic(2.0), WithinAbs(1.0724, 1e-4));
    REQUIRE_THROWS_AS(entropy_gaussian_asymptotic(0.5), domain_error);
}

TEST_CASE("gaussian asymptotic error scales as 1/N^2 at equal partition") {
    // the O(1/N) coefficient of the binomial-entropy expansion vanishes at
    // p = 1/2; the measured correction is ~ -1/(12 N^2)
    const double e3 = entanglement_entropy_exact(schmidt_spectrum(1000, 1, 2)) -
                      entropy_gaussian_asymptotic(1000.0);
    const double e4 = entanglement_entropy_exact(schmidt_spectrum(10000, 1, 2)) -
                      entropy_gaussian_asymptotic(10000.0);
    REQUIRE(std::abs(e3) < 1e-7);
    const double ratio = std::abs(e3) / std::abs(e4);
    REQUIRE(ratio > 80.0);
    REQUIRE(ratio < 120.0);
}

TEST_CASE("poisson asymptotic formula") {
    const double ref = 0.5 * (1.0 + std::log(200.0 * kPi)) - 1.0 / 1200.0;
    REQUIRE_THAT(entropy_poisson_asymptotic(100.0), WithinAbs(ref, 1e-15));
    REQUIRE_THAT(entropy_poisson_asymptotic(100.0), WithinAbs(3.7207, 1e-4));

    // difference from (ln NA)/2 + (1 + ln 2pi)/2 vanishes as NA grows
    const double big = 1e9;
    const double lead = 0.5 * std::log(big) + 0.5 * (1.0 + std::log(2.0 * kPi));
    REQUIRE_THAT(entropy_poisson_asymptotic(big), WithinAbs(lead, 1e-9));
    REQUIRE_THROWS_AS(entropy_poisson_asymptotic(0.0), domain_error);
}

TEST_CASE("poisson spectrum and its entropy") {
    const auto w1 = poisson_spectrum(1.0, 20);
    REQUIRE_THAT(w1[0], WithinAbs(std::exp(-1.0), 1e-13));

    const auto w100 = poisson_spectrum(100.0, 1000);
    const std::size_t argmax =
        std::max_element(w100.begin(), w100.end()) - w100.begin();
    REQUIRE((argmax == 99 || argmax == 100));

    // exact Poisson-sum entropy vs the asymptotic formula
    KahanSum acc;
    for (const double p : w100)
        if (p > 0.0) acc.add(-p * std::log(p));
    REQUIRE_THAT(acc.value(), WithinAbs(entropy_poisson_asymptotic(100.0), 1e-4));

    REQUIRE_THROWS_AS(poisson_spectrum(100.0, 500), tail_mass_error);
    REQUIRE_THROWS_AS(poisson_spectrum(-1.0, 100), domain_error);
}

TEST_CASE("binomial converges to Poisson in total variation") {
    // fixed NA = 100, growing system: N = NA*r, p = 1/r
    const auto pois = poisson_spectrum(100.0, 1500);
    double prev = 1.0;
    for (const int r : {10, 100, 1000}) {
        const auto binom = binomial_weights(100LL * r, 1.0 / r);
        const double tv = oracle::tv_distance(binom, pois);
        REQUIRE(tv < prev);
        prev = tv;
    }
    REQUIRE(prev < 1e-3);  // N = 1e5, LA/L = 1e-3 endpoint of the ladder
}

TEST_CASE("leading-order law: entropy slope 1/2 in ln N") {
    std::vector<double> lx, ly;
    for (const std::int64_t N : {100LL, 1000LL, 10000LL, 100000LL}) {
        lx.push_back(std::log(static_cast<double>(N)));
        ly.push_back(entanglement_entropy_exact(schmidt_spectrum(N, 1, 2)));
    }
    REQUIRE_THAT(oracle::ols_slope(lx, ly), WithinAbs(0.5, 0.005));
}
