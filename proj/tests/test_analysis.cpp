#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "bosemi/analysis.hpp"
#include "oracles.hpp"

using namespace bosemi;
using Catch::Matchers::WithinAbs;

TEST_CASE("fit recovers exact synthetic log data") {
    std::vector<std::pair<double, double>> pts;
    for (const double x : {10.0, 20.0, 40.0, 80.0, 160.0})
        pts.emplace_back(x, 0.5 * std::log(x) + 1.0);
    const auto fit = fit_log_scaling(pts, 0.0, 1e9);
    REQUIRE_THAT(fit.slope, WithinAbs(0.5, 1e-12));
    REQUIRE_THAT(fit.intercept, WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(fit.r_squared, WithinAbs(1.0, 1e-12));
    REQUIRE(fit.slope_stderr <= 1e-12);
    REQUIRE(fit.n_points == 5);
}

TEST_CASE("fit window filtering and failure modes") {
    std::vector<std::pair<double, double>> pts;
    for (const double x : {8.0, 16.0, 32.0, 64.0, 128.0, 256.0})
        pts.emplace_back(x, 2.0 * std::log(x));
    const auto fit = fit_log_scaling(pts, 32.0, 256.0);
    REQUIRE(fit.n_points == 4);
    REQUIRE_THAT(fit.slope, WithinAbs(2.0, 1e-12));

    REQUIRE_THROWS_AS(fit_log_scaling(pts, 100.0, 256.0), insufficient_data_error);
    REQUIRE_THROWS_AS(
        fit_log_scaling({{1.0, 0.0}, {2.0, 0.1}, {3.0, 0.2}}, 0.0, 10.0),
        insufficient_data_error);
}

TEST_CASE("fit is scale-equivariant (exact for power-of-two factors)") {
    std::vector<std::pair<double, double>> pts, pts4;
    for (const double x : {16.0, 32.0, 64.0, 128.0, 256.0}) {
        const double y = 0.31 * std::log(x) + 0.7 + 0.01 * std::cos(x);
        pts.emplace_back(x, y);
        pts4.emplace_back(x, 4.0 * y);
    }
    const auto f1 = fit_log_scaling(pts, 0.0, 1e9);
    const auto f4 = fit_log_scaling(pts4, 0.0, 1e9);
    REQUIRE(f4.slope == 4.0 * f1.slope);
    REQUIRE(f4.intercept == 4.0 * f1.intercept);
}

TEST_CASE("run_sweep basic operation") {
    SweepSpec spec;
    spec.kind = HoppingKind::InfiniteRange;
    spec.betas = {1.4, 0.3, std::log(2.0)};
    spec.sizes = {16, 32, 64};
    const auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 9);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const bool sorted = rows[i - 1].beta < rows[i].beta ||
                            (rows[i - 1].beta == rows[i].beta && rows[i - 1].L < rows[i].L);
        REQUIRE(sorted);
    }
    for (const auto& r : rows) {
        REQUIRE(r.ok);
        REQUIRE(r.LA == r.L / 2);
        REQUIRE(std::isfinite(r.report.E_M));
        REQUIRE(r.report.E_M >= -1e-9);
        REQUIRE(r.error.empty());
    }
}

TEST_CASE("run_sweep with empty beta list is an empty table") {
    SweepSpec spec;
    spec.kind = HoppingKind::NearestNeighbor;
    spec.sizes = {16, 32};
    REQUIRE(run_sweep(spec).empty());
}

TEST_CASE("per-point failures are recorded, sweep continues") {
    SweepSpec spec;
    spec.kind = HoppingKind::InfiniteRange;
    spec.betas = {1.0};
    spec.sizes = {1, 16};  // L = 1 is an invalid lattice; the second point survives
    const auto rows = run_sweep(spec);
    REQUIRE(rows.size() == 2);
    REQUIRE_FALSE(rows[0].ok);
    REQUIRE_FALSE(rows[0].error.empty());
    REQUIRE(rows[1].ok);
}

TEST_CASE("run_sweep validation") {
    SweepSpec spec;
    spec.kind = HoppingKind::InfiniteRange;
    spec.betas = {1.0};
    spec.sizes = {32, 16};
    REQUIRE_THROWS_AS(run_sweep(spec), domain_error);
    spec.sizes = {16, 32};
    spec.betas = {0.0};
    REQUIRE_THROWS_AS(run_sweep(spec), domain_error);
    spec.betas = {1.0};
    spec.partition_fraction = 1.5;
    REQUIRE_THROWS_AS(run_sweep(spec), domain_error);
}

TEST_CASE("resume skips completed points") {
    SweepSpec spec;
    spec.kind = HoppingKind::InfiniteRange;
    spec.betas = {1.0};
    spec.sizes = {16, 32, 64};
    const auto rows = run_sweep(spec, {{1.0, 32}});
    REQUIRE(rows.size() == 2);
    REQUIRE(rows[0].L == 16);
    REQUIRE(rows[1].L == 64);
}

TEST_CASE("sweep results are independent of the worker budget") {
    SweepSpec spec;
    spec.kind = HoppingKind::PowerLaw;
    spec.gamma = 1.7;
    spec.betas = {0.4, 0.8};
    spec.sizes = {16, 32, 64};
    spec.workers = 1;
    const auto serial = run_sweep(spec);
    spec.workers = 4;
    const auto parallel = run_sweep(spec);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        REQUIRE(serial[i].report.E_M == parallel[i].report.E_M);
        REQUIRE(serial[i].report.mu == parallel[i].report.mu);
    }
}

TEST_CASE("analytic infinite-range slopes below and at Tc") {
    const double Tc = 1.0 / std::log(2.0);
    const auto slope_at = [&](double T, double lo, double hi) {
        std::vector<std::pair<double, double>> pts;
        for (int LA = 256; LA <= 4096; LA *= 2) {
            const auto st =
                solve_mu(HoppingModel::infinite_range(1.0, 2 * LA), 1.0 / T, 1.0);
            pts.emplace_back(LA, analytic_mi_infinite_range(2.0 * LA, LA, st.N0,
                                                            st.occ[1]));
        }
        return fit_log_scaling(pts, lo, hi).slope;
    };
    REQUIRE_THAT(slope_at(0.7 * Tc, 256, 4096), WithinAbs(0.50, 0.02));
    REQUIRE_THAT(slope_at(Tc, 256, 4096), WithinAbs(0.25, 0.02));
}

TEST_CASE("below-Tc slope depends on gamma") {
    // gamma in {1.3, 1.5, 1.7} at beta = 0.5 (below all three transitions):
    // slopes must separate pairwise by more than 3x their fit errors
    std::vector<ScalingFit> fits;
    for (const double gamma : {1.3, 1.5, 1.7}) {
        SweepSpec spec;
        spec.kind = HoppingKind::PowerLaw;
        spec.gamma = gamma;
        spec.betas = {0.5};
        spec.sizes = {128, 256, 512, 1024};
        const auto rows = run_sweep(spec);
        std::vector<std::pair<double, double>> pts;
        for (const auto& r : rows) {
            REQUIRE(r.ok);
            pts.emplace_back(r.LA, r.report.E_M);
        }
        fits.push_back(fit_log_scaling(pts, 0.0, 1e9));
    }
    for (std::size_t i = 0; i < fits.size(); ++i) {
        for (std::size_t j = i + 1; j < fits.size(); ++j) {
            const double gap = std::abs(fits[i].slope - fits[j].slope);
            REQUIRE(gap > 3.0 * (fits[i].slope_stderr + fits[j].slope_stderr));
        }
    }
}
