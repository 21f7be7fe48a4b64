#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "bosemi/correlation.hpp"
#include "bosemi/errors.hpp"
#include "bosemi/thermodynamics.hpp"

namespace bosemi {

/// Sweep of mutual-information points over a temperature list and a size
/// ladder, at fixed model family and density.
struct SweepSpec {
    HoppingKind kind = HoppingKind::InfiniteRange;
    double gamma = 0.0;
    double t = 1.0;
    bool thermo_limit = false;
    double n_target = 1.0;
    std::vector<double> betas;
    std::vector<int> sizes;               // strictly increasing
    double partition_fraction = 0.5;      // LA = round(fraction * L), clamped to [1, L-1]
    double tol = 1e-12;
    int workers = 0;                      // 0 -> hardware concurrency

    void validate() const {
        if (!(t > 0.0)) throw domain_error("SweepSpec: t must be > 0");
        if (!(n_target > 0.0)) throw domain_error("SweepSpec: n_target must be > 0");
        if (!(partition_fraction > 0.0 && partition_fraction < 1.0))
            throw domain_error("SweepSpec: partition fraction must be in (0, 1)");
        for (const double b : betas)
            if (!(b > 0.0)) throw domain_error("SweepSpec: all beta must be > 0");
        for (std::size_t i = 1; i < sizes.size(); ++i)
            if (sizes[i] <= sizes[i - 1])
                throw domain_error("SweepSpec: size ladder must be strictly increasing");
        if (kind == HoppingKind::PowerLaw && !(gamma > 1.0))
            throw domain_error("SweepSpec: power-law gamma must be > 1");
    }
};

inline int partition_la(int L, double fraction) {
    const int la = static_cast<int>(std::llround(fraction * L));
    return std::clamp(la, 1, L - 1);
}

/// One sweep point. Per-point failures are recorded in `error` and the sweep
/// continues; `ok` rows carry the full report plus the condensate occupation.
struct SweepRow {
    double beta = 0.0;
    int L = 0;
    int LA = 0;
    bool ok = false;
    EntropyReport report{};
    double N0 = 0.0;
    std::string error;
};

namespace detail {

inline std::string sanitize_error(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '"') c = ';';
    return s;
}

}  // namespace detail

/// Runs every (beta, L) point of the spec, skipping keys listed in `done`
/// (resume support). Points are evaluated concurrently up to the worker
/// budget; each point is pure, and rows land in slots fixed by the sorted
/// job order, so the result is independent of scheduling. Rows come back
/// sorted by (beta, L).
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec,
                                       const std::set<std::pair<double, int>>& done = {}) {
    spec.validate();

    std::vector<std::pair<double, int>> jobs;
    for (const double beta : spec.betas)
        for (const int L : spec.sizes)
            if (done.find({beta, L}) == done.end()) jobs.emplace_back(beta, L);
    std::sort(jobs.begin(), jobs.end());

    std::vector<SweepRow> rows(jobs.size());
    if (jobs.empty()) return rows;

    unsigned budget = spec.workers > 0
                          ? static_cast<unsigned>(spec.workers)
                          : std::max(1u, std::thread::hardware_concurrency());
    budget = std::min<unsigned>(budget, static_cast<unsigned>(jobs.size()));

    std::atomic<std::size_t> next{0};
    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const auto [beta, L] = jobs[i];
            SweepRow& row = rows[i];
            row.beta = beta;
            row.L = L;
            try {
                HoppingModel model;
                switch (spec.kind) {
                    case HoppingKind::NearestNeighbor:
                        model = HoppingModel::nearest_neighbor(spec.t, L);
                        break;
                    case HoppingKind::InfiniteRange:
                        model = HoppingModel::infinite_range(spec.t, L);
                        break;
                    case HoppingKind::PowerLaw:
                        model = HoppingModel::power_law(spec.gamma, spec.t, L,
                                                        spec.thermo_limit);
                        break;
                }
                row.LA = partition_la(L, spec.partition_fraction);
                const GrandCanonicalState state =
                    solve_mu(model, beta, spec.n_target, spec.tol);
                row.report = mutual_information(state, row.LA);
                row.N0 = state.N0;
                row.ok = true;
            } catch (const std::exception& e) {
                row.ok = false;
                row.error = detail::sanitize_error(e.what());
            }
        }
    };

    std::vector<std::thread> pool;
    for (unsigned w = 1; w < budget; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return rows;
}

/// Least-squares fit E_M = a ln(LA) + b over a size window.
struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double slope_stderr = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    int n_points = 0;
};

/// Ordinary least squares of y on ln(x) for points with x inside
/// [window_lo, window_hi]; needs at least 4 in-window points.
inline ScalingFit fit_log_scaling(const std::vector<std::pair<double, double>>& points,
                                  double window_lo, double window_hi) {
    std::vector<double> xs, ys;
    for (const auto& [la, em] : points) {
        if (la >= window_lo && la <= window_hi) {
            xs.push_back(std::log(la));
            ys.push_back(em);
        }
    }
    const int n = static_cast<int>(xs.size());
    if (n < 4)
        throw insufficient_data_error("fit_log_scaling: needs at least 4 in-window points");

    double xbar = 0.0, ybar = 0.0;
    for (int i = 0; i < n; ++i) {
        xbar += xs[i];
        ybar += ys[i];
    }
    xbar /= n;
    ybar /= n;

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double dx = xs[i] - xbar, dy = ys[i] - ybar;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0))
        throw insufficient_data_error("fit_log_scaling: degenerate window (single size)");

    ScalingFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = ybar - fit.slope * xbar;
    double ss_res = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    fit.slope_stderr = n > 2 ? std::sqrt(ss_res / (n - 2) / sxx) : 0.0;
    fit.window_lo = window_lo;
    fit.window_hi = window_hi;
    fit.n_points = n;
    return fit;
}

}  // namespace bosemi
