// bosemi: entanglement entropy and mutual information of free Bose gases
// on 1D lattices. Subcommands: dispersion, tc, mu, zero-entropy, mutual-info,
// sweep, fit. Exit codes: 0 success, 2 domain/usage error, 3 insufficient
// data, 4 convergence failure.

#include <algorithm>
#include <clocale>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bosemi/analysis.hpp"
#include "bosemi/correlation.hpp"
#include "bosemi/errors.hpp"
#include "bosemi/model.hpp"
#include "bosemi/table.hpp"
#include "bosemi/thermodynamics.hpp"
#include "bosemi/zero_temperature.hpp"

namespace {

using bosemi::tab::Cell;
using bosemi::tab::Table;

struct ModelOpts {
    std::string model;
    double gamma = 0.0;
    double t = 1.0;
    bool thermo_limit = false;
};

void add_model_opts(CLI::App* cmd, ModelOpts& mo, bool require = true) {
    auto* opt = cmd->add_option("--model", mo.model, "hopping kind: nn|infinite|powerlaw")
                    ->check(CLI::IsMember({"nn", "infinite", "powerlaw"}));
    if (require) opt->required();
    cmd->add_option("--gamma", mo.gamma, "power-law exponent (required for powerlaw)");
    cmd->add_option("--t", mo.t, "hopping energy")->capture_default_str();
    cmd->add_flag("--thermo-limit", mo.thermo_limit,
                  "powerlaw: build tables from the thermodynamic-limit dispersion");
}

bosemi::HoppingKind parse_kind(const std::string& s) {
    if (s == "nn") return bosemi::HoppingKind::NearestNeighbor;
    if (s == "infinite") return bosemi::HoppingKind::InfiniteRange;
    if (s == "powerlaw") return bosemi::HoppingKind::PowerLaw;
    throw bosemi::domain_error("unknown model kind: " + s);
}

bosemi::HoppingModel make_model(const ModelOpts& mo, int L) {
    switch (parse_kind(mo.model)) {
        case bosemi::HoppingKind::NearestNeighbor:
            return bosemi::HoppingModel::nearest_neighbor(mo.t, L);
        case bosemi::HoppingKind::InfiniteRange:
            return bosemi::HoppingModel::infinite_range(mo.t, L);
        case bosemi::HoppingKind::PowerLaw:
            if (!(mo.gamma > 1.0))
                throw bosemi::domain_error("powerlaw model requires --gamma > 1");
            return bosemi::HoppingModel::power_law(mo.gamma, mo.t, L, mo.thermo_limit);
    }
    throw bosemi::domain_error("unknown model kind");
}

struct OutputOpts {
    std::string format = "csv";
    std::string path;
};

void add_output_opts(CLI::App* cmd, OutputOpts& oo) {
    cmd->add_option("--format", oo.format, "output format")->capture_default_str()
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output,-o", oo.path, "output file (default: stdout)");
}

void emit(const Table& t, const OutputOpts& oo) {
    std::ostringstream buf;
    if (oo.format == "json")
        bosemi::tab::write_jsonl(buf, t);
    else
        bosemi::tab::write_csv(buf, t);
    if (oo.path.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream f(oo.path, std::ios::binary);
        if (!f) throw bosemi::domain_error("cannot open output file: " + oo.path);
        f << buf.str();
    }
}

// beta list from either --beta or --T (mutually exclusive, enforced by CLI11)
std::vector<double> resolve_betas(const std::vector<double>& betas,
                                  const std::vector<double>& temps) {
    if (!betas.empty()) return betas;
    std::vector<double> out;
    for (const double T : temps) {
        if (!(T > 0.0)) throw bosemi::domain_error("temperatures must be > 0");
        out.push_back(1.0 / T);
    }
    return out;
}

// "A:B" -> doubling ladder A, 2A, ..., <= B; or a comma list of sizes.
std::vector<int> parse_sizes(const std::string& s) {
    std::vector<int> out;
    if (s.find(':') != std::string::npos) {
        const auto pos = s.find(':');
        const long a = std::strtol(s.substr(0, pos).c_str(), nullptr, 10);
        const long b = std::strtol(s.substr(pos + 1).c_str(), nullptr, 10);
        if (a < 2 || b < a) throw bosemi::domain_error("bad size ladder: " + s);
        for (long v = a; v <= b; v *= 2) out.push_back(static_cast<int>(v));
        return out;
    }
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const long v = std::strtol(tok.c_str(), nullptr, 10);
        if (v < 2) throw bosemi::domain_error("bad size list: " + s);
        out.push_back(static_cast<int>(v));
    }
    if (out.empty()) throw bosemi::domain_error("empty size list");
    return out;
}

std::pair<double, double> parse_window(const std::string& s) {
    const auto pos = s.find(':');
    if (pos == std::string::npos)
        throw bosemi::domain_error("window must be lo:hi, got " + s);
    return {std::strtod(s.substr(0, pos).c_str(), nullptr),
            std::strtod(s.substr(pos + 1).c_str(), nullptr)};
}

int resolve_workers(int flag_value) {
    if (const char* env = std::getenv("BOSE_MI_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<int>(v);
    }
    return flag_value;
}

// ---------------------------------------------------------------- dispersion

struct DispersionArgs {
    ModelOpts mo;
    int L = 0;
    OutputOpts out;
};

int run_dispersion(const DispersionArgs& a) {
    if (a.mo.model == "powerlaw" && !(a.mo.gamma > 1.0))
        throw bosemi::domain_error("powerlaw model requires --gamma > 1");
    if (a.L < 2) throw bosemi::domain_error("--L must be >= 2");
    const auto model = make_model(a.mo, a.L);
    const auto tab = bosemi::dispersion_table(model);

    Table t;
    t.headers = {"k", "eps"};
    for (int m = 0; m < a.L; ++m)
        t.rows.push_back({Cell::of(tab.k[m]), Cell::of(tab.eps[m])});
    emit(t, a.out);
    return 0;
}

// ------------------------------------------------------------------------ tc

struct TcArgs {
    ModelOpts mo;
    double n = 1.0;
    double tol = 1e-8;
    OutputOpts out;
};

int run_tc(const TcArgs& a) {
    if (a.mo.model == "nn") {
        std::cout << "no finite-T BEC\n";
        return 0;
    }
    bosemi::TcResult tc;
    Cell gamma_cell = Cell::null();
    if (a.mo.model == "infinite") {
        tc = bosemi::tc_infinite_range(a.mo.t, a.n);
    } else {
        tc = bosemi::tc_long_range(a.mo.gamma, a.mo.t, a.n, a.tol);
        gamma_cell = Cell::of(a.mo.gamma);
    }
    Table t;
    t.headers = {"model", "gamma", "n", "t", "Tc", "beta_c", "method"};
    t.rows.push_back({Cell::of_text(a.mo.model), gamma_cell, Cell::of(a.n),
                      Cell::of(a.mo.t), Cell::of(tc.Tc), Cell::of(tc.beta_c),
                      Cell::of_text(bosemi::to_string(tc.method))});
    emit(t, a.out);
    return 0;
}

// ------------------------------------------------------------------------ mu

struct MuArgs {
    ModelOpts mo;
    int L = 0;
    std::vector<double> betas, temps;
    double n = 1.0;
    double tol = 1e-12;
    OutputOpts out;
};

int run_mu(const MuArgs& a) {
    const auto model = make_model(a.mo, a.L);
    const auto betas = resolve_betas(a.betas, a.temps);
    if (betas.empty()) throw bosemi::domain_error("provide --beta or --T");

    Table t;
    t.headers = {"L", "beta", "T", "mu", "N0", "n_avg", "S"};
    for (const double beta : betas) {
        const auto st = bosemi::solve_mu(model, beta, a.n, a.tol);
        t.rows.push_back({Cell::of_int(a.L), Cell::of(beta), Cell::of(1.0 / beta),
                          Cell::of(st.mu), Cell::of(st.N0), Cell::of(st.n_avg),
                          Cell::of(bosemi::thermal_entropy(st))});
    }
    emit(t, a.out);
    return 0;
}

// ---------------------------------------------------------------- zero-entropy

struct ZeroEntropyArgs {
    std::vector<long long> Ns;
    std::string ladder;
    long long LA = 1, L = 2;
    OutputOpts out;
};

int run_zero_entropy(const ZeroEntropyArgs& a) {
    std::vector<long long> Ns = a.Ns;
    if (!a.ladder.empty()) {
        const auto pos = a.ladder.find(':');
        if (pos == std::string::npos)
            throw bosemi::domain_error("--N-ladder must be lo:hi");
        const long long lo = std::strtoll(a.ladder.substr(0, pos).c_str(), nullptr, 10);
        const long long hi = std::strtoll(a.ladder.substr(pos + 1).c_str(), nullptr, 10);
        if (lo < 1 || hi < lo) throw bosemi::domain_error("bad --N-ladder");
        for (long long v = lo; v <= hi; v *= 10) Ns.push_back(v);
    }
    if (Ns.empty()) throw bosemi::domain_error("provide --N or --N-ladder");

    const double p = static_cast<double>(a.LA) / static_cast<double>(a.L);
    Table t;
    t.headers = {"N", "E_exact", "E_gauss", "E_poisson", "slope"};
    double prev_e = 0.0, prev_ln = 0.0;
    bool have_prev = false;
    for (const long long N : Ns) {
        const auto spec = bosemi::schmidt_spectrum(N, a.LA, a.L);
        const double e = bosemi::entanglement_entropy_exact(spec);
        const double eg = bosemi::entropy_gaussian_asymptotic(static_cast<double>(N));
        const double ep = bosemi::entropy_poisson_asymptotic(static_cast<double>(N) * p);
        Cell slope = Cell::null();
        const double ln_n = std::log(static_cast<double>(N));
        if (have_prev) slope = Cell::of((e - prev_e) / (ln_n - prev_ln));
        t.rows.push_back(
            {Cell::of_int(N), Cell::of(e), Cell::of(eg), Cell::of(ep), slope});
        prev_e = e;
        prev_ln = ln_n;
        have_prev = true;
    }
    emit(t, a.out);
    return 0;
}

// ---------------------------------------------------------------- mutual-info

struct MutualInfoArgs {
    ModelOpts mo;
    int L = 0;
    int LA = 0;
    std::vector<double> betas, temps;
    double n = 1.0;
    double tol = 1e-12;
    OutputOpts out;
};

int run_mutual_info(const MutualInfoArgs& a) {
    const auto model = make_model(a.mo, a.L);
    const auto betas = resolve_betas(a.betas, a.temps);
    if (betas.empty()) throw bosemi::domain_error("provide --beta or --T");
    const int LA = a.LA > 0 ? a.LA : a.L / 2;

    Table t;
    t.headers = {"L", "LA", "LB", "beta", "mu", "E_A", "E_B", "S", "E_M"};
    for (const double beta : betas) {
        const auto rep = bosemi::mutual_information(model, beta, a.n, LA, a.tol);
        t.rows.push_back({Cell::of_int(rep.L), Cell::of_int(rep.LA),
                          Cell::of_int(rep.LB), Cell::of(rep.beta), Cell::of(rep.mu),
                          Cell::of(rep.E_A), Cell::of(rep.E_B), Cell::of(rep.S),
                          Cell::of(rep.E_M)});
    }
    emit(t, a.out);
    return 0;
}

// ---------------------------------------------------------------------- sweep

const std::vector<std::string> kSweepHeaders = {"beta", "L",   "LA", "mu",  "N0",
                                                "E_A",  "E_B", "S",  "E_M", "error"};

struct SweepArgs {
    ModelOpts mo;
    std::string sizes;
    std::vector<double> betas, temps;
    double n = 1.0;
    double fraction = 0.5;
    double tol = 1e-12;
    int workers = 0;
    bool resume = false;
    OutputOpts out;
};

std::vector<Cell> sweep_row_cells(const bosemi::SweepRow& row) {
    if (row.ok) {
        const auto& r = row.report;
        return {Cell::of(row.beta), Cell::of_int(row.L), Cell::of_int(row.LA),
                Cell::of(r.mu),     Cell::of(row.N0),    Cell::of(r.E_A),
                Cell::of(r.E_B),    Cell::of(r.S),       Cell::of(r.E_M),
                Cell::of_text("")};
    }
    return {Cell::of(row.beta), Cell::of_int(row.L), Cell::of_int(row.LA),
            Cell::null(),       Cell::null(),        Cell::null(),
            Cell::null(),       Cell::null(),        Cell::null(),
            Cell::of_text(row.error)};
}

// parses prior sweep output (csv or json lines) back into typed cells
std::vector<std::vector<Cell>> load_previous_rows(const std::string& path,
                                                  const std::string& format,
                                                  std::set<std::pair<double, int>>& done) {
    std::vector<std::vector<Cell>> rows;
    std::ifstream f(path);
    if (!f) return rows;

    const auto cell_from = [](const std::string& header, const std::string& text) {
        if (header == "error") return Cell::of_text(text);
        if (text.empty() || text == "nan" || text == "null") return Cell::null();
        if (header == "L" || header == "LA")
            return Cell::of_int(std::strtoll(text.c_str(), nullptr, 10));
        return Cell::of(std::strtod(text.c_str(), nullptr));
    };

    if (format == "json") {
        std::string line;
        while (std::getline(f, line)) {
            if (line.empty()) continue;
            const auto j = nlohmann::json::parse(line);
            std::vector<Cell> row;
            for (const auto& h : kSweepHeaders) {
                if (!j.contains(h) || j[h].is_null()) {
                    row.push_back(h == "error" ? Cell::of_text("") : Cell::null());
                } else if (h == "error") {
                    row.push_back(Cell::of_text(j[h].get<std::string>()));
                } else if (h == "L" || h == "LA") {
                    row.push_back(Cell::of_int(j[h].get<long long>()));
                } else {
                    row.push_back(Cell::of(j[h].get<double>()));
                }
            }
            done.insert({row[0].real, static_cast<int>(row[1].integer)});
            rows.push_back(std::move(row));
        }
        return rows;
    }

    const auto parsed = bosemi::tab::parse_csv(f);
    for (const auto& r : parsed.rows) {
        std::vector<Cell> row;
        for (std::size_t i = 0; i < kSweepHeaders.size() && i < r.size(); ++i)
            row.push_back(cell_from(kSweepHeaders[i], r[i]));
        if (row.size() == kSweepHeaders.size()) {
            done.insert({row[0].real, static_cast<int>(row[1].integer)});
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

int run_sweep_cmd(const SweepArgs& a) {
    bosemi::SweepSpec spec;
    spec.kind = parse_kind(a.mo.model);
    spec.gamma = a.mo.gamma;
    spec.t = a.mo.t;
    spec.thermo_limit = a.mo.thermo_limit;
    spec.n_target = a.n;
    spec.betas = resolve_betas(a.betas, a.temps);
    spec.sizes = a.sizes.empty() ? std::vector<int>{} : parse_sizes(a.sizes);
    spec.partition_fraction = a.fraction;
    spec.tol = a.tol;
    spec.workers = resolve_workers(a.workers);

    std::set<std::pair<double, int>> done;
    std::vector<std::vector<Cell>> merged;
    if (a.resume && !a.out.path.empty())
        merged = load_previous_rows(a.out.path, a.out.format, done);

    const auto rows = bosemi::run_sweep(spec, done);
    for (const auto& row : rows) merged.push_back(sweep_row_cells(row));

    std::sort(merged.begin(), merged.end(),
              [](const std::vector<Cell>& x, const std::vector<Cell>& y) {
                  if (x[0].real != y[0].real) return x[0].real < y[0].real;
                  return x[1].integer < y[1].integer;
              });

    Table t;
    t.headers = kSweepHeaders;
    t.rows = std::move(merged);
    emit(t, a.out);
    return 0;
}

// ------------------------------------------------------------------------ fit

struct FitArgs {
    std::string input;
    std::string input_format;  // "", "csv", "json"
    std::string window;
    std::string x_col = "LA";
    std::string y_col = "E_M";
    OutputOpts out;
};

struct FitPoint {
    std::string beta_text;  // "" when the table has no beta column
    double x = 0.0, y = 0.0;
};

std::vector<FitPoint> load_fit_points(const FitArgs& a) {
    std::ifstream f(a.input);
    if (!f) throw bosemi::domain_error("cannot open input file: " + a.input);
    std::string fmt = a.input_format;
    if (fmt.empty())
        fmt = a.input.size() > 5 && a.input.substr(a.input.size() - 5) == ".json"
                  ? "json"
                  : "csv";

    std::vector<FitPoint> pts;
    if (fmt == "json") {
        std::string line;
        while (std::getline(f, line)) {
            if (line.empty()) continue;
            const auto j = nlohmann::json::parse(line);
            if (j.contains("error") && j["error"].is_string() &&
                !j["error"].get<std::string>().empty())
                continue;
            if (!j.contains(a.x_col) || !j.contains(a.y_col)) continue;
            if (j[a.x_col].is_null() || j[a.y_col].is_null()) continue;
            FitPoint p;
            p.x = j[a.x_col].get<double>();
            p.y = j[a.y_col].get<double>();
            if (j.contains("beta") && !j["beta"].is_null())
                p.beta_text = bosemi::tab::fmt_real(j["beta"].get<double>());
            pts.push_back(p);
        }
        return pts;
    }

    const auto parsed = bosemi::tab::parse_csv(f);
    const int xi = parsed.column(a.x_col);
    const int yi = parsed.column(a.y_col);
    const int bi = parsed.column("beta");
    const int ei = parsed.column("error");
    if (xi < 0 || yi < 0)
        throw bosemi::domain_error("input table lacks column " +
                                   (xi < 0 ? a.x_col : a.y_col));
    for (const auto& r : parsed.rows) {
        if (ei >= 0 && ei < static_cast<int>(r.size()) && !r[ei].empty()) continue;
        const std::string& xs = r[xi];
        const std::string& ys = r[yi];
        if (xs == "nan" || ys == "nan" || xs.empty() || ys.empty()) continue;
        FitPoint p;
        p.x = std::strtod(xs.c_str(), nullptr);
        p.y = std::strtod(ys.c_str(), nullptr);
        if (bi >= 0 && bi < static_cast<int>(r.size())) p.beta_text = r[bi];
        pts.push_back(p);
    }
    return pts;
}

int run_fit(const FitArgs& a) {
    const auto pts = load_fit_points(a);
    if (pts.empty()) throw bosemi::insufficient_data_error("fit: no usable rows");

    // group by beta, preserving first-seen order (input is sorted by beta)
    std::vector<std::string> group_order;
    std::map<std::string, std::vector<std::pair<double, double>>> groups;
    for (const auto& p : pts) {
        if (groups.find(p.beta_text) == groups.end()) group_order.push_back(p.beta_text);
        groups[p.beta_text].emplace_back(p.x, p.y);
    }

    Table t;
    t.headers = {"beta",      "slope",     "intercept", "r_squared",
                 "slope_err", "window_lo", "window_hi", "n_points"};
    for (const auto& key : group_order) {
        const auto& g = groups[key];
        double lo, hi;
        if (!a.window.empty()) {
            std::tie(lo, hi) = parse_window(a.window);
        } else {
            // default: top half of the size ladder (largest sizes)
            std::vector<double> xs;
            for (const auto& [x, y] : g) xs.push_back(x);
            std::sort(xs.begin(), xs.end());
            xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
            lo = xs[xs.size() / 2];
            hi = xs.back();
        }
        const auto fit = bosemi::fit_log_scaling(g, lo, hi);
        t.rows.push_back({key.empty() ? Cell::null()
                                      : Cell::of(std::strtod(key.c_str(), nullptr)),
                          Cell::of(fit.slope), Cell::of(fit.intercept),
                          Cell::of(fit.r_squared), Cell::of(fit.slope_stderr),
                          Cell::of(fit.window_lo), Cell::of(fit.window_hi),
                          Cell::of_int(fit.n_points)});
    }
    emit(t, a.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");
    CLI::App app{"free-boson lattice entanglement and mutual information"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "INI config file; keys live under a [subcommand] section "
                   "(command-line flags win)");

    DispersionArgs da;
    auto* cmd_dispersion = app.add_subcommand("dispersion", "tabulate eps(k_m)");
    cmd_dispersion->fallthrough();
    add_model_opts(cmd_dispersion, da.mo);
    cmd_dispersion->add_option("--L", da.L, "lattice size");
    add_output_opts(cmd_dispersion, da.out);

    TcArgs ta;
    auto* cmd_tc = app.add_subcommand("tc", "BEC transition temperature");
    cmd_tc->fallthrough();
    add_model_opts(cmd_tc, ta.mo);
    cmd_tc->add_option("--n", ta.n, "target density")->capture_default_str();
    cmd_tc->add_option("--tol", ta.tol, "density residual tolerance")->capture_default_str();
    add_output_opts(cmd_tc, ta.out);

    MuArgs ma;
    auto* cmd_mu = app.add_subcommand("mu", "solve the chemical potential");
    cmd_mu->fallthrough();
    add_model_opts(cmd_mu, ma.mo);
    cmd_mu->add_option("--L", ma.L, "lattice size")->required();
    auto* mu_beta = cmd_mu->add_option("--beta", ma.betas, "inverse temperature(s)")->delimiter(',');
    cmd_mu->add_option("--T", ma.temps, "temperature(s)")->delimiter(',')->excludes(mu_beta);
    cmd_mu->add_option("--n", ma.n, "target density")->capture_default_str();
    cmd_mu->add_option("--tol", ma.tol, "density residual tolerance")->capture_default_str();
    add_output_opts(cmd_mu, ma.out);

    ZeroEntropyArgs za;
    auto* cmd_zero = app.add_subcommand("zero-entropy",
                                        "ground-state entanglement entropy table");
    cmd_zero->fallthrough();
    cmd_zero->add_option("--N", za.Ns, "particle numbers")->delimiter(',');
    cmd_zero->add_option("--N-ladder", za.ladder, "lo:hi, multiplying by 10");
    cmd_zero->add_option("--LA", za.LA, "subsystem size (ratio LA/L matters)")->capture_default_str();
    cmd_zero->add_option("--L", za.L, "system size")->capture_default_str();
    add_output_opts(cmd_zero, za.out);

    MutualInfoArgs mia;
    auto* cmd_mi = app.add_subcommand("mutual-info", "one mutual-information point");
    cmd_mi->fallthrough();
    add_model_opts(cmd_mi, mia.mo);
    cmd_mi->add_option("--L", mia.L, "lattice size")->required();
    cmd_mi->add_option("--LA", mia.LA, "subsystem size (default L/2)");
    auto* mi_beta = cmd_mi->add_option("--beta", mia.betas, "inverse temperature(s)")->delimiter(',');
    cmd_mi->add_option("--T", mia.temps, "temperature(s)")->delimiter(',')->excludes(mi_beta);
    cmd_mi->add_option("--n", mia.n, "target density")->capture_default_str();
    cmd_mi->add_option("--tol", mia.tol, "density residual tolerance")->capture_default_str();
    add_output_opts(cmd_mi, mia.out);

    SweepArgs sa;
    auto* cmd_sweep = app.add_subcommand("sweep", "mutual information over a size ladder");
    cmd_sweep->fallthrough();
    add_model_opts(cmd_sweep, sa.mo);
    cmd_sweep->add_option("--sizes", sa.sizes, "doubling ladder lo:hi or comma list")
        ->required();
    auto* sw_beta = cmd_sweep->add_option("--beta", sa.betas, "inverse temperature(s)")->delimiter(',');
    cmd_sweep->add_option("--T", sa.temps, "temperature(s)")->delimiter(',')->excludes(sw_beta);
    cmd_sweep->add_option("--n", sa.n, "target density")->capture_default_str();
    cmd_sweep->add_option("--partition-fraction", sa.fraction, "LA/L")->capture_default_str();
    cmd_sweep->add_option("--tol", sa.tol, "density residual tolerance")->capture_default_str();
    cmd_sweep->add_option("--workers", sa.workers,
                          "worker budget (0 = hardware; BOSE_MI_WORKERS overrides)")->capture_default_str();
    cmd_sweep->add_flag("--resume", sa.resume,
                        "reuse rows already present in the output file");
    add_output_opts(cmd_sweep, sa.out);

    FitArgs fa;
    auto* cmd_fit = app.add_subcommand("fit", "least-squares E_M = a ln(LA) + b");
    cmd_fit->fallthrough();
    cmd_fit->add_option("--input,-i", fa.input, "sweep table (csv or json lines)")
        ->required();
    cmd_fit->add_option("--input-format", fa.input_format, "override input format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd_fit->add_option("--window", fa.window,
                        "size window lo:hi (default: top half of the ladder)");
    cmd_fit->add_option("--x-col", fa.x_col, "abscissa column")->capture_default_str();
    cmd_fit->add_option("--y-col", fa.y_col, "ordinate column")->capture_default_str();
    add_output_opts(cmd_fit, fa.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return 2;
    }

    try {
        if (cmd_dispersion->parsed()) return run_dispersion(da);
        if (cmd_tc->parsed()) return run_tc(ta);
        if (cmd_mu->parsed()) return run_mu(ma);
        if (cmd_zero->parsed()) return run_zero_entropy(za);
        if (cmd_mi->parsed()) return run_mutual_info(mia);
        if (cmd_sweep->parsed()) return run_sweep_cmd(sa);
        if (cmd_fit->parsed()) return run_fit(fa);
    } catch (const bosemi::insufficient_data_error& e) {
        std::cerr << "error: insufficient-data: " << e.what() << "\n";
        return 3;
    } catch (const bosemi::convergence_error& e) {
        std::cerr << "error: convergence: " << e.what() << "\n";
        return 4;
    } catch (const bosemi::domain_error& e) {
        std::cerr << "error: domain: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
