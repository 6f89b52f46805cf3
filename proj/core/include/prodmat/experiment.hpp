#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "prodmat/ensemble.hpp"
#include "prodmat/limitlaw.hpp"
#include "prodmat/moments.hpp"
#include "prodmat/spectral.hpp"

namespace prodmat {

struct ZGridSpec {
    double re_min = -3.0;
    double re_max = 3.0;
    long count = 41;
    double im = 1.0;
};

// One bag of knobs for every command; fields a command does not use are ignored.
// m = 0 means "infer from the y/p list, else 1". variant/truncate empty means
// the per-command default.
struct ExperimentConfig {
    std::string command;
    int m = 0;
    std::int64_t n = 400;
    std::vector<std::string> y_text;
    std::vector<std::int64_t> p;  // p_1..p_m, overrides y_text
    std::string dist = "gaussian";
    double a = 5.0;
    std::uint64_t seed = 1;
    int trials = 10;
    int k = 6;
    std::string variant;
    double vmin = 1e-4;
    long grid_points = 2001;
    ZGridSpec zgrid;
    std::string truncate;
    std::vector<std::int64_t> n_list;
    std::string out_dir = ".";
    int threads = 1;  // 0 = hardware concurrency
};

// Requested ratios: explicit p list (with n) wins, then y strings, then all-ones.
std::vector<BigRat> ratio_list(const ExperimentConfig& cfg);

Variant resolve_variant(const std::string& text, Variant fallback);

struct ResolvedModel {
    DimensionProfile profile;
    EntryLaw law;
    std::vector<BigRat> y_exact;  // n / p_l recomputed from the integer sizes
    bool truncate = false;
    double trunc_c = 1.0;
    double trunc_tau = 0.0;  // 0 = automatic level per trial
    std::string truncate_mode;
};

// Rounds ratios to integer sizes p_l = round(n / y_l); truncation defaults to
// off for bounded laws and automatic level selection for unbounded ones.
ResolvedModel resolve_model(const ExperimentConfig& cfg, std::int64_t n);
inline ResolvedModel resolve_model(const ExperimentConfig& cfg) {
    return resolve_model(cfg, cfg.n);
}

// Singular values of one sampled (optionally truncated and centered) product.
std::vector<double> run_trial(const ResolvedModel& model, std::uint64_t trial_seed);

// All trials with per-trial substream seeds; the worker pool races but results
// land in trial order, so output never depends on the thread count.
std::vector<std::vector<double>> run_trials(const ResolvedModel& model, std::uint64_t seed,
                                            int trials, int threads);

struct ResidualStats {
    Variant variant = Variant::symmetrized;
    std::vector<Cplx> z;
    std::vector<Cplx> s_pooled;      // trial-averaged empirical transform per z
    std::vector<double> abs_delta;   // |equation residual| at the pooled transform
    double max_abs = 0.0;
    double mean_abs = 0.0;
    double mean_abs_stderr = 0.0;    // across trials, of the per-trial grid mean
};

ResidualStats residual_stats(const std::vector<std::vector<double>>& trial_svals,
                             const DimensionProfile& profile, const LimitLawSpec& spec,
                             const ZGridSpec& zgrid, Variant variant);

// Graded grid against the variant's support; the symmetrized grid mirrors the
// squares support (two bands when the lower edge is positive).
DensityCurve reference_curve(const LimitLawSpec& spec, Variant variant, double vmin,
                             long points);

struct SimulateResult {
    ExperimentConfig config;
    ResolvedModel model;
    Variant variant = Variant::squares;
    EmpiricalCDF pooled;  // squares ESD over all trials
    DensityCurve curve;
    double edge_lo = 0.0, edge_hi = 0.0;  // squares support
    double delta = 0.0;
    double delta_stderr = 0.0;
    std::vector<double> delta_per_trial;
    std::vector<double> limit_moments;      // k = 0..K
    std::vector<double> empirical_moments;  // pooled
    std::vector<double> moment_stderr;
    std::vector<double> moment_rel_error;
    ResidualStats residual;  // symmetrized-equation diagnostic
};

SimulateResult run_simulation(const ExperimentConfig& cfg);

struct TrendRow {
    std::int64_t n = 0;
    double delta = 0.0;
    double std_error = 0.0;
};

struct ConvergenceResult {
    ExperimentConfig config;
    Variant variant = Variant::squares;
    std::vector<TrendRow> rows;
};

ConvergenceResult run_convergence(const ExperimentConfig& cfg);

struct ResidualResult {
    ExperimentConfig config;
    ResolvedModel model;
    ResidualStats stats;
};

ResidualResult run_residual(const ExperimentConfig& cfg);

struct LimitResult {
    ExperimentConfig config;
    LimitLawSpec spec;
    Variant variant = Variant::squares;
    DensityCurve curve;
};

LimitResult run_limit(const ExperimentConfig& cfg);

MomentTable run_moments(const ExperimentConfig& cfg);

// Each command prints its primary table/JSON to `out` and drops the same bytes
// (plus companions) under config.out_dir. Timing goes to stderr only, and the
// config echo omits the thread count, so output bytes depend on nothing but
// (config, seed).
int cmd_moments(const ExperimentConfig& cfg, std::ostream& out);
int cmd_limit(const ExperimentConfig& cfg, std::ostream& out);
int cmd_simulate(const ExperimentConfig& cfg, std::ostream& out);
int cmd_convergence(const ExperimentConfig& cfg, std::ostream& out);
int cmd_residual(const ExperimentConfig& cfg, std::ostream& out);

// Dispatch plus exit-code policy: 0 ok, 2 config error, 3 numerical failure.
int run_command(const ExperimentConfig& cfg, std::ostream& out);

}  // namespace prodmat
