#include "prodmat/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "prodmat/hermitization.hpp"
#include "prodmat/rng.hpp"

namespace prodmat {

namespace {

std::string f17(double v) {
    char b[48];
    std::snprintf(b, sizeof b, "%.17g", v);
    return b;
}

std::string f12(double v) {
    char b[48];
    std::snprintf(b, sizeof b, "%.12g", v);
    return b;
}

std::string json_nums(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += f17(v[i]);
    }
    return s + "]";
}

std::string json_ints(const std::vector<std::int64_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s + "]";
}

std::string json_ratios(const std::vector<BigRat>& y) {
    std::string s = "[";
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i) s += ',';
        s += '"' + rational_string(y[i]) + '"';
    }
    return s + "]";
}

double mean_of(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return v.empty() ? 0.0 : acc / double(v.size());
}

double std_error_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double mu = mean_of(v);
    double acc = 0.0;
    for (double x : v) acc += (x - mu) * (x - mu);
    return std::sqrt(acc / double(v.size() - 1) / double(v.size()));
}

int effective_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? int(hc) : 1;
}

const char* variant_name(Variant v) {
    return v == Variant::squares ? "squares" : "symmetrized";
}

std::vector<Cplx> z_points(const ZGridSpec& zg) {
    if (zg.count < 1) throw std::invalid_argument("z grid needs at least one point");
    if (!(zg.im > 0)) throw std::invalid_argument("z grid must sit in the upper half-plane");
    if (zg.count > 1 && !(zg.re_max > zg.re_min))
        throw std::invalid_argument("z grid endpoints out of order");
    std::vector<Cplx> z;
    z.reserve(std::size_t(zg.count));
    if (zg.count == 1) {
        z.emplace_back(zg.re_min, zg.im);
        return z;
    }
    const double step = (zg.re_max - zg.re_min) / double(zg.count - 1);
    for (long i = 0; i < zg.count; ++i) z.emplace_back(zg.re_min + step * double(i), zg.im);
    return z;
}

std::string zgrid_json(const ZGridSpec& zg) {
    return "{\"re_min\":" + f17(zg.re_min) + ",\"re_max\":" + f17(zg.re_max) +
           ",\"count\":" + std::to_string(zg.count) + ",\"im\":" + f17(zg.im) + "}";
}

// The echo deliberately omits thread count and timing: outputs must be a pure
// function of (config, seed).
std::string echo_sampled(const ExperimentConfig& cfg, const ResolvedModel& model,
                         Variant variant, bool with_k, bool with_vgrid, bool with_zgrid) {
    std::string s = "{\"command\":\"" + cfg.command + "\"";
    s += ",\"m\":" + std::to_string(model.profile.m);
    s += ",\"n\":" + std::to_string(model.profile.n());
    s += ",\"p\":" + json_ints(model.profile.p);
    s += ",\"y\":" + json_ratios(model.y_exact);
    s += ",\"y_effective\":" + json_nums(model.profile.y);
    s += ",\"dist\":\"" + law_name(model.law) + "\"";
    if (model.law.kind == LawKind::three_point_heavy) s += ",\"a\":" + f17(model.law.a);
    s += ",\"seed\":" + std::to_string(cfg.seed);
    s += ",\"trials\":" + std::to_string(cfg.trials);
    s += ",\"truncate\":\"" + model.truncate_mode + "\"";
    if (with_k) s += ",\"k\":" + std::to_string(cfg.k);
    s += ",\"variant\":\"";
    s += variant_name(variant);
    s += '"';
    if (with_vgrid)
        s += ",\"vmin\":" + f17(cfg.vmin) + ",\"grid_points\":" + std::to_string(cfg.grid_points);
    if (with_zgrid) s += ",\"z_grid\":" + zgrid_json(cfg.zgrid);
    s += ",\"out\":\"" + cfg.out_dir + "\"}";
    return s;
}

void write_output_file(const std::string& dir, const std::string& name,
                       const std::string& bytes) {
    namespace fs = std::filesystem;
    const fs::path base = dir.empty() ? fs::path(".") : fs::path(dir);
    fs::create_directories(base);
    std::ofstream os(base / name, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + (base / name).string());
    os << bytes;
}

struct Stopwatch {
    const char* label;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    explicit Stopwatch(const char* l) : label(l) {}
    ~Stopwatch() {
        const auto dt = std::chrono::steady_clock::now() - start;
        std::fprintf(stderr, "%s: %.3f s\n", label,
                     std::chrono::duration<double>(dt).count());
    }
};

int list_consistent_m(const ExperimentConfig& cfg, std::size_t list_size) {
    if (list_size == 0) return cfg.m > 0 ? cfg.m : 1;
    if (cfg.m > 0 && cfg.m != int(list_size))
        throw std::invalid_argument("--m disagrees with the length of the ratio/size list");
    return int(list_size);
}

double delta_against(const EmpiricalCDF& squares_esd, Variant variant,
                     const MonotoneCubic& G) {
    if (variant == Variant::squares)
        return kolmogorov_distance(squares_esd, [&](double t) { return G(t); });
    const EmpiricalCDF sym = symmetrize(squares_esd);
    return kolmogorov_distance(sym, [&](double t) { return G(t); });
}

EmpiricalCDF pool_squares(const std::vector<std::vector<double>>& trial_svals) {
    std::size_t total = 0;
    for (const auto& sv : trial_svals) total += sv.size();
    std::vector<std::pair<double, double>> atoms;
    atoms.reserve(total);
    const double w = 1.0 / double(total);
    for (const auto& sv : trial_svals)
        for (double s : sv) atoms.emplace_back(s * s, w);
    return make_ecdf(std::move(atoms));
}

}  // namespace

std::vector<BigRat> ratio_list(const ExperimentConfig& cfg) {
    std::vector<BigRat> y;
    if (!cfg.p.empty()) {
        if (cfg.n < 1) throw std::invalid_argument("n must be positive");
        for (std::int64_t pl : cfg.p) {
            if (pl < cfg.n)
                throw std::invalid_argument("every p entry must be at least n");
            y.emplace_back(BigInt(cfg.n), BigInt(pl));
        }
    } else if (!cfg.y_text.empty()) {
        for (const auto& t : cfg.y_text) {
            BigRat r = parse_rational(t);
            if (!(r > 0) || r > 1)
                throw std::invalid_argument("ratios must lie in (0, 1]: " + t);
            y.push_back(std::move(r));
        }
    } else {
        y.assign(std::size_t(list_consistent_m(cfg, 0)), BigRat(1));
    }
    list_consistent_m(cfg, y.size());
    return y;
}

Variant resolve_variant(const std::string& text, Variant fallback) {
    if (text.empty()) return fallback;
    if (text == "squares") return Variant::squares;
    if (text == "symmetrized") return Variant::symmetrized;
    throw std::invalid_argument("variant must be squares or symmetrized: " + text);
}

ResolvedModel resolve_model(const ExperimentConfig& cfg, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    ResolvedModel model;
    model.law = parse_law(cfg.dist, cfg.a);

    std::vector<std::int64_t> dims{n};
    if (!cfg.p.empty()) {
        list_consistent_m(cfg, cfg.p.size());
        dims.insert(dims.end(), cfg.p.begin(), cfg.p.end());
    } else {
        for (const BigRat& r : ratio_list(cfg))
            dims.push_back(std::llround(double(n) / double(r)));
    }
    model.profile = make_profile(std::move(dims));
    for (int l = 1; l <= model.profile.m; ++l)
        model.y_exact.emplace_back(BigInt(model.profile.n()),
                                   BigInt(model.profile.p[std::size_t(l)]));

    std::string mode = cfg.truncate;
    if (mode.empty()) mode = model.law.bound() ? "off" : "auto";
    if (mode == "off") {
        model.truncate = false;
    } else if (mode == "auto") {
        model.truncate = true;
        model.trunc_c = 1.0;
        model.trunc_tau = 0.0;
    } else {
        const auto colon = mode.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("truncate must be off, auto, or c:tau");
        std::size_t used_c = 0, used_t = 0;
        double c = 0.0, tau = 0.0;
        try {
            c = std::stod(mode.substr(0, colon), &used_c);
            tau = std::stod(mode.substr(colon + 1), &used_t);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad truncate spec: " + mode);
        }
        if (used_c != colon || used_t != mode.size() - colon - 1 || !(c > 0) || !(tau > 0))
            throw std::invalid_argument("bad truncate spec: " + mode);
        model.truncate = true;
        model.trunc_c = c;
        model.trunc_tau = tau;
    }
    model.truncate_mode = mode;
    return model;
}

std::vector<double> run_trial(const ResolvedModel& model, std::uint64_t trial_seed) {
    EntryMatrixSet chain = sample_chain(model.profile, model.law, trial_seed);
    if (model.truncate) {
        const double tau =
            model.trunc_tau > 0 ? model.trunc_tau : select_truncation_level(chain);
        chain = truncate_and_center(chain, model.trunc_c, tau);
    }
    return singular_values(build_product(chain));
}

std::vector<std::vector<double>> run_trials(const ResolvedModel& model, std::uint64_t seed,
                                            int trials, int threads) {
    if (trials < 1) throw std::invalid_argument("trials must be positive");
    std::vector<std::vector<double>> out(static_cast<std::size_t>(trials));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            const int t = next.fetch_add(1, std::memory_order_relaxed);
            if (t >= trials) return;
            out[std::size_t(t)] = run_trial(model, derive_substream_seed(seed, std::uint64_t(t)));
        }
    };
    const int pool_size = std::min(std::max(1, threads), trials);
    if (pool_size == 1) {
        worker();
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(pool_size));
    for (int i = 0; i < pool_size; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return out;
}

ResidualStats residual_stats(const std::vector<std::vector<double>>& trial_svals,
                             const DimensionProfile& profile, const LimitLawSpec& spec,
                             const ZGridSpec& zgrid, Variant variant) {
    ResidualStats st;
    st.variant = variant;
    st.z = z_points(zgrid);
    const std::size_t nz = st.z.size();
    const std::size_t trials = trial_svals.size();

    std::vector<Cplx> sum_s(nz, Cplx(0.0, 0.0));
    std::vector<double> trial_mean(trials, 0.0);
    for (std::size_t t = 0; t < trials; ++t) {
        std::vector<double> eigs;
        EmpiricalCDF squares;
        if (variant == Variant::symmetrized)
            eigs = hermitized_spectrum(trial_svals[t], profile.p_last());
        else
            squares = esd_squares(trial_svals[t]);
        double acc = 0.0;
        for (std::size_t i = 0; i < nz; ++i) {
            const Cplx s = variant == Variant::symmetrized
                               ? empirical_stieltjes(eigs, profile, st.z[i]).s
                               : stieltjes(squares, st.z[i]);
            sum_s[i] += s;
            acc += std::abs(equation_residual(s, st.z[i], spec, variant));
        }
        trial_mean[t] = acc / double(nz);
    }

    st.s_pooled.resize(nz);
    st.abs_delta.resize(nz);
    double acc = 0.0;
    for (std::size_t i = 0; i < nz; ++i) {
        st.s_pooled[i] = sum_s[i] / double(trials);
        st.abs_delta[i] = std::abs(equation_residual(st.s_pooled[i], st.z[i], spec, variant));
        st.max_abs = std::max(st.max_abs, st.abs_delta[i]);
        acc += st.abs_delta[i];
    }
    st.mean_abs = acc / double(nz);
    st.mean_abs_stderr = std_error_of(trial_mean);
    return st;
}

DensityCurve reference_curve(const LimitLawSpec& spec, Variant variant, double vmin,
                             long points) {
    // A reference the Kolmogorov statistic is measured against has to be
    // converged, not a plotting choice: cap the descent at 1e-6 so the
    // boundary-layer mass (~edge_strength * v^(1/(m+1))) stays below 1e-2
    // of any ESD step this tool will meet.
    const double v = std::min(vmin, 1e-6);
    const auto [lo, hi] = support_edge(spec);
    if (variant == Variant::squares)
        return density(spec, graded_x_grid(lo, hi, points), v, true, variant);
    // mirror a graded half-grid across zero; for a gapped law the two bands
    // leave the (density-free) middle to a single trapezoid interval
    const double outer = std::sqrt(hi);
    const double inner = lo <= 1e-12 ? 0.0 : std::sqrt(lo);
    const auto half = graded_x_grid(inner, outer, std::max<long>(points / 2, 33));
    std::vector<double> grid;
    grid.reserve(2 * half.size());
    for (auto it = half.rbegin(); it != half.rend(); ++it) grid.push_back(-*it);
    if (inner == 0.0) grid.pop_back();  // keep the shared origin once
    grid.insert(grid.end(), half.begin(), half.end());
    return density(spec, grid, v, true, variant);
}

SimulateResult run_simulation(const ExperimentConfig& cfg) {
    if (cfg.k < 0) throw std::invalid_argument("k must be nonnegative");
    SimulateResult R;
    R.config = cfg;
    R.model = resolve_model(cfg);
    R.variant = resolve_variant(cfg.variant, Variant::squares);

    const LimitLawSpec spec = make_limit_spec(R.model.profile.y);
    const auto edges = support_edge(spec);
    R.edge_lo = edges.first;
    R.edge_hi = edges.second;
    R.curve = reference_curve(spec, R.variant, cfg.vmin, cfg.grid_points);
    const MonotoneCubic G = cdf_interpolant(R.curve);

    const auto trial_svals =
        run_trials(R.model, cfg.seed, cfg.trials, effective_threads(cfg.threads));
    R.pooled = pool_squares(trial_svals);
    R.delta = delta_against(R.pooled, R.variant, G);

    std::vector<EmpiricalCDF> trial_esd;
    trial_esd.reserve(trial_svals.size());
    for (const auto& sv : trial_svals) trial_esd.push_back(esd_squares(sv));
    for (const auto& F : trial_esd) R.delta_per_trial.push_back(delta_against(F, R.variant, G));
    R.delta_stderr = std_error_of(R.delta_per_trial);

    const MomentTable table = moments_general_y(R.model.profile.m, R.model.y_exact, cfg.k);
    for (int k = 0; k <= cfg.k; ++k) {
        R.limit_moments.push_back(double(table.values[std::size_t(k)]));
        R.empirical_moments.push_back(empirical_moment(R.pooled, k));
        std::vector<double> per_trial;
        per_trial.reserve(trial_esd.size());
        for (const auto& F : trial_esd) per_trial.push_back(empirical_moment(F, k));
        R.moment_stderr.push_back(std_error_of(per_trial));
        R.moment_rel_error.push_back(
            std::abs(R.empirical_moments.back() - R.limit_moments.back()) /
            R.limit_moments.back());
    }

    R.residual =
        residual_stats(trial_svals, R.model.profile, spec, cfg.zgrid, Variant::symmetrized);
    return R;
}

ConvergenceResult run_convergence(const ExperimentConfig& cfg) {
    if (cfg.n_list.empty())
        throw std::invalid_argument("convergence needs a nonempty n list");
    ConvergenceResult C;
    C.config = cfg;
    C.variant = resolve_variant(cfg.variant, Variant::squares);
    const int threads = effective_threads(cfg.threads);
    for (std::size_t idx = 0; idx < cfg.n_list.size(); ++idx) {
        const std::int64_t n = cfg.n_list[idx];
        const ResolvedModel model = resolve_model(cfg, n);
        const LimitLawSpec spec = make_limit_spec(model.profile.y);
        const DensityCurve curve = reference_curve(spec, C.variant, cfg.vmin, cfg.grid_points);
        const MonotoneCubic G = cdf_interpolant(curve);
        const std::uint64_t seed_n = derive_substream_seed(cfg.seed, std::uint64_t(idx));
        const auto trial_svals = run_trials(model, seed_n, cfg.trials, threads);
        std::vector<double> per_trial;
        per_trial.reserve(trial_svals.size());
        for (const auto& sv : trial_svals)
            per_trial.push_back(delta_against(esd_squares(sv), C.variant, G));
        TrendRow row;
        row.n = n;
        row.delta = delta_against(pool_squares(trial_svals), C.variant, G);
        row.std_error = std_error_of(per_trial);
        C.rows.push_back(row);
    }
    return C;
}

ResidualResult run_residual(const ExperimentConfig& cfg) {
    ResidualResult R;
    R.config = cfg;
    R.model = resolve_model(cfg);
    const Variant variant = resolve_variant(cfg.variant, Variant::symmetrized);
    const LimitLawSpec spec = make_limit_spec(R.model.profile.y);
    const auto trial_svals =
        run_trials(R.model, cfg.seed, cfg.trials, effective_threads(cfg.threads));
    R.stats = residual_stats(trial_svals, R.model.profile, spec, cfg.zgrid, variant);
    return R;
}

LimitResult run_limit(const ExperimentConfig& cfg) {
    LimitResult L;
    L.config = cfg;
    const std::vector<BigRat> y_exact = ratio_list(cfg);
    std::vector<double> y;
    y.reserve(y_exact.size());
    for (const auto& r : y_exact) y.push_back(double(r));
    L.spec = make_limit_spec(std::move(y));
    L.variant = resolve_variant(cfg.variant, Variant::squares);
    const auto [lo, hi] = support_edge(L.spec);
    const std::vector<double> grid =
        L.variant == Variant::squares
            ? default_x_grid(lo, hi, cfg.grid_points)
            : default_x_grid(-std::sqrt(hi), std::sqrt(hi), cfg.grid_points);
    L.curve = density(L.spec, grid, cfg.vmin, true, L.variant);
    return L;
}

MomentTable run_moments(const ExperimentConfig& cfg) {
    const std::vector<BigRat> y = ratio_list(cfg);
    return moments_general_y(int(y.size()), y, cfg.k);
}

int cmd_moments(const ExperimentConfig& cfg, std::ostream& out) {
    Stopwatch sw("moments");
    const MomentTable table = run_moments(cfg);
    std::string echo = "{\"command\":\"moments\",\"m\":" + std::to_string(table.m) +
                       ",\"y\":" + json_ratios(table.y) + ",\"k\":" + std::to_string(cfg.k) +
                       ",\"out\":\"" + cfg.out_dir + "\"}";
    std::ostringstream body;
    body << "# config " << echo << "\n";
    write_moment_csv(body, table);
    const std::string bytes = body.str();
    out << bytes;
    write_output_file(cfg.out_dir, "moments.csv", bytes);
    return 0;
}

int cmd_limit(const ExperimentConfig& cfg, std::ostream& out) {
    Stopwatch sw("limit");
    const LimitResult L = run_limit(cfg);
    std::vector<BigRat> y_exact = ratio_list(cfg);
    std::string echo = "{\"command\":\"limit\",\"m\":" + std::to_string(L.spec.m) +
                       ",\"y\":" + json_ratios(y_exact) + ",\"variant\":\"" +
                       variant_name(L.variant) + "\",\"vmin\":" + f17(cfg.vmin) +
                       ",\"grid_points\":" + std::to_string(cfg.grid_points) + ",\"out\":\"" +
                       cfg.out_dir + "\"}";

    std::ostringstream csv;
    csv << "# config " << echo << "\n";
    write_density_csv(csv, L.curve);
    write_output_file(cfg.out_dir, "density.csv", csv.str());

    std::string edges = "{\"config\":" + echo;
    edges += ",\"edge_lo\":" + f17(L.curve.edge_lo);
    edges += ",\"edge_hi\":" + f17(L.curve.edge_hi);
    edges += ",\"mass_deviation\":" + f17(L.curve.mass_deviation);
    edges += "}\n";
    out << edges;
    write_output_file(cfg.out_dir, "edges.json", edges);
    return 0;
}

int cmd_simulate(const ExperimentConfig& cfg, std::ostream& out) {
    Stopwatch sw("simulate");
    const SimulateResult R = run_simulation(cfg);
    const std::string echo = echo_sampled(cfg, R.model, R.variant, true, true, true);

    std::string js = "{\"config\":" + echo;
    js += ",\"edges\":{\"lo\":" + f17(R.edge_lo) + ",\"hi\":" + f17(R.edge_hi) + "}";
    js += ",\"delta\":" + f17(R.delta);
    js += ",\"delta_stderr\":" + f17(R.delta_stderr);
    js += ",\"delta_per_trial\":" + json_nums(R.delta_per_trial);
    js += ",\"moments\":{\"limit\":" + json_nums(R.limit_moments);
    js += ",\"empirical\":" + json_nums(R.empirical_moments);
    js += ",\"stderr\":" + json_nums(R.moment_stderr);
    js += ",\"rel_error\":" + json_nums(R.moment_rel_error) + "}";
    js += ",\"residual\":{\"variant\":\"";
    js += variant_name(R.residual.variant);
    js += "\",\"max_abs\":" + f17(R.residual.max_abs);
    js += ",\"mean_abs\":" + f17(R.residual.mean_abs);
    js += ",\"mean_abs_stderr\":" + f17(R.residual.mean_abs_stderr) + "}";
    js += "}\n";
    out << js;
    write_output_file(cfg.out_dir, "summary.json", js);

    std::ostringstream csv;
    csv << "# config " << echo << "\n";
    write_cdf_csv(csv, R.pooled);
    write_output_file(cfg.out_dir, "esd.csv", csv.str());
    return 0;
}

int cmd_convergence(const ExperimentConfig& cfg, std::ostream& out) {
    Stopwatch sw("convergence");
    const ConvergenceResult C = run_convergence(cfg);
    const std::vector<BigRat> y_req = ratio_list(cfg);
    const EntryLaw law = parse_law(cfg.dist, cfg.a);
    std::string echo = "{\"command\":\"convergence\",\"m\":" +
                       std::to_string(int(y_req.size())) + ",\"n_list\":" +
                       json_ints(cfg.n_list) + ",\"y\":" + json_ratios(y_req) +
                       ",\"dist\":\"" + law_name(law) + "\"";
    if (law.kind == LawKind::three_point_heavy) echo += ",\"a\":" + f17(law.a);
    echo += ",\"seed\":" + std::to_string(cfg.seed);
    echo += ",\"trials\":" + std::to_string(cfg.trials);
    echo += ",\"truncate\":\"" + std::string(cfg.truncate.empty()
                                                 ? (law.bound() ? "off" : "auto")
                                                 : cfg.truncate) + "\"";
    echo += ",\"variant\":\"";
    echo += variant_name(C.variant);
    echo += "\",\"vmin\":" + f17(cfg.vmin);
    echo += ",\"grid_points\":" + std::to_string(cfg.grid_points);
    echo += ",\"out\":\"" + cfg.out_dir + "\"}";

    std::string csv = "# config " + echo + "\nn,delta,stderr\n";
    for (const TrendRow& row : C.rows)
        csv += std::to_string(row.n) + "," + f12(row.delta) + "," + f12(row.std_error) + "\n";
    out << csv;
    write_output_file(cfg.out_dir, "convergence.csv", csv);
    return 0;
}

int cmd_residual(const ExperimentConfig& cfg, std::ostream& out) {
    Stopwatch sw("residual");
    const ResidualResult R = run_residual(cfg);
    const std::string echo =
        echo_sampled(cfg, R.model, R.stats.variant, false, false, true);

    std::string csv = "# config " + echo + "\nre_z,im_z,abs_delta\n";
    for (std::size_t i = 0; i < R.stats.z.size(); ++i)
        csv += f12(R.stats.z[i].real()) + "," + f12(R.stats.z[i].imag()) + "," +
               f12(R.stats.abs_delta[i]) + "\n";
    out << csv;
    write_output_file(cfg.out_dir, "residual.csv", csv);
    return 0;
}

int run_command(const ExperimentConfig& cfg, std::ostream& out) {
    try {
        if (cfg.command == "moments") return cmd_moments(cfg, out);
        if (cfg.command == "limit") return cmd_limit(cfg, out);
        if (cfg.command == "simulate") return cmd_simulate(cfg, out);
        if (cfg.command == "convergence") return cmd_convergence(cfg, out);
        if (cfg.command == "residual") return cmd_residual(cfg, out);
        throw std::invalid_argument("unknown command: " + cfg.command);
    } catch (const BranchLossError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

}  // namespace prodmat
