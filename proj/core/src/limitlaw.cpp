#include "prodmat/limitlaw.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace prodmat {

namespace {

constexpr double kPi = 3.14159265358979323846;

Cplx horner(const std::vector<Cplx>& c, Cplx s) {
    Cplx r = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * s + c[i];
    return r;
}

std::pair<Cplx, Cplx> horner2(const std::vector<Cplx>& c, Cplx s) {
    Cplx r = 0.0, d = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) {
        d = d * s + r;
        r = r * s + c[i];
    }
    return {r, d};
}

std::string cplx_str(Cplx z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.6g, %.6g)", z.real(), z.imag());
    return buf;
}

void validate_v_path(const std::vector<double>& v_path) {
    if (v_path.empty()) throw std::invalid_argument("empty v path");
    if (v_path.front() < 10.0)
        throw std::invalid_argument("v path must start at Im z >= 10");
    for (std::size_t i = 0; i < v_path.size(); ++i) {
        if (!(v_path[i] > 0)) throw std::invalid_argument("v path must stay positive");
        if (i > 0 && !(v_path[i] < v_path[i - 1]))
            throw std::invalid_argument("v path must descend");
    }
}

}  // namespace

LimitLawSpec make_limit_spec(std::vector<double> y) {
    if (y.empty()) throw std::invalid_argument("need at least one ratio");
    for (double v : y)
        if (!(v > 0.0) || v > 1.0) throw std::invalid_argument("ratios must lie in (0, 1]");
    LimitLawSpec spec;
    spec.m = int(y.size());
    spec.y = std::move(y);
    return spec;
}

BranchLossError::BranchLossError(Cplx z_, std::vector<Cplx> roots_)
    : std::runtime_error("no admissible Stieltjes branch at z = " + cplx_str(z_) +
                         "; start the descent at larger Im z"),
      z(z_),
      roots(std::move(roots_)) {}

std::vector<Cplx> poly_coefficients(const LimitLawSpec& spec, Cplx z, Variant variant) {
    if (variant == Variant::symmetrized && z == Cplx(0.0))
        throw std::invalid_argument("symmetrized equation is singular at z = 0");
    std::vector<Cplx> Q{1.0};  // prod_l (1 - y_l - z y_l s), expanded in s
    for (double y : spec.y) {
        const Cplx a = 1.0 - y, b = -z * y;
        std::vector<Cplx> next(Q.size() + 1, Cplx(0.0));
        for (std::size_t j = 0; j < Q.size(); ++j) {
            next[j] += a * Q[j];
            next[j + 1] += b * Q[j];
        }
        Q = std::move(next);
    }
    std::vector<Cplx> P(std::size_t(spec.m) + 2, Cplx(0.0));
    P[0] = 1.0;
    P[1] = z;
    const Cplx div = variant == Variant::squares ? Cplx(1.0) : z;
    for (std::size_t j = 0; j < Q.size(); ++j) P[j + 1] -= Q[j] / div;
    return P;
}

std::vector<Cplx> solve_all_roots(const std::vector<Cplx>& coeffs) {
    for (const Cplx& c : coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::invalid_argument("non-finite coefficient");
    std::size_t len = coeffs.size();
    while (len > 0 && std::abs(coeffs[len - 1]) <= 1e-300) --len;
    if (len == 0) throw std::invalid_argument("zero polynomial has no well-defined roots");
    if (len == 1) return {};

    double cmax = 0.0;
    for (std::size_t i = 0; i < len; ++i) cmax = std::max(cmax, std::abs(coeffs[i]));
    std::vector<Cplx> c(coeffs.begin(), coeffs.begin() + long(len));
    for (Cplx& ci : c) ci /= cmax;

    const std::size_t deg = len - 1;
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(Eigen::Index(deg), Eigen::Index(deg));
    for (std::size_t i = 0; i + 1 < deg; ++i) C(Eigen::Index(i + 1), Eigen::Index(i)) = 1.0;
    for (std::size_t i = 0; i < deg; ++i)
        C(Eigen::Index(i), Eigen::Index(deg - 1)) = -c[i] / c[deg];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(C, false);
    if (ces.info() != Eigen::Success) throw std::runtime_error("companion eigensolver failed");

    std::vector<Cplx> roots(deg);
    for (std::size_t i = 0; i < deg; ++i) {
        Cplx s = ces.eigenvalues()[Eigen::Index(i)];
        auto [f, fp] = horner2(c, s);
        double best = std::abs(f);
        Cplx best_s = s;
        for (int it = 0; it < 12 && best > 0.0; ++it) {
            if (std::abs(fp) < 1e-300) break;
            s -= f / fp;
            std::tie(f, fp) = horner2(c, s);
            if (std::abs(f) < best) {
                best = std::abs(f);
                best_s = s;
            } else {
                break;
            }
        }
        roots[i] = best_s;
    }
    return roots;
}

Cplx select_branch(const std::vector<Cplx>& roots, Cplx z, std::optional<Cplx> prev,
                   int* tie_events) {
    if (!(z.imag() > 0)) throw std::invalid_argument("select_branch needs Im z > 0");
    const Cplx target = prev ? *prev : -1.0 / z;
    const double bound = (1.0 + 1e-6) / z.imag();
    const double tie_eps = 1e-12 * (1.0 + std::abs(target));
    bool found = false;
    Cplx best;
    double best_d = 0.0;
    for (const Cplx& r : roots) {
        if (!(r.imag() > -1e-12) || std::abs(r) > bound) continue;
        const double d = std::abs(r - target);
        if (!found || d < best_d - tie_eps) {
            found = true;
            best = r;
            best_d = d;
        } else if (d <= best_d + tie_eps) {
            if (tie_events) ++*tie_events;
            if (r.imag() > best.imag()) {
                best = r;
                best_d = std::min(best_d, d);
            }
        }
    }
    if (!found) throw BranchLossError(z, roots);
    return best;
}

std::vector<Cplx> track_branch(const LimitLawSpec& spec, double x,
                               const std::vector<double>& v_path, Variant variant,
                               int* tie_events) {
    validate_v_path(v_path);
    std::vector<Cplx> out;
    out.reserve(v_path.size());
    std::optional<Cplx> prev;
    for (double v : v_path) {
        const Cplx z(x, v);
        const Cplx s = select_branch(solve_all_roots(poly_coefficients(spec, z, variant)), z,
                                     prev, tie_events);
        prev = s;
        out.push_back(s);
    }
    return out;
}

std::vector<double> make_v_path(double v_min, double ratio) {
    if (!(v_min > 0) || v_min > 10.0) throw std::invalid_argument("v_min must lie in (0, 10]");
    if (!(ratio > 0) || ratio >= 1.0) throw std::invalid_argument("ratio must lie in (0, 1)");
    std::vector<double> path{10.0};
    for (double v = 10.0 * ratio; v > v_min * 1.0000001; v *= ratio) path.push_back(v);
    if (path.back() > v_min) path.push_back(v_min);
    return path;
}

StieltjesSolution stieltjes_on_grid(const LimitLawSpec& spec, const std::vector<double>& x_grid,
                                    const std::vector<double>& v_path, Variant variant) {
    validate_v_path(v_path);
    StieltjesSolution sol;
    sol.variant = variant;
    sol.grid.reserve(x_grid.size());
    sol.values.reserve(x_grid.size());
    sol.residuals.reserve(x_grid.size());
    for (double x : x_grid) {
        const Cplx s = track_branch(spec, x, v_path, variant, &sol.branch_events).back();
        const Cplx z(x, v_path.back());
        sol.grid.push_back(z);
        sol.values.push_back(s);
        sol.residuals.push_back(std::abs(horner(poly_coefficients(spec, z, variant), s)));
    }
    return sol;
}

DensityCurve density(const LimitLawSpec& spec, const std::vector<double>& x_grid, double v_min,
                     bool extrapolate, Variant variant) {
    if (x_grid.empty()) throw std::invalid_argument("empty x grid");
    for (std::size_t i = 1; i < x_grid.size(); ++i)
        if (!(x_grid[i] > x_grid[i - 1])) throw std::invalid_argument("x grid must ascend");
    if (!(v_min > 0) || v_min > 0.1) throw std::invalid_argument("v_min must lie in (0, 0.1]");

    std::vector<double> path = make_v_path(extrapolate ? 2.0 * v_min : v_min);
    if (extrapolate) path.push_back(v_min);

    DensityCurve cur;
    cur.variant = variant;
    cur.x = x_grid;
    cur.g.resize(x_grid.size());
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        const auto s = track_branch(spec, x_grid[i], path, variant);
        double g = s.back().imag() / kPi;
        if (extrapolate) g = 2.0 * g - s[s.size() - 2].imag() / kPi;
        if (g < -1e-6) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "density excursion %.3e below zero at x = %.6g", g,
                          x_grid[i]);
            throw std::runtime_error(buf);
        }
        cur.g[i] = std::max(g, 0.0);
    }

    const auto edges = support_edge(spec);
    if (variant == Variant::squares) {
        cur.edge_lo = edges.first;
        cur.edge_hi = edges.second;
    } else {
        cur.edge_hi = std::sqrt(edges.second);
        cur.edge_lo = -cur.edge_hi;
    }

    cur.G.resize(x_grid.size(), 0.0);
    double acc = 0.0;
    for (std::size_t i = 1; i < x_grid.size(); ++i) {
        acc += 0.5 * (cur.g[i] + cur.g[i - 1]) * (x_grid[i] - x_grid[i - 1]);
        cur.G[i] = acc;
    }
    cur.mass_deviation = std::abs(acc - 1.0);
    if (acc > 0.0)
        for (double& Gi : cur.G) Gi /= acc;
    return cur;
}

std::pair<double, double> support_edge(const LimitLawSpec& spec) {
    // Inside the support Im s(x + iv) settles at pi*g(x) as v shrinks; outside it
    // scales linearly in v. Halving v halves the outside signal and leaves the
    // inside one alone, so comparing v against 2v locates the edge to O(v) no
    // matter how steeply the density rises off the edge.
    const double v = 1e-6;
    const auto path = make_v_path(2.0 * v);
    const auto inside = [&](double x) {
        const Cplx s2v = track_branch(spec, x, path, Variant::squares).back();
        const Cplx zv(x, v);
        const Cplx sv =
            select_branch(solve_all_roots(poly_coefficients(spec, zv, Variant::squares)), zv, s2v);
        if (!(sv.imag() > 1e-9)) return false;
        return s2v.imag() < 1.5 * sv.imag();
    };

    double B = std::pow(double(spec.m) + 1.0, spec.m + 1) / std::pow(double(spec.m), spec.m) + 0.5;
    for (int tries = 0; tries < 6 && inside(B); ++tries) B *= 1.5;

    const int N = 256;
    const double scan_lo = -0.05;
    std::vector<double> xs(N + 1);
    int first_in = -1, last_in = -1;
    for (int i = 0; i <= N; ++i) {
        xs[i] = scan_lo + (B - scan_lo) * double(i) / N;
        if (inside(xs[i])) {
            if (first_in < 0) first_in = i;
            last_in = i;
        }
    }
    if (first_in < 0) throw std::runtime_error("support not located below the scan bound");

    const auto bisect = [&](double in, double out) {
        while (std::abs(out - in) > 1e-6) {
            const double mid = 0.5 * (in + out);
            (inside(mid) ? in : out) = mid;
        }
        return 0.5 * (in + out);
    };

    const double hi = last_in == N ? xs[N] : bisect(xs[last_in], xs[last_in + 1]);

    bool hard_zero = false;
    for (double y : spec.y)
        if (y == 1.0) hard_zero = true;
    double lo = 0.0;
    if (!hard_zero && first_in > 0) lo = bisect(xs[first_in], xs[first_in - 1]);
    return {lo, hi};
}

std::vector<double> default_x_grid(double edge_lo, double edge_hi, long points) {
    if (points < 2) throw std::invalid_argument("need at least two grid points");
    const double lo = edge_lo - 0.1, hi = edge_hi + 0.1;
    std::vector<double> x(static_cast<std::size_t>(points));
    for (long i = 0; i < points; ++i)
        x[std::size_t(i)] = lo + (hi - lo) * double(i) / double(points - 1);
    return x;
}

std::vector<double> graded_x_grid(double edge_lo, double edge_hi, long uniform_points) {
    if (uniform_points < 2) throw std::invalid_argument("need at least two grid points");
    if (!(edge_hi > edge_lo)) throw std::invalid_argument("edges out of order");
    // No padding beyond the edges: a trapezoid interval that straddles an edge
    // linearly interpolates across the density jump and manufactures spurious
    // mass (worst at a hard edge, where the boundary-layer value is ~v^(-m/(m+1))).
    std::vector<double> x(static_cast<std::size_t>(uniform_points));
    for (long i = 0; i < uniform_points; ++i)
        x[std::size_t(i)] =
            edge_lo + (edge_hi - edge_lo) * double(i) / double(uniform_points - 1);
    const double span = edge_hi - edge_lo;
    for (double d = span * 1e-8; d < span * 0.05; d *= 1.15) {
        x.push_back(edge_lo + d);
        x.push_back(edge_hi - d);
    }
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    return x;
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> f)
    : x_(std::move(x)), f_(std::move(f)) {
    const std::size_t n = x_.size();
    if (n < 2 || f_.size() != n) throw std::invalid_argument("need matching tables, length >= 2");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("abscissae must ascend");
    std::vector<double> h(n - 1), del(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        del[i] = (f_[i + 1] - f_[i]) / h[i];
    }
    d_.assign(n, 0.0);
    d_[0] = del[0];
    d_[n - 1] = del[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (del[i - 1] * del[i] <= 0.0) continue;
        d_[i] = 3.0 * (h[i - 1] + h[i]) /
                ((2.0 * h[i] + h[i - 1]) / del[i - 1] + (h[i] + 2.0 * h[i - 1]) / del[i]);
    }
}

double MonotoneCubic::operator()(double t) const {
    if (t <= x_.front()) return f_.front();
    if (t >= x_.back()) return f_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), t);
    const std::size_t i = std::size_t(it - x_.begin()) - 1;
    const double h = x_[i + 1] - x_[i];
    const double u = (t - x_[i]) / h;
    const double u2 = u * u, u3 = u2 * u;
    return f_[i] * (2 * u3 - 3 * u2 + 1) + h * d_[i] * (u3 - 2 * u2 + u) +
           f_[i + 1] * (-2 * u3 + 3 * u2) + h * d_[i + 1] * (u3 - u2);
}

MonotoneCubic cdf_interpolant(const DensityCurve& curve) {
    return MonotoneCubic(curve.x, curve.G);
}

void write_density_csv(std::ostream& os, const DensityCurve& curve) {
    os << "x,g,G\n";
    char buf[128];
    for (std::size_t i = 0; i < curve.x.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", curve.x[i], curve.g[i], curve.G[i]);
        os << buf;
    }
}

}  // namespace prodmat
