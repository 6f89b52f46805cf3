#include "prodmat/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace prodmat {

double EmpiricalCDF::cdf(double t) const {
    const auto it = std::upper_bound(x.begin(), x.end(), t);
    return it == x.begin() ? 0.0 : cum[std::size_t(it - x.begin()) - 1];
}

double EmpiricalCDF::cdf_left(double t) const {
    const auto it = std::lower_bound(x.begin(), x.end(), t);
    return it == x.begin() ? 0.0 : cum[std::size_t(it - x.begin()) - 1];
}

EmpiricalCDF make_ecdf(std::vector<std::pair<double, double>> atoms) {
    if (atoms.empty()) throw std::invalid_argument("no atoms");
    std::sort(atoms.begin(), atoms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    EmpiricalCDF F;
    for (const auto& [loc, wt] : atoms) {
        if (!std::isfinite(loc) || !(wt > 0.0))
            throw std::invalid_argument("atoms need finite locations and positive weights");
        if (!F.x.empty() && loc == F.x.back())
            F.w.back() += wt;
        else {
            F.x.push_back(loc);
            F.w.push_back(wt);
        }
    }
    double total = 0.0;
    for (double wt : F.w) total += wt;
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("weights must sum to 1");
    if (total != 1.0)
        for (double& wt : F.w) wt /= total;
    F.cum.resize(F.w.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < F.w.size(); ++i) F.cum[i] = acc += F.w[i];
    F.cum.back() = 1.0;
    F.total = 1.0;
    return F;
}

EmpiricalCDF esd_squares(const std::vector<double>& svals) {
    if (svals.empty()) throw std::invalid_argument("no singular values");
    std::vector<std::pair<double, double>> atoms;
    atoms.reserve(svals.size());
    const double w = 1.0 / double(svals.size());
    for (double s : svals) {
        if (!(s >= 0.0)) throw std::invalid_argument("singular values must be nonnegative");
        atoms.emplace_back(s * s, w);
    }
    return make_ecdf(std::move(atoms));
}

EmpiricalCDF symmetrize(const EmpiricalCDF& F) {
    std::vector<std::pair<double, double>> atoms;
    atoms.reserve(2 * F.size());
    for (std::size_t i = 0; i < F.size(); ++i) {
        const double t = F.x[i], w = F.w[i];
        if (t < 0.0) throw std::invalid_argument("symmetrize needs support in [0, inf)");
        if (t == 0.0) {
            atoms.emplace_back(0.0, w);
        } else {
            const double r = std::sqrt(t);
            atoms.emplace_back(-r, 0.5 * w);
            atoms.emplace_back(r, 0.5 * w);
        }
    }
    return make_ecdf(std::move(atoms));
}

std::complex<double> stieltjes(const EmpiricalCDF& F, std::complex<double> z) {
    if (!(z.imag() > 0)) throw std::invalid_argument("need Im z > 0");
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) acc += F.w[i] / (F.x[i] - z);
    return acc;
}

StieltjesSample empirical_stieltjes(const std::vector<double>& eigs,
                                    const DimensionProfile& profile, std::complex<double> z) {
    if (!(z.imag() > 0)) throw std::invalid_argument("need Im z > 0");
    const auto n = profile.n(), pm = profile.p_last();
    if (std::int64_t(eigs.size()) != n + pm)
        throw std::invalid_argument("spectrum length must be n + p_m");
    std::complex<double> acc = 0.0;
    for (double lam : eigs) acc += 1.0 / (lam - z);
    const double ym = profile.y.back();
    return {z, acc / (2.0 * double(n)) + (1.0 - ym) / (2.0 * ym * z)};
}

double kolmogorov_distance(const EmpiricalCDF& F, const std::function<double(double)>& G) {
    double sup = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) {
        const double g = G(F.x[i]);
        const double left = i == 0 ? 0.0 : F.cum[i - 1];
        sup = std::max({sup, std::abs(F.cum[i] - g), std::abs(left - g)});
    }
    return sup;
}

double empirical_moment(const EmpiricalCDF& F, int k) {
    if (k < 0) throw std::invalid_argument("moment order must be nonnegative");
    double acc = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) {
        double p = 1.0;
        for (int j = 0; j < k; ++j) p *= F.x[i];
        acc += F.w[i] * p;
    }
    return acc;
}

std::complex<double> equation_residual(std::complex<double> s, std::complex<double> z,
                                       const LimitLawSpec& spec, Variant variant) {
    if (variant == Variant::symmetrized && z == std::complex<double>(0.0))
        throw std::invalid_argument("symmetrized residual undefined at z = 0");
    std::complex<double> prod = 1.0;
    for (double y : spec.y) prod *= 1.0 - y - z * y * s;
    const std::complex<double> factor = variant == Variant::squares ? s : s / z;
    return 1.0 + z * s - factor * prod;
}

void write_cdf_csv(std::ostream& os, const EmpiricalCDF& F) {
    os << "location,cum_weight\n";
    char buf[96];
    for (std::size_t i = 0; i < F.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", F.x[i], F.cum[i]);
        os << buf;
    }
}

namespace {

void write_stieltjes_rows(std::ostream& os, const std::vector<Cplx>& zs,
                          const std::vector<Cplx>& ss) {
    os << "re_z,im_z,re_s,im_s\n";
    char buf[160];
    for (std::size_t i = 0; i < zs.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g\n", zs[i].real(), zs[i].imag(),
                      ss[i].real(), ss[i].imag());
        os << buf;
    }
}

}  // namespace

void write_stieltjes_csv(std::ostream& os, const std::vector<StieltjesSample>& samples) {
    std::vector<Cplx> zs, ss;
    zs.reserve(samples.size());
    ss.reserve(samples.size());
    for (const auto& sm : samples) {
        zs.push_back(sm.z);
        ss.push_back(sm.s);
    }
    write_stieltjes_rows(os, zs, ss);
}

void write_stieltjes_csv(std::ostream& os, const StieltjesSolution& sol) {
    write_stieltjes_rows(os, sol.grid, sol.values);
}

}  // namespace prodmat
