#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "prodmat/ensemble.hpp"
#include "prodmat/limitlaw.hpp"

namespace prodmat {

// Step distribution with strictly increasing atom locations; weights sum to 1.
struct EmpiricalCDF {
    std::vector<double> x;
    std::vector<double> w;
    std::vector<double> cum;  // inclusive prefix sums of w
    double total = 0.0;

    double cdf(double t) const;       // P[X <= t]
    double cdf_left(double t) const;  // P[X < t]
    std::size_t size() const { return x.size(); }
};

// Sorts, merges equal locations, validates weights; rescales drifting totals back to 1.
EmpiricalCDF make_ecdf(std::vector<std::pair<double, double>> atoms);

struct StieltjesSample {
    std::complex<double> z;
    std::complex<double> s;
};

// Atom at s_k^2 with weight 1/n for each singular value.
EmpiricalCDF esd_squares(const std::vector<double>& svals);

// Each atom (t, w) with t > 0 splits into (±sqrt(t), w/2); an atom at 0 stays put.
EmpiricalCDF symmetrize(const EmpiricalCDF& F);

// sum_i w_i / (x_i - z), Im z > 0.
std::complex<double> stieltjes(const EmpiricalCDF& F, std::complex<double> z);

// (1/2n) sum_i 1/(lambda_i - z) + (1 - y_m)/(2 y_m z); the correction cancels the
// p_m - n structural zeros, so this equals the transform of the symmetrized ESD.
StieltjesSample empirical_stieltjes(const std::vector<double>& eigs,
                                    const DimensionProfile& profile, std::complex<double> z);

// sup over atoms of |F - G|, checking both F(x_i) and the left limit F(x_i-).
double kolmogorov_distance(const EmpiricalCDF& F, const std::function<double(double)>& G);

double empirical_moment(const EmpiricalCDF& F, int k);

// delta of the variant equation at (s, z); zero when s is the exact branch value.
std::complex<double> equation_residual(std::complex<double> s, std::complex<double> z,
                                       const LimitLawSpec& spec, Variant variant);

void write_cdf_csv(std::ostream& os, const EmpiricalCDF& F);
void write_stieltjes_csv(std::ostream& os, const std::vector<StieltjesSample>& samples);
void write_stieltjes_csv(std::ostream& os, const StieltjesSolution& sol);

}  // namespace prodmat
