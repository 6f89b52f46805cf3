#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace prodmat {

using Cplx = std::complex<double>;

// squares: the law of the squared singular values, transform solving
//   1 + z s - s * prod_l (1 - y_l - z y_l s) = 0
// symmetrized: the sign-symmetrized law, transform solving
//   1 + z s - (s/z) * prod_l (1 - y_l - z y_l s) = 0
enum class Variant { squares, symmetrized };

struct LimitLawSpec {
    int m = 1;
    std::vector<double> y;
};

LimitLawSpec make_limit_spec(std::vector<double> y);

class BranchLossError : public std::runtime_error {
  public:
    BranchLossError(Cplx z, std::vector<Cplx> roots);
    Cplx z;
    std::vector<Cplx> roots;
};

// Monomial coefficients c[0] + c[1] s + ... + c[m+1] s^(m+1) of the variant equation.
std::vector<Cplx> poly_coefficients(const LimitLawSpec& spec, Cplx z, Variant variant);

// All complex roots (companion matrix + Newton polish). Leading coefficients with
// modulus <= 1e-300 are trimmed; a constant nonzero polynomial has no roots.
std::vector<Cplx> solve_all_roots(const std::vector<Cplx>& coeffs);

// The Nevanlinna branch: nearest admissible root (Im > -1e-12, |s| <= (1+1e-6)/Im z)
// to prev if given, else to -1/z. Equidistant candidates resolve toward larger Im.
Cplx select_branch(const std::vector<Cplx>& roots, Cplx z, std::optional<Cplx> prev,
                   int* tie_events = nullptr);

// s along the descent x + i*v for each v in v_path, tracking the branch from the top.
std::vector<Cplx> track_branch(const LimitLawSpec& spec, double x,
                               const std::vector<double>& v_path, Variant variant,
                               int* tie_events = nullptr);

struct StieltjesSolution {
    std::vector<Cplx> grid;
    std::vector<Cplx> values;
    Variant variant = Variant::squares;
    std::vector<double> residuals;
    int branch_events = 0;
};

// Geometric descent from 10 down to exactly v_min.
std::vector<double> make_v_path(double v_min, double ratio = 0.8);

StieltjesSolution stieltjes_on_grid(const LimitLawSpec& spec, const std::vector<double>& x_grid,
                                    const std::vector<double>& v_path, Variant variant);

struct DensityCurve {
    std::vector<double> x;
    std::vector<double> g;  // raw inverted density, >= 0
    std::vector<double> G;  // trapezoid CDF of g, normalized to end at 1
    double edge_lo = 0.0;
    double edge_hi = 0.0;
    double mass_deviation = 0.0;  // |raw integral of g - 1|
    Variant variant = Variant::squares;
};

// g(x) = Im s(x + i v_min)/pi, optionally Richardson-extrapolated from (v_min, 2 v_min).
DensityCurve density(const LimitLawSpec& spec, const std::vector<double>& x_grid, double v_min,
                     bool extrapolate, Variant variant = Variant::squares);

// Support of the squares law: an x counts as inside when Im s(x + iv) stops
// scaling with v (v = 1e-6 vs 2e-6), bisected to 1e-6. edge_lo is exactly 0
// when any y_l = 1.
std::pair<double, double> support_edge(const LimitLawSpec& spec);

std::vector<double> default_x_grid(double edge_lo, double edge_hi, long points = 2001);

// Uniform grid over exactly [edge_lo, edge_hi] plus geometric refinement toward
// both endpoints; resolves the v-scale boundary layer so trapezoid mass and
// interpolation stay within the error budget. Never steps outside the edges.
std::vector<double> graded_x_grid(double edge_lo, double edge_hi, long uniform_points = 2001);

// Fritsch-Butland monotone cubic through a nondecreasing table; clamped outside.
class MonotoneCubic {
  public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> f);
    double operator()(double t) const;

  private:
    std::vector<double> x_, f_, d_;
};

MonotoneCubic cdf_interpolant(const DensityCurve& curve);

void write_density_csv(std::ostream& os, const DensityCurve& curve);

}  // namespace prodmat
