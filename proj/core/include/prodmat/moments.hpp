#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "prodmat/limitlaw.hpp"

namespace prodmat {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

BigInt binomial(long n, long k);

// M_k = binom(mk + k, k) / (mk + 1), exact.
BigInt fuss_catalan(int m, int k);

// M_0..M_K from M_k = sum over compositions k_0 + ... + k_m = k - 1 of prod M_{k_i},
// evaluated as the (m+1)-fold self-convolution of the prefix sequence.
std::vector<BigInt> fuss_catalan_by_recurrence(int m, int K);

struct MomentTable {
    int m = 1;
    std::vector<BigRat> y;
    std::vector<BigRat> values;  // M_0..M_K
};

// Limit moments of the squares law for general ratios, by formal power series in 1/z:
// with Phi(w) = sum M_k w^k the equation becomes Phi = 1 + w Phi prod_l(1 - y_l + y_l Phi),
// so each M_k is an explicit polynomial in M_0..M_{k-1}. Exact rational path.
MomentTable moments_general_y(int m, const std::vector<BigRat>& y, int K);

// Same recursion in floating point (error accumulation O(K^2 ulp)).
std::vector<double> moments_general_y_float(int m, const std::vector<double>& y, int K);

// |trapezoid(x^k g) - M_k| / M_k for k = 0..K on the curve's grid (raw density column).
std::vector<double> moment_report(const DensityCurve& curve, const MomentTable& table, int K);

// Accepts "3", "0.75", or "3/4".
BigRat parse_rational(const std::string& text);
std::string rational_string(const BigRat& q);

void write_moment_csv(std::ostream& os, const MomentTable& table);

}  // namespace prodmat
