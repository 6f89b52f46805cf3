#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace prodmat {

// Size chain p_0 = n <= p_l of the m-matrix product; y_l = n / p_l in (0, 1].
struct DimensionProfile {
    int m = 0;
    std::vector<std::int64_t> p;
    std::vector<double> y;

    std::int64_t n() const { return p.front(); }
    std::int64_t p_last() const { return p.back(); }
};

DimensionProfile make_profile(std::vector<std::int64_t> p);

enum class LawKind { real_gaussian, complex_gaussian, rademacher, three_point_heavy };

// Entry distributions, all mean 0 and (complex) variance 1.
// three_point_heavy: P(+a) = P(-a) = 1/(2a^2), P(0) = 1 - 1/a^2.
struct EntryLaw {
    LawKind kind = LawKind::real_gaussian;
    double a = 5.0;

    std::optional<double> bound() const;
    bool is_complex() const { return kind == LawKind::complex_gaussian; }
};

EntryLaw make_law(LawKind kind, double a = 5.0);
EntryLaw parse_law(const std::string& name, double a = 5.0);
std::string law_name(const EntryLaw& law);

struct EntryMatrixSet {
    DimensionProfile profile;
    std::vector<Eigen::MatrixXcd> raw;  // raw[v] has shape p_v x p_{v+1}
    EntryLaw law;
    std::uint64_t seed = 0;
};

// Deterministic in (profile, law, seed); entry (v, j, k) depends only on its own counter.
EntryMatrixSet sample_chain(const DimensionProfile& profile, const EntryLaw& law,
                            std::uint64_t seed);

// max over matrices of (1/n^2) * sum |X_jk|^2 over entries with |X_jk| >= tau*sqrt(n)
double lindeberg_functional(const EntryMatrixSet& set, double tau);

// Smallest tau on the grid {2^-j, j = 0..40} with lindeberg_functional(set, tau) <= tau^3;
// 1 if even tau = 1 fails.
double select_truncation_level(const EntryMatrixSet& set);

// Zero out entries with |X| > c*tau*sqrt(n), then subtract each matrix's sample mean
// of its truncated entries.
EntryMatrixSet truncate_and_center(const EntryMatrixSet& set, double c, double tau);

}  // namespace prodmat
