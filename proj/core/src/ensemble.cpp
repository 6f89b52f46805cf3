#include "prodmat/ensemble.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "prodmat/rng.hpp"

namespace prodmat {

DimensionProfile make_profile(std::vector<std::int64_t> p) {
    if (p.size() < 2) throw std::invalid_argument("profile needs p_0..p_m with m >= 1");
    const std::int64_t n = p.front();
    if (n < 1) throw std::invalid_argument("p_0 must be positive");
    DimensionProfile prof;
    prof.m = int(p.size()) - 1;
    for (std::size_t l = 1; l < p.size(); ++l) {
        if (p[l] < n)
            throw std::invalid_argument("p_" + std::to_string(l) + " < n violates y_l <= 1");
        prof.y.push_back(double(n) / double(p[l]));
    }
    prof.p = std::move(p);
    return prof;
}

std::optional<double> EntryLaw::bound() const {
    switch (kind) {
        case LawKind::rademacher: return 1.0;
        case LawKind::three_point_heavy: return a;
        default: return std::nullopt;
    }
}

EntryLaw make_law(LawKind kind, double a) {
    if (kind == LawKind::three_point_heavy && a < 1.0)
        throw std::invalid_argument("three-point magnitude must be >= 1 for unit variance");
    EntryLaw law;
    law.kind = kind;
    law.a = a;
    return law;
}

EntryLaw parse_law(const std::string& name, double a) {
    if (name == "gaussian") return make_law(LawKind::real_gaussian);
    if (name == "cgaussian") return make_law(LawKind::complex_gaussian);
    if (name == "rademacher") return make_law(LawKind::rademacher);
    if (name == "threepoint") return make_law(LawKind::three_point_heavy, a);
    throw std::invalid_argument("unknown entry law: " + name);
}

std::string law_name(const EntryLaw& law) {
    switch (law.kind) {
        case LawKind::real_gaussian: return "gaussian";
        case LawKind::complex_gaussian: return "cgaussian";
        case LawKind::rademacher: return "rademacher";
        case LawKind::three_point_heavy: return "threepoint";
    }
    return "?";
}

namespace {

std::complex<double> draw_entry(const EntryLaw& law, std::uint64_t seed, std::uint32_t stream,
                                std::uint64_t index) {
    switch (law.kind) {
        case LawKind::real_gaussian:
            return {counter_gauss2(seed, stream, index)[0], 0.0};
        case LawKind::complex_gaussian: {
            const auto g = counter_gauss2(seed, stream, index);
            return {g[0] * M_SQRT1_2, g[1] * M_SQRT1_2};
        }
        case LawKind::rademacher:
            return {(counter_bits(seed, stream, index) & 1u) ? 1.0 : -1.0, 0.0};
        case LawKind::three_point_heavy: {
            const double u = counter_uniform2(seed, stream, index)[0];
            const double half = 1.0 / (2.0 * law.a * law.a);
            if (u <= half) return {law.a, 0.0};
            if (u <= 2.0 * half) return {-law.a, 0.0};
            return {0.0, 0.0};
        }
    }
    return {0.0, 0.0};
}

}  // namespace

EntryMatrixSet sample_chain(const DimensionProfile& profile, const EntryLaw& law,
                            std::uint64_t seed) {
    if (profile.m < 1 || profile.p.size() != std::size_t(profile.m) + 1)
        throw std::invalid_argument("invalid profile");
    EntryMatrixSet set;
    set.profile = profile;
    set.law = law;
    set.seed = seed;
    set.raw.reserve(profile.m);
    for (int v = 0; v < profile.m; ++v) {
        const auto rows = Eigen::Index(profile.p[v]);
        const auto cols = Eigen::Index(profile.p[v + 1]);
        Eigen::MatrixXcd M(rows, cols);
        for (Eigen::Index j = 0; j < rows; ++j)
            for (Eigen::Index k = 0; k < cols; ++k)
                M(j, k) = draw_entry(law, seed, std::uint32_t(v),
                                     std::uint64_t(j) * std::uint64_t(cols) + std::uint64_t(k));
        set.raw.push_back(std::move(M));
    }
    return set;
}

double lindeberg_functional(const EntryMatrixSet& set, double tau) {
    if (!(tau > 0)) throw std::invalid_argument("tau must be positive");
    const double n = double(set.profile.n());
    const double threshold = tau * std::sqrt(n);
    double worst = 0.0;
    for (const auto& M : set.raw) {
        double sum = 0.0;
        for (Eigen::Index j = 0; j < M.rows(); ++j)
            for (Eigen::Index k = 0; k < M.cols(); ++k) {
                const double sq = std::norm(M(j, k));
                if (std::sqrt(sq) >= threshold) sum += sq;
            }
        worst = std::max(worst, sum / (n * n));
    }
    return worst;
}

double select_truncation_level(const EntryMatrixSet& set) {
    if (set.raw.empty()) throw std::invalid_argument("empty matrix set");
    double best = 0.0;
    for (int j = 0; j <= 40; ++j) {
        const double tau = std::ldexp(1.0, -j);
        if (lindeberg_functional(set, tau) <= tau * tau * tau)
            best = tau;  // keep descending: the functional only grows as tau shrinks
        else
            break;
    }
    return best == 0.0 ? 1.0 : best;
}

EntryMatrixSet truncate_and_center(const EntryMatrixSet& set, double c, double tau) {
    if (!(c > 0) || !(tau > 0)) throw std::invalid_argument("c and tau must be positive");
    const double threshold = c * tau * std::sqrt(double(set.profile.n()));
    EntryMatrixSet out = set;
    for (auto& M : out.raw) {
        std::complex<double> acc = 0.0;
        for (Eigen::Index j = 0; j < M.rows(); ++j)
            for (Eigen::Index k = 0; k < M.cols(); ++k) {
                if (std::abs(M(j, k)) > threshold) M(j, k) = 0.0;
                acc += M(j, k);
            }
        M.array() -= acc / double(M.size());
    }
    return out;
}

}  // namespace prodmat
