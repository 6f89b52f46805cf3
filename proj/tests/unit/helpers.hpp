#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "prodmat/ensemble.hpp"
#include "prodmat/rng.hpp"

// Deterministic fixtures, independent of the library's sampling layer.

inline Eigen::MatrixXcd random_complex_matrix(Eigen::Index rows, Eigen::Index cols,
                                              std::uint64_t seed) {
    Eigen::MatrixXcd M(rows, cols);
    for (Eigen::Index j = 0; j < rows; ++j)
        for (Eigen::Index k = 0; k < cols; ++k) {
            const auto g = prodmat::counter_gauss2(seed, 900u, std::uint64_t(j * cols + k));
            M(j, k) = {g[0], g[1]};
        }
    return M;
}

inline Eigen::MatrixXcd random_real_matrix(Eigen::Index rows, Eigen::Index cols,
                                           std::uint64_t seed) {
    Eigen::MatrixXcd M(rows, cols);
    for (Eigen::Index j = 0; j < rows; ++j)
        for (Eigen::Index k = 0; k < cols; ++k)
            M(j, k) = prodmat::counter_gauss2(seed, 901u, std::uint64_t(j * cols + k))[0];
    return M;
}

inline double uniform01(std::uint64_t seed, std::uint64_t index) {
    return prodmat::counter_uniform2(seed, 902u, index)[0];
}

// Wraps a hand-assembled factor chain (sizes can violate the p_l >= n rule that
// make_profile enforces; build_product only reads the shapes).
inline prodmat::EntryMatrixSet manual_set(std::vector<Eigen::MatrixXcd> raw) {
    prodmat::EntryMatrixSet set;
    set.profile.m = int(raw.size());
    set.profile.p.push_back(raw.front().rows());
    for (const auto& M : raw) set.profile.p.push_back(M.cols());
    for (std::size_t l = 1; l < set.profile.p.size(); ++l)
        set.profile.y.push_back(double(set.profile.p.front()) / double(set.profile.p[l]));
    set.raw = std::move(raw);
    return set;
}
