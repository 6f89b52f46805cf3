#include "prodmat/hermitization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace prodmat {

ProductMatrix build_product(const EntryMatrixSet& set) {
    const auto& prof = set.profile;
    if (set.raw.size() != std::size_t(prof.m)) throw std::invalid_argument("chain length mismatch");
    for (int v = 0; v < prof.m; ++v)
        if (set.raw[v].rows() != prof.p[v] || set.raw[v].cols() != prof.p[v + 1])
            throw std::invalid_argument("matrix shape does not match profile");
    Eigen::MatrixXcd acc = set.raw[0] / std::sqrt(double(prof.p[1]));
    for (int v = 1; v < prof.m; ++v)
        acc = (acc * set.raw[v]).eval() / std::sqrt(double(prof.p[v + 1]));
    return {std::move(acc), prof};
}

std::vector<double> singular_values(const Eigen::MatrixXcd& W) {
    if (!W.allFinite()) throw std::invalid_argument("non-finite entries");
    const bool wide = W.rows() <= W.cols();
    const Eigen::MatrixXcd G = wide ? Eigen::MatrixXcd(W * W.adjoint())
                                    : Eigen::MatrixXcd(W.adjoint() * W);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    const auto& ev = es.eigenvalues();  // ascending
    std::vector<double> s(std::size_t(ev.size()));
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        s[std::size_t(ev.size() - 1 - i)] = std::sqrt(std::max(ev[i], 0.0));
    return s;
}

HermitizedMatrix hermitize(const Eigen::MatrixXcd& W) {
    if (!W.allFinite()) throw std::invalid_argument("non-finite entries");
    const Eigen::Index n = W.rows(), p = W.cols();
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n + p, n + p);
    H.topRightCorner(n, p) = W;
    H.bottomLeftCorner(p, n) = W.adjoint();
    return {std::move(H)};
}

std::vector<double> eigenvalues_hermitian(const HermitizedMatrix& H) {
    if (!H.values.allFinite()) throw std::invalid_argument("non-finite entries");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.values, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

std::vector<double> hermitized_spectrum(const std::vector<double>& svals, std::int64_t p_last) {
    const auto n = std::int64_t(svals.size());
    if (p_last < n) throw std::invalid_argument("p_last < n");
    std::vector<double> eigs;
    eigs.reserve(std::size_t(n + p_last));
    for (double s : svals) eigs.push_back(-s);
    eigs.insert(eigs.end(), std::size_t(p_last - n), 0.0);
    for (double s : svals) eigs.push_back(s);
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

void write_matrix_dump(std::ostream& os, const Eigen::MatrixXcd& M) {
    os << M.rows() << ' ' << M.cols() << '\n';
    char buf[128];
    for (Eigen::Index j = 0; j < M.rows(); ++j)
        for (Eigen::Index k = 0; k < M.cols(); ++k) {
            std::snprintf(buf, sizeof buf, "%lld %lld %.17g %.17g\n",
                          static_cast<long long>(j + 1), static_cast<long long>(k + 1),
                          M(j, k).real(), M(j, k).imag());
            os << buf;
        }
}

}  // namespace prodmat
