#pragma once

#include <iosfwd>
#include <vector>

#include "prodmat/ensemble.hpp"

namespace prodmat {

// W = (X^(1)/sqrt(p_1)) ... (X^(m)/sqrt(p_m)), shape n x p_m.
struct ProductMatrix {
    Eigen::MatrixXcd values;
    DimensionProfile profile;
};

// Hermitian block embedding [[0, W], [W*, 0]]; spectrum {±s_i(W)} plus p_m - n zeros.
struct HermitizedMatrix {
    Eigen::MatrixXcd values;
};

ProductMatrix build_product(const EntryMatrixSet& set);

// Descending singular values via the Hermitian eigendecomposition of the smaller
// Gram matrix, round-off-negative eigenvalues clamped before the square root.
std::vector<double> singular_values(const Eigen::MatrixXcd& W);
inline std::vector<double> singular_values(const ProductMatrix& W) {
    return singular_values(W.values);
}

HermitizedMatrix hermitize(const Eigen::MatrixXcd& W);
inline HermitizedMatrix hermitize(const ProductMatrix& W) { return hermitize(W.values); }

// Full real spectrum, ascending.
std::vector<double> eigenvalues_hermitian(const HermitizedMatrix& H);

// The spectrum hermitize(W) would have, assembled directly from singular values:
// {-s_i} ∪ {0 with multiplicity p_last - n} ∪ {+s_i}, ascending.
std::vector<double> hermitized_spectrum(const std::vector<double>& svals, std::int64_t p_last);

// Debug dump: "rows cols" header, then one "row col re im" line per entry (1-based).
void write_matrix_dump(std::ostream& os, const Eigen::MatrixXcd& M);

}  // namespace prodmat
