// Copyright 2026 The qseq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSEQ_LINALG_HPP_
#define QSEQ_LINALG_HPP_

#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "qseq/config.hpp"

namespace qseq {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Which tensor factor partial_trace removes.
enum class Factor { kFirst, kSecond };

/// Spectral decomposition of a Hermitian matrix. Eigenvalues ascend; column i
/// of `eigenvectors` belongs to eigenvalue i. Each column is phase-fixed so its
/// first largest-magnitude entry is real and positive.
struct HermitianEigen {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

ComplexMatrix identity(std::size_t n);
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// Column vector |i> in C^n.
ComplexMatrix ket(std::size_t n, std::size_t i);
/// Rank-one projector |i><i| on C^n.
ComplexMatrix basis_projector(std::size_t n, std::size_t i);

/// Kronecker product; the first operand indexes the slow (outer) factor.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Partial trace of an operator on C^dim_first (x) C^dim_second.
/// Throws DimensionError unless m is (dim_first*dim_second)-square.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_first,
                            std::size_t dim_second, Factor traced);

/// ||m - m^dagger||_F. Throws DimensionError for non-square m.
double hermiticity_error(const ComplexMatrix& m);

/// Hermitian eigendecomposition. Throws InvalidArgument when
/// hermiticity_error(m) > tol. The Hermitian part (m + m^dagger)/2 is what is
/// decomposed, so the reconstruction error is bounded by tol/2 plus rounding.
HermitianEigen herm_eig(const ComplexMatrix& m, double tol = Defaults::kPsdTol);

/// PSD square root. Eigenvalues in [-tol, 0) are clipped to zero; anything
/// more negative throws InvalidArgument.
ComplexMatrix sqrt_psd(const ComplexMatrix& m, double tol = Defaults::kPsdTol);

/// True iff m is square, Hermitian within tol and its smallest eigenvalue is
/// at least -tol.
bool is_psd(const ComplexMatrix& m, double tol = Defaults::kPsdTol);

/// Smallest eigenvalue of the Hermitian part of m.
double min_eigenvalue(const ComplexMatrix& m);

/// Orthonormal basis (as columns) of the span of eigenvectors of the PSD
/// matrix m whose eigenvalues exceed rank_tol. Columns follow ascending
/// eigenvalue order.
ComplexMatrix range_isometry(const ComplexMatrix& m,
                             double rank_tol = Defaults::kRankTol);

/// Number of singular values of m above rank_tol (absolute).
std::size_t numerical_rank(const ComplexMatrix& m,
                           double rank_tol = Defaults::kRankTol);

/// Moore-Penrose pseudo-inverse; singular values below cutoff*sigma_max are
/// treated as zero.
ComplexMatrix pseudo_inverse(const ComplexMatrix& m,
                             double cutoff = Defaults::kPinvCutoff);

/// Frobenius-nearest PSD matrix to the Hermitian part of m.
ComplexMatrix project_psd(const ComplexMatrix& m);

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||U^dagger U - I||_F for a (possibly rectangular) isometry candidate.
double isometry_error(const ComplexMatrix& u);

/// Sum of a list of equally sized matrices. Throws DimensionError on mismatch
/// or when the list is empty.
ComplexMatrix sum(std::span<const ComplexMatrix> terms);

}  // namespace qseq

#endif  // QSEQ_LINALG_HPP_
