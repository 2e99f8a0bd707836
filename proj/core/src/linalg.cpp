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

#include "qseq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "qseq/errors.hpp"

namespace qseq {
namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << what << ": expected a square matrix, got " << m.rows() << "x"
        << m.cols();
    throw DimensionError(msg.str());
  }
}

// Rotate column phases so that the first entry of maximal magnitude is real
// positive. "First" uses a small absolute slack so that numerically tied
// entries (e.g. the two components of (|0> - |1>)/sqrt(2)) resolve by index.
void fix_phases(ComplexMatrix& vectors) {
  constexpr double kTieSlack = 1e-12;
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    double largest = 0.0;
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      largest = std::max(largest, std::abs(vectors(r, c)));
    }
    if (largest == 0.0) continue;
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const Complex entry = vectors(r, c);
      if (std::abs(entry) >= largest - kTieSlack) {
        vectors.col(c) *= std::conj(entry) / std::abs(entry);
        vectors(r, c) = std::abs(entry);
        break;
      }
    }
  }
}

}  // namespace

ComplexMatrix identity(std::size_t n) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(n),
                                 static_cast<Eigen::Index>(n));
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexMatrix ket(std::size_t n, std::size_t i) {
  if (i >= n) throw DimensionError("ket: index out of range");
  ComplexMatrix v = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), 1);
  v(static_cast<Eigen::Index>(i), 0) = 1.0;
  return v;
}

ComplexMatrix basis_projector(std::size_t n, std::size_t i) {
  const ComplexMatrix v = ket(n, i);
  return v * v.adjoint();
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_first,
                            std::size_t dim_second, Factor traced) {
  const auto d1 = static_cast<Eigen::Index>(dim_first);
  const auto d2 = static_cast<Eigen::Index>(dim_second);
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    std::ostringstream msg;
    msg << "partial_trace: operator is " << m.rows() << "x" << m.cols()
        << ", factors need " << d1 * d2 << "x" << d1 * d2;
    throw DimensionError(msg.str());
  }
  if (traced == Factor::kSecond) {
    ComplexMatrix out = ComplexMatrix::Zero(d1, d1);
    for (Eigen::Index k = 0; k < d2; ++k) {
      for (Eigen::Index i = 0; i < d1; ++i) {
        for (Eigen::Index j = 0; j < d1; ++j) {
          out(i, j) += m(i * d2 + k, j * d2 + k);
        }
      }
    }
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
  for (Eigen::Index k = 0; k < d1; ++k) {
    out += m.block(k * d2, k * d2, d2, d2);
  }
  return out;
}

double hermiticity_error(const ComplexMatrix& m) {
  require_square(m, "hermiticity_error");
  return (m - m.adjoint()).norm();
}

HermitianEigen herm_eig(const ComplexMatrix& m, double tol) {
  require_square(m, "herm_eig");
  const double err = (m - m.adjoint()).norm();
  if (!(err <= tol)) {
    std::ostringstream msg;
    msg << "herm_eig: matrix is not Hermitian (||m - m^dagger||_F = " << err
        << " > " << tol << ")";
    throw InvalidArgument(msg.str());
  }
  const ComplexMatrix hermitian_part = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("herm_eig: eigensolver did not converge");
  }
  HermitianEigen out{solver.eigenvalues(), solver.eigenvectors()};
  fix_phases(out.eigenvectors);
  return out;
}

ComplexMatrix sqrt_psd(const ComplexMatrix& m, double tol) {
  const HermitianEigen eig = herm_eig(m, tol);
  RealVector roots(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    const double lambda = eig.eigenvalues(i);
    if (lambda < -tol) {
      std::ostringstream msg;
      msg << "sqrt_psd: eigenvalue " << lambda << " below -" << tol;
      throw InvalidArgument(msg.str());
    }
    roots(i) = std::sqrt(std::max(lambda, 0.0));
  }
  return eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
}

bool is_psd(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  if ((m - m.adjoint()).norm() > tol) return false;
  return min_eigenvalue(m) >= -tol;
}

double min_eigenvalue(const ComplexMatrix& m) {
  require_square(m, "min_eigenvalue");
  const ComplexMatrix hermitian_part = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part,
                                                      Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

ComplexMatrix range_isometry(const ComplexMatrix& m, double rank_tol) {
  const HermitianEigen eig = herm_eig(m, Defaults::kPsdTol);
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues(i) > rank_tol) kept.push_back(i);
  }
  ComplexMatrix out(m.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    out.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors.col(kept[c]);
  }
  return out;
}

std::size_t numerical_rank(const ComplexMatrix& m, double rank_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const RealVector& sv = svd.singularValues();
  return static_cast<std::size_t>((sv.array() > rank_tol).count());
}

ComplexMatrix pseudo_inverse(const ComplexMatrix& m, double cutoff) {
  if (m.size() == 0) return ComplexMatrix::Zero(m.cols(), m.rows());
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sv = svd.singularValues();
  const double threshold = cutoff * (sv.size() > 0 ? sv(0) : 0.0);
  RealVector inverted = RealVector::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold && sv(i) > 0.0) inverted(i) = 1.0 / sv(i);
  }
  return svd.matrixV() * inverted.asDiagonal() * svd.matrixU().adjoint();
}

ComplexMatrix project_psd(const ComplexMatrix& m) {
  require_square(m, "project_psd");
  const ComplexMatrix hermitian_part = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part);
  const RealVector clipped = solver.eigenvalues().cwiseMax(0.0);
  return solver.eigenvectors() * clipped.asDiagonal() *
         solver.eigenvectors().adjoint();
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("frobenius_distance: shape mismatch");
  }
  return (a - b).norm();
}

double isometry_error(const ComplexMatrix& u) {
  return (u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols())).norm();
}

ComplexMatrix sum(std::span<const ComplexMatrix> terms) {
  if (terms.empty()) throw DimensionError("sum: empty list");
  ComplexMatrix total = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i].rows() != total.rows() || terms[i].cols() != total.cols()) {
      throw DimensionError("sum: shape mismatch");
    }
    total += terms[i];
  }
  return total;
}

}  // namespace qseq
