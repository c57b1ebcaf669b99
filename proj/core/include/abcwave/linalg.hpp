#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <memory>
#include <vector>

#include "abcwave/errors.hpp"

namespace abcwave {

using Vector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXd;
using ComplexDenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;
using Index = Eigen::Index;

// Builds a compressed sparse matrix; duplicate (i,j) entries are summed.
SparseMatrix matrix_from_triplets(Index rows, Index cols,
                                  const std::vector<Triplet>& entries);

// Largest absolute entry; 0 for an empty matrix.
double max_abs(const SparseMatrix& a);

// True if |a - a^T| has no entry above tol.
bool is_symmetric(const SparseMatrix& a, double tol = 1e-12);

// Sparse LU factorization of a square real matrix. Immutable once built;
// safe to share between threads for concurrent solves.
class Factorization {
 public:
  // Throws SingularMatrixError if a pivot collapses or the matrix is
  // structurally singular; DimensionMismatchError if not square.
  explicit Factorization(const SparseMatrix& a);

  Vector solve(const Vector& b) const;
  DenseMatrix solve(const DenseMatrix& b) const;
  Index dimension() const { return n_; }

 private:
  std::shared_ptr<const Eigen::SparseLU<SparseMatrix>> lu_;
  Index n_ = 0;
};

inline Factorization sparse_lu(const SparseMatrix& a) {
  return Factorization(a);
}

struct EigenDecomposition {
  std::vector<std::complex<double>> values;
  // One column per eigenvalue; empty unless requested.
  ComplexDenseMatrix vectors;
  // max_i ||A v_i - lambda_i v_i|| / (||A||_F ||v_i||); 0 when vectors were
  // not requested.
  double max_residual = 0.0;
};

// Full dense (real, non-symmetric) eigendecomposition via the QR algorithm.
// Throws CapExceededError when the dimension exceeds cap and
// NoConvergenceError if the QR iteration fails.
EigenDecomposition dense_eigenvalues(const DenseMatrix& a,
                                     bool with_vectors = false,
                                     Index cap = 2000);

struct KernelBasis {
  // Orthonormal columns spanning the numerical null space.
  DenseMatrix vectors;
  int dimension = 0;
  // Set when some discarded singular value sits within a decade of the
  // cut tol * sigma_max, so the reported rank is not clearly resolved.
  bool ambiguous_rank = false;
  // Largest singular value of the input.
  double matrix_norm = 0.0;
  std::vector<double> singular_values;
};

// Numerical null space by SVD: directions with sigma <= tol * sigma_max.
KernelBasis kernel_basis(const DenseMatrix& a, double tol = 1e-10);
KernelBasis kernel_basis(const SparseMatrix& a, double tol = 1e-10);

}  // namespace abcwave
