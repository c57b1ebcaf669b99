#include "abcwave/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>

namespace abcwave {

SparseMatrix matrix_from_triplets(Index rows, Index cols,
                                  const std::vector<Triplet>& entries) {
  SparseMatrix a(rows, cols);
  a.setFromTriplets(entries.begin(), entries.end());
  a.makeCompressed();
  return a;
}

double max_abs(const SparseMatrix& a) {
  double m = 0.0;
  for (int k = 0; k < a.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) {
      m = std::max(m, std::abs(it.value()));
    }
  }
  return m;
}

bool is_symmetric(const SparseMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  SparseMatrix d = SparseMatrix(a.transpose()) - a;
  return max_abs(d) <= tol;
}

Factorization::Factorization(const SparseMatrix& a) : n_(a.rows()) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatchError("factorization requires a square matrix, got " +
                                 std::to_string(a.rows()) + "x" +
                                 std::to_string(a.cols()));
  }
  auto lu = std::make_shared<Eigen::SparseLU<SparseMatrix>>();
  SparseMatrix ac = a;
  ac.makeCompressed();
  lu->compute(ac);
  if (lu->info() != Eigen::Success) {
    throw SingularMatrixError("sparse LU failed: matrix is singular to working precision");
  }
  lu_ = std::move(lu);
}

Vector Factorization::solve(const Vector& b) const {
  if (b.size() != n_) {
    throw DimensionMismatchError("rhs has size " + std::to_string(b.size()) +
                                 ", expected " + std::to_string(n_));
  }
  return lu_->solve(b);
}

DenseMatrix Factorization::solve(const DenseMatrix& b) const {
  if (b.rows() != n_) {
    throw DimensionMismatchError("rhs has " + std::to_string(b.rows()) +
                                 " rows, expected " + std::to_string(n_));
  }
  return lu_->solve(b);
}

EigenDecomposition dense_eigenvalues(const DenseMatrix& a, bool with_vectors,
                                     Index cap) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatchError("eigendecomposition requires a square matrix");
  }
  if (a.rows() > cap) {
    throw CapExceededError("dense eigendecomposition of dimension " +
                           std::to_string(a.rows()) + " exceeds cap " +
                           std::to_string(cap));
  }
  Eigen::EigenSolver<DenseMatrix> solver(a, with_vectors);
  if (solver.info() != Eigen::Success) {
    throw NoConvergenceError("QR eigenvalue iteration did not converge");
  }
  EigenDecomposition out;
  const Index n = a.rows();
  out.values.resize(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i) out.values[static_cast<size_t>(i)] = solver.eigenvalues()(i);
  if (with_vectors) {
    out.vectors = solver.eigenvectors();
    const double anorm = a.norm();
    if (anorm > 0.0) {
      ComplexDenseMatrix resid = a * out.vectors;
      for (Index i = 0; i < n; ++i) {
        resid.col(i) -= solver.eigenvalues()(i) * out.vectors.col(i);
        const double vnorm = out.vectors.col(i).norm();
        if (vnorm > 0.0) {
          out.max_residual =
              std::max(out.max_residual, resid.col(i).norm() / (anorm * vnorm));
        }
      }
    }
  }
  return out;
}

KernelBasis kernel_basis(const DenseMatrix& a, double tol) {
  Eigen::BDCSVD<DenseMatrix> svd(a, Eigen::ComputeFullV);
  KernelBasis out;
  const Index n = a.cols();
  const Index k = svd.singularValues().size();
  out.singular_values.assign(svd.singularValues().data(),
                             svd.singularValues().data() + k);
  out.matrix_norm = k > 0 ? svd.singularValues()(0) : 0.0;
  const double cut = tol * out.matrix_norm;
  Index rank = 0;
  for (Index i = 0; i < k; ++i) {
    const double s = svd.singularValues()(i);
    if (s > cut) {
      ++rank;
      // Kept values just above the cut are as suspicious as dropped values
      // just below it.
      if (s <= 10.0 * cut) out.ambiguous_rank = true;
    } else if (s >= cut / 10.0 && cut > 0.0) {
      out.ambiguous_rank = true;
    }
  }
  out.dimension = static_cast<int>(n - rank);
  out.vectors = svd.matrixV().rightCols(n - rank);
  return out;
}

KernelBasis kernel_basis(const SparseMatrix& a, double tol) {
  return kernel_basis(DenseMatrix(a), tol);
}

}  // namespace abcwave
