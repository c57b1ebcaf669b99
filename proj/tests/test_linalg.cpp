#include "abcwave/linalg.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace {

using abcwave::DenseMatrix;
using abcwave::SparseMatrix;
using abcwave::Triplet;
using abcwave::Vector;

std::vector<std::complex<double>> sorted(std::vector<std::complex<double>> v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return v;
}

SparseMatrix sparse_from_dense(const DenseMatrix& a) {
  std::vector<Triplet> t;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j) != 0.0) t.emplace_back(i, j, a(i, j));
    }
  }
  return abcwave::matrix_from_triplets(a.rows(), a.cols(), t);
}

TEST(Factorization, SolvesIdentity) {
  const SparseMatrix eye = sparse_from_dense(DenseMatrix::Identity(4, 4));
  const abcwave::Factorization f(eye);
  Vector b(4);
  b << 1, -2, 3, 0.5;
  EXPECT_NEAR((f.solve(b) - b).norm(), 0.0, 1e-15);
}

TEST(Factorization, SolvesSymmetricTwoByTwo) {
  DenseMatrix a(2, 2);
  a << 2, 1, 1, 2;
  Vector b(2);
  b << 3, 3;
  const Vector x = abcwave::sparse_lu(sparse_from_dense(a)).solve(b);
  EXPECT_NEAR(x(0), 1.0, 1e-14);
  EXPECT_NEAR(x(1), 1.0, 1e-14);
}

TEST(Factorization, RecoversKnownSolutionDiagonallyDominant) {
  const int n = 50;
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  DenseMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      a(i, j) = dist(gen);
      row += std::abs(a(i, j));
    }
    a(i, i) = row + 1.0;
  }
  Vector x_star(n);
  for (int i = 0; i < n; ++i) x_star(i) = dist(gen);
  const Vector b = a * x_star;
  const Vector x = abcwave::sparse_lu(sparse_from_dense(a)).solve(b);
  EXPECT_LE((x - x_star).lpNorm<Eigen::Infinity>(), 1e-10);
}

TEST(Factorization, ThrowsOnNumericallySingular) {
  DenseMatrix a(2, 2);
  a << 1, 1, 1, 1;
  EXPECT_THROW(abcwave::sparse_lu(sparse_from_dense(a)),
               abcwave::SingularMatrixError);
}

TEST(Factorization, ThrowsOnStructurallySingular) {
  std::vector<Triplet> t = {{0, 0, 1.0}, {1, 1, 1.0}};
  const SparseMatrix a = abcwave::matrix_from_triplets(3, 3, t);
  EXPECT_THROW(abcwave::sparse_lu(a), abcwave::SingularMatrixError);
}

TEST(Factorization, ThrowsOnNonSquare) {
  const SparseMatrix a =
      abcwave::matrix_from_triplets(2, 3, {{0, 0, 1.0}, {1, 1, 1.0}});
  EXPECT_THROW(abcwave::sparse_lu(a), abcwave::DimensionMismatchError);
}

TEST(Factorization, RejectsWrongRhsSize) {
  const SparseMatrix eye = sparse_from_dense(DenseMatrix::Identity(3, 3));
  const abcwave::Factorization f(eye);
  const Vector b = Vector::Ones(4);
  EXPECT_THROW(f.solve(b), abcwave::DimensionMismatchError);
}

TEST(DenseEigenvalues, DiagonalMatrix) {
  DenseMatrix a = DenseMatrix::Zero(3, 3);
  a(0, 0) = 1;
  a(1, 1) = 2;
  a(2, 2) = 3;
  const auto vals = sorted(abcwave::dense_eigenvalues(a).values);
  EXPECT_NEAR(vals[0].real(), 1.0, 1e-12);
  EXPECT_NEAR(vals[1].real(), 2.0, 1e-12);
  EXPECT_NEAR(vals[2].real(), 3.0, 1e-12);
  for (const auto& v : vals) EXPECT_NEAR(v.imag(), 0.0, 1e-12);
}

TEST(DenseEigenvalues, RotationGeneratorHasImaginaryPair) {
  DenseMatrix a(2, 2);
  a << 0, 1, -1, 0;
  const auto vals = sorted(abcwave::dense_eigenvalues(a).values);
  EXPECT_NEAR(vals[0].real(), 0.0, 1e-14);
  EXPECT_NEAR(vals[0].imag(), -1.0, 1e-14);
  EXPECT_NEAR(vals[1].real(), 0.0, 1e-14);
  EXPECT_NEAR(vals[1].imag(), 1.0, 1e-14);
}

TEST(DenseEigenvalues, CompanionMatrixCubeRootsOfUnity) {
  // Companion matrix of z^3 - 1.
  DenseMatrix a = DenseMatrix::Zero(3, 3);
  a(0, 2) = 1;
  a(1, 0) = 1;
  a(2, 1) = 1;
  const auto vals = sorted(abcwave::dense_eigenvalues(a).values);
  const double half_sqrt3 = 0.5 * std::sqrt(3.0);
  EXPECT_NEAR(vals[0].real(), -0.5, 1e-10);
  EXPECT_NEAR(vals[0].imag(), -half_sqrt3, 1e-10);
  EXPECT_NEAR(vals[1].real(), -0.5, 1e-10);
  EXPECT_NEAR(vals[1].imag(), half_sqrt3, 1e-10);
  EXPECT_NEAR(vals[2].real(), 1.0, 1e-10);
  EXPECT_NEAR(vals[2].imag(), 0.0, 1e-10);
}

TEST(DenseEigenvalues, PermutationSimilarityInvariance) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const int n = 12;
  DenseMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = dist(gen);
  }
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), gen);
  DenseMatrix p = DenseMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) p(perm[i], i) = 1.0;
  const DenseMatrix b = p * a * p.transpose();

  const auto va = sorted(abcwave::dense_eigenvalues(a).values);
  const auto vb = sorted(abcwave::dense_eigenvalues(b).values);
  for (int i = 0; i < n; ++i) {
    EXPECT_NEAR(std::abs(va[i] - vb[i]), 0.0, 1e-9);
  }
}

TEST(DenseEigenvalues, VectorsHaveSmallResiduals) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const int n = 20;
  DenseMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = dist(gen);
  }
  const auto dec = abcwave::dense_eigenvalues(a, /*with_vectors=*/true);
  EXPECT_LE(dec.max_residual, 1e-12);
}

TEST(DenseEigenvalues, CapIsEnforced) {
  const DenseMatrix a = DenseMatrix::Identity(11, 11);
  EXPECT_THROW(abcwave::dense_eigenvalues(a, false, 10),
               abcwave::CapExceededError);
}

TEST(KernelBasis, ZeroMatrixHasFullKernel) {
  const DenseMatrix a = DenseMatrix::Zero(2, 2);
  const auto kb = abcwave::kernel_basis(a);
  EXPECT_EQ(kb.dimension, 2);
  EXPECT_EQ(kb.matrix_norm, 0.0);
  EXPECT_FALSE(kb.ambiguous_rank);
}

TEST(KernelBasis, RankOneDiagonal) {
  DenseMatrix a = DenseMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  const auto kb = abcwave::kernel_basis(a);
  ASSERT_EQ(kb.dimension, 1);
  EXPECT_NEAR(std::abs(kb.vectors(1, 0)), 1.0, 1e-14);
  EXPECT_NEAR(kb.vectors(0, 0), 0.0, 1e-14);
}

TEST(KernelBasis, ProductRankDeficiency) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const int n = 16;
  const int r = 11;
  DenseMatrix b(n, r), c(r, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < r; ++j) b(i, j) = dist(gen);
  }
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < n; ++j) c(i, j) = dist(gen);
  }
  const DenseMatrix a = b * c;
  const auto kb = abcwave::kernel_basis(a);
  EXPECT_EQ(kb.dimension, n - r);
  // Returned basis is orthonormal and annihilated by a.
  const DenseMatrix gram =
      kb.vectors.transpose() * kb.vectors -
      DenseMatrix::Identity(kb.dimension, kb.dimension);
  EXPECT_LE(gram.lpNorm<Eigen::Infinity>(), 1e-12);
  EXPECT_LE((a * kb.vectors).lpNorm<Eigen::Infinity>(),
            1e-10 * kb.matrix_norm);
}

TEST(KernelBasis, SparseOverloadMatchesDense) {
  DenseMatrix a = DenseMatrix::Zero(3, 3);
  a(0, 0) = 2.0;
  a(1, 1) = 3.0;
  const auto kd = abcwave::kernel_basis(a);
  const auto ks = abcwave::kernel_basis(sparse_from_dense(a));
  EXPECT_EQ(kd.dimension, ks.dimension);
  EXPECT_EQ(ks.dimension, 1);
}

TEST(KernelBasis, AmbiguousRankFlag) {
  // Singular values 1 and 5e-10 with tol 1e-10: the small one is discarded
  // but sits within a decade of the cut.
  DenseMatrix a = DenseMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 5e-11;
  const auto kb = abcwave::kernel_basis(a, 1e-10);
  EXPECT_EQ(kb.dimension, 1);
  EXPECT_TRUE(kb.ambiguous_rank);
}

TEST(Utilities, MaxAbsAndSymmetry) {
  std::vector<Triplet> t = {{0, 1, 2.0}, {1, 0, 2.0}, {0, 0, -3.0}};
  const SparseMatrix a = abcwave::matrix_from_triplets(2, 2, t);
  EXPECT_EQ(abcwave::max_abs(a), 3.0);
  EXPECT_TRUE(abcwave::is_symmetric(a));
  const SparseMatrix b = abcwave::matrix_from_triplets(2, 2, {{0, 1, 1.0}});
  EXPECT_FALSE(abcwave::is_symmetric(b));
}

TEST(Utilities, TripletsAccumulateDuplicates) {
  const SparseMatrix a =
      abcwave::matrix_from_triplets(2, 2, {{0, 0, 1.0}, {0, 0, 2.5}});
  EXPECT_EQ(a.coeff(0, 0), 3.5);
}

}  // namespace
