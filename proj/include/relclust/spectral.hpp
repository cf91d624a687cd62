// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <vector>

#include "relclust/types.hpp"

namespace relclust {

// Minimal dense row-major matrix for the spectral path.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  static Matrix zeros(int rows, int cols) {
    return Matrix{rows, cols,
                  std::vector<double>(static_cast<std::size_t>(rows) * cols, 0.0)};
  }
  static Matrix identity(int n) {
    Matrix m = zeros(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * cols + j];
  }
  double frobenius_norm() const;
};

struct EigenSym {
  std::vector<double> values;  // descending
  Matrix vectors;              // column j pairs with values[j]
};

// Cyclic Jacobi rotations on a symmetric matrix; converges when the
// off-diagonal Frobenius mass falls under 1e-12 * ||A||_F.
EigenSym jacobi_eigensym(Matrix A);

// Gram matrix of the data rows: K_ij = <x_i, x_j>.
Matrix gram_matrix(const DataMatrix& data);

// 0/1 indicator matrices of the May and MayNot links.
Matrix eplus_matrix(const SideInfo& E);
Matrix eminus_matrix(const SideInfo& E);

// K - lambda I + xi1 E+ - xi2 E-. Throws if the kernel is asymmetric beyond
// 1e-10 or the shapes disagree.
Matrix build_spectral_matrix(const Matrix& kernel, const SideInfo& E,
                             double xi1, double xi2, double lambda);

struct SpectralResult {
  double relaxed_value = 0.0;        // sum over eigenvalues above lambda of (ev - lambda)
  int k_hat = 0;                     // count of eigenvalues above lambda
  std::vector<double> eigenvalues;   // all of them, descending
  Matrix top_vectors;                // the k_hat leading eigenvectors as columns
};

// Relaxation of the constrained clustering objective: takes the unshifted
// matrix K + xi1 E+ - xi2 E- and reports the eigenvalue count above lambda
// together with the relaxed trace value.
SpectralResult spectral_relaxation(const Matrix& kernel_plus_constraints,
                                   double lambda);

}  // namespace relclust
