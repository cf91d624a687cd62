// Apache License, Version 2.0, refer to LICENSE.txt

#include "relclust/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace relclust {

double Matrix::frobenius_norm() const {
  double acc = 0.0;
  for (double v : a) acc += v * v;
  return std::sqrt(acc);
}

EigenSym jacobi_eigensym(Matrix A) {
  if (A.rows != A.cols) throw std::invalid_argument("jacobi_eigensym: not square");
  const int n = A.rows;
  for (double v : A.a)
    if (!std::isfinite(v))
      throw std::invalid_argument("jacobi_eigensym: non-finite entry");

  Matrix V = Matrix::identity(n);
  const double norm = A.frobenius_norm();
  const double threshold = 1e-12 * (norm > 0.0 ? norm : 1.0);

  const auto off_norm = [&]() {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) acc += 2.0 * A.at(i, j) * A.at(i, j);
    return std::sqrt(acc);
  };

  for (int sweep = 0; sweep < 100 && off_norm() > threshold; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = A.at(p, q);
        if (apq == 0.0) continue;
        const double app = A.at(p, p);
        const double aqq = A.at(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double aip = A.at(i, p);
          const double aiq = A.at(i, q);
          A.at(i, p) = c * aip - s * aiq;
          A.at(i, q) = s * aip + c * aiq;
        }
        for (int j = 0; j < n; ++j) {
          const double apj = A.at(p, j);
          const double aqj = A.at(q, j);
          A.at(p, j) = c * apj - s * aqj;
          A.at(q, j) = s * apj + c * aqj;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = V.at(i, p);
          const double viq = V.at(i, q);
          V.at(i, p) = c * vip - s * viq;
          V.at(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return A.at(i, i) > A.at(j, j); });

  EigenSym out;
  out.values.resize(n);
  out.vectors = Matrix::zeros(n, n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = A.at(order[j], order[j]);
    for (int i = 0; i < n; ++i) out.vectors.at(i, j) = V.at(i, order[j]);
  }
  return out;
}

Matrix gram_matrix(const DataMatrix& data) {
  const int n = data.rows();
  Matrix K = Matrix::zeros(n, n);
  for (int i = 0; i < n; ++i) {
    const auto xi = data.row(i);
    for (int j = i; j < n; ++j) {
      const auto xj = data.row(j);
      double dot = 0.0;
      for (int t = 0; t < data.cols(); ++t) dot += xi[t] * xj[t];
      K.at(i, j) = dot;
      K.at(j, i) = dot;
    }
  }
  return K;
}

Matrix eplus_matrix(const SideInfo& E) {
  Matrix M = Matrix::zeros(E.n(), E.n());
  E.for_each_entry([&](int i, int j, Link link) {
    if (link == Link::May) M.at(i, j) = M.at(j, i) = 1.0;
  });
  return M;
}

Matrix eminus_matrix(const SideInfo& E) {
  Matrix M = Matrix::zeros(E.n(), E.n());
  E.for_each_entry([&](int i, int j, Link link) {
    if (link == Link::MayNot) M.at(i, j) = M.at(j, i) = 1.0;
  });
  return M;
}

Matrix build_spectral_matrix(const Matrix& kernel, const SideInfo& E,
                             double xi1, double xi2, double lambda) {
  if (kernel.rows != kernel.cols || kernel.rows != E.n())
    throw std::invalid_argument("build_spectral_matrix: shape mismatch");
  for (int i = 0; i < kernel.rows; ++i)
    for (int j = i + 1; j < kernel.cols; ++j)
      if (std::abs(kernel.at(i, j) - kernel.at(j, i)) > 1e-10)
        throw std::invalid_argument("build_spectral_matrix: asymmetric kernel");

  Matrix M = kernel;
  for (int i = 0; i < M.rows; ++i) M.at(i, i) -= lambda;
  E.for_each_entry([&](int i, int j, Link link) {
    const double w = link == Link::May ? xi1 : -xi2;
    M.at(i, j) += w;
    M.at(j, i) += w;
  });
  return M;
}

SpectralResult spectral_relaxation(const Matrix& kernel_plus_constraints,
                                   double lambda) {
  EigenSym eig = jacobi_eigensym(kernel_plus_constraints);
  SpectralResult out;
  out.eigenvalues = eig.values;
  for (double ev : eig.values) {
    if (ev > lambda) {
      ++out.k_hat;
      out.relaxed_value += ev - lambda;
    }
  }
  const int n = kernel_plus_constraints.rows;
  out.top_vectors = Matrix::zeros(n, out.k_hat);
  for (int j = 0; j < out.k_hat; ++j)
    for (int i = 0; i < n; ++i) out.top_vectors.at(i, j) = eig.vectors.at(i, j);
  return out;
}

}  // namespace relclust
