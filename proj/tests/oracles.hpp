#pragma once

// Test-side references that do not route through the code under test: plain dense
// arithmetic, Lagrange inversion, seeded sample points.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "opshift/hessenberg.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Dense = std::vector<std::vector<cplx>>;

inline Dense dense(const opshift::HessenbergMatrix& M, std::size_t n) {
  Dense A(n, std::vector<cplx>(n, 0.0));
  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t k = 1; k <= n; ++k) A[j - 1][k - 1] = M(j, k);
  }
  return A;
}

inline Dense multiply(const Dense& A, const Dense& B) {
  const std::size_t n = A.size();
  Dense C(n, std::vector<cplx>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < n; ++l) {
      if (A[i][l] == cplx(0.0)) continue;
      for (std::size_t k = 0; k < n; ++k) C[i][k] += A[i][l] * B[l][k];
    }
  }
  return C;
}

inline Dense power(const Dense& A, std::size_t j) {
  Dense P(A.size(), std::vector<cplx>(A.size(), 0.0));
  for (std::size_t i = 0; i < A.size(); ++i) P[i][i] = 1.0;
  for (std::size_t t = 0; t < j; ++t) P = multiply(P, A);
  return P;
}

/// Determinant by Gaussian elimination with partial pivoting.
inline cplx determinant(Dense A) {
  const std::size_t n = A.size();
  cplx det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(A[r][c]) > std::abs(A[p][c])) p = r;
    }
    if (A[p][c] == cplx(0.0)) return 0.0;
    if (p != c) {
      std::swap(A[p], A[c]);
      det = -det;
    }
    det *= A[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const cplx l = A[r][c] / A[c][c];
      for (std::size_t k = c; k < n; ++k) A[r][k] -= l * A[c][k];
    }
  }
  return det;
}

inline cplx horner(const std::vector<cplx>& coeffs, cplx z) {
  cplx acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

/// Power-series product truncated to n terms.
inline std::vector<cplx> series_mul(const std::vector<cplx>& a, const std::vector<cplx>& b,
                                    std::size_t n) {
  std::vector<cplx> c(n, 0.0);
  for (std::size_t i = 0; i < std::min(n, a.size()); ++i) {
    for (std::size_t k = 0; i + k < n && k < b.size(); ++k) c[i + k] += a[i] * b[k];
  }
  return c;
}

/// Coefficients f_1..f_count of f = 1 / g^{-1} for g(z) = beta[0] z + beta[1] + beta[2]/z
/// + ..., by Lagrange inversion: with H(u) = u g(1/u), f_n = (1/n) [u^{n-1}] H(u)^n.
inline std::vector<cplx> lagrange_f(const std::vector<cplx>& beta, std::size_t count) {
  std::vector<cplx> f;
  for (std::size_t n = 1; n <= count; ++n) {
    std::vector<cplx> p{1.0};
    for (std::size_t t = 0; t < n; ++t) p = series_mul(p, beta, n);
    f.push_back(p[n - 1] / static_cast<double>(n));
  }
  return f;
}

/// `count` points on |z| = radius with seeded uniform angles.
inline std::vector<cplx> seeded_circle(std::uint64_t seed, double radius, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<cplx> z;
  for (std::size_t i = 0; i < count; ++i) z.push_back(std::polar(radius, angle(rng)));
  return z;
}

inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace oracle
