#pragma once

// Truncated Laurent series at infinity.
//
// A LaurentSeries stores the coefficients of w^top, w^{top-1}, ..., w^{-K}. Conformal
// maps have top = 1 (c_{-1} w + c_0 + c_1/w + ...); powers of maps carry higher tops.
// The truncation order K is part of every value: a series either knows that all
// coefficients below w^{-K} vanish (`exact`), or treats them as unknown, in which case
// operations shrink K to what they can still determine.

#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include "opshift/error.hpp"

namespace opshift {

class LaurentSeries {
 public:
  /// `coeffs[i]` is the coefficient of w^{top - i}.
  LaurentSeries(int top, std::vector<cplx> coeffs, double rho, bool exact);

  /// c_{-1} w + c_0 + sum_{k=1}^{K} c_k w^{-k}; `tail` holds c_1..c_K.
  static LaurentSeries map(cplx lead, cplx constant, std::vector<cplx> tail, double rho,
                           bool exact = false);
  static LaurentSeries identity() { return map(1.0, 0.0, {}, 0.0, true); }
  static LaurentSeries one();

  int top_degree() const { return top_; }
  int lowest_degree() const { return top_ - static_cast<int>(coeffs_.size()) + 1; }
  /// Truncation order K: coefficients are known down to w^{-K}.
  int order() const { return -lowest_degree(); }
  double rho() const { return rho_; }
  bool exact() const { return exact_; }

  /// Coefficient of w^power; zero above the top. Below w^{-K} it is zero for exact series
  /// and an error (DegreeExceeded) otherwise.
  cplx coeff(int power) const;
  /// Coefficient c_k in the conformal-map indexing: c_k multiplies w^{-k} (k >= -1).
  cplx c(int k) const { return coeff(-k); }

  std::span<const cplx> coefficients() const { return coeffs_; }

  LaurentSeries with_rho(double rho) const;
  /// Keeps w^top..w^{-K}; drops exactness if nonzero terms are discarded.
  LaurentSeries truncated(int K) const;
  LaurentSeries scaled(cplx factor) const;
  LaurentSeries plus_constant(cplx shift) const;

 private:
  int top_;
  std::vector<cplx> coeffs_;
  double rho_;
  bool exact_;
};

/// Coefficients f_1, f_2, ... of f(z) = sum_{j>=1} f_j z^{-j}.
struct SeriesAtInfinity {
  std::vector<cplx> f;  // f[0] = f_1

  std::size_t size() const { return f.size(); }
  cplx operator[](std::size_t j) const { return f.at(j - 1); }  // 1-indexed
};

cplx laurent_eval(const LaurentSeries& s, cplx w);
LaurentSeries laurent_multiply(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries laurent_power(const LaurentSeries& s, std::size_t j);

/// Solves 1/f(g(z)) = z for g = beta_{-1} z + beta_0 + sum beta_k z^{-k} through order K.
/// Needs f_1..f_{K+2}; throws ZeroLeadingCoefficient when f_1 = 0.
LaurentSeries ratio_inverse(const SeriesAtInfinity& f, std::size_t K, double rho = 0.0);

/// (B^k)_{1,1} for the matrix B_{j,l} = beta_{j-l} built from g.
cplx b_matrix_power(const LaurentSeries& g, std::size_t k);

/// Constant coefficient of psi^j, i.e. the j-th moment of the pushed-forward circle average.
/// Cross-checks against the trapezoid average and throws CrossCheckFailed on mismatch.
cplx equilibrium_moments(const LaurentSeries& psi, std::size_t j);

/// Trapezoid average of psi(e^{i theta})^j over `grid` equispaced angles.
cplx circle_average_power(const LaurentSeries& psi, std::size_t j, std::size_t grid);

/// w + c/w, rho = sqrt(c).
LaurentSeries joukowski(double c);
/// a w + b, rho = 0.
LaurentSeries linear_map(double a, cplx b);

/// CSV: comment header with K and rho, then rows (k, Re c_k, Im c_k) in map indexing.
void write_csv(std::ostream& out, const LaurentSeries& s);

namespace series {

// Truncated power series in u; index i holds the coefficient of u^i.
using Power = std::vector<cplx>;

Power multiply(const Power& a, const Power& b, std::size_t n);
Power reciprocal(const Power& a, std::size_t n);
/// a(b(u)) truncated to n terms; requires b[0] == 0.
Power compose(const Power& a, const Power& b, std::size_t n);
Power derivative(const Power& a);

}  // namespace series

}  // namespace opshift
