#pragma once

// Pipelines that connect the Hessenberg matrix to the limits the asymptotic theory is
// about: the Laurent coefficients of the ratio limit, weak-limit moments, the Toeplitz
// symbol, the degenerate case kappa_n / kappa_{n+1} -> 0, and zero-counting moments.
//
// Every limit is reported as a LimitEstimate so callers see the residual behind each
// verdict, not only a number.

#include <cstddef>
#include <optional>
#include <vector>

#include "opshift/hessenberg.hpp"
#include "opshift/laurent.hpp"

namespace opshift {

/// Caps the worker threads used for per-j limit detection (default 1). Results do not
/// depend on the cap.
void set_thread_cap(std::size_t threads);
std::size_t thread_cap();

struct RatioReport {
  SeriesAtInfinity f_est;             // f_1 = lim M_{n+1,n}, f_{j+1} = f_1 A_j
  LimitEstimate leading;              // subdiagonal M_{n+1,n}
  std::vector<LimitEstimate> corner;  // A_j = lim ((pi_n M pi_n)^j)_{n,n}, j = 1..J
  LimitEstimate subdiagonal_squared;  // extrapolated |M_{n+1,n}|^2
  bool posinf = false;                // liminf kappa_n / kappa_{n+1} > 0
};

/// f_est through f_{J+1}.
RatioReport ratio_series(const HessenbergMatrix& M, std::size_t J, std::size_t window = 25,
                         double tol = 1e-6, LimitMethod method = LimitMethod::Cauchy);

/// Limit of n -> (M^j)_{n+1,n+1} = int z^j |phi_n|^2 dmu over the last `window` n.
LimitEstimate weak_moment_sequence(const HessenbergMatrix& M, std::size_t j,
                                   std::size_t window = 25, double tol = 1e-6,
                                   LimitMethod method = LimitMethod::Cauchy);

struct SymbolReport {
  LaurentSeries symbol;                  // direct diagonal limits beta_{-1}..beta_J
  LaurentSeries from_ratio;              // ratio_inverse of the ratio coefficients
  std::vector<LimitEstimate> diagonals;  // j = -1..J
  RatioReport ratio;
  double cross_residual = 0.0;  // max_j |beta_j - beta'_j|
};

/// Throws DegenerateKappa when the subdiagonal tends to 0 and CrossCheckFailed when the
/// two estimates differ by more than tol.
SymbolReport symbol_extract(const HessenbergMatrix& M, std::size_t J, std::size_t window = 25,
                            double tol = 1e-6, LimitMethod method = LimitMethod::Extrapolated);

struct DegenerateReport {
  cplx x = 0.0;  // lim M_{n,n}
  LimitEstimate diagonal;
  LimitEstimate subdiagonal_squared;
  std::vector<LimitEstimate> moments;  // j = 1..4
  bool moments_match = false;          // |moment_j - x^j| <= tol for all j
};

/// Throws NotDegenerate unless |M_{n+1,n}|^2 -> 0.
DegenerateReport degenerate_limit(const HessenbergMatrix& M, std::size_t window = 25,
                                  double tol = 1e-6,
                                  LimitMethod method = LimitMethod::Extrapolated);

/// (1/n) trace((pi_n M pi_n)^j): the j-th power sum of the zeros of Phi_n, divided by n.
cplx zero_counting_moments(const HessenbergMatrix& M, std::size_t n, std::size_t j);

struct BoundCheck {
  double lhs;
  double rhs;
  bool holds() const { return lhs <= rhs; }
};

/// lhs = |zero-counting moment - (1/n) sum_{k<n} (M^j)_{k+1,k+1}|, rhs = 2 j normbound / n.
BoundCheck weakzero_bound_check(const HessenbergMatrix& M, std::size_t n, std::size_t j,
                                double normbound);

struct EquivalenceVerdicts {
  std::vector<bool> ratio;   // A_1..A_{j+1} all converged, j = 0..J
  std::vector<bool> scaled;  // scaled diagonals 0..j all converged
  bool agree() const { return ratio == scaled; }
};

EquivalenceVerdicts equivalence_verdicts(const HessenbergMatrix& M, std::size_t J,
                                         std::size_t window = 25, double tol = 1e-6,
                                         LimitMethod method = LimitMethod::Cauchy);

}  // namespace opshift
