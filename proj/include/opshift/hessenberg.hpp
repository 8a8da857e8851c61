#pragma once

// Upper Hessenberg truncations pi_N M pi_N of the multiplication-by-z operator,
// and the structural identities they satisfy.
//
// Index conventions (everything 1-indexed, as in the matrix literature):
//   M(j, k) = <z phi_{k-1}, phi_{j-1}>, zero for j > k + 1.
//   Diagonal j is the sequence n -> M(n - j, n); j = -1 is the subdiagonal,
//   j = 0 the main diagonal, j >= 1 the superdiagonals.
//   kappa(n) is the leading coefficient of phi_n, n = 0..dim-1.

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "opshift/error.hpp"

namespace opshift {

class MeasureSpec;

class HessenbergMatrix {
 public:
  explicit HessenbergMatrix(std::size_t dim);

  std::size_t dim() const { return dim_; }

  /// Entry (j, k); structural zeros below the subdiagonal read as 0.
  cplx operator()(std::size_t j, std::size_t k) const;
  /// Producers only. Throws IndexOutOfRange for structural zeros or out-of-range indices.
  void set(std::size_t j, std::size_t k, cplx value);

  // kappa is held as log kappa: for alpha_n -> 1 it passes 1e308 well before n = 400.
  bool has_kappa() const { return !log_kappa_.empty(); }
  double kappa(std::size_t n) const;
  double log_kappa(std::size_t n) const;
  /// kappa_m / kappa_n without forming either factor.
  double kappa_ratio(std::size_t m, std::size_t n) const;
  std::vector<double> kappas() const;
  void attach_kappa(std::vector<double> kappa);
  void attach_log_kappa(std::vector<double> log_kappa);

  /// Leading n x n block.
  HessenbergMatrix leading(std::size_t n) const;

 private:
  std::size_t index(std::size_t j, std::size_t k) const;

  std::size_t dim_;
  std::vector<cplx> data_;
  std::vector<double> log_kappa_;
};

/// An element (i_0, ..., i_{k+1}) of L(k): offsets in [0, k] with i_0 = i_{k+1} = 0 and
/// i_{m+1} <= i_m + 1. It labels the term M_{n-i_0,n-i_1} ... M_{n-i_k,n-i_{k+1}}.
struct PathChain {
  std::vector<std::size_t> offsets;

  /// Membership in L(k) for k = offsets.size() - 2.
  bool valid() const;
};

std::vector<PathChain> enumerate_chains(std::size_t k);
/// Product of the entries along the chain anchored at row/column n; zero when the chain
/// leaves the truncation (n - i < 1).
cplx chain_product(const HessenbergMatrix& M, std::size_t n, const PathChain& chain);

enum class LimitMethod {
  Cauchy,        // residual = max pairwise distance over the tail, limit = last value
  Extrapolated,  // least-squares cubic in 1/n at 1/n = 0; residual = quartic vs cubic gap
};

struct LimitEstimate {
  std::vector<cplx> tail;
  std::size_t first_n = 0;  // index of tail[0] in the underlying sequence
  bool converged = false;
  cplx limit = 0.0;
  double residual = 0.0;
  double tol = 0.0;
  LimitMethod method = LimitMethod::Cauchy;
};

/// Verdict on a sequence tail; `first_n` is the sequence index of tail[0] (must be >= 1
/// for the extrapolated method).
LimitEstimate estimate_limit(std::span<const cplx> tail, std::size_t first_n, double tol,
                             LimitMethod method = LimitMethod::Cauchy);

/// det(z - pi_n M pi_n) by the division-free Hessenberg recurrence.
cplx char_poly(const HessenbergMatrix& M, std::size_t n, cplx z);
/// ((z - pi_n M pi_n)^{-1})_{n,n} by elimination with adjacent-row pivoting.
cplx resolvent_corner(const HessenbergMatrix& M, std::size_t n, cplx z);
/// ((pi_n M pi_n)^j)_{n,n}
cplx truncated_power_diagonal(const HessenbergMatrix& M, std::size_t n, std::size_t j);
/// (M^j)_{n,n} of the untruncated operator; needs n + j - 1 <= dim.
cplx full_power_diagonal(const HessenbergMatrix& M, std::size_t n, std::size_t j);
/// ((pi_b M pi_b)^j)_{k,k} for k <= b <= dim.
cplx block_power_diagonal(const HessenbergMatrix& M, std::size_t k, std::size_t j, std::size_t b);

struct RepeatCheck {
  cplx product;
  cplx collapsed;
};

/// Excursion of matrix indices i_m, ..., i_{m'} (first == last, the others distinct,
/// each step down by at most one). Returns the entry product along it and the collapsed
/// form (kappa_{i_*-1}/kappa_{i^*-1}) M_{i_*, i^*}.
RepeatCheck lemma_repeat_check(const HessenbergMatrix& M, std::span<const std::size_t> path);

/// kappa_{n-1-j} / kappa_{n-1} * M(n - j, n)
cplx scaled_diagonal(const HessenbergMatrix& M, std::size_t n, std::ptrdiff_t j);

struct DiagonalSample {
  std::size_t n;
  cplx value;
};

/// Every available entry of diagonal j (optionally scaled), in increasing n.
std::vector<DiagonalSample> diagonal_sequence(const HessenbergMatrix& M, std::ptrdiff_t j,
                                              bool scaled);

LimitEstimate diagonal_limit(const HessenbergMatrix& M, std::ptrdiff_t j, bool scaled,
                             std::size_t window = 25, double tol = 1e-6,
                             LimitMethod method = LimitMethod::Cauchy);

struct NormBound {
  double bound;    // sup |z| over the support
  double witness;  // largest singular value of the stored truncation
};

NormBound norm_bound(const HessenbergMatrix& M, const MeasureSpec& m);
NormBound norm_bound(const HessenbergMatrix& M, double support_radius);
double max_singular_value(const HessenbergMatrix& M);

/// Triplets (j, k, Re, Im) for every stored entry.
void write_csv(std::ostream& out, const HessenbergMatrix& M);
/// Rows (j, n, Re, Im, scaled) for diagonals in `js`.
void write_diagonals_csv(std::ostream& out, const HessenbergMatrix& M,
                         std::span<const std::ptrdiff_t> js, bool scaled);
/// (j, converged, Re limit, Im limit, residual, W, tol)
void write_limit_row(std::ostream& out, std::ptrdiff_t j, const LimitEstimate& e);

}  // namespace opshift
