#pragma once

// Orthonormal polynomials of a measure by Arnoldi iteration on multiplication by z.
//
// The iteration works on weighted node values v_i = sqrt(w_i) p(z_i) and never forms
// a Vandermonde system. Coefficient tables are carried along by applying the same
// elimination steps to coefficient vectors; they lose accuracy for large N (roughly
// N > 60 in double precision), while node values and the Hessenberg entries stay accurate.

#include <cstddef>
#include <ostream>
#include <utility>
#include <vector>

#include "opshift/hessenberg.hpp"
#include "opshift/measure.hpp"

namespace opshift {

struct ArnoldiOptions {
  double rank_tol = 1e-12;   // relative norm below which Gram-Schmidt declares rank loss
  double ortho_tol = 1e-10;  // orthogonality residual used by the post-check
  bool check_orthogonality = true;
};

class OrthonormalBasis {
 public:
  OrthonormalBasis(std::vector<std::vector<cplx>> coeffs, std::vector<double> kappa,
                   std::vector<std::vector<cplx>> node_values);

  std::size_t degree() const { return kappa_.size() - 1; }
  /// C[n][i]: coefficient of z^i in phi_n.
  const std::vector<cplx>& coefficients(std::size_t n) const { return coeffs_.at(n); }
  double kappa(std::size_t n) const { return kappa_.at(n); }
  const std::vector<double>& kappas() const { return kappa_; }
  /// phi_n at the quadrature nodes; empty when the basis has no node table.
  const std::vector<cplx>& node_values(std::size_t n) const { return values_.at(n); }
  bool has_node_values() const { return !values_.empty(); }
  /// Coefficients of the monic Phi_n = phi_n / kappa_n (top coefficient exactly 1).
  std::vector<cplx> monic(std::size_t n) const;

 private:
  std::vector<std::vector<cplx>> coeffs_;
  std::vector<double> kappa_;
  std::vector<std::vector<cplx>> values_;
};

struct ArnoldiResult {
  OrthonormalBasis basis;       // phi_0..phi_N
  HessenbergMatrix hessenberg;  // (N+1) x (N+1), kappa attached
  PlanarQuadrature quadrature;  // the discrete measure actually orthogonalized against
};

ArnoldiResult arnoldi(const MeasureSpec& m, std::size_t N, const ArnoldiOptions& opts = {});

/// Horner evaluation of phi_n.
cplx evaluate_poly(const OrthonormalBasis& basis, std::size_t n, cplx z);
/// Horner evaluation of a coefficient vector (index i multiplies z^i).
cplx evaluate_coefficients(const std::vector<cplx>& coeffs, cplx z);

/// max_{n,m} |sum_i w_i phi_n(z_i) conj(phi_m(z_i)) - delta_{nm}|
double gram_residual(const OrthonormalBasis& basis, const PlanarQuadrature& q);
/// max_k || z phi_{k-1} - sum_j M_{j,k} phi_{j-1} ||_{L^2}, k = 1..N
double hessenberg_residual(const ArnoldiResult& r);
/// L^2 norm of a polynomial given by coefficients.
double l2_norm(const std::vector<cplx>& coeffs, const PlanarQuadrature& q);

/// CSV rows (n, i, Re C[n][i], Im C[n][i]) followed by (n, kappa_n).
void write_csv(std::ostream& out, const OrthonormalBasis& basis);

}  // namespace opshift
