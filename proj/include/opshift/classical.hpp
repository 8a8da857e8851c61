#pragma once

// Closed-form engines for the unit circle (Szego recursion, GGT matrices) and the real
// line (Jacobi matrices), paraorthogonal polynomials, flipped truncations and their
// spectral measures, and the subsequence embeddings that realize a prescribed
// m-function along a subsequence of ratios.

#include <cstddef>
#include <span>
#include <vector>

#include "opshift/asymptotics.hpp"
#include "opshift/hessenberg.hpp"
#include "opshift/sequences.hpp"

namespace opshift {

struct SzegoPolynomials {
  std::vector<std::vector<cplx>> monic;  // monic[n][i]: coefficient of z^i in Phi_n
  std::vector<double> kappa;             // kappa_n = prod_{j<n} 1/rho_j
};

SzegoPolynomials szego_recursion(const VerblunskySequence& alpha, std::size_t N);

/// (N+1) x (N+1) GGT truncation with kappa_0..kappa_N attached. The first row uses
/// alpha_{-1} = -1.
HessenbergMatrix ggt_matrix(const VerblunskySequence& alpha, std::size_t N);
/// n x n GGT truncation with alpha_{n-1} replaced by -1 (unitary).
HessenbergMatrix para_truncation(const VerblunskySequence& alpha, std::size_t n);

/// (N+1) x (N+1) tridiagonal truncation: M(n,n) = b_n, M(n,n+1) = M(n+1,n) = a_n,
/// kappa_0 = 1 and kappa_n = kappa_{n-1}/a_n.
HessenbergMatrix jacobi_matrix(const JacobiArrays& J, std::size_t N);

enum class SpectralSupport { Circle, RealLine };

struct DiscreteSpectralMeasure {
  std::vector<cplx> atoms;
  std::vector<double> weights;  // sum to 1
  SpectralSupport support = SpectralSupport::RealLine;
};

/// sum_i p_i / (z - lambda_i)
cplx m_function(const DiscreteSpectralMeasure& nu, cplx z);

/// Spectral measure of a normal (Hermitian or unitary) matrix at the first basis vector.
DiscreteSpectralMeasure spectral_measure(const HessenbergMatrix& T, SpectralSupport support);

/// Gauss rule of the Jacobi measure with L nodes (Golub-Welsch).
DiscreteSpectralMeasure gauss_rule(const JacobiArrays& J, std::size_t L);
/// Szego rule of the circle measure with n nodes: spectral measure of para_truncation.
DiscreteSpectralMeasure szego_rule(const VerblunskySequence& alpha, std::size_t n);

/// Monic coefficients of z Phi_{n-1} + z^{n-1} conj(Phi_{n-1}(1/conj z)); verified against
/// det(z - para_truncation) at sample points (CrossCheckFailed on disagreement).
std::vector<cplx> paraorthogonal(const VerblunskySequence& alpha, std::size_t n);

/// (Mt)_{i,j} = M_{n+1-j, n+1-i} on the leading n x n block.
HessenbergMatrix flipped(const HessenbergMatrix& M, std::size_t n);

/// Spectral measure at e_1 of the flipped paraorthogonal truncation. Its m-function equals
/// Phi_{n-1} / Phi_n^{(-1)}; checked at 10 points on |z| = 2 (EigenFailure otherwise).
DiscreteSpectralMeasure flip_spectral(const VerblunskySequence& alpha, std::size_t n);
/// Spectral measure at e_1 of the flipped Jacobi truncation; m-function = Phi_{n-1}/Phi_n.
DiscreteSpectralMeasure flip_spectral(const JacobiArrays& J, std::size_t n);

/// max over `points` of |ratio - m_function| for the flipped measure of order n.
double flip_contract_residual(const VerblunskySequence& alpha, std::size_t n,
                              std::span<const cplx> points);
double flip_contract_residual(const JacobiArrays& J, std::size_t n, std::span<const cplx> points);

struct KhruschevReport {
  std::vector<LimitEstimate> products;  // alpha_n alpha_{n+k}, k = 1..K
  std::vector<LimitEstimate> moments;   // (M^j)_{n+1,n+1}, j = 1..K (when hypothesis holds)
  bool hypothesis = false;              // every product tends to 0
  bool moments_vanish = false;
  bool passed() const { return hypothesis && moments_vanish; }
};

/// Tests alpha_n alpha_{n+k} -> 0 for k <= K on n < N, then that the weak moments of the
/// GGT matrix vanish for j <= K. Limits count as zero when converged with |limit| < tol.
KhruschevReport khruschev_check(const VerblunskySequence& alpha, std::size_t K, std::size_t N,
                                std::size_t window, double tol,
                                LimitMethod method = LimitMethod::Cauchy);

struct JacobiEmbedding {
  JacobiArrays arrays;
  std::vector<std::size_t> subsequence;
  DiscreteSpectralMeasure target;
  std::size_t length;  // arrays are explicit up to this index
};

struct VerblunskyEmbedding {
  VerblunskySequence alpha;
  std::vector<std::size_t> subsequence;
  DiscreteSpectralMeasure target;
  std::size_t length;
};

/// Bounded Jacobi parameters whose truncations at n = s, 2s, ..., windows*s end with the
/// reversed target prefix (b_1..b_L, a_1..a_{L-1}). The entry coupling each window to the
/// padding is pad * 2^{-k} in window k; all other padding repeats the target's last values.
/// The target measure is the spectral measure of the L x L target truncation.
JacobiEmbedding subsequence_embedding(const JacobiArrays& target, std::size_t L,
                                      std::size_t spacing, std::size_t windows);
/// Circle analogue: positions n-L..n-2 carry the target coefficients, alpha_{n-L-1} =
/// -(1 - 2^{-k}), zeros elsewhere. The target measure is flip_spectral(target, L).
VerblunskyEmbedding subsequence_embedding(const VerblunskySequence& target, std::size_t L,
                                          std::size_t spacing, std::size_t windows);

/// |resolvent corner - m_function(target)| at z for every n in the subsequence.
std::vector<double> embedding_residuals(const JacobiEmbedding& e, cplx z);
std::vector<double> embedding_residuals(const VerblunskyEmbedding& e, cplx z);

}  // namespace opshift
