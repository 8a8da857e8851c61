#include "opshift/classical.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "dense.hpp"

namespace opshift {

SzegoPolynomials szego_recursion(const VerblunskySequence& alpha, std::size_t N) {
  SzegoPolynomials out;
  out.monic.push_back({cplx(1.0)});
  out.kappa.push_back(1.0);
  for (std::size_t n = 0; n < N; ++n) {
    const auto& p = out.monic[n];
    const cplx a = alpha(static_cast<std::ptrdiff_t>(n));
    std::vector<cplx> next(n + 2, 0.0);
    for (std::size_t i = 0; i <= n + 1; ++i) {
      const cplx shifted = i >= 1 ? p[i - 1] : cplx(0.0);
      const cplx reversed = i <= n ? std::conj(p[n - i]) : cplx(0.0);
      next[i] = shifted - std::conj(a) * reversed;
    }
    out.monic.push_back(std::move(next));
    out.kappa.push_back(out.kappa[n] / alpha.rho(n));
  }
  return out;
}

namespace {

// GGT truncation of size dim from alpha_0..alpha_{dim-1}. Column n holds
// M_{n+1,n} = rho_{n-1} and M_{n-d,n} = -conj(alpha_{n-1}) alpha_{n-d-2} prod_{m=n-d-1}^{n-2}
// rho_m.
HessenbergMatrix ggt_from(const std::vector<cplx>& a, std::size_t dim) {
  std::vector<double> rho(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    rho[i] = std::sqrt(std::max(0.0, 1.0 - std::norm(a[i])));
  auto alpha = [&](std::ptrdiff_t i) -> cplx {
    return i < 0 ? cplx(-1.0) : a[static_cast<std::size_t>(i)];
  };

  HessenbergMatrix M(dim);
  for (std::size_t n = 1; n <= dim; ++n) {
    if (n + 1 <= dim) M.set(n + 1, n, rho[n - 1]);
    const cplx lead = -std::conj(a[n - 1]);
    double prod = 1.0;
    for (std::size_t d = 0; d < n; ++d) {
      if (d > 0) prod *= rho[n - d - 1];
      M.set(
          n - d, n,
          lead * alpha(static_cast<std::ptrdiff_t>(n) - static_cast<std::ptrdiff_t>(d) - 2) * prod);
    }
  }
  return M;
}

std::vector<cplx> alphas(const VerblunskySequence& alpha, std::size_t count) {
  std::vector<cplx> a(count);
  for (std::size_t i = 0; i < count; ++i) a[i] = alpha(static_cast<std::ptrdiff_t>(i));
  return a;
}

std::vector<cplx> contour(double radius, std::size_t count) {
  std::vector<cplx> z;
  for (std::size_t k = 0; k < count; ++k) {
    const double t =
        2.0 * std::numbers::pi * (static_cast<double>(k) + 0.25) / static_cast<double>(count);
    z.push_back(std::polar(radius, t));
  }
  return z;
}

double contract_residual(const HessenbergMatrix& T, std::size_t n,
                         const DiscreteSpectralMeasure& nu, std::span<const cplx> points) {
  double worst = 0.0;
  for (const cplx z : points) {
    worst = std::max(worst, std::abs(resolvent_corner(T, n, z) - m_function(nu, z)));
  }
  return worst;
}

void require_contract(double residual) {
  if (!(residual <= 1e-8)) {
    throw Error(ErrorCode::EigenFailure,
                "flipped spectral measure misses the ratio by " + std::to_string(residual));
  }
}

}  // namespace

HessenbergMatrix ggt_matrix(const VerblunskySequence& alpha, std::size_t N) {
  const auto a = alphas(alpha, N + 1);
  HessenbergMatrix M = ggt_from(a, N + 1);
  std::vector<double> log_kappa{0.0};
  for (std::size_t n = 0; n < N; ++n)
    log_kappa.push_back(log_kappa.back() - std::log(alpha.rho(n)));
  M.attach_log_kappa(std::move(log_kappa));
  return M;
}

HessenbergMatrix para_truncation(const VerblunskySequence& alpha, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "paraorthogonal order must be positive");
  auto a = alphas(alpha, n - 1);
  a.push_back(-1.0);
  return ggt_from(a, n);
}

HessenbergMatrix jacobi_matrix(const JacobiArrays& J, std::size_t N) {
  HessenbergMatrix M(N + 1);
  std::vector<double> log_kappa{0.0};
  for (std::size_t n = 1; n <= N + 1; ++n) {
    M.set(n, n, J.b(n));
    if (n <= N) {
      const double a = J.a(n);
      M.set(n, n + 1, a);
      M.set(n + 1, n, a);
      log_kappa.push_back(log_kappa.back() - std::log(a));
    }
  }
  M.attach_log_kappa(std::move(log_kappa));
  return M;
}

cplx m_function(const DiscreteSpectralMeasure& nu, cplx z) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < nu.atoms.size(); ++i) {
    const cplx d = z - nu.atoms[i];
    if (std::abs(d) <= 1e-14 * std::max(1.0, std::abs(nu.atoms[i]))) {
      throw Error(ErrorCode::PoleHit, "z coincides with an atom");
    }
    acc += nu.weights[i] / d;
  }
  return acc;
}

DiscreteSpectralMeasure spectral_measure(const HessenbergMatrix& T, SpectralSupport support) {
  const Eigen::MatrixXcd A = detail::to_dense(T, T.dim());
  DiscreteSpectralMeasure nu;
  nu.support = support;
  if (support == SpectralSupport::RealLine) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::EigenFailure, "Hermitian eigensolver");
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      nu.atoms.emplace_back(es.eigenvalues()(i), 0.0);
      nu.weights.push_back(std::norm(es.eigenvectors()(0, i)));
    }
  } else {
    // For a normal matrix the Schur form is diagonal and the Schur vectors are orthonormal
    // eigenvectors, even when eigenvalues cluster.
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(A);
    if (schur.info() != Eigen::Success) throw Error(ErrorCode::EigenFailure, "Schur decomposition");
    const auto& Tm = schur.matrixT();
    const auto& U = schur.matrixU();
    double off = 0.0;
    for (Eigen::Index j = 0; j < Tm.cols(); ++j) {
      for (Eigen::Index i = 0; i < j; ++i) off = std::max(off, std::abs(Tm(i, j)));
    }
    if (off > 1e-8) throw Error(ErrorCode::EigenFailure, "matrix is not normal");
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      const cplx lambda = Tm(i, i);
      if (std::abs(std::abs(lambda) - 1.0) > 1e-10) {
        throw Error(ErrorCode::EigenFailure, "circle atom off the unit circle");
      }
      nu.atoms.push_back(lambda);
      nu.weights.push_back(std::norm(U(0, i)));
    }
  }
  double total = 0.0;
  for (double w : nu.weights) total += w;
  if (std::abs(total - 1.0) > 1e-8) throw Error(ErrorCode::EigenFailure, "weights do not sum to 1");
  return nu;
}

DiscreteSpectralMeasure gauss_rule(const JacobiArrays& J, std::size_t L) {
  if (L == 0) throw Error(ErrorCode::InvalidArgument, "Gauss rule needs at least one node");
  Eigen::VectorXd diag(static_cast<Eigen::Index>(L));
  Eigen::VectorXd sub(static_cast<Eigen::Index>(L > 1 ? L - 1 : 0));
  for (std::size_t n = 1; n <= L; ++n) {
    diag(static_cast<Eigen::Index>(n - 1)) = J.b(n);
    if (n < L) sub(static_cast<Eigen::Index>(n - 1)) = J.a(n);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::EigenFailure, "Golub-Welsch");
  DiscreteSpectralMeasure nu;
  nu.support = SpectralSupport::RealLine;
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    nu.atoms.emplace_back(es.eigenvalues()(i), 0.0);
    nu.weights.push_back(es.eigenvectors()(0, i) * es.eigenvectors()(0, i));
  }
  return nu;
}

DiscreteSpectralMeasure szego_rule(const VerblunskySequence& alpha, std::size_t n) {
  return spectral_measure(para_truncation(alpha, n), SpectralSupport::Circle);
}

std::vector<cplx> paraorthogonal(const VerblunskySequence& alpha, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "paraorthogonal order must be positive");
  const auto phi = szego_recursion(alpha, n - 1).monic[n - 1];
  std::vector<cplx> out(n + 1, 0.0);
  for (std::size_t i = 0; i <= n; ++i) {
    if (i >= 1) out[i] += phi[i - 1];
    if (i <= n - 1) out[i] += std::conj(phi[n - 1 - i]);
  }

  const HessenbergMatrix U = para_truncation(alpha, n);
  for (const cplx z : contour(2.0, 5)) {
    cplx direct = 0.0;
    for (auto it = out.rbegin(); it != out.rend(); ++it) direct = direct * z + *it;
    const cplx det = char_poly(U, n, z);
    const double scale = std::max(std::abs(det), std::pow(2.0, static_cast<double>(n)));
    if (std::abs(direct - det) > 1e-10 * scale) {
      throw Error(ErrorCode::CrossCheckFailed,
                  "paraorthogonal polynomial disagrees with det(z - U_n)");
    }
  }
  return out;
}

HessenbergMatrix flipped(const HessenbergMatrix& M, std::size_t n) {
  if (n == 0 || n > M.dim()) throw Error(ErrorCode::IndexOutOfRange, "flip size");
  HessenbergMatrix F(n);
  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t i = 1; i <= std::min(j + 1, n); ++i) F.set(i, j, M(n + 1 - j, n + 1 - i));
  }
  return F;
}

DiscreteSpectralMeasure flip_spectral(const VerblunskySequence& alpha, std::size_t n) {
  const HessenbergMatrix U = para_truncation(alpha, n);
  DiscreteSpectralMeasure nu = spectral_measure(flipped(U, n), SpectralSupport::Circle);
  const auto points = contour(2.0, 10);
  require_contract(contract_residual(U, n, nu, points));
  return nu;
}

DiscreteSpectralMeasure flip_spectral(const JacobiArrays& J, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "flip order must be positive");
  const HessenbergMatrix T = jacobi_matrix(J, n - 1);
  DiscreteSpectralMeasure nu = spectral_measure(flipped(T, n), SpectralSupport::RealLine);
  const auto points = contour(2.0 * std::max(J.support_bound(), 0.5), 10);
  require_contract(contract_residual(T, n, nu, points));
  return nu;
}

double flip_contract_residual(const VerblunskySequence& alpha, std::size_t n,
                              std::span<const cplx> points) {
  const HessenbergMatrix U = para_truncation(alpha, n);
  return contract_residual(U, n, spectral_measure(flipped(U, n), SpectralSupport::Circle), points);
}

double flip_contract_residual(const JacobiArrays& J, std::size_t n, std::span<const cplx> points) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "flip order must be positive");
  const HessenbergMatrix T = jacobi_matrix(J, n - 1);
  return contract_residual(T, n, spectral_measure(flipped(T, n), SpectralSupport::RealLine),
                           points);
}

KhruschevReport khruschev_check(const VerblunskySequence& alpha, std::size_t K, std::size_t N,
                                std::size_t window, double tol, LimitMethod method) {
  if (K == 0 || window == 0 || N < window + K) {
    throw Error(ErrorCode::InsufficientDepth, "need N >= window + K");
  }
  KhruschevReport r;
  const auto a = alphas(alpha, N);
  r.hypothesis = true;
  for (std::size_t k = 1; k <= K; ++k) {
    // Products alpha_n alpha_{n+k} for the last `window` n with n + k < N.
    const std::size_t last = N - 1 - k;
    const std::size_t first = last + 1 - window;
    std::vector<cplx> tail;
    for (std::size_t n = first; n <= last; ++n) tail.push_back(a[n] * a[n + k]);
    LimitEstimate e = estimate_limit(tail, std::max<std::size_t>(first, 1), tol, method);
    r.hypothesis = r.hypothesis && e.converged && std::abs(e.limit) < tol;
    r.products.push_back(std::move(e));
  }
  if (!r.hypothesis) return r;

  const HessenbergMatrix M = ggt_matrix(alpha, N);
  r.moments_vanish = true;
  for (std::size_t j = 1; j <= K; ++j) {
    LimitEstimate e = weak_moment_sequence(M, j, window, tol, method);
    r.moments_vanish = r.moments_vanish && e.converged && std::abs(e.limit) < tol;
    r.moments.push_back(std::move(e));
  }
  return r;
}

namespace {

void check_pattern(std::size_t L, std::size_t spacing, std::size_t windows) {
  if (L == 0 || windows == 0 || spacing <= L) {
    throw Error(ErrorCode::BadPattern, "need L >= 1, windows >= 1 and spacing > L");
  }
}

}  // namespace

JacobiEmbedding subsequence_embedding(const JacobiArrays& target, std::size_t L,
                                      std::size_t spacing, std::size_t windows) {
  check_pattern(L, spacing, windows);
  const std::size_t length = windows * spacing;
  const double pad_a = target.a(L > 1 ? L - 1 : 1);
  const double pad_b = target.b(L);
  std::vector<double> a(length + 1, pad_a);  // a[i] = a_{i+1}
  std::vector<double> b(length + 1, pad_b);
  std::vector<std::size_t> subsequence;
  for (std::size_t k = 1; k <= windows; ++k) {
    const std::size_t n = k * spacing;
    for (std::size_t i = 0; i < L; ++i) b[n - i - 1] = target.b(i + 1);
    for (std::size_t i = 0; i + 1 < L; ++i) a[n - 2 - i] = target.a(i + 1);
    a[n - L - 1] = pad_a * std::ldexp(1.0, -static_cast<int>(k));
    subsequence.push_back(n);
  }
  return {JacobiArrays::from_lists(std::move(a), std::move(b)), std::move(subsequence),
          gauss_rule(target, L), length};
}

VerblunskyEmbedding subsequence_embedding(const VerblunskySequence& target, std::size_t L,
                                          std::size_t spacing, std::size_t windows) {
  check_pattern(L, spacing, windows);
  const std::size_t length = windows * spacing;
  std::vector<cplx> a(length + 1, 0.0);
  std::vector<std::size_t> subsequence;
  for (std::size_t k = 1; k <= windows; ++k) {
    const std::size_t n = k * spacing;
    for (std::size_t i = 0; i + 1 < L; ++i) a[n - L + i] = target(static_cast<std::ptrdiff_t>(i));
    a[n - L - 1] = -(1.0 - std::ldexp(1.0, -static_cast<int>(k)));
    subsequence.push_back(n);
  }
  return {VerblunskySequence::from_list(std::move(a)), std::move(subsequence),
          flip_spectral(target, L), length};
}

std::vector<double> embedding_residuals(const JacobiEmbedding& e, cplx z) {
  const HessenbergMatrix M = jacobi_matrix(e.arrays, e.length - 1);
  const cplx m = m_function(e.target, z);
  std::vector<double> out;
  for (std::size_t n : e.subsequence) out.push_back(std::abs(resolvent_corner(M, n, z) - m));
  return out;
}

std::vector<double> embedding_residuals(const VerblunskyEmbedding& e, cplx z) {
  const cplx m = m_function(e.target, z);
  std::vector<double> out;
  for (std::size_t n : e.subsequence) {
    out.push_back(std::abs(resolvent_corner(para_truncation(e.alpha, n), n, z) - m));
  }
  return out;
}

}  // namespace opshift
