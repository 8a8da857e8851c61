#include "opshift/asymptotics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

namespace opshift {

namespace {

std::atomic<std::size_t> g_thread_cap{1};

// Runs task(i) for i in [0, count) on up to thread_cap() workers. Each task writes only
// its own slot, so the merged result is independent of scheduling.
void for_each_index(std::size_t count, const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::min(thread_cap(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

LimitEstimate subdiagonal_squared(const HessenbergMatrix& M, std::size_t window, double tol) {
  const auto seq = diagonal_sequence(M, -1, false);
  if (seq.size() < window) throw Error(ErrorCode::InsufficientDepth, "subdiagonal too short");
  std::vector<cplx> tail;
  for (std::size_t i = seq.size() - window; i < seq.size(); ++i) {
    tail.push_back(std::norm(seq[i].value));
  }
  return estimate_limit(tail, seq[seq.size() - window].n, tol, LimitMethod::Extrapolated);
}

}  // namespace

void set_thread_cap(std::size_t threads) { g_thread_cap = std::max<std::size_t>(1, threads); }
std::size_t thread_cap() { return g_thread_cap; }

RatioReport ratio_series(const HessenbergMatrix& M, std::size_t J, std::size_t window, double tol,
                         LimitMethod method) {
  const std::size_t D = M.dim();
  if (window == 0 || D < window + J) {
    throw Error(ErrorCode::InsufficientDepth,
                "dimension " + std::to_string(D) + " < window + J = " + std::to_string(window + J));
  }
  RatioReport r;
  r.leading = diagonal_limit(M, -1, false, window, tol, method);
  r.subdiagonal_squared = subdiagonal_squared(M, window, tol);
  r.posinf = r.subdiagonal_squared.limit.real() > std::sqrt(tol);

  r.corner.resize(J);
  for_each_index(J, [&](std::size_t idx) {
    const std::size_t j = idx + 1;
    std::vector<cplx> tail;
    for (std::size_t n = D - window + 1; n <= D; ++n) {
      tail.push_back(truncated_power_diagonal(M, n, j));
    }
    r.corner[idx] = estimate_limit(tail, D - window + 1, tol, method);
  });

  const cplx f1 = r.leading.limit;
  r.f_est.f.push_back(f1);
  for (const auto& a : r.corner) r.f_est.f.push_back(f1 * a.limit);
  return r;
}

LimitEstimate weak_moment_sequence(const HessenbergMatrix& M, std::size_t j, std::size_t window,
                                   double tol, LimitMethod method) {
  const std::size_t D = M.dim();
  // Rows n + 1 with (n + 1) + j - 1 <= D.
  const std::size_t last_row = j == 0 ? D : D - std::min(D, j - 1);
  if (window == 0 || last_row < window) {
    throw Error(ErrorCode::WindowExceeded, "not enough rows for moment " + std::to_string(j));
  }
  std::vector<cplx> tail;
  const std::size_t first_row = last_row - window + 1;
  for (std::size_t row = first_row; row <= last_row; ++row) {
    tail.push_back(full_power_diagonal(M, row, j));
  }
  return estimate_limit(tail, first_row, tol, method);
}

SymbolReport symbol_extract(const HessenbergMatrix& M, std::size_t J, std::size_t window,
                            double tol, LimitMethod method) {
  RatioReport ratio = ratio_series(M, J + 1, window, tol, method);
  if (!ratio.posinf) {
    throw Error(ErrorCode::DegenerateKappa,
                "kappa_n / kappa_{n+1} tends to 0; use degenerate_limit");
  }
  std::vector<LimitEstimate> diagonals(J + 2);
  for_each_index(J + 2, [&](std::size_t idx) {
    diagonals[idx] =
        diagonal_limit(M, static_cast<std::ptrdiff_t>(idx) - 1, false, window, tol, method);
  });
  std::vector<cplx> tail;
  for (std::size_t idx = 2; idx < diagonals.size(); ++idx) tail.push_back(diagonals[idx].limit);
  LaurentSeries direct =
      LaurentSeries::map(diagonals[0].limit, diagonals[1].limit, std::move(tail), 0.0);
  LaurentSeries inverse = ratio_inverse(ratio.f_est, J);

  double cross = 0.0;
  for (int k = -1; k <= static_cast<int>(J); ++k) {
    cross = std::max(cross, std::abs(direct.c(k) - inverse.c(k)));
  }
  if (!(cross <= tol)) {
    throw Error(ErrorCode::CrossCheckFailed,
                "diagonal limits and inverted ratio series differ by " + std::to_string(cross));
  }
  return {std::move(direct), std::move(inverse), std::move(diagonals), std::move(ratio), cross};
}

DegenerateReport degenerate_limit(const HessenbergMatrix& M, std::size_t window, double tol,
                                  LimitMethod method) {
  DegenerateReport r;
  r.subdiagonal_squared = subdiagonal_squared(M, window, tol);
  if (!(std::abs(r.subdiagonal_squared.limit) < tol)) {
    throw Error(ErrorCode::NotDegenerate, "subdiagonal does not tend to 0");
  }
  r.diagonal = diagonal_limit(M, 0, false, window, tol, method);
  r.x = r.diagonal.limit;
  r.moments.resize(4);
  for_each_index(4, [&](std::size_t idx) {
    r.moments[idx] = weak_moment_sequence(M, idx + 1, window, tol, method);
  });
  r.moments_match = true;
  for (std::size_t idx = 0; idx < r.moments.size(); ++idx) {
    const cplx expected = std::pow(r.x, static_cast<int>(idx + 1));
    if (!(std::abs(r.moments[idx].limit - expected) <= tol)) r.moments_match = false;
  }
  return r;
}

cplx zero_counting_moments(const HessenbergMatrix& M, std::size_t n, std::size_t j) {
  if (n == 0 || n > M.dim()) throw Error(ErrorCode::IndexOutOfRange, "zero-counting size");
  cplx trace = 0.0;
  for (std::size_t k = 1; k <= n; ++k) trace += block_power_diagonal(M, k, j, n);
  return trace / static_cast<double>(n);
}

BoundCheck weakzero_bound_check(const HessenbergMatrix& M, std::size_t n, std::size_t j,
                                double normbound) {
  if (n == 0) throw Error(ErrorCode::IndexOutOfRange, "n must be positive");
  cplx average = 0.0;
  for (std::size_t k = 1; k <= n; ++k) average += full_power_diagonal(M, k, j);
  average /= static_cast<double>(n);
  const double lhs = std::abs(zero_counting_moments(M, n, j) - average);
  const double rhs = 2.0 * static_cast<double>(j) * normbound / static_cast<double>(n);
  return {lhs, rhs};
}

EquivalenceVerdicts equivalence_verdicts(const HessenbergMatrix& M, std::size_t J,
                                         std::size_t window, double tol, LimitMethod method) {
  const RatioReport ratio = ratio_series(M, J + 1, window, tol, method);
  EquivalenceVerdicts v;
  bool ratio_ok = true;
  bool scaled_ok = true;
  for (std::size_t j = 0; j <= J; ++j) {
    ratio_ok = ratio_ok && ratio.corner[j].converged;
    scaled_ok =
        scaled_ok &&
        diagonal_limit(M, static_cast<std::ptrdiff_t>(j), true, window, tol, method).converged;
    v.ratio.push_back(ratio_ok);
    v.scaled.push_back(scaled_ok);
  }
  return v;
}

}  // namespace opshift
