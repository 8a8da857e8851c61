#include <cmath>

#include "catalog.hpp"
#include "doctest.h"
#include "opshift/arnoldi.hpp"
#include "opshift/asymptotics.hpp"
#include "opshift/classical.hpp"
#include "opshift/measure.hpp"

using namespace opshift;

namespace {

HessenbergMatrix disk(std::size_t N) {
  return arnoldi(make_disk_area(1.0, 2 * N + 1, true), N).hessenberg;
}
HessenbergMatrix circle(std::size_t N) {
  return arnoldi(make_circle_lebesgue(2 * N + 2), N).hessenberg;
}
HessenbergMatrix free_jacobi(std::size_t N) { return jacobi_matrix(JacobiArrays::free(), N); }

// Constant diagonal c, subdiagonal 1/(n+1), nothing above the diagonal.
HessenbergMatrix bidiagonal(cplx c, std::size_t dim) {
  HessenbergMatrix M(dim);
  for (std::size_t n = 1; n <= dim; ++n) {
    M.set(n, n, c);
    if (n < dim) M.set(n + 1, n, 1.0 / double(n + 1));
  }
  return M;
}

ErrorCode code_of(const auto& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;  // sentinel: nothing was thrown
}

}  // namespace

TEST_CASE("ratio series examples") {
  const RatioReport c = ratio_series(circle(40), 6, 25, 1e-8);
  CHECK(c.posinf);
  CHECK(std::abs(c.f_est[1] - 1.0) < 1e-10);
  for (std::size_t j = 2; j <= 7; ++j) CHECK(std::abs(c.f_est[j]) < 1e-10);

  const RatioReport fj = ratio_series(free_jacobi(60), 8, 25, 1e-10);
  const double catalan[] = {1, 0, 1, 0, 2, 0, 5, 0, 14};
  for (std::size_t j = 1; j <= 9; ++j) CHECK(std::abs(fj.f_est[j] - catalan[j - 1]) < 1e-10);
  for (const auto& a : fj.corner) CHECK(a.converged);

  const RatioReport d = ratio_series(disk(60), 5, 25, 1e-6, LimitMethod::Extrapolated);
  CHECK(d.posinf);
  CHECK(d.leading.converged);
  CHECK(std::abs(d.f_est[1] - 1.0) < 1e-6);
  for (std::size_t j = 2; j <= 6; ++j) CHECK(std::abs(d.f_est[j]) < 1e-8);
}

TEST_CASE("ratio series needs depth") {
  CHECK(code_of([] { ratio_series(free_jacobi(20), 8, 25); }) == ErrorCode::InsufficientDepth);
}

TEST_CASE("weak moment examples") {
  const LimitEstimate c = weak_moment_sequence(circle(40), 1, 25, 1e-8);
  CHECK(c.converged);
  CHECK(std::abs(c.limit) < 1e-10);

  const LimitEstimate a = weak_moment_sequence(ggt_matrix(VerblunskySequence::alpha_to_one(), 400),
                                               3, 25, 1e-4, LimitMethod::Extrapolated);
  CHECK(a.converged);
  CHECK(std::abs(a.limit + 1.0) < 1e-4);

  const LimitEstimate f = weak_moment_sequence(free_jacobi(60), 2, 25, 1e-12);
  CHECK(f.converged);
  CHECK(std::abs(f.limit - 2.0) < 1e-12);

  CHECK(code_of([] { weak_moment_sequence(free_jacobi(20), 10, 15); }) ==
        ErrorCode::WindowExceeded);
}

TEST_CASE("weak moments of free Jacobi match the equilibrium measure of w + 1/w") {
  const HessenbergMatrix M = free_jacobi(60);
  for (std::size_t j = 1; j <= 6; ++j) {
    const LimitEstimate e = weak_moment_sequence(M, j, 25, 1e-10);
    CHECK(std::abs(e.limit - equilibrium_moments(joukowski(1.0), j)) < 1e-10);
  }
}

TEST_CASE("symbol examples") {
  const SymbolReport c = symbol_extract(circle(40), 4, 25, 1e-8);
  CHECK(std::abs(c.symbol.c(-1) - 1.0) < 1e-8);
  for (int k = 0; k <= 4; ++k) CHECK(std::abs(c.symbol.c(k)) < 1e-8);

  const SymbolReport f = symbol_extract(free_jacobi(60), 4, 25, 1e-8);
  CHECK(std::abs(f.symbol.c(-1) - 1.0) < 1e-8);
  CHECK(std::abs(f.symbol.c(0)) < 1e-8);
  CHECK(std::abs(f.symbol.c(1) - 1.0) < 1e-8);
  for (int k = 2; k <= 4; ++k) CHECK(std::abs(f.symbol.c(k)) < 1e-8);
  CHECK(f.cross_residual < 1e-8);

  const SymbolReport d = symbol_extract(disk(60), 4, 25, 1e-6);
  CHECK(std::abs(d.symbol.c(-1) - 1.0) < 1e-6);
  for (int k = 0; k <= 4; ++k) CHECK(std::abs(d.symbol.c(k)) < 1e-6);
  CHECK(d.cross_residual <= 1e-6);
}

TEST_CASE("symbol errors") {
  CHECK(code_of([] {
          symbol_extract(ggt_matrix(VerblunskySequence::alpha_to_one(), 200), 2, 25, 1e-4);
        }) == ErrorCode::DegenerateKappa);
  // An alternating main diagonal: the corner powers see b_{n-1} = -b_n, the direct
  // diagonal estimate does not.
  const JacobiArrays wobble([](std::size_t) { return 1.0; },
                            [](std::size_t n) { return n % 2 ? 0.1 : -0.1; }, 1.0, 0.1, "wobble");
  CHECK(code_of([&] { symbol_extract(jacobi_matrix(wobble, 60), 3, 25, 1e-6); }) ==
        ErrorCode::CrossCheckFailed);
}

TEST_CASE("degenerate examples") {
  const DegenerateReport a =
      degenerate_limit(ggt_matrix(VerblunskySequence::alpha_to_one(), 400), 25, 1e-4);
  CHECK(std::abs(a.x + 1.0) < 1e-4);
  CHECK(a.moments_match);

  const cplx c(0.3, 0.2);
  const DegenerateReport s = degenerate_limit(bidiagonal(c, 80), 25, 1e-6);
  CHECK(std::abs(s.x - c) < 1e-12);
  CHECK(s.moments_match);

  CHECK(code_of([] { degenerate_limit(free_jacobi(60), 25, 1e-6); }) == ErrorCode::NotDegenerate);
}

TEST_CASE("zero-counting moments") {
  const HessenbergMatrix F = free_jacobi(120);
  const BoundCheck b = weakzero_bound_check(F, 10, 1, 2.0);
  CHECK(b.lhs < 1e-14);
  CHECK(b.rhs == doctest::Approx(0.4));
  CHECK(std::abs(zero_counting_moments(F, 10, 1)) < 1e-14);
  // trace of the squared n x n free Jacobi block is 2(n - 1)
  CHECK(std::abs(zero_counting_moments(F, 100, 2) - 1.98) < 1e-12);

  const HessenbergMatrix D = disk(30);
  for (std::size_t j = 1; j <= 4; ++j) CHECK(std::abs(zero_counting_moments(D, 20, j)) < 1e-10);

  const HessenbergMatrix R = ggt_matrix(VerblunskySequence::random(5, 0.5, 100), 40);
  for (std::size_t n = 1; n <= 36; ++n) {
    for (std::size_t j = 1; j <= 4; ++j) CHECK(weakzero_bound_check(R, n, j, 1.0).holds());
  }
}

TEST_CASE("results do not depend on the thread cap") {
  const HessenbergMatrix M = ggt_matrix(VerblunskySequence::oscillatory(), 120);
  set_thread_cap(1);
  const RatioReport one = ratio_series(M, 6, 25, 1e-6);
  const EquivalenceVerdicts v1 = equivalence_verdicts(M, 4, 25, 1e-6);
  set_thread_cap(4);
  const RatioReport four = ratio_series(M, 6, 25, 1e-6);
  const EquivalenceVerdicts v4 = equivalence_verdicts(M, 4, 25, 1e-6);
  set_thread_cap(1);
  for (std::size_t j = 1; j <= 7; ++j) CHECK(one.f_est[j] == four.f_est[j]);
  for (std::size_t i = 0; i < one.corner.size(); ++i) {
    CHECK(one.corner[i].residual == four.corner[i].residual);
    CHECK(one.corner[i].converged == four.corner[i].converged);
  }
  CHECK(v1.ratio == v4.ratio);
  CHECK(v1.scaled == v4.scaled);
}

TEST_CASE("equivalence verdicts on the example catalog") {
  for (const auto& name : {"free_jacobi", "circle", "oscillatory"}) {
    const auto& ex = app::find_example(name);
    const EquivalenceVerdicts v =
        equivalence_verdicts(ex.build(ex.degree), 4, 25, 1e-6, LimitMethod::Extrapolated);
    CHECK_MESSAGE(v.agree(), name);
  }
}
