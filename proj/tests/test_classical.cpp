#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "opshift/arnoldi.hpp"
#include "opshift/asymptotics.hpp"
#include "opshift/classical.hpp"
#include "opshift/measure.hpp"
#include "oracles.hpp"

using namespace opshift;

namespace {

bool close(cplx a, cplx b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

ErrorCode code_of(const auto& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;  // sentinel: nothing was thrown
}

// Reversed-conjugate polynomial z^n conj(p(1/conj z)) from coefficients.
std::vector<cplx> reversed(const std::vector<cplx>& p) {
  std::vector<cplx> r(p.rbegin(), p.rend());
  for (auto& c : r) c = std::conj(c);
  return r;
}

}  // namespace

TEST_CASE("Szego recursion examples") {
  const SzegoPolynomials zero = szego_recursion(VerblunskySequence::constant(0.0), 4);
  for (std::size_t n = 0; n <= 4; ++n) {
    CHECK(zero.kappa[n] == doctest::Approx(1.0));
    for (std::size_t i = 0; i <= n; ++i) CHECK(close(zero.monic[n][i], i == n ? 1.0 : 0.0));
  }

  const SzegoPolynomials half = szego_recursion(VerblunskySequence::from_list({0.5}), 2);
  CHECK(close(half.monic[1][0], -0.5));
  CHECK(close(half.monic[1][1], 1.0));
  CHECK(half.kappa[1] == doctest::Approx(2.0 / std::sqrt(3.0)));

  const SzegoPolynomials one = szego_recursion(VerblunskySequence::alpha_to_one(), 3);
  CHECK(close(one.monic[1][0], -0.5));
}

TEST_CASE("Szego recursion identities on seeded coefficients") {
  const VerblunskySequence alpha = VerblunskySequence::random(11, 0.8, 30);
  const SzegoPolynomials s = szego_recursion(alpha, 25);
  for (std::size_t n = 1; n <= 25; ++n) {
    // Phi_n(0) = -conj(alpha_{n-1}), and Phi_{n+1} = z Phi_n - conj(alpha_n) Phi_n^*
    CHECK(close(s.monic[n][0], -std::conj(alpha(static_cast<std::ptrdiff_t>(n) - 1))));
    if (n < 25) {
      const auto star = reversed(s.monic[n]);
      for (std::size_t i = 0; i <= n + 1; ++i) {
        const cplx shifted = i == 0 ? 0.0 : s.monic[n][i - 1];
        const cplx tail = i <= n ? star[i] : 0.0;
        CHECK(
            close(s.monic[n + 1][i], shifted - std::conj(alpha(std::ptrdiff_t(n))) * tail, 1e-12));
      }
    }
    CHECK(s.kappa[n] == doctest::Approx(s.kappa[n - 1] / alpha.rho(n - 1)));
  }
}

TEST_CASE("GGT examples") {
  const HessenbergMatrix Z = ggt_matrix(VerblunskySequence::constant(0.0), 6);
  for (std::size_t j = 1; j <= 7; ++j) {
    for (std::size_t k = 1; k <= 7; ++k) CHECK(close(Z(j, k), j == k + 1 ? 1.0 : 0.0));
  }

  const HessenbergMatrix H = ggt_matrix(VerblunskySequence::constant(0.5), 10);
  for (std::size_t n = 4; n <= 9; ++n) {
    CHECK(close(H(n, n), -0.25));
    CHECK(close(H(n - 1, n), -std::sqrt(3.0) / 8.0));
    CHECK(close(H(n + 1, n), std::sqrt(3.0) / 2.0));
  }
}

TEST_CASE("GGT matrix reproduces the Szego polynomials") {
  const VerblunskySequence alpha = VerblunskySequence::random(3, 0.7, 40);
  const HessenbergMatrix M = ggt_matrix(alpha, 20);
  const SzegoPolynomials s = szego_recursion(alpha, 20);
  for (const cplx z : oracle::seeded_circle(8, 1.3, 5)) {
    for (std::size_t n = 1; n <= 20; ++n) {
      const cplx phi = oracle::horner(s.monic[n], z);
      CHECK(oracle::rel_err(char_poly(M, n, z), phi) < 1e-10);
    }
  }
  for (std::size_t n = 0; n <= 20; ++n) CHECK(M.kappa(n) == doctest::Approx(s.kappa[n]));
}

TEST_CASE("para truncation is unitary") {
  const VerblunskySequence alpha = VerblunskySequence::random(17, 0.9, 40);
  for (std::size_t n : {1, 2, 5, 12}) {
    const auto U = oracle::dense(para_truncation(alpha, n), n);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        cplx acc = 0.0;
        for (std::size_t l = 0; l < n; ++l) acc += std::conj(U[l][i]) * U[l][k];
        worst = std::max(worst, std::abs(acc - (i == k ? 1.0 : 0.0)));
      }
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("Jacobi examples") {
  const HessenbergMatrix F = jacobi_matrix(JacobiArrays::free(), 5);
  for (std::size_t n = 1; n <= 5; ++n) {
    CHECK(close(F(n, n), 0.0));
    CHECK(close(F(n + 1, n), 1.0));
    CHECK(close(F(n, n + 1), 1.0));
  }
  const HessenbergMatrix one = jacobi_matrix(JacobiArrays::constant(1.0, 1.0), 4);
  for (const cplx z : {cplx(2.5), cplx(0.3, 1.1), cplx(-4.0)}) {
    CHECK(close(char_poly(one, 2, z), (z - 1.0) * (z - 1.0) - 1.0));
  }
  const HessenbergMatrix d = jacobi_matrix(JacobiArrays::decay(1.0, 0.5, 0.3), 6);
  for (std::size_t n = 1; n <= 6; ++n)
    CHECK(d.kappa_ratio(n - 1, n) == doctest::Approx(d(n + 1, n).real()));
}

TEST_CASE("Jacobi round trip through arnoldi") {
  const JacobiArrays J = JacobiArrays::from_lists({0.8, 1.2, 0.5, 1.0, 0.9, 1.1, 0.7},
                                                  {0.1, -0.3, 0.4, 0.0, -0.2, 0.25, 0.05, -0.1});
  const std::size_t L = 8;
  const DiscreteSpectralMeasure nu = gauss_rule(J, L);
  PlanarQuadrature q;
  q.nodes = nu.atoms;
  q.weights = nu.weights;
  q.exactness = 2 * L - 1;
  q.support_radius = J.support_bound();
  const std::size_t N = 5;
  const HessenbergMatrix M = arnoldi(MeasureSpec(q), N).hessenberg;
  for (std::size_t n = 1; n <= N; ++n) {
    CHECK(close(M(n, n), J.b(n), 1e-8));
    CHECK(close(M(n + 1, n), J.a(n), 1e-8));
    CHECK(close(M(n, n + 1), J.a(n), 1e-8));
  }
}

TEST_CASE("Khruschev condition") {
  CHECK_FALSE(khruschev_check(VerblunskySequence::alternating(0.9), 3, 200, 25, 1e-3).passed());
  const KhruschevReport d =
      khruschev_check(VerblunskySequence::decay(), 3, 300, 25, 1e-3, LimitMethod::Extrapolated);
  CHECK(d.hypothesis);
  CHECK(d.passed());
  const KhruschevReport z = khruschev_check(VerblunskySequence::constant(0.0), 3, 60, 25, 1e-12);
  CHECK(z.passed());
  for (const auto& m : z.moments) CHECK(m.limit == cplx(0.0));
}

TEST_CASE("m-function examples") {
  DiscreteSpectralMeasure two{{-1.0, 1.0}, {0.5, 0.5}, SpectralSupport::RealLine};
  CHECK(close(m_function(two, 2.0), 2.0 / 3.0));

  const std::size_t n = 5;
  DiscreteSpectralMeasure roots;
  roots.support = SpectralSupport::Circle;
  for (std::size_t k = 0; k < n; ++k) {
    roots.atoms.push_back(std::polar(1.0, std::numbers::pi * (2.0 * double(k) + 1.0) / double(n)));
    roots.weights.push_back(1.0 / double(n));
  }
  for (const cplx z : {cplx(2.0, 0.5), cplx(-0.3, 1.7)}) {
    CHECK(
        close(m_function(roots, z), std::pow(z, int(n) - 1) / (std::pow(z, int(n)) + 1.0), 1e-12));
  }

  DiscreteSpectralMeasure origin{{0.0}, {1.0}, SpectralSupport::RealLine};
  CHECK(close(m_function(origin, 5.0), 0.2));
  CHECK(code_of([&] { m_function(origin, 0.0); }) == ErrorCode::PoleHit);
}

TEST_CASE("Herglotz sign on the real line") {
  const DiscreteSpectralMeasure nu = gauss_rule(JacobiArrays::decay(1.0, 0.2, 0.5), 9);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> re(-5.0, 5.0);
  std::uniform_real_distribution<double> im(1e-3, 3.0);
  for (int i = 0; i < 50; ++i) CHECK(m_function(nu, cplx(re(rng), im(rng))).imag() < 0.0);
}

TEST_CASE("paraorthogonal polynomials") {
  const auto z3 = paraorthogonal(VerblunskySequence::constant(0.0), 3);
  const cplx expected[] = {1.0, 0.0, 0.0, 1.0};
  for (std::size_t i = 0; i < 4; ++i) CHECK(close(z3[i], expected[i]));

  const auto lin = paraorthogonal(VerblunskySequence::constant(cplx(0.3, 0.4)), 1);
  CHECK(close(lin[0], 1.0));
  CHECK(close(lin[1], 1.0));

  // Roots lie on the unit circle: check |Phi(z)| vanishes at the eigenvalues of the truncation.
  const VerblunskySequence alpha = VerblunskySequence::random(21, 0.8, 20);
  const auto p = paraorthogonal(alpha, 8);
  const DiscreteSpectralMeasure nu =
      spectral_measure(para_truncation(alpha, 8), SpectralSupport::Circle);
  for (const cplx lambda : nu.atoms) {
    CHECK(std::abs(std::abs(lambda) - 1.0) < 1e-8);
    CHECK(std::abs(oracle::horner(p, lambda)) < 1e-8);
  }
}

TEST_CASE("flipped truncations") {
  const VerblunskySequence zero = VerblunskySequence::constant(0.0);
  const DiscreteSpectralMeasure nu = flip_spectral(zero, 4);
  CHECK(nu.atoms.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(close(std::pow(nu.atoms[i], 4), -1.0, 1e-10));
    CHECK(nu.weights[i] == doctest::Approx(0.25));
  }

  const DiscreteSpectralMeasure fj = flip_spectral(JacobiArrays::free(), 3);
  std::vector<double> atoms;
  for (const cplx a : fj.atoms) atoms.push_back(a.real());
  std::sort(atoms.begin(), atoms.end());
  CHECK(atoms[0] == doctest::Approx(-std::sqrt(2.0)));
  CHECK(atoms[1] == doctest::Approx(0.0));
  CHECK(atoms[2] == doctest::Approx(std::sqrt(2.0)));
  // Phi_2 / Phi_3 = (z^2 - 1) / (z^3 - 2z)
  for (const cplx z : {cplx(3.0), cplx(0.5, 2.0)}) {
    CHECK(close(m_function(fj, z), (z * z - 1.0) / (z * z * z - 2.0 * z), 1e-12));
  }

  const DiscreteSpectralMeasure single = flip_spectral(JacobiArrays::constant(1.0, 0.7), 1);
  REQUIRE(single.atoms.size() == 1);
  CHECK(close(single.atoms[0], 0.7));
  CHECK(single.weights[0] == doctest::Approx(1.0));

  const VerblunskySequence alpha = VerblunskySequence::random(31, 0.85, 30);
  const auto points = oracle::seeded_circle(2, 2.0, 10);
  CHECK(flip_contract_residual(alpha, 12, points) < 1e-8);
  CHECK(flip_contract_residual(JacobiArrays::decay(1.0, 0.3, 0.5), 12,
                               oracle::seeded_circle(2, 6.0, 10)) < 1e-8);
}

TEST_CASE("flipped matrix indexing") {
  const HessenbergMatrix M = ggt_matrix(VerblunskySequence::random(41, 0.6, 20), 8);
  const HessenbergMatrix F = flipped(M, 5);
  for (std::size_t i = 1; i <= 5; ++i) {
    for (std::size_t j = 1; j <= 5; ++j) CHECK(close(F(i, j), M(6 - j, 6 - i)));
  }
}

TEST_CASE("real-line subsequence embedding") {
  const JacobiEmbedding fj = subsequence_embedding(JacobiArrays::free(), 6, 12, 12);
  const auto r = embedding_residuals(fj, 3.0);
  CHECK(std::abs(
            resolvent_corner(jacobi_matrix(fj.arrays, fj.length - 1), fj.subsequence.back(), 3.0) -
            (3.0 - std::sqrt(5.0)) / 2.0) < 1e-3);
  CHECK(r.back() < 1e-3);
  CHECK(r.back() < r.front());

  const JacobiEmbedding atom = subsequence_embedding(JacobiArrays::constant(1.0, 0.4), 1, 8, 14);
  const cplx z(0.0, 3.0);
  const auto ra = embedding_residuals(atom, z);
  CHECK(close(m_function(atom.target, z), 1.0 / (z - 0.4)));
  CHECK(ra.back() < 1e-3);

  const JacobiEmbedding pair = subsequence_embedding(JacobiArrays::free(), 2, 8, 14);
  CHECK(close(m_function(pair.target, 3.0), 3.0 / 8.0));  // z / (z^2 - 1)
  CHECK(embedding_residuals(pair, 3.0).back() < 1e-3);

  CHECK(code_of([] { subsequence_embedding(JacobiArrays::free(), 6, 6, 3); }) ==
        ErrorCode::BadPattern);
  CHECK(code_of([] { subsequence_embedding(JacobiArrays::free(), 0, 6, 3); }) ==
        ErrorCode::BadPattern);
}

TEST_CASE("circle subsequence embedding") {
  const VerblunskySequence target =
      VerblunskySequence::from_list({cplx(0.3, 0.2), -0.4, cplx(0.1, 0.5)});
  const VerblunskyEmbedding e = subsequence_embedding(target, 4, 10, 30);
  for (std::size_t k = 0; k < e.subsequence.size(); ++k) {
    const std::size_t n = e.subsequence[k];
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(close(e.alpha(std::ptrdiff_t(n - 4 + i)), target(std::ptrdiff_t(i))));
  }
  const cplx z(0.0, 3.0);
  const auto r = embedding_residuals(e, z);
  CHECK(r.back() < 1e-3);
  CHECK(r.back() < r.front());
  CHECK(code_of([&] { subsequence_embedding(target, 4, 4, 3); }) == ErrorCode::BadPattern);
}

TEST_CASE("real-line ratio verdict matches convergence of the Jacobi parameters") {
  struct Case {
    JacobiArrays J;
    bool expected;
  };
  const std::vector<Case> cases = {
      {JacobiArrays::free(), true},
      {JacobiArrays::decay(1.0, 0.0, 1.0), true},
      {JacobiArrays([](std::size_t) { return 1.0; },
                    [](std::size_t n) { return n % 2 ? 0.3 : -0.3; }, 1.0, 0.3, "alternating b"),
       false},
  };
  for (const auto& c : cases) {
    const HessenbergMatrix M = jacobi_matrix(c.J, 200);
    const RatioReport r = ratio_series(M, 4, 25, 1e-4, LimitMethod::Extrapolated);
    bool ratio = r.leading.converged;
    for (const auto& a : r.corner) ratio = ratio && a.converged;
    const bool params =
        diagonal_limit(M, 0, false, 25, 1e-4, LimitMethod::Extrapolated).converged &&
        diagonal_limit(M, -1, false, 25, 1e-4, LimitMethod::Extrapolated).converged;
    CHECK(ratio == params);
    CHECK(params == c.expected);
  }
}
