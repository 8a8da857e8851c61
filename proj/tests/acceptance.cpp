// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the number of failures.
// `acceptance 7` runs criterion 7 only.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "opshift/arnoldi.hpp"
#include "opshift/asymptotics.hpp"
#include "opshift/classical.hpp"
#include "opshift/laurent.hpp"
#include "opshift/measure.hpp"
#include "oracles.hpp"

using namespace opshift;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << x;
  return s.str();
}

// A Hessenberg truncation together with the monic polynomials it should reproduce.
struct DetCase {
  std::string name;
  HessenbergMatrix M;
  std::vector<std::vector<cplx>> monic;  // monic[n], n = 0..15
  double bound;
};

std::vector<DetCase> determinant_cases() {
  constexpr std::size_t N = 15;
  std::vector<DetCase> cases;
  auto from_arnoldi = [&](std::string name, const MeasureSpec& m, double bound) {
    ArnoldiResult r = arnoldi(m, N);
    std::vector<std::vector<cplx>> monic;
    for (std::size_t n = 0; n <= N; ++n) monic.push_back(r.basis.monic(n));
    cases.push_back({std::move(name), std::move(r.hessenberg), std::move(monic), bound});
  };
  from_arnoldi("disk", make_disk_area(1.0, 2 * N + 1, true), 1.0);
  from_arnoldi("circle", make_circle_lebesgue(2 * N + 2), 1.0);
  from_arnoldi("free jacobi", make_jacobi(JacobiArrays::free()), 2.0);
  const auto alpha = VerblunskySequence::random(20240611, 0.5, 64);
  cases.push_back(
      {"random verblunsky", ggt_matrix(alpha, N), szego_recursion(alpha, N).monic, 1.0});
  return cases;
}

Outcome criterion1() {
  double worst = 0.0;
  for (const auto& c : determinant_cases()) {
    const auto points = oracle::seeded_circle(101, 2.0 * c.bound, 10);
    for (std::size_t n = 1; n <= 15; ++n) {
      for (const cplx z : points) {
        worst =
            std::max(worst, oracle::rel_err(char_poly(c.M, n, z), oracle::horner(c.monic[n], z)));
      }
    }
  }
  return {worst <= 1e-9, "max relative error " + fmt(worst)};
}

Outcome criterion2() {
  double worst = 0.0;
  for (const auto& c : determinant_cases()) {
    const auto points = oracle::seeded_circle(102, 2.0 * c.bound, 10);
    for (std::size_t n = 1; n <= 15; ++n) {
      for (const cplx z : points) {
        const cplx ratio = char_poly(c.M, n - 1, z) / char_poly(c.M, n, z);
        worst = std::max(worst, oracle::rel_err(resolvent_corner(c.M, n, z), ratio));
      }
    }
  }
  return {worst <= 1e-9, "max relative error " + fmt(worst)};
}

Outcome criterion3() {
  constexpr std::size_t N = 30;
  std::mt19937_64 rng(7);
  double worst = 0.0;
  std::size_t checked = 0;
  for (std::size_t m = 0; m < 4; ++m) {
    const HessenbergMatrix M = ggt_matrix(VerblunskySequence::random(1000 + m, 0.9, N + 1), N);
    const std::size_t D = M.dim();
    for (std::size_t t = 0; t < 50; ++t) {
      // a, a-1, ..., lo, then up to hi >= a, then down by one back to a.
      const std::size_t a = std::uniform_int_distribution<std::size_t>(2, D - 1)(rng);
      const std::size_t lo = std::uniform_int_distribution<std::size_t>(1, a - 1)(rng);
      const std::size_t hi = std::uniform_int_distribution<std::size_t>(a, D)(rng);
      std::vector<std::size_t> path;
      for (std::size_t i = a; i >= lo; --i) path.push_back(i);
      for (std::size_t i = hi; i >= a; --i) path.push_back(i);
      const RepeatCheck r = lemma_repeat_check(M, path);
      const double scale = std::max(std::abs(r.collapsed), 1e-300);
      worst = std::max(worst, std::abs(r.product - r.collapsed) / scale);
      ++checked;
    }
  }
  return {checked == 200 && worst <= 1e-12,
          std::to_string(checked) + " paths, max relative error " + fmt(worst)};
}

Outcome criterion4() {
  std::string detail;
  bool ok = true;
  for (const auto& e : app::catalog()) {
    const HessenbergMatrix M = e.build(e.degree);
    const EquivalenceVerdicts v = equivalence_verdicts(M, 6, 25, 1e-6);
    std::string verdicts;
    for (std::size_t j = 0; j < v.ratio.size(); ++j) {
      verdicts += v.ratio[j] ? 'R' : 'r';
      verdicts += v.scaled[j] ? 'S' : 's';
    }
    ok = ok && v.agree();
    detail += e.name + "=" + verdicts + (v.agree() ? "" : "(DISAGREE)") + " ";
  }
  return {ok, detail + "(R/S converged, r/s not; j = 0..6)"};
}

Outcome criterion5() {
  const SymbolReport jac = symbol_extract(jacobi_matrix(JacobiArrays::free(), 80), 6, 25, 1e-6);
  double dev = std::max({std::abs(jac.symbol.c(-1) - 1.0), std::abs(jac.symbol.c(0)),
                         std::abs(jac.symbol.c(1) - 1.0)});
  for (int k = 2; k <= 6; ++k) dev = std::max(dev, std::abs(jac.symbol.c(k)));

  const HessenbergMatrix D = app::find_example("disk").build(60);
  const SymbolReport disk = symbol_extract(D, 6, 25, 1e-6);
  double ddev = std::abs(disk.symbol.c(-1) - 1.0);
  for (int k = 0; k <= 6; ++k) ddev = std::max(ddev, std::abs(disk.symbol.c(k)));

  const bool ok =
      dev < 1e-6 && jac.cross_residual <= 1e-6 && ddev < 1e-6 && disk.cross_residual <= 1e-6;
  return {ok, "free jacobi deviation " + fmt(dev) + " cross " + fmt(jac.cross_residual) +
                  "; disk deviation " + fmt(ddev) + " cross " + fmt(disk.cross_residual)};
}

Outcome criterion6() {
  const HessenbergMatrix M = jacobi_matrix(JacobiArrays::free(), 80);
  const LaurentSeries psi = joukowski(1.0);
  const double expected[] = {0, 2, 0, 6, 0, 20};
  double worst = 0.0;
  bool converged = true;
  for (std::size_t j = 1; j <= 6; ++j) {
    const LimitEstimate e = weak_moment_sequence(M, j, 25, 1e-6);
    const cplx eq = equilibrium_moments(psi, j);
    converged = converged && e.converged;
    worst = std::max({worst, std::abs(e.limit - eq), std::abs(eq - expected[j - 1])});
  }
  return {converged && worst <= 1e-6, "max deviation " + fmt(worst)};
}

Outcome criterion7() {
  const HessenbergMatrix M = ggt_matrix(VerblunskySequence::alpha_to_one(), 400);
  const DegenerateReport d = degenerate_limit(M, 25, 1e-4);
  double worst = std::abs(d.x + 1.0);
  for (std::size_t j = 1; j <= 4; ++j) {
    worst = std::max(worst, std::abs(d.moments[j - 1].limit - std::pow(-1.0, j)));
  }
  return {worst <= 1e-4 && d.moments_match,
          "x = " + fmt(d.x.real()) + ", max deviation " + fmt(worst)};
}

Outcome criterion8() {
  struct Case {
    std::string name;
    HessenbergMatrix M;
    double bound;
  };
  const std::vector<Case> cases = {
      {"free jacobi", jacobi_matrix(JacobiArrays::free(), 103), 2.0},
      {"random verblunsky", ggt_matrix(VerblunskySequence::random(99, 0.7, 200), 103), 1.0},
  };
  std::size_t violations = 0;
  std::size_t checks = 0;
  double worst_ratio = 0.0;
  for (const auto& c : cases) {
    for (std::size_t n = 1; n <= 100; ++n) {
      for (std::size_t j = 1; j <= 4; ++j) {
        const BoundCheck b = weakzero_bound_check(c.M, n, j, c.bound);
        ++checks;
        if (!b.holds()) ++violations;
        worst_ratio = std::max(worst_ratio, b.lhs / b.rhs);
      }
    }
  }
  return {violations == 0, std::to_string(checks) + " checks, " + std::to_string(violations) +
                               " violations, max lhs/rhs " + fmt(worst_ratio)};
}

Outcome criterion9() {
  const auto alpha = VerblunskySequence::decay(1.0);
  const KhruschevReport r = khruschev_check(alpha, 4, 300, 25, 1e-3);
  double worst = 0.0;
  for (const auto& m : r.moments) worst = std::max(worst, std::abs(m.limit));
  return {r.passed() && r.moments.size() == 4 && worst < 1e-3,
          std::string("hypothesis ") + (r.hypothesis ? "holds" : "fails") + ", max |weak moment| " +
              fmt(worst)};
}

Outcome criterion10() {
  const HessenbergMatrix M = jacobi_matrix(JacobiArrays::free(), 120);
  const double target = (3.0 - std::sqrt(5.0)) / 2.0;
  double worst = 0.0;
  for (std::size_t n = 60; n <= 120; ++n) {
    worst = std::max(worst, std::abs(resolvent_corner(M, n, 3.0) - target));
  }
  return {worst <= 1e-6, "max |ratio - (3 - sqrt 5)/2| over n = 60..120: " + fmt(worst)};
}

Outcome criterion11() {
  const DiscreteSpectralMeasure nu = flip_spectral(VerblunskySequence::constant(0.0), 4);
  double dev = nu.atoms.size() == 4 ? 0.0 : 1.0;
  for (std::size_t i = 0; i < nu.atoms.size(); ++i) {
    dev = std::max({dev, std::abs(std::pow(nu.atoms[i], 4) + 1.0), std::abs(nu.weights[i] - 0.25)});
  }

  double worst = 0.0;
  const std::vector<VerblunskySequence> circle = {
      VerblunskySequence::constant(0.0),     VerblunskySequence::constant(0.5),
      VerblunskySequence::decay(1.0),        VerblunskySequence::alpha_to_one(),
      VerblunskySequence::oscillatory(),     VerblunskySequence::alternating(0.9),
      VerblunskySequence::random(5, 0.5, 64)};
  const std::vector<JacobiArrays> line = {JacobiArrays::free(), JacobiArrays::constant(1.0, 1.0),
                                          JacobiArrays::decay(1.0, 0.0, 1.0)};
  std::uint64_t seed = 11;
  for (const auto& a : circle) {
    for (std::size_t n = 1; n <= 30; ++n) {
      worst = std::max(worst, flip_contract_residual(a, n, oracle::seeded_circle(seed++, 2.0, 10)));
    }
  }
  for (const auto& J : line) {
    for (std::size_t n = 1; n <= 30; ++n) {
      const auto points = oracle::seeded_circle(seed++, 2.0 * J.support_bound(), 10);
      worst = std::max(worst, flip_contract_residual(J, n, points));
    }
  }
  return {dev <= 1e-10 && worst <= 1e-8,
          "roots-of--1 deviation " + fmt(dev) + ", max contract residual " + fmt(worst)};
}

Outcome criterion12() {
  const auto& e = app::find_example("blaschke_atoms");
  auto moment = [&](std::size_t N) { return std::abs(full_power_diagonal(e.build(N), N + 1, 1)); };
  const double m20 = moment(20);
  const double m80 = moment(80);
  return {m80 < m20, "|moment| N=20: " + fmt(m20) + ", N=80: " + fmt(m80) + " (trend only)"};
}

Outcome criterion13() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> lead(0.5, 2.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double recover = 0.0;
  double bmat = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    // beta_{-1}, beta_0, ..., beta_8 with |beta_k| <= 0.3 / 2^k.
    std::vector<cplx> beta{lead(rng)};
    for (int k = 0; k <= 8; ++k) {
      const double r = 0.3 * std::ldexp(1.0, -k);
      beta.emplace_back(r * unit(rng) / std::sqrt(2.0), r * unit(rng) / std::sqrt(2.0));
    }
    const auto f = oracle::lagrange_f(beta, 10);
    const LaurentSeries g = ratio_inverse(SeriesAtInfinity{f}, 8);
    for (int k = -1; k <= 8; ++k) {
      recover = std::max(recover, std::abs(g.c(k) - beta[static_cast<std::size_t>(k + 1)]));
    }
    for (std::size_t k = 0; k <= 6; ++k) {
      bmat = std::max(bmat, std::abs(b_matrix_power(g, k) - f[k] / f[0]));
    }
  }
  return {recover <= 1e-9 && bmat <= 1e-9,
          "max recovery error " + fmt(recover) + ", max B-matrix error " + fmt(bmat)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {
      criterion1, criterion2, criterion3,  criterion4,  criterion5,  criterion6, criterion7,
      criterion8, criterion9, criterion10, criterion11, criterion12, criterion13};
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (only != 0 && only != id) continue;
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %2d: %s | %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
