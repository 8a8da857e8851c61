#include "catalog.hpp"

#include <cmath>
#include <numbers>

#include "opshift/arnoldi.hpp"
#include "opshift/asymptotics.hpp"
#include "opshift/classical.hpp"
#include "opshift/laurent.hpp"
#include "opshift/measure.hpp"

namespace opshift::app {

bool ExpectedValue::passed() const { return std::abs(measured - expected) <= tol; }

namespace {

constexpr double kTol = 1e-6;

HessenbergMatrix disk(std::size_t N) {
  return arnoldi(make_disk_area(1.0, 2 * N + 1, true), N).hessenberg;
}

HessenbergMatrix circle(std::size_t N) {
  return arnoldi(make_circle_lebesgue(2 * N + 2), N).hessenberg;
}

HessenbergMatrix free_jacobi(std::size_t N) { return jacobi_matrix(JacobiArrays::free(), N); }

HessenbergMatrix alpha_to_one(std::size_t N) {
  return ggt_matrix(VerblunskySequence::alpha_to_one(), N);
}

HessenbergMatrix oscillatory(std::size_t N) {
  return ggt_matrix(VerblunskySequence::oscillatory(), N);
}

// Area measure of the annulus 0.6 < |w| < 1 pushed forward by w + 1/(4w): the region
// between two confocal ellipses, whose outer boundary is the image of |w| = 1.
HessenbergMatrix joukowski_region(std::size_t N) {
  const MeasureSpec annulus = make_annulus_area(0.6, 1.0, 2 * N + 1, true);
  return arnoldi(push_forward(annulus, joukowski(0.25)), N).hessenberg;
}

// Lebesgue measure on the circle plus unit atoms at 1 + 2^{-k}, k = 1..20.
HessenbergMatrix blaschke_atoms(std::size_t N) {
  std::vector<PointMass> atoms;
  for (int k = 1; k <= 20; ++k) atoms.push_back({1.0 + std::ldexp(1.0, -k), 1.0});
  return arnoldi(add_point_masses(make_circle_lebesgue(2 * N + 2), atoms), N).hessenberg;
}

ExpectedValue row(std::string label, cplx measured, cplx expected, double tol,
                  std::string provenance) {
  return {std::move(label), measured, expected, tol, std::move(provenance)};
}

void symbol_rows(std::vector<ExpectedValue>& out, const HessenbergMatrix& M,
                 const std::vector<cplx>& beta, std::size_t J, double tol,
                 const std::string& provenance) {
  const SymbolReport s = symbol_extract(M, J, 25, tol, LimitMethod::Extrapolated);
  for (int k = -1; k <= static_cast<int>(J); ++k) {
    const std::size_t idx = static_cast<std::size_t>(k + 1);
    out.push_back(row("beta_" + std::to_string(k), s.symbol.c(k),
                      idx < beta.size() ? beta[idx] : cplx(0.0), tol, provenance));
  }
  out.push_back(row("symbol cross-check residual", s.cross_residual, 0.0, tol, provenance));
}

std::vector<Example> make_catalog() {
  std::vector<Example> c;

  c.push_back(
      {"disk", "unit-mass area measure on the unit disk", 60, 1.0, disk, [](std::size_t N) {
         const HessenbergMatrix M = disk(N);
         std::vector<ExpectedValue> out;
         out.push_back(row("M_{2,1}", M(2, 1), std::sqrt(0.5), 1e-10, "closed form sqrt(k/(k+1))"));
         symbol_rows(out, M, {1.0}, 4, kTol, "weighted shift: symbol w");
         const RatioReport r = ratio_series(M, 4, 25, kTol, LimitMethod::Extrapolated);
         for (std::size_t j = 1; j <= r.f_est.size(); ++j) {
           out.push_back(
               row("f_" + std::to_string(j), r.f_est[j], j == 1 ? 1.0 : 0.0, kTol, "ratio 1/z"));
         }
         out.push_back(row("zero-counting moment j=2, n=20", zero_counting_moments(M, 20, 2), 0.0,
                           1e-12, "nilpotent truncation"));
         return out;
       }});

  c.push_back({"circle", "Lebesgue measure on the unit circle", 40, 1.0, circle, [](std::size_t N) {
                 const HessenbergMatrix M = circle(N);
                 std::vector<ExpectedValue> out;
                 symbol_rows(out, M, {1.0}, 4, kTol, "shift: symbol w");
                 out.push_back(row("weak moment j=1", weak_moment_sequence(M, 1, 25, kTol).limit,
                                   0.0, kTol, "shift has zero diagonal"));
                 return out;
               }});

  c.push_back({"free_jacobi", "free Jacobi matrix a = 1, b = 0 (semicircle law)", 80, 2.0,
               free_jacobi, [](std::size_t N) {
                 const HessenbergMatrix M = free_jacobi(N);
                 std::vector<ExpectedValue> out;
                 const std::vector<double> catalan = {1, 0, 1, 0, 2, 0, 5};
                 const RatioReport r = ratio_series(M, 6, 25, kTol);
                 for (std::size_t j = 1; j <= catalan.size(); ++j) {
                   out.push_back(row("f_" + std::to_string(j), r.f_est[j], catalan[j - 1], kTol,
                                     "Catalan numbers: expansion of 2/(z + sqrt(z^2 - 4))"));
                 }
                 symbol_rows(out, M, {1.0, 0.0, 1.0}, 6, kTol, "Joukowski symbol w + 1/w");
                 const std::vector<double> arcsine = {0, 2, 0, 6, 0, 20};
                 for (std::size_t j = 1; j <= arcsine.size(); ++j) {
                   out.push_back(row("weak moment j=" + std::to_string(j),
                                     weak_moment_sequence(M, j, 25, kTol).limit, arcsine[j - 1],
                                     kTol, "arcsine moments on [-2, 2]"));
                 }
                 out.push_back(row("ratio at z=3, n=60", resolvent_corner(M, 60, 3.0),
                                   (3.0 - std::sqrt(5.0)) / 2.0, kTol,
                                   "2 / (z + sqrt(z^2 - 4)) at z = 3"));
                 return out;
               }});

  c.push_back(
      {"alpha_to_one", "Verblunsky coefficients alpha_n = 1 - 1/(n+2)", 400, 1.0, alpha_to_one,
       [](std::size_t N) {
         const HessenbergMatrix M = alpha_to_one(N);
         std::vector<ExpectedValue> out;
         for (std::ptrdiff_t j = 0; j <= 3; ++j) {
           const LimitEstimate e = diagonal_limit(M, j, true, 25, 1e-4, LimitMethod::Extrapolated);
           out.push_back(row("scaled diagonal j=" + std::to_string(j), e.limit, j == 0 ? -1.0 : 0.0,
                             1e-4, "worked example: -1 on the main diagonal, 0 elsewhere"));
         }
         const DegenerateReport d = degenerate_limit(M, 25, 1e-4);
         out.push_back(row("x = lim M_{n,n}", d.x, -1.0, 1e-4, "worked example"));
         for (std::size_t j = 1; j <= d.moments.size(); ++j) {
           out.push_back(row("weak moment j=" + std::to_string(j), d.moments[j - 1].limit,
                             j % 2 == 1 ? -1.0 : 1.0, 1e-4, "worked example: moments (-1)^j"));
         }
         return out;
       }});

  c.push_back({"oscillatory", "Verblunsky coefficients (1 - 1/(n+1)) e^{i n^2}", 400, 1.0,
               oscillatory, [](std::size_t N) {
                 const HessenbergMatrix M = oscillatory(N);
                 const LimitEstimate e = diagonal_limit(M, 0, false, 50, 1e-3);
                 return std::vector<ExpectedValue>{
                     row("main diagonal converged (W=50, tol=1e-3)", e.converged ? 1.0 : 0.0, 0.0,
                         0.5, "worked example: lim M_{n,n} does not exist")};
               }});

  c.push_back({"joukowski", "annulus 0.6 < |w| < 1 pushed forward by w + 1/(4w) (area measure)", 60,
               1.0 + 0.25, joukowski_region, [](std::size_t N) {
                 const HessenbergMatrix M = joukowski_region(N);
                 std::vector<ExpectedValue> out;
                 symbol_rows(out, M, {1.0, 0.0, 0.25}, 4, 1e-4,
                             "exterior map of the outer ellipse: w + 1/(4w)");
                 return out;
               }});

  c.push_back({"blaschke_atoms", "circle Lebesgue measure plus 20 unit atoms at 1 + 2^{-k}", 80,
               1.5, blaschke_atoms, [](std::size_t) {
                 std::vector<ExpectedValue> out;
                 for (std::size_t j = 1; j <= 3; ++j) {
                   std::vector<double> mags;
                   for (std::size_t n : {20, 40, 80}) {
                     const HessenbergMatrix M = blaschke_atoms(n + j - 1);
                     mags.push_back(std::abs(full_power_diagonal(M, n + 1, j)));
                   }
                   const bool decreasing = mags[1] < mags[0] && mags[2] < mags[1];
                   out.push_back(row(
                       "|weak moment j=" + std::to_string(j) + "| decreases over N = 20, 40, 80",
                       decreasing ? 1.0 : 0.0, 1.0, 0.5,
                       "trend only; the limit 0 is not reached at this depth"));
                 }
                 return out;
               }});
  return c;
}

}  // namespace

const std::vector<Example>& catalog() {
  static const std::vector<Example> c = make_catalog();
  return c;
}

const Example& find_example(const std::string& name) {
  for (const auto& e : catalog()) {
    if (e.name == name) return e;
  }
  std::string names;
  for (const auto& e : catalog()) names += (names.empty() ? "" : ", ") + e.name;
  throw Error(ErrorCode::ConfigError, "unknown example '" + name + "' (known: " + names + ")");
}

}  // namespace opshift::app
