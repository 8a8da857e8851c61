#pragma once

// Measures of compact support in the complex plane and their mixed moments
// <z^j, z^k> = sum_i w_i z_i^j conj(z_i)^k.
//
// Planar measures are finite quadratures with a declared exactness degree d:
// every monomial moment with j + k <= d equals the moment of the continuum
// measure the rule discretizes. Circle (Verblunsky) and line (Jacobi) measures
// are kept in closed form and resolved through exact Szego / Gauss quadratures
// of whatever size a query needs.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "opshift/error.hpp"
#include "opshift/sequences.hpp"

namespace opshift {

class LaurentSeries;

struct MomentKey {
  std::size_t j = 0;  // power of z
  std::size_t k = 0;  // power of conj(z)
};

struct PlanarQuadrature {
  std::vector<cplx> nodes;
  std::vector<double> weights;
  /// Moments with j + k <= exactness are exact. Ignored when `approximate` is set.
  std::size_t exactness = 0;
  /// Set by push_forward: moments are Riemann sums on a grid of `grid_size` nodes.
  bool approximate = false;
  std::size_t grid_size = 0;
  double support_radius = 0.0;
};

struct CircleVerblunsky {
  VerblunskySequence alpha;
};

struct JacobiLine {
  JacobiArrays arrays;
};

class MeasureSpec;

struct MixturePart {
  double scale = 1.0;
  std::shared_ptr<const MeasureSpec> measure;
};

struct Mixture {
  std::vector<MixturePart> parts;
};

class MeasureSpec {
 public:
  using Variant = std::variant<PlanarQuadrature, CircleVerblunsky, JacobiLine, Mixture>;

  explicit MeasureSpec(Variant v);

  const Variant& variant() const { return v_; }
  bool is_quadrature() const { return std::holds_alternative<PlanarQuadrature>(v_); }

  /// Upper bound for |z| on the support.
  double support_radius() const;
  double mass() const;

 private:
  Variant v_;
};

cplx moment(const MeasureSpec& m, MomentKey key);

MeasureSpec make_disk_area(double radius, std::size_t degree, bool unit_mass = false);
MeasureSpec make_annulus_area(double r_in, double r_out, std::size_t degree,
                              bool unit_mass = false);
/// Trapezoid rule on the unit circle; `weights` sample w(theta_i) on theta_i = 2 pi i / G.
MeasureSpec make_circle_arc(std::span<const double> weights, std::size_t degree);
MeasureSpec make_circle_lebesgue(std::size_t grid);
MeasureSpec make_verblunsky(VerblunskySequence alpha);
MeasureSpec make_jacobi(JacobiArrays arrays);

struct PointMass {
  cplx z;
  double mass;
};

MeasureSpec add_point_masses(const MeasureSpec& m, std::span<const PointMass> masses);
MeasureSpec mix(std::span<const MixturePart> parts);

/// Nodes mapped through psi; weights unchanged. Result is tagged approximate.
MeasureSpec push_forward(const MeasureSpec& m, const LaurentSeries& psi);

/// Flattens the measure into one quadrature whose moments are exact for j + k <= degree
/// (closed-form parts are resolved with exact Gauss / Szego rules of sufficient size).
/// Throws DegreeExceeded if a planar part cannot support `degree`.
PlanarQuadrature discretize(const MeasureSpec& m, std::size_t degree);

/// Deterministic pairwise sum; result is independent of thread count.
cplx pairwise_sum(std::span<const cplx> values);

namespace quadrature {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule on [lo, hi] by Golub-Welsch.
Rule gauss_legendre(std::size_t points, double lo, double hi);

}  // namespace quadrature

}  // namespace opshift
