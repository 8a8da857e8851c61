#include "opshift/measure.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "opshift/classical.hpp"
#include "opshift/laurent.hpp"

namespace opshift {

namespace {

constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void validate(const PlanarQuadrature& q) {
  if (q.nodes.size() != q.weights.size()) {
    throw Error(ErrorCode::InvalidArgument, "nodes and weights differ in length");
  }
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    if (!(q.weights[i] > 0.0)) throw Error(ErrorCode::NegativeWeight, "weights must be > 0");
    if (std::abs(q.nodes[i]) > q.support_radius * (1.0 + 1e-14)) {
      throw Error(ErrorCode::InvalidArgument, "node outside the declared support radius");
    }
  }
}

double max_modulus(const std::vector<cplx>& nodes) {
  double r = 0.0;
  for (const auto& z : nodes) r = std::max(r, std::abs(z));
  return r;
}

cplx quadrature_moment(const PlanarQuadrature& q, MomentKey key) {
  if (q.nodes.empty()) throw Error(ErrorCode::EmptyMeasure, "measure has no nodes");
  if (!q.approximate && key.j + key.k > q.exactness) {
    throw Error(ErrorCode::DegreeExceeded, "moment (" + std::to_string(key.j) + "," +
                                               std::to_string(key.k) + ") exceeds exactness " +
                                               std::to_string(q.exactness));
  }
  std::vector<cplx> terms(q.nodes.size());
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    const cplx z = q.nodes[i];
    terms[i] = q.weights[i] * std::pow(z, static_cast<int>(key.j)) *
               std::pow(std::conj(z), static_cast<int>(key.k));
  }
  return pairwise_sum(terms);
}

PlanarQuadrature from_spectral(const DiscreteSpectralMeasure& nu, std::size_t exactness) {
  PlanarQuadrature q;
  q.exactness = exactness;
  for (std::size_t i = 0; i < nu.atoms.size(); ++i) {
    if (nu.weights[i] <= 0.0) continue;  // numerically vanishing eigenvector components
    q.nodes.push_back(nu.atoms[i]);
    q.weights.push_back(nu.weights[i]);
  }
  q.support_radius = max_modulus(q.nodes);
  return q;
}

PlanarQuadrature tensor_rule(double r_in, double r_out, std::size_t degree, bool unit_mass) {
  const std::size_t radial = (degree + 3) / 2;  // ceil((d + 2) / 2)
  const std::size_t angular = degree + 1;
  const auto rule = quadrature::gauss_legendre(radial, r_in, r_out);
  PlanarQuadrature q;
  q.exactness = degree;
  const double mass = std::numbers::pi * (r_out * r_out - r_in * r_in);
  const double norm = unit_mass ? 1.0 / mass : 1.0;
  for (std::size_t i = 0; i < radial; ++i) {
    for (std::size_t p = 0; p < angular; ++p) {
      const double t =
          2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(angular);
      q.nodes.push_back(std::polar(rule.nodes[i], t));
      q.weights.push_back(norm * rule.weights[i] * rule.nodes[i] * 2.0 * std::numbers::pi /
                          static_cast<double>(angular));
    }
  }
  q.support_radius = r_out;
  return q;
}

}  // namespace

MeasureSpec::MeasureSpec(Variant v) : v_(std::move(v)) {
  std::visit(Overloaded{
                 [](const PlanarQuadrature& q) { validate(q); },
                 [](const CircleVerblunsky&) {},
                 [](const JacobiLine&) {},
                 [](const Mixture& mx) {
                   if (mx.parts.empty()) throw Error(ErrorCode::EmptyMeasure, "empty mixture");
                   for (const auto& p : mx.parts) {
                     if (!(p.scale > 0.0) || !p.measure) {
                       throw Error(ErrorCode::NonpositiveMass, "mixture scales must be positive");
                     }
                   }
                 },
             },
             v_);
}

double MeasureSpec::support_radius() const {
  return std::visit(Overloaded{
                        [](const PlanarQuadrature& q) { return q.support_radius; },
                        [](const CircleVerblunsky&) { return 1.0; },
                        [](const JacobiLine& j) { return j.arrays.support_bound(); },
                        [](const Mixture& mx) {
                          double r = 0.0;
                          for (const auto& p : mx.parts) {
                            r = std::max(r, p.measure->support_radius());
                          }
                          return r;
                        },
                    },
                    v_);
}

double MeasureSpec::mass() const {
  return std::visit(Overloaded{
                        [](const PlanarQuadrature& q) {
                          double s = 0.0;
                          for (double w : q.weights) s += w;
                          return s;
                        },
                        [](const CircleVerblunsky&) { return 1.0; },
                        [](const JacobiLine&) { return 1.0; },
                        [](const Mixture& mx) {
                          double s = 0.0;
                          for (const auto& p : mx.parts) s += p.scale * p.measure->mass();
                          return s;
                        },
                    },
                    v_);
}

cplx moment(const MeasureSpec& m, MomentKey key) {
  return std::visit(
      Overloaded{
          [&](const PlanarQuadrature& q) { return quadrature_moment(q, key); },
          [&](const Mixture& mx) {
            cplx s = 0.0;
            for (const auto& p : mx.parts) s += p.scale * moment(*p.measure, key);
            return s;
          },
          [&](const auto&) { return quadrature_moment(discretize(m, key.j + key.k), key); },
      },
      m.variant());
}

PlanarQuadrature discretize(const MeasureSpec& m, std::size_t degree) {
  return std::visit(Overloaded{
                        [&](const PlanarQuadrature& q) {
                          if (!q.approximate && degree > q.exactness) {
                            throw Error(ErrorCode::DegreeExceeded,
                                        "quadrature exact to degree " +
                                            std::to_string(q.exactness) + ", " +
                                            std::to_string(degree) + " requested");
                          }
                          PlanarQuadrature out = q;
                          if (!out.approximate) out.exactness = std::max(out.exactness, degree);
                          return out;
                        },
                        [&](const CircleVerblunsky& c) {
                          // An n-node Szego rule integrates z^p exactly for |p| <= n - 1.
                          return from_spectral(szego_rule(c.alpha, degree + 2), degree);
                        },
                        [&](const JacobiLine& j) {
                          // An L-node Gauss rule is exact through polynomial degree 2L - 1.
                          return from_spectral(gauss_rule(j.arrays, degree / 2 + 2), degree);
                        },
                        [&](const Mixture& mx) {
                          PlanarQuadrature out;
                          out.exactness = degree;
                          for (const auto& p : mx.parts) {
                            const PlanarQuadrature q = discretize(*p.measure, degree);
                            out.nodes.insert(out.nodes.end(), q.nodes.begin(), q.nodes.end());
                            for (double w : q.weights) out.weights.push_back(p.scale * w);
                            out.approximate = out.approximate || q.approximate;
                            out.grid_size += q.approximate ? q.grid_size : 0;
                          }
                          out.support_radius = max_modulus(out.nodes);
                          return out;
                        },
                    },
                    m.variant());
}

MeasureSpec make_disk_area(double radius, std::size_t degree, bool unit_mass) {
  if (!(radius > 0.0)) throw Error(ErrorCode::BadRadii, "disk radius must be positive");
  return MeasureSpec(tensor_rule(0.0, radius, degree, unit_mass));
}

MeasureSpec make_annulus_area(double r_in, double r_out, std::size_t degree, bool unit_mass) {
  if (!(r_in > 0.0) || !(r_in < r_out)) {
    throw Error(ErrorCode::BadRadii, "annulus needs 0 < r_in < r_out");
  }
  return MeasureSpec(tensor_rule(r_in, r_out, degree, unit_mass));
}

MeasureSpec make_circle_arc(std::span<const double> weights, std::size_t degree) {
  if (weights.size() < degree + 1) {
    throw Error(ErrorCode::InvalidArgument, "circle grid must have at least degree + 1 points");
  }
  PlanarQuadrature q;
  q.exactness = degree;
  const double G = static_cast<double>(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0.0) throw Error(ErrorCode::NegativeWeight, "w(theta) must be >= 0");
    if (weights[i] == 0.0) continue;
    q.nodes.push_back(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(i) / G));
    q.weights.push_back(weights[i] / G);
  }
  q.support_radius = 1.0;
  return MeasureSpec(std::move(q));
}

MeasureSpec make_circle_lebesgue(std::size_t grid) {
  if (grid == 0) throw Error(ErrorCode::InvalidArgument, "empty circle grid");
  const std::vector<double> ones(grid, 1.0);
  return make_circle_arc(ones, grid - 1);
}

MeasureSpec make_verblunsky(VerblunskySequence alpha) {
  return MeasureSpec(CircleVerblunsky{std::move(alpha)});
}

MeasureSpec make_jacobi(JacobiArrays arrays) { return MeasureSpec(JacobiLine{std::move(arrays)}); }

MeasureSpec add_point_masses(const MeasureSpec& m, std::span<const PointMass> masses) {
  if (masses.empty()) return m;
  PlanarQuadrature atoms;
  atoms.exactness = kUnbounded;
  for (const auto& pm : masses) {
    if (!(pm.mass > 0.0)) throw Error(ErrorCode::NonpositiveMass, "point masses must be > 0");
    atoms.nodes.push_back(pm.z);
    atoms.weights.push_back(pm.mass);
  }
  atoms.support_radius = max_modulus(atoms.nodes);
  const std::vector<MixturePart> parts = {
      {1.0, std::make_shared<const MeasureSpec>(m)},
      {1.0, std::make_shared<const MeasureSpec>(MeasureSpec(std::move(atoms)))},
  };
  return mix(parts);
}

MeasureSpec mix(std::span<const MixturePart> parts) {
  return MeasureSpec(Mixture{{parts.begin(), parts.end()}});
}

MeasureSpec push_forward(const MeasureSpec& m, const LaurentSeries& psi) {
  const auto* q = std::get_if<PlanarQuadrature>(&m.variant());
  if (q == nullptr) {
    throw Error(ErrorCode::InvalidArgument, "push_forward needs a planar quadrature");
  }
  PlanarQuadrature out;
  out.approximate = true;
  out.grid_size = q->nodes.size();
  out.weights = q->weights;
  out.nodes.reserve(q->nodes.size());
  for (const auto& z : q->nodes) {
    if (!psi.exact() && !(std::abs(z) > psi.rho())) {
      throw Error(ErrorCode::OutsideDomain, "node inside the map's radius of convergence");
    }
    out.nodes.push_back(laurent_eval(psi, z));
  }
  out.support_radius = max_modulus(out.nodes);
  return MeasureSpec(std::move(out));
}

cplx pairwise_sum(std::span<const cplx> values) {
  if (values.size() <= 8) {
    cplx s = 0.0;
    for (const auto& v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace quadrature {

Rule gauss_legendre(std::size_t points, double lo, double hi) {
  if (points == 0) throw Error(ErrorCode::InvalidArgument, "Gauss rule needs points");
  const auto n = static_cast<Eigen::Index>(points);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max<Eigen::Index>(n - 1, 0));
  for (Eigen::Index k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    sub(k - 1) = kk / std::sqrt(4.0 * kk * kk - 1.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenFailure, "Golub-Welsch eigensolve failed");
  }
  Rule rule;
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v = es.eigenvectors()(0, i);
    rule.nodes.push_back(mid + half * es.eigenvalues()(i));
    rule.weights.push_back(2.0 * v * v * half);
  }
  return rule;
}

}  // namespace quadrature

}  // namespace opshift
