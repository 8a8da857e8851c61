#include "opshift/arnoldi.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

namespace opshift {

OrthonormalBasis::OrthonormalBasis(std::vector<std::vector<cplx>> coeffs, std::vector<double> kappa,
                                   std::vector<std::vector<cplx>> node_values)
    : coeffs_(std::move(coeffs)), kappa_(std::move(kappa)), values_(std::move(node_values)) {
  if (kappa_.empty() || coeffs_.size() != kappa_.size()) {
    throw Error(ErrorCode::InvalidArgument, "basis tables disagree in size");
  }
}

std::vector<cplx> OrthonormalBasis::monic(std::size_t n) const {
  std::vector<cplx> out = coefficients(n);
  const double k = kappa(n);
  for (auto& c : out) c /= k;
  out.back() = 1.0;
  return out;
}

namespace {

cplx inner(const std::vector<cplx>& u, const std::vector<cplx>& v, const std::vector<double>& w) {
  std::vector<cplx> terms(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) terms[i] = w[i] * u[i] * std::conj(v[i]);
  return pairwise_sum(terms);
}

double norm(const std::vector<cplx>& u, const std::vector<double>& w) {
  return std::sqrt(std::max(0.0, inner(u, u, w).real()));
}

}  // namespace

ArnoldiResult arnoldi(const MeasureSpec& m, std::size_t N, const ArnoldiOptions& opts) {
  PlanarQuadrature q = discretize(m, 2 * N + 1);
  if (q.nodes.empty()) throw Error(ErrorCode::EmptyMeasure, "measure has no nodes");
  const std::size_t count = q.nodes.size();
  const std::vector<double>& w = q.weights;

  double mass = 0.0;
  for (double x : w) mass += x;

  std::vector<std::vector<cplx>> values;
  std::vector<std::vector<cplx>> coeffs;
  std::vector<double> kappa;
  std::vector<double> log_kappa{-0.5 * std::log(mass)};
  values.emplace_back(count, cplx(1.0 / std::sqrt(mass)));
  coeffs.push_back({cplx(1.0 / std::sqrt(mass))});
  kappa.push_back(1.0 / std::sqrt(mass));

  HessenbergMatrix M(N + 1);
  for (std::size_t k = 0; k <= N; ++k) {
    std::vector<cplx> u(count);
    for (std::size_t i = 0; i < count; ++i) u[i] = q.nodes[i] * values[k][i];
    std::vector<cplx> c(k + 2, 0.0);
    std::copy(coeffs[k].begin(), coeffs[k].end(), c.begin() + 1);
    const double scale = norm(u, w);

    // Modified Gram-Schmidt, applied twice.
    std::vector<cplx> column(k + 1, 0.0);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j <= k; ++j) {
        const cplx h = inner(u, values[j], w);
        for (std::size_t i = 0; i < count; ++i) u[i] -= h * values[j][i];
        for (std::size_t i = 0; i < coeffs[j].size(); ++i) c[i] -= h * coeffs[j][i];
        column[j] += h;
      }
    }
    for (std::size_t j = 0; j <= k; ++j) M.set(j + 1, k + 1, column[j]);
    if (k == N) break;

    const double r = norm(u, w);
    if (!(r > opts.rank_tol * std::max(scale, 1e-300))) {
      throw Error(ErrorCode::RankDeficient, "Gram-Schmidt norm " + std::to_string(r) +
                                                " at degree " + std::to_string(k + 1) +
                                                " (measure has too few effective points)");
    }
    M.set(k + 2, k + 1, r);
    for (auto& x : u) x /= r;
    for (auto& x : c) x /= r;
    c.back() = kappa[k] / r;
    kappa.push_back(kappa[k] / r);
    log_kappa.push_back(log_kappa[k] - std::log(r));
    values.push_back(std::move(u));
    coeffs.push_back(std::move(c));
  }
  M.attach_log_kappa(log_kappa);

  OrthonormalBasis basis(std::move(coeffs), std::move(kappa), std::move(values));
  if (opts.check_orthogonality) {
    const double res = gram_residual(basis, q);
    if (!(res <= opts.ortho_tol)) {
      throw Error(ErrorCode::RankDeficient,
                  "orthogonality residual " + std::to_string(res) + " exceeds tolerance");
    }
  }
  return {std::move(basis), std::move(M), std::move(q)};
}

cplx evaluate_coefficients(const std::vector<cplx>& coeffs, cplx z) {
  cplx acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

cplx evaluate_poly(const OrthonormalBasis& basis, std::size_t n, cplx z) {
  if (n > basis.degree()) throw Error(ErrorCode::IndexOutOfRange, "degree beyond basis");
  return evaluate_coefficients(basis.coefficients(n), z);
}

double gram_residual(const OrthonormalBasis& basis, const PlanarQuadrature& q) {
  if (!basis.has_node_values()) {
    throw Error(ErrorCode::InvalidArgument, "basis carries no node values");
  }
  double worst = 0.0;
  for (std::size_t n = 0; n <= basis.degree(); ++n) {
    for (std::size_t m = 0; m <= n; ++m) {
      const cplx g = inner(basis.node_values(n), basis.node_values(m), q.weights);
      worst = std::max(worst, std::abs(g - (n == m ? 1.0 : 0.0)));
    }
  }
  return worst;
}

double hessenberg_residual(const ArnoldiResult& r) {
  const auto& b = r.basis;
  const auto& q = r.quadrature;
  double worst = 0.0;
  for (std::size_t k = 1; k <= b.degree(); ++k) {
    std::vector<cplx> e(q.nodes.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      cplx acc = q.nodes[i] * b.node_values(k - 1)[i];
      for (std::size_t j = 1; j <= k + 1; ++j) acc -= r.hessenberg(j, k) * b.node_values(j - 1)[i];
      e[i] = acc;
    }
    worst = std::max(worst, norm(e, q.weights));
  }
  return worst;
}

double l2_norm(const std::vector<cplx>& coeffs, const PlanarQuadrature& q) {
  std::vector<cplx> v(q.nodes.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = evaluate_coefficients(coeffs, q.nodes[i]);
  return norm(v, q.weights);
}

void write_csv(std::ostream& out, const OrthonormalBasis& basis) {
  out << "n,i,re,im\n" << std::setprecision(17);
  for (std::size_t n = 0; n <= basis.degree(); ++n) {
    const auto& c = basis.coefficients(n);
    for (std::size_t i = 0; i < c.size(); ++i) {
      out << n << ',' << i << ',' << c[i].real() << ',' << c[i].imag() << "\n";
    }
  }
  out << "n,kappa\n";
  for (std::size_t n = 0; n <= basis.degree(); ++n) out << n << ',' << basis.kappa(n) << "\n";
}

}  // namespace opshift
