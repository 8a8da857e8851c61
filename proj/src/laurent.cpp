#include "opshift/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <utility>

namespace opshift {

LaurentSeries::LaurentSeries(int top, std::vector<cplx> coeffs, double rho, bool exact)
    : top_(top), coeffs_(std::move(coeffs)), rho_(rho), exact_(exact) {
  if (coeffs_.empty()) throw Error(ErrorCode::InvalidArgument, "empty Laurent series");
  if (!(rho_ >= 0.0)) throw Error(ErrorCode::InvalidArgument, "rho must be nonnegative");
  for (const auto& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(ErrorCode::InvalidArgument, "non-finite Laurent coefficient");
    }
  }
}

LaurentSeries LaurentSeries::map(cplx lead, cplx constant, std::vector<cplx> tail, double rho,
                                 bool exact) {
  std::vector<cplx> coeffs;
  coeffs.reserve(tail.size() + 2);
  coeffs.push_back(lead);
  coeffs.push_back(constant);
  coeffs.insert(coeffs.end(), tail.begin(), tail.end());
  return {1, std::move(coeffs), rho, exact};
}

LaurentSeries LaurentSeries::one() { return {0, {cplx(1.0)}, 0.0, true}; }

cplx LaurentSeries::coeff(int power) const {
  if (power > top_) return 0.0;
  if (power < lowest_degree()) {
    if (exact_) return 0.0;
    throw Error(ErrorCode::DegreeExceeded, "coefficient of w^" + std::to_string(power) +
                                               " is beyond truncation order " +
                                               std::to_string(order()));
  }
  return coeffs_[static_cast<std::size_t>(top_ - power)];
}

LaurentSeries LaurentSeries::with_rho(double rho) const { return {top_, coeffs_, rho, exact_}; }

LaurentSeries LaurentSeries::truncated(int K) const {
  if (-K > top_) throw Error(ErrorCode::InvalidArgument, "truncation above the top degree");
  std::vector<cplx> out;
  bool dropped_nonzero = false;
  for (int p = top_; p >= -K; --p) {
    out.push_back(p >= lowest_degree() ? coeffs_[static_cast<std::size_t>(top_ - p)] : 0.0);
  }
  if (K < order()) {
    for (int p = -K - 1; p >= lowest_degree(); --p) {
      if (coeffs_[static_cast<std::size_t>(top_ - p)] != cplx(0.0)) dropped_nonzero = true;
    }
  }
  const bool exact = exact_ && !dropped_nonzero;
  if (K > order() && !exact_) {
    throw Error(ErrorCode::DegreeExceeded, "cannot extend a truncated series");
  }
  return {top_, std::move(out), rho_, exact};
}

LaurentSeries LaurentSeries::scaled(cplx factor) const {
  auto out = coeffs_;
  for (auto& c : out) c *= factor;
  return {top_, std::move(out), rho_, exact_};
}

LaurentSeries LaurentSeries::plus_constant(cplx shift) const {
  if (top_ < 0 || lowest_degree() > 0) {
    throw Error(ErrorCode::InvalidArgument, "series does not carry a constant term");
  }
  auto out = coeffs_;
  out[static_cast<std::size_t>(top_)] += shift;
  return {top_, std::move(out), rho_, exact_};
}

cplx laurent_eval(const LaurentSeries& s, cplx w) {
  // A finite Laurent polynomial converges on all of C \ {0}.
  if (s.exact() ? w == cplx(0.0) : !(std::abs(w) > s.rho())) {
    throw Error(ErrorCode::OutsideDomain, "|w| must exceed the series radius");
  }
  // Horner in 1/w starting from the lowest power; coeffs[i] ends up times w^{-i}.
  const auto coeffs = s.coefficients();
  const cplx inv = 1.0 / w;
  cplx acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * inv + *it;
  return acc * std::pow(w, s.top_degree());
}

LaurentSeries laurent_multiply(const LaurentSeries& a, const LaurentSeries& b) {
  const int top = a.top_degree() + b.top_degree();
  int lowest = a.lowest_degree() + b.lowest_degree();
  if (!a.exact()) lowest = std::max(lowest, b.top_degree() + a.lowest_degree());
  if (!b.exact()) lowest = std::max(lowest, a.top_degree() + b.lowest_degree());
  std::vector<cplx> out(static_cast<std::size_t>(top - lowest + 1), 0.0);
  for (int p = a.top_degree(); p >= a.lowest_degree(); --p) {
    const cplx ca = a.coeff(p);
    if (ca == cplx(0.0)) continue;
    for (int q = b.top_degree(); q >= b.lowest_degree(); --q) {
      const int r = p + q;
      if (r < lowest) break;
      out[static_cast<std::size_t>(top - r)] += ca * b.coeff(q);
    }
  }
  return {top, std::move(out), std::max(a.rho(), b.rho()), a.exact() && b.exact()};
}

LaurentSeries laurent_power(const LaurentSeries& s, std::size_t j) {
  LaurentSeries out = LaurentSeries::one().with_rho(s.rho());
  for (std::size_t i = 0; i < j; ++i) out = laurent_multiply(out, s);
  return out;
}

namespace series {

Power multiply(const Power& a, const Power& b, std::size_t n) {
  Power out(n, 0.0);
  for (std::size_t i = 0; i < std::min(a.size(), n); ++i) {
    if (a[i] == cplx(0.0)) continue;
    for (std::size_t k = 0; k < b.size() && i + k < n; ++k) out[i + k] += a[i] * b[k];
  }
  return out;
}

Power reciprocal(const Power& a, std::size_t n) {
  if (a.empty() || a[0] == cplx(0.0)) {
    throw Error(ErrorCode::ZeroLeadingCoefficient, "series reciprocal needs a nonzero constant");
  }
  Power out(n, 0.0);
  out[0] = 1.0 / a[0];
  for (std::size_t i = 1; i < n; ++i) {
    cplx acc = 0.0;
    for (std::size_t k = 1; k <= i && k < a.size(); ++k) acc += a[k] * out[i - k];
    out[i] = -acc / a[0];
  }
  return out;
}

Power compose(const Power& a, const Power& b, std::size_t n) {
  if (!b.empty() && b[0] != cplx(0.0)) {
    throw Error(ErrorCode::InvalidArgument, "inner series must vanish at zero");
  }
  Power out(n, 0.0);
  for (std::size_t i = std::min(a.size(), n); i-- > 0;) {
    out = multiply(out, b, n);
    out[0] += a[i];
  }
  return out;
}

Power derivative(const Power& a) {
  if (a.size() <= 1) return {0.0};
  Power out(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) out[i - 1] = static_cast<double>(i) * a[i];
  return out;
}

}  // namespace series

LaurentSeries ratio_inverse(const SeriesAtInfinity& f, std::size_t K, double rho) {
  if (f.size() == 0 || f.f[0] == cplx(0.0)) {
    throw Error(ErrorCode::ZeroLeadingCoefficient, "f_1 must be nonzero");
  }
  // With u = 1/z and fhat(t) = sum f_j t^j, the condition f(g(z)) = 1/z becomes
  // fhat(G(u)) = u for G(u) = 1/g(1/u); beta_k needs G through u^{k+2}.
  const std::size_t n = K + 3;
  if (f.size() < n - 1) {
    throw Error(ErrorCode::InsufficientData, "ratio_inverse to order " + std::to_string(K) +
                                                 " needs f_1..f_" + std::to_string(n - 1));
  }
  series::Power fhat(n, 0.0);
  for (std::size_t j = 1; j < n; ++j) fhat[j] = f.f[j - 1];
  const series::Power dfhat = series::derivative(fhat);

  series::Power G = {0.0, 1.0 / f.f[0]};
  std::size_t prec = 2;
  // Newton doubles the number of correct coefficients; one extra pass at full precision.
  bool final_pass = false;
  while (!final_pass) {
    if (prec == n) final_pass = true;
    prec = std::min(2 * prec, n);
    G.resize(prec, 0.0);
    series::Power residual = series::compose(fhat, G, prec);
    residual[1] -= 1.0;
    const series::Power slope = series::compose(dfhat, G, prec);
    const series::Power step = series::multiply(residual, series::reciprocal(slope, prec), prec);
    for (std::size_t i = 0; i < prec; ++i) G[i] -= step[i];
  }

  series::Power H(G.begin() + 1, G.end());  // G = u H(u)
  const series::Power R = series::reciprocal(H, K + 2);
  std::vector<cplx> tail(R.begin() + 2, R.end());
  return LaurentSeries::map(R[0], R[1], std::move(tail), rho);
}

cplx b_matrix_power(const LaurentSeries& g, std::size_t k) {
  if (g.top_degree() > 1) {
    throw Error(ErrorCode::InvalidArgument, "B matrix needs a series with leading power w");
  }
  // c^{(i+1)}_j = sum_{m=-1}^{j-1} beta_m c^{(i)}_{j-m}; each step loses one usable entry.
  std::vector<cplx> c(k + 1, 0.0);
  c[0] = 1.0;
  for (std::size_t step = 0; step < k; ++step) {
    std::vector<cplx> next(c.size() - 1, 0.0);
    for (std::size_t j = 1; j <= next.size(); ++j) {
      cplx acc = 0.0;
      for (int m = -1; m <= static_cast<int>(j) - 1; ++m) {
        acc += g.c(m) * c[j - static_cast<std::size_t>(m) - 1];
      }
      next[j - 1] = acc;
    }
    c = std::move(next);
  }
  return c[0];
}

cplx circle_average_power(const LaurentSeries& psi, std::size_t j, std::size_t grid) {
  if (grid == 0) throw Error(ErrorCode::InvalidArgument, "empty grid");
  std::vector<cplx> samples(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(grid);
    samples[i] = std::pow(laurent_eval(psi, std::polar(1.0, t)), static_cast<int>(j));
  }
  cplx acc = 0.0;
  for (const auto& s : samples) acc += s;
  return acc / static_cast<double>(grid);
}

cplx equilibrium_moments(const LaurentSeries& psi, std::size_t j) {
  if (!psi.exact() && !(psi.rho() < 1.0)) {
    throw Error(ErrorCode::DomainTooSmall, "the unit circle must lie in the series domain");
  }
  if (j == 0) return 1.0;
  const LaurentSeries power = laurent_power(psi, j);
  const cplx value = power.coeff(0);

  const int spread = std::max(power.top_degree(), power.order());
  const std::size_t grid = std::max<std::size_t>(4 * (j + 1), static_cast<std::size_t>(spread) + 2);
  const cplx check = circle_average_power(psi, j, grid);
  double scale = 0.0;
  for (const auto& c : psi.coefficients()) scale += std::abs(c);
  scale = std::max(1.0, std::pow(scale, static_cast<double>(j)));
  if (std::abs(value - check) > 1e-9 * scale) {
    throw Error(ErrorCode::CrossCheckFailed, "series moment and circle average disagree");
  }
  return value;
}

LaurentSeries joukowski(double c) {
  if (c < 0.0) throw Error(ErrorCode::InvalidArgument, "joukowski parameter must be >= 0");
  return LaurentSeries::map(1.0, 0.0, {cplx(c)}, std::sqrt(c), true);
}

LaurentSeries linear_map(double a, cplx b) {
  if (!(a > 0.0)) throw Error(ErrorCode::InvalidArgument, "linear map needs a > 0");
  return LaurentSeries::map(a, b, {}, 0.0, true);
}

void write_csv(std::ostream& out, const LaurentSeries& s) {
  out << "# K=" << s.order() << " rho=" << std::setprecision(17) << s.rho()
      << " exact=" << (s.exact() ? 1 : 0) << "\n";
  out << "k,re,im\n";
  for (int p = s.top_degree(); p >= s.lowest_degree(); --p) {
    const cplx c = s.coeff(p);
    out << -p << ',' << std::setprecision(17) << c.real() << ',' << c.imag() << "\n";
  }
}

}  // namespace opshift
