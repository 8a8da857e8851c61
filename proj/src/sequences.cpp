#include "opshift/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <utility>

namespace opshift {

VerblunskySequence::VerblunskySequence(Rule rule, std::string name)
    : rule_(std::move(rule)), name_(std::move(name)) {}

VerblunskySequence VerblunskySequence::constant(cplx a) {
  if (std::abs(a) >= 1.0) throw Error(ErrorCode::InvalidArgument, "|alpha| must be < 1");
  return {[a](std::size_t) { return a; }, "constant"};
}

VerblunskySequence VerblunskySequence::decay(double c) {
  if (std::abs(c) >= 2.0) throw Error(ErrorCode::InvalidArgument, "decay requires |c| < 2");
  return {[c](std::size_t n) { return cplx(c / (static_cast<double>(n) + 2.0)); }, "decay"};
}

VerblunskySequence VerblunskySequence::alpha_to_one() {
  return {[](std::size_t n) { return cplx(1.0 - 1.0 / (static_cast<double>(n) + 2.0)); },
          "alpha_to_one"};
}

VerblunskySequence VerblunskySequence::oscillatory() {
  return {[](std::size_t n) {
            const double x = static_cast<double>(n);
            return (1.0 - 1.0 / (x + 1.0)) * std::polar(1.0, x * x);
          },
          "oscillatory"};
}

VerblunskySequence VerblunskySequence::alternating(double a) {
  if (std::abs(a) >= 1.0) throw Error(ErrorCode::InvalidArgument, "|alpha| must be < 1");
  return {[a](std::size_t n) { return cplx(n % 2 == 0 ? a : -a); }, "alternating"};
}

VerblunskySequence VerblunskySequence::from_list(std::vector<cplx> values) {
  for (const auto& v : values) {
    if (std::abs(v) >= 1.0) throw Error(ErrorCode::InvalidArgument, "|alpha| must be < 1");
  }
  auto shared = std::make_shared<const std::vector<cplx>>(std::move(values));
  return {[shared](std::size_t n) { return n < shared->size() ? (*shared)[n] : cplx(0.0); },
          "list"};
}

VerblunskySequence VerblunskySequence::random(std::uint64_t seed, double radius,
                                              std::size_t length) {
  if (radius <= 0.0 || radius >= 1.0) {
    throw Error(ErrorCode::InvalidArgument, "random Verblunsky radius must lie in (0, 1)");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<cplx> values(length);
  for (auto& v : values) {
    const double r = radius * std::sqrt(unit(rng));
    const double t = 2.0 * M_PI * unit(rng);
    v = std::polar(r, t);
  }
  auto seq = from_list(std::move(values));
  seq.name_ = "random";
  return seq;
}

cplx VerblunskySequence::operator()(std::ptrdiff_t n) const {
  if (n == -1) return cplx(-1.0);
  if (n < -1) throw Error(ErrorCode::IndexOutOfRange, "Verblunsky index below -1");
  const cplx a = rule_(static_cast<std::size_t>(n));
  if (!(std::abs(a) < 1.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "Verblunsky coefficient " + std::to_string(n) + " outside the unit disk");
  }
  return a;
}

double VerblunskySequence::rho(std::size_t n) const {
  const double a = std::abs((*this)(static_cast<std::ptrdiff_t>(n)));
  return std::sqrt((1.0 - a) * (1.0 + a));
}

JacobiArrays::JacobiArrays(Rule a, Rule b, double sup_a, double sup_abs_b, std::string name)
    : a_(std::move(a)),
      b_(std::move(b)),
      sup_a_(sup_a),
      sup_abs_b_(sup_abs_b),
      name_(std::move(name)) {}

JacobiArrays JacobiArrays::constant(double a, double b) {
  if (a <= 0.0) throw Error(ErrorCode::InvalidArgument, "a_n must be positive");
  return {[a](std::size_t) { return a; }, [b](std::size_t) { return b; }, a, std::abs(b),
          "constant"};
}

JacobiArrays JacobiArrays::decay(double a, double b, double c) {
  if (a <= 0.0 || a + c / 2.0 <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "a_n must stay positive");
  }
  const auto shift = [c](std::size_t n) { return c / (static_cast<double>(n) + 1.0); };
  return {[a, shift](std::size_t n) { return a + shift(n); },
          [b, shift](std::size_t n) { return b + shift(n); }, std::max(a, a + c / 2.0),
          std::max(std::abs(b), std::abs(b + c / 2.0)), "decay"};
}

JacobiArrays JacobiArrays::from_lists(std::vector<double> a, std::vector<double> b) {
  if (b.empty()) throw Error(ErrorCode::InvalidArgument, "b list must be non-empty");
  if (a.empty()) a.push_back(1.0);
  for (double v : a) {
    if (!(v > 0.0)) throw Error(ErrorCode::InvalidArgument, "a_n must be positive");
  }
  double sup_a = 0.0;
  double sup_b = 0.0;
  for (double v : a) sup_a = std::max(sup_a, v);
  for (double v : b) sup_b = std::max(sup_b, std::abs(v));
  auto as = std::make_shared<const std::vector<double>>(std::move(a));
  auto bs = std::make_shared<const std::vector<double>>(std::move(b));
  return {[as](std::size_t n) { return (*as)[std::min(n, as->size()) - 1]; },
          [bs](std::size_t n) { return (*bs)[std::min(n, bs->size()) - 1]; }, sup_a, sup_b, "list"};
}

double JacobiArrays::a(std::size_t n) const {
  if (n == 0) throw Error(ErrorCode::IndexOutOfRange, "Jacobi arrays are 1-indexed");
  const double v = a_(n);
  if (!(v > 0.0)) throw Error(ErrorCode::InvalidArgument, "a_n must be positive");
  return v;
}

double JacobiArrays::b(std::size_t n) const {
  if (n == 0) throw Error(ErrorCode::IndexOutOfRange, "Jacobi arrays are 1-indexed");
  return b_(n);
}

}  // namespace opshift
