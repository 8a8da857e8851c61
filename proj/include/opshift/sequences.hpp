#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "opshift/error.hpp"

namespace opshift {

/// Verblunsky coefficients alpha_n (n >= 0) of a probability measure on the unit circle.
/// Index -1 returns the boundary convention alpha_{-1} = -1.
class VerblunskySequence {
 public:
  using Rule = std::function<cplx(std::size_t)>;

  VerblunskySequence(Rule rule, std::string name);

  static VerblunskySequence constant(cplx a);
  /// alpha_n = c / (n + 2)
  static VerblunskySequence decay(double c = 1.0);
  /// alpha_n = 1 - 1/(n + 2)
  static VerblunskySequence alpha_to_one();
  /// alpha_n = (1 - 1/(n + 1)) e^{i n^2}
  static VerblunskySequence oscillatory();
  /// alpha_n = (-1)^n a
  static VerblunskySequence alternating(double a);
  /// Explicit prefix, zero afterwards (Bernstein-Szego tail).
  static VerblunskySequence from_list(std::vector<cplx> values);
  /// Seeded, uniform in the disk of the given radius, zero after `length` terms.
  static VerblunskySequence random(std::uint64_t seed, double radius, std::size_t length);

  /// alpha_n; throws InvalidArgument if the rule leaves the open unit disk.
  cplx operator()(std::ptrdiff_t n) const;
  /// rho_n = sqrt(1 - |alpha_n|^2)
  double rho(std::size_t n) const;
  const std::string& name() const { return name_; }

 private:
  Rule rule_;
  std::string name_;
};

/// Jacobi parameters for a measure on the real line: off-diagonal a_n > 0 and diagonal
/// b_n, both 1-indexed. The declared suprema bound the support: |x| <= sup|b| + 2 sup a.
class JacobiArrays {
 public:
  using Rule = std::function<double(std::size_t)>;

  JacobiArrays(Rule a, Rule b, double sup_a, double sup_abs_b, std::string name);

  static JacobiArrays constant(double a, double b);
  static JacobiArrays free() { return constant(1.0, 0.0); }
  /// a_n = a + c/(n+1), b_n = b + c/(n+1)
  static JacobiArrays decay(double a, double b, double c);
  /// Explicit lists (a has entries a_1.., b has b_1..); each continues with its last value.
  static JacobiArrays from_lists(std::vector<double> a, std::vector<double> b);

  double a(std::size_t n) const;
  double b(std::size_t n) const;
  double sup_a() const { return sup_a_; }
  double sup_abs_b() const { return sup_abs_b_; }
  double support_bound() const { return sup_abs_b_ + 2.0 * sup_a_; }
  const std::string& name() const { return name_; }

 private:
  Rule a_;
  Rule b_;
  double sup_a_;
  double sup_abs_b_;
  std::string name_;
};

}  // namespace opshift
