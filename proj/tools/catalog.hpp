#pragma once

// Built-in worked examples. Each entry knows how to build its Hessenberg truncation at a
// given degree and which stored values `opshift examples <name>` compares against.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "opshift/hessenberg.hpp"

namespace opshift::app {

struct ExpectedValue {
  std::string label;
  cplx measured;
  cplx expected;
  double tol;
  std::string provenance;  // where the expected value comes from
  bool passed() const;
};

struct Example {
  std::string name;
  std::string description;
  std::size_t degree;  // default N
  double support_radius;
  std::function<HessenbergMatrix(std::size_t N)> build;
  std::function<std::vector<ExpectedValue>(std::size_t N)> check;
};

const std::vector<Example>& catalog();
/// Throws ConfigError for unknown names.
const Example& find_example(const std::string& name);

}  // namespace opshift::app
