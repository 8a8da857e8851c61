#pragma once

// Run configuration for the opshift CLI: a JSON document (schema 1) plus flag overrides.
// Every schema violation is reported as ConfigError naming the offending key.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "opshift/hessenberg.hpp"
#include "opshift/measure.hpp"

namespace opshift::app {

struct RunConfig {
  nlohmann::json measure;  // validated measure document
  std::size_t degree = 40;
  std::size_t window = 25;
  double tol = 1e-6;
  std::uint64_t seed = 1;
  std::size_t terms = 8;  // J: number of series coefficients
  std::optional<LimitMethod> method;
  std::vector<std::ptrdiff_t> diag{-1, 0, 1, 2};
  std::vector<std::size_t> moments{1, 2, 3, 4};
  std::string out = "opshift_out";
};

/// Values given on the command line; they replace the corresponding config keys.
struct Overrides {
  std::optional<std::size_t> degree;
  std::optional<std::size_t> window;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> diag;     // "-1,0,2" or "0:3"
  std::optional<std::string> moments;  // "1,2,3" or "1:4"
};

RunConfig parse_config(const nlohmann::json& doc, const Overrides& overrides);
RunConfig load_config(const std::string& path, const Overrides& overrides);

/// Canonical JSON of the effective configuration (used for the provenance hash).
nlohmann::json effective_json(const RunConfig& cfg);
/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& bytes);

/// The measure the config describes. Planar kinds get quadratures exact to 2N + 1.
MeasureSpec build_measure(const RunConfig& cfg);

/// Hessenberg truncation of size N + 1: closed form (GGT / Jacobi) for plain circle and
/// line measures, Arnoldi otherwise.
HessenbergMatrix build_matrix(const RunConfig& cfg);

/// "a,b,c" or "lo:hi" (inclusive). `key` names the flag in diagnostics.
std::vector<std::ptrdiff_t> parse_index_list(const std::string& text, const std::string& key);

}  // namespace opshift::app
