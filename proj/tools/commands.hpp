#pragma once

// Subcommands of the opshift CLI. Each returns the process exit status:
//   0 success, 2 configuration error, 3 numerical failure, 4 verification mismatch.
// Output files are assembled in memory and only land in the output directory (through a
// temporary file and a rename) once the whole command has succeeded.

#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "config.hpp"

namespace opshift::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitMismatch = 4;

std::string version();

class OutputSet {
 public:
  OutputSet(std::string dir, std::string header)
      : dir_(std::move(dir)), header_(std::move(header)) {}

  /// Stream for `name` inside the output directory, already carrying the provenance header.
  std::ostream& file(const std::string& name);
  /// Writes every file as name.tmp and renames it into place.
  void commit() const;

 private:
  std::string dir_;
  std::string header_;
  std::map<std::string, std::ostringstream> files_;
};

/// "# opshift <version> <command> config=<fnv1a hex>"
std::string provenance_header(const std::string& command, const std::string& canonical);

int cmd_build(const RunConfig& cfg, std::ostream& log);
int cmd_diagonals(const RunConfig& cfg, std::ostream& log);
int cmd_ratio(const RunConfig& cfg, std::ostream& log);
int cmd_moments(const RunConfig& cfg, std::ostream& log);
int cmd_symbol(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const RunConfig& cfg, std::ostream& log);
/// Without a name, lists the catalog.
int cmd_examples(const std::optional<std::string>& name, std::optional<std::size_t> degree,
                 const std::string& out_dir, std::ostream& log);

}  // namespace opshift::app
