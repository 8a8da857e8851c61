#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "opshift/asymptotics.hpp"

using namespace opshift;
using namespace opshift::app;

namespace {

// OPSHIFT_THREADS caps internal parallelism; unset means 1.
void apply_thread_env() {
  const char* env = std::getenv("OPSHIFT_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) {
    throw Error(ErrorCode::ConfigError,
                "'OPSHIFT_THREADS': expected a positive integer, got '" + std::string(env) + "'");
  }
  set_thread_cap(static_cast<std::size_t>(v));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonal polynomials and Hessenberg shift matrices: builds, limits and checks."};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  Overrides ov;
  app.add_option("--config", config_path, "JSON run configuration (schema 1)");
  app.add_option("--out", ov.out, "output directory");
  app.add_option("--degree", ov.degree, "maximal degree N");
  app.add_option("--window", ov.window, "tail length W for limit detection");
  app.add_option("--tol", ov.tol, "limit tolerance");
  app.add_option("--seed", ov.seed, "seed for sample points");
  app.add_option("--diag", ov.diag, "diagonals, e.g. -1,0,1 or 0:4");
  app.add_option("--moments", ov.moments, "moment orders, e.g. 1:4");

  struct Sub {
    const char* name;
    const char* help;
    int (*run)(const RunConfig&, std::ostream&);
  };
  const Sub subs[] = {
      {"build", "orthonormal basis and Hessenberg matrix (basis.csv, hessenberg.csv)", cmd_build},
      {"diagonals", "diagonal sequences and their limits", cmd_diagonals},
      {"ratio", "ratio-asymptotic series coefficients f_1..f_{J+1}", cmd_ratio},
      {"moments", "weak-limit moments", cmd_moments},
      {"symbol", "Toeplitz symbol with its cross-check", cmd_symbol},
      {"verify", "identity suite; exit 4 on any failure", cmd_verify},
  };
  std::vector<CLI::App*> handles;
  for (const auto& s : subs) handles.push_back(app.add_subcommand(s.name, s.help));

  CLI::App* examples =
      app.add_subcommand("examples", "run a built-in worked example; no name lists them");
  std::string example_name;
  examples->add_option("name", example_name, "example name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    apply_thread_env();
    if (examples->parsed()) {
      return cmd_examples(example_name.empty() ? std::nullopt : std::optional(example_name),
                          ov.degree, ov.out.value_or("opshift_out"), std::cout);
    }
    if (config_path.empty())
      throw Error(ErrorCode::ConfigError, "'--config': required for this command");
    const RunConfig cfg = load_config(config_path, ov);
    for (std::size_t i = 0; i < handles.size(); ++i) {
      if (handles[i]->parsed()) return subs[i].run(cfg, std::cout);
    }
  } catch (const Error& e) {
    std::cerr << "opshift: " << e.what() << "\n";
    return e.code() == ErrorCode::ConfigError ? kExitConfig : kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "opshift: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}
