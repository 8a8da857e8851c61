#include "commands.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>

#include "catalog.hpp"
#include "opshift/arnoldi.hpp"
#include "opshift/asymptotics.hpp"
#include "opshift/classical.hpp"
#include "opshift/laurent.hpp"

#ifndef OPSHIFT_VERSION
#define OPSHIFT_VERSION "0.0.0"
#endif

namespace opshift::app {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt(cplx v) {
  if (std::abs(v.imag()) <= 1e-14 * std::max(1.0, std::abs(v.real()))) return fmt(v.real());
  return fmt(v.real()) + (v.imag() < 0 ? " - " : " + ") + fmt(std::abs(v.imag())) + "i";
}

std::string verdict(const LimitEstimate& e) {
  return std::string(e.converged ? "converged" : "NOT converged") + ", residual " + fmt(e.residual);
}

const char* limits_header = "j,converged,re,im,residual,W,tol\n";

OutputSet outputs_for(const RunConfig& cfg, const std::string& command) {
  return {cfg.out, provenance_header(command, effective_json(cfg).dump())};
}

struct Invariant {
  std::string name;
  bool applicable = true;
  double residual = 0.0;
  double tol = 0.0;
  std::string detail;
  bool passed() const { return !applicable || residual <= tol; }
};

Invariant det_cramer(const HessenbergMatrix& M, double radius, std::uint64_t seed) {
  Invariant inv{"det/Cramer corner", true, 0.0, 1e-10, ""};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  for (int p = 0; p < 5; ++p) {
    const cplx z = std::polar(2.0 * radius + 1.0, angle(rng));
    for (std::size_t n = 1; n <= M.dim(); ++n) {
      const cplx ratio = char_poly(M, n - 1, z) / char_poly(M, n, z);
      const cplx corner = resolvent_corner(M, n, z);
      inv.residual =
          std::max(inv.residual, std::abs(corner - ratio) / std::max(std::abs(ratio), 1e-300));
    }
  }
  inv.detail = "max relative error over 5 seeded points, n = 1.." + std::to_string(M.dim());
  return inv;
}

Invariant lemma_paths(const HessenbergMatrix& M, std::uint64_t seed) {
  Invariant inv{"repeated-index collapse", true, 0.0, 1e-8, ""};
  const std::size_t D = M.dim();
  if (D < 3 || !M.has_kappa()) {
    inv.applicable = false;
    inv.detail = "needs dimension >= 3 and kappa";
    return inv;
  }
  std::mt19937_64 rng(seed);
  for (int t = 0; t < 100; ++t) {
    // a, a-1, ..., lo, then up to hi >= a and down by one back to a.
    const std::size_t a = std::uniform_int_distribution<std::size_t>(2, D - 1)(rng);
    const std::size_t lo = std::uniform_int_distribution<std::size_t>(1, a - 1)(rng);
    const std::size_t hi = std::uniform_int_distribution<std::size_t>(a, D)(rng);
    std::vector<std::size_t> path;
    for (std::size_t i = a; i >= lo; --i) path.push_back(i);
    for (std::size_t i = hi; i >= a; --i) path.push_back(i);
    const RepeatCheck r = lemma_repeat_check(M, path);
    inv.residual = std::max(
        inv.residual, std::abs(r.product - r.collapsed) / std::max(std::abs(r.collapsed), 1.0));
  }
  inv.detail = "100 seeded excursions, error relative to max(|collapsed|, 1)";
  return inv;
}

Invariant closed_form_agreement(const RunConfig& cfg, const HessenbergMatrix& M) {
  Invariant inv{"closed form vs Arnoldi", true, 0.0, 1e-8, ""};
  const auto& m = cfg.measure;
  const std::string kind = m.at("kind").get<std::string>();
  if (m.contains("atoms") || m.contains("push_forward") ||
      (kind != "verblunsky" && kind != "jacobi")) {
    inv.applicable = false;
    inv.detail = "only for plain verblunsky / jacobi measures";
    return inv;
  }
  const HessenbergMatrix A = arnoldi(build_measure(cfg), cfg.degree).hessenberg;
  for (std::size_t k = 1; k <= M.dim(); ++k) {
    for (std::size_t j = 1; j <= std::min(k + 1, M.dim()); ++j) {
      inv.residual = std::max(inv.residual, std::abs(M(j, k) - A(j, k)));
    }
  }
  inv.detail =
      (kind == "verblunsky" ? "GGT" : "Jacobi") + std::string(" entries, max abs difference");
  return inv;
}

Invariant zero_counting_bound(const HessenbergMatrix& M, double bound) {
  Invariant inv{"zero-counting bound 2j|M|/n", true, 0.0, 1.0, ""};
  if (M.dim() < 4) {
    inv.applicable = false;
    inv.detail = "needs dimension >= 4";
    return inv;
  }
  std::size_t checks = 0;
  for (std::size_t n = 1; n + 3 <= M.dim(); ++n) {
    for (std::size_t j = 1; j <= 4; ++j) {
      const BoundCheck b = weakzero_bound_check(M, n, j, bound);
      inv.residual = std::max(inv.residual, b.lhs / b.rhs);
      ++checks;
    }
  }
  inv.detail = std::to_string(checks) + " (n, j) pairs, max lhs/rhs with |M| <= " + fmt(bound);
  return inv;
}

}  // namespace

std::string version() { return OPSHIFT_VERSION; }

std::ostream& OutputSet::file(const std::string& name) {
  auto [it, inserted] = files_.try_emplace(name);
  if (inserted) it->second << header_ << "\n";
  return it->second;
}

void OutputSet::commit() const {
  fs::create_directories(dir_);
  for (const auto& [name, content] : files_) {
    const fs::path target = fs::path(dir_) / name;
    const fs::path tmp = fs::path(dir_) / (name + ".tmp");
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << content.str();
      out.flush();
      if (!out) {
        fs::remove(tmp);
        throw Error(ErrorCode::ConfigError, "'--out': cannot write " + tmp.string());
      }
    }
    fs::rename(tmp, target);
  }
}

std::string provenance_header(const std::string& command, const std::string& canonical) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, fnv1a(canonical));
  return "# opshift " + version() + " " + command + " config=" + hash;
}

int cmd_build(const RunConfig& cfg, std::ostream& log) {
  const ArnoldiResult r = arnoldi(build_measure(cfg), cfg.degree);
  OutputSet out = outputs_for(cfg, "build");
  write_csv(out.file("basis.csv"), r.basis);
  write_csv(out.file("hessenberg.csv"), r.hessenberg);
  out.commit();
  log << "hessenberg: " << r.hessenberg.dim() << " x " << r.hessenberg.dim() << "\n"
      << "gram residual: " << fmt(gram_residual(r.basis, r.quadrature)) << "\n"
      << "wrote basis.csv, hessenberg.csv to " << cfg.out << "\n";
  return kExitOk;
}

int cmd_diagonals(const RunConfig& cfg, std::ostream& log) {
  const HessenbergMatrix M = build_matrix(cfg);
  const LimitMethod method = cfg.method.value_or(LimitMethod::Cauchy);
  OutputSet out = outputs_for(cfg, "diagonals");
  write_diagonals_csv(out.file("diagonals.csv"), M, cfg.diag, false);
  std::ostream& limits = out.file("limits.csv");
  limits << limits_header;
  std::ostream* scaled = nullptr;
  if (M.has_kappa()) {
    write_diagonals_csv(out.file("scaled_diagonals.csv"), M, cfg.diag, true);
    scaled = &out.file("scaled_limits.csv");
    *scaled << limits_header;
  }
  for (const auto j : cfg.diag) {
    const LimitEstimate e = diagonal_limit(M, j, false, cfg.window, cfg.tol, method);
    write_limit_row(limits, j, e);
    log << "diagonal " << j << ": " << fmt(e.limit) << " (" << verdict(e) << ")";
    if (scaled) {
      const LimitEstimate s = diagonal_limit(M, j, true, cfg.window, cfg.tol, method);
      write_limit_row(*scaled, j, s);
      log << "; scaled: " << fmt(s.limit) << " (" << verdict(s) << ")";
    }
    log << "\n";
  }
  out.commit();
  return kExitOk;
}

int cmd_ratio(const RunConfig& cfg, std::ostream& log) {
  const HessenbergMatrix M = build_matrix(cfg);
  const RatioReport r =
      ratio_series(M, cfg.terms, cfg.window, cfg.tol, cfg.method.value_or(LimitMethod::Cauchy));
  OutputSet out = outputs_for(cfg, "ratio");
  std::ostream& csv = out.file("ratio.csv");
  csv << "j,re,im,converged,residual\n" << std::setprecision(17);
  for (std::size_t j = 1; j <= r.f_est.size(); ++j) {
    const LimitEstimate& e = j == 1 ? r.leading : r.corner[j - 2];
    csv << j << ',' << r.f_est[j].real() << ',' << r.f_est[j].imag() << ',' << (e.converged ? 1 : 0)
        << ',' << e.residual << "\n";
    log << "f_" << j << " = " << fmt(r.f_est[j]) << " (" << verdict(e) << ")\n";
  }
  log << "liminf kappa_n/kappa_{n+1} > 0: " << (r.posinf ? "yes" : "no") << " (|M_{n+1,n}|^2 -> "
      << fmt(r.subdiagonal_squared.limit) << ")\n";
  out.commit();
  return kExitOk;
}

int cmd_moments(const RunConfig& cfg, std::ostream& log) {
  const HessenbergMatrix M = build_matrix(cfg);
  OutputSet out = outputs_for(cfg, "moments");
  std::ostream& csv = out.file("moments.csv");
  csv << limits_header;
  for (const std::size_t j : cfg.moments) {
    const LimitEstimate e =
        weak_moment_sequence(M, j, cfg.window, cfg.tol, cfg.method.value_or(LimitMethod::Cauchy));
    write_limit_row(csv, static_cast<std::ptrdiff_t>(j), e);
    log << "moment " << j << ": " << fmt(e.limit) << " (" << verdict(e) << ")\n";
  }
  out.commit();
  return kExitOk;
}

int cmd_symbol(const RunConfig& cfg, std::ostream& log) {
  const HessenbergMatrix M = build_matrix(cfg);
  const SymbolReport s = symbol_extract(M, cfg.terms, cfg.window, cfg.tol,
                                        cfg.method.value_or(LimitMethod::Extrapolated));
  OutputSet out = outputs_for(cfg, "symbol");
  write_csv(out.file("symbol.csv"), s.symbol);
  write_csv(out.file("symbol_from_ratio.csv"), s.from_ratio);
  std::ostream& limits = out.file("symbol_limits.csv");
  limits << limits_header;
  for (std::size_t idx = 0; idx < s.diagonals.size(); ++idx) {
    const int k = static_cast<int>(idx) - 1;
    write_limit_row(limits, k, s.diagonals[idx]);
    log << "beta_" << k << " = " << fmt(s.symbol.c(k)) << " (" << verdict(s.diagonals[idx])
        << ")\n";
  }
  log << "cross-check residual: " << fmt(s.cross_residual) << "\n";
  out.commit();
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& log) {
  const HessenbergMatrix M = build_matrix(cfg);
  const double radius = build_measure(cfg).support_radius();
  const std::vector<Invariant> suite = {
      det_cramer(M, radius, cfg.seed),
      lemma_paths(M, cfg.seed),
      closed_form_agreement(cfg, M),
      zero_counting_bound(M, norm_bound(M, radius).bound),
  };
  OutputSet out = outputs_for(cfg, "verify");
  std::ostream& csv = out.file("verify.csv");
  csv << "invariant,status,residual,tol\n" << std::setprecision(17);
  bool ok = true;
  for (const auto& inv : suite) {
    const std::string status = !inv.applicable ? "SKIP" : inv.passed() ? "PASS" : "FAIL";
    ok = ok && inv.passed();
    csv << inv.name << ',' << status << ',' << inv.residual << ',' << inv.tol << "\n";
    log << status << "  " << inv.name;
    if (inv.applicable)
      log << ": residual " << fmt(inv.residual) << " (tol " << fmt(inv.tol) << ")";
    log << "  [" << inv.detail << "]\n";
  }
  out.commit();
  return ok ? kExitOk : kExitMismatch;
}

int cmd_examples(const std::optional<std::string>& name, std::optional<std::size_t> degree,
                 const std::string& out_dir, std::ostream& log) {
  if (!name) {
    for (const auto& e : catalog())
      log << e.name << "  (N = " << e.degree << ")  " << e.description << "\n";
    return kExitOk;
  }
  const Example& ex = find_example(*name);
  const std::size_t N = degree.value_or(ex.degree);
  const auto rows = ex.check(N);
  OutputSet out(out_dir, provenance_header("examples", ex.name + " N=" + std::to_string(N)));
  std::ostream& csv = out.file("example_" + ex.name + ".csv");
  csv << "label,re,im,expected_re,expected_im,tol,passed,provenance\n" << std::setprecision(17);
  bool ok = true;
  for (const auto& r : rows) {
    ok = ok && r.passed();
    csv << '"' << r.label << "\"," << r.measured.real() << ',' << r.measured.imag() << ','
        << r.expected.real() << ',' << r.expected.imag() << ',' << r.tol << ','
        << (r.passed() ? 1 : 0) << ",\"" << r.provenance << "\"\n";
    log << (r.passed() ? "PASS  " : "FAIL  ") << r.label << ": " << fmt(r.measured) << " vs "
        << fmt(r.expected) << " (tol " << fmt(r.tol) << "; " << r.provenance << ")\n";
  }
  out.commit();
  log << ex.name << ": " << (ok ? "all values match" : "MISMATCH") << "\n";
  return ok ? kExitOk : kExitMismatch;
}

}  // namespace opshift::app
