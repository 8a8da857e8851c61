#include "config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <memory>
#include <set>

#include "opshift/arnoldi.hpp"
#include "opshift/classical.hpp"
#include "opshift/laurent.hpp"

namespace opshift::app {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw Error(ErrorCode::ConfigError, "'" + key + "': " + what);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void only_keys(const json& obj, const std::string& path, std::set<std::string> allowed) {
  if (!obj.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) fail(join(path, key), "unknown key");
  }
}

const json& required(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.contains(key)) fail(join(path, key), "missing");
  return obj.at(key);
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) fail(key, "expected a number");
  return v.get<double>();
}

double number_or(const json& obj, const std::string& path, const std::string& key, double dflt) {
  return obj.contains(key) ? number(obj.at(key), join(path, key)) : dflt;
}

std::uint64_t unsigned_int(const json& v, const std::string& key) {
  if (!v.is_number_unsigned()) fail(key, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

bool boolean_or(const json& obj, const std::string& path, const std::string& key, bool dflt) {
  if (!obj.contains(key)) return dflt;
  if (!obj.at(key).is_boolean()) fail(join(path, key), "expected true or false");
  return obj.at(key).get<bool>();
}

// A number, or [re, im].
cplx complex_value(const json& v, const std::string& key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  fail(key, "expected a number or [re, im]");
}

std::vector<cplx> complex_list(const json& v, const std::string& key) {
  if (!v.is_array()) fail(key, "expected a list");
  std::vector<cplx> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(complex_value(v[i], key + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<double> real_list(const json& v, const std::string& key) {
  if (!v.is_array() || v.empty()) fail(key, "expected a non-empty list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(number(v[i], key + "[" + std::to_string(i) + "]"));
  return out;
}

std::string family_of(const json& obj, const std::string& path) {
  const json& f = required(obj, path, "family");
  if (!f.is_string()) fail(join(path, "family"), "expected a string");
  return f.get<std::string>();
}

VerblunskySequence verblunsky_rule(const json& v, const std::string& path) {
  if (v.is_array()) return VerblunskySequence::from_list(complex_list(v, path));
  const std::string family = family_of(v, path);
  if (family == "constant") {
    only_keys(v, path, {"family", "value"});
    return VerblunskySequence::constant(
        complex_value(required(v, path, "value"), join(path, "value")));
  }
  if (family == "decay") {
    only_keys(v, path, {"family", "c"});
    return VerblunskySequence::decay(number_or(v, path, "c", 1.0));
  }
  if (family == "alpha_to_one") {
    only_keys(v, path, {"family"});
    return VerblunskySequence::alpha_to_one();
  }
  if (family == "oscillatory") {
    only_keys(v, path, {"family"});
    return VerblunskySequence::oscillatory();
  }
  if (family == "alternating") {
    only_keys(v, path, {"family", "a"});
    return VerblunskySequence::alternating(number(required(v, path, "a"), join(path, "a")));
  }
  if (family == "random") {
    only_keys(v, path, {"family", "seed", "radius", "length"});
    return VerblunskySequence::random(
        unsigned_int(required(v, path, "seed"), join(path, "seed")),
        number(required(v, path, "radius"), join(path, "radius")),
        unsigned_int(required(v, path, "length"), join(path, "length")));
  }
  fail(join(path, "family"),
       "unknown family '" + family +
           "' (constant, decay, alpha_to_one, oscillatory, alternating, random)");
}

JacobiArrays jacobi_rule(const json& m, const std::string& path) {
  if (!m.contains("family")) {
    only_keys(m, path, {"kind", "a", "b", "atoms", "push_forward"});
    return JacobiArrays::from_lists(real_list(required(m, path, "a"), join(path, "a")),
                                    real_list(required(m, path, "b"), join(path, "b")));
  }
  const std::string family = family_of(m, path);
  if (family == "constant") {
    only_keys(m, path, {"kind", "family", "a", "b", "atoms", "push_forward"});
    return JacobiArrays::constant(number_or(m, path, "a", 1.0), number_or(m, path, "b", 0.0));
  }
  if (family == "decay") {
    only_keys(m, path, {"kind", "family", "a", "b", "c", "atoms", "push_forward"});
    return JacobiArrays::decay(number_or(m, path, "a", 1.0), number_or(m, path, "b", 0.0),
                               number_or(m, path, "c", 1.0));
  }
  fail(join(path, "family"), "unknown family '" + family + "' (constant, decay)");
}

void as_config(const std::string& key, const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    fail(key, e.what());
  }
}

void validate_measure(const json& m, const std::string& path);

void validate_common(const json& m, const std::string& path) {
  if (m.contains("atoms")) {
    const json& atoms = m.at("atoms");
    const std::string key = join(path, "atoms");
    if (!atoms.is_array()) fail(key, "expected a list");
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const std::string p = key + "[" + std::to_string(i) + "]";
      only_keys(atoms[i], p, {"z", "mass"});
      complex_value(required(atoms[i], p, "z"), join(p, "z"));
      if (!(number(required(atoms[i], p, "mass"), join(p, "mass")) > 0.0))
        fail(join(p, "mass"), "must be positive");
    }
  }
  if (m.contains("push_forward")) {
    const json& pf = m.at("push_forward");
    const std::string p = join(path, "push_forward");
    if (pf.contains("joukowski")) {
      only_keys(pf, p, {"joukowski"});
      if (!(number(pf.at("joukowski"), join(p, "joukowski")) > 0.0))
        fail(join(p, "joukowski"), "must be positive");
    } else {
      only_keys(pf, p, {"lead", "constant", "tail", "rho", "exact"});
      complex_value(required(pf, p, "lead"), join(p, "lead"));
      if (pf.contains("constant")) complex_value(pf.at("constant"), join(p, "constant"));
      if (pf.contains("tail")) complex_list(pf.at("tail"), join(p, "tail"));
      number_or(pf, p, "rho", 0.0);
      boolean_or(pf, p, "exact", false);
    }
  }
}

void validate_measure(const json& m, const std::string& path) {
  if (!m.is_object()) fail(path, "expected an object");
  const json& kind_v = required(m, path, "kind");
  if (!kind_v.is_string()) fail(join(path, "kind"), "expected a string");
  const std::string kind = kind_v.get<std::string>();
  if (kind == "disk") {
    only_keys(m, path, {"kind", "radius", "unit_mass", "atoms", "push_forward"});
    if (!(number_or(m, path, "radius", 1.0) > 0.0)) fail(join(path, "radius"), "must be positive");
    boolean_or(m, path, "unit_mass", false);
  } else if (kind == "annulus") {
    only_keys(m, path, {"kind", "r_in", "r_out", "unit_mass", "atoms", "push_forward"});
    const double r_in = number(required(m, path, "r_in"), join(path, "r_in"));
    const double r_out = number(required(m, path, "r_out"), join(path, "r_out"));
    if (!(r_in > 0.0 && r_in < r_out)) fail(join(path, "r_in"), "need 0 < r_in < r_out");
    boolean_or(m, path, "unit_mass", false);
  } else if (kind == "circle_arc") {
    only_keys(m, path, {"kind", "weights", "atoms", "push_forward"});
    if (m.contains("weights")) real_list(m.at("weights"), join(path, "weights"));
  } else if (kind == "verblunsky") {
    only_keys(m, path, {"kind", "alpha", "atoms", "push_forward"});
    const std::string key = join(path, "alpha");
    as_config(key, [&] {
      // Rules are lazy; probe a prefix so an out-of-disk value is a config error, not a
      // numerical failure halfway through a run.
      const VerblunskySequence alpha = verblunsky_rule(required(m, path, "alpha"), key);
      for (std::ptrdiff_t n = 0; n < 64; ++n) alpha(n);
    });
  } else if (kind == "jacobi") {
    as_config(path, [&] {
      const JacobiArrays J = jacobi_rule(m, path);
      for (std::size_t n = 1; n <= 64; ++n) {
        J.a(n);
        J.b(n);
      }
    });
  } else if (kind == "mixture") {
    only_keys(m, path, {"kind", "parts", "atoms", "push_forward"});
    const json& parts = required(m, path, "parts");
    const std::string key = join(path, "parts");
    if (!parts.is_array() || parts.empty()) fail(key, "expected a non-empty list");
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const std::string p = key + "[" + std::to_string(i) + "]";
      only_keys(parts[i], p, {"scale", "measure"});
      if (!(number_or(parts[i], p, "scale", 1.0) > 0.0)) fail(join(p, "scale"), "must be positive");
      validate_measure(required(parts[i], p, "measure"), join(p, "measure"));
    }
  } else {
    fail(join(path, "kind"),
         "unknown kind '" + kind + "' (disk, annulus, circle_arc, verblunsky, jacobi, mixture)");
  }
  validate_common(m, path);
}

MeasureSpec measure_from(const json& m, std::size_t N, const std::string& path) {
  const std::string kind = m.at("kind").get<std::string>();
  const std::size_t degree = 2 * N + 1;
  std::optional<MeasureSpec> spec;
  try {
    if (kind == "disk") {
      spec = make_disk_area(number_or(m, path, "radius", 1.0), degree,
                            boolean_or(m, path, "unit_mass", false));
    } else if (kind == "annulus") {
      spec = make_annulus_area(m.at("r_in").get<double>(), m.at("r_out").get<double>(), degree,
                               boolean_or(m, path, "unit_mass", false));
    } else if (kind == "circle_arc") {
      if (m.contains("weights")) {
        const auto w = real_list(m.at("weights"), join(path, "weights"));
        spec = make_circle_arc(w, degree);
      } else {
        spec = make_circle_lebesgue(degree + 1);
      }
    } else if (kind == "verblunsky") {
      spec = make_verblunsky(verblunsky_rule(m.at("alpha"), join(path, "alpha")));
    } else if (kind == "jacobi") {
      spec = make_jacobi(jacobi_rule(m, path));
    } else {
      std::vector<MixturePart> parts;
      const json& list = m.at("parts");
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string p = join(path, "parts") + "[" + std::to_string(i) + "]";
        parts.push_back({number_or(list[i], p, "scale", 1.0),
                         std::make_shared<const MeasureSpec>(
                             measure_from(list[i].at("measure"), N, join(p, "measure")))});
      }
      spec = mix(parts);
    }
    if (m.contains("atoms")) {
      std::vector<PointMass> atoms;
      for (const json& a : m.at("atoms"))
        atoms.push_back({complex_value(a.at("z"), "z"), a.at("mass").get<double>()});
      spec = add_point_masses(*spec, atoms);
    }
    if (m.contains("push_forward")) {
      const json& pf = m.at("push_forward");
      const std::string p = join(path, "push_forward");
      LaurentSeries psi =
          pf.contains("joukowski")
              ? joukowski(pf.at("joukowski").get<double>())
              : LaurentSeries::map(
                    complex_value(pf.at("lead"), join(p, "lead")),
                    pf.contains("constant") ? complex_value(pf.at("constant"), p) : 0.0,
                    pf.contains("tail") ? complex_list(pf.at("tail"), p) : std::vector<cplx>{},
                    number_or(pf, p, "rho", 0.0), boolean_or(pf, p, "exact", false));
      spec = push_forward(*spec, psi);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    fail(path, e.what());
  }
  return *spec;
}

std::size_t size_value(const json& doc, const std::string& key, std::size_t dflt) {
  return doc.contains(key) ? static_cast<std::size_t>(unsigned_int(doc.at(key), key)) : dflt;
}

std::string index_list_text(const json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (!v.is_array()) fail(key, "expected a list of integers or a \"lo:hi\" string");
  std::string text;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) fail(key + "[" + std::to_string(i) + "]", "expected an integer");
    text += (i ? "," : "") + std::to_string(v[i].get<long long>());
  }
  return text;
}

}  // namespace

std::vector<std::ptrdiff_t> parse_index_list(const std::string& text, const std::string& key) {
  auto to_int = [&](std::string_view s) {
    std::ptrdiff_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      fail(key, "cannot parse '" + std::string(s) + "' as an integer");
    }
    return v;
  };
  std::vector<std::ptrdiff_t> out;
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    const std::ptrdiff_t lo = to_int(std::string_view(text).substr(0, colon));
    const std::ptrdiff_t hi = to_int(std::string_view(text).substr(colon + 1));
    if (hi < lo) fail(key, "empty range " + text);
    for (std::ptrdiff_t j = lo; j <= hi; ++j) out.push_back(j);
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    out.push_back(to_int(std::string_view(text).substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

RunConfig parse_config(const json& doc, const Overrides& o) {
  only_keys(doc, "",
            {"schema", "measure", "degree", "window", "tol", "seed", "terms", "method", "diag",
             "moments", "out"});
  const json& schema = required(doc, "", "schema");
  if (!schema.is_number_integer() || schema.get<int>() != 1)
    fail("schema", "only schema 1 is supported");

  RunConfig cfg;
  cfg.measure = required(doc, "", "measure");
  validate_measure(cfg.measure, "measure");
  cfg.degree = o.degree.value_or(size_value(doc, "degree", cfg.degree));
  cfg.window = o.window.value_or(size_value(doc, "window", cfg.window));
  cfg.terms = size_value(doc, "terms", cfg.terms);
  cfg.tol = o.tol.value_or(doc.contains("tol") ? number(doc.at("tol"), "tol") : cfg.tol);
  cfg.seed =
      o.seed.value_or(doc.contains("seed") ? unsigned_int(doc.at("seed"), "seed") : cfg.seed);
  if (doc.contains("out")) {
    if (!doc.at("out").is_string()) fail("out", "expected a string");
    cfg.out = doc.at("out").get<std::string>();
  }
  if (o.out) cfg.out = *o.out;
  if (doc.contains("method")) {
    const json& m = doc.at("method");
    if (m == "cauchy") {
      cfg.method = LimitMethod::Cauchy;
    } else if (m == "extrapolated") {
      cfg.method = LimitMethod::Extrapolated;
    } else {
      fail("method", "expected \"cauchy\" or \"extrapolated\"");
    }
  }

  const std::string diag_key = o.diag ? "--diag" : "diag";
  if (o.diag || doc.contains("diag")) {
    cfg.diag =
        parse_index_list(o.diag ? *o.diag : index_list_text(doc.at("diag"), "diag"), diag_key);
    for (auto j : cfg.diag) {
      if (j < -1) fail(diag_key, "diagonal index must be >= -1");
    }
  }
  const std::string mom_key = o.moments ? "--moments" : "moments";
  if (o.moments || doc.contains("moments")) {
    cfg.moments.clear();
    for (auto j : parse_index_list(
             o.moments ? *o.moments : index_list_text(doc.at("moments"), "moments"), mom_key)) {
      if (j < 1) fail(mom_key, "moment order must be >= 1");
      cfg.moments.push_back(static_cast<std::size_t>(j));
    }
  }

  if (cfg.degree < 1) fail(o.degree ? "--degree" : "degree", "must be at least 1");
  if (cfg.window < 7) fail(o.window ? "--window" : "window", "must be at least 7");
  if (!(cfg.tol > 0.0)) fail(o.tol ? "--tol" : "tol", "must be positive");
  return cfg;
}

RunConfig load_config(const std::string& path, const Overrides& overrides) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "'--config': cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, "'--config': " + path + " is not valid JSON: " + e.what());
  }
  return parse_config(doc, overrides);
}

json effective_json(const RunConfig& cfg) {
  json j;
  j["schema"] = 1;
  j["measure"] = cfg.measure;
  j["degree"] = cfg.degree;
  j["window"] = cfg.window;
  j["tol"] = cfg.tol;
  j["seed"] = cfg.seed;
  j["terms"] = cfg.terms;
  if (cfg.method) j["method"] = *cfg.method == LimitMethod::Cauchy ? "cauchy" : "extrapolated";
  j["diag"] = cfg.diag;
  j["moments"] = cfg.moments;
  return j;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

MeasureSpec build_measure(const RunConfig& cfg) {
  return measure_from(cfg.measure, cfg.degree, "measure");
}

HessenbergMatrix build_matrix(const RunConfig& cfg) {
  const json& m = cfg.measure;
  const bool plain = !m.contains("atoms") && !m.contains("push_forward");
  const std::string kind = m.at("kind").get<std::string>();
  if (plain && kind == "verblunsky")
    return ggt_matrix(verblunsky_rule(m.at("alpha"), "measure.alpha"), cfg.degree);
  if (plain && kind == "jacobi") return jacobi_matrix(jacobi_rule(m, "measure"), cfg.degree);
  return arnoldi(build_measure(cfg), cfg.degree).hessenberg;
}

}  // namespace opshift::app
