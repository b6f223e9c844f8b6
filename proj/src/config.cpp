#include "specsplit/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "specsplit/errors.hpp"

namespace specsplit {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
std::string join(const std::vector<T>& v, const std::function<std::string(const T&)>& f) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + f(v[i]);
  return out;
}

double parse_double(const std::string& key, const std::string& text) {
  if (text == "inf") return INFINITY;
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    throw ConfigError("key '" + key + "': expected a number, got '" + text + "'");
  return v;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError("key '" + key + "': expected a non-negative integer, got '" + text + "'");
  return v;
}

std::string initial_kind_name(InitialKind k) {
  switch (k) {
    case InitialKind::gaussian: return "gaussian";
    case InitialKind::eigen_mix: return "eigen_mix";
    case InitialKind::rough: return "rough";
  }
  return "?";
}

struct Field {
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

#define SPECSPLIT_DOUBLE(name)                                                                      \
  {                                                                                                 \
#name, {[](ExperimentConfig& c, const std::string& v) { c.name = parse_double(#name, v); }, \
            [](const ExperimentConfig& c) { return format_double(c.name); } }                       \
  }
#define SPECSPLIT_SIZE(name)                                                                         \
  {                                                                                                  \
#name, {[](ExperimentConfig& c, const std::string& v) { c.name = parse_unsigned(#name, v); }, \
            [](const ExperimentConfig& c) { return std::to_string(c.name); } }                       \
  }
#define SPECSPLIT_STRING(name)                                                         \
  {                                                                                    \
#name, {[](ExperimentConfig& c, const std::string& v) { c.name = v; }, \
            [](const ExperimentConfig& c) { return c.name; } }                         \
  }

const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = {
      SPECSPLIT_SIZE(n_points),
      SPECSPLIT_DOUBLE(half_width),
      SPECSPLIT_STRING(potential),
      SPECSPLIT_DOUBLE(omega),
      SPECSPLIT_DOUBLE(potential_shift),
      SPECSPLIT_STRING(potential_file),
      SPECSPLIT_STRING(perturbation),
      SPECSPLIT_DOUBLE(perturbation_amplitude),
      SPECSPLIT_DOUBLE(perturbation_width),
      SPECSPLIT_STRING(perturbation_file),
      SPECSPLIT_DOUBLE(sigma),
      SPECSPLIT_DOUBLE(epsilon),
      {"initial_data",
       {[](ExperimentConfig& c, const std::string& v) {
          if (v == "gaussian") c.initial_data.kind = InitialKind::gaussian;
          else if (v == "eigen_mix") c.initial_data.kind = InitialKind::eigen_mix;
          else if (v == "rough") c.initial_data.kind = InitialKind::rough;
          else throw ConfigError("key 'initial_data': unknown kind '" + v + "'");
        },
        [](const ExperimentConfig& c) { return initial_kind_name(c.initial_data.kind); }}},
      {"gaussian_center",
       {[](ExperimentConfig& c, const std::string& v) { c.initial_data.center = parse_double("gaussian_center", v); },
        [](const ExperimentConfig& c) { return format_double(c.initial_data.center); }}},
      {"gaussian_width",
       {[](ExperimentConfig& c, const std::string& v) { c.initial_data.width = parse_double("gaussian_width", v); },
        [](const ExperimentConfig& c) { return format_double(c.initial_data.width); }}},
      {"eigen_coeffs",
       {[](ExperimentConfig& c, const std::string& v) {
          c.initial_data.coefficients.clear();
          for (const auto& item : split_list(v)) c.initial_data.coefficients.push_back(parse_double("eigen_coeffs", item));
        },
        [](const ExperimentConfig& c) {
          return join<double>(c.initial_data.coefficients, [](const double& x) { return format_double(x); });
        }}},
      {"rough_alpha",
       {[](ExperimentConfig& c, const std::string& v) { c.initial_data.alpha = parse_double("rough_alpha", v); },
        [](const ExperimentConfig& c) { return format_double(c.initial_data.alpha); }}},
      {"steppers",
       {[](ExperimentConfig& c, const std::string& v) {
          c.steppers.clear();
          for (const auto& item : split_list(v)) c.steppers.push_back(parse_stepper(item));
        },
        [](const ExperimentConfig& c) {
          return join<StepperKind>(c.steppers, [](const StepperKind& k) { return to_string(k); });
        }}},
      {"lambda_rules",
       {[](ExperimentConfig& c, const std::string& v) {
          c.lambda_rules.clear();
          for (const auto& item : split_list(v)) c.lambda_rules.push_back(LambdaRule::parse(item));
        },
        [](const ExperimentConfig& c) {
          return join<LambdaRule>(c.lambda_rules, [](const LambdaRule& r) { return r.name(); });
        }}},
      {"profile",
       {[](ExperimentConfig& c, const std::string& v) { c.profile = CutoffProfile::parse(v); },
        [](const ExperimentConfig& c) { return c.profile.name(); }}},
      SPECSPLIT_DOUBLE(tau0),
      SPECSPLIT_SIZE(ladder_depth),
      SPECSPLIT_DOUBLE(final_time),
      {"error_norms",
       {[](ExperimentConfig& c, const std::string& v) {
          c.error_norms = split_list(v);
          for (const auto& n : c.error_norms)
            if (n != "L2" && n != "calH1") throw ConfigError("key 'error_norms': unknown norm '" + n + "'");
        },
        [](const ExperimentConfig& c) {
          return join<std::string>(c.error_norms, [](const std::string& s) { return s; });
        }}},
      SPECSPLIT_DOUBLE(tau_ref),
      SPECSPLIT_DOUBLE(reference_tolerance),
      SPECSPLIT_DOUBLE(blowup_factor),
      SPECSPLIT_STRING(output_dir),
      SPECSPLIT_SIZE(seed),
      SPECSPLIT_SIZE(stride),
      {"probe_lambdas",
       {[](ExperimentConfig& c, const std::string& v) {
          c.probe_lambdas.clear();
          for (const auto& item : split_list(v)) c.probe_lambdas.push_back(parse_double("probe_lambdas", item));
        },
        [](const ExperimentConfig& c) {
          return join<double>(c.probe_lambdas, [](const double& x) { return format_double(x); });
        }}},
      SPECSPLIT_SIZE(probe_trials),
      SPECSPLIT_DOUBLE(probe_final_time),
      SPECSPLIT_DOUBLE(bernstein_p),
      SPECSPLIT_DOUBLE(bernstein_q),
      SPECSPLIT_DOUBLE(strichartz_q),
      SPECSPLIT_DOUBLE(strichartz_r),
  };
  return table;
}

#undef SPECSPLIT_DOUBLE
#undef SPECSPLIT_SIZE
#undef SPECSPLIT_STRING

}  // namespace

PotentialSpec ExperimentConfig::potential_spec() const {
  PotentialSpec spec;
  const Grid1D g = grid();
  if (potential == "harmonic") {
    spec.confining = HarmonicPotential{omega, potential_shift};
  } else if (potential == "tabulated") {
    if (potential_file.empty()) throw ConfigError("tabulated potential needs potential_file");
    spec.confining = read_potential_table(potential_file, g);
  } else {
    throw ConfigError("unknown potential '" + potential + "'");
  }
  if (perturbation == "none") {
    spec.perturbation = NoPerturbation{};
  } else if (perturbation == "gaussian") {
    spec.perturbation = GaussianPerturbation{perturbation_amplitude, perturbation_width};
  } else if (perturbation == "tabulated") {
    if (perturbation_file.empty()) throw ConfigError("tabulated perturbation needs perturbation_file");
    spec.perturbation = read_potential_table(perturbation_file, g);
  } else {
    throw ConfigError("unknown perturbation '" + perturbation + "'");
  }
  return spec;
}

RVector ExperimentConfig::ladder() const {
  RVector taus;
  for (std::size_t k = 0; k <= ladder_depth; ++k) taus.push_back(std::ldexp(tau0, -static_cast<int>(k)));
  return taus;
}

std::vector<SchemeChoice> ExperimentConfig::schemes() const {
  std::vector<SchemeChoice> out;
  for (auto s : steppers) {
    if (s == StepperKind::cutoff_lie) {
      for (const auto& r : lambda_rules) out.push_back({s, r});
    } else {
      out.push_back({s, LambdaRule{}});
    }
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (n_points < 8 || n_points % 2 != 0) throw ConfigError("n_points must be even and >= 8");
  if (!(half_width > 0.0)) throw ConfigError("half_width must be positive");
  if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
  if (epsilon != 1.0 && epsilon != -1.0 && epsilon != 0.0) throw ConfigError("epsilon must be -1, 0 or 1");
  if (!(tau0 > 0.0 && tau0 < 1.0)) throw ConfigError("tau0 must lie in (0, 1)");
  if (!(final_time > 0.0)) throw ConfigError("final_time must be positive");
  if (steppers.empty()) throw ConfigError("steppers must not be empty");
  if (lambda_rules.empty()) throw ConfigError("lambda_rules must not be empty");
  if (stride == 0) throw ConfigError("stride must be >= 1");
  if (!(blowup_factor > 1.0)) throw ConfigError("blowup_factor must exceed 1");
  if (!(reference_tolerance > 0.0)) throw ConfigError("reference_tolerance must be positive");
  if (initial_data.kind == InitialKind::gaussian && !(initial_data.width > 0.0))
    throw ConfigError("gaussian_width must be positive");
  if (initial_data.kind == InitialKind::eigen_mix &&
      (initial_data.coefficients.empty() || initial_data.coefficients.size() > n_points))
    throw ConfigError("eigen_coeffs must hold between 1 and n_points values");
  if (initial_data.kind == InitialKind::rough && !(initial_data.alpha > 0.0))
    throw ConfigError("rough_alpha must be positive");
  const RVector taus = ladder();
  for (double t : taus) step_count(final_time, t);
  if (!(tau_ref > 0.0) || tau_ref > taus.back() / 32.0 * (1.0 + 1e-12))
    throw ConfigError("tau_ref must not exceed the smallest ladder step / 32");
  step_count(tau0, tau_ref);
  if (probe_trials == 0) throw ConfigError("probe_trials must be >= 1");
  for (double l : probe_lambdas)
    if (!(l > 0.0)) throw ConfigError("probe_lambdas must be positive");
  if (!(bernstein_p >= 1.0) || bernstein_p > bernstein_q) throw ConfigError("need 1 <= bernstein_p <= bernstein_q");
}

std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [key, field] : fields()) out.emplace_back(key, field.get(cfg));
  return out;
}

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
  std::map<std::string, const Field*> lookup;
  for (const auto& [key, field] : fields()) lookup.emplace(key, &field);
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    const auto it = lookup.find(key);
    if (it == lookup.end()) throw ConfigError(where + ": unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError(where + ": key '" + key + "' given twice");
    try {
      it->second->set(cfg, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + ": " + e.what());
    } catch (const Error& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse_config(in, path);
}

std::string format_config(const ExperimentConfig& cfg) {
  std::string out;
  for (const auto& [key, value] : config_entries(cfg)) out += key + " = " + value + "\n";
  return out;
}

}  // namespace specsplit
