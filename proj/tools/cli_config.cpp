#include "cli_config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "wfl/errors.hpp"

namespace wfl::cli {

using json = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_real(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (t.empty()) throw UsageError("empty number in " + what);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw UsageError("cannot parse '" + t + "' in " + what);
  }
  if (used != t.size()) throw UsageError("trailing characters in '" + t + "' in " + what);
  return v;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

template <typename T>
T get(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const std::exception&) {
    throw UsageError("config key '" + key + "' has the wrong type");
  }
}

using Setter = std::function<void(RunConfig&, const json&, const std::string&)>;

template <typename T, typename M>
Setter field(M RunConfig::*member) {
  return [member](RunConfig& c, const json& j, const std::string& key) { c.*member = get<T>(j, key); };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"model.g", field<double>(&RunConfig::g)},
      {"model.mass", field<double>(&RunConfig::mass)},
      {"geometry.points", field<std::vector<std::string>>(&RunConfig::points)},
      {"geometry.zeta", field<std::string>(&RunConfig::zeta)},
      {"geometry.n", field<int>(&RunConfig::n)},
      {"geometry.k", field<int>(&RunConfig::k)},
      {"geometry.l", field<double>(&RunConfig::l)},
      {"geometry.eta", field<std::string>(&RunConfig::eta)},
      {"geometry.direction", field<std::string>(&RunConfig::direction)},
      {"geometry.xi", field<std::vector<std::string>>(&RunConfig::xi)},
      {"geometry.T", field<double>(&RunConfig::T)},
      {"geometry.gram_points", field<int>(&RunConfig::gram_points)},
      {"series.cutoff", field<int>(&RunConfig::cutoff)},
      {"series.variant", field<std::string>(&RunConfig::variant)},
      {"pairing.r", field<int>(&RunConfig::r)},
      {"pairing.series", field<bool>(&RunConfig::pair_series)},
      {"pairing.width", field<double>(&RunConfig::width)},
      {"pairing.spacing", field<double>(&RunConfig::spacing)},
      {"sweep.lambda_min", field<double>(&RunConfig::lambda_min)},
      {"sweep.lambda_max", field<double>(&RunConfig::lambda_max)},
      {"sweep.lambda_count", field<int>(&RunConfig::lambda_count)},
      {"sweep.epsilons", field<std::vector<double>>(&RunConfig::epsilons)},
      {"sweep.nus", field<std::vector<int>>(&RunConfig::nus)},
      {"sweep.norm_l", field<double>(&RunConfig::norm_l)},
      {"sweep.norm_N", field<int>(&RunConfig::norm_N)},
      {"sweep.kernel", field<std::string>(&RunConfig::kernel)},
      {"sweep.kernel_scale", field<double>(&RunConfig::kernel_scale)},
      {"verify.suite", field<std::string>(&RunConfig::suite)},
      {"verify.samples", field<int>(&RunConfig::samples)},
      {"seed", field<std::uint64_t>(&RunConfig::seed)},
      {"quadrature.max_radial_momentum",
       [](RunConfig& c, const json& j, const std::string& k) { c.quadrature.max_radial_momentum = get<double>(j, k); }},
      {"quadrature.node_count",
       [](RunConfig& c, const json& j, const std::string& k) { c.quadrature.node_count = get<int>(j, k); }},
      {"quadrature.tail_tolerance",
       [](RunConfig& c, const json& j, const std::string& k) { c.quadrature.tail_tolerance = get<double>(j, k); }},
      {"inputs", field<std::vector<std::string>>(&RunConfig::inputs)},
      {"output.path", field<std::string>(&RunConfig::output_path)},
      {"output.format", field<std::string>(&RunConfig::format)},
      {"output.timing", field<bool>(&RunConfig::timing)},
      {"threads", field<int>(&RunConfig::threads)},
  };
  return table;
}

void merge_at(RunConfig& cfg, const json& j, const std::string& prefix) {
  for (const auto& [key, value] : j.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (path == "command" || path == "version") continue;
    const auto& table = setters();
    const auto it = table.find(path);
    if (it != table.end()) {
      it->second(cfg, value, path);
    } else if (value.is_object()) {
      merge_at(cfg, value, path);
    } else {
      throw UsageError("unknown config key '" + path + "'");
    }
  }
}

}  // namespace

void merge_config(RunConfig& cfg, const json& j) {
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  merge_at(cfg, j, "");
}

json config_to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["version"] = kVersion;
  j["model"] = {{"g", c.g}, {"mass", c.mass}};
  j["geometry"] = {{"points", c.points}, {"zeta", c.zeta},       {"n", c.n},
                   {"k", c.k},           {"l", c.l},               {"eta", c.eta},
                   {"direction", c.direction}, {"xi", c.xi},       {"T", c.T},
                   {"gram_points", c.gram_points}};
  j["series"] = {{"cutoff", c.cutoff}, {"variant", c.variant}};
  j["pairing"] = {{"r", c.r}, {"series", c.pair_series}, {"width", c.width}, {"spacing", c.spacing}};
  j["sweep"] = {{"lambda_min", c.lambda_min}, {"lambda_max", c.lambda_max}, {"lambda_count", c.lambda_count},
                {"epsilons", c.epsilons},     {"nus", c.nus},               {"norm_l", c.norm_l},
                {"norm_N", c.norm_N},         {"kernel", c.kernel},
                {"kernel_scale", c.kernel_scale}};
  j["verify"] = {{"suite", c.suite}, {"samples", c.samples}};
  j["seed"] = c.seed;
  j["quadrature"] = {{"max_radial_momentum", c.quadrature.max_radial_momentum},
                     {"node_count", c.quadrature.node_count},
                     {"tail_tolerance", c.quadrature.tail_tolerance}};
  j["inputs"] = c.inputs;
  j["output"] = {{"path", c.output_path}, {"format", c.format}, {"timing", c.timing}};
  j["threads"] = c.threads;
  return j;
}

void RunConfig::validate() const {
  auto need = [](bool ok, const std::string& msg) {
    if (!ok) throw UsageError(msg);
  };
  need(g > 0.0, "g must be positive");
  need(mass >= 0.0, "mass must be nonnegative");
  need(n >= 2 && n <= 8, "n must lie in 2..8");
  need(k >= 1 && k < n, "k must satisfy 1 <= k < n");
  need(l > 0.0, "l must be positive");
  need(T > 0.0, "T must be positive");
  need(gram_points >= 1 && gram_points <= 64, "gram_points must lie in 1..64");
  need(cutoff >= -1 && cutoff <= 200, "cutoff must lie in 0..200");
  need(variant == "plain" || variant == "transposed" || variant == "connected",
       "variant must be plain, transposed or connected");
  need(r >= 0 && r <= 8, "r must lie in 0..8");
  need(width > 0.0, "width must be positive");
  need(spacing > 0.0, "spacing must be positive");
  need(lambda_min > 0.0 && lambda_max > lambda_min, "need 0 < lambda_min < lambda_max");
  need(lambda_count >= 3, "lambda_count must be at least 3");
  need(epsilons.size() >= 3, "need three epsilon values");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    need(epsilons[i] > 0.0 && (i == 0 || epsilons[i] < epsilons[i - 1]), "epsilons must be positive and decreasing");
  }
  need(nus.size() >= 2, "need at least two values of nu");
  for (int nu : nus) need(nu >= 1, "nu values must be positive integers");
  need(norm_l >= 0.0, "norm_l must be nonnegative");
  need(norm_N >= 0, "norm_N must be nonnegative");
  need(kernel == "fejer" || kernel == "bump", "kernel must be fejer or bump");
  need(kernel_scale > 0.0 && std::isfinite(kernel_scale), "kernel_scale must be positive");
  static const std::set<std::string> suites = {"all",         "propagator-bounds", "theorem1",    "hermiticity",
                                                "gram",        "lorentz",           "cluster",     "jost",
                                                "coordinates", "pullback-norm",     "mollifier"};
  need(suites.count(suite) == 1, "unknown suite '" + suite + "'");
  need(samples >= 1 && samples <= 10'000'000, "samples must lie in 1..1e7");
  need(format == "json" || format == "csv", "format must be json or csv");
  need(threads >= 0, "threads must be nonnegative");
  try {
    quadrature.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  for (const auto& p : points) parse_complex_four_vector(p);
  parse_complex_four_vector(zeta);
  parse_real_four_vector(eta);
  parse_real_four_vector(direction);
  for (const auto& x : xi) parse_real_four_vector(x);
}

cplx parse_complex(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw UsageError("empty complex component");
  if (t.back() != 'i') return {parse_real(t, "complex literal"), 0.0};
  t.pop_back();
  // split at the last sign that is not leading and not an exponent sign
  std::size_t split = std::string::npos;
  for (std::size_t p = t.size(); p-- > 1;) {
    if ((t[p] == '+' || t[p] == '-') && t[p - 1] != 'e' && t[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  auto imag_part = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s, "complex literal");
  };
  if (split == std::string::npos) return {0.0, imag_part(t)};
  return {parse_real(t.substr(0, split), "complex literal"), imag_part(t.substr(split))};
}

ComplexFourVector parse_complex_four_vector(const std::string& text) {
  const auto parts = split_commas(text);
  if (parts.size() != 4) throw UsageError("complex 4-vector '" + text + "' needs four components");
  ComplexFourVector z;
  for (std::size_t i = 0; i < 4; ++i) z.set(i, parse_complex(parts[i]));
  return z;
}

FourVector parse_real_four_vector(const std::string& text) {
  const auto parts = split_commas(text);
  if (parts.size() != 4) throw UsageError("4-vector '" + text + "' needs four components");
  FourVector v;
  for (std::size_t i = 0; i < 4; ++i) v[i] = parse_real(parts[i], "4-vector '" + text + "'");
  return v;
}

}  // namespace wfl::cli
