#include "cli_commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json_writer.hpp"
#include "wfl/errors.hpp"
#include "wfl/pairing.hpp"
#include "wfl/parallel.hpp"
#include "wfl/propagator.hpp"
#include "wfl/wick.hpp"

namespace wfl::cli {

using json = nlohmann::ordered_json;

namespace {

struct Draft {
  json results = json::object();
  json certificates = json::object();
  std::vector<CheckReport> checks;
  std::string csv;
};

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_row(std::initializer_list<double> values) {
  std::string s;
  bool first = true;
  for (double v : values) {
    if (!first) s += ',';
    first = false;
    s += csv_number(v);
  }
  return s + "\n";
}

json series_json(const SeriesValue& s) {
  return {{"value", complex_json(s.value)},
          {"cutoff_degree", s.cutoff_degree},
          {"tail_bound", s.tail_bound},
          {"contraction_ratio_q", s.contraction_ratio_q},
          {"certified", s.certified},
          {"certificate_length", s.certificate_length},
          {"local_ratio_q", s.local_ratio_q},
          {"local_tail_bound", s.local_tail_bound},
          {"locally_certified", s.locally_certified},
          {"rounding_bound", s.rounding_bound},
          {"propagator_rel_error", s.propagator_rel_error},
          {"terms", s.terms}};
}

std::vector<ComplexFourVector> parse_points(const std::vector<std::string>& literals) {
  std::vector<ComplexFourVector> pts;
  for (const auto& p : literals) pts.push_back(parse_complex_four_vector(p));
  return pts;
}

std::vector<FourVector> parse_xi(const RunConfig& cfg) {
  std::vector<FourVector> xi;
  for (const auto& s : cfg.xi) xi.push_back(parse_real_four_vector(s));
  return xi;
}

void cmd_propagator(const RunConfig& cfg, Draft& d) {
  auto pts = parse_points(cfg.points);
  if (pts.empty()) pts.push_back(parse_complex_four_vector(cfg.zeta));
  const Mass m(cfg.mass);
  json rows = json::array();
  d.csv = "re_z0 [length],im_z0 [length],re_z1 [length],im_z1 [length],re_z2 [length],im_z2 [length],"
          "re_z3 [length],im_z3 [length],re_value [length^-2],im_value [length^-2],error_estimate [length^-2]\n";
  for (const auto& z : pts) {
    const PropagatorValue v = delta_plus_detailed(z, m, cfg.quadrature);
    json row = {{"point", four_vector_json(z)}, {"value", complex_json(v.value)}, {"error_estimate", v.error_estimate}};
    if (in_cone_v_minus(z.im, 0.0)) {
      row["tube_bound"] = tube_bound(z.im);
    } else {
      row["tube_bound"] = nullptr;
    }
    rows.push_back(row);
    d.csv += csv_row({z.re[0], z.im[0], z.re[1], z.im[1], z.re[2], z.im[2], z.re[3], z.im[3], v.value.real(),
                      v.value.imag(), v.error_estimate});
  }
  d.results["mass"] = cfg.mass;
  d.results["values"] = rows;
}

void cmd_two_point(const RunConfig& cfg, Draft& d) {
  const int cutoff = cfg.cutoff < 0 ? 40 : cfg.cutoff;
  const ComplexFourVector zeta = parse_complex_four_vector(cfg.zeta);
  const Mass m(cfg.mass);
  const auto coeffs = exp_phi2_coefficients(cfg.g, cutoff);
  const ComplexFourVector pts[2] = {zeta, ComplexFourVector{}};
  const SeriesValue s = wightman_series(pts, coeffs, cutoff, m, cfg.quadrature);
  d.results["zeta"] = four_vector_json(zeta);
  d.results["series"] = series_json(s);
  d.certificates["contraction_ratio_q"] = s.contraction_ratio_q;
  d.certificates["tail_bound"] = s.tail_bound;
  d.certificates["certified"] = s.certified;
  if (m.massless()) {
    const cplx closed = two_point_closed_form(minkowski_square(zeta), cfg.g);
    const double diff = std::abs(s.value - closed);
    d.results["closed_form"] = complex_json(closed);
    d.results["difference"] = diff;
    CheckReport r;
    r.check_name = "two_point_closed_form";
    r.samples = 1;
    r.tolerance = 0.0;
    r.worst_margin = s.tail_bound - diff;
    r.passed = s.certified && r.worst_margin >= -r.tolerance;
    r.metrics = {{"difference", diff}, {"tail_bound", s.tail_bound}};
    d.checks.push_back(r);
  } else {
    d.results["closed_form"] = nullptr;
  }
}

void cmd_series(const RunConfig& cfg, Draft& d) {
  auto pts = parse_points(cfg.points);
  if (pts.empty()) pts = cluster_base_configuration(cfg.g, cfg.n);
  const int n = static_cast<int>(pts.size());
  if (n < 2) throw UsageError("series needs at least two points");
  const int cutoff = cfg.cutoff < 0 ? default_cutoff(n) : cfg.cutoff;
  const auto coeffs = exp_phi2_coefficients(cfg.g, cutoff);
  const Mass m(cfg.mass);
  if (cfg.variant != "plain" && (cfg.k < 1 || cfg.k >= n)) throw UsageError("k must satisfy 1 <= k < n");
  SeriesValue s;
  if (cfg.variant == "plain") {
    s = wightman_series(pts, coeffs, cutoff, m, cfg.quadrature);
  } else if (cfg.variant == "transposed") {
    s = transposed_series(pts, cfg.k, coeffs, cutoff, m, cfg.quadrature);
  } else {
    s = connected_series(pts, cfg.k, coeffs, cutoff, m, cfg.quadrature);
  }
  json p = json::array();
  for (const auto& z : pts) p.push_back(four_vector_json(z));
  d.results["points"] = p;
  d.results["variant"] = cfg.variant;
  d.results["series"] = series_json(s);
  json sums = json::array();
  for (const auto& v : s.degree_sums) sums.push_back(complex_json(v));
  d.results["degree_sums"] = sums;
  d.certificates["contraction_ratio_q"] = s.contraction_ratio_q;
  d.certificates["tail_bound"] = s.tail_bound;
  d.certificates["certified"] = s.certified;
  d.certificates["local_ratio_q"] = s.local_ratio_q;
  d.certificates["locally_certified"] = s.locally_certified;
}

void cmd_pair(const RunConfig& cfg, Draft& d) {
  const FourVector eta = parse_real_four_vector(cfg.eta);
  const auto f = AnalyticTestFunction::gaussian(4, cfg.width);
  const Mass m(cfg.mass);
  LatticeSpec grid;
  grid.spacing = cfg.spacing;
  const FourVector etas[1] = {eta};
  d.results["eta"] = four_vector_json(eta);
  d.results["test_function"] = {{"family", "gaussian"}, {"dimension", 4}, {"width", cfg.width}};
  if (cfg.pair_series) {
    const int cutoff = cfg.cutoff < 0 ? 8 : cfg.cutoff;
    const auto coeffs = exp_phi2_coefficients(cfg.g, cutoff);
    const PairSeriesValue v = pair_series(coeffs, f, etas, cutoff, m, grid, cfg.quadrature);
    d.results["series"] = {{"value", complex_json(v.value)},
                           {"quadrature_error", v.quadrature_error},
                           {"tail_bound", v.tail_bound},
                           {"cutoff_degree", v.cutoff_degree},
                           {"norm", v.norm},
                           {"norm_slack", v.norm_slack},
                           {"norm_constant", v.norm_constant},
                           {"lattice_points", v.lattice_points}};
    d.certificates["contraction_ratio_q"] = v.contraction_ratio_q;
    d.certificates["tail_bound"] = v.tail_bound;
    d.certificates["certified"] = v.certified;
  } else {
    const ContractionMatrix R(2, {cfg.r});
    const PairingValue v = pair_monomial(R, f, etas, m, grid, cfg.quadrature);
    d.results["r12"] = cfg.r;
    d.results["monomial"] = {{"value", complex_json(v.value)},
                             {"quadrature_error", v.quadrature_error},
                             {"lattice_points", v.lattice_points}};
  }
}

CheckReport theorem1_report(const RunConfig& cfg) {
  CheckReport r;
  r.check_name = "theorem1_certificate";
  r.tolerance = 0.0;
  r.worst_margin = std::numeric_limits<double>::infinity();
  for (int n = 2; n <= 8; ++n) {
    const Theorem1Certificate c = certify_theorem1(n, cfg.g, cfg.l);
    r.metrics.push_back({"q_n_" + std::to_string(n), c.q});
    r.worst_margin = std::min(r.worst_margin, 1.0 - c.q);
  }
  // sum 1/k^2 < pi^2/6 bounds q for every n
  const double q_uniform = cfg.g / (6.0 * cfg.l * cfg.l);
  r.metrics.push_back({"q_uniform_bound", q_uniform});
  r.metrics.push_back({"two_point_threshold_l", std::sqrt(cfg.g) / M_PI});
  r.worst_margin = std::min(r.worst_margin, 1.0 - q_uniform);
  r.samples = 7;
  r.passed = r.worst_margin >= -r.tolerance;
  r.details.push_back("n-uniform bound g/(6 l^2) = " + csv_number(q_uniform));
  return r;
}

void run_suite(const std::string& suite, const RunConfig& cfg, Draft& d) {
  const Mass m(cfg.mass);
  const auto& q = cfg.quadrature;
  const int light = std::min(cfg.samples, 500);
  if (suite == "propagator-bounds") {
    for (auto& r : check_propagator_bounds(m, cfg.l, cfg.samples, cfg.seed, q)) d.checks.push_back(r);
  } else if (suite == "theorem1") {
    d.checks.push_back(theorem1_report(cfg));
  } else if (suite == "hermiticity") {
    d.checks.push_back(check_hermiticity(cfg.g, m, light, cfg.seed, 20, q));
  } else if (suite == "gram") {
    const auto pts = sample_spatial_points(cfg.gram_points, cfg.seed);
    d.checks.push_back(check_gram_positivity(cfg.g, m, pts, cfg.T, 30, q));
  } else if (suite == "lorentz") {
    d.checks.push_back(check_lorentz_invariance(cfg.g, m, std::min(cfg.samples, 100), cfg.seed, q));
  } else if (suite == "cluster") {
    const auto grid = geometric_grid(cfg.lambda_min, cfg.lambda_max, cfg.lambda_count);
    d.checks.push_back(check_cluster_decay(cfg.g, m, parse_real_four_vector(cfg.direction), grid, 2, 1,
                                           cfg.cutoff, q));
  } else if (suite == "jost") {
    const auto xi = parse_xi(cfg);
    d.checks.push_back(jost_symmetry_check(cfg.g, m, xi, cfg.k, cfg.epsilons, cfg.cutoff, q));
  } else if (suite == "coordinates") {
    d.checks.push_back(check_coordinate_transform(2, 6, std::min(cfg.samples, 1000), cfg.seed));
  } else if (suite == "pullback-norm") {
    std::vector<double> ls;
    for (int i = 1; i <= 10; ++i) ls.push_back(0.1 * i);
    std::vector<int> Ns;
    for (int N = 0; N < 10; ++N) Ns.push_back(N);
    d.checks.push_back(check_pullback_norm_inequality(AnalyticTestFunction::gaussian(8, cfg.width), 2, ls, Ns));
  } else if (suite == "mollifier") {
    MollifierSpec spec;
    spec.kind = cfg.kernel == "bump" ? MollifierKind::BumpTransform : MollifierKind::SquaredFejer;
    spec.scale = cfg.kernel_scale;
    d.checks.push_back(check_mollifier_demo(cfg.nus, cfg.norm_l, cfg.norm_N, spec));
  } else {
    throw UsageError("unknown suite '" + suite + "'");
  }
}

void cmd_verify(const RunConfig& cfg, Draft& d) {
  static const char* all[] = {"propagator-bounds", "theorem1", "hermiticity", "gram",          "lorentz",
                              "cluster",           "jost",     "coordinates", "pullback-norm", "mollifier"};
  json suites = json::array();
  if (cfg.suite == "all") {
    for (const char* s : all) {
      run_suite(s, cfg, d);
      suites.push_back(s);
    }
  } else {
    run_suite(cfg.suite, cfg, d);
    suites.push_back(cfg.suite);
  }
  d.results["suites"] = suites;
}

void cmd_certify(const RunConfig& cfg, Draft& d) {
  const Theorem1Certificate c = certify_theorem1(cfg.n, cfg.g, cfg.l);
  d.results["n"] = cfg.n;
  d.results["g"] = cfg.g;
  d.results["l"] = cfg.l;
  d.certificates["contraction_ratio_q"] = c.q;
  d.certificates["certified"] = c.certified;
  CheckReport r;
  r.check_name = "theorem1_certificate";
  r.samples = 1;
  r.worst_margin = 1.0 - c.q;
  r.passed = c.certified;
  r.metrics = {{"q", c.q}};
  d.checks.push_back(r);
}

void cmd_cluster(const RunConfig& cfg, Draft& d) {
  const Mass m(cfg.mass);
  const FourVector a = parse_real_four_vector(cfg.direction);
  const auto grid = geometric_grid(cfg.lambda_min, cfg.lambda_max, cfg.lambda_count);
  const auto D = cluster_scan(cfg.g, m, a, grid, 2, 1, cfg.cutoff, cfg.quadrature);
  json rows = json::array();
  d.csv = "lambda [length],D [dimensionless]\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    rows.push_back({{"lambda", grid[i]}, {"D", D[i]}});
    d.csv += csv_row({grid[i], D[i]});
  }
  d.results["direction"] = four_vector_json(a);
  d.results["table"] = rows;
  d.checks.push_back(check_cluster_decay(cfg.g, m, a, grid, 2, 1, cfg.cutoff, cfg.quadrature));
}

void cmd_mollify(const RunConfig& cfg, Draft& d) {
  MollifierSpec spec;
  spec.kind = cfg.kernel == "bump" ? MollifierKind::BumpTransform : MollifierKind::SquaredFejer;
  spec.scale = cfg.kernel_scale;
  const CheckReport r = check_mollifier_demo(cfg.nus, cfg.norm_l, cfg.norm_N, spec);
  json rows = json::array();
  d.csv = "nu [dimensionless],kernel_mass [dimensionless],error_norm [dimensionless]\n";
  for (int nu : cfg.nus) {
    const double mass = mollifier_mass(nu, spec);
    const double err = r.metric("error_nu_" + std::to_string(nu));
    rows.push_back({{"nu", nu}, {"kernel_mass", mass}, {"error_norm", err}});
    d.csv += csv_row({static_cast<double>(nu), mass, err});
  }
  d.results["kernel"] = cfg.kernel;
  d.results["kernel_scale"] = cfg.kernel_scale;
  d.results["strip"] = {{"l", cfg.norm_l}, {"N", cfg.norm_N}};
  d.results["table"] = rows;
  d.checks.push_back(r);
}

CheckReport report_from_json(const json& j) {
  CheckReport r;
  r.check_name = j.at("check_name").get<std::string>();
  r.samples = j.at("samples").get<std::uint64_t>();
  r.worst_margin = j.at("worst_margin").is_null() ? -std::numeric_limits<double>::infinity()
                                                  : j.at("worst_margin").get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  r.passed = j.at("passed").get<bool>();
  for (const auto& s : j.at("details")) r.details.push_back(s.get<std::string>());
  for (const auto& [k, v] : j.at("metrics").items())
    r.metrics.push_back({k, v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>()});
  return r;
}

void cmd_report(const RunConfig& cfg, Draft& d) {
  if (cfg.inputs.empty()) throw UsageError("report needs at least one input file");
  json sources = json::array();
  for (const auto& path : cfg.inputs) {
    std::ifstream is(path);
    if (!is) throw UsageError("cannot read '" + path + "'");
    json doc;
    try {
      doc = json::parse(is);
      bool passed = true;
      for (const auto& c : doc.at("checks")) {
        d.checks.push_back(report_from_json(c));
        passed = passed && d.checks.back().passed;
      }
      sources.push_back({{"path", path},
                         {"command", doc.at("command")},
                         {"passed", passed},
                         {"results", doc.at("results")},
                         {"certificates", doc.at("certificates")}});
    } catch (const json::exception& e) {
      throw UsageError("'" + path + "' is not a report: " + e.what());
    }
  }
  d.results["sources"] = sources;
}

}  // namespace

json check_json(const CheckReport& r) {
  json metrics = json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = v;
  return {{"check_name", r.check_name}, {"samples", r.samples}, {"worst_margin", r.worst_margin},
          {"tolerance", r.tolerance},   {"passed", r.passed},   {"details", r.details},
          {"metrics", metrics}};
}

CommandOutput execute(const RunConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  Draft d;
  const std::string& c = cfg.command;
  if (c == "propagator") {
    cmd_propagator(cfg, d);
  } else if (c == "two-point") {
    cmd_two_point(cfg, d);
  } else if (c == "series") {
    cmd_series(cfg, d);
  } else if (c == "pair") {
    cmd_pair(cfg, d);
  } else if (c == "certify") {
    cmd_certify(cfg, d);
  } else if (c == "verify") {
    cmd_verify(cfg, d);
  } else if (c == "cluster") {
    cmd_cluster(cfg, d);
  } else if (c == "mollify") {
    cmd_mollify(cfg, d);
  } else if (c == "report") {
    cmd_report(cfg, d);
  } else {
    throw UsageError("unknown command '" + c + "'");
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  CommandOutput out;
  json checks = json::array();
  for (const auto& r : d.checks) {
    checks.push_back(check_json(r));
    out.passed = out.passed && r.passed;
  }
  out.document["command"] = cfg.command;
  out.document["version"] = kVersion;
  out.document["config"] = config_to_json(cfg);
  out.document["results"] = d.results;
  out.document["certificates"] = d.certificates;
  out.document["checks"] = checks;
  out.document["passed"] = out.passed;
  if (cfg.timing) {
    out.document["timing"] = {{"wall_seconds", wall}, {"threads", current_thread_count()}};
  } else {
    out.document["timing"] = nullptr;
  }
  if (cfg.format == "csv") {
    if (d.csv.empty()) throw UsageError("command '" + cfg.command + "' has no CSV form");
    out.text = d.csv;
  } else {
    out.text = dump_json(out.document);
  }
  return out;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const CommandOutput result = execute(cfg);
    if (cfg.output_path.empty()) {
      out << result.text;
      out.flush();
    } else {
      write_file_atomic(cfg.output_path, result.text);
    }
    if (!result.passed) {
      for (const auto& c : result.document["checks"])
        if (!c["passed"].get<bool>()) err << "check failed: " << c["check_name"].get<std::string>() << "\n";
      return 1;
    }
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const SingularityError& e) {
    err << "singularity: " << e.what() << "\n";
    return 2;
  } catch (const PrecisionError& e) {
    err << "precision lost: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace wfl::cli
