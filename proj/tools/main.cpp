#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_commands.hpp"
#include "cli_config.hpp"
#include "wfl/parallel.hpp"

namespace {

using wfl::cli::RunConfig;

const char* kGrammar = R"(Complex literals:
  complex   := real | imag | real sign imag
  imag      := [sign] [unsigned-real] "i"
  4-vector  := complex "," complex "," complex "," complex
  e.g. "-2i,0,0,0", "0.5+1e-3i,1,0,-i"
Real 4-vectors use plain numbers: "0,5,0,0".
Flags override values from --config, which override built-in defaults.
Exit status: 0 all checks passed, 1 a check failed, 2 invalid input.)";

void add_model(CLI::App* s, RunConfig& c) {
  s->add_option("--g", c.g, "coupling g > 0");
  s->add_option("--mass", c.mass, "field mass mu >= 0");
  s->add_option("--quad-nodes", c.quadrature.node_count, "Gauss-Legendre nodes per panel");
  s->add_option("--quad-max-momentum", c.quadrature.max_radial_momentum, "radial momentum cap");
  s->add_option("--quad-tail", c.quadrature.tail_tolerance, "relative radial tail tolerance");
}

void add_output(CLI::App* s, RunConfig& c) {
  s->add_option("--output,-o", c.output_path, "write the report here (atomically) instead of stdout");
  s->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  s->add_flag("--timing", c.timing, "record wall time in the report");
  s->add_option("--threads", c.threads, "OpenMP threads (0: WFL_NUM_THREADS or the default)");
  s->add_option("--config", "JSON config file (read before the other flags)");
}

std::string prescan_config(int argc, char** argv) {
  std::string path;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) path = argv[i + 1];
    if (a.rfind("--config=", 0) == 0) path = a.substr(9);
  }
  return path;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  const std::string config_path = prescan_config(argc, argv);
  if (!config_path.empty()) {
    std::ifstream is(config_path);
    if (!is) {
      std::cerr << "error: cannot read config '" << config_path << "'\n";
      return 2;
    }
    try {
      wfl::cli::merge_config(cfg, nlohmann::ordered_json::parse(is));
    } catch (const std::exception& e) {
      std::cerr << "error: config '" << config_path << "': " << e.what() << "\n";
      return 2;
    }
  }

  CLI::App app{"Wightman functions of :exp g phi^2: with a fundamental length", "wfl"};
  app.footer(kGrammar);
  app.set_version_flag("--version", wfl::cli::kVersion);
  app.require_subcommand(1);

  auto* prop = app.add_subcommand("propagator", "evaluate Delta_+ at complex points");
  add_model(prop, cfg);
  prop->add_option("--point", cfg.points, "complex 4-vector (repeatable)");
  prop->add_option("--zeta", cfg.zeta, "point used when no --point is given");
  add_output(prop, cfg);

  auto* two = app.add_subcommand("two-point", "two-point series against the closed form");
  add_model(two, cfg);
  two->add_option("--zeta", cfg.zeta, "difference zeta with Im zeta in V^-");
  two->add_option("--cutoff", cfg.cutoff, "truncation degree (default 40)");
  add_output(two, cfg);

  auto* series = app.add_subcommand("series", "truncated n-point series with certificates");
  add_model(series, cfg);
  series->add_option("--point", cfg.points, "complex 4-vector (repeatable, in order)");
  series->add_option("--n", cfg.n, "points of the default configuration when no --point is given");
  series->add_option("--k", cfg.k, "split or transposition index, 1 <= k < n");
  series->add_option("--variant", cfg.variant, "plain, transposed or connected")
      ->check(CLI::IsMember({"plain", "transposed", "connected"}));
  series->add_option("--cutoff", cfg.cutoff, "truncation degree");
  add_output(series, cfg);

  auto* pair = app.add_subcommand("pair", "two-point pairing with a Gaussian test function");
  add_model(pair, cfg);
  pair->add_option("--eta", cfg.eta, "imaginary shift in V^-");
  pair->add_option("--r", cfg.r, "contraction power r_12 of the monomial");
  pair->add_flag("--series", cfg.pair_series, "pair the truncated series instead of one monomial");
  pair->add_option("--cutoff", cfg.cutoff, "series truncation degree (default 8)");
  pair->add_option("--width", cfg.width, "Gaussian width");
  pair->add_option("--spacing", cfg.spacing, "lattice spacing");
  add_output(pair, cfg);

  auto* cert = app.add_subcommand("certify", "contraction ratio q of the convergence certificate");
  cert->add_option("--n", cfg.n, "number of points");
  cert->add_option("--g", cfg.g, "coupling g > 0");
  cert->add_option("--l", cfg.l, "imaginary length l");
  add_output(cert, cfg);

  auto* verify = app.add_subcommand("verify", "run verification suites");
  add_model(verify, cfg);
  verify->add_option("--suite", cfg.suite,
                     "all, propagator-bounds, theorem1, hermiticity, gram, lorentz, cluster, jost, coordinates, "
                     "pullback-norm or mollifier");
  verify->add_option("--samples", cfg.samples, "sample count");
  verify->add_option("--seed", cfg.seed, "random seed");
  verify->add_option("--l", cfg.l, "cone length l");
  verify->add_option("--T", cfg.T, "imaginary time of the Gram configuration");
  verify->add_option("--gram-points", cfg.gram_points, "points in the Gram matrix");
  verify->add_option("--xi", cfg.xi, "real difference vector of the Jost configuration (repeatable)");
  verify->add_option("--k", cfg.k, "transposed pair index of the Jost check");
  verify->add_option("--epsilons", cfg.epsilons, "decreasing epsilon values of the Jost check");
  verify->add_option("--direction", cfg.direction, "cluster translation direction");
  verify->add_option("--lambda-min", cfg.lambda_min, "smallest cluster separation");
  verify->add_option("--lambda-max", cfg.lambda_max, "largest cluster separation");
  verify->add_option("--lambda-count", cfg.lambda_count, "cluster grid size");
  verify->add_option("--cutoff", cfg.cutoff, "series truncation degree");
  verify->add_option("--nus", cfg.nus, "mollifier scales");
  verify->add_option("--norm-l", cfg.norm_l, "strip half-width of the mollifier norm");
  verify->add_option("--norm-N", cfg.norm_N, "polynomial weight of the mollifier norm");
  verify->add_option("--kernel", cfg.kernel, "fejer or bump")->check(CLI::IsMember({"fejer", "bump"}));
  verify->add_option("--kernel-scale", cfg.kernel_scale, "argument scale s of the base kernel s k(s u)");
  verify->add_option("--width", cfg.width, "Gaussian width in the pullback suite");
  add_output(verify, cfg);

  auto* cluster = app.add_subcommand("cluster", "decay table of W_2 - W_1 W_1 under spacelike translation");
  add_model(cluster, cfg);
  cluster->add_option("--direction", cfg.direction, "spacelike translation direction");
  cluster->add_option("--lambda-min", cfg.lambda_min, "smallest separation");
  cluster->add_option("--lambda-max", cfg.lambda_max, "largest separation");
  cluster->add_option("--lambda-count", cfg.lambda_count, "grid size");
  cluster->add_option("--cutoff", cfg.cutoff, "series truncation degree");
  add_output(cluster, cfg);

  auto* mollify = app.add_subcommand("mollify", "mollifier approximation table");
  mollify->add_option("--nus", cfg.nus, "mollifier scales");
  mollify->add_option("--norm-l", cfg.norm_l, "strip half-width");
  mollify->add_option("--norm-N", cfg.norm_N, "polynomial weight");
  mollify->add_option("--kernel", cfg.kernel, "fejer or bump")->check(CLI::IsMember({"fejer", "bump"}));
  mollify->add_option("--kernel-scale", cfg.kernel_scale, "argument scale s of the base kernel s k(s u)");
  add_output(mollify, cfg);

  auto* report = app.add_subcommand("report", "aggregate earlier JSON reports");
  report->add_option("inputs", cfg.inputs, "report files")->required();
  add_output(report, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  wfl::set_thread_count(cfg.threads > 0 ? cfg.threads : wfl::default_thread_count());
  return wfl::cli::run(cfg, std::cout, std::cerr);
}
