#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "wfl/minkowski.hpp"
#include "wfl/propagator.hpp"

namespace wfl::cli {

inline constexpr const char* kVersion = "wfl 0.1.0";

/// Invalid command-line or config input; maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Fully resolved run configuration. Defaults < config file < flags.
 */
struct RunConfig {
  std::string command;

  // model
  double g = 6.0;
  double mass = 0.0;

  // geometry
  std::vector<std::string> points;  // complex 4-vector literals
  std::string zeta = "-2i,0,0,0";
  int n = 2;
  int k = 1;
  double l = 1.01;
  std::string eta = "-0.3,0,0,0";
  std::string direction = "0,1,0,0";
  std::vector<std::string> xi = {"0,5,0,0", "0,5,0,0"};
  double T = 1.2;
  int gram_points = 6;

  // series
  int cutoff = -1;  // -1: per-command default
  std::string variant = "plain";  // plain | transposed | connected

  // pairing
  int r = 1;
  bool pair_series = false;
  double width = 1.0;
  double spacing = 0.075;

  // sweeps
  double lambda_min = 10.0;
  double lambda_max = 320.0;
  int lambda_count = 16;
  std::vector<double> epsilons = {1e-2, 5e-3, 2.5e-3};
  std::vector<int> nus = {1, 2, 4, 8};
  double norm_l = 0.3;
  int norm_N = 0;
  std::string kernel = "fejer";
  double kernel_scale = 2.0;

  // verification
  std::string suite = "all";
  int samples = 10000;
  std::uint64_t seed = 1;

  QuadratureSpec quadrature;

  // report aggregation
  std::vector<std::string> inputs;

  // output
  std::string output_path;  // empty: stdout
  std::string format = "json";
  bool timing = false;
  int threads = 0;  // 0: WFL_NUM_THREADS or the OpenMP default

  void validate() const;
};

/// Overwrites the fields present in j; unknown keys are a UsageError.
void merge_config(RunConfig& cfg, const nlohmann::ordered_json& j);
nlohmann::ordered_json config_to_json(const RunConfig& cfg);

/**
 * Complex number literal: "a", "bi", "a+bi", "a-bi", "i", "-i".
 * Complex 4-vector literal: four complex literals separated by commas.
 */
cplx parse_complex(const std::string& text);
ComplexFourVector parse_complex_four_vector(const std::string& text);
FourVector parse_real_four_vector(const std::string& text);

}  // namespace wfl::cli
