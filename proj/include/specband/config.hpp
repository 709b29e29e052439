#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specband/report.hpp"

namespace specband {

// Effective run configuration. Loaded from a JSON document validated key by
// key against the published schema (docs/config.schema.json): unknown keys
// are rejected with their full path, defaults are filled in, and the
// defaulted document is echoed into every report.
struct RunConfig {
  int schema_version = 1;

  struct PotentialSpec {
    std::string kind = "hermite";
    int nu = 1;              // poschl_teller only
    std::string csv_path;    // tabulated only
  } potential;

  struct GridSpec {
    int dim = 1;
    double halfwidth = 12.0;
    int points_per_axis = 1024;
  } grid;

  int stencil_order = 4;

  struct DyadicSpec {
    std::string profile = "standard";
    int j_min = 0;
    int j_max = 9;
    int k_max = 4;
    int samples_per_block = 4096;
  } dyadic;

  struct CorpusCfg {
    std::string kind = "band_limited";
    int count = 50;
    std::uint64_t seed = 20210713;
    double band_lo = 1.0;
    double band_hi = 100.0;
  } corpus;

  struct OutputSpec {
    std::string dir = "reports";
    std::string format = "both";  // json|csv|both
  } output;

  bool negative_control = false;

  struct ValidateDyadicCfg {
    double lambda_min = 0.5;
    double lambda_max = 256.0;
    double sum_floor = 0.5;
  } validate_dyadic;

  struct DecayCfg {
    int j_min = 0;
    int j_max = 8;
    std::vector<int> n_list = {1, 2, 4};
    std::vector<int> alpha_list = {0, 1};
    double spread_ceiling = 50.0;
    int resolved_min_eigs = 3;
  } decay;

  struct MehlerCfg {
    std::vector<double> t_list = {0.1, 0.5, 1.0};
    double box = 4.0;
    double kernel_rtol = 1e-6;
    double gradient_rtol = 1e-4;
  } mehler;

  struct GaussianBoundCfg {
    double t_min = 0.05;
    double t_max = 4.0;
    int t_count = 24;
    double box = 6.0;
    double c_cap = 50.0;
    std::vector<double> c0_grid = {0.05, 0.10, 0.15, 0.20, 0.25};
    std::vector<double> c1_grid = {0.05, 0.10, 0.15, 0.20, 0.25};
    std::vector<double> t0_grid = {1.25, 1.5, 2.0, 3.0};
  } gaussian_bound;

  struct HebischCfg {
    std::vector<double> beta_list = {0.0, 2.0};
    double sobolev_index = 3.5;
    int j_min = 0;
    int j_max = 8;
    double spread_ceiling = 10.0;
    int resolved_min_eigs = 3;
  } hebisch;

  struct EquivalenceCfg {
    std::vector<double> p_list = {1.5, 2.0, 3.0, 4.0};
    double spread_ceiling = 10.0;
  } equivalence;

  struct MaximalCfg {
    std::vector<double> r_list = {1.0, 2.0};
    std::vector<double> p_list = {2.0, 4.0};
    double q = 2.0;
    double s = 1.0;
    double bernstein_ceiling = 50.0;
    double peetre_ceiling = 50.0;
    double opnorm_ceiling = 50.0;
  } maximal;

  struct SobolevCfg {
    std::vector<double> s_list = {1.0};
    std::vector<double> p_list = {2.0};
    double spread_ceiling = 16.0;
  } sobolev;

  // Effective (defaulted) document; echoed into reports.
  Json echo() const;
};

RunConfig default_config();

// Throws std::runtime_error with line/column on parse errors and with the
// offending key path on schema violations.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text);
RunConfig config_from_json(const Json& doc);

}  // namespace specband
