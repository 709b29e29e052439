#include "specband/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace specband {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::runtime_error("config: key '" + path + "' " + what);
}

void check_known_keys(const Json& obj, const std::string& path,
                      std::initializer_list<const char*> known) {
  const std::set<std::string> allowed(known.begin(), known.end());
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw std::runtime_error("config: unknown key '" +
                               (path.empty() ? it.key() : path + "." + it.key()) +
                               "'");
    }
  }
}

template <typename T>
T get_or(const Json& obj, const char* key, const std::string& path, T dflt) {
  if (!obj.contains(key)) return dflt;
  try {
    return obj.at(key).get<T>();
  } catch (const Json::exception&) {
    fail(path + "." + key, "has the wrong type");
  }
}

std::vector<double> get_list(const Json& obj, const char* key,
                             const std::string& path,
                             std::vector<double> dflt) {
  if (!obj.contains(key)) return dflt;
  const Json& v = obj.at(key);
  if (!v.is_array() || v.empty())
    fail(path + "." + key, "must be a non-empty array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) fail(path + "." + key, "must contain numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<int> get_int_list(const Json& obj, const char* key,
                              const std::string& path, std::vector<int> dflt) {
  if (!obj.contains(key)) return dflt;
  const Json& v = obj.at(key);
  if (!v.is_array() || v.empty())
    fail(path + "." + key, "must be a non-empty array");
  std::vector<int> out;
  for (const auto& e : v) {
    if (!e.is_number_integer()) fail(path + "." + key, "must contain integers");
    out.push_back(e.get<int>());
  }
  return out;
}

}  // namespace

Json RunConfig::echo() const {
  Json j;
  j["schema_version"] = schema_version;
  j["potential"] = {{"kind", potential.kind},
                    {"nu", potential.nu},
                    {"csv_path", potential.csv_path}};
  j["grid"] = {{"dim", grid.dim},
               {"halfwidth", grid.halfwidth},
               {"points_per_axis", grid.points_per_axis}};
  j["operator"] = {{"stencil_order", stencil_order}};
  j["dyadic"] = {{"profile", dyadic.profile},
                 {"j_min", dyadic.j_min},
                 {"j_max", dyadic.j_max},
                 {"k_max", dyadic.k_max},
                 {"samples_per_block", dyadic.samples_per_block}};
  j["corpus"] = {{"kind", corpus.kind},
                 {"count", corpus.count},
                 {"seed", corpus.seed},
                 {"band", Json::array({corpus.band_lo, corpus.band_hi})}};
  j["output"] = {{"dir", output.dir}, {"format", output.format}};
  j["negative_control"] = negative_control;
  Json e;
  e["validate_dyadic"] = {{"lambda_min", validate_dyadic.lambda_min},
                          {"lambda_max", validate_dyadic.lambda_max},
                          {"sum_floor", validate_dyadic.sum_floor}};
  e["decay"] = {{"j_min", decay.j_min},
                {"j_max", decay.j_max},
                {"N_list", decay.n_list},
                {"alpha_list", decay.alpha_list},
                {"spread_ceiling", decay.spread_ceiling},
                {"resolved_min_eigs", decay.resolved_min_eigs}};
  e["mehler"] = {{"t_list", mehler.t_list},
                 {"box", mehler.box},
                 {"kernel_rtol", mehler.kernel_rtol},
                 {"gradient_rtol", mehler.gradient_rtol}};
  e["gaussian_bound"] = {{"t_min", gaussian_bound.t_min},
                         {"t_max", gaussian_bound.t_max},
                         {"t_count", gaussian_bound.t_count},
                         {"box", gaussian_bound.box},
                         {"c_cap", gaussian_bound.c_cap},
                         {"c0_grid", gaussian_bound.c0_grid},
                         {"c1_grid", gaussian_bound.c1_grid},
                         {"t0_grid", gaussian_bound.t0_grid}};
  e["hebisch"] = {{"beta_list", hebisch.beta_list},
                  {"sobolev_index", hebisch.sobolev_index},
                  {"j_min", hebisch.j_min},
                  {"j_max", hebisch.j_max},
                  {"spread_ceiling", hebisch.spread_ceiling},
                  {"resolved_min_eigs", hebisch.resolved_min_eigs}};
  e["equivalence"] = {{"p_list", equivalence.p_list},
                      {"spread_ceiling", equivalence.spread_ceiling}};
  e["maximal"] = {{"r_list", maximal.r_list},
                  {"p_list", maximal.p_list},
                  {"q", maximal.q},
                  {"s", maximal.s},
                  {"bernstein_ceiling", maximal.bernstein_ceiling},
                  {"peetre_ceiling", maximal.peetre_ceiling},
                  {"opnorm_ceiling", maximal.opnorm_ceiling}};
  e["sobolev"] = {{"s_list", sobolev.s_list},
                  {"p_list", sobolev.p_list},
                  {"spread_ceiling", sobolev.spread_ceiling}};
  j["experiments"] = e;
  return j;
}

RunConfig default_config() { return RunConfig{}; }

RunConfig config_from_json(const Json& doc) {
  if (!doc.is_object()) throw std::runtime_error("config: root must be an object");
  RunConfig cfg;

  check_known_keys(doc, "",
                   {"schema_version", "potential", "grid", "operator",
                    "dyadic", "corpus", "output", "negative_control",
                    "experiments"});

  cfg.schema_version = get_or(doc, "schema_version", "", 1);
  if (cfg.schema_version != 1)
    fail("schema_version", "must be 1 (the published schema version)");

  if (doc.contains("potential")) {
    const Json& p = doc.at("potential");
    check_known_keys(p, "potential", {"kind", "nu", "csv_path"});
    cfg.potential.kind =
        get_or<std::string>(p, "kind", "potential", cfg.potential.kind);
    if (cfg.potential.kind != "zero" && cfg.potential.kind != "hermite" &&
        cfg.potential.kind != "poschl_teller" &&
        cfg.potential.kind != "tabulated")
      fail("potential.kind",
           "must be one of zero|hermite|poschl_teller|tabulated");
    cfg.potential.nu = get_or(p, "nu", "potential", cfg.potential.nu);
    if (cfg.potential.nu < 1) fail("potential.nu", "must be >= 1");
    cfg.potential.csv_path =
        get_or<std::string>(p, "csv_path", "potential", "");
    if (cfg.potential.kind == "tabulated" && cfg.potential.csv_path.empty())
      fail("potential.csv_path", "is required for tabulated potentials");
  }

  if (doc.contains("grid")) {
    const Json& g = doc.at("grid");
    check_known_keys(g, "grid", {"dim", "halfwidth", "points_per_axis"});
    cfg.grid.dim = get_or(g, "dim", "grid", cfg.grid.dim);
    if (cfg.grid.dim != 1 && cfg.grid.dim != 2)
      fail("grid.dim", "must be 1 or 2");
    cfg.grid.halfwidth = get_or(g, "halfwidth", "grid", cfg.grid.halfwidth);
    if (!std::isfinite(cfg.grid.halfwidth) || cfg.grid.halfwidth <= 0.0)
      fail("grid.halfwidth", "must be finite and positive");
    cfg.grid.points_per_axis =
        get_or(g, "points_per_axis", "grid", cfg.grid.points_per_axis);
    if (cfg.grid.points_per_axis < 8)
      fail("grid.points_per_axis", "must be >= 8");
    if (cfg.grid.dim == 2 && cfg.grid.points_per_axis > 64)
      fail("grid.points_per_axis",
           "is capped at 64 per axis in two dimensions (dense eigensolve)");
  }
  if (cfg.potential.kind == "poschl_teller" && cfg.grid.dim != 1)
    fail("potential.kind", "poschl_teller requires grid.dim = 1");

  if (doc.contains("operator")) {
    const Json& o = doc.at("operator");
    check_known_keys(o, "operator", {"stencil_order"});
    cfg.stencil_order = get_or(o, "stencil_order", "operator", 4);
    if (cfg.stencil_order != 2 && cfg.stencil_order != 4)
      fail("operator.stencil_order", "must be 2 or 4");
  }

  if (doc.contains("dyadic")) {
    const Json& d = doc.at("dyadic");
    check_known_keys(d, "dyadic",
                     {"profile", "j_min", "j_max", "k_max",
                      "samples_per_block"});
    cfg.dyadic.profile =
        get_or<std::string>(d, "profile", "dyadic", cfg.dyadic.profile);
    if (cfg.dyadic.profile != "standard" && cfg.dyadic.profile != "sharp" &&
        cfg.dyadic.profile != "indicator")
      fail("dyadic.profile", "must be standard|sharp|indicator");
    cfg.dyadic.j_min = get_or(d, "j_min", "dyadic", cfg.dyadic.j_min);
    cfg.dyadic.j_max = get_or(d, "j_max", "dyadic", cfg.dyadic.j_max);
    if (cfg.dyadic.j_min > cfg.dyadic.j_max)
      fail("dyadic.j_min", "must not exceed dyadic.j_max");
    if (cfg.dyadic.j_min < -40 || cfg.dyadic.j_max > 40)
      fail("dyadic.j_min", "and j_max must lie in [-40, 40]");
    cfg.dyadic.k_max = get_or(d, "k_max", "dyadic", cfg.dyadic.k_max);
    if (cfg.dyadic.k_max < 0 || cfg.dyadic.k_max > 4)
      fail("dyadic.k_max", "must be in [0, 4]");
    cfg.dyadic.samples_per_block =
        get_or(d, "samples_per_block", "dyadic", cfg.dyadic.samples_per_block);
    if (cfg.dyadic.samples_per_block < 64)
      fail("dyadic.samples_per_block", "must be >= 64");
  }

  if (doc.contains("corpus")) {
    const Json& c = doc.at("corpus");
    check_known_keys(c, "corpus", {"kind", "count", "seed", "band"});
    cfg.corpus.kind = get_or<std::string>(c, "kind", "corpus", cfg.corpus.kind);
    if (cfg.corpus.kind != "band_limited" && cfg.corpus.kind != "gaussians" &&
        cfg.corpus.kind != "eigenfunctions")
      fail("corpus.kind", "must be band_limited|gaussians|eigenfunctions");
    cfg.corpus.count = get_or(c, "count", "corpus", cfg.corpus.count);
    if (cfg.corpus.count < 1) fail("corpus.count", "must be >= 1");
    cfg.corpus.seed = get_or<std::uint64_t>(c, "seed", "corpus",
                                            cfg.corpus.seed);
    if (c.contains("band")) {
      const Json& b = c.at("band");
      if (!b.is_array() || b.size() != 2 || !b[0].is_number() ||
          !b[1].is_number())
        fail("corpus.band", "must be a [lo, hi] number pair");
      cfg.corpus.band_lo = b[0].get<double>();
      cfg.corpus.band_hi = b[1].get<double>();
    }
    if (!(cfg.corpus.band_lo < cfg.corpus.band_hi))
      fail("corpus.band", "must satisfy lo < hi");
  }

  if (doc.contains("output")) {
    const Json& o = doc.at("output");
    check_known_keys(o, "output", {"dir", "format"});
    cfg.output.dir = get_or<std::string>(o, "dir", "output", cfg.output.dir);
    if (cfg.output.dir.empty()) fail("output.dir", "must not be empty");
    cfg.output.format =
        get_or<std::string>(o, "format", "output", cfg.output.format);
    if (cfg.output.format != "json" && cfg.output.format != "csv" &&
        cfg.output.format != "both")
      fail("output.format", "must be json|csv|both");
  }

  cfg.negative_control =
      get_or(doc, "negative_control", "", cfg.negative_control);

  if (doc.contains("experiments")) {
    const Json& e = doc.at("experiments");
    check_known_keys(e, "experiments",
                     {"validate_dyadic", "decay", "mehler", "gaussian_bound",
                      "hebisch", "equivalence", "maximal", "sobolev"});

    if (e.contains("validate_dyadic")) {
      const Json& v = e.at("validate_dyadic");
      const std::string pp = "experiments.validate_dyadic";
      check_known_keys(v, pp, {"lambda_min", "lambda_max", "sum_floor"});
      cfg.validate_dyadic.lambda_min =
          get_or(v, "lambda_min", pp, cfg.validate_dyadic.lambda_min);
      cfg.validate_dyadic.lambda_max =
          get_or(v, "lambda_max", pp, cfg.validate_dyadic.lambda_max);
      cfg.validate_dyadic.sum_floor =
          get_or(v, "sum_floor", pp, cfg.validate_dyadic.sum_floor);
      if (!(cfg.validate_dyadic.lambda_min > 0.0) ||
          !(cfg.validate_dyadic.lambda_max > cfg.validate_dyadic.lambda_min))
        fail(pp + ".lambda_min", "must satisfy 0 < lambda_min < lambda_max");
      if (!(cfg.validate_dyadic.sum_floor > 0.0))
        fail(pp + ".sum_floor", "must be positive");
    }

    if (e.contains("decay")) {
      const Json& v = e.at("decay");
      const std::string pp = "experiments.decay";
      check_known_keys(v, pp,
                       {"j_min", "j_max", "N_list", "alpha_list",
                        "spread_ceiling", "resolved_min_eigs"});
      cfg.decay.j_min = get_or(v, "j_min", pp, cfg.decay.j_min);
      cfg.decay.j_max = get_or(v, "j_max", pp, cfg.decay.j_max);
      if (cfg.decay.j_min > cfg.decay.j_max)
        fail(pp + ".j_min", "must not exceed j_max");
      cfg.decay.n_list = get_int_list(v, "N_list", pp, cfg.decay.n_list);
      for (int n : cfg.decay.n_list)
        if (n < 0) fail(pp + ".N_list", "entries must be >= 0");
      cfg.decay.alpha_list =
          get_int_list(v, "alpha_list", pp, cfg.decay.alpha_list);
      for (int a : cfg.decay.alpha_list)
        if (a != 0 && a != 1) fail(pp + ".alpha_list", "entries must be 0 or 1");
      cfg.decay.spread_ceiling =
          get_or(v, "spread_ceiling", pp, cfg.decay.spread_ceiling);
      if (!(cfg.decay.spread_ceiling > 1.0))
        fail(pp + ".spread_ceiling", "must exceed 1");
      cfg.decay.resolved_min_eigs =
          get_or(v, "resolved_min_eigs", pp, cfg.decay.resolved_min_eigs);
      if (cfg.decay.resolved_min_eigs < 1)
        fail(pp + ".resolved_min_eigs", "must be >= 1");
    }

    if (e.contains("mehler")) {
      const Json& v = e.at("mehler");
      const std::string pp = "experiments.mehler";
      check_known_keys(v, pp, {"t_list", "box", "kernel_rtol",
                               "gradient_rtol"});
      cfg.mehler.t_list = get_list(v, "t_list", pp, cfg.mehler.t_list);
      for (double t : cfg.mehler.t_list)
        if (!(t > 0.0)) fail(pp + ".t_list", "entries must be positive");
      cfg.mehler.box = get_or(v, "box", pp, cfg.mehler.box);
      if (!(cfg.mehler.box > 0.0)) fail(pp + ".box", "must be positive");
      cfg.mehler.kernel_rtol =
          get_or(v, "kernel_rtol", pp, cfg.mehler.kernel_rtol);
      cfg.mehler.gradient_rtol =
          get_or(v, "gradient_rtol", pp, cfg.mehler.gradient_rtol);
      if (!(cfg.mehler.kernel_rtol > 0.0) || !(cfg.mehler.gradient_rtol > 0.0))
        fail(pp + ".kernel_rtol", "tolerances must be positive");
    }

    if (e.contains("gaussian_bound")) {
      const Json& v = e.at("gaussian_bound");
      const std::string pp = "experiments.gaussian_bound";
      check_known_keys(v, pp,
                       {"t_min", "t_max", "t_count", "box", "c_cap",
                        "c0_grid", "c1_grid", "t0_grid"});
      cfg.gaussian_bound.t_min = get_or(v, "t_min", pp, cfg.gaussian_bound.t_min);
      cfg.gaussian_bound.t_max = get_or(v, "t_max", pp, cfg.gaussian_bound.t_max);
      if (!(cfg.gaussian_bound.t_min > 0.0) ||
          !(cfg.gaussian_bound.t_max > cfg.gaussian_bound.t_min))
        fail(pp + ".t_min", "must satisfy 0 < t_min < t_max");
      cfg.gaussian_bound.t_count =
          get_or(v, "t_count", pp, cfg.gaussian_bound.t_count);
      if (cfg.gaussian_bound.t_count < 2)
        fail(pp + ".t_count", "must be >= 2");
      cfg.gaussian_bound.box = get_or(v, "box", pp, cfg.gaussian_bound.box);
      if (!(cfg.gaussian_bound.box > 0.0)) fail(pp + ".box", "must be positive");
      cfg.gaussian_bound.c_cap = get_or(v, "c_cap", pp, cfg.gaussian_bound.c_cap);
      if (!(cfg.gaussian_bound.c_cap > 0.0))
        fail(pp + ".c_cap", "must be positive");
      cfg.gaussian_bound.c0_grid =
          get_list(v, "c0_grid", pp, cfg.gaussian_bound.c0_grid);
      cfg.gaussian_bound.c1_grid =
          get_list(v, "c1_grid", pp, cfg.gaussian_bound.c1_grid);
      for (double c : cfg.gaussian_bound.c0_grid)
        if (!(c > 0.0 && c < 1.0))
          fail(pp + ".c0_grid", "entries must lie in (0, 1)");
      for (double c : cfg.gaussian_bound.c1_grid)
        if (!(c > 0.0 && c < 1.0))
          fail(pp + ".c1_grid", "entries must lie in (0, 1)");
      cfg.gaussian_bound.t0_grid =
          get_list(v, "t0_grid", pp, cfg.gaussian_bound.t0_grid);
      for (double t : cfg.gaussian_bound.t0_grid)
        if (!(t > 1.0)) fail(pp + ".t0_grid", "entries must exceed 1");
    }

    if (e.contains("hebisch")) {
      const Json& v = e.at("hebisch");
      const std::string pp = "experiments.hebisch";
      check_known_keys(v, pp,
                       {"beta_list", "sobolev_index", "j_min", "j_max",
                        "spread_ceiling", "resolved_min_eigs"});
      cfg.hebisch.beta_list = get_list(v, "beta_list", pp, cfg.hebisch.beta_list);
      double beta_max = 0.0;
      for (double b : cfg.hebisch.beta_list) {
        if (b < 0.0) fail(pp + ".beta_list", "entries must be >= 0");
        beta_max = std::max(beta_max, b);
      }
      cfg.hebisch.sobolev_index =
          get_or(v, "sobolev_index", pp, cfg.hebisch.sobolev_index);
      const double need = (cfg.grid.dim + 1) / 2.0 + beta_max;
      if (!(cfg.hebisch.sobolev_index > need))
        fail(pp + ".sobolev_index",
             "must exceed (n+1)/2 + max(beta) = " + std::to_string(need));
      cfg.hebisch.j_min = get_or(v, "j_min", pp, cfg.hebisch.j_min);
      cfg.hebisch.j_max = get_or(v, "j_max", pp, cfg.hebisch.j_max);
      if (cfg.hebisch.j_min > cfg.hebisch.j_max)
        fail(pp + ".j_min", "must not exceed j_max");
      cfg.hebisch.spread_ceiling =
          get_or(v, "spread_ceiling", pp, cfg.hebisch.spread_ceiling);
      if (!(cfg.hebisch.spread_ceiling > 1.0))
        fail(pp + ".spread_ceiling", "must exceed 1");
      cfg.hebisch.resolved_min_eigs =
          get_or(v, "resolved_min_eigs", pp, cfg.hebisch.resolved_min_eigs);
    }

    if (e.contains("equivalence")) {
      const Json& v = e.at("equivalence");
      const std::string pp = "experiments.equivalence";
      check_known_keys(v, pp, {"p_list", "spread_ceiling"});
      cfg.equivalence.p_list = get_list(v, "p_list", pp, cfg.equivalence.p_list);
      for (double p : cfg.equivalence.p_list)
        if (!(p > 1.0) || std::isinf(p))
          fail(pp + ".p_list",
               "entries must satisfy 1 < p < inf (the Littlewood-Paley "
               "equivalence needs p strictly between 1 and infinity)");
      cfg.equivalence.spread_ceiling =
          get_or(v, "spread_ceiling", pp, cfg.equivalence.spread_ceiling);
      if (!(cfg.equivalence.spread_ceiling > 1.0))
        fail(pp + ".spread_ceiling", "must exceed 1");
    }

    if (e.contains("maximal")) {
      const Json& v = e.at("maximal");
      const std::string pp = "experiments.maximal";
      check_known_keys(v, pp,
                       {"r_list", "p_list", "q", "s", "bernstein_ceiling",
                        "peetre_ceiling", "opnorm_ceiling"});
      cfg.maximal.r_list = get_list(v, "r_list", pp, cfg.maximal.r_list);
      for (double r : cfg.maximal.r_list)
        if (!(r > 0.0)) fail(pp + ".r_list", "entries must be positive");
      cfg.maximal.p_list = get_list(v, "p_list", pp, cfg.maximal.p_list);
      for (double p : cfg.maximal.p_list)
        if (!(p > 1.0)) fail(pp + ".p_list", "entries must exceed 1");
      cfg.maximal.q = get_or(v, "q", pp, cfg.maximal.q);
      if (!(cfg.maximal.q > 1.0)) fail(pp + ".q", "must exceed 1");
      cfg.maximal.s = get_or(v, "s", pp, cfg.maximal.s);
      if (!(cfg.maximal.s > 0.0)) fail(pp + ".s", "must be positive");
      cfg.maximal.bernstein_ceiling =
          get_or(v, "bernstein_ceiling", pp, cfg.maximal.bernstein_ceiling);
      cfg.maximal.peetre_ceiling =
          get_or(v, "peetre_ceiling", pp, cfg.maximal.peetre_ceiling);
      cfg.maximal.opnorm_ceiling =
          get_or(v, "opnorm_ceiling", pp, cfg.maximal.opnorm_ceiling);
    }

    if (e.contains("sobolev")) {
      const Json& v = e.at("sobolev");
      const std::string pp = "experiments.sobolev";
      check_known_keys(v, pp, {"s_list", "p_list", "spread_ceiling"});
      cfg.sobolev.s_list = get_list(v, "s_list", pp, cfg.sobolev.s_list);
      for (double s : cfg.sobolev.s_list)
        if (!(s >= 0.0)) fail(pp + ".s_list", "entries must be >= 0");
      cfg.sobolev.p_list = get_list(v, "p_list", pp, cfg.sobolev.p_list);
      for (double p : cfg.sobolev.p_list)
        if (!(p > 1.0)) fail(pp + ".p_list", "entries must exceed 1");
      cfg.sobolev.spread_ceiling =
          get_or(v, "spread_ceiling", pp, cfg.sobolev.spread_ceiling);
    }
  }

  return cfg;
}

RunConfig parse_config(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& err) {
    // Translate the byte offset into line/column for the error message.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < err.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw std::runtime_error("config: JSON parse error at line " +
                             std::to_string(line) + ", column " +
                             std::to_string(col) + ": " + err.what());
  }
  return config_from_json(doc);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace specband
