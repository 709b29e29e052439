#include <doctest.h>

#include <fstream>

#include "specband/config.hpp"

using namespace specband;

TEST_CASE("minimal config applies all defaults") {
  RunConfig cfg = parse_config(R"({"potential": {"kind": "hermite"}})");
  CHECK(cfg.grid.points_per_axis == 1024);
  CHECK(cfg.grid.halfwidth == 12.0);
  CHECK(cfg.stencil_order == 4);
  CHECK(cfg.dyadic.j_min == 0);
  CHECK(cfg.dyadic.j_max == 9);
  CHECK(cfg.corpus.count == 50);
  CHECK(cfg.equivalence.p_list ==
        std::vector<double>{1.5, 2.0, 3.0, 4.0});
  CHECK(cfg.output.format == "both");
  // echo reflects the defaulted document
  const Json echo = cfg.echo();
  CHECK(echo.at("grid").at("points_per_axis") == 1024);
  CHECK(echo.at("experiments").at("decay").at("spread_ceiling") == 50.0);
}

TEST_CASE("unknown keys are rejected with their path") {
  try {
    parse_config(R"({"potental": {"kind": "hermite"}})");
    FAIL("expected rejection");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("potental") != std::string::npos);
  }
  try {
    parse_config(R"({"experiments": {"decay": {"N_lst": [1]}}})");
    FAIL("expected rejection");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("N_lst") != std::string::npos);
  }
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_config("{\n  \"grid\": {,}\n}");
    FAIL("expected parse error");
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(msg.find("column") != std::string::npos);
  }
}

TEST_CASE("equivalence p_list rejects the endpoint p = 1") {
  CHECK_THROWS_AS(
      parse_config(R"({"experiments": {"equivalence": {"p_list": [1.0]}}})"),
      std::runtime_error);
  CHECK_THROWS_AS(
      parse_config(R"({"experiments": {"equivalence": {"p_list": [0.5]}}})"),
      std::runtime_error);
  RunConfig ok = parse_config(
      R"({"experiments": {"equivalence": {"p_list": [1.5, 3.0]}}})");
  CHECK(ok.equivalence.p_list.size() == 2);
}

TEST_CASE("schema constraints on grid, operator, dyadic") {
  CHECK_THROWS_AS(parse_config(R"({"grid": {"dim": 3}})"), std::runtime_error);
  CHECK_THROWS_AS(parse_config(R"({"grid": {"points_per_axis": 4}})"),
                  std::runtime_error);
  CHECK_THROWS_AS(
      parse_config(R"({"grid": {"dim": 2, "points_per_axis": 128}})"),
      std::runtime_error);
  CHECK_THROWS_AS(parse_config(R"({"operator": {"stencil_order": 3}})"),
                  std::runtime_error);
  CHECK_THROWS_AS(parse_config(R"({"dyadic": {"j_min": 5, "j_max": 1}})"),
                  std::runtime_error);
  CHECK_THROWS_AS(parse_config(R"({"dyadic": {"profile": "boxcar"}})"),
                  std::runtime_error);
  CHECK_THROWS_AS(
      parse_config(R"({"potential": {"kind": "poschl_teller"}, "grid": {"dim": 2, "points_per_axis": 32}})"),
      std::runtime_error);
  CHECK_THROWS_AS(parse_config(R"({"potential": {"kind": "tabulated"}})"),
                  std::runtime_error);
  CHECK_THROWS_AS(parse_config(R"({"corpus": {"band": [5.0, 1.0]}})"),
                  std::runtime_error);
  CHECK_THROWS_AS(
      parse_config(R"({"experiments": {"gaussian_bound": {"c0_grid": [1.5]}}})"),
      std::runtime_error);
  CHECK_THROWS_AS(
      parse_config(R"({"experiments": {"hebisch": {"sobolev_index": 1.0}}})"),
      std::runtime_error);
  CHECK_THROWS_AS(parse_config(R"({"schema_version": 2})"),
                  std::runtime_error);
}

TEST_CASE("load_config reads a file and reports missing ones") {
  const std::string path = "/tmp/specband_test_cfg.json";
  {
    std::ofstream out(path);
    out << R"({"grid": {"points_per_axis": 64, "halfwidth": 6.0}})";
  }
  RunConfig cfg = load_config(path);
  CHECK(cfg.grid.points_per_axis == 64);
  CHECK(cfg.grid.halfwidth == 6.0);
  CHECK_THROWS_AS(load_config("/tmp/no_such_config_file.json"),
                  std::runtime_error);
}

TEST_CASE("config hash is stable and content sensitive") {
  RunConfig a = default_config();
  RunConfig b = default_config();
  CHECK(config_hash(a.echo()) == config_hash(b.echo()));
  b.corpus.seed = 999;
  CHECK(config_hash(a.echo()) != config_hash(b.echo()));
}
