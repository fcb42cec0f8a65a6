#include <doctest.h>

#include "approx.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/cli.hpp"

using namespace casimir;
using namespace casimir::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "casimir");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("force at a single separation") {
  const auto r = invoke({"force", "--model", "neglected", "--a", "0.8", "--format", "csv"});
  REQUIRE(r.code == kOk);
  const auto table = parse_csv(r.out);
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0].a_um == 0.8);
  CHECK(table.rows[0].force_pN == approx(291.28).epsilon(1e-12));
  CHECK(table.rows[0].converged);
  CHECK(r.out.find("0.8,neglected,291.28,true,") != std::string::npos);

  const auto p = invoke({"force", "--model", "plasma", "--a", "0.9", "--format", "csv"});
  REQUIRE(p.code == kOk);
  CHECK(parse_csv(p.out).rows[0].force_pN == approx(237.09).epsilon(1e-3));
}

TEST_CASE("human table and verbose metadata") {
  const auto r = invoke({"force", "--model", "drude,plasma", "--a", "1.0", "--verbose"});
  REQUIRE(r.code == kOk);
  CHECK(r.out.find("drude") != std::string::npos);
  CHECK(r.out.find("176.78") != std::string::npos);
  CHECK(r.out.find("l_used=") != std::string::npos);
  CHECK(r.out.find("converged=true") != std::string::npos);
}

TEST_CASE("usage errors exit with 1") {
  CHECK(invoke({"force", "--model", "", "--a", "0.8"}).code == kUsage);
  CHECK(invoke({"force", "--model", "metal", "--a", "0.8"}).code == kUsage);
  CHECK(invoke({"force", "--model", "drude"}).code == kUsage);
  CHECK(invoke({"force", "--a", "-0.5"}).code == kUsage);
  CHECK(invoke({"force", "--a", "0.8", "--format", "xml"}).code == kUsage);
  CHECK(invoke({"force", "--a", "0.8", "--rel-tol", "0.1"}).code == kUsage);
  CHECK(invoke({"sweep", "--a-range", "1.0:0.6:0.1"}).code == kUsage);
  CHECK(invoke({"sweep", "--a-range", "0.6:1.0"}).code == kUsage);
  CHECK(invoke({"compare", "--model", "drude", "--a", "0.6"}).code == kUsage);
  CHECK(invoke({"bogus"}).code == kUsage);
  CHECK(invoke({}).code == kUsage);
}

TEST_CASE("non-convergence exits with 2") {
  const auto cfg = temp_file("casimir_cfg_lmax.json", R"({"engine": {"l_max_hard": 2}})");
  const auto r = invoke({"force", "--config", cfg.string(), "--a", "0.6", "--model", "drude"});
  CHECK(r.code == kNoConvergence);
  CHECK(r.err.find("not converged") != std::string::npos);
}

TEST_CASE("config file") {
  const auto cfg = temp_file("casimir_cfg_ok.json", R"({
    "a_range_um": [0.6, 0.8, 0.1],
    "models": ["neglected", "diffusion"],
    "R_cm": 15.10, "T_K": 300,
    "engine": {"rel_tol": 1e-9, "quadrature_rule": "gk31"},
    "format": "csv", "precision": 3
  })");
  const auto r = invoke({"sweep", "--config", cfg.string()});
  REQUIRE(r.code == kOk);
  const auto t = parse_csv(r.out);
  REQUIRE(t.rows.size() == 6);
  CHECK(t.precision == 3);
  CHECK(t.rows[0].model == "neglected");
  CHECK(t.rows[1].model == "diffusion");
  CHECK(t.rows[5].a_um == 0.8);

  // Command-line flags override the file.
  const auto o = invoke({"sweep", "--config", cfg.string(), "--a", "1.0", "--format", "table"});
  REQUIRE(o.code == kOk);
  CHECK(o.out.find("152.004") != std::string::npos);

  const auto unknown = temp_file("casimir_cfg_bad.json", R"({"separation": 1.0})");
  CHECK(invoke({"force", "--config", unknown.string()}).code == kUsage);
  const auto malformed = temp_file("casimir_cfg_broken.json", "{ not json");
  CHECK(invoke({"force", "--config", malformed.string()}).code == kUsage);
  const auto wrong_type = temp_file("casimir_cfg_type.json", R"({"T_K": "hot"})");
  CHECK(invoke({"force", "--config", wrong_type.string(), "--a", "1"}).code == kUsage);
}

TEST_CASE("material overrides reach the engine") {
  const auto cfg = temp_file("casimir_cfg_material.json",
                             R"({"material": {"electrons": {"density_cm3": 0}, "holes": {"density_cm3": 0}}})");
  const auto r = invoke({"force", "--config", cfg.string(), "--a", "0.6", "--model", "neglected,diffusion",
                         "--format", "csv", "--precision", "6"});
  REQUIRE(r.code == kOk);
  const auto t = parse_csv(r.out);
  CHECK(t.rows[0].force_pN == approx(t.rows[1].force_pN).epsilon(1e-12));
}

TEST_CASE("table1 reproduces the published grid") {
  const auto r = invoke({"table1", "--check", "--format", "csv"});
  REQUIRE(r.code == kOk);
  const auto grid = r.out.substr(0, r.out.find("# diff"));
  const auto t = parse_csv(grid);
  REQUIRE(t.rows.size() == 20);
  const char* order[] = {"neglected", "drude", "plasma", "diffusion"};
  for (std::size_t i = 0; i < 20; ++i) CHECK(t.rows[i].model == order[i % 4]);
  CHECK(r.out.find("0.6,diffusion,706.98,706.63,") != std::string::npos);
  CHECK(r.out.find("MISMATCH") == std::string::npos);

  // Loosened tolerance still agrees to the printed decimals.
  const auto loose = invoke({"table1", "--format", "csv", "--rel-tol", "1e-4"});
  REQUIRE(loose.code == kOk);
  CHECK(loose.out.substr(0, loose.out.find("# diff")).size() == grid.size());
  const auto tl = parse_csv(loose.out.substr(0, loose.out.find("# diff")));
  for (std::size_t i = 0; i < 20; ++i) CHECK(tl.rows[i].force_pN == t.rows[i].force_pN);
}

TEST_CASE("table1 json carries the diff") {
  const auto r = invoke({"table1", "--format", "json"});
  REQUIRE(r.code == kOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("results").size() == 20);
  CHECK(j.at("diff").size() == 20);
  CHECK(j.at("match").get<bool>());
}

TEST_CASE("golden diff flags values outside tolerance") {
  RunConfig cfg;
  cfg.models.assign(std::begin(kAllModels), std::end(kAllModels));
  for (const auto& g : golden_table()) cfg.separations_um.push_back(g.a_um);
  auto rows = run_sweep(cfg);
  const auto clean = diff_against_golden(rows);
  REQUIRE(clean.size() == 20);
  for (const auto& d : clean) CHECK(d.ok);

  // 0.2% off in a Drude entry breaks the 0.1% band; 0.5% off in diffusion does not break 1%.
  rows[1].result.magnitude *= 1.002;
  rows[3].result.magnitude *= 1.005;
  const auto perturbed = diff_against_golden(rows);
  CHECK_FALSE(perturbed[1].ok);
  CHECK(perturbed[3].ok);
  CHECK(golden_tolerance(ModelKind::neglected) == 1e-3);
  CHECK(golden_tolerance(ModelKind::diffusion) == 1e-2);
}

TEST_CASE("compare reports both claims") {
  const auto r = invoke({"compare", "--model", "drude,plasma", "--a", "0.6"});
  REQUIRE(r.code == kOk);
  CHECK(r.out.find("almost identical (drude vs plasma): PASS (<0.02%)") != std::string::npos);
  CHECK(r.out.find("|F_drude| <= |F_plasma|: PASS") != std::string::npos);

  const auto all = invoke({"compare"});
  REQUIRE(all.code == kOk);
  CHECK(all.out.find("ordering |F_neglected| < |F_diffusion| < |F_drude| <= |F_plasma|: PASS") != std::string::npos);

  const auto j = invoke({"compare", "--format", "json", "--a", "0.8"});
  REQUIRE(j.code == kOk);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc.at("ordering").at("pass").get<bool>());
  CHECK(doc.at("almost_identical").at("pass").get<bool>());
  CHECK(doc.at("differences").size() == 6);
}

TEST_CASE("json output carries every result field") {
  const auto r = invoke({"force", "--model", "plasma", "--a", "0.7", "--format", "json", "--verbose"});
  REQUIRE(r.code == kOk);
  const auto row = nlohmann::json::parse(r.out).at("results").at(0);
  for (const char* key : {"a_um", "model", "force_N", "magnitude_N", "force_pN", "l_used", "truncation_bound_N",
                          "converged", "rel_err_est", "terms"})
    CHECK(row.contains(key));
  CHECK(row.at("terms").size() == row.at("l_used").get<std::size_t>() + 1);
  const auto t0 = row.at("terms").at(0);
  for (const char* key : {"l", "zeta", "weight", "tm_contribution_N", "te_contribution_N", "quadrature_error_estimate_N"})
    CHECK(t0.contains(key));
  CHECK(row.at("force_N").get<double>() < 0.0);

  const auto quiet = invoke({"force", "--model", "plasma", "--a", "0.7", "--format", "json"});
  CHECK_FALSE(nlohmann::json::parse(quiet.out).at("results").at(0).contains("terms"));
}

TEST_CASE("output file") {
  const auto path = std::filesystem::temp_directory_path() / "casimir_out.csv";
  std::filesystem::remove(path);
  const auto r = invoke({"force", "--a", "1.0", "--format", "csv", "--output", path.string()});
  REQUIRE(r.code == kOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(parse_csv(ss.str()).rows.size() == 4);
}

TEST_CASE("CSV round trip is byte-stable") {
  const auto r = invoke({"sweep", "--a-range", "0.6:1.0:0.1", "--format", "csv"});
  REQUIRE(r.code == kOk);
  CHECK(format_csv(parse_csv(r.out)) == r.out);

  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> force(0.0, 5000.0);
  std::uniform_real_distribution<double> err_exp(-16.0, -3.0);
  std::uniform_int_distribution<int> prec(0, 8);
  std::uniform_int_distribution<int> grid(1, 200);
  for (int trial = 0; trial < 200; ++trial) {
    CsvTable t;
    t.precision = prec(rng);
    for (int k = 0; k < 5; ++k)
      t.rows.push_back({grid(rng) * 0.05, std::string(model_name(kAllModels[k % 4])), force(rng), k % 3 != 0,
                        static_cast<std::size_t>(grid(rng)), std::pow(10.0, err_exp(rng))});
    const std::string once = format_csv(t);
    CHECK(format_csv(parse_csv(once)) == once);
  }
  CHECK_THROWS_AS(parse_csv("a,b\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_csv("a_um,model,force_pN,converged,l_used,rel_err_est\n0.6,drude,1.0\n"),
                  std::invalid_argument);
}

TEST_CASE("range expansion") {
  const auto r = expand_range(0.6, 1.0, 0.1);
  REQUIRE(r.size() == 5);
  CHECK(r[1] == 0.7);
  CHECK(r[4] == 1.0);
  CHECK(format_um(r[1]) == "0.7");
  CHECK(format_um(1.0) == "1.0");
  CHECK(expand_range(0.5, 0.5, 0.1).size() == 1);
  CHECK_THROWS_AS(expand_range(0.6, 1.0, 0.0), std::invalid_argument);
  CHECK(parse_model_list("all").size() == 4);
  CHECK(parse_model_list(" drude , plasma ").size() == 2);
}

TEST_CASE("parallel sweep is bit-identical to sequential") {
  const auto seq = invoke({"sweep", "--a-range", "0.6:1.0:0.05", "--format", "csv", "--precision", "10"});
  const auto par = invoke({"sweep", "--a-range", "0.6:1.0:0.05", "--format", "csv", "--precision", "10",
                           "--jobs", "6", "--threads", "3"});
  REQUIRE(seq.code == kOk);
  REQUIRE(par.code == kOk);
  CHECK(seq.out == par.out);
}
