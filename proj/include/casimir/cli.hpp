#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "casimir/dielectric.hpp"
#include "casimir/lifshitz.hpp"

namespace casimir::cli {

enum class OutputFormat { table, csv, json };

enum ExitCode : int { kOk = 0, kUsage = 1, kNoConvergence = 2, kGoldenMismatch = 3 };

/// Everything a subcommand needs. Lengths on the command line and in config
/// files are in micrometres (separation) and centimetres (radius).
struct RunConfig {
  std::vector<double> separations_um;
  double R_cm = 15.10;
  double T_K = 300.0;
  std::vector<ModelKind> models;
  MaterialParameters material = MaterialParameters::germanium();
  EngineConfig engine;
  OutputFormat format = OutputFormat::table;
  std::string output_path;
  int precision = 2;
  bool verbose = false;
  unsigned jobs = 1;  // sweep points evaluated concurrently

  Geometry geometry(double a_um) const;
};

/// Overlays keys of a JSON config document onto cfg. Unknown keys are errors.
void apply_config(const nlohmann::json& doc, RunConfig& cfg);

/// Inclusive ascending grid; values rounded to 1e-9 um.
std::vector<double> expand_range(double start, double stop, double step);

/// "0.6:1.0:0.1" -> expand_range(0.6, 1.0, 0.1).
std::vector<double> parse_range(std::string_view text);

std::vector<ModelKind> parse_model_list(std::string_view list);

struct SweepRow {
  double a_um = 0.0;
  ModelKind model = ModelKind::neglected;
  ForceResult result;
};

/// All (separation, model) points, ordered by separation then model order in
/// cfg.models, regardless of cfg.jobs.
std::vector<SweepRow> run_sweep(const RunConfig& cfg);

// CSV with header a_um,model,force_pN,converged,l_used,rel_err_est.
// force_pN is the magnitude |F|.
struct CsvRow {
  double a_um = 0.0;
  std::string model;
  double force_pN = 0.0;
  bool converged = false;
  std::size_t l_used = 0;
  double rel_err_est = 0.0;
};

struct CsvTable {
  int precision = 2;
  std::vector<CsvRow> rows;
};

CsvTable to_csv_table(const std::vector<SweepRow>& rows, int precision);
std::string format_csv(const CsvTable& table);
/// Inverse of format_csv; precision is recovered from the force column.
CsvTable parse_csv(std::string_view text);

nlohmann::json to_json(const SweepRow& row, bool verbose);

std::string format_number(double v, int decimals);
std::string format_um(double a_um);

/// Published magnitudes in pN, rows a = 0.6 ... 1.0 um, columns in kAllModels order.
struct GoldenRow {
  double a_um;
  double force_pN[4];
};
const std::vector<GoldenRow>& golden_table();
/// Relative tolerance used by `table1 --check` for a model column.
double golden_tolerance(ModelKind model);

struct GoldenDiff {
  double a_um;
  ModelKind model;
  double computed_pN;
  double published_pN;
  double rel_diff;
  double tolerance;
  bool ok;
};

/// Rows must be the 5 x 4 grid of golden_table() in kAllModels order.
std::vector<GoldenDiff> diff_against_golden(const std::vector<SweepRow>& rows);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace casimir::cli
