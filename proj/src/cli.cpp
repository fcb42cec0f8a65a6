#include "casimir/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "casimir/errors.hpp"

namespace casimir::cli {

using nlohmann::json;

namespace {

constexpr double kPicoNewton = 1e12;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    out.push_back(std::string(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

double parse_double(std::string_view text, std::string_view what) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw std::invalid_argument("cannot parse " + std::string(what) + " from '" + t + "'");
  return v;
}

std::string format_sci(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits, v);
  return buf;
}

OutputFormat parse_format(std::string_view name) {
  if (name == "table") return OutputFormat::table;
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown output format '" + std::string(name) + "' (expected table, csv or json)");
}

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, std::string_view where) {
  if (!obj.is_object()) throw std::invalid_argument(std::string(where) + " must be a JSON object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw std::invalid_argument("unknown config key '" + key + "' in " + std::string(where));
  }
}

void apply_species(const json& obj, CarrierSpecies& s, std::string_view where) {
  check_keys(obj, {"density_cm3", "mass_ratio", "gamma"}, where);
  if (obj.contains("density_cm3")) s.density = obj.at("density_cm3").get<double>();
  if (obj.contains("mass_ratio")) s.mass_ratio = obj.at("mass_ratio").get<double>();
  if (obj.contains("gamma")) s.gamma = obj.at("gamma").get<double>();
}

std::vector<ModelKind> models_from_json(const json& j) {
  if (j.is_string()) return parse_model_list(j.get<std::string>());
  std::vector<ModelKind> out;
  for (const auto& m : j) out.push_back(parse_model(m.get<std::string>()));
  if (out.empty()) throw std::invalid_argument("model list is empty");
  return out;
}

std::string header_row(const std::vector<ModelKind>& models) {
  std::ostringstream os;
  os << std::setw(8) << "a (um)";
  for (auto m : models) os << std::setw(12) << model_name(m);
  return os.str();
}

// Rows grouped by separation, one column per model, |F| in pN.
void write_grid(std::ostream& os, const std::vector<SweepRow>& rows, const RunConfig& cfg) {
  os << header_row(cfg.models) << "\n";
  const std::size_t width = cfg.models.size();
  for (std::size_t i = 0; i < rows.size(); i += width) {
    os << std::setw(8) << format_um(rows[i].a_um);
    for (std::size_t k = 0; k < width; ++k)
      os << std::setw(12) << format_number(rows[i + k].result.magnitude * kPicoNewton, cfg.precision);
    os << "\n";
  }
}

void write_metadata(std::ostream& os, const std::vector<SweepRow>& rows) {
  for (const auto& r : rows) {
    os << "# a_um=" << format_um(r.a_um) << " model=" << model_name(r.model) << " l_used=" << r.result.l_used
       << " converged=" << (r.result.converged ? "true" : "false")
       << " truncation_bound_pN=" << format_sci(r.result.truncation_bound * kPicoNewton, 3)
       << " rel_err_est=" << format_sci(r.result.rel_err_est(), 3) << "\n";
  }
}

void emit_rows(std::ostream& os, const std::vector<SweepRow>& rows, const RunConfig& cfg) {
  switch (cfg.format) {
    case OutputFormat::table:
      write_grid(os, rows, cfg);
      if (cfg.verbose) write_metadata(os, rows);
      break;
    case OutputFormat::csv: os << format_csv(to_csv_table(rows, cfg.precision)); break;
    case OutputFormat::json: {
      json arr = json::array();
      for (const auto& r : rows) arr.push_back(to_json(r, cfg.verbose));
      os << json{{"results", arr}}.dump(2) << "\n";
      break;
    }
  }
}

struct CommonFlags {
  std::string config_path;
  std::optional<std::string> models;
  std::vector<double> a_um;
  std::string a_range;
  std::optional<double> R_cm;
  std::optional<double> T_K;
  std::string format;
  std::optional<double> rel_tol;
  std::optional<int> precision;
  std::optional<unsigned> jobs;
  std::optional<unsigned> threads;
  std::string output;
  bool verbose = false;
  bool check = false;
};

void add_common(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--config", f.config_path, "JSON config file")->check(CLI::ExistingFile);
  sub->add_option("--model", f.models, "comma-separated models: neglected,drude,plasma,diffusion or all");
  sub->add_option("--a", f.a_um, "separation(s) in um")->delimiter(',');
  sub->add_option("--a-range", f.a_range, "separation grid start:stop:step in um");
  sub->add_option("--R", f.R_cm, "sphere radius in cm");
  sub->add_option("--T", f.T_K, "temperature in K");
  sub->add_option("--format", f.format, "table, csv or json");
  sub->add_option("--rel-tol", f.rel_tol, "relative tolerance of the engine");
  sub->add_option("--precision", f.precision, "decimals printed for |F| in pN");
  sub->add_option("--jobs", f.jobs, "sweep points evaluated concurrently");
  sub->add_option("--threads", f.threads, "Matsubara terms evaluated concurrently per point");
  sub->add_option("--output,-o", f.output, "write the report to this file");
  sub->add_flag("--verbose,-v", f.verbose, "print convergence metadata");
}

// Defaults, then the config file, then command-line flags.
RunConfig build_config(const CommonFlags& f) {
  RunConfig cfg;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw std::invalid_argument(std::string("malformed config file: ") + e.what());
    }
    apply_config(doc, cfg);
  }
  if (f.models) cfg.models = parse_model_list(*f.models);
  if (!f.a_um.empty()) cfg.separations_um = f.a_um;
  if (!f.a_range.empty()) cfg.separations_um = parse_range(f.a_range);
  if (f.R_cm) cfg.R_cm = *f.R_cm;
  if (f.T_K) cfg.T_K = *f.T_K;
  if (!f.format.empty()) cfg.format = parse_format(f.format);
  if (f.rel_tol) cfg.engine.rel_tol = *f.rel_tol;
  if (f.precision) cfg.precision = *f.precision;
  if (f.jobs) cfg.jobs = *f.jobs;
  if (f.threads) cfg.engine.threads = *f.threads;
  if (!f.output.empty()) cfg.output_path = f.output;
  if (f.verbose) cfg.verbose = true;

  if (cfg.precision < 0 || cfg.precision > 12) throw std::invalid_argument("precision must lie in [0, 12]");
  if (cfg.jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  cfg.engine.validate();
  cfg.material.osc.validate();
  cfg.material.electrons.validate();
  cfg.material.holes.validate();
  for (double a : cfg.separations_um) cfg.geometry(a).validate();
  if (!(cfg.T_K > 0.0)) throw std::invalid_argument("temperature must be positive");
  return cfg;
}

void require_separations(const RunConfig& cfg) {
  if (cfg.separations_um.empty()) throw std::invalid_argument("no separation given (use --a or --a-range)");
  if (!std::is_sorted(cfg.separations_um.begin(), cfg.separations_um.end()))
    throw std::invalid_argument("separations must be ascending");
}

void warn_pfa(const RunConfig& cfg, std::ostream& err) {
  for (double a : cfg.separations_um)
    if (!cfg.geometry(a).pfa_valid())
      err << "warning: a/R = " << format_sci(a * 1e-4 / cfg.R_cm, 2)
          << " exceeds 1e-3; the proximity force approximation may be inaccurate\n";
}

int cmd_force(RunConfig cfg, std::ostream& out, std::ostream& err) {
  if (cfg.models.empty()) cfg.models.assign(std::begin(kAllModels), std::end(kAllModels));
  require_separations(cfg);
  warn_pfa(cfg, err);
  emit_rows(out, run_sweep(cfg), cfg);
  return kOk;
}

struct PairDiff {
  double a_um;
  ModelKind first;
  ModelKind second;
  double diff_pN;
  double rel_pct;
};

int ordering_rank(ModelKind m) {
  switch (m) {
    case ModelKind::neglected: return 0;
    case ModelKind::diffusion: return 1;
    case ModelKind::drude: return 2;
    case ModelKind::plasma: return 3;
  }
  return 0;
}

int cmd_compare(RunConfig cfg, std::ostream& out, std::ostream& err) {
  if (cfg.models.empty()) cfg.models.assign(std::begin(kAllModels), std::end(kAllModels));
  if (cfg.models.size() < 2) throw std::invalid_argument("compare needs at least two models");
  if (cfg.separations_um.empty()) cfg.separations_um = expand_range(0.6, 1.0, 0.1);
  require_separations(cfg);
  warn_pfa(cfg, err);
  const auto rows = run_sweep(cfg);
  const std::size_t width = cfg.models.size();

  std::vector<PairDiff> diffs;
  double max_drude_plasma = -1.0;
  bool ordering_ok = true;
  std::vector<std::string> ordering_failures;
  for (std::size_t i = 0; i < rows.size(); i += width) {
    for (std::size_t p = 0; p < width; ++p) {
      for (std::size_t q = p + 1; q < width; ++q) {
        const auto& ra = rows[i + p];
        const auto& rb = rows[i + q];
        const double d = (ra.result.magnitude - rb.result.magnitude) * kPicoNewton;
        const double rel = 100.0 * (ra.result.magnitude - rb.result.magnitude) / rb.result.magnitude;
        diffs.push_back({ra.a_um, ra.model, rb.model, d, rel});
        const bool dp = (ra.model == ModelKind::drude && rb.model == ModelKind::plasma) ||
                        (ra.model == ModelKind::plasma && rb.model == ModelKind::drude);
        if (dp) max_drude_plasma = std::max(max_drude_plasma, std::abs(rel));
      }
    }
    // Chain in canonical order: neglected < diffusion < drude <= plasma.
    std::vector<const SweepRow*> chain;
    for (std::size_t k = 0; k < width; ++k) chain.push_back(&rows[i + k]);
    std::sort(chain.begin(), chain.end(),
              [](const SweepRow* x, const SweepRow* y) { return ordering_rank(x->model) < ordering_rank(y->model); });
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      const auto& lo = *chain[k];
      const auto& hi = *chain[k + 1];
      const bool weak = lo.model == ModelKind::drude && hi.model == ModelKind::plasma;
      const bool ok = weak ? lo.result.magnitude <= hi.result.magnitude : lo.result.magnitude < hi.result.magnitude;
      if (!ok) {
        ordering_ok = false;
        ordering_failures.push_back(format_um(lo.a_um) + ":" + std::string(model_name(lo.model)) + "/" +
                                    std::string(model_name(hi.model)));
      }
    }
  }

  std::vector<ModelKind> chain_models = cfg.models;
  std::sort(chain_models.begin(), chain_models.end(),
            [](ModelKind x, ModelKind y) { return ordering_rank(x) < ordering_rank(y); });
  std::string chain_text;
  for (std::size_t k = 0; k < chain_models.size(); ++k) {
    if (k > 0)
      chain_text += (chain_models[k - 1] == ModelKind::drude && chain_models[k] == ModelKind::plasma) ? " <= " : " < ";
    chain_text += "|F_" + std::string(model_name(chain_models[k])) + "|";
  }
  const bool have_dp = max_drude_plasma >= 0.0;
  const bool identical_ok = !have_dp || max_drude_plasma <= 0.02;

  if (cfg.format == OutputFormat::json) {
    json j;
    json res = json::array();
    for (const auto& r : rows) res.push_back(to_json(r, cfg.verbose));
    j["results"] = res;
    json jd = json::array();
    for (const auto& d : diffs)
      jd.push_back({{"a_um", d.a_um},
                    {"model_a", model_name(d.first)},
                    {"model_b", model_name(d.second)},
                    {"diff_pN", d.diff_pN},
                    {"rel_diff_pct", d.rel_pct}});
    j["differences"] = jd;
    j["ordering"] = {{"chain", chain_text}, {"pass", ordering_ok}};
    if (have_dp) j["almost_identical"] = {{"max_rel_diff_pct", max_drude_plasma}, {"threshold_pct", 0.02}, {"pass", identical_ok}};
    out << j.dump(2) << "\n";
    return kOk;
  }

  if (cfg.format == OutputFormat::csv)
    out << format_csv(to_csv_table(rows, cfg.precision));
  else
    write_grid(out, rows, cfg);
  if (cfg.verbose && cfg.format == OutputFormat::table) write_metadata(out, rows);
  out << "# pairwise differences |F_a| - |F_b|\n";
  out << "a_um,model_a,model_b,diff_pN,rel_diff_pct\n";
  for (const auto& d : diffs)
    out << format_um(d.a_um) << "," << model_name(d.first) << "," << model_name(d.second) << ","
        << format_number(d.diff_pN, cfg.precision) << "," << format_number(d.rel_pct, 4) << "\n";
  if (have_dp)
    out << "almost identical (drude vs plasma): " << (identical_ok ? "PASS" : "FAIL")
        << " (<0.02%), max relative difference " << format_number(max_drude_plasma, 4) << "%\n";
  out << "ordering " << chain_text << ": " << (ordering_ok ? "PASS" : "FAIL");
  for (const auto& f : ordering_failures) out << " " << f;
  out << "\n";
  return kOk;
}

int cmd_table1(RunConfig cfg, bool check, std::ostream& out, std::ostream&) {
  cfg.models.assign(std::begin(kAllModels), std::end(kAllModels));
  cfg.separations_um.clear();
  for (const auto& g : golden_table()) cfg.separations_um.push_back(g.a_um);
  cfg.R_cm = 15.10;
  cfg.T_K = 300.0;
  cfg.material = MaterialParameters::germanium();
  const auto rows = run_sweep(cfg);

  const auto lines = diff_against_golden(rows);
  const bool all_ok = std::all_of(lines.begin(), lines.end(), [](const GoldenDiff& d) { return d.ok; });

  if (cfg.format == OutputFormat::json) {
    json j;
    json res = json::array();
    for (const auto& r : rows) res.push_back(to_json(r, cfg.verbose));
    j["results"] = res;
    json jd = json::array();
    for (const auto& d : lines)
      jd.push_back({{"a_um", d.a_um},
                    {"model", model_name(d.model)},
                    {"computed_pN", d.computed_pN},
                    {"published_pN", d.published_pN},
                    {"rel_diff", d.rel_diff},
                    {"tolerance", d.tolerance},
                    {"ok", d.ok}});
    j["diff"] = jd;
    j["match"] = all_ok;
    out << j.dump(2) << "\n";
  } else {
    if (cfg.format == OutputFormat::table)
      out << "|F(a,T)| in pN, R = 15.10 cm, T = 300 K\n";
    emit_rows(out, rows, cfg);
    out << "# diff against published values\n";
    out << "a_um,model,computed_pN,published_pN,rel_diff,tolerance,status\n";
    for (const auto& d : lines)
      out << format_um(d.a_um) << "," << model_name(d.model) << "," << format_number(d.computed_pN, cfg.precision) << ","
          << format_number(d.published_pN, 2) << "," << format_sci(d.rel_diff, 2) << ","
          << format_sci(d.tolerance, 1) << ","
          << (d.ok ? "ok" : "MISMATCH") << "\n";
  }
  return (check && !all_ok) ? kGoldenMismatch : kOk;
}

}  // namespace

Geometry RunConfig::geometry(double a_um) const { return Geometry{a_um * 1e-6, R_cm * 1e-2, T_K}; }

void apply_config(const json& doc, RunConfig& cfg) {
  try {
    check_keys(doc,
               {"a_um", "a_range_um", "R_cm", "T_K", "models", "material", "engine", "format", "output", "precision",
                "verbose", "jobs"},
               "config");
    if (doc.contains("a_um")) {
      const auto& a = doc.at("a_um");
      cfg.separations_um = a.is_array() ? a.get<std::vector<double>>() : std::vector<double>{a.get<double>()};
    }
    if (doc.contains("a_range_um")) {
      const auto r = doc.at("a_range_um").get<std::vector<double>>();
      if (r.size() != 3) throw std::invalid_argument("a_range_um must be [start, stop, step]");
      cfg.separations_um = expand_range(r[0], r[1], r[2]);
    }
    if (doc.contains("R_cm")) cfg.R_cm = doc.at("R_cm").get<double>();
    if (doc.contains("T_K")) cfg.T_K = doc.at("T_K").get<double>();
    if (doc.contains("models")) cfg.models = models_from_json(doc.at("models"));
    if (doc.contains("material")) {
      const auto& m = doc.at("material");
      check_keys(m, {"eps_inf", "eps_0", "omega_0", "electrons", "holes"}, "material");
      if (m.contains("eps_inf")) cfg.material.osc.eps_inf = m.at("eps_inf").get<double>();
      if (m.contains("eps_0")) cfg.material.osc.eps_0 = m.at("eps_0").get<double>();
      if (m.contains("omega_0")) cfg.material.osc.omega_0 = m.at("omega_0").get<double>();
      if (m.contains("electrons")) apply_species(m.at("electrons"), cfg.material.electrons, "material.electrons");
      if (m.contains("holes")) apply_species(m.at("holes"), cfg.material.holes, "material.holes");
    }
    if (doc.contains("engine")) {
      const auto& e = doc.at("engine");
      check_keys(e, {"rel_tol", "y_tail_cut", "l_max_hard", "quadrature_rule", "max_intervals", "threads"}, "engine");
      if (e.contains("rel_tol")) cfg.engine.rel_tol = e.at("rel_tol").get<double>();
      if (e.contains("y_tail_cut")) cfg.engine.y_tail_cut = e.at("y_tail_cut").get<double>();
      if (e.contains("l_max_hard")) cfg.engine.l_max_hard = e.at("l_max_hard").get<std::size_t>();
      if (e.contains("quadrature_rule")) cfg.engine.quadrature_rule = parse_rule(e.at("quadrature_rule").get<std::string>());
      if (e.contains("max_intervals")) cfg.engine.max_intervals = e.at("max_intervals").get<std::size_t>();
      if (e.contains("threads")) cfg.engine.threads = e.at("threads").get<unsigned>();
    }
    if (doc.contains("format")) cfg.format = parse_format(doc.at("format").get<std::string>());
    if (doc.contains("output")) cfg.output_path = doc.at("output").get<std::string>();
    if (doc.contains("precision")) cfg.precision = doc.at("precision").get<int>();
    if (doc.contains("verbose")) cfg.verbose = doc.at("verbose").get<bool>();
    if (doc.contains("jobs")) cfg.jobs = doc.at("jobs").get<unsigned>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad config value: ") + e.what());
  }
}

std::vector<double> expand_range(double start, double stop, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("range step must be positive");
  if (!(stop >= start)) throw std::invalid_argument("range must be ascending (stop >= start)");
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
  for (std::size_t i = 0; i <= n; ++i)
    out.push_back(std::round((start + static_cast<double>(i) * step) * 1e9) / 1e9);
  return out;
}

std::vector<double> parse_range(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw std::invalid_argument("--a-range expects start:stop:step, got '" + std::string(text) + "'");
  return expand_range(parse_double(parts[0], "range start"), parse_double(parts[1], "range stop"),
                      parse_double(parts[2], "range step"));
}

std::vector<ModelKind> parse_model_list(std::string_view list) {
  std::vector<ModelKind> out;
  for (const auto& raw : split(list, ',')) {
    const std::string name = trim(raw);
    if (name.empty()) continue;
    if (name == "all") {
      out.insert(out.end(), std::begin(kAllModels), std::end(kAllModels));
      continue;
    }
    out.push_back(parse_model(name));
  }
  if (out.empty()) throw std::invalid_argument("model list is empty");
  return out;
}

std::vector<SweepRow> run_sweep(const RunConfig& cfg) {
  std::vector<SweepRow> rows;
  std::vector<MaterialModel> models;
  for (auto k : cfg.models) models.push_back(make_model(k, cfg.material));
  for (double a : cfg.separations_um)
    for (auto k : cfg.models) rows.push_back({a, k, {}});

  auto evaluate = [&](std::size_t i) {
    auto& row = rows[i];
    row.result = casimir_force(models[i % models.size()], cfg.geometry(row.a_um), cfg.engine);
  };

  if (cfg.jobs <= 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) evaluate(i);
    return rows;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(rows.size());
  std::vector<std::thread> workers;
  const unsigned n_workers = std::min<std::size_t>(cfg.jobs, rows.size());
  for (unsigned w = 0; w < n_workers; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < rows.size(); i = next++) {
        try {
          evaluate(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

std::string format_number(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string format_um(double a_um) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, a_um);
  std::string s(buf, ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

CsvTable to_csv_table(const std::vector<SweepRow>& rows, int precision) {
  CsvTable t;
  t.precision = precision;
  for (const auto& r : rows)
    t.rows.push_back({r.a_um, std::string(model_name(r.model)), r.result.magnitude * kPicoNewton, r.result.converged,
                      r.result.l_used, r.result.rel_err_est()});
  return t;
}

std::string format_csv(const CsvTable& table) {
  std::ostringstream os;
  os << "a_um,model,force_pN,converged,l_used,rel_err_est\n";
  for (const auto& r : table.rows)
    os << format_um(r.a_um) << "," << r.model << "," << format_number(r.force_pN, table.precision) << ","
       << (r.converged ? "true" : "false") << "," << r.l_used << "," << format_sci(r.rel_err_est, 3) << "\n";
  return os.str();
}

CsvTable parse_csv(std::string_view text) {
  CsvTable t;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || trim(line) != "a_um,model,force_pN,converged,l_used,rel_err_est")
    throw std::invalid_argument("CSV header mismatch");
  bool first = true;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 6) throw std::invalid_argument("CSV row must have 6 fields: '" + line + "'");
    CsvRow r;
    r.a_um = parse_double(f[0], "a_um");
    r.model = std::string(model_name(parse_model(trim(f[1]))));
    r.force_pN = parse_double(f[2], "force_pN");
    const auto dot = f[2].find('.');
    const int decimals = dot == std::string::npos ? 0 : static_cast<int>(trim(f[2]).size() - dot - 1);
    if (first) t.precision = decimals;
    first = false;
    const std::string conv = trim(f[3]);
    if (conv != "true" && conv != "false") throw std::invalid_argument("bad converged flag '" + conv + "'");
    r.converged = conv == "true";
    r.l_used = static_cast<std::size_t>(parse_double(f[4], "l_used"));
    r.rel_err_est = parse_double(f[5], "rel_err_est");
    t.rows.push_back(r);
  }
  return t;
}

json to_json(const SweepRow& row, bool verbose) {
  const auto& r = row.result;
  json j{{"a_um", row.a_um},
         {"model", model_name(row.model)},
         {"force_N", r.force},
         {"magnitude_N", r.magnitude},
         {"force_pN", r.magnitude * kPicoNewton},
         {"l_used", r.l_used},
         {"truncation_bound_N", r.truncation_bound},
         {"converged", r.converged},
         {"rel_err_est", r.rel_err_est()}};
  if (verbose) {
    json terms = json::array();
    for (const auto& t : r.terms)
      terms.push_back({{"l", t.l},
                       {"zeta", t.zeta},
                       {"weight", t.weight},
                       {"tm_contribution_N", t.tm_contribution},
                       {"te_contribution_N", t.te_contribution},
                       {"quadrature_error_estimate_N", t.quadrature_error_estimate}});
    j["terms"] = terms;
  }
  return j;
}

const std::vector<GoldenRow>& golden_table() {
  static const std::vector<GoldenRow> table = {
      {0.6, {679.22, 748.03, 748.11, 706.63}},
      {0.7, {431.14, 481.70, 481.76, 453.43}},
      {0.8, {291.28, 329.99, 330.05, 309.79}},
      {0.9, {206.45, 237.04, 237.09, 222.08}},
      {1.0, {152.00, 176.78, 176.82, 165.39}},
  };
  return table;
}

std::vector<GoldenDiff> diff_against_golden(const std::vector<SweepRow>& rows) {
  const auto& golden = golden_table();
  if (rows.size() != golden.size() * 4) throw std::invalid_argument("golden comparison needs the full 5 x 4 grid");
  std::vector<GoldenDiff> out;
  for (std::size_t i = 0; i < golden.size(); ++i) {
    for (std::size_t k = 0; k < 4; ++k) {
      const auto& r = rows[i * 4 + k];
      const double computed = r.result.magnitude * kPicoNewton;
      const double published = golden[i].force_pN[k];
      const double rel = (computed - published) / published;
      const double tol = golden_tolerance(r.model);
      out.push_back({golden[i].a_um, r.model, computed, published, rel, tol, std::abs(rel) <= tol});
    }
  }
  return out;
}

double golden_tolerance(ModelKind model) { return model == ModelKind::diffusion ? 1e-2 : 1e-3; }

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermal Casimir force between a Ge lens and a Ge plate"};
  app.require_subcommand(1);

  CommonFlags force_f, sweep_f, compare_f, table_f;
  auto* force = app.add_subcommand("force", "|F| at one or more separations");
  add_common(force, force_f);
  auto* sweep = app.add_subcommand("sweep", "|F| over a separation grid");
  add_common(sweep, sweep_f);
  auto* compare = app.add_subcommand("compare", "model comparison with the ordering checks");
  add_common(compare, compare_f);
  auto* table1 = app.add_subcommand("table1", "recompute the published Ge table and diff against it");
  add_common(table1, table_f);
  table1->add_flag("--check", table_f.check, "exit 3 when any value is outside tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    std::ostringstream report;
    int code = kOk;
    std::string output_path;
    if (force->parsed()) {
      auto cfg = build_config(force_f);
      output_path = cfg.output_path;
      code = cmd_force(cfg, report, err);
    } else if (sweep->parsed()) {
      auto cfg = build_config(sweep_f);
      output_path = cfg.output_path;
      code = cmd_force(cfg, report, err);
    } else if (compare->parsed()) {
      auto cfg = build_config(compare_f);
      output_path = cfg.output_path;
      code = cmd_compare(cfg, report, err);
    } else {
      auto cfg = build_config(table_f);
      output_path = cfg.output_path;
      code = cmd_table1(cfg, table_f.check, report, err);
    }
    if (output_path.empty()) {
      out << report.str();
    } else {
      std::ofstream file(output_path, std::ios::binary);
      if (!file) throw std::invalid_argument("cannot open output file '" + output_path + "'");
      file << report.str();
    }
    if (code == kGoldenMismatch) err << "error: computed values differ from the published table\n";
    return code;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace casimir::cli
