// formicode: simulate scout/forager communication experiments, replicate the
// published analyses from the embedded tables, and fit user data.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "formicode/coding.hpp"
#include "formicode/config.hpp"
#include "formicode/data.hpp"
#include "formicode/errors.hpp"
#include "formicode/hashing.hpp"
#include "formicode/manifest.hpp"
#include "formicode/replication.hpp"
#include "formicode/simulation.hpp"
#include "formicode/stats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace formicode;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create directory '" + dir.string() +
                  "': " + ec.message());
  }
}

json fit_to_json(const FitResult& fit) {
  return json{{"slope", fit.slope},
              {"intercept", fit.intercept},
              {"r", fit.r},
              {"n", fit.n},
              {"degenerate", fit.degenerate}};
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  std::string out_dir = ".";
};

json stage_summary(const std::vector<TrialRecord>& records, int stage) {
  std::vector<double> goals, contacts, lengths, searches;
  int successes = 0, trials = 0;
  for (const TrialRecord& r : records) {
    if (r.stage != stage) continue;
    ++trials;
    successes += r.success;
    goals.push_back(static_cast<double>(r.goal));
    contacts.push_back(r.contact_duration_s);
    lengths.push_back(r.code_length);
    searches.push_back(r.search_time_s);
  }
  auto mean = [](const std::vector<double>& v) {
    return v.empty() ? 0.0
                     : std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  };

  json summary{{"stage", stage + 1},
               {"trials", trials},
               {"success_rate", trials ? double(successes) / trials : 0.0},
               {"mean_contact_duration_s", mean(contacts)},
               {"mean_code_length", mean(lengths)},
               {"mean_search_time_s", mean(searches)}};
  try {
    summary["fit_contact_vs_goal"] = fit_to_json(linear_fit(goals, contacts));
  } catch (const std::invalid_argument&) {
    summary["fit_contact_vs_goal"] = nullptr;  // single goal, nothing to fit
  }
  return summary;
}

int cmd_simulate(const SimulateOptions& options) {
  const std::string config_text = read_text_file(options.config_path);
  ExperimentConfig config = config_from_json_text(config_text);
  if (options.seed_override) config.seed = *options.seed_override;

  ensure_directory(options.out_dir);
  const fs::path out_dir(options.out_dir);

  const std::vector<TrialRecord> records = run_experiment(config);
  write_text_file(out_dir / "trials.csv", trials_csv_text(records));

  json summary{{"tool_version", kToolVersion},
               {"seed", config.seed},
               {"total_trials", records.size()},
               {"stages", json::array()}};
  for (std::size_t s = 0; s < config.stages.size(); ++s) {
    summary["stages"].push_back(stage_summary(records, static_cast<int>(s)));
  }
  write_text_file(out_dir / "summary.json", summary.dump(2) + "\n");

  RunManifest manifest;
  manifest.command = "simulate";
  manifest.config_hash = hex64(fnv1a64(canonical_json_text(config_text)));
  manifest.seed = config.seed;
  manifest.outputs = {"trials.csv", "summary.json"};
  write_manifest(manifest, (out_dir / "manifest.json").string());

  std::cout << "simulated " << records.size() << " trials over "
            << config.stages.size() << " stage(s) with seed " << config.seed
            << "\n";
  for (const auto& stage : summary["stages"]) {
    std::cout << "  stage " << stage["stage"] << ": success rate "
              << stage["success_rate"] << ", mean contact "
              << stage["mean_contact_duration_s"] << " s\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------- replicate

int cmd_replicate(const std::string& selector, const std::string& out_dir) {
  const std::vector<ReplicationCheck> checks = run_replication(selector);

  ensure_directory(out_dir);
  json report{{"tool_version", kToolVersion},
              {"selector", selector},
              {"checks", json::array()}};
  bool all_pass = true;
  for (const ReplicationCheck& check : checks) {
    report["checks"].push_back(json{{"id", check.id},
                                    {"published", check.published},
                                    {"recomputed", check.recomputed},
                                    {"tolerance", check.tolerance},
                                    {"pass", check.pass}});
    all_pass = all_pass && check.pass;
    std::cout << (check.pass ? "PASS" : "FAIL") << " " << check.id
              << ": recomputed " << check.recomputed << " vs published "
              << check.published << " (tolerance: " << check.tolerance
              << ")\n";
  }
  report["all_pass"] = all_pass;
  write_text_file(fs::path(out_dir) / "replication_report.json",
                  report.dump(2) + "\n");

  RunManifest manifest;
  manifest.command = "replicate";
  manifest.config_hash = hex64(fnv1a64(json{{"selector", selector}}.dump()));
  manifest.outputs = {"replication_report.json"};
  write_manifest(manifest, (fs::path(out_dir) / "manifest.json").string());
  return kExitOk;
}

// ---------------------------------------------------------------- fit

struct FitOptions {
  std::string csv_path;
  std::string x_column = "goal";
  std::string y_column = "contact_duration_s";
  bool x_in_bits = false;
  bool as_json = false;
  std::string out_dir = ".";
};

int cmd_fit(const FitOptions& options) {
  const std::vector<TrialRecord> records =
      read_trials_csv_file(options.csv_path);
  const Dataset data =
      trials_to_dataset(records, options.x_column, options.y_column);

  std::vector<double> xs, ys;
  for (const DataPoint& p : data.points) {
    xs.push_back(p.x);
    ys.push_back(p.t);
  }
  const FitResult fit = linear_fit(xs, ys);

  std::optional<double> rate;
  if (options.x_in_bits && fit.slope > 0.0 && !fit.degenerate) {
    rate = 60.0 / fit.slope;
  }

  if (options.as_json) {
    json out = fit_to_json(fit);
    out["x_column"] = options.x_column;
    out["y_column"] = options.y_column;
    if (rate) out["bits_per_minute"] = *rate;
    std::cout << out.dump(2) << "\n";
  } else {
    std::printf("fit of %s on %s over %d records:\n", options.y_column.c_str(),
                options.x_column.c_str(), fit.n);
    std::printf("  slope     %.6g s per unit\n", fit.slope);
    std::printf("  intercept %.6g s\n", fit.intercept);
    std::printf("  r         %.6g\n", fit.r);
    if (fit.degenerate) {
      std::printf(
          "  warning: response column is constant; fit is degenerate\n");
    }
    if (rate) {
      std::printf("  rate      %.6g bits per minute\n", *rate);
    } else if (options.x_in_bits) {
      std::printf("  rate      undefined (nonpositive slope)\n");
    }
  }

  RunManifest manifest;
  manifest.command = "fit";
  manifest.config_hash = hex64(fnv1a64(json{{"csv", options.csv_path},
                                            {"x", options.x_column},
                                            {"y", options.y_column},
                                            {"bits", options.x_in_bits}}
                                           .dump()));
  ensure_directory(options.out_dir);
  write_manifest(manifest,
                 (fs::path(options.out_dir) / "manifest.json").string());
  return kExitOk;
}

// ---------------------------------------------------------------- plotdata

struct PlotOptions {
  std::string source;
  std::string kind;
  std::string out_path;
  std::vector<int> anchors;
};

void append_series_row(std::string& csv, const std::string& series, double x,
                       double y) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g\n", series.c_str(), x, y);
  csv += buf;
}

std::string plot_series(const PlotOptions& options) {
  std::string csv = "series,x,y\n";

  const bool table_source = options.source.rfind("table", 0) == 0;
  if (options.kind == "time_vs_index") {
    if (options.source == "table3") {
      const Dataset data = table_to_dataset(
          load_table(3),
          {.x_column = "branch", .t_column = "contact_duration_s"});
      for (const DataPoint& p : data.points) {
        append_series_row(csv, "table3", p.x, p.t);
      }
    } else if (table_source) {
      throw std::invalid_argument(
          "time_vs_index supports trials.csv or table3");
    } else {
      for (const TrialRecord& r : read_trials_csv_file(options.source)) {
        append_series_row(csv, "stage" + std::to_string(r.stage + 1),
                          static_cast<double>(r.goal), r.contact_duration_s);
      }
    }
    return csv;
  }

  if (options.kind == "time_vs_distance") {
    if (options.source == "table5") {
      const Dataset data = table_to_dataset(
          load_table(5),
          {.x_column = "distance_to_anchor", .t_column = "times_s"});
      for (const DataPoint& p : data.points) {
        append_series_row(csv, "table5", p.x, p.t);
      }
    } else if (table_source) {
      throw std::invalid_argument(
          "time_vs_distance supports trials.csv or table5");
    } else {
      if (options.anchors.empty()) {
        throw std::invalid_argument(
            "time_vs_distance over trials.csv needs --anchors");
      }
      for (const TrialRecord& r : read_trials_csv_file(options.source)) {
        append_series_row(
            csv, "stage" + std::to_string(r.stage + 1),
            distance_to_nearest_anchor(static_cast<int>(r.goal),
                                       options.anchors),
            r.contact_duration_s);
      }
    }
    return csv;
  }

  if (options.kind == "complexity_vs_time") {
    if (options.source != "table2") {
      throw std::invalid_argument("complexity_vs_time supports table2 only");
    }
    const PaperTable& table = load_table(2);
    for (std::size_t row = 0; row < table.rows.size(); ++row) {
      const auto& sequence = std::get<std::string>(table.at(row, "sequence"));
      append_series_row(csv, "table2", complexity_class(Route(sequence)),
                        std::get<double>(table.at(row, "mean_duration_s")));
    }
    return csv;
  }

  throw std::invalid_argument(
      "unknown kind '" + options.kind +
      "' (expected time_vs_index, time_vs_distance or complexity_vs_time)");
}

int cmd_plotdata(const PlotOptions& options) {
  const std::string csv = plot_series(options);
  const fs::path out_path(options.out_path);
  if (out_path.has_parent_path()) ensure_directory(out_path.parent_path());
  write_text_file(out_path, csv);

  RunManifest manifest;
  manifest.command = "plotdata";
  manifest.config_hash = hex64(fnv1a64(json{{"source", options.source},
                                            {"kind", options.kind},
                                            {"out", options.out_path}}
                                           .dump()));
  manifest.outputs = {out_path.filename().string()};
  const fs::path manifest_path =
      out_path.has_parent_path() ? out_path.parent_path() / "manifest.json"
                                 : fs::path("manifest.json");
  write_manifest(manifest, manifest_path.string());

  std::cout << "wrote " << options.out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"formicode: information-theoretic ant communication toolkit"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  SimulateOptions simulate_options;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "run a seeded experiment from a JSON config");
  simulate
      ->add_option("--config", simulate_options.config_path,
                   "experiment config (JSON)")
      ->required();
  simulate
      ->add_option("--seed", simulate_options.seed_override,
                   "override the config seed")
      ->envname("FORMICODE_SEED");
  simulate->add_option("--out", simulate_options.out_dir, "output directory");

  std::string selector = "all";
  std::string replicate_out = ".";
  CLI::App* replicate = app.add_subcommand(
      "replicate", "recompute the published analyses from embedded tables");
  replicate->add_option("--table", selector,
                        "selector: all, routes_126, table2_ordering, "
                        "binomial_152_117, table3_fit, table5_correlation");
  replicate->add_option("--out", replicate_out, "output directory");

  FitOptions fit_options;
  CLI::App* fit = app.add_subcommand("fit", "least squares over a trials.csv");
  fit->add_option("--csv", fit_options.csv_path, "trials.csv to fit")
      ->required();
  fit->add_option("--x", fit_options.x_column, "x column (default goal)");
  fit->add_option("--y", fit_options.y_column,
                  "y column (default contact_duration_s)");
  fit->add_flag("--bits", fit_options.x_in_bits,
                "x is in bits; also report bits per minute");
  fit->add_flag("--json", fit_options.as_json, "machine-readable output");
  fit->add_option("--out", fit_options.out_dir,
                  "directory for the run manifest");

  PlotOptions plot_options;
  CLI::App* plotdata = app.add_subcommand(
      "plotdata", "emit plot-ready (x, y) series from trials or tables");
  plotdata
      ->add_option("--source", plot_options.source,
                   "trials.csv path, or table2/table3/table5")
      ->required();
  plotdata
      ->add_option("--kind", plot_options.kind,
                   "time_vs_index, time_vs_distance or complexity_vs_time")
      ->required();
  plotdata->add_option("--anchors", plot_options.anchors,
                       "anchor branches for time_vs_distance over trials");
  plotdata->add_option("out", plot_options.out_path, "output file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(simulate_options);
    if (replicate->parsed()) return cmd_replicate(selector, replicate_out);
    if (fit->parsed()) return cmd_fit(fit_options);
    if (plotdata->parsed()) return cmd_plotdata(plot_options);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CsvError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
