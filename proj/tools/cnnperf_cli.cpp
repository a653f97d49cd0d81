// cnnperf command-line front end. Talks to the engine only through the C API.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cnnperf/cnnperf.h"

namespace {

struct DatasetDeleter {
  void operator()(cnnperf_dataset* ds) const { cnnperf_dataset_free(ds); }
};
struct TableDeleter {
  void operator()(cnnperf_table* t) const { cnnperf_table_free(t); }
};
using DatasetPtr = std::unique_ptr<cnnperf_dataset, DatasetDeleter>;
using TablePtr = std::unique_ptr<cnnperf_table, TableDeleter>;

/// Carries a C API failure up to main with its exit code.
struct Failure {
  int exit_code;
  std::string message;
};

void check(cnnperf_status status, const std::string& context = {}) {
  if (status == CNNPERF_OK) return;
  std::string msg = cnnperf_last_error();
  if (!context.empty()) msg = context + ": " + msg;
  throw Failure{cnnperf_exit_code(status), msg};
}

[[noreturn]] void usage_error(const std::string& msg) { throw Failure{1, msg}; }

struct GlobalOptions {
  std::string preset = "paper";
  std::vector<std::string> configs;
  std::string format;
  std::string out;
};

struct WorkloadOptions {
  std::string arch;
  int64_t threads = 0;
  std::optional<int64_t> images;
  std::optional<int64_t> test_images;
  std::optional<int64_t> epochs;
  std::optional<int64_t> instances;
  std::vector<std::string> params;
  std::string chunk = "exact";
};

DatasetPtr open_dataset(const GlobalOptions& g) {
  std::vector<const char*> paths;
  for (const auto& c : g.configs) paths.push_back(c.c_str());
  cnnperf_dataset* raw = nullptr;
  check(cnnperf_dataset_open(g.preset.c_str(), paths.data(), paths.size(), &raw), "--preset/--config");
  DatasetPtr ds(raw);
  const std::string notice = cnnperf_dataset_notice(ds.get());
  if (!notice.empty()) std::cerr << notice << '\n';
  return ds;
}

cnnperf_format resolve_format(const GlobalOptions& g, cnnperf_format fallback) {
  if (g.format.empty()) return fallback;
  if (g.format == "csv") return CNNPERF_FORMAT_CSV;
  if (g.format == "json") return CNNPERF_FORMAT_JSON;
  if (g.format == "table" || g.format == "text") return CNNPERF_FORMAT_TEXT;
  usage_error("--format: expected csv, json or table, got '" + g.format + "'");
}

void emit(const GlobalOptions& g, const TablePtr& table, cnnperf_format fallback) {
  const cnnperf_format format = resolve_format(g, fallback);
  if (!g.out.empty()) {
    check(cnnperf_table_write(table.get(), format, g.out.c_str()), "--out");
    return;
  }
  char* text = nullptr;
  check(cnnperf_table_render(table.get(), format, &text));
  std::fputs(text, stdout);
  cnnperf_string_free(text);
}

cnnperf_chunk_mode parse_chunk(const std::string& text) {
  if (text == "exact") return CNNPERF_CHUNK_EXACT;
  if (text == "ceil") return CNNPERF_CHUNK_CEIL;
  usage_error("--chunk: expected exact or ceil, got '" + text + "'");
}

cnnperf_strategy parse_strategy(const std::string& text) {
  if (text == "a") return CNNPERF_STRATEGY_A;
  if (text == "b") return CNNPERF_STRATEGY_B;
  usage_error("--strategy: expected a or b, got '" + text + "'");
}

void apply_params(cnnperf_dataset* ds, const std::string& arch, const std::vector<std::string>& params) {
  for (const auto& kv : params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) usage_error("--param: expected key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    char* end = nullptr;
    const double number = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0') usage_error("--param " + key + ": not a number: '" + value + "'");
    check(cnnperf_dataset_set_param(ds, arch.c_str(), key.c_str(), number), "--param " + key);
  }
}

cnnperf_workload resolve_workload(cnnperf_dataset* ds, const WorkloadOptions& o) {
  apply_params(ds, o.arch, o.params);
  cnnperf_workload w{};
  check(cnnperf_dataset_default_workload(ds, o.arch.c_str(), o.threads, &w), "--arch");
  if (o.images) w.images = *o.images;
  if (o.test_images) w.test_images = *o.test_images;
  if (o.epochs) w.epochs = *o.epochs;
  if (o.instances) w.instances = *o.instances;
  return w;
}

void add_workload_options(CLI::App* cmd, WorkloadOptions& o, bool require_threads = true) {
  cmd->add_option("--arch", o.arch, "Architecture name")->required();
  auto* p = cmd->add_option("--p", o.threads, "Thread count")->check(CLI::Range(int64_t{1}, std::numeric_limits<int64_t>::max()));
  if (require_threads) p->required();
  cmd->add_option("--i", o.images, "Training/validation images")->check(CLI::Range(int64_t{1}, std::numeric_limits<int64_t>::max()));
  cmd->add_option("--it", o.test_images, "Test images")->check(CLI::Range(int64_t{1}, std::numeric_limits<int64_t>::max()));
  cmd->add_option("--ep", o.epochs, "Epochs")->check(CLI::Range(int64_t{1}, std::numeric_limits<int64_t>::max()));
  cmd->add_option("--ns", o.instances, "Network instances (default: one per thread)")
      ->check(CLI::Range(int64_t{1}, std::numeric_limits<int64_t>::max()));
  cmd->add_option("--param", o.params, "Override a model constant, key=value (repeatable)");
  cmd->add_option("--chunk", o.chunk, "Per-thread share: exact or ceil")->capture_default_str();
}

std::vector<int64_t> parse_image_pairs(const std::vector<std::string>& items, std::vector<int64_t>& test) {
  std::vector<int64_t> images;
  for (const auto& item : items) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) usage_error("--images: expected i:it, got '" + item + "'");
    try {
      std::size_t used_i = 0;
      std::size_t used_t = 0;
      const std::string a = item.substr(0, colon);
      const std::string b = item.substr(colon + 1);
      images.push_back(std::stoll(a, &used_i));
      test.push_back(std::stoll(b, &used_t));
      if (used_i != a.size() || used_t != b.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      usage_error("--images: expected integers i:it, got '" + item + "'");
    }
  }
  return images;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analytical execution-time prediction for CNN training on many-core processors",
               "cnnperf"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(cnnperf_version()));

  GlobalOptions g;
  app.add_option("--preset", g.preset, "Bundled dataset: paper or paper-tableIX")->capture_default_str();
  app.add_option("--config", g.configs, "Dataset document applied over the preset (repeatable)");
  app.add_option("--format", g.format, "Output format: csv, json or table");
  app.add_option("--out", g.out, "Write output to this file instead of stdout");

  WorkloadOptions predict_opts;
  std::string predict_strategy = "a";
  auto* predict = app.add_subcommand("predict", "Predict execution time for one workload");
  predict->add_option("--strategy", predict_strategy, "Model strategy: a or b")->capture_default_str();
  add_workload_options(predict, predict_opts);

  WorkloadOptions calib_opts;
  double measured = 0.0;
  auto* calibrate = app.add_subcommand("calibrate", "Fit the strategy (a) operation factor to a measured time");
  add_workload_options(calibrate, calib_opts);
  calibrate->add_option("--measured", measured, "Measured execution time in seconds")->required();

  std::vector<int64_t> sweep_threads{480, 960, 1920, 3840};
  std::vector<std::string> sweep_archs{"small", "medium", "large"};
  std::string sweep_chunk = "exact";
  auto* sweep = app.add_subcommand("sweep", "Predicted minutes for both strategies across thread counts");
  sweep->add_option("--threads", sweep_threads, "Thread counts")->delimiter(',')->capture_default_str();
  sweep->add_option("--archs", sweep_archs, "Architectures")->delimiter(',')->capture_default_str();
  sweep->add_option("--chunk", sweep_chunk, "Per-thread share: exact or ceil")->capture_default_str();

  std::string grid_arch = "small";
  std::vector<std::string> grid_images{"60000:10000", "120000:20000", "240000:40000"};
  std::vector<int64_t> grid_epochs{70, 140, 280};
  std::vector<int64_t> grid_threads{240, 480};
  std::string grid_chunk = "exact";
  auto* grid = app.add_subcommand("scale-grid", "Strategy (a) minutes over images x epochs x threads");
  grid->add_option("--arch", grid_arch, "Architecture")->capture_default_str();
  grid->add_option("--images", grid_images, "Image counts as i:it")->delimiter(',')->capture_default_str();
  grid->add_option("--epochs", grid_epochs, "Epoch counts")->delimiter(',')->capture_default_str();
  grid->add_option("--threads", grid_threads, "Thread counts")->delimiter(',')->capture_default_str();
  grid->add_option("--chunk", grid_chunk, "Per-thread share: exact or ceil")->capture_default_str();

  std::string fit_arch;
  std::vector<int64_t> fit_predict{480, 960, 1920, 3840};
  auto* fit = app.add_subcommand("fit-contention", "Least-squares contention fit and estimates");
  fit->add_option("--arch", fit_arch, "Architecture")->required();
  fit->add_option("--predict", fit_predict, "Thread counts to estimate")->delimiter(',')->capture_default_str();

  std::string ops_arch;
  std::string ops_file;
  auto* ops = app.add_subcommand("count-ops", "Per-layer neurons, weights and operation counts");
  auto* ops_arch_opt = ops->add_option("--arch", ops_arch, "Architecture from the dataset");
  auto* ops_file_opt = ops->add_option("--arch-file", ops_file, "Architecture document (JSON)");
  ops_arch_opt->excludes(ops_file_opt);
  ops->require_option(1);

  std::string validate_csv;
  std::string validate_strategy = "a";
  std::string validate_chunk = "exact";
  auto* validate = app.add_subcommand("validate", "Accuracy of predictions against measured runs");
  validate->add_option("measured", validate_csv, "CSV with header arch,p,i,it,ep,measured_s")->required();
  validate->add_option("--strategy", validate_strategy, "Model strategy: a or b")->capture_default_str();
  validate->add_option("--chunk", validate_chunk, "Per-thread share: exact or ceil")->capture_default_str();

  auto* dataset = app.add_subcommand("dataset", "Print bundled constants with their citations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (predict->parsed()) {
      DatasetPtr ds = open_dataset(g);
      const cnnperf_workload w = resolve_workload(ds.get(), predict_opts);
      cnnperf_table* raw = nullptr;
      check(cnnperf_prediction_table(ds.get(), predict_opts.arch.c_str(),
                                     parse_strategy(predict_strategy), &w,
                                     parse_chunk(predict_opts.chunk), &raw));
      emit(g, TablePtr(raw), CNNPERF_FORMAT_TEXT);
    } else if (calibrate->parsed()) {
      DatasetPtr ds = open_dataset(g);
      const cnnperf_workload w = resolve_workload(ds.get(), calib_opts);
      cnnperf_table* raw = nullptr;
      check(cnnperf_calibration_table(ds.get(), calib_opts.arch.c_str(), measured, &w,
                                      parse_chunk(calib_opts.chunk), &raw),
            "--measured");
      emit(g, TablePtr(raw), CNNPERF_FORMAT_TEXT);
    } else if (sweep->parsed()) {
      DatasetPtr ds = open_dataset(g);
      std::vector<const char*> names;
      for (const auto& a : sweep_archs) names.push_back(a.c_str());
      cnnperf_table* raw = nullptr;
      check(cnnperf_sweep_table(ds.get(), names.data(), names.size(), sweep_threads.data(),
                                sweep_threads.size(), parse_chunk(sweep_chunk), &raw));
      emit(g, TablePtr(raw), CNNPERF_FORMAT_CSV);
    } else if (grid->parsed()) {
      DatasetPtr ds = open_dataset(g);
      std::vector<int64_t> test;
      const std::vector<int64_t> images = parse_image_pairs(grid_images, test);
      cnnperf_table* raw = nullptr;
      check(cnnperf_scale_grid_table(ds.get(), grid_arch.c_str(), images.data(), test.data(),
                                     images.size(), grid_epochs.data(), grid_epochs.size(),
                                     grid_threads.data(), grid_threads.size(),
                                     parse_chunk(grid_chunk), &raw));
      emit(g, TablePtr(raw), CNNPERF_FORMAT_CSV);
    } else if (fit->parsed()) {
      DatasetPtr ds = open_dataset(g);
      cnnperf_table* raw = nullptr;
      check(cnnperf_contention_table(ds.get(), fit_arch.c_str(), fit_predict.data(),
                                     fit_predict.size(), &raw));
      emit(g, TablePtr(raw), CNNPERF_FORMAT_CSV);
    } else if (ops->parsed()) {
      cnnperf_table* raw = nullptr;
      if (!ops_file.empty()) {
        check(cnnperf_count_ops_file_table(ops_file.c_str(), &raw), "--arch-file");
      } else {
        DatasetPtr ds = open_dataset(g);
        check(cnnperf_count_ops_table(ds.get(), ops_arch.c_str(), &raw), "--arch");
      }
      emit(g, TablePtr(raw), CNNPERF_FORMAT_CSV);
    } else if (validate->parsed()) {
      DatasetPtr ds = open_dataset(g);
      cnnperf_table* raw = nullptr;
      check(cnnperf_validate_file_table(ds.get(), parse_strategy(validate_strategy),
                                        validate_csv.c_str(), parse_chunk(validate_chunk), &raw,
                                        nullptr),
            validate_csv);
      emit(g, TablePtr(raw), CNNPERF_FORMAT_CSV);
    } else if (dataset->parsed()) {
      DatasetPtr ds = open_dataset(g);
      cnnperf_table* raw = nullptr;
      check(cnnperf_dataset_table(ds.get(), &raw));
      emit(g, TablePtr(raw), CNNPERF_FORMAT_TEXT);
    }
  } catch (const Failure& f) {
    std::cerr << "cnnperf: " << f.message << '\n';
    return f.exit_code;
  }
  return 0;
}
