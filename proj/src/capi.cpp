#include "cnnperf/cnnperf.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "cnnperf/dataset.hpp"
#include "cnnperf/error.hpp"
#include "cnnperf/evaluation.hpp"
#include "cnnperf/report.hpp"

struct cnnperf_dataset {
  cnnperf::Dataset data;
  std::string notice;
};

struct cnnperf_table {
  cnnperf::Table data;
};

namespace {

thread_local std::string g_last_error;

cnnperf_status status_of(cnnperf::ErrorKind kind) {
  using cnnperf::ErrorKind;
  switch (kind) {
    case ErrorKind::Validation: return CNNPERF_ERR_VALIDATION;
    case ErrorKind::Io: return CNNPERF_ERR_IO;
    case ErrorKind::Parse: return CNNPERF_ERR_PARSE;
    case ErrorKind::NotFound: return CNNPERF_ERR_NOT_FOUND;
    case ErrorKind::Fit: return CNNPERF_ERR_FIT;
    case ErrorKind::Calibration: return CNNPERF_ERR_CALIBRATION;
  }
  return CNNPERF_ERR_INTERNAL;
}

cnnperf_status fail(cnnperf_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class Fn>
cnnperf_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return CNNPERF_OK;
  } catch (const cnnperf::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CNNPERF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CNNPERF_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CNNPERF_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw cnnperf::Error(cnnperf::ErrorKind::Validation, what);
}

cnnperf_status argument_error(const char* what) { return fail(CNNPERF_ERR_ARGUMENT, what); }

cnnperf::Strategy to_strategy(cnnperf_strategy s) {
  if (s == CNNPERF_STRATEGY_A) return cnnperf::Strategy::A;
  if (s == CNNPERF_STRATEGY_B) return cnnperf::Strategy::B;
  throw cnnperf::validation_error("unknown strategy value");
}

cnnperf::ChunkMode to_mode(cnnperf_chunk_mode m) {
  if (m == CNNPERF_CHUNK_EXACT) return cnnperf::ChunkMode::Exact;
  if (m == CNNPERF_CHUNK_CEIL) return cnnperf::ChunkMode::Ceil;
  throw cnnperf::validation_error("unknown chunk mode value");
}

cnnperf::Format to_format(cnnperf_format f) {
  switch (f) {
    case CNNPERF_FORMAT_CSV: return cnnperf::Format::Csv;
    case CNNPERF_FORMAT_JSON: return cnnperf::Format::Json;
    case CNNPERF_FORMAT_TEXT: return cnnperf::Format::Text;
  }
  throw cnnperf::validation_error("unknown format value");
}

cnnperf::Workload to_workload(const cnnperf_workload& w, const char* arch) {
  return {w.images, w.test_images, w.epochs, w.threads, w.instances, arch};
}

cnnperf_prediction to_c(const cnnperf::Prediction& p) {
  return {p.total_s,        p.breakdown.prep_s, p.breakdown.train_s, p.breakdown.validate_s,
          p.breakdown.test_s, p.breakdown.mem_s, p.cpi_used,         p.contention_s,
          p.chunk_images,   p.chunk_test_images};
}

void emit(cnnperf::Table table, cnnperf_table** out) { *out = new cnnperf_table{std::move(table)}; }

std::vector<std::int64_t> to_vector(const int64_t* values, size_t count) {
  require(count == 0 || values != nullptr, "null array with non-zero length");
  return {values, values + count};
}

}  // namespace

extern "C" {

const char* cnnperf_version(void) { return CNNPERF_VERSION; }

const char* cnnperf_last_error(void) { return g_last_error.c_str(); }

int cnnperf_exit_code(cnnperf_status status) {
  if (status == CNNPERF_OK) return 0;
  if (status == CNNPERF_ERR_IO) return 2;
  return 1;
}

cnnperf_status cnnperf_dataset_open(const char* preset, const char* const* config_paths,
                                    size_t config_count, cnnperf_dataset** out) {
  if (!out) return argument_error("out is null");
  *out = nullptr;
  if (config_count && !config_paths) return argument_error("config_paths is null");
  return guarded([&] {
    std::vector<std::filesystem::path> configs;
    for (size_t k = 0; k < config_count; ++k) {
      require(config_paths[k] != nullptr, "null config path");
      configs.emplace_back(config_paths[k]);
    }
    const std::string name = preset ? preset : "paper";
    auto ds = std::make_unique<cnnperf_dataset>();
    ds->data = cnnperf::build_dataset(name, configs);
    ds->notice = ds->data.notice;
    *out = ds.release();
  });
}

void cnnperf_dataset_free(cnnperf_dataset* ds) { delete ds; }

const char* cnnperf_dataset_name(const cnnperf_dataset* ds) { return ds ? ds->data.name.c_str() : ""; }

const char* cnnperf_dataset_notice(const cnnperf_dataset* ds) { return ds ? ds->notice.c_str() : ""; }

size_t cnnperf_dataset_architecture_count(const cnnperf_dataset* ds) {
  return ds ? ds->data.architectures.size() : 0;
}

const char* cnnperf_dataset_architecture_name(const cnnperf_dataset* ds, size_t index) {
  if (!ds || index >= ds->data.architectures.size()) return nullptr;
  return ds->data.architectures[index].name.c_str();
}

cnnperf_status cnnperf_dataset_set_param(cnnperf_dataset* ds, const char* arch, const char* key,
                                         double value) {
  if (!ds || !key) return argument_error("dataset or key is null");
  return guarded([&] { cnnperf::set_parameter(ds->data, arch ? arch : "", key, value); });
}

cnnperf_status cnnperf_dataset_default_workload(const cnnperf_dataset* ds, const char* arch,
                                                int64_t threads, cnnperf_workload* out) {
  if (!ds || !arch || !out) return argument_error("null argument");
  return guarded([&] {
    const cnnperf::Workload w = ds->data.default_workload(arch, threads);
    *out = {w.images, w.test_images, w.epochs, w.threads, w.instances};
  });
}

cnnperf_status cnnperf_predict(const cnnperf_dataset* ds, const char* arch,
                               cnnperf_strategy strategy, const cnnperf_workload* w,
                               cnnperf_chunk_mode mode, cnnperf_prediction* out) {
  if (!ds || !arch || !w || !out) return argument_error("null argument");
  return guarded([&] {
    *out = to_c(cnnperf::predict(ds->data, to_strategy(strategy), to_workload(*w, arch), to_mode(mode)));
  });
}

cnnperf_status cnnperf_calibrate(const cnnperf_dataset* ds, const char* arch, double measured_s,
                                 const cnnperf_workload* w, cnnperf_chunk_mode mode,
                                 double* operation_factor) {
  if (!ds || !arch || !w || !operation_factor) return argument_error("null argument");
  return guarded([&] {
    *operation_factor = cnnperf::calibrate_operation_factor(
        measured_s, to_workload(*w, arch), ds->data.params_a(arch), ds->data.hardware,
        ds->data.contention(arch), to_mode(mode));
  });
}

cnnperf_status cnnperf_cpi_for(const cnnperf_dataset* ds, int64_t threads, double* out) {
  if (!ds || !out) return argument_error("null argument");
  return guarded([&] { *out = cnnperf::cpi_for(ds->data.hardware, threads); });
}

cnnperf_status cnnperf_contention_at(const cnnperf_dataset* ds, const char* arch, int64_t threads,
                                     double* seconds, cnnperf_contention_source* source) {
  if (!ds || !arch || !seconds) return argument_error("null argument");
  return guarded([&] {
    const auto e = cnnperf::contention_at(ds->data.contention(arch), threads);
    *seconds = e.seconds;
    if (source) *source = static_cast<cnnperf_contention_source>(e.source);
  });
}

cnnperf_status cnnperf_fit_contention(const cnnperf_dataset* ds, const char* arch,
                                      int64_t fit_range, double* slope, double* intercept) {
  if (!ds || !arch || !slope || !intercept) return argument_error("null argument");
  return guarded([&] {
    std::optional<std::int64_t> range;
    if (fit_range > 0) range = fit_range;
    const auto fit = cnnperf::fit_contention(ds->data.contention(arch), range);
    *slope = fit.slope;
    *intercept = fit.intercept;
  });
}

cnnperf_status cnnperf_memory_overhead(double contention_s, int64_t epochs, int64_t images,
                                       int64_t threads, double* out) {
  if (!out) return argument_error("out is null");
  return guarded([&] { *out = cnnperf::memory_overhead(contention_s, epochs, images, threads); });
}

cnnperf_status cnnperf_accuracy_delta(double measured_s, double predicted_s, double* out) {
  if (!out) return argument_error("out is null");
  return guarded([&] { *out = cnnperf::accuracy_delta(measured_s, predicted_s); });
}

cnnperf_status cnnperf_count_ops(const cnnperf_dataset* ds, const char* arch, uint64_t* fprop_ops,
                                 uint64_t* bprop_ops) {
  if (!ds || !arch || !fprop_ops || !bprop_ops) return argument_error("null argument");
  return guarded([&] {
    const auto& model = ds->data.at(arch);
    if (!model.architecture) {
      throw cnnperf::Error(cnnperf::ErrorKind::NotFound,
                           "architecture '" + model.name + "' has no layer list");
    }
    const auto counts = cnnperf::count_ops(*model.architecture);
    *fprop_ops = counts.fprop_ops;
    *bprop_ops = counts.bprop_ops;
  });
}

cnnperf_status cnnperf_prediction_table(const cnnperf_dataset* ds, const char* arch,
                                        cnnperf_strategy strategy, const cnnperf_workload* w,
                                        cnnperf_chunk_mode mode, cnnperf_table** out) {
  if (!ds || !arch || !w || !out) return argument_error("null argument");
  return guarded([&] {
    const auto workload = to_workload(*w, arch);
    const auto s = to_strategy(strategy);
    emit(cnnperf::prediction_table(workload, s, cnnperf::predict(ds->data, s, workload, to_mode(mode))),
         out);
  });
}

cnnperf_status cnnperf_calibration_table(const cnnperf_dataset* ds, const char* arch,
                                         double measured_s, const cnnperf_workload* w,
                                         cnnperf_chunk_mode mode, cnnperf_table** out) {
  if (!ds || !arch || !w || !out) return argument_error("null argument");
  return guarded([&] {
    const auto workload = to_workload(*w, arch);
    const double factor = cnnperf::calibrate_operation_factor(
        measured_s, workload, ds->data.params_a(arch), ds->data.hardware, ds->data.contention(arch),
        to_mode(mode));
    emit(cnnperf::calibration_table(workload, measured_s, factor), out);
  });
}

cnnperf_status cnnperf_count_ops_table(const cnnperf_dataset* ds, const char* arch,
                                       cnnperf_table** out) {
  if (!ds || !arch || !out) return argument_error("null argument");
  return guarded([&] {
    const auto& model = ds->data.at(arch);
    if (!model.architecture) {
      throw cnnperf::Error(cnnperf::ErrorKind::NotFound,
                           "architecture '" + model.name + "' has no layer list");
    }
    emit(cnnperf::count_ops_table(*model.architecture,
                                  model.published_ops ? &*model.published_ops : nullptr),
         out);
  });
}

cnnperf_status cnnperf_count_ops_file_table(const char* path, cnnperf_table** out) {
  if (!path || !out) return argument_error("null argument");
  return guarded([&] { emit(cnnperf::count_ops_table(cnnperf::read_architecture(path)), out); });
}

cnnperf_status cnnperf_contention_table(const cnnperf_dataset* ds, const char* arch,
                                        const int64_t* threads, size_t thread_count,
                                        cnnperf_table** out) {
  if (!ds || !arch || !out) return argument_error("null argument");
  return guarded([&] {
    const auto& profile = ds->data.contention(arch);
    emit(cnnperf::contention_table(profile, cnnperf::fit_contention(profile),
                                   to_vector(threads, thread_count)),
         out);
  });
}

cnnperf_status cnnperf_sweep_table(const cnnperf_dataset* ds, const char* const* archs,
                                   size_t arch_count, const int64_t* threads, size_t thread_count,
                                   cnnperf_chunk_mode mode, cnnperf_table** out) {
  if (!ds || !out || (arch_count && !archs)) return argument_error("null argument");
  return guarded([&] {
    std::vector<std::string> names;
    for (size_t k = 0; k < arch_count; ++k) {
      require(archs[k] != nullptr, "null architecture name");
      names.emplace_back(archs[k]);
    }
    const auto rows = cnnperf::sweep_threads(to_vector(threads, thread_count), names, ds->data,
                                             to_mode(mode));
    emit(cnnperf::thread_sweep_table(rows, names), out);
  });
}

cnnperf_status cnnperf_scale_grid_table(const cnnperf_dataset* ds, const char* arch,
                                        const int64_t* images, const int64_t* test_images,
                                        size_t image_count, const int64_t* epochs,
                                        size_t epoch_count, const int64_t* threads,
                                        size_t thread_count, cnnperf_chunk_mode mode,
                                        cnnperf_table** out) {
  if (!ds || !arch || !out) return argument_error("null argument");
  return guarded([&] {
    const auto i = to_vector(images, image_count);
    const auto it = to_vector(test_images, image_count);
    std::vector<cnnperf::ImageCount> grid;
    for (size_t k = 0; k < image_count; ++k) grid.push_back({i[k], it[k]});
    const auto rows = cnnperf::sweep_scale(grid, to_vector(epochs, epoch_count),
                                           to_vector(threads, thread_count), arch, ds->data,
                                           to_mode(mode));
    emit(cnnperf::scale_table(rows), out);
  });
}

cnnperf_status cnnperf_validate_text_table(const cnnperf_dataset* ds, cnnperf_strategy strategy,
                                           const char* csv_text, cnnperf_chunk_mode mode,
                                           cnnperf_table** out, double* average_delta_percent) {
  if (!ds || !csv_text || !out) return argument_error("null argument");
  return guarded([&] {
    const auto s = to_strategy(strategy);
    const auto report = cnnperf::evaluate(cnnperf::parse_measured_csv(csv_text), s, ds->data,
                                          to_mode(mode));
    if (average_delta_percent) *average_delta_percent = report.average_delta_percent;
    emit(cnnperf::accuracy_table(report, s), out);
  });
}

cnnperf_status cnnperf_validate_file_table(const cnnperf_dataset* ds, cnnperf_strategy strategy,
                                           const char* csv_path, cnnperf_chunk_mode mode,
                                           cnnperf_table** out, double* average_delta_percent) {
  if (!ds || !csv_path || !out) return argument_error("null argument");
  std::string text;
  const cnnperf_status read = guarded([&] {
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) throw cnnperf::Error(cnnperf::ErrorKind::Io, std::string("cannot open '") + csv_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  });
  if (read != CNNPERF_OK) return read;
  return cnnperf_validate_text_table(ds, strategy, text.c_str(), mode, out, average_delta_percent);
}

cnnperf_status cnnperf_dataset_table(const cnnperf_dataset* ds, cnnperf_table** out) {
  if (!ds || !out) return argument_error("null argument");
  return guarded([&] { emit(cnnperf::dataset_table(ds->data), out); });
}

void cnnperf_table_free(cnnperf_table* t) { delete t; }

size_t cnnperf_table_row_count(const cnnperf_table* t) { return t ? t->data.rows.size() : 0; }

size_t cnnperf_table_column_count(const cnnperf_table* t) { return t ? t->data.columns.size() : 0; }

const char* cnnperf_table_column_name(const cnnperf_table* t, size_t column) {
  if (!t || column >= t->data.columns.size()) return nullptr;
  return t->data.columns[column].c_str();
}

const char* cnnperf_table_cell(const cnnperf_table* t, size_t row, size_t column) {
  if (!t || row >= t->data.rows.size() || column >= t->data.columns.size()) return nullptr;
  return t->data.rows[row][column].text.c_str();
}

int cnnperf_table_cell_number(const cnnperf_table* t, size_t row, size_t column, double* out) {
  if (!t || !out || row >= t->data.rows.size() || column >= t->data.columns.size()) return 0;
  const auto& cell = t->data.rows[row][column];
  if (!cell.number) return 0;
  *out = *cell.number;
  return 1;
}

const char* cnnperf_table_summary(const cnnperf_table* t, const char* key) {
  if (!t || !key) return nullptr;
  for (const auto& [k, cell] : t->data.summary) {
    if (k == key) return cell.text.c_str();
  }
  return nullptr;
}

cnnperf_status cnnperf_table_render(const cnnperf_table* t, cnnperf_format format, char** out) {
  if (!t || !out) return argument_error("null argument");
  *out = nullptr;
  return guarded([&] {
    const std::string text = cnnperf::render(t->data, to_format(format));
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

cnnperf_status cnnperf_table_write(const cnnperf_table* t, cnnperf_format format, const char* path) {
  if (!t || !path) return argument_error("null argument");
  return guarded([&] {
    const std::string text = cnnperf::render(t->data, to_format(format));
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw cnnperf::Error(cnnperf::ErrorKind::Io, std::string("cannot open '") + path + "' for writing");
    file << text;
    file.flush();
    if (!file) throw cnnperf::Error(cnnperf::ErrorKind::Io, std::string("error writing '") + path + "'");
  });
}

void cnnperf_string_free(char* s) { std::free(s); }

}  // extern "C"
