#include "cnnperf/evaluation.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>

#include "cnnperf/error.hpp"

namespace cnnperf {

double accuracy_delta(double measured_s, double predicted_s) {
  if (!(predicted_s > 0.0)) throw validation_error("accuracy: predicted time must be > 0");
  if (!(measured_s > 0.0)) throw validation_error("accuracy: measured time must be > 0");
  return std::abs(measured_s - predicted_s) / predicted_s * 100.0;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void csv_fail(std::size_t line, std::size_t column, const std::string& what) {
  throw Error(ErrorKind::Parse, "measured CSV line " + std::to_string(line) + ", column " +
                                    std::to_string(column) + ": " + what);
}

std::int64_t parse_count(std::string_view cell, std::size_t line, std::size_t column) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    csv_fail(line, column, "expected an integer, got '" + std::string(cell) + "'");
  }
  if (value < 1) csv_fail(line, column, "value must be >= 1");
  return value;
}

double parse_seconds(std::string_view cell, std::size_t line, std::size_t column) {
  // std::from_chars for double is missing on some toolchains; strtod on a copy.
  const std::string copy(cell);
  char* end = nullptr;
  const double value = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size() || !std::isfinite(value)) {
    csv_fail(line, column, "expected a number, got '" + copy + "'");
  }
  if (!(value > 0.0)) csv_fail(line, column, "measured_s must be > 0");
  return value;
}

const char* const kMeasuredHeader[] = {"arch", "p", "i", "it", "ep", "measured_s"};

}  // namespace

std::vector<MeasuredRun> parse_measured_csv(std::string_view text) {
  std::vector<MeasuredRun> runs;
  std::size_t line_no = 0;
  bool have_header = false;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    const std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (trim(raw).empty()) continue;
    const auto cells = split_commas(raw);
    if (!have_header) {
      if (cells.size() != 6) csv_fail(line_no, 1, "header must be arch,p,i,it,ep,measured_s");
      for (std::size_t c = 0; c < 6; ++c) {
        if (cells[c] != kMeasuredHeader[c]) {
          csv_fail(line_no, c + 1, "expected header column '" + std::string(kMeasuredHeader[c]) +
                                       "', got '" + std::string(cells[c]) + "'");
        }
      }
      have_header = true;
      continue;
    }
    if (cells.size() != 6) {
      csv_fail(line_no, cells.size() < 6 ? cells.size() + 1 : 7,
               "expected 6 columns, got " + std::to_string(cells.size()));
    }
    if (cells[0].empty()) csv_fail(line_no, 1, "architecture name is empty");
    MeasuredRun run;
    run.architecture_name = std::string(cells[0]);
    run.threads = parse_count(cells[1], line_no, 2);
    run.images = parse_count(cells[2], line_no, 3);
    run.test_images = parse_count(cells[3], line_no, 4);
    run.epochs = parse_count(cells[4], line_no, 5);
    run.measured_s = parse_seconds(cells[5], line_no, 6);
    runs.push_back(std::move(run));
  }
  if (!have_header) csv_fail(1, 1, "missing header arch,p,i,it,ep,measured_s");
  return runs;
}

Prediction predict(const Dataset& ds, Strategy strategy, const Workload& w, ChunkMode mode) {
  const ContentionProfile& contention = ds.contention(w.architecture_name);
  if (strategy == Strategy::A) {
    return predict_a(w, ds.params_a(w.architecture_name), ds.hardware, contention, mode);
  }
  return predict_b(w, ds.params_b(w.architecture_name), ds.hardware, contention, mode);
}

AccuracyReport evaluate(const std::vector<MeasuredRun>& runs, Strategy strategy,
                        const Dataset& ds, ChunkMode mode) {
  AccuracyReport report;
  report.rows.reserve(runs.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const MeasuredRun& run = runs[k];
    try {
      const Prediction pred = predict(ds, strategy, run.workload(), mode);
      const double delta = accuracy_delta(run.measured_s, pred.total_s);
      report.rows.push_back({run, pred.total_s, delta});
      sum += delta;
    } catch (const Error& e) {
      throw Error(e.kind(), "run " + std::to_string(k + 1) + " (" + run.architecture_name +
                                ", p=" + std::to_string(run.threads) + "): " + e.what());
    }
  }
  if (!report.rows.empty()) {
    report.average_delta_percent = sum / static_cast<double>(report.rows.size());
  }
  return report;
}

std::vector<ThreadSweepRow> sweep_threads(const std::vector<std::int64_t>& thread_counts,
                                          const std::vector<std::string>& architectures,
                                          const Dataset& ds, ChunkMode mode) {
  std::vector<ThreadSweepRow> rows;
  rows.reserve(thread_counts.size());
  for (const std::int64_t p : thread_counts) {
    ThreadSweepRow row{p, {}};
    for (const auto& arch : architectures) {
      const Workload w = ds.default_workload(arch, p);
      row.cells.push_back({arch, predict(ds, Strategy::A, w, mode), predict(ds, Strategy::B, w, mode)});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ScaleRow> sweep_scale(const std::vector<ImageCount>& image_grid,
                                  const std::vector<std::int64_t>& epoch_grid,
                                  const std::vector<std::int64_t>& thread_counts,
                                  std::string_view architecture, const Dataset& ds,
                                  ChunkMode mode) {
  std::vector<ScaleRow> rows;
  rows.reserve(image_grid.size());
  for (const ImageCount& images : image_grid) {
    ScaleRow row{images, {}};
    for (const std::int64_t p : thread_counts) {
      for (const std::int64_t ep : epoch_grid) {
        Workload w = ds.default_workload(architecture, p);
        w.images = images.images;
        w.test_images = images.test_images;
        w.epochs = ep;
        row.cells.push_back({p, ep, predict(ds, Strategy::A, w, mode)});
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace cnnperf
