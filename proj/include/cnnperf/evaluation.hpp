#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cnnperf/dataset.hpp"
#include "cnnperf/predictor.hpp"

namespace cnnperf {

/// |measured - predicted| / predicted * 100.
double accuracy_delta(double measured_s, double predicted_s);

struct MeasuredRun {
  std::string architecture_name;
  std::int64_t threads = 0;
  std::int64_t images = 0;
  std::int64_t test_images = 0;
  std::int64_t epochs = 0;
  double measured_s = 0.0;

  Workload workload() const {
    return {images, test_images, epochs, threads, threads, architecture_name};
  }
};

/// Parses `arch,p,i,it,ep,measured_s` CSV (header required). Errors name the
/// 1-based line and column of the first offending cell.
std::vector<MeasuredRun> parse_measured_csv(std::string_view text);

struct AccuracyRow {
  MeasuredRun run;
  double predicted_s = 0.0;
  double delta_percent = 0.0;
};

struct AccuracyReport {
  std::vector<AccuracyRow> rows;
  /// Unweighted mean of the row deltas; 0 for an empty report.
  double average_delta_percent = 0.0;
};

Prediction predict(const Dataset& ds, Strategy strategy, const Workload& w,
                   ChunkMode mode = ChunkMode::Exact);

AccuracyReport evaluate(const std::vector<MeasuredRun>& runs, Strategy strategy,
                        const Dataset& ds, ChunkMode mode = ChunkMode::Exact);

struct ThreadSweepCell {
  std::string architecture_name;
  Prediction a;
  Prediction b;
};

struct ThreadSweepRow {
  std::int64_t threads = 0;
  std::vector<ThreadSweepCell> cells;  // one per architecture, in request order
};

/// Predictions for both strategies at each thread count, using each
/// architecture's workload defaults.
std::vector<ThreadSweepRow> sweep_threads(const std::vector<std::int64_t>& thread_counts,
                                          const std::vector<std::string>& architectures,
                                          const Dataset& ds, ChunkMode mode = ChunkMode::Exact);

struct ImageCount {
  std::int64_t images = 0;
  std::int64_t test_images = 0;
};

struct ScaleCell {
  std::int64_t threads = 0;
  std::int64_t epochs = 0;
  Prediction prediction;
};

struct ScaleRow {
  ImageCount images;
  std::vector<ScaleCell> cells;  // threads-major, then epochs
};

/// Strategy (a) over images x epochs x threads for one architecture.
std::vector<ScaleRow> sweep_scale(const std::vector<ImageCount>& image_grid,
                                  const std::vector<std::int64_t>& epoch_grid,
                                  const std::vector<std::int64_t>& thread_counts,
                                  std::string_view architecture, const Dataset& ds,
                                  ChunkMode mode = ChunkMode::Exact);

}  // namespace cnnperf
