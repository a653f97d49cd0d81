#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "cnnperf/hardware.hpp"

namespace cnnperf {

/// Model inputs: i, it, ep, p and ns.
struct Workload {
  std::int64_t images = 0;       // training/validation images (i)
  std::int64_t test_images = 0;  // test images (it)
  std::int64_t epochs = 0;       // ep
  std::int64_t threads = 0;      // processing units (p)
  /// Network instances (ns). Zero means one instance per thread. Carried for
  /// reporting; no model term depends on it.
  std::int64_t instances = 0;
  std::string architecture_name;

  std::int64_t effective_instances() const { return instances == 0 ? threads : instances; }
  void validate() const;
};

/// Strategy (a): operation counts converted to time through the clock speed.
struct ModelParamsA {
  double prep_ops = 0.0;
  double fprop_ops = 0.0;
  double bprop_ops = 0.0;
  double operation_factor = 0.0;

  void validate() const;
};

/// Strategy (b): measured per-image times.
struct ModelParamsB {
  double prep_s = 0.0;
  double fprop_s = 0.0;
  double bprop_s = 0.0;

  void validate() const;
};

enum class Strategy { A, B };
std::string_view to_string(Strategy strategy);
Strategy parse_strategy(std::string_view text);

enum class ChunkMode { Exact, Ceil };

struct PhaseBreakdown {
  double prep_s = 0.0;
  double train_s = 0.0;
  double validate_s = 0.0;
  double test_s = 0.0;
  double mem_s = 0.0;

  double sum() const { return prep_s + train_s + validate_s + test_s + mem_s; }
};

struct Prediction {
  /// Always equal to breakdown.sum().
  double total_s = 0.0;
  PhaseBreakdown breakdown;
  double cpi_used = 1.0;
  double contention_s = 0.0;
  double chunk_images = 0.0;
  double chunk_test_images = 0.0;

  double minutes() const { return total_s / 60.0; }
};

/// Memory and synchronisation overhead: contention * ep * i / p.
double memory_overhead(double contention_s, std::int64_t epochs, std::int64_t images,
                       std::int64_t threads);

/// Per-thread share of n images. Exact mode returns n/p as a real number,
/// ceil mode the slowest worker's integer share.
double chunk(std::int64_t images, std::int64_t threads, ChunkMode mode = ChunkMode::Exact);

Prediction predict_a(const Workload& w, const ModelParamsA& params, const HardwareProfile& hw,
                     const ContentionProfile& contention, ChunkMode mode = ChunkMode::Exact);

Prediction predict_b(const Workload& w, const ModelParamsB& params, const HardwareProfile& hw,
                     const ContentionProfile& contention, ChunkMode mode = ChunkMode::Exact);

/// Solves the strategy (a) model for the operation factor that makes the
/// prediction equal `measured_s`. params.operation_factor is ignored.
double calibrate_operation_factor(double measured_s, const Workload& w,
                                  const ModelParamsA& params, const HardwareProfile& hw,
                                  const ContentionProfile& contention,
                                  ChunkMode mode = ChunkMode::Exact);

}  // namespace cnnperf
