#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cnnperf {

struct HardwareProfile {
  std::string name;
  double clock_speed_hz = 0.0;
  std::int64_t cores = 1;
  std::int64_t max_threads_per_core = 1;
  /// cpi_schedule[k] is the CPI multiplier with k+1 threads resident per core.
  std::vector<double> cpi_schedule;

  void validate() const;
};

/// CPI multiplier for p threads spread evenly over the cores. Thread counts
/// beyond cores * max_threads_per_core keep the densest-schedule CPI.
double cpi_for(const HardwareProfile& hw, std::int64_t threads);

struct ContentionSample {
  std::int64_t threads = 0;
  double seconds = 0.0;
};

struct ContentionProfile {
  std::string architecture_name;
  /// Strictly increasing in `threads`.
  std::vector<ContentionSample> samples;

  void validate() const;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;

  double at(double x) const { return slope * x + intercept; }
};

/// Ordinary least squares with intercept. Needs at least two distinct x.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// OLS over the samples with threads <= fit_range (all samples if unset).
LinearFit fit_contention(const ContentionProfile& profile,
                         std::optional<std::int64_t> fit_range = std::nullopt);

enum class ContentionSource { Measured, Interpolated, Extrapolated };

std::string_view to_string(ContentionSource source);

struct ContentionEstimate {
  double seconds = 0.0;
  ContentionSource source = ContentionSource::Measured;
};

/// Exact at sample points, linear between them, OLS extrapolation above the
/// largest sample. Never negative.
ContentionEstimate contention_at(const ContentionProfile& profile, std::int64_t threads);

}  // namespace cnnperf
