#include "cnnperf/hardware.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cnnperf/error.hpp"

namespace cnnperf {

void HardwareProfile::validate() const {
  const std::string where = "hardware profile '" + name + "': ";
  if (!(clock_speed_hz > 0.0) || !std::isfinite(clock_speed_hz)) {
    throw validation_error(where + "clock_speed_hz must be > 0");
  }
  if (cores < 1) throw validation_error(where + "cores must be >= 1");
  if (max_threads_per_core < 1) {
    throw validation_error(where + "max_threads_per_core must be >= 1");
  }
  if (static_cast<std::int64_t>(cpi_schedule.size()) != max_threads_per_core) {
    throw validation_error(where + "cpi_schedule needs one entry per threads-per-core value 1.." +
                           std::to_string(max_threads_per_core));
  }
  for (std::size_t k = 0; k < cpi_schedule.size(); ++k) {
    if (!(cpi_schedule[k] >= 1.0)) {
      throw validation_error(where + "CPI for " + std::to_string(k + 1) +
                             " threads/core must be >= 1");
    }
    if (k > 0 && cpi_schedule[k] < cpi_schedule[k - 1]) {
      throw validation_error(where + "cpi_schedule must be non-decreasing");
    }
  }
}

double cpi_for(const HardwareProfile& hw, std::int64_t threads) {
  if (threads < 1) throw validation_error("thread count must be >= 1");
  hw.validate();
  const std::int64_t per_core = (threads + hw.cores - 1) / hw.cores;
  const std::int64_t capped = std::min(per_core, hw.max_threads_per_core);
  return hw.cpi_schedule[static_cast<std::size_t>(capped - 1)];
}

void ContentionProfile::validate() const {
  const std::string where = "contention profile '" + architecture_name + "': ";
  if (samples.empty()) throw validation_error(where + "no samples");
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (samples[k].threads < 1) throw validation_error(where + "sample thread counts must be >= 1");
    if (!(samples[k].seconds >= 0.0) || !std::isfinite(samples[k].seconds)) {
      throw validation_error(where + "contention at p=" + std::to_string(samples[k].threads) +
                             " must be finite and >= 0");
    }
    if (k > 0 && samples[k].threads <= samples[k - 1].threads) {
      throw validation_error(where + "samples must be strictly increasing in p");
    }
  }
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::Fit, "fit: x and y differ in length");
  if (x.size() < 2) throw Error(ErrorKind::Fit, "fit: at least 2 points required");
  const auto n = static_cast<double>(x.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mean_x += x[k];
    mean_y += y[k];
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = x[k] - mean_x;
    sxx += dx * dx;
    sxy += dx * (y[k] - mean_y);
  }
  if (!(sxx > 0.0)) throw Error(ErrorKind::Fit, "fit: x values are all equal");
  const double slope = sxy / sxx;
  return {slope, mean_y - slope * mean_x};
}

LinearFit fit_contention(const ContentionProfile& profile, std::optional<std::int64_t> fit_range) {
  profile.validate();
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& sample : profile.samples) {
    if (fit_range && sample.threads > *fit_range) continue;
    x.push_back(static_cast<double>(sample.threads));
    y.push_back(sample.seconds);
  }
  if (x.size() < 2) {
    throw Error(ErrorKind::Fit, "contention profile '" + profile.architecture_name + "': " +
                                    std::to_string(x.size()) +
                                    " sample(s) in fit range, at least 2 required");
  }
  return least_squares(x, y);
}

std::string_view to_string(ContentionSource source) {
  switch (source) {
    case ContentionSource::Measured: return "measured";
    case ContentionSource::Interpolated: return "interpolated";
    case ContentionSource::Extrapolated: return "extrapolated";
  }
  return "unknown";
}

namespace {

double lerp_between(const ContentionSample& lo, const ContentionSample& hi, double p) {
  const double t = (p - static_cast<double>(lo.threads)) /
                   static_cast<double>(hi.threads - lo.threads);
  return lo.seconds + t * (hi.seconds - lo.seconds);
}

}  // namespace

ContentionEstimate contention_at(const ContentionProfile& profile, std::int64_t threads) {
  if (threads < 1) throw validation_error("thread count must be >= 1");
  profile.validate();
  const auto& samples = profile.samples;
  const auto it = std::lower_bound(
      samples.begin(), samples.end(), threads,
      [](const ContentionSample& s, std::int64_t p) { return s.threads < p; });
  if (it != samples.end() && it->threads == threads) {
    return {it->seconds, ContentionSource::Measured};
  }
  if (samples.size() < 2) {
    throw Error(ErrorKind::Fit, "contention profile '" + profile.architecture_name +
                                    "' has a single sample; cannot estimate p=" +
                                    std::to_string(threads));
  }
  const auto p = static_cast<double>(threads);
  if (it == samples.end()) {
    const double value = fit_contention(profile).at(p);
    return {std::max(0.0, value), ContentionSource::Extrapolated};
  }
  if (it == samples.begin()) {
    // Below the smallest sample: extend the first segment.
    return {std::max(0.0, lerp_between(samples[0], samples[1], p)),
            ContentionSource::Extrapolated};
  }
  return {std::max(0.0, lerp_between(*(it - 1), *it, p)), ContentionSource::Interpolated};
}

}  // namespace cnnperf
