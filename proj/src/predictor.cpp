#include "cnnperf/predictor.hpp"

#include <cmath>
#include <string>

#include "cnnperf/error.hpp"

namespace cnnperf {

namespace {

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

// Unscaled strategy (a) terms, before CPI and operation factor.
struct RawTermsA {
  double prep = 0.0;
  double train = 0.0;
  double validate = 0.0;
  double test = 0.0;
  double cpi = 1.0;
  double contention = 0.0;
  double mem = 0.0;
  double chunk_images = 0.0;
  double chunk_test_images = 0.0;
};

void check_contention_match(const Workload& w, const ContentionProfile& contention) {
  if (!w.architecture_name.empty() && !contention.architecture_name.empty() &&
      w.architecture_name != contention.architecture_name) {
    throw Error(ErrorKind::NotFound, "no contention profile for architecture '" +
                                         w.architecture_name + "' (got '" +
                                         contention.architecture_name + "')");
  }
}

RawTermsA raw_terms_a(const Workload& w, const ModelParamsA& params, const HardwareProfile& hw,
                      const ContentionProfile& contention, ChunkMode mode) {
  w.validate();
  hw.validate();
  check_contention_match(w, contention);
  if (!positive(params.prep_ops) || !positive(params.fprop_ops) || !positive(params.bprop_ops)) {
    throw validation_error("strategy (a) parameters prep_ops, fprop_ops and bprop_ops must be > 0");
  }
  const double s = hw.clock_speed_hz;
  const auto i = static_cast<double>(w.images);
  const auto it = static_cast<double>(w.test_images);
  const auto ep = static_cast<double>(w.epochs);

  RawTermsA t;
  t.chunk_images = chunk(w.images, w.threads, mode);
  t.chunk_test_images = chunk(w.test_images, w.threads, mode);
  t.prep = (params.prep_ops + 4.0 * i + 2.0 * it + 10.0 * ep) / s;
  t.train = ((params.fprop_ops + params.bprop_ops) / s) * t.chunk_images * ep;
  t.validate = (params.fprop_ops / s) * t.chunk_images * ep;
  t.test = (params.fprop_ops / s) * t.chunk_test_images * ep;
  t.cpi = cpi_for(hw, w.threads);
  t.contention = contention_at(contention, w.threads).seconds;
  t.mem = memory_overhead(t.contention, w.epochs, w.images, w.threads);
  return t;
}

}  // namespace

void Workload::validate() const {
  if (images < 1) throw validation_error("workload: images (i) must be >= 1");
  if (test_images < 1) throw validation_error("workload: test images (it) must be >= 1");
  if (epochs < 1) throw validation_error("workload: epochs (ep) must be >= 1");
  if (threads < 1) throw validation_error("workload: threads (p) must be >= 1");
  if (instances < 0) throw validation_error("workload: network instances (ns) must be >= 1");
}

void ModelParamsA::validate() const {
  if (!positive(prep_ops) || !positive(fprop_ops) || !positive(bprop_ops) ||
      !positive(operation_factor)) {
    throw validation_error("strategy (a) parameters must all be > 0");
  }
}

void ModelParamsB::validate() const {
  if (!positive(prep_s) || !positive(fprop_s) || !positive(bprop_s)) {
    throw validation_error("strategy (b) parameters must all be > 0");
  }
}

std::string_view to_string(Strategy strategy) { return strategy == Strategy::A ? "a" : "b"; }

Strategy parse_strategy(std::string_view text) {
  if (text == "a" || text == "A") return Strategy::A;
  if (text == "b" || text == "B") return Strategy::B;
  throw validation_error("unknown strategy '" + std::string(text) + "' (expected a or b)");
}

double memory_overhead(double contention_s, std::int64_t epochs, std::int64_t images,
                       std::int64_t threads) {
  if (threads < 1) throw validation_error("memory overhead: threads must be >= 1");
  return contention_s * static_cast<double>(epochs) * static_cast<double>(images) /
         static_cast<double>(threads);
}

double chunk(std::int64_t images, std::int64_t threads, ChunkMode mode) {
  if (images < 1 || threads < 1) throw validation_error("chunk: image and thread counts must be >= 1");
  if (mode == ChunkMode::Ceil) {
    return static_cast<double>((images + threads - 1) / threads);
  }
  return static_cast<double>(images) / static_cast<double>(threads);
}

Prediction predict_a(const Workload& w, const ModelParamsA& params, const HardwareProfile& hw,
                     const ContentionProfile& contention, ChunkMode mode) {
  params.validate();
  const RawTermsA t = raw_terms_a(w, params, hw, contention, mode);
  const double factor = params.operation_factor;

  Prediction out;
  out.cpi_used = t.cpi;
  out.contention_s = t.contention;
  out.chunk_images = t.chunk_images;
  out.chunk_test_images = t.chunk_test_images;
  out.breakdown.prep_s = t.prep * factor;
  out.breakdown.train_s = t.train * t.cpi * factor;
  out.breakdown.validate_s = t.validate * t.cpi * factor;
  out.breakdown.test_s = t.test * t.cpi * factor;
  out.breakdown.mem_s = t.mem;
  out.total_s = out.breakdown.sum();
  return out;
}

Prediction predict_b(const Workload& w, const ModelParamsB& params, const HardwareProfile& hw,
                     const ContentionProfile& contention, ChunkMode mode) {
  w.validate();
  hw.validate();
  params.validate();
  check_contention_match(w, contention);
  const auto ep = static_cast<double>(w.epochs);

  Prediction out;
  out.chunk_images = chunk(w.images, w.threads, mode);
  out.chunk_test_images = chunk(w.test_images, w.threads, mode);
  out.cpi_used = cpi_for(hw, w.threads);
  out.contention_s = contention_at(contention, w.threads).seconds;
  const double cpi = out.cpi_used;
  // Preparation is measured wall time and is not scaled by CPI.
  out.breakdown.prep_s = params.prep_s;
  out.breakdown.train_s = (params.fprop_s + params.bprop_s) * out.chunk_images * ep * cpi;
  out.breakdown.validate_s = params.fprop_s * out.chunk_images * ep * cpi;
  out.breakdown.test_s = params.fprop_s * out.chunk_test_images * ep * cpi;
  out.breakdown.mem_s = memory_overhead(out.contention_s, w.epochs, w.images, w.threads);
  out.total_s = out.breakdown.sum();
  return out;
}

double calibrate_operation_factor(double measured_s, const Workload& w,
                                  const ModelParamsA& params, const HardwareProfile& hw,
                                  const ContentionProfile& contention, ChunkMode mode) {
  if (!positive(measured_s)) {
    throw Error(ErrorKind::Calibration, "calibration: measured time must be > 0");
  }
  const RawTermsA t = raw_terms_a(w, params, hw, contention, mode);
  const double denominator = t.prep + (t.train + t.validate + t.test) * t.cpi;
  if (!(denominator > 0.0)) {
    throw Error(ErrorKind::Calibration, "calibration: compute term is not positive");
  }
  if (!(measured_s > t.mem)) {
    throw Error(ErrorKind::Calibration,
                "calibration: measured time " + std::to_string(measured_s) +
                    " s does not exceed the memory overhead " + std::to_string(t.mem) + " s");
  }
  return (measured_s - t.mem) / denominator;
}

}  // namespace cnnperf
