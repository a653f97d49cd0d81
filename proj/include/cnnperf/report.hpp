#pragma once

#include <cstdint>
#include <vector>

#include "cnnperf/archmodel.hpp"
#include "cnnperf/dataset.hpp"
#include "cnnperf/evaluation.hpp"
#include "cnnperf/hardware.hpp"
#include "cnnperf/predictor.hpp"
#include "cnnperf/table.hpp"

// Table builders shared by the C API and therefore the CLI. Numeric columns
// follow one convention: seconds with 3 decimals, minutes with 1, contention
// in scientific notation with 3 significant digits.

namespace cnnperf {

Table prediction_table(const Workload& w, Strategy strategy, const Prediction& p);

/// Per-layer CSV columns index,kind,maps,neurons,weights,fprop_ops,bprop_ops.
/// `published` adds the published totals to the summary for comparison.
Table count_ops_table(const CnnArchitecture& arch, const PublishedOps* published = nullptr);

Table contention_table(const ContentionProfile& profile, const LinearFit& fit,
                       const std::vector<std::int64_t>& thread_counts);

Table thread_sweep_table(const std::vector<ThreadSweepRow>& rows,
                         const std::vector<std::string>& architectures);

Table scale_table(const std::vector<ScaleRow>& rows);

Table accuracy_table(const AccuracyReport& report, Strategy strategy);

Table dataset_table(const Dataset& ds);

Table calibration_table(const Workload& w, double measured_s, double operation_factor);

}  // namespace cnnperf
