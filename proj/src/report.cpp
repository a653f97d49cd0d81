#include "cnnperf/report.hpp"

#include <string>

namespace cnnperf {

Table prediction_table(const Workload& w, Strategy strategy, const Prediction& p) {
  Table t;
  t.columns = {"phase", "seconds", "minutes"};
  const auto& b = p.breakdown;
  const std::pair<const char*, double> phases[] = {
      {"prep", b.prep_s},         {"train", b.train_s}, {"validate", b.validate_s},
      {"test", b.test_s},         {"mem", b.mem_s},     {"total", p.total_s}};
  for (const auto& [name, seconds] : phases) {
    t.add_row({text_cell(name), seconds_cell(seconds), minutes_cell(seconds)});
  }
  t.summary = {
      {"arch", text_cell(w.architecture_name)},
      {"strategy", text_cell(std::string(to_string(strategy)))},
      {"p", integer_cell(w.threads)},
      {"ns", integer_cell(w.effective_instances())},
      {"i", integer_cell(w.images)},
      {"it", integer_cell(w.test_images)},
      {"ep", integer_cell(w.epochs)},
      {"cpi", fixed_cell(p.cpi_used, 2)},
      {"contention_seconds", scientific_cell(p.contention_s)},
      {"chunk_i", fixed_cell(p.chunk_images, 3)},
      {"chunk_it", fixed_cell(p.chunk_test_images, 3)},
  };
  return t;
}

Table count_ops_table(const CnnArchitecture& arch, const PublishedOps* published) {
  const auto stats = layer_stats(arch);
  const auto ops = count_ops(arch);
  Table t;
  t.columns = {"index", "kind", "maps", "neurons", "weights", "fprop_ops", "bprop_ops"};
  for (std::size_t k = 0; k < arch.layers.size(); ++k) {
    const LayerSpec& layer = arch.layers[k];
    t.add_row({integer_cell(static_cast<std::int64_t>(k)),
               text_cell(std::string(to_string(layer.kind))), integer_cell(layer.maps),
               integer_cell(stats[k].neurons), integer_cell(stats[k].weights),
               integer_cell(static_cast<std::int64_t>(ops.per_layer[k].fprop)),
               integer_cell(static_cast<std::int64_t>(ops.per_layer[k].bprop))});
  }
  auto count = [](std::uint64_t v) { return integer_cell(static_cast<std::int64_t>(v)); };
  t.summary = {
      {"arch", text_cell(arch.name)},
      {"fprop_total", count(ops.fprop_ops)},
      {"bprop_total", count(ops.bprop_ops)},
      {"fprop_max_pooling", count(ops.fprop_by_type.max_pooling)},
      {"fprop_fully_connected", count(ops.fprop_by_type.fully_connected)},
      {"fprop_convolution", count(ops.fprop_by_type.convolution)},
      {"bprop_max_pooling", count(ops.bprop_by_type.max_pooling)},
      {"bprop_fully_connected", count(ops.bprop_by_type.fully_connected)},
      {"bprop_convolution", count(ops.bprop_by_type.convolution)},
  };
  if (arch.reconstructed) t.summary.emplace_back("layers", text_cell("reconstructed"));
  if (published) {
    t.summary.emplace_back("published_fprop_total", count(published->fprop_total));
    t.summary.emplace_back("published_bprop_total", count(published->bprop_total));
    t.summary.emplace_back("fprop_vs_published",
                           fixed_cell(static_cast<double>(ops.fprop_ops) /
                                          static_cast<double>(published->fprop_total), 3));
    t.summary.emplace_back("bprop_vs_published",
                           fixed_cell(static_cast<double>(ops.bprop_ops) /
                                          static_cast<double>(published->bprop_total), 3));
  }
  return t;
}

Table contention_table(const ContentionProfile& profile, const LinearFit& fit,
                       const std::vector<std::int64_t>& thread_counts) {
  Table t;
  t.columns = {"p", "contention_seconds", "source"};
  for (const std::int64_t p : thread_counts) {
    const ContentionEstimate e = contention_at(profile, p);
    t.add_row({integer_cell(p), scientific_cell(e.seconds), text_cell(std::string(to_string(e.source)))});
  }
  t.summary = {{"arch", text_cell(profile.architecture_name)},
               {"slope", scientific_cell(fit.slope, 4)},
               {"intercept", scientific_cell(fit.intercept, 4)}};
  return t;
}

Table thread_sweep_table(const std::vector<ThreadSweepRow>& rows,
                         const std::vector<std::string>& architectures) {
  Table t;
  t.columns = {"p"};
  for (const auto& arch : architectures) {
    t.columns.push_back(arch + "_a_min");
    t.columns.push_back(arch + "_b_min");
  }
  for (const auto& row : rows) {
    std::vector<Cell> cells{integer_cell(row.threads)};
    for (const auto& cell : row.cells) {
      cells.push_back(minutes_cell(cell.a.total_s));
      cells.push_back(minutes_cell(cell.b.total_s));
    }
    t.add_row(std::move(cells));
  }
  return t;
}

Table scale_table(const std::vector<ScaleRow>& rows) {
  Table t;
  t.columns = {"i", "it"};
  if (!rows.empty()) {
    for (const auto& cell : rows.front().cells) {
      t.columns.push_back("p" + std::to_string(cell.threads) + "_ep" + std::to_string(cell.epochs) +
                          "_min");
    }
  }
  for (const auto& row : rows) {
    std::vector<Cell> cells{integer_cell(row.images.images), integer_cell(row.images.test_images)};
    for (const auto& cell : row.cells) cells.push_back(minutes_cell(cell.prediction.total_s));
    t.add_row(std::move(cells));
  }
  return t;
}

Table accuracy_table(const AccuracyReport& report, Strategy strategy) {
  Table t;
  t.columns = {"arch", "p", "i", "it", "ep", "measured_s", "predicted_s", "delta_percent"};
  for (const auto& row : report.rows) {
    t.add_row({text_cell(row.run.architecture_name), integer_cell(row.run.threads),
               integer_cell(row.run.images), integer_cell(row.run.test_images),
               integer_cell(row.run.epochs), seconds_cell(row.run.measured_s),
               seconds_cell(row.predicted_s), percent_cell(row.delta_percent)});
  }
  t.summary = {{"strategy", text_cell(std::string(to_string(strategy)))},
               {"runs", integer_cell(static_cast<std::int64_t>(report.rows.size()))},
               {"average_delta_percent", percent_cell(report.average_delta_percent)}};
  return t;
}

Table dataset_table(const Dataset& ds) {
  Table t;
  t.columns = {"key", "value", "source"};
  for (const auto& e : describe(ds)) {
    t.add_row({text_cell(e.key), text_cell(e.value), text_cell(e.source)});
  }
  t.summary.emplace_back("dataset", text_cell(ds.name));
  if (!ds.notice.empty()) t.summary.emplace_back("notice", text_cell(ds.notice));
  for (std::size_t k = 0; k < ds.notes.size(); ++k) {
    t.summary.emplace_back("note" + std::to_string(k + 1), text_cell(ds.notes[k]));
  }
  return t;
}

Table calibration_table(const Workload& w, double measured_s, double operation_factor) {
  Table t;
  t.columns = {"arch", "p", "i", "it", "ep", "measured_s", "operation_factor"};
  t.add_row({text_cell(w.architecture_name), integer_cell(w.threads), integer_cell(w.images),
             integer_cell(w.test_images), integer_cell(w.epochs), seconds_cell(measured_s),
             fixed_cell(operation_factor, 4)});
  return t;
}

}  // namespace cnnperf
