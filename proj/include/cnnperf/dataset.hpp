#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cnnperf/archmodel.hpp"
#include "cnnperf/hardware.hpp"
#include "cnnperf/predictor.hpp"

namespace cnnperf {

using Document = nlohmann::ordered_json;

struct WorkloadDefaults {
  std::int64_t images = 0;
  std::int64_t test_images = 0;
  std::int64_t epochs = 0;
};

struct PublishedOps {
  OpsByType fprop;
  OpsByType bprop;
  std::uint64_t fprop_total = 0;
  std::uint64_t bprop_total = 0;
};

/// Everything known about one CNN architecture: layers, model parameters for
/// both strategies, workload defaults and the contention curve.
struct ArchitectureModel {
  std::string name;
  std::optional<CnnArchitecture> architecture;
  std::optional<WorkloadDefaults> workload;
  std::optional<ModelParamsA> params_a;
  std::optional<ModelParamsB> params_b;
  std::optional<ContentionProfile> contention;
  std::vector<ContentionSample> published_contention;
  std::optional<PublishedOps> published_ops;

  // Citation per block ("workload", "strategy_a", ...).
  std::vector<std::pair<std::string, std::string>> sources;

  std::string source_of(std::string_view block) const;
};

struct Dataset {
  std::string name;
  std::string description;
  HardwareProfile hardware;
  std::string hardware_source;
  std::vector<ArchitectureModel> architectures;
  std::vector<std::string> notes;
  /// Set when a preset variant modified the base document.
  std::string notice;

  const ArchitectureModel& at(std::string_view arch) const;
  ArchitectureModel& at(std::string_view arch);
  bool contains(std::string_view arch) const;

  const ModelParamsA& params_a(std::string_view arch) const;
  const ModelParamsB& params_b(std::string_view arch) const;
  const ContentionProfile& contention(std::string_view arch) const;

  /// Workload for `arch` using its defaults; instances = threads.
  Workload default_workload(std::string_view arch, std::int64_t threads) const;

  void validate() const;
};

/// The bundled document, before any preset variant is applied.
Document bundled_document();

std::vector<std::string> preset_names();

/// Bundled document with the named variant applied ("paper" is the base).
Document preset_document(std::string_view preset, std::string* notice = nullptr);

Document read_document(const std::filesystem::path& path);
Document parse_document(std::string_view text, std::string_view origin);

Dataset parse_dataset(const Document& doc);

/// preset -> variant patch -> each config document as a merge patch.
Dataset build_dataset(std::string_view preset,
                      const std::vector<std::filesystem::path>& configs = {});

LayerSpec parse_layer(const Document& node, const LayerSpec* prev, const std::string& where);
CnnArchitecture parse_architecture(const Document& node, std::string_view fallback_name);
CnnArchitecture read_architecture(const std::filesystem::path& path);

/// Overrides one numeric constant. Keys: prep_ops, fprop_ops, bprop_ops,
/// operation_factor (strategy a); prep_s, fprop_s, bprop_s (strategy b);
/// images, test_images, epochs (workload defaults); clock_speed_hz, cores
/// (hardware, `arch` ignored). The dataset is revalidated afterwards.
void set_parameter(Dataset& ds, std::string_view arch, std::string_view key, double value);

struct DatasetEntry {
  std::string key;
  std::string value;
  std::string source;
};

/// Flat listing of every constant with its citation.
std::vector<DatasetEntry> describe(const Dataset& ds);

}  // namespace cnnperf
