#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cnnperf {

enum class LayerKind { Input, Convolutional, MaxPooling, FullyConnected, Output };

std::string_view to_string(LayerKind kind);
/// Accepts the document spellings ("input", "convolutional", "max_pooling",
/// "fully_connected", "output") and the single-letter forms I/C/M/F/O.
LayerKind parse_layer_kind(std::string_view text);

struct LayerSpec {
  LayerKind kind = LayerKind::Input;
  std::int64_t maps = 1;
  std::int64_t map_height = 1;
  std::int64_t map_width = 1;
  std::int64_t kernel_height = 1;
  std::int64_t kernel_width = 1;
  std::int64_t connected_prev_maps = 0;

  std::int64_t neurons() const { return maps * map_height * map_width; }
};

struct CnnArchitecture {
  std::string name;
  std::vector<LayerSpec> layers;
  /// True when the layer list is a best-effort reconstruction rather than a
  /// published description.
  bool reconstructed = false;
  std::string notes;

  /// Throws a validation error naming the first offending layer.
  void validate() const;
};

struct LayerStats {
  std::size_t index = 0;
  std::int64_t neurons = 0;
  std::int64_t weights = 0;
};

std::vector<LayerStats> layer_stats(const CnnArchitecture& arch);

struct LayerOps {
  std::size_t index = 0;
  LayerKind kind = LayerKind::Input;
  std::uint64_t fprop = 0;
  std::uint64_t bprop = 0;
};

/// Per-layer-type totals in the grouping used by published op-count tables:
/// output layers are folded into fully connected.
struct OpsByType {
  std::uint64_t max_pooling = 0;
  std::uint64_t fully_connected = 0;
  std::uint64_t convolution = 0;

  std::uint64_t total() const { return max_pooling + fully_connected + convolution; }
};

struct OpCounts {
  std::uint64_t fprop_ops = 0;
  std::uint64_t bprop_ops = 0;
  std::vector<LayerOps> per_layer;
  OpsByType fprop_by_type;
  OpsByType bprop_by_type;
};

// Operation accounting, one multiply-add = 2 ops:
//   convolution  fprop = neurons * (2 * kh * kw * connected_prev_maps + 2)
//   max-pooling  fprop = neurons * kh * kw
//   fully conn.  fprop = neurons * (2 * prev_neurons + 2)
//   bprop = 2 * fprop for weighted layers, neurons * kh * kw for pooling.
LayerOps layer_ops(const LayerSpec& layer, const LayerSpec* prev, std::size_t index);

OpCounts count_ops(const CnnArchitecture& arch);

}  // namespace cnnperf
