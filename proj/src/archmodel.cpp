#include "cnnperf/archmodel.hpp"

#include <cctype>
#include <string>

#include "cnnperf/error.hpp"

namespace cnnperf {

std::string_view to_string(LayerKind kind) {
  switch (kind) {
    case LayerKind::Input: return "input";
    case LayerKind::Convolutional: return "convolutional";
    case LayerKind::MaxPooling: return "max_pooling";
    case LayerKind::FullyConnected: return "fully_connected";
    case LayerKind::Output: return "output";
  }
  return "unknown";
}

LayerKind parse_layer_kind(std::string_view text) {
  std::string lower;
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "input" || lower == "i") return LayerKind::Input;
  if (lower == "convolutional" || lower == "convolution" || lower == "c") return LayerKind::Convolutional;
  if (lower == "max_pooling" || lower == "maxpooling" || lower == "m") return LayerKind::MaxPooling;
  if (lower == "fully_connected" || lower == "fullyconnected" || lower == "f") return LayerKind::FullyConnected;
  if (lower == "output" || lower == "o") return LayerKind::Output;
  throw validation_error("unknown layer kind '" + std::string(text) + "'");
}

namespace {

std::string layer_label(std::size_t index, const LayerSpec& layer) {
  return "layer " + std::to_string(index) + " (" + std::string(to_string(layer.kind)) + ")";
}

bool is_weighted_dense(LayerKind kind) {
  return kind == LayerKind::FullyConnected || kind == LayerKind::Output;
}

}  // namespace

void CnnArchitecture::validate() const {
  const std::string where = "architecture '" + name + "': ";
  if (layers.size() < 2) {
    throw validation_error(where + "needs at least an input and an output layer");
  }
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const LayerSpec& layer = layers[i];
    const std::string label = where + layer_label(i, layer);
    if (i == 0 && layer.kind != LayerKind::Input) {
      throw validation_error(label + ": first layer must be input");
    }
    if (i != 0 && layer.kind == LayerKind::Input) {
      throw validation_error(label + ": input layer only allowed first");
    }
    if (i + 1 == layers.size() && layer.kind != LayerKind::Output) {
      throw validation_error(label + ": last layer must be output");
    }
    if (i + 1 != layers.size() && layer.kind == LayerKind::Output) {
      throw validation_error(label + ": output layer only allowed last");
    }
    if (layer.maps < 1 || layer.map_height < 1 || layer.map_width < 1) {
      throw validation_error(label + ": maps and map dimensions must be >= 1");
    }
    if (layer.kernel_height < 1 || layer.kernel_width < 1) {
      throw validation_error(label + ": kernel dimensions must be >= 1");
    }
    if (layer.connected_prev_maps < 0) {
      throw validation_error(label + ": connected_prev_maps must be >= 0");
    }
    if (i == 0) {
      if (layer.connected_prev_maps != 0) {
        throw validation_error(label + ": input layer cannot connect to previous maps");
      }
      continue;
    }
    if (layer.connected_prev_maps > layers[i - 1].maps) {
      throw validation_error(label + ": connected_prev_maps " +
                             std::to_string(layer.connected_prev_maps) +
                             " exceeds previous layer's " +
                             std::to_string(layers[i - 1].maps) + " maps");
    }
  }
}

std::vector<LayerStats> layer_stats(const CnnArchitecture& arch) {
  arch.validate();
  std::vector<LayerStats> out;
  out.reserve(arch.layers.size());
  for (std::size_t i = 0; i < arch.layers.size(); ++i) {
    const LayerSpec& layer = arch.layers[i];
    LayerStats stats{i, layer.neurons(), 0};
    if (layer.kind == LayerKind::Convolutional) {
      stats.weights = layer.maps *
                      (layer.kernel_height * layer.kernel_width * layer.connected_prev_maps + 1);
    } else if (is_weighted_dense(layer.kind)) {
      stats.weights = layer.neurons() * (arch.layers[i - 1].neurons() + 1);
    }
    out.push_back(stats);
  }
  return out;
}

LayerOps layer_ops(const LayerSpec& layer, const LayerSpec* prev, std::size_t index) {
  const auto neurons = static_cast<std::uint64_t>(layer.neurons());
  const auto kernel_area = static_cast<std::uint64_t>(layer.kernel_height * layer.kernel_width);
  LayerOps ops{index, layer.kind, 0, 0};
  switch (layer.kind) {
    case LayerKind::Input:
      break;
    case LayerKind::Convolutional:
      ops.fprop = neurons *
                  (2 * kernel_area * static_cast<std::uint64_t>(layer.connected_prev_maps) + 2);
      ops.bprop = 2 * ops.fprop;
      break;
    case LayerKind::MaxPooling:
      ops.fprop = neurons * kernel_area;
      ops.bprop = neurons * kernel_area;
      break;
    case LayerKind::FullyConnected:
    case LayerKind::Output: {
      const auto prev_neurons = prev ? static_cast<std::uint64_t>(prev->neurons()) : 0;
      ops.fprop = neurons * (2 * prev_neurons + 2);
      ops.bprop = 2 * ops.fprop;
      break;
    }
  }
  return ops;
}

OpCounts count_ops(const CnnArchitecture& arch) {
  arch.validate();
  OpCounts counts;
  counts.per_layer.reserve(arch.layers.size());
  for (std::size_t i = 0; i < arch.layers.size(); ++i) {
    const LayerSpec* prev = i == 0 ? nullptr : &arch.layers[i - 1];
    const LayerOps ops = layer_ops(arch.layers[i], prev, i);
    counts.fprop_ops += ops.fprop;
    counts.bprop_ops += ops.bprop;
    switch (ops.kind) {
      case LayerKind::Convolutional:
        counts.fprop_by_type.convolution += ops.fprop;
        counts.bprop_by_type.convolution += ops.bprop;
        break;
      case LayerKind::MaxPooling:
        counts.fprop_by_type.max_pooling += ops.fprop;
        counts.bprop_by_type.max_pooling += ops.bprop;
        break;
      case LayerKind::FullyConnected:
      case LayerKind::Output:
        counts.fprop_by_type.fully_connected += ops.fprop;
        counts.bprop_by_type.fully_connected += ops.bprop;
        break;
      case LayerKind::Input:
        break;
    }
    counts.per_layer.push_back(ops);
  }
  return counts;
}

}  // namespace cnnperf
