#include "cnnperf/dataset.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cnnperf/error.hpp"
#include "bundled_dataset.inc"

namespace cnnperf {

namespace {

std::string join(const std::string& where, std::string_view key) {
  return where.empty() ? std::string(key) : where + "." + std::string(key);
}

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Parse, where + ": " + what);
}

const Document& require(const Document& node, std::string_view key, const std::string& where) {
  if (!node.is_object()) parse_fail(where, "expected an object");
  const auto it = node.find(std::string(key));
  if (it == node.end()) parse_fail(join(where, key), "missing");
  return *it;
}

double get_number(const Document& node, std::string_view key, const std::string& where) {
  const Document& v = require(node, key, where);
  if (!v.is_number()) parse_fail(join(where, key), "expected a number");
  return v.get<double>();
}

std::int64_t to_count(const Document& v, const std::string& where) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d == static_cast<double>(static_cast<std::int64_t>(d))) return static_cast<std::int64_t>(d);
  }
  parse_fail(where, "expected an integer");
}

std::int64_t get_count(const Document& node, std::string_view key, const std::string& where) {
  return to_count(require(node, key, where), join(where, key));
}

std::string get_string(const Document& node, std::string_view key, std::string fallback = {}) {
  if (!node.is_object()) return fallback;
  const auto it = node.find(std::string(key));
  if (it == node.end() || !it->is_string()) return fallback;
  return it->get<std::string>();
}

// "map": [h, w] or map_height/map_width.
void read_pair(const Document& node, std::string_view shorthand, std::string_view h_key,
               std::string_view w_key, std::int64_t& h, std::int64_t& w, const std::string& where) {
  const auto it = node.find(std::string(shorthand));
  if (it != node.end()) {
    if (!it->is_array() || it->size() != 2) {
      parse_fail(join(where, shorthand), "expected [height, width]");
    }
    h = to_count((*it)[0], join(where, shorthand));
    w = to_count((*it)[1], join(where, shorthand));
    return;
  }
  if (node.contains(std::string(h_key))) h = get_count(node, h_key, where);
  if (node.contains(std::string(w_key))) w = get_count(node, w_key, where);
}

std::vector<ContentionSample> parse_samples(const Document& node, const std::string& where) {
  if (!node.is_array()) parse_fail(where, "expected a list of [threads, seconds] pairs");
  std::vector<ContentionSample> out;
  for (std::size_t k = 0; k < node.size(); ++k) {
    const std::string at = where + "[" + std::to_string(k) + "]";
    const Document& pair = node[k];
    if (!pair.is_array() || pair.size() != 2 || !pair[1].is_number()) {
      parse_fail(at, "expected [threads, seconds]");
    }
    out.push_back({to_count(pair[0], at), pair[1].get<double>()});
  }
  return out;
}

OpsByType parse_ops_by_type(const Document& node, const std::string& where,
                            std::uint64_t& total) {
  OpsByType ops;
  ops.max_pooling = static_cast<std::uint64_t>(get_count(node, "max_pooling", where));
  ops.fully_connected = static_cast<std::uint64_t>(get_count(node, "fully_connected", where));
  ops.convolution = static_cast<std::uint64_t>(get_count(node, "convolution", where));
  total = node.contains("total") ? static_cast<std::uint64_t>(get_count(node, "total", where))
                                 : ops.total();
  return ops;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::string ArchitectureModel::source_of(std::string_view block) const {
  for (const auto& [key, value] : sources) {
    if (key == block) return value;
  }
  return {};
}

bool Dataset::contains(std::string_view arch) const {
  for (const auto& a : architectures) {
    if (a.name == arch) return true;
  }
  return false;
}

const ArchitectureModel& Dataset::at(std::string_view arch) const {
  for (const auto& a : architectures) {
    if (a.name == arch) return a;
  }
  std::string known;
  for (const auto& a : architectures) known += (known.empty() ? "" : ", ") + a.name;
  throw Error(ErrorKind::NotFound,
              "unknown architecture '" + std::string(arch) + "' (known: " + known + ")");
}

ArchitectureModel& Dataset::at(std::string_view arch) {
  return const_cast<ArchitectureModel&>(std::as_const(*this).at(arch));
}

const ModelParamsA& Dataset::params_a(std::string_view arch) const {
  const auto& a = at(arch);
  if (!a.params_a) {
    throw Error(ErrorKind::NotFound, "architecture '" + a.name + "' has no strategy (a) parameters");
  }
  return *a.params_a;
}

const ModelParamsB& Dataset::params_b(std::string_view arch) const {
  const auto& a = at(arch);
  if (!a.params_b) {
    throw Error(ErrorKind::NotFound, "architecture '" + a.name + "' has no strategy (b) parameters");
  }
  return *a.params_b;
}

const ContentionProfile& Dataset::contention(std::string_view arch) const {
  const auto& a = at(arch);
  if (!a.contention) {
    throw Error(ErrorKind::NotFound, "architecture '" + a.name + "' has no contention profile");
  }
  return *a.contention;
}

Workload Dataset::default_workload(std::string_view arch, std::int64_t threads) const {
  const auto& a = at(arch);
  if (!a.workload) {
    throw Error(ErrorKind::NotFound, "architecture '" + a.name + "' has no workload defaults");
  }
  return Workload{a.workload->images, a.workload->test_images, a.workload->epochs,
                  threads,            threads,                  a.name};
}

void Dataset::validate() const {
  hardware.validate();
  for (const auto& a : architectures) {
    if (a.architecture) a.architecture->validate();
    if (a.params_a) a.params_a->validate();
    if (a.params_b) a.params_b->validate();
    if (a.contention) a.contention->validate();
    if (a.workload) {
      Workload probe{a.workload->images, a.workload->test_images, a.workload->epochs, 1, 1, a.name};
      probe.validate();
    }
  }
}

Document bundled_document() { return parse_document(kBundledDataset, "<bundled dataset>"); }

std::vector<std::string> preset_names() {
  std::vector<std::string> names{"paper"};
  const Document doc = bundled_document();
  if (doc.contains("variants")) {
    for (const auto& [key, value] : doc["variants"].items()) names.push_back(key);
  }
  return names;
}

Document preset_document(std::string_view preset, std::string* notice) {
  Document doc = bundled_document();
  if (preset == "paper" || preset.empty()) {
    doc.erase("variants");
    return doc;
  }
  const auto variants = doc.find("variants");
  if (variants == doc.end() || !variants->contains(std::string(preset))) {
    std::string known;
    for (const auto& name : preset_names()) known += (known.empty() ? "" : ", ") + name;
    throw Error(ErrorKind::NotFound,
                "unknown preset '" + std::string(preset) + "' (known: " + known + ")");
  }
  const Document variant = (*variants)[std::string(preset)];
  doc.erase("variants");
  if (variant.contains("patch")) doc.merge_patch(variant["patch"]);
  const std::string text = get_string(variant, "notice");
  doc["notice"] = text;
  doc["name"] = std::string(preset);
  if (notice) *notice = text;
  return doc;
}

Document parse_document(std::string_view text, std::string_view origin) {
  try {
    return Document::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string(origin) + ": " + e.what());
  }
}

Document read_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::Io, "error reading '" + path.string() + "'");
  return parse_document(buf.str(), path.string());
}

LayerSpec parse_layer(const Document& node, const LayerSpec* prev, const std::string& where) {
  if (!node.is_object()) parse_fail(where, "expected an object");
  const Document& kind = require(node, "kind", where);
  if (!kind.is_string()) parse_fail(join(where, "kind"), "expected a string");
  LayerSpec layer;
  try {
    layer.kind = parse_layer_kind(kind.get<std::string>());
  } catch (const Error& e) {
    parse_fail(join(where, "kind"), e.what());
  }
  layer.maps = get_count(node, "maps", where);
  read_pair(node, "map", "map_height", "map_width", layer.map_height, layer.map_width, where);
  read_pair(node, "kernel", "kernel_height", "kernel_width", layer.kernel_height,
            layer.kernel_width, where);
  if (node.contains("connected_prev_maps")) {
    layer.connected_prev_maps = get_count(node, "connected_prev_maps", where);
  } else if (layer.kind == LayerKind::Input || prev == nullptr) {
    layer.connected_prev_maps = 0;
  } else if (layer.kind == LayerKind::MaxPooling) {
    layer.connected_prev_maps = 1;
  } else {
    layer.connected_prev_maps = prev->maps;
  }
  return layer;
}

CnnArchitecture parse_architecture(const Document& node, std::string_view fallback_name) {
  CnnArchitecture arch;
  arch.name = get_string(node, "name", std::string(fallback_name));
  const std::string where = "architectures." + arch.name;
  const Document& layers = require(node, "layers", where);
  if (!layers.is_array()) parse_fail(join(where, "layers"), "expected a list");
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const LayerSpec* prev = arch.layers.empty() ? nullptr : &arch.layers.back();
    arch.layers.push_back(
        parse_layer(layers[k], prev, join(where, "layers") + "[" + std::to_string(k) + "]"));
  }
  if (node.contains("reconstructed")) arch.reconstructed = node["reconstructed"].get<bool>();
  arch.notes = get_string(node, "notes");
  arch.validate();
  return arch;
}

CnnArchitecture read_architecture(const std::filesystem::path& path) {
  const Document doc = read_document(path);
  return parse_architecture(doc, path.stem().string());
}

Dataset parse_dataset(const Document& doc) {
  if (!doc.is_object()) parse_fail("<root>", "expected an object");
  Dataset ds;
  ds.name = get_string(doc, "name", "custom");
  ds.description = get_string(doc, "description");
  ds.notice = get_string(doc, "notice");

  const Document& hw = require(doc, "hardware", "");
  ds.hardware.name = get_string(hw, "name", "hardware");
  ds.hardware.clock_speed_hz = get_number(hw, "clock_speed_hz", "hardware");
  ds.hardware.cores = get_count(hw, "cores", "hardware");
  ds.hardware.max_threads_per_core = get_count(hw, "max_threads_per_core", "hardware");
  const Document& cpi = require(hw, "cpi_schedule", "hardware");
  if (!cpi.is_array()) parse_fail("hardware.cpi_schedule", "expected a list");
  for (const auto& v : cpi) {
    if (!v.is_number()) parse_fail("hardware.cpi_schedule", "expected numbers");
    ds.hardware.cpi_schedule.push_back(v.get<double>());
  }
  ds.hardware_source = get_string(hw, "source");

  if (doc.contains("architectures")) {
    const Document& archs = doc["architectures"];
    if (!archs.is_object()) parse_fail("architectures", "expected an object keyed by name");
    for (const auto& [name, node] : archs.items()) {
      // A merge patch may delete an architecture by setting it to null.
      if (node.is_null()) continue;
      const std::string where = "architectures." + name;
      ArchitectureModel model;
      model.name = name;
      if (node.contains("layers")) {
        Document named = node;
        named["name"] = name;
        model.architecture = parse_architecture(named, name);
      }
      if (node.contains("workload")) {
        const Document& w = node["workload"];
        const std::string at = join(where, "workload");
        model.workload = WorkloadDefaults{get_count(w, "images", at), get_count(w, "test_images", at),
                                          get_count(w, "epochs", at)};
        model.sources.emplace_back("workload", get_string(w, "source"));
      }
      if (node.contains("strategy_a")) {
        const Document& a = node["strategy_a"];
        const std::string at = join(where, "strategy_a");
        model.params_a = ModelParamsA{get_number(a, "prep_ops", at), get_number(a, "fprop_ops", at),
                                      get_number(a, "bprop_ops", at),
                                      get_number(a, "operation_factor", at)};
        model.sources.emplace_back("strategy_a", get_string(a, "source"));
      }
      if (node.contains("strategy_b")) {
        const Document& b = node["strategy_b"];
        const std::string at = join(where, "strategy_b");
        model.params_b = ModelParamsB{get_number(b, "prep_s", at), get_number(b, "fprop_s", at),
                                      get_number(b, "bprop_s", at)};
        model.sources.emplace_back("strategy_b", get_string(b, "source"));
      }
      if (node.contains("contention")) {
        const Document& c = node["contention"];
        const std::string at = join(where, "contention");
        model.contention =
            ContentionProfile{name, parse_samples(require(c, "measured", at), join(at, "measured"))};
        if (c.contains("published_predicted")) {
          model.published_contention =
              parse_samples(c["published_predicted"], join(at, "published_predicted"));
        }
        model.sources.emplace_back("contention", get_string(c, "source"));
      }
      if (node.contains("published_ops")) {
        const Document& p = node["published_ops"];
        const std::string at = join(where, "published_ops");
        PublishedOps ops;
        ops.fprop = parse_ops_by_type(require(p, "fprop", at), join(at, "fprop"), ops.fprop_total);
        ops.bprop = parse_ops_by_type(require(p, "bprop", at), join(at, "bprop"), ops.bprop_total);
        model.published_ops = ops;
        model.sources.emplace_back("published_ops", get_string(p, "source"));
      }
      ds.architectures.push_back(std::move(model));
    }
  }
  if (doc.contains("notes") && doc["notes"].is_array()) {
    for (const auto& n : doc["notes"]) {
      if (n.is_string()) ds.notes.push_back(n.get<std::string>());
    }
  }
  ds.validate();
  return ds;
}

Dataset build_dataset(std::string_view preset, const std::vector<std::filesystem::path>& configs) {
  Document doc = preset_document(preset);
  for (const auto& path : configs) doc.merge_patch(read_document(path));
  return parse_dataset(doc);
}

std::vector<DatasetEntry> describe(const Dataset& ds) {
  std::vector<DatasetEntry> out;
  const auto& hw = ds.hardware;
  out.push_back({"hardware.name", hw.name, ds.hardware_source});
  out.push_back({"hardware.clock_speed_hz", format_number(hw.clock_speed_hz), ds.hardware_source});
  out.push_back({"hardware.cores", std::to_string(hw.cores), ds.hardware_source});
  out.push_back({"hardware.max_threads_per_core", std::to_string(hw.max_threads_per_core),
                 ds.hardware_source});
  for (std::size_t k = 0; k < hw.cpi_schedule.size(); ++k) {
    out.push_back({"hardware.cpi." + std::to_string(k + 1) + "_threads_per_core",
                   format_number(hw.cpi_schedule[k]), ds.hardware_source});
  }
  for (const auto& a : ds.architectures) {
    const std::string prefix = a.name + ".";
    if (a.workload) {
      const std::string src = a.source_of("workload");
      out.push_back({prefix + "images", std::to_string(a.workload->images), src});
      out.push_back({prefix + "test_images", std::to_string(a.workload->test_images), src});
      out.push_back({prefix + "epochs", std::to_string(a.workload->epochs), src});
    }
    if (a.params_a) {
      const std::string src = a.source_of("strategy_a");
      out.push_back({prefix + "a.prep_ops", format_number(a.params_a->prep_ops), src});
      out.push_back({prefix + "a.fprop_ops", format_number(a.params_a->fprop_ops), src});
      out.push_back({prefix + "a.bprop_ops", format_number(a.params_a->bprop_ops), src});
      out.push_back({prefix + "a.operation_factor", format_number(a.params_a->operation_factor), src});
    }
    if (a.params_b) {
      const std::string src = a.source_of("strategy_b");
      out.push_back({prefix + "b.prep_s", format_number(a.params_b->prep_s), src});
      out.push_back({prefix + "b.fprop_s", format_number(a.params_b->fprop_s), src});
      out.push_back({prefix + "b.bprop_s", format_number(a.params_b->bprop_s), src});
    }
    if (a.contention) {
      const std::string src = a.source_of("contention");
      for (const auto& s : a.contention->samples) {
        out.push_back({prefix + "contention.p" + std::to_string(s.threads), format_number(s.seconds),
                       src + " (measured)"});
      }
      for (const auto& s : a.published_contention) {
        out.push_back({prefix + "contention.p" + std::to_string(s.threads), format_number(s.seconds),
                       src + " (published prediction)"});
      }
    }
    if (a.published_ops) {
      const std::string src = a.source_of("published_ops");
      out.push_back({prefix + "fprop_total", std::to_string(a.published_ops->fprop_total), src});
      out.push_back({prefix + "bprop_total", std::to_string(a.published_ops->bprop_total), src});
    }
    if (a.architecture) {
      out.push_back({prefix + "layers", std::to_string(a.architecture->layers.size()),
                     a.architecture->reconstructed ? "reconstructed" : "user supplied"});
    }
  }
  return out;
}

}  // namespace cnnperf

namespace cnnperf {

void set_parameter(Dataset& ds, std::string_view arch, std::string_view key, double value) {
  const std::string name(key);
  Dataset next = ds;
  auto as_count = [&]() {
    if (value != static_cast<double>(static_cast<std::int64_t>(value))) {
      throw validation_error("parameter '" + name + "' must be an integer");
    }
    return static_cast<std::int64_t>(value);
  };
  if (key == "clock_speed_hz") {
    next.hardware.clock_speed_hz = value;
  } else if (key == "cores") {
    next.hardware.cores = as_count();
  } else {
    ArchitectureModel& a = next.at(arch);
    auto need_a = [&]() -> ModelParamsA& {
      if (!a.params_a) a.params_a = ModelParamsA{};
      return *a.params_a;
    };
    auto need_b = [&]() -> ModelParamsB& {
      if (!a.params_b) a.params_b = ModelParamsB{};
      return *a.params_b;
    };
    auto need_w = [&]() -> WorkloadDefaults& {
      if (!a.workload) a.workload = WorkloadDefaults{};
      return *a.workload;
    };
    if (key == "prep_ops") need_a().prep_ops = value;
    else if (key == "fprop_ops") need_a().fprop_ops = value;
    else if (key == "bprop_ops") need_a().bprop_ops = value;
    else if (key == "operation_factor") need_a().operation_factor = value;
    else if (key == "prep_s") need_b().prep_s = value;
    else if (key == "fprop_s") need_b().fprop_s = value;
    else if (key == "bprop_s") need_b().bprop_s = value;
    else if (key == "images") need_w().images = as_count();
    else if (key == "test_images") need_w().test_images = as_count();
    else if (key == "epochs") need_w().epochs = as_count();
    else throw validation_error("unknown parameter '" + name + "'");
  }
  next.validate();
  ds = std::move(next);
}

}  // namespace cnnperf
