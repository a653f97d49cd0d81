#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "cnnperf/dataset.hpp"
#include "cnnperf/error.hpp"
#include "cnnperf/report.hpp"
#include "cnnperf/table.hpp"

using namespace cnnperf;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path path = fs::temp_directory_path() / ("cnnperf_test_" + name);
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("bundled paper dataset loads and is complete") {
  const Dataset ds = build_dataset("paper");
  CHECK(ds.hardware.clock_speed_hz == 1.238e9);
  CHECK(ds.hardware.cores == 60);
  CHECK(ds.hardware.max_threads_per_core == 4);
  REQUIRE(ds.architectures.size() == 3);
  CHECK(ds.architectures[0].name == "small");
  CHECK(ds.architectures[2].name == "large");
  for (const auto& a : ds.architectures) {
    CHECK(a.architecture.has_value());
    CHECK(a.architecture->reconstructed);
    CHECK(a.params_a.has_value());
    CHECK(a.params_b.has_value());
    CHECK(a.contention->samples.size() == 7);
    CHECK(a.published_contention.size() == 4);
    CHECK(a.published_ops.has_value());
    CHECK(a.workload->images == 60000);
    CHECK(a.workload->test_images == 10000);
    for (const char* block : {"workload", "strategy_a", "strategy_b", "contention", "published_ops"}) {
      CHECK_MESSAGE(!a.source_of(block).empty(), a.name, " ", block);
    }
  }
  CHECK(ds.at("large").workload->epochs == 15);
  CHECK(ds.at("medium").workload->epochs == 70);
  CHECK(ds.params_a("medium").prep_ops == 1e10);
  CHECK(ds.params_b("large").bprop_s == doctest::Approx(0.85919));
  CHECK(ds.notice.empty());
}

TEST_CASE("paper-tableIX preset overrides medium preparation ops") {
  const Dataset ds = build_dataset("paper-tableIX");
  CHECK(ds.params_a("medium").prep_ops == 1e9);
  CHECK(ds.params_a("small").prep_ops == 1e9);
  CHECK(ds.params_a("large").prep_ops == 1e11);
  CHECK(ds.notice.find("prep_ops") != std::string::npos);
  CHECK_THROWS_AS(build_dataset("nonexistent"), Error);
}

TEST_CASE("config documents patch the preset") {
  const auto path = write_temp("patch.json", R"({
    "hardware": {"clock_speed_hz": 2.0e9},
    "architectures": {
      "small": {"strategy_a": {"operation_factor": 10}},
      "tiny": {
        "layers": [{"kind": "input", "maps": 1, "map": [4, 4]}, {"kind": "output", "maps": 2, "map": [1, 1]}],
        "workload": {"images": 10, "test_images": 2, "epochs": 1},
        "strategy_a": {"prep_ops": 1, "fprop_ops": 2, "bprop_ops": 3, "operation_factor": 1},
        "contention": {"measured": [[1, 0.0], [2, 0.0]]}
      },
      "large": null
    }
  })");
  const Dataset ds = build_dataset("paper", {path});
  CHECK(ds.hardware.clock_speed_hz == 2.0e9);
  CHECK(ds.params_a("small").operation_factor == 10);
  CHECK(ds.params_a("small").fprop_ops == 58000);
  CHECK(ds.contains("tiny"));
  CHECK_FALSE(ds.contains("large"));
  CHECK(ds.at("tiny").architecture->layers[1].connected_prev_maps == 1);
  fs::remove(path);
}

TEST_CASE("config errors") {
  SUBCASE("missing file is an I/O error") {
    try {
      (void)build_dataset("paper", {"/nonexistent/cnnperf.json"});
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Io);
    }
  }
  SUBCASE("malformed JSON is a parse error") {
    const auto path = write_temp("bad.json", "{ not json");
    try {
      (void)build_dataset("paper", {path});
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Parse);
    }
    fs::remove(path);
  }
  SUBCASE("wrong type names the field") {
    const auto path = write_temp("type.json", R"({"hardware": {"cores": "many"}})");
    CHECK_THROWS_WITH_AS(build_dataset("paper", {path}), doctest::Contains("hardware.cores"), Error);
    fs::remove(path);
  }
  SUBCASE("invalid constants fail validation") {
    const auto path = write_temp("neg.json", R"({"architectures": {"small": {"strategy_b": {"prep_s": -1}}}})");
    try {
      (void)build_dataset("paper", {path});
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Validation);
    }
    fs::remove(path);
  }
}

TEST_CASE("architecture documents") {
  const auto path = write_temp("arch.json", R"({"name": "lenetish", "layers": [
      {"kind": "I", "maps": 1, "map": [29, 29]},
      {"kind": "C", "maps": 5, "map_height": 26, "map_width": 26, "kernel_height": 4, "kernel_width": 4},
      {"kind": "M", "maps": 5, "map": [13, 13], "kernel": [2, 2]},
      {"kind": "O", "maps": 10, "map": [1, 1]}]})");
  const auto arch = read_architecture(path);
  CHECK(arch.name == "lenetish");
  CHECK(arch.layers[1].connected_prev_maps == 1);
  CHECK(arch.layers[2].connected_prev_maps == 1);
  CHECK(arch.layers[3].connected_prev_maps == 5);
  CHECK(layer_stats(arch)[1].weights == 85);
  fs::remove(path);

  const auto bad = write_temp("arch_bad.json", R"({"layers": [{"kind": "input", "maps": 1, "map": [2, 2]},
      {"kind": "convolutional", "maps": 2, "map": [1, 1], "kernel": [2, 2], "connected_prev_maps": 3},
      {"kind": "output", "maps": 1, "map": [1, 1]}]})");
  CHECK_THROWS_WITH_AS(read_architecture(bad), doctest::Contains("layer 1"), Error);
  fs::remove(bad);
}

TEST_CASE("parameter overrides") {
  Dataset ds = build_dataset("paper");
  set_parameter(ds, "medium", "prep_ops", 1e9);
  CHECK(ds.params_a("medium").prep_ops == 1e9);
  set_parameter(ds, "", "clock_speed_hz", 1.0e9);
  CHECK(ds.hardware.clock_speed_hz == 1.0e9);
  set_parameter(ds, "small", "epochs", 140);
  CHECK(ds.default_workload("small", 10).epochs == 140);
  CHECK_THROWS_AS(set_parameter(ds, "small", "warp_factor", 1), Error);
  CHECK_THROWS_AS(set_parameter(ds, "small", "epochs", 1.5), Error);
  // A rejected value leaves the dataset untouched.
  CHECK_THROWS_AS(set_parameter(ds, "small", "fprop_s", -1), Error);
  CHECK(ds.params_b("small").fprop_s == 1.45e-3);
}

TEST_CASE("describe lists constants with citations") {
  const auto entries = describe(build_dataset("paper"));
  bool found = false;
  for (const auto& e : entries) {
    CHECK_FALSE(e.source.empty());
    if (e.key == "small.contention.p240") {
      found = true;
      CHECK(e.value == "0.014");
      CHECK(e.source.find("measured") != std::string::npos);
    }
  }
  CHECK(found);
}

TEST_CASE("numeric cell formatting") {
  CHECK(minutes_cell(532.6243).text == "8.9");
  CHECK(seconds_cell(532.6243).text == "532.624");
  CHECK(scientific_cell(0.0140).text == "1.40e-02");
  CHECK(scientific_cell(2.1856851698).text == "2.19e+00");
  CHECK(fixed_cell(0.25, 1).text == "0.3");  // half up
  CHECK(fixed_cell(2.5, 0).text == "3");
  CHECK(*fixed_cell(6.549, 1).number == 6.5);
  CHECK(integer_cell(42).text == "42");
}

TEST_CASE("table rendering") {
  Table t;
  t.columns = {"name", "value"};
  t.add_row({text_cell("a,b"), fixed_cell(1.25, 1)});
  t.add_row({text_cell("plain"), integer_cell(7)});
  t.summary.emplace_back("total", integer_cell(8));
  CHECK_THROWS_AS(t.add_row({text_cell("short")}), Error);

  CHECK(render(t, Format::Csv) == "name,value\n\"a,b\",1.3\nplain,7\n# total=8\n");

  const auto json = nlohmann::json::parse(render(t, Format::Json));
  CHECK(json["rows"][0]["name"] == "a,b");
  CHECK(json["rows"][0]["value"].get<double>() == 1.3);
  CHECK(json["rows"][1]["value"].get<double>() == 7);
  CHECK(json["summary"]["total"].get<double>() == 8);

  const std::string text = render(t, Format::Text);
  CHECK(text.find("name   value") != std::string::npos);
  CHECK(text.find("total: 8") != std::string::npos);
  CHECK(render(t, Format::Csv) == render(t, Format::Csv));
  CHECK(parse_format("table") == Format::Text);
  CHECK_THROWS_AS(parse_format("xml"), Error);
}

TEST_CASE("count-ops table columns") {
  const Dataset ds = build_dataset("paper");
  const auto& small = ds.at("small");
  const Table t = count_ops_table(*small.architecture, &*small.published_ops);
  CHECK(t.columns == std::vector<std::string>{"index", "kind", "maps", "neurons", "weights",
                                              "fprop_ops", "bprop_ops"});
  REQUIRE(t.rows.size() == 5);
  CHECK(t.rows[1][3].text == "3380");
  CHECK(t.rows[1][4].text == "85");
}
