// Exercises the exported C surface only; links against the shared library.
#include "doctest.h"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include "cnnperf/cnnperf.h"

namespace {

struct DatasetHandle {
  cnnperf_dataset* ds = nullptr;
  explicit DatasetHandle(const char* preset = "paper") {
    REQUIRE(cnnperf_dataset_open(preset, nullptr, 0, &ds) == CNNPERF_OK);
  }
  ~DatasetHandle() { cnnperf_dataset_free(ds); }
};

std::string render(cnnperf_table* t, cnnperf_format f) {
  char* text = nullptr;
  REQUIRE(cnnperf_table_render(t, f, &text) == CNNPERF_OK);
  std::string out = text;
  cnnperf_string_free(text);
  return out;
}

}  // namespace

TEST_CASE("open presets and inspect") {
  DatasetHandle h;
  CHECK(std::string(cnnperf_dataset_name(h.ds)) == "paper");
  CHECK(std::string(cnnperf_dataset_notice(h.ds)).empty());
  REQUIRE(cnnperf_dataset_architecture_count(h.ds) == 3);
  CHECK(std::string(cnnperf_dataset_architecture_name(h.ds, 1)) == "medium");
  CHECK(cnnperf_dataset_architecture_name(h.ds, 3) == nullptr);

  DatasetHandle ix("paper-tableIX");
  CHECK(std::string(cnnperf_dataset_notice(ix.ds)).find("1e9") != std::string::npos);

  cnnperf_dataset* bad = nullptr;
  CHECK(cnnperf_dataset_open("nope", nullptr, 0, &bad) == CNNPERF_ERR_NOT_FOUND);
  CHECK(bad == nullptr);
  CHECK(std::string(cnnperf_last_error()).find("nope") != std::string::npos);

  const char* missing[] = {"/nonexistent/config.json"};
  CHECK(cnnperf_dataset_open("paper", missing, 1, &bad) == CNNPERF_ERR_IO);
  CHECK(cnnperf_exit_code(CNNPERF_ERR_IO) == 2);
  CHECK(cnnperf_exit_code(CNNPERF_ERR_VALIDATION) == 1);
  CHECK(cnnperf_exit_code(CNNPERF_ERR_PARSE) == 1);
  CHECK(cnnperf_exit_code(CNNPERF_OK) == 0);
  CHECK(cnnperf_dataset_open("paper", nullptr, 0, nullptr) == CNNPERF_ERR_ARGUMENT);
}

TEST_CASE("predict through the C API") {
  DatasetHandle h;
  cnnperf_workload w{};
  REQUIRE(cnnperf_dataset_default_workload(h.ds, "small", 240, &w) == CNNPERF_OK);
  CHECK(w.images == 60000);
  CHECK(w.epochs == 70);
  cnnperf_prediction p{};
  REQUIRE(cnnperf_predict(h.ds, "small", CNNPERF_STRATEGY_A, &w, CNNPERF_CHUNK_EXACT, &p) == CNNPERF_OK);
  CHECK(p.total_s == doctest::Approx(532.6243218901454).epsilon(1e-12));
  CHECK(p.cpi == 2.0);
  CHECK(p.prep_s + p.train_s + p.validate_s + p.test_s + p.mem_s == p.total_s);

  w.threads = 0;
  CHECK(cnnperf_predict(h.ds, "small", CNNPERF_STRATEGY_A, &w, CNNPERF_CHUNK_EXACT, &p) ==
        CNNPERF_ERR_VALIDATION);
  CHECK(std::string(cnnperf_last_error()).find("threads") != std::string::npos);
  w.threads = 10;
  CHECK(cnnperf_predict(h.ds, "xl", CNNPERF_STRATEGY_B, &w, CNNPERF_CHUNK_EXACT, &p) ==
        CNNPERF_ERR_NOT_FOUND);
}

TEST_CASE("calibration, CPI, contention and fit") {
  DatasetHandle h;
  cnnperf_workload w{};
  REQUIRE(cnnperf_dataset_default_workload(h.ds, "small", 15, &w) == CNNPERF_OK);
  cnnperf_prediction p{};
  REQUIRE(cnnperf_predict(h.ds, "small", CNNPERF_STRATEGY_A, &w, CNNPERF_CHUNK_EXACT, &p) == CNNPERF_OK);
  double factor = 0;
  REQUIRE(cnnperf_calibrate(h.ds, "small", p.total_s, &w, CNNPERF_CHUNK_EXACT, &factor) == CNNPERF_OK);
  CHECK(factor == doctest::Approx(15.0).epsilon(1e-9));
  CHECK(cnnperf_calibrate(h.ds, "small", p.mem_s, &w, CNNPERF_CHUNK_EXACT, &factor) ==
        CNNPERF_ERR_CALIBRATION);

  double cpi = 0;
  REQUIRE(cnnperf_cpi_for(h.ds, 180, &cpi) == CNNPERF_OK);
  CHECK(cpi == 1.5);

  double c = 0;
  cnnperf_contention_source src{};
  REQUIRE(cnnperf_contention_at(h.ds, "small", 240, &c, &src) == CNNPERF_OK);
  CHECK(c == 1.40e-2);
  CHECK(src == CNNPERF_CONTENTION_MEASURED);
  REQUIRE(cnnperf_contention_at(h.ds, "large", 3840, &c, &src) == CNNPERF_OK);
  CHECK(src == CNNPERF_CONTENTION_EXTRAPOLATED);
  CHECK(c == doctest::Approx(2.185).epsilon(1e-3));

  double slope = 0, intercept = 0;
  REQUIRE(cnnperf_fit_contention(h.ds, "medium", 0, &slope, &intercept) == CNNPERF_OK);
  CHECK(slope == doctest::Approx(1.541576957924321e-4).epsilon(1e-10));
  CHECK(cnnperf_fit_contention(h.ds, "medium", 1, &slope, &intercept) == CNNPERF_ERR_FIT);

  double mem = 0;
  REQUIRE(cnnperf_memory_overhead(1.40e-2, 70, 60000, 240, &mem) == CNNPERF_OK);
  CHECK(mem == doctest::Approx(245.0));
  double delta = 0;
  REQUIRE(cnnperf_accuracy_delta(110, 100, &delta) == CNNPERF_OK);
  CHECK(delta == doctest::Approx(10.0));
  CHECK(cnnperf_accuracy_delta(1, 0, &delta) == CNNPERF_ERR_VALIDATION);
}

TEST_CASE("parameter overrides") {
  DatasetHandle h;
  REQUIRE(cnnperf_dataset_set_param(h.ds, "medium", "prep_ops", 1e9) == CNNPERF_OK);
  CHECK(cnnperf_dataset_set_param(h.ds, "medium", "bogus", 1) == CNNPERF_ERR_VALIDATION);
  CHECK(cnnperf_dataset_set_param(h.ds, "medium", "operation_factor", 0) == CNNPERF_ERR_VALIDATION);
}

TEST_CASE("tables") {
  DatasetHandle h;
  cnnperf_table* t = nullptr;

  SUBCASE("count-ops CSV") {
    REQUIRE(cnnperf_count_ops_table(h.ds, "small", &t) == CNNPERF_OK);
    const std::string csv = render(t, CNNPERF_FORMAT_CSV);
    CHECK(csv.rfind("index,kind,maps,neurons,weights,fprop_ops,bprop_ops\n", 0) == 0);
    CHECK(csv.find("1,convolutional,5,3380,85,") != std::string::npos);
    CHECK(std::string(cnnperf_table_summary(t, "published_fprop_total")) == "58000");
    uint64_t f = 0, b = 0;
    REQUIRE(cnnperf_count_ops(h.ds, "small", &f, &b) == CNNPERF_OK);
    CHECK(std::to_string(f) == cnnperf_table_summary(t, "fprop_total"));
  }
  SUBCASE("sweep numbers and cells") {
    const char* archs[] = {"small", "large"};
    const int64_t threads[] = {480, 3840};
    REQUIRE(cnnperf_sweep_table(h.ds, archs, 2, threads, 2, CNNPERF_CHUNK_EXACT, &t) == CNNPERF_OK);
    CHECK(cnnperf_table_row_count(t) == 2);
    CHECK(cnnperf_table_column_count(t) == 5);
    CHECK(std::string(cnnperf_table_column_name(t, 3)) == "large_a_min");
    CHECK(std::string(cnnperf_table_cell(t, 0, 4)) == "82.6");
    double v = 0;
    CHECK(cnnperf_table_cell_number(t, 1, 3, &v) == 1);
    CHECK(v == 36.8);
    CHECK(cnnperf_table_cell(t, 9, 0) == nullptr);
    const std::string json = render(t, CNNPERF_FORMAT_JSON);
    CHECK(json.find("\"large_b_min\": 18.0") != std::string::npos);
  }
  SUBCASE("scale grid") {
    const int64_t images[] = {60000};
    const int64_t test[] = {10000};
    const int64_t epochs[] = {70};
    const int64_t threads[] = {240};
    REQUIRE(cnnperf_scale_grid_table(h.ds, "small", images, test, 1, epochs, 1, threads, 1,
                                     CNNPERF_CHUNK_EXACT, &t) == CNNPERF_OK);
    CHECK(std::string(cnnperf_table_column_name(t, 2)) == "p240_ep70_min");
    CHECK(std::string(cnnperf_table_cell(t, 0, 2)) == "8.9");
  }
  SUBCASE("contention") {
    const int64_t threads[] = {240, 480};
    REQUIRE(cnnperf_contention_table(h.ds, "medium", threads, 2, &t) == CNNPERF_OK);
    CHECK(render(t, CNNPERF_FORMAT_CSV).find("480,7.32e-02,extrapolated\n") != std::string::npos);
    CHECK(std::string(cnnperf_table_cell(t, 0, 2)) == "measured");
  }
  SUBCASE("validate from text") {
    double avg = -1;
    REQUIRE(cnnperf_validate_text_table(h.ds, CNNPERF_STRATEGY_A,
                                        "arch,p,i,it,ep,measured_s\nsmall,240,60000,10000,70,532.6243218901454\n",
                                        CNNPERF_CHUNK_EXACT, &t, &avg) == CNNPERF_OK);
    CHECK(avg < 1e-9);
    CHECK(std::string(cnnperf_table_summary(t, "average_delta_percent")) == "0.00");
    cnnperf_table* bad = nullptr;
    CHECK(cnnperf_validate_text_table(h.ds, CNNPERF_STRATEGY_A, "arch,p\n", CNNPERF_CHUNK_EXACT, &bad,
                                      nullptr) == CNNPERF_ERR_PARSE);
    CHECK(cnnperf_validate_file_table(h.ds, CNNPERF_STRATEGY_A, "/nonexistent.csv", CNNPERF_CHUNK_EXACT,
                                      &bad, nullptr) == CNNPERF_ERR_IO);
  }
  SUBCASE("write to file") {
    REQUIRE(cnnperf_dataset_table(h.ds, &t) == CNNPERF_OK);
    const std::string path = "cnnperf_capi_dataset.csv";
    REQUIRE(cnnperf_table_write(t, CNNPERF_FORMAT_CSV, path.c_str()) == CNNPERF_OK);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "key,value,source");
    std::remove(path.c_str());
    CHECK(cnnperf_table_write(t, CNNPERF_FORMAT_CSV, "/nonexistent/dir/out.csv") == CNNPERF_ERR_IO);
  }
  cnnperf_table_free(t);
}
