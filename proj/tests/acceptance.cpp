// Acceptance suite: one PASS/FAIL line per criterion. An optional argument
// selects a single criterion (1-8); exit status is nonzero if any fail.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "cnnperf/archmodel.hpp"
#include "cnnperf/dataset.hpp"
#include "cnnperf/evaluation.hpp"
#include "cnnperf/hardware.hpp"
#include "cnnperf/predictor.hpp"

using namespace cnnperf;

namespace {

// Collects mismatches for one criterion.
struct Check {
  std::vector<std::string> failures;
  int checked = 0;

  void near(const std::string& what, double got, double want, double tol) {
    ++checked;
    if (!(std::fabs(got - want) <= tol)) {
      char buf[256];
      std::snprintf(buf, sizeof buf, "%s: got %.4f, want %.4f (tol %g)", what.c_str(), got, want,
                    tol);
      failures.emplace_back(buf);
    }
  }
  void relative(const std::string& what, double got, double want, double tol) {
    ++checked;
    if (!(std::fabs(got - want) <= tol * std::fabs(want))) {
      char buf[256];
      std::snprintf(buf, sizeof buf, "%s: got %.6g, want %.6g (rel tol %g)", what.c_str(), got,
                    want, tol);
      failures.emplace_back(buf);
    }
  }
  void expect(const std::string& what, bool ok) {
    ++checked;
    if (!ok) failures.push_back(what);
  }
};

struct ThreadColumn {
  std::string arch;
  std::vector<double> minutes;
};

const std::vector<std::int64_t> kSweepThreads{480, 960, 1920, 3840};

void table_ix(Check& c, Strategy s, const std::vector<ThreadColumn>& columns) {
  const Dataset paper = build_dataset("paper");
  const Dataset prep9 = build_dataset("paper-tableIX");
  for (const auto& col : columns) {
    // The medium strategy (a) column only reproduces with Prep = 1e9.
    const Dataset& ds = (s == Strategy::A && col.arch == "medium") ? prep9 : paper;
    for (std::size_t k = 0; k < kSweepThreads.size(); ++k) {
      const auto w = ds.default_workload(col.arch, kSweepThreads[k]);
      const double got = predict(ds, s, w).minutes();
      c.near(col.arch + " p=" + std::to_string(kSweepThreads[k]), got, col.minutes[k], 0.1);
    }
  }
}

void criterion1(Check& c) {
  table_ix(c, Strategy::A,
           {{"small", {6.6, 5.4, 4.9, 4.6}},
            {"medium", {36.8, 23.9, 17.4, 14.2}},
            {"large", {92.9, 60.8, 44.8, 36.8}}});
}

void criterion2(Check& c) {
  table_ix(c, Strategy::B,
           {{"small", {6.7, 5.5, 4.9, 4.6}},
            {"medium", {39.1, 25.1, 18.0, 14.5}},
            {"large", {82.6, 45.7, 27.2, 18.0}}});
}

void criterion3(Check& c) {
  const Dataset ds = build_dataset("paper");
  const std::vector<ImageCount> images{{60000, 10000}, {120000, 20000}, {240000, 40000}};
  const std::vector<std::int64_t> epochs{70, 140, 280};
  const std::vector<std::int64_t> threads{240, 480};
  // Rows follow the image grid; columns are threads-major, then epochs.
  const double want[3][6] = {{8.9, 17.6, 35.0, 6.6, 12.9, 25.6},
                             {17.6, 35.0, 69.7, 12.9, 25.6, 51.1},
                             {35.0, 69.7, 139.3, 25.6, 51.1, 101.9}};
  const auto rows = sweep_scale(images, epochs, threads, "small", ds);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t k = 0; k < rows[r].cells.size(); ++k) {
      const auto& cell = rows[r].cells[k];
      c.near("i=" + std::to_string(rows[r].images.images) + " ep=" + std::to_string(cell.epochs) +
                 " p=" + std::to_string(cell.threads),
             cell.prediction.minutes(), want[r][k], 0.1);
    }
  }
}

void criterion4(Check& c) {
  const Dataset ds = build_dataset("paper");
  for (const auto& arch : ds.architectures) {
    const auto& profile = ds.contention(arch.name);
    for (const auto& sample : profile.samples) {
      const auto est = contention_at(profile, sample.threads);
      c.expect(arch.name + " measured p=" + std::to_string(sample.threads) + " returned exactly",
               est.seconds == sample.seconds && est.source == ContentionSource::Measured);
    }
    c.expect(arch.name + " has four starred values", arch.published_contention.size() == 4);
    for (const auto& starred : arch.published_contention) {
      const auto est = contention_at(profile, starred.threads);
      c.relative(arch.name + " starred p=" + std::to_string(starred.threads), est.seconds,
                 starred.seconds, 0.02);
      c.expect(arch.name + " p=" + std::to_string(starred.threads) + " extrapolated",
               est.source == ContentionSource::Extrapolated);
    }
  }
}

void criterion5(Check& c) {
  const Dataset ds = build_dataset("paper");
  auto stats = [&](const std::string& arch) { return layer_stats(*ds.at(arch).architecture); };
  const auto small = stats("small");
  const auto medium = stats("medium");
  const auto large = stats("large");
  c.near("input neurons", static_cast<double>(small.at(0).neurons), 841, 0);
  c.near("small conv neurons", static_cast<double>(small.at(1).neurons), 3380, 0);
  c.near("small conv weights", static_cast<double>(small.at(1).weights), 85, 0);
  c.near("medium conv neurons", static_cast<double>(medium.at(1).neurons), 13520, 0);
  c.near("medium conv weights", static_cast<double>(medium.at(1).weights), 340, 0);
  // Last convolutional layer of the large network.
  const auto& layers = ds.at("large").architecture->layers;
  std::size_t last = 0;
  for (std::size_t k = 0; k < layers.size(); ++k)
    if (layers[k].kind == LayerKind::Convolutional) last = k;
  c.near("large last conv neurons", static_cast<double>(large.at(last).neurons), 3600, 0);
  c.near("large last conv weights", static_cast<double>(large.at(last).weights), 216100, 0);
  for (const auto& arch : {"small", "medium", "large"})
    c.near(std::string(arch) + " input neurons",
           static_cast<double>(stats(arch).at(0).neurons), 841, 0);
}

void criterion6(Check& c) {
  const Dataset ds = build_dataset("paper");
  auto totals = [&](const std::string& arch) { return *ds.at(arch).published_ops; };
  const auto s = totals("small");
  const auto m = totals("medium");
  const auto l = totals("large");
  auto ratio = [](std::uint64_t a, std::uint64_t b) {
    return static_cast<double>(a) / static_cast<double>(b);
  };
  c.near("fprop medium/small", ratio(m.fprop_total, s.fprop_total), 9.64, 0.01);
  c.near("fprop large/medium", ratio(l.fprop_total, m.fprop_total), 9.57, 0.01);
  c.near("bprop medium/small", ratio(m.bprop_total, s.bprop_total), 11.68, 0.01);
  c.near("bprop large/medium", ratio(l.bprop_total, m.bprop_total), 11.96, 0.01);
}

void criterion7(Check& c) {
  const Dataset ds = build_dataset("paper");
  const auto p = predict(ds, Strategy::A, ds.default_workload("small", 240));
  c.near("small p=240 ep=70 total seconds", p.total_s, 532.6, 0.1);
}

void criterion8(Check& c) {
  const Dataset ds = build_dataset("paper");
  const std::vector<std::string> archs{"small", "medium", "large"};
  const std::vector<std::int64_t> threads{1, 15, 60, 120, 180, 240, 480, 3840};

  for (const auto& arch : archs) {
    for (const auto p : threads) {
      const auto w = ds.default_workload(arch, p);
      const std::string tag = arch + " p=" + std::to_string(p);
      // Calibration round trip.
      const auto pa = predict(ds, Strategy::A, w);
      const double factor = calibrate_operation_factor(pa.total_s, w, ds.params_a(arch),
                                                       ds.hardware, ds.contention(arch));
      c.relative(tag + " calibration round trip", factor, ds.params_a(arch).operation_factor,
                 1e-9);
      // Breakdown sums to total.
      for (const auto s : {Strategy::A, Strategy::B}) {
        const auto pred = predict(ds, s, w);
        c.expect(tag + " breakdown sums to total", pred.breakdown.sum() == pred.total_s);
        // Epoch linearity of the per-epoch phases.
        auto w2 = w;
        w2.epochs *= 2;
        const auto pred2 = predict(ds, s, w2);
        c.relative(tag + " train term linear in epochs", pred2.breakdown.train_s,
                   2 * pred.breakdown.train_s, 1e-12);
        c.relative(tag + " validation term linear in epochs", pred2.breakdown.validate_s,
                   2 * pred.breakdown.validate_s, 1e-12);
        c.relative(tag + " test term linear in epochs", pred2.breakdown.test_s,
                   2 * pred.breakdown.test_s, 1e-12);
      }
    }
  }

  // Delta identity and scale invariance.
  for (const double x : {1e-3, 1.0, 532.6, 1e6}) c.expect("delta identity", accuracy_delta(x, x) == 0);
  for (const double k : {1e-3, 7.0, 1e4})
    c.relative("delta scale invariance", accuracy_delta(110 * k, 100 * k), accuracy_delta(110, 100),
               1e-12);

  // Doubling images or epochs roughly doubles a cell; doubling threads gives
  // less than a 2x speedup.
  const std::vector<ImageCount> images{{60000, 10000}, {120000, 20000}, {240000, 40000}};
  const std::vector<std::int64_t> epochs{70, 140, 280};
  const auto rows = sweep_scale(images, epochs, {240, 480}, "small", ds);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t k = 0; k < rows[r].cells.size(); ++k) {
      const double cell = rows[r].cells[k].prediction.total_s;
      if (r + 1 < rows.size()) {
        const double ratio = rows[r + 1].cells[k].prediction.total_s / cell;
        c.expect("image doubling ratio in [1.9, 2.1]", ratio >= 1.9 && ratio <= 2.1);
      }
      if (k % 3 != 2) {
        const double ratio = rows[r].cells[k + 1].prediction.total_s / cell;
        c.expect("epoch doubling ratio in [1.9, 2.1]", ratio >= 1.9 && ratio <= 2.1);
      }
      if (k < 3) {
        c.expect("doubling threads gives less than 2x speedup",
                 rows[r].cells[k + 3].prediction.total_s > cell / 2);
      }
    }
  }
}

struct Criterion {
  int id;
  const char* title;
  std::function<void(Check&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "thread sweep, strategy (a)", criterion1},
      {2, "thread sweep, strategy (b)", criterion2},
      {3, "image and epoch scaling grid", criterion3},
      {4, "contention extrapolation", criterion4},
      {5, "layer statistics", criterion5},
      {6, "published op-count ratios", criterion6},
      {7, "worked example total", criterion7},
      {8, "property suite", criterion8},
  };
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "usage: %s [1-%zu]\n", argv[0], criteria.size());
      return 2;
    }
  }

  int failed = 0;
  for (const auto& cr : criteria) {
    if (only && cr.id != only) continue;
    Check c;
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = c.failures.empty() && c.checked > 0;
    if (!ok) ++failed;
    std::printf("%s criterion %d: %s (%d checks, %zu failed)\n", ok ? "PASS" : "FAIL", cr.id,
                cr.title, c.checked, c.failures.size());
    for (const auto& f : c.failures) std::printf("    %s\n", f.c_str());
  }
  return failed ? 1 : 0;
}
