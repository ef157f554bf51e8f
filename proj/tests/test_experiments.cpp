#include <doctest.h>

#include <cstring>
#include <filesystem>

#include "bmolab/experiments.hpp"
#include "bmolab/io.hpp"

using namespace bmolab;

namespace {

ExperimentConfig tiny_config() {
  ExperimentConfig cfg;
  cfg.window.m_log2 = 2;
  cfg.window.resolution_log2 = 8;
  cfg.wavelet = {"daubechies", 4, 5};
  cfg.q = 1.5;
  cfg.p = 2.0;
  cfg.min_scale = -3;
  cfg.corpus.step_functions = 2;
  cfg.corpus.wavelet_sums = 1;
  cfg.corpus.log_profiles = 1;
  cfg.corpus.vector_functions = 1;
  cfg.corpus.arrays = 3;
  cfg.corpus.dense_arrays = 1;
  cfg.corpus.array_support = 10;
  cfg.bmo_family = {.kind = "coarse-endpoints", .min_scale = -3, .coarse_log2 = 5,
                    .include_window = true};
  cfg.carleson_family = {.kind = "dyadic", .min_scale = -2, .coarse_log2 = 8,
                         .include_window = true};
  cfg.reporting_family = {.kind = "dyadic", .min_scale = 1, .coarse_log2 = 8,
                          .include_window = false};
  return cfg;
}

}  // namespace

TEST_CASE("config json round trip and overrides") {
  const auto cfg = tiny_config();
  const auto text = cfg.to_json();
  const auto back = ExperimentConfig::from_json(text);
  CHECK(back.window.m_log2 == cfg.window.m_log2);
  CHECK(back.window.resolution_log2 == cfg.window.resolution_log2);
  CHECK(back.wavelet.kind == cfg.wavelet.kind);
  CHECK(back.q == cfg.q);
  CHECK(back.min_scale == cfg.min_scale);
  CHECK(back.corpus.arrays == cfg.corpus.arrays);
  CHECK(back.bmo_family.kind == cfg.bmo_family.kind);

  const auto partial = ExperimentConfig::from_json(R"({"q": 1.25, "p": 1.5})");
  CHECK(partial.q == 1.25);
  CHECK(partial.p == 1.5);
  CHECK(partial.window.resolution_log2 == 10);  // defaults survive
}

TEST_CASE("experiment validation enforces the theorem hypotheses") {
  auto cfg = tiny_config();
  CHECK_NOTHROW(cfg.validate_theorem_a());
  CHECK_NOTHROW(cfg.validate_theorem_b());

  auto bad_p = cfg;
  bad_p.p = 3.5;  // q' = 3 for q = 1.5
  CHECK_THROWS_AS(bad_p.validate_theorem_a(), PreconditionError);
  CHECK_NOTHROW(bad_p.validate_theorem_b());

  auto haar = cfg;
  haar.wavelet.kind = "haar";
  CHECK_THROWS_AS(haar.validate_theorem_a(), PreconditionError);
  CHECK_THROWS_AS(haar.validate_theorem_b(), PreconditionError);

  auto bad_q = cfg;
  bad_q.q = 2.5;
  CHECK_THROWS_AS(bad_q.validate_theorem_a(), PreconditionError);
}

TEST_CASE("corpus generation is deterministic in the seed") {
  const auto cfg = tiny_config();
  const auto f1 = build_function_corpus(cfg);
  const auto f2 = build_function_corpus(cfg);
  REQUIRE(f1.size() == f2.size());
  for (std::size_t i = 0; i < f1.size(); ++i) {
    CHECK(f1[i].name == f2[i].name);
    const auto a = f1[i].f.data(), b = f2[i].f.data();
    REQUIRE(a.size() == b.size());
    bool same = true;
    for (std::size_t k = 0; k < a.size(); ++k) same = same && (a[k] == b[k]);
    CHECK(same);
  }

  auto other = cfg;
  other.seed = cfg.seed + 1;
  const auto f3 = build_function_corpus(other);
  bool all_same = true;
  for (std::size_t i = 0; i < f1.size(); ++i) {
    const auto a = f1[i].f.data(), b = f3[i].f.data();
    for (std::size_t k = 0; k < a.size(); ++k) all_same = all_same && (a[k] == b[k]);
  }
  CHECK(!all_same);

  const auto arrays = build_array_corpus(cfg);
  CHECK(arrays.size() ==
        static_cast<std::size_t>(cfg.corpus.arrays + cfg.corpus.dense_arrays));
  for (const auto& ca : arrays) CHECK(!ca.a.empty());
}

TEST_CASE("theorem A run: finite headline, deterministic reports") {
  const auto cfg = tiny_config();
  const auto rep = run_theorem_a(cfg);
  CHECK(rep.experiment == "theorem-a");
  CHECK(rep.cases.size() == 5);
  CHECK(rep.headline > 0.0);
  for (const auto& c : rep.cases) {
    CHECK(std::isfinite(c.ratio));
    CHECK(c.ratio >= 0.0);
    CHECK(c.note == "exact");  // small supports stay below the threshold
  }
  const auto rep2 = run_theorem_a(cfg);
  CHECK(rep.to_csv() == rep2.to_csv());
  CHECK(rep.to_json() == rep2.to_json());
}

TEST_CASE("theorem B run: per-piece metrics and unit-norm inputs") {
  const auto cfg = tiny_config();
  const auto rep = run_theorem_b(cfg);
  CHECK(rep.experiment == "theorem-b");
  CHECK(!rep.cases.empty());
  CHECK(rep.headline > 0.0);
  CHECK(std::isfinite(rep.headline));
  double f1 = -1, f2 = -1, f3 = -1;
  for (const auto& [k, v] : rep.metrics) {
    if (k == "f1_bound_max") f1 = v;
    if (k == "f2_bound_max") f2 = v;
    if (k == "f3_bound_max") f3 = v;
  }
  CHECK(f1 >= 0.0);
  CHECK(f2 >= 0.0);
  CHECK(f3 >= 0.0);
  for (const auto& c : rep.cases) {
    CHECK(c.rhs == 1.0);
    CHECK(c.note.find("f1=") != std::string::npos);
  }
}

TEST_CASE("property suite: green on the tiny config; errors are captured per-case") {
  auto cfg = tiny_config();
  const auto rep = run_property_suite(cfg);
  CHECK(rep.all_pass);
  CHECK(rep.cases.size() >= 10);
  const auto json = rep.to_json();
  CHECK(json.find("\"all_pass\"") != std::string::npos);
  const auto csv = rep.to_csv();
  CHECK(csv.find("contraction-exact") != std::string::npos);

  // A weight that is zero somewhere: the affected cases report the
  // degenerate-weight error instead of aborting the suite.
  auto broken = cfg;
  broken.weight = {.kind = "step", .value = 1.0, .a = 0.5, .centre = 0.0,
                   .x0 = 0.0, .lo = 0.0, .hi = 1.0};
  const auto rep2 = run_property_suite(broken);
  CHECK(!rep2.all_pass);
  bool saw_weight_error = false;
  bool others_still_pass = false;
  for (const auto& c : rep2.cases) {
    if (!c.pass && c.detail.find("positive") != std::string::npos) saw_weight_error = true;
    if (c.pass && c.name == "contraction-exact") others_still_pass = true;
  }
  CHECK(saw_weight_error);
  CHECK(others_still_pass);
}

TEST_CASE("exact-mode results do not depend on the seed; MC results move") {
  auto cfg = tiny_config();
  auto moved = cfg;
  moved.seed = cfg.seed;  // same corpus
  moved.mc_samples = cfg.mc_samples;

  const auto w = cfg.weight.build(cfg.window.interval(), cfg.window.resolution_log2);
  const auto rho = cfg.growth.build();
  const auto arrays = build_array_corpus(cfg);
  const auto family = cfg.carleson_family.build(cfg.window.interval(),
                                                cfg.window.resolution_log2);
  CarlesonOptions o1{.p = 2.0, .min_scale = -3,
                     .moment = {cfg.exact_threshold, cfg.mc_samples, 1}, .keep_breakdown = false};
  CarlesonOptions o2 = o1;
  o2.moment.seed = 999;
  const auto r1 = carleson_norm(arrays[0].a, w, rho, family, o1);
  const auto r2 = carleson_norm(arrays[0].a, w, rho, family, o2);
  CHECK(r1.mode == "exact");
  CHECK(r1.value == r2.value);  // exact enumeration ignores the seed

  // Dense arrays have multi-term blocks, so MC noise is visible in the value.
  const auto& dense = arrays[static_cast<std::size_t>(cfg.corpus.arrays)].a;
  const auto exact_dense = carleson_norm(dense, w, rho, family, o1);
  CarlesonOptions mc1 = o1, mc2 = o2;
  mc1.moment.exact_threshold = 0;
  mc1.moment.mc_samples = 20000;
  mc2.moment.exact_threshold = 0;
  mc2.moment.mc_samples = 20000;
  const auto m1 = carleson_norm(dense, w, rho, family, mc1);
  const auto m2 = carleson_norm(dense, w, rho, family, mc2);
  CHECK(m1.mode == "monte-carlo");
  CHECK(m1.value != m2.value);
  CHECK(m1.value == doctest::Approx(exact_dense.value).epsilon(0.05));
}

TEST_CASE("corpus files round-trip through the gen-corpus layout") {
  auto cfg = tiny_config();
  cfg.out_dir = (std::filesystem::temp_directory_path() / "bmolab_corpus_test").string();
  std::filesystem::remove_all(cfg.out_dir);
  write_corpus(cfg);
  CHECK(std::filesystem::exists(cfg.out_dir + "/manifest.json"));

  const auto functions = build_function_corpus(cfg);
  const auto loaded = read_gridfunction_file(cfg.out_dir + "/" + functions[0].name + ".gfn");
  const auto a = functions[0].f.data(), b = loaded.data();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(std::memcmp(&a[i], &b[i], sizeof(double)) == 0);

  const auto arrays = build_array_corpus(cfg);
  const auto arr = read_coefficient_array_file(cfg.out_dir + "/" + arrays[0].name + ".json");
  CHECK(arr.size() == arrays[0].a.size());
  std::filesystem::remove_all(cfg.out_dir);
}
