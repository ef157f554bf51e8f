#include "bmolab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bmolab {

WaveletModel WaveletSpec::build(int resolution_log2) const {
  if (kind == "haar") return WaveletModel::haar(resolution_log2, guard);
  if (kind == "daubechies") return WaveletModel::daubechies(order, resolution_log2, guard);
  throw DomainError("WaveletSpec: unknown kind '" + kind + "'");
}

WeightModel WeightSpec::build(const Interval& window, int resolution_log2) const {
  if (kind == "constant") return WeightModel::constant(window, resolution_log2, value);
  if (kind == "power") return WeightModel::power(window, resolution_log2, a, centre);
  if (kind == "step") return WeightModel::two_level_step(window, resolution_log2, x0, lo, hi);
  throw DomainError("WeightSpec: unknown kind '" + kind + "'");
}

GrowthModel GrowthSpec::build() const {
  if (kind == "constant") return GrowthModel::constant(c);
  if (kind == "power") return GrowthModel::power(alpha);
  if (kind == "log-power") return GrowthModel::log_power(alpha, beta);
  throw DomainError("GrowthSpec: unknown kind '" + kind + "'");
}

std::vector<Interval> FamilySpec::build(const Interval& window, int resolution_log2) const {
  std::vector<Interval> out;
  if (kind == "dyadic") {
    for (const auto& j : dyadics_within(window, min_scale))
      out.push_back(Interval::from_dyadic(j));
  } else if (kind == "canonical") {
    out = canonical_interval_family(window, min_scale);
  } else if (kind == "coarse-endpoints") {
    // Endpoints on a coarsened grid of 2^coarse_log2 points across the window.
    const std::int64_t points = std::int64_t{1} << coarse_log2;
    const std::int64_t wlo = window.left_ticks(resolution_log2);
    const std::int64_t whi = window.right_ticks(resolution_log2);
    const std::int64_t stride = (whi - wlo) / points;
    if (stride < 1) throw DomainError("FamilySpec: coarse grid finer than the resolution");
    for (std::int64_t a = 0; a < points; ++a)
      for (std::int64_t b = a + 1; b <= points; ++b)
        out.push_back(Interval(wlo + a * stride, wlo + b * stride, resolution_log2));
  } else {
    throw DomainError("FamilySpec: unknown kind '" + kind + "'");
  }
  if (include_window) {
    bool present = false;
    for (const auto& I : out)
      if (I == window) present = true;
    if (!present) out.push_back(window);
  }
  return out;
}

namespace {

void read_if(const nlohmann::json& j, const char* key, int& v) {
  if (j.contains(key)) v = j.at(key).get<int>();
}
void read_if(const nlohmann::json& j, const char* key, double& v) {
  if (j.contains(key)) v = j.at(key).get<double>();
}
void read_if(const nlohmann::json& j, const char* key, bool& v) {
  if (j.contains(key)) v = j.at(key).get<bool>();
}
void read_if(const nlohmann::json& j, const char* key, std::string& v) {
  if (j.contains(key)) v = j.at(key).get<std::string>();
}
void read_if(const nlohmann::json& j, const char* key, std::uint64_t& v) {
  if (j.contains(key)) v = j.at(key).get<std::uint64_t>();
}
void read_if(const nlohmann::json& j, const char* key, std::int64_t& v) {
  if (j.contains(key)) v = j.at(key).get<std::int64_t>();
}

FamilySpec family_from(const nlohmann::json& j, FamilySpec base) {
  read_if(j, "kind", base.kind);
  read_if(j, "min_scale", base.min_scale);
  read_if(j, "coarse_log2", base.coarse_log2);
  read_if(j, "include_window", base.include_window);
  return base;
}

nlohmann::json family_to(const FamilySpec& f) {
  return {{"kind", f.kind},
          {"min_scale", f.min_scale},
          {"coarse_log2", f.coarse_log2},
          {"include_window", f.include_window}};
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ExperimentConfig c;
  if (j.contains("window")) {
    read_if(j["window"], "m_log2", c.window.m_log2);
    read_if(j["window"], "resolution_log2", c.window.resolution_log2);
  }
  if (j.contains("wavelet")) {
    read_if(j["wavelet"], "kind", c.wavelet.kind);
    read_if(j["wavelet"], "order", c.wavelet.order);
    read_if(j["wavelet"], "guard", c.wavelet.guard);
  }
  if (j.contains("weight")) {
    read_if(j["weight"], "kind", c.weight.kind);
    read_if(j["weight"], "value", c.weight.value);
    read_if(j["weight"], "a", c.weight.a);
    read_if(j["weight"], "center", c.weight.centre);
    read_if(j["weight"], "centre", c.weight.centre);
    read_if(j["weight"], "x0", c.weight.x0);
    read_if(j["weight"], "lo", c.weight.lo);
    read_if(j["weight"], "hi", c.weight.hi);
  }
  if (j.contains("growth")) {
    read_if(j["growth"], "kind", c.growth.kind);
    read_if(j["growth"], "c", c.growth.c);
    read_if(j["growth"], "alpha", c.growth.alpha);
    read_if(j["growth"], "beta", c.growth.beta);
  }
  read_if(j, "q", c.q);
  read_if(j, "p", c.p);
  if (j.contains("bmo_family")) c.bmo_family = family_from(j["bmo_family"], c.bmo_family);
  if (j.contains("carleson_family"))
    c.carleson_family = family_from(j["carleson_family"], c.carleson_family);
  if (j.contains("reporting_family"))
    c.reporting_family = family_from(j["reporting_family"], c.reporting_family);
  read_if(j, "min_scale", c.min_scale);
  read_if(j, "sub_depth", c.sub_depth);
  read_if(j, "seed", c.seed);
  read_if(j, "exact_threshold", c.exact_threshold);
  read_if(j, "mc_samples", c.mc_samples);
  if (j.contains("corpus")) {
    const auto& k = j["corpus"];
    read_if(k, "step_functions", c.corpus.step_functions);
    read_if(k, "wavelet_sums", c.corpus.wavelet_sums);
    read_if(k, "log_profiles", c.corpus.log_profiles);
    read_if(k, "vector_functions", c.corpus.vector_functions);
    read_if(k, "arrays", c.corpus.arrays);
    read_if(k, "array_support", c.corpus.array_support);
    read_if(k, "dense_arrays", c.corpus.dense_arrays);
    read_if(k, "dimension", c.corpus.dimension);
    read_if(k, "exponent", c.corpus.exponent);
    read_if(k, "step_scale", c.corpus.step_scale);
    read_if(k, "array_min_scale", c.corpus.array_min_scale);
  }
  read_if(j, "out_dir", c.out_dir);
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DomainError("cannot open config: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return from_json(ss.str());
}

std::string ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["window"] = {{"m_log2", window.m_log2}, {"resolution_log2", window.resolution_log2}};
  j["wavelet"] = {{"kind", wavelet.kind}, {"order", wavelet.order}, {"guard", wavelet.guard}};
  j["weight"] = {{"kind", weight.kind}, {"value", weight.value}, {"a", weight.a},
                 {"centre", weight.centre}, {"x0", weight.x0}, {"lo", weight.lo},
                 {"hi", weight.hi}};
  j["growth"] = {{"kind", growth.kind}, {"c", growth.c}, {"alpha", growth.alpha},
                 {"beta", growth.beta}};
  j["q"] = q;
  j["p"] = p;
  j["bmo_family"] = family_to(bmo_family);
  j["carleson_family"] = family_to(carleson_family);
  j["reporting_family"] = family_to(reporting_family);
  j["min_scale"] = min_scale;
  j["sub_depth"] = sub_depth;
  j["seed"] = seed;
  j["exact_threshold"] = exact_threshold;
  j["mc_samples"] = mc_samples;
  j["corpus"] = {{"step_functions", corpus.step_functions},
                 {"wavelet_sums", corpus.wavelet_sums},
                 {"log_profiles", corpus.log_profiles},
                 {"vector_functions", corpus.vector_functions},
                 {"arrays", corpus.arrays},
                 {"array_support", corpus.array_support},
                 {"dense_arrays", corpus.dense_arrays},
                 {"dimension", corpus.dimension},
                 {"exponent", corpus.exponent},
                 {"step_scale", corpus.step_scale},
                 {"array_min_scale", corpus.array_min_scale}};
  j["out_dir"] = out_dir;
  return j.dump(2);
}

void ExperimentConfig::validate_theorem_a() const {
  if (!(q > 1.0) || !(q < 2.0))
    throw PreconditionError("theorem A: q must lie in (1, 2)");
  const double qprime = q / (q - 1.0);
  if (!(p > 1.0) || p > qprime + 1e-12)
    throw PreconditionError("theorem A: p must lie in (1, q']");
  if (wavelet.kind != "daubechies" || wavelet.order < 3)
    throw PreconditionError("theorem A: wavelet does not meet the smoothness hypotheses");
}

void ExperimentConfig::validate_theorem_b() const {
  if (!(q > 1.0) || !(q < 2.0))
    throw PreconditionError("theorem B: q must lie in (1, 2)");
  if (!(p > 1.0) || !std::isfinite(p))
    throw PreconditionError("theorem B: p must lie in (1, inf)");
  if (wavelet.kind != "daubechies" || wavelet.order < 3)
    throw PreconditionError("theorem B: wavelet does not meet the smoothness hypotheses");
}

}  // namespace bmolab
