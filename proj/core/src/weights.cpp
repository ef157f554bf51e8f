#include "bmolab/weights.hpp"

#include <cmath>

namespace bmolab {

WeightModel::WeightModel(GridFunction samples, std::string kind)
    : samples_(std::move(samples)), kind_(std::move(kind)) {
  if (!samples_.scalar()) throw DomainError("WeightModel: weight must be scalar");
  for (std::int64_t i = 0; i < samples_.cell_count(); ++i) {
    const double v = samples_.scalar_cell(i);
    if (!(v > 0.0) || !std::isfinite(v))
      throw DegenerateWeightError("WeightModel: weight must be positive and finite at every sample");
  }
  prefix_.resize(static_cast<std::size_t>(samples_.cell_count()) + 1, 0.0);
  for (std::int64_t i = 0; i < samples_.cell_count(); ++i)
    prefix_[i + 1] = prefix_[i] + samples_.scalar_cell(i);
}

WeightModel WeightModel::constant(const Interval& window, int resolution_log2, double c) {
  return WeightModel(GridFunction::sample_scalar(window, resolution_log2,
                                                 [c](double) { return c; }),
                     "constant");
}

WeightModel WeightModel::power(const Interval& window, int resolution_log2, double a,
                               double centre) {
  return WeightModel(
      GridFunction::sample_scalar(window, resolution_log2,
                                  [a, centre](double x) { return std::pow(std::abs(x - centre), a); }),
      "power");
}

WeightModel WeightModel::two_level_step(const Interval& window, int resolution_log2, double x0,
                                        double lo, double hi) {
  return WeightModel(GridFunction::sample_scalar(
                         window, resolution_log2,
                         [x0, lo, hi](double x) { return x < x0 ? lo : hi; }),
                     "step");
}

WeightModel WeightModel::from_samples(GridFunction samples) {
  return WeightModel(std::move(samples), "sampled");
}

double WeightModel::mass(const Interval& I) const {
  const auto [a, b] = samples_.cell_range(I);
  return (prefix_[b] - prefix_[a]) * samples_.step();
}

double WeightModel::mass_power(const Interval& I, double q) const {
  const auto [a, b] = samples_.cell_range(I);
  detail::CompensatedSum acc;
  for (std::int64_t i = a; i < b; ++i) acc.add(std::pow(samples_.scalar_cell(i), q));
  return acc.value() * samples_.step();
}

double aq_quotient(const WeightModel& w, double q, const Interval& I) {
  if (!(q > 1.0)) throw DomainError("aq_quotient: q must exceed 1");
  const double len = I.length();
  const double avg_w = w.mass(I) / len;
  const double avg_dual = w.mass_power(I, -1.0 / (q - 1.0)) / len;
  return avg_w * std::pow(avg_dual, q - 1.0);
}

AqCertificate aq_constant(const WeightModel& w, double q, std::span<const Interval> family) {
  if (family.empty()) throw PreconditionError("aq_constant: empty interval family");
  AqCertificate cert;
  cert.q = q;
  cert.family_size = family.size();
  bool first = true;
  for (const auto& I : family) {
    const double quot = aq_quotient(w, q, I);
    if (first || quot > cert.constant ||
        (quot == cert.constant && Interval::shorter_leftmost(I, cert.attaining))) {
      cert.constant = quot;
      cert.attaining = I;
      first = false;
    }
  }
  return cert;
}

std::vector<double> dilation_growth(const WeightModel& w, const Interval& I, double q,
                                    int l_max) {
  if (l_max < 0) throw DomainError("dilation_growth: l_max must be nonnegative");
  if (!w.window().contains(I.dilated(l_max)))
    throw DomainError("dilation_growth: dilation escapes the window");
  const double base = w.mass(I);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(l_max));
  for (int l = 1; l <= l_max; ++l)
    out.push_back(w.mass(I.dilated(l)) / (base * std::pow(2.0, q * l)));
  return out;
}

std::vector<Interval> canonical_interval_family(const Interval& window, int min_scale) {
  std::vector<Interval> family;
  for (const auto& j : dyadics_within(window, min_scale)) {
    family.push_back(Interval::from_dyadic(j));
    // Union with the right neighbour at the same scale.  Even positions give
    // the parent dyadic (already listed); odd positions give the straddling
    // intervals a purely dyadic family misses.
    if (j.position % 2 == 0) continue;
    const Interval u = j.scale >= 0
                           ? Interval(j.position << j.scale, (j.position + 2) << j.scale, 0)
                           : Interval(j.position, j.position + 2, -j.scale);
    if (window.contains(u)) family.push_back(u);
  }
  return family;
}

}  // namespace bmolab
