#include "bmolab/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "bmolab/io.hpp"

namespace bmolab {

std::vector<AnnularPiece> annular_decompose(const GridFunction& f, const Interval& I,
                                            int l_max) {
  if (l_max < 1) throw DomainError("annular_decompose: l_max must be >= 1");
  if (!f.domain().contains(I)) throw DomainError("annular_decompose: I escapes the domain");
  int feasible = 0;
  while (feasible < l_max && f.domain().contains(I.dilated(feasible + 1))) ++feasible;
  if (feasible < l_max)
    throw TruncationError("annular_decompose: dilation escapes the window", feasible);

  const auto avg = average(f, I);
  const int d = f.space().dimension;
  const int res = f.resolution_log2();
  const std::int64_t base = f.domain().left_ticks(res);

  std::vector<AnnularPiece> pieces;
  pieces.reserve(static_cast<std::size_t>(l_max));
  for (int l = 1; l <= l_max; ++l) {
    const Interval outer = I.dilated(l);
    std::vector<double> samples(static_cast<std::size_t>(f.cell_count()) * d, 0.0);
    const std::int64_t olo = outer.left_ticks(res), ohi = outer.right_ticks(res);
    std::int64_t ilo = olo, ihi = olo;  // excluded inner region (empty for l = 1)
    if (l >= 2) {
      const Interval inner = I.dilated(l - 1);
      ilo = inner.left_ticks(res);
      ihi = inner.right_ticks(res);
    }
    for (std::int64_t t = olo; t < ohi; ++t) {
      if (l >= 2 && t >= ilo && t < ihi) continue;
      const auto c = f.cell(t - base);
      for (int k = 0; k < d; ++k)
        samples[static_cast<std::size_t>(t - base) * d + k] = c[k] - avg[k];
    }
    pieces.push_back({l, GridFunction(f.domain(), res, f.space(), std::move(samples))});
  }
  return pieces;
}

OscillationGrowthResult oscillation_growth_check(const GridFunction& f, const WeightModel& w,
                                                 const GrowthModel& rho, const Interval& I,
                                                 int l) {
  if (l < 1) throw DomainError("oscillation_growth_check: l must be >= 1");
  const Interval outer = I.dilated(l);
  if (!f.domain().contains(outer))
    throw DomainError("oscillation_growth_check: 2^l I escapes the window");

  const auto avg = average(f, I);
  const auto [a, b] = f.cell_range(outer);
  const int d = f.space().dimension;
  std::vector<double> diff(d);
  detail::CompensatedSum acc;
  for (std::int64_t i = a; i < b; ++i) {
    const auto c = f.cell(i);
    for (int k = 0; k < d; ++k) diff[k] = c[k] - avg[k];
    acc.add(f.space().norm(diff));
  }

  OscillationGrowthResult out;
  out.lhs = acc.value() * f.step();
  for (int k = 1; k <= l; ++k) {
    const Interval dil = I.dilated(k);
    out.rhs += std::ldexp(1.0, l - k) * w.mass(dil) * rho(dil.length());
  }
  out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
  return out;
}

HolderWeightResult holder_weight_check(const WeightModel& w, const Interval& J, double p) {
  if (!(p > 1.0)) throw DomainError("holder_weight_check: p must exceed 1");
  const double pprime = p / (p - 1.0);
  HolderWeightResult out;
  const double mass = w.mass(J);
  if (!(mass > 0.0)) throw DegenerateWeightError("holder_weight_check: w(J) must be positive");
  out.lhs = std::pow(J.length() / mass, 1.0 / pprime);
  out.rhs = w.mass_power(J, -1.0 / pprime) / J.length();
  out.pass = out.lhs <= out.rhs * (1.0 + 1e-9);
  return out;
}

IntervalClassification classify(const Interval& I,
                                std::span<const DyadicInterval> candidates) {
  IntervalClassification out;
  const Interval twoI = I.dilated(1);
  for (const auto& J : candidates) {
    // 2|J| > |I|, exactly: compare 2^{scale+1} with |I| as rationals.
    const Interval jin = Interval::from_dyadic(J);
    const int s = J.scale + 1 + I.level();
    const std::int64_t ilen = I.hi_num() - I.lo_num();
    const bool big = s >= 0 && (s >= 62 || (std::int64_t{1} << s) > ilen);
    if (big) {
      out.j1.push_back(J);
    } else if (!jin.dilated(1).intersects(twoI)) {
      out.j2.push_back(J);
    } else {
      out.j3.push_back(J);
    }
  }
  return out;
}

namespace {

std::vector<DyadicInterval> cutoff_candidates(const CoefficientArray& a,
                                              const WaveletModel& psi,
                                              const SynthesisCutoffs& cutoffs) {
  std::vector<DyadicInterval> out;
  for (const auto& [J, v] : a) {
    if (J.scale < cutoffs.min_scale || J.scale > cutoffs.max_scale) continue;
    // Spatial filter on the support of psi_J, independent of the
    // classifying interval.
    const Interval support =
        J.scale >= 0
            ? Interval(J.position << J.scale,
                       (J.position + psi.support_length()) << J.scale, 0)
            : Interval(J.position, J.position + psi.support_length(), -J.scale);
    if (support.intersects(cutoffs.region)) out.push_back(J);
  }
  return out;
}

void add_term(std::vector<double>& samples, const GridFunction& grid,
              const WaveletModel& psi, const DyadicInterval& J,
              std::span<const double> coeff, double shift) {
  const int res = grid.resolution_log2();
  const std::int64_t base = grid.domain().left_ticks(res);
  const std::int64_t end = grid.domain().right_ticks(res);
  const int d = static_cast<int>(coeff.size());
  if (shift == 0.0) {
    auto [lo, hi] = psi.dilated_support_ticks(J, res);
    lo = std::max(lo, base);
    hi = std::min(hi, end);
    for (std::int64_t t = lo; t < hi; ++t) {
      const double v = psi.dilated_cell_average(J, res, t);
      if (v == 0.0) continue;
      for (int k = 0; k < d; ++k)
        samples[static_cast<std::size_t>(t - base) * d + k] += coeff[k] * v;
    }
    return;
  }
  // Renormalized term a_J [psi_J - c_J] touches every reporting cell.
  for (std::int64_t t = base; t < end; ++t) {
    const double v = psi.dilated_cell_average(J, res, t) - shift;
    for (int k = 0; k < d; ++k)
      samples[static_cast<std::size_t>(t - base) * d + k] += coeff[k] * v;
  }
}

}  // namespace

SynthesisResult synthesize(const CoefficientArray& a, const WaveletModel& psi,
                           const Interval& I, const SynthesisCutoffs& cutoffs,
                           const Interval& reporting, int resolution_log2) {
  const auto candidates = cutoff_candidates(a, psi, cutoffs);
  auto classes = classify(I, candidates);
  const auto& space = a.space();

  auto zero = GridFunction::zero(reporting, resolution_log2, space);
  std::vector<double> s1(zero.data().begin(), zero.data().end());
  std::vector<double> s2 = s1, s3 = s1;

  SynthesisResult out{zero, zero, zero, zero, {}, {}, cutoffs};
  // c_J = psi_J at the centre of I, evaluated as the grid model's value on
  // the cell containing x_I (any choice of renormalization constants is
  // admissible; this one makes the single-term cancellation exact on grid).
  const std::int64_t centre_tick =
      (I.left_ticks(resolution_log2) + I.right_ticks(resolution_log2)) >> 1;

  for (const auto& J : classes.j1) {
    const double c = psi.dilated_cell_average(J, resolution_log2, centre_tick);
    out.renormalization.emplace_back(J, c);
    add_term(s1, zero, psi, J, a.at(J), c);
  }
  for (const auto& J : classes.j2) add_term(s2, zero, psi, J, a.at(J), 0.0);
  for (const auto& J : classes.j3) add_term(s3, zero, psi, J, a.at(J), 0.0);

  std::vector<double> total(s1.size());
  for (std::size_t i = 0; i < total.size(); ++i) total[i] = s1[i] + s2[i] + s3[i];

  out.f1 = GridFunction(reporting, resolution_log2, space, std::move(s1));
  out.f2 = GridFunction(reporting, resolution_log2, space, std::move(s2));
  out.f3 = GridFunction(reporting, resolution_log2, space, std::move(s3));
  out.f_total = GridFunction(reporting, resolution_log2, space, std::move(total));
  out.classes = std::move(classes);
  return out;
}

double constancy_check(const CoefficientArray& a, const WaveletModel& psi, const Interval& I,
                       const Interval& I_prime, const SynthesisCutoffs& cutoffs,
                       int resolution_log2) {
  if (!I_prime.contains(I) || I_prime == I)
    throw PreconditionError("constancy_check: need I strictly inside I'");
  const auto inner = synthesize(a, psi, I, cutoffs, I, resolution_log2);
  const auto outer = synthesize(a, psi, I_prime, cutoffs, I, resolution_log2);

  const auto& space = a.space();
  const int d = space.dimension;
  const std::int64_t cells = inner.f_total.cell_count();
  std::vector<double> g(static_cast<std::size_t>(cells) * d);
  for (std::int64_t c = 0; c < cells; ++c) {
    const auto u = outer.f_total.cell(c);
    const auto v = inner.f_total.cell(c);
    for (int k = 0; k < d; ++k) g[static_cast<std::size_t>(c) * d + k] = u[k] - v[k];
  }
  std::vector<double> mean(d, 0.0);
  for (std::int64_t c = 0; c < cells; ++c)
    for (int k = 0; k < d; ++k) mean[k] += g[static_cast<std::size_t>(c) * d + k];
  for (double& m : mean) m /= static_cast<double>(cells);

  double worst = 0.0;
  std::vector<double> diff(d);
  for (std::int64_t c = 0; c < cells; ++c) {
    for (int k = 0; k < d; ++k)
      diff[k] = g[static_cast<std::size_t>(c) * d + k] - mean[k];
    worst = std::max(worst, space.norm(diff));
  }
  return worst;
}

bool individual_bound_check(const CoefficientArray& a, const WeightModel& w,
                            const GrowthModel& rho, const DyadicInterval& J,
                            double carleson_value, double tol) {
  if (!(carleson_value > 0.0))
    throw PreconditionError("individual_bound_check: carleson_value must be positive");
  const auto v = a.at(J);
  const double norm = a.space().norm(v) / carleson_value;
  const Interval jin = Interval::from_dyadic(J);
  const double bound = rho(jin.length()) * w.mass(jin) / std::sqrt(jin.length());
  return norm <= bound * (1.0 + tol);
}

void write_synthesis_result(const std::string& prefix, const SynthesisResult& result) {
  write_gridfunction_file(prefix + "-f1.gfn", result.f1);
  write_gridfunction_file(prefix + "-f2.gfn", result.f2);
  write_gridfunction_file(prefix + "-f3.gfn", result.f3);
  write_gridfunction_file(prefix + "-total.gfn", result.f_total);
  nlohmann::json j;
  j["pieces"] = {prefix + "-f1.gfn", prefix + "-f2.gfn", prefix + "-f3.gfn",
                 prefix + "-total.gfn"};
  auto& renorm = j["renormalization"] = nlohmann::json::array();
  for (const auto& [J, c] : result.renormalization)
    renorm.push_back({{"j", J.scale}, {"k", J.position}, {"c", c}});
  j["classes"] = {{"j1", result.classes.j1.size()},
                  {"j2", result.classes.j2.size()},
                  {"j3", result.classes.j3.size()}};
  j["cutoffs"] = {{"min_scale", result.cutoffs.min_scale},
                  {"max_scale", result.cutoffs.max_scale},
                  {"region", {{"lo", result.cutoffs.region.lo_num()},
                              {"hi", result.cutoffs.region.hi_num()},
                              {"level", result.cutoffs.region.level()}}}};
  std::ofstream os(prefix + ".json");
  if (!os) throw DomainError("cannot write synthesis sidecar: " + prefix + ".json");
  os << j.dump(2) << "\n";
}

GridFunction f3_partial_sum(const CoefficientArray& a, const WaveletModel& psi,
                            const Interval& I, const SynthesisCutoffs& cutoffs,
                            std::span<const DyadicInterval> order, std::size_t prefix,
                            const Interval& reporting, int resolution_log2) {
  const auto candidates = cutoff_candidates(a, psi, cutoffs);
  const auto classes = classify(I, candidates);
  // Validate the order is a permutation of J3.
  if (order.size() != classes.j3.size())
    throw PreconditionError("f3_partial_sum: order must enumerate J3");
  auto sorted = std::vector<DyadicInterval>(order.begin(), order.end());
  std::sort(sorted.begin(), sorted.end());
  auto reference = classes.j3;
  std::sort(reference.begin(), reference.end());
  if (sorted != reference)
    throw PreconditionError("f3_partial_sum: order must be a permutation of J3");
  if (prefix > order.size()) prefix = order.size();

  auto zero = GridFunction::zero(reporting, resolution_log2, a.space());
  std::vector<double> s(zero.data().begin(), zero.data().end());
  for (std::size_t i = 0; i < prefix; ++i) add_term(s, zero, psi, order[i], a.at(order[i]), 0.0);
  return GridFunction(reporting, resolution_log2, a.space(), std::move(s));
}

}  // namespace bmolab
