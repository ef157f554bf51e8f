#include "bmolab/norms.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include <json.hpp>

#include "bmolab/rng.hpp"

namespace bmolab {

namespace {

// Assemble a report from per-interval values, reduced in family order.
NormReport reduce_report(std::span<const Interval> family, std::span<const double> values,
                         const std::string& mode, bool keep_breakdown) {
  NormReport rep;
  rep.family_size = family.size();
  rep.mode = mode;
  bool first = true;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (keep_breakdown) rep.breakdown.emplace_back(family[i], values[i]);
    if (first || values[i] > rep.value ||
        (values[i] == rep.value && Interval::shorter_leftmost(family[i], rep.attaining))) {
      rep.value = values[i];
      rep.attaining = family[i];
      first = false;
    }
  }
  if (first) throw PreconditionError("norm: empty interval family");
  return rep;
}

double oscillation_integral(const GridFunction& f, const Interval& I, double p,
                            const GridFunction* density) {
  const auto avg = average(f, I);
  const auto [a, b] = f.cell_range(I);
  const int d = f.space().dimension;
  std::vector<double> diff(d);
  std::int64_t ga = 0;
  if (density) ga = density->cell_range(I).first;
  detail::CompensatedSum acc;
  for (std::int64_t i = a; i < b; ++i) {
    const auto c = f.cell(i);
    for (int k = 0; k < d; ++k) diff[k] = c[k] - avg[k];
    const double nv = f.space().norm(diff);
    double term = (p == 1.0) ? nv : (p == 2.0 ? nv * nv : std::pow(nv, p));
    if (density) term *= density->scalar_cell(ga + (i - a));
    acc.add(term);
  }
  return acc.value() * f.step();
}

}  // namespace

std::string NormReport::to_json() const {
  nlohmann::json j;
  j["value"] = value;
  j["interval"] = {{"lo", attaining.lo_num()}, {"hi", attaining.hi_num()},
                   {"level", attaining.level()}};
  j["family_size"] = family_size;
  j["mode"] = mode;
  if (!breakdown.empty()) {
    auto& arr = j["breakdown"] = nlohmann::json::array();
    for (const auto& [I, v] : breakdown)
      arr.push_back({{"lo", I.lo_num()}, {"hi", I.hi_num()}, {"level", I.level()}, {"value", v}});
  }
  return j.dump();
}

NormReport bmo_norm(const GridFunction& f, const WeightModel& w, const GrowthModel& rho,
                    std::span<const Interval> family, bool keep_breakdown) {
  std::vector<double> values(family.size());
  detail::parallel_for_index(static_cast<std::int64_t>(family.size()), [&](std::int64_t i) {
    const Interval& I = family[static_cast<std::size_t>(i)];
    const double mass = w.mass(I);
    if (!(mass > 0.0)) throw DegenerateWeightError("bmo_norm: w(I) must be positive");
    values[static_cast<std::size_t>(i)] =
        oscillation_integral(f, I, 1.0, nullptr) / (mass * rho(I.length()));
  });
  return reduce_report(family, values, "deterministic", keep_breakdown);
}

NormReport jn_p_norm(const GridFunction& f, const WeightModel& w, const GrowthModel& rho,
                     double p, std::span<const Interval> family, bool keep_breakdown) {
  if (p < 1.0) throw DomainError("jn_p_norm: p must be >= 1");
  // Density w^{1-p}; p = 1 gives the constant 1 and the original BMO norm.
  const auto& ws = w.samples();
  std::vector<double> dens(static_cast<std::size_t>(ws.cell_count()));
  for (std::int64_t i = 0; i < ws.cell_count(); ++i)
    dens[static_cast<std::size_t>(i)] = std::pow(ws.scalar_cell(i), 1.0 - p);
  const GridFunction density(ws.domain(), ws.resolution_log2(), VectorSpaceDescriptor{1, 2.0},
                             std::move(dens));

  std::vector<double> values(family.size());
  detail::parallel_for_index(static_cast<std::int64_t>(family.size()), [&](std::int64_t i) {
    const Interval& I = family[static_cast<std::size_t>(i)];
    const double mass = w.mass(I);
    if (!(mass > 0.0)) throw DegenerateWeightError("jn_p_norm: w(I) must be positive");
    const double integral = oscillation_integral(f, I, p, &density);
    values[static_cast<std::size_t>(i)] =
        std::pow(integral / mass, 1.0 / p) / rho(I.length());
  });
  return reduce_report(family, values, "deterministic", keep_breakdown);
}

namespace {

struct ScaledTerm {
  DyadicInterval J;
  std::vector<double> xi;  // a_J (|J|/w(J))^{1/p'} |J|^{-1/2}
};

// Candidates J ⊆ I with |J| >= 2^min_scale drawn from the support of `a`.
std::vector<ScaledTerm> carleson_terms(const CoefficientArray& a, const WeightModel& w,
                                       const Interval& I, double p, int min_scale) {
  const double pprime = p / (p - 1.0);
  std::vector<ScaledTerm> terms;
  for (const auto& [J, v] : a) {
    if (J.scale < min_scale || !I.contains(J)) continue;
    if (J.scale + w.resolution_log2() < 0)
      throw ResolutionError("carleson_norm: coefficient below the working resolution");
    const double lenJ = J.length();
    const double wJ = w.mass(Interval::from_dyadic(J));
    if (!(wJ > 0.0)) throw DegenerateWeightError("carleson_norm: w(J) must be positive");
    const double s = std::pow(lenJ / wJ, 1.0 / pprime) / std::sqrt(lenJ);
    ScaledTerm t{J, std::vector<double>(v.begin(), v.end())};
    for (double& x : t.xi) x *= s;
    terms.push_back(std::move(t));
  }
  return terms;
}

}  // namespace

NormReport carleson_norm(const CoefficientArray& a, const WeightModel& w,
                         const GrowthModel& rho, std::span<const Interval> family,
                         const CarlesonOptions& opts) {
  if (!(opts.p > 1.0)) throw DomainError("carleson_norm: p must exceed 1");
  const int res = w.resolution_log2();
  const double step = std::ldexp(1.0, -res);
  std::atomic<bool> used_mc{false};

  std::vector<double> values(family.size());
  detail::parallel_for_index(static_cast<std::int64_t>(family.size()), [&](std::int64_t fi) {
    const Interval& I = family[static_cast<std::size_t>(fi)];
    const double mass = w.mass(I);
    if (!(mass > 0.0)) throw DegenerateWeightError("carleson_norm: w(I) must be positive");
    const auto terms = carleson_terms(a, w, I, opts.p, opts.min_scale);
    double value = 0.0;
    if (!terms.empty()) {
      // The active term set is constant on blocks of the finest present scale.
      int block_scale = terms.front().J.scale;
      for (const auto& t : terms) block_scale = std::min(block_scale, t.J.scale);
      const std::int64_t bw = std::int64_t{1} << (block_scale + res);  // block width in ticks
      const std::int64_t lo = I.left_ticks(res), hi = I.right_ticks(res);
      std::vector<double> flat;
      detail::CompensatedSum integral;
      for (std::int64_t b0 = lo - (((lo % bw) + bw) % bw); b0 < hi; b0 += bw) {
        const std::int64_t c0 = std::max(b0, lo), c1 = std::min(b0 + bw, hi);
        if (c0 >= c1) continue;
        flat.clear();
        int n = 0;
        for (const auto& t : terms) {
          // J contains the block iff it contains its first tick.
          const std::int64_t jl = t.J.position << (t.J.scale + res);
          const std::int64_t jr = (t.J.position + 1) << (t.J.scale + res);
          if (c0 >= jl && c0 < jr) {
            flat.insert(flat.end(), t.xi.begin(), t.xi.end());
            ++n;
          }
        }
        if (n == 0) continue;
        double ep;
        if (n <= opts.moment.exact_threshold) {
          ep = rademacher_expectation_p(flat, n, a.space(), opts.p);
        } else {
          used_mc.store(true, std::memory_order_relaxed);
          ep = rademacher_expectation_p_mc(flat, n, a.space(), opts.p, opts.moment.mc_samples,
                                           hash_combine(opts.moment.seed,
                                                        static_cast<std::uint64_t>(b0)),
                                           nullptr);
        }
        integral.add(ep * static_cast<double>(c1 - c0));
      }
      value = std::pow(integral.value() * step / mass, 1.0 / opts.p) / rho(I.length());
    }
    values[static_cast<std::size_t>(fi)] = value;
  });
  return reduce_report(family, values, used_mc.load() ? "monte-carlo" : "exact",
                       opts.keep_breakdown);
}

NormReport carleson_scalar_p2(const CoefficientArray& a, const WeightModel& w,
                              const GrowthModel& rho, std::span<const Interval> family,
                              bool keep_breakdown) {
  if (!a.scalar()) throw PreconditionError("carleson_scalar_p2: scalar coefficients required");
  std::vector<double> values(family.size());
  detail::parallel_for_index(static_cast<std::int64_t>(family.size()), [&](std::int64_t fi) {
    const Interval& I = family[static_cast<std::size_t>(fi)];
    const double mass = w.mass(I);
    if (!(mass > 0.0)) throw DegenerateWeightError("carleson_scalar_p2: w(I) must be positive");
    detail::CompensatedSum s;
    for (const auto& [J, v] : a) {
      if (!I.contains(J)) continue;
      if (J.scale + w.resolution_log2() < 0)
        throw ResolutionError("carleson_scalar_p2: coefficient below the working resolution");
      const double wJ = w.mass(Interval::from_dyadic(J));
      if (!(wJ > 0.0)) throw DegenerateWeightError("carleson_scalar_p2: w(J) must be positive");
      s.add(v[0] * v[0] * J.length() / wJ);
    }
    values[static_cast<std::size_t>(fi)] = std::sqrt(s.value() / mass) / rho(I.length());
  });
  return reduce_report(family, values, "deterministic", keep_breakdown);
}

NormReport carleson_scalar_squarefn(const CoefficientArray& a, const WeightModel& w,
                                    const GrowthModel& rho, double p,
                                    std::span<const Interval> family, bool keep_breakdown) {
  if (!a.scalar())
    throw PreconditionError("carleson_scalar_squarefn: scalar coefficients required");
  if (!(p > 1.0)) throw DomainError("carleson_scalar_squarefn: p must exceed 1");
  const int res = w.resolution_log2();
  const double step = std::ldexp(1.0, -res);
  const double pprime = p / (p - 1.0);

  std::vector<double> values(family.size());
  detail::parallel_for_index(static_cast<std::int64_t>(family.size()), [&](std::int64_t fi) {
    const Interval& I = family[static_cast<std::size_t>(fi)];
    const double mass = w.mass(I);
    if (!(mass > 0.0))
      throw DegenerateWeightError("carleson_scalar_squarefn: w(I) must be positive");
    // Square-function bracket sum_{J ⊆ I} |c_J|^2 (|J|/w(J))^{2/p'} 1_J(x)/|J| is
    // constant on blocks of the finest supported scale.
    struct Term {
      DyadicInterval J;
      double weight;
    };
    std::vector<Term> terms;
    int block_scale = 0;
    bool have = false;
    for (const auto& [J, v] : a) {
      if (!I.contains(J)) continue;
      if (J.scale + w.resolution_log2() < 0)
        throw ResolutionError("carleson_scalar_squarefn: coefficient below the working resolution");
      const double wJ = w.mass(Interval::from_dyadic(J));
      if (!(wJ > 0.0))
        throw DegenerateWeightError("carleson_scalar_squarefn: w(J) must be positive");
      const double lenJ = J.length();
      terms.push_back({J, v[0] * v[0] * std::pow(lenJ / wJ, 2.0 / pprime) / lenJ});
      block_scale = have ? std::min(block_scale, J.scale) : J.scale;
      have = true;
    }
    double value = 0.0;
    if (have) {
      const std::int64_t bw = std::int64_t{1} << (block_scale + res);
      const std::int64_t lo = I.left_ticks(res), hi = I.right_ticks(res);
      detail::CompensatedSum integral;
      for (std::int64_t b0 = lo - (((lo % bw) + bw) % bw); b0 < hi; b0 += bw) {
        const std::int64_t c0 = std::max(b0, lo), c1 = std::min(b0 + bw, hi);
        if (c0 >= c1) continue;
        double bracket = 0.0;
        for (const auto& t : terms) {
          const std::int64_t jl = t.J.position << (t.J.scale + res);
          const std::int64_t jr = (t.J.position + 1) << (t.J.scale + res);
          if (c0 >= jl && c0 < jr) bracket += t.weight;
        }
        if (bracket > 0.0)
          integral.add(std::pow(bracket, p / 2.0) * static_cast<double>(c1 - c0));
      }
      value = std::pow(integral.value() * step / mass, 1.0 / p) / rho(I.length());
    }
    values[static_cast<std::size_t>(fi)] = value;
  });
  return reduce_report(family, values, "deterministic", keep_breakdown);
}

}  // namespace bmolab
