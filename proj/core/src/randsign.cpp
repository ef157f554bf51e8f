#include "bmolab/randsign.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <json.hpp>

#include "bmolab/rng.hpp"

namespace bmolab {

namespace {

double norm_power(const VectorSpaceDescriptor& space, std::span<const double> v, double p) {
  const double nv = space.norm(v);
  if (p == 1.0) return nv;
  if (p == 2.0) return nv * nv;
  return std::pow(nv, p);
}

}  // namespace

std::string MomentEstimate::to_json() const {
  nlohmann::json j;
  j["value"] = value;
  j["mode"] = exact ? "exact" : "monte-carlo";
  j["samples"] = samples;
  j["seed"] = seed;
  j["std_error"] = std_error;
  return j.dump();
}

double rademacher_expectation_p(std::span<const double> flat, int n,
                                const VectorSpaceDescriptor& space, double p) {
  const int d = space.dimension;
  if (n <= 0) throw DomainError("rademacher_expectation_p: empty series");
  if (static_cast<int>(flat.size()) != n * d)
    throw DomainError("rademacher_expectation_p: term buffer size mismatch");

  // By symmetry eps -> -eps, fix the first sign and enumerate the rest in
  // Gray-code order: one term flips per step.
  std::vector<double> sum(d, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) sum[k] += flat[i * d + k];
  std::vector<int> sign(n, 1);

  detail::CompensatedSum acc;
  acc.add(norm_power(space, sum, p));
  const std::uint64_t patterns = std::uint64_t{1} << (n - 1);
  for (std::uint64_t t = 1; t < patterns; ++t) {
    const int bit = std::countr_zero(t);
    const int term = bit + 1;  // first sign is pinned
    sign[term] = -sign[term];
    const double f = 2.0 * sign[term];
    for (int k = 0; k < d; ++k) sum[k] += f * flat[term * d + k];
    // Refresh periodically so rounding drift cannot accumulate over long runs.
    if ((t & 0x3FFF) == 0) {
      std::fill(sum.begin(), sum.end(), 0.0);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < d; ++k) sum[k] += sign[i] * flat[i * d + k];
    }
    acc.add(norm_power(space, sum, p));
  }
  return acc.value() / static_cast<double>(patterns);
}

double rademacher_expectation_p_mc(std::span<const double> flat, int n,
                                   const VectorSpaceDescriptor& space, double p,
                                   std::int64_t samples, std::uint64_t seed, double* se_out) {
  const int d = space.dimension;
  if (n <= 0) throw DomainError("rademacher_expectation_p_mc: empty series");
  if (samples < 2) throw DomainError("rademacher_expectation_p_mc: need at least 2 draws");

  std::vector<double> sum(d);
  detail::CompensatedSum acc, acc2;
  const int words = (n + 63) / 64;
  for (std::int64_t m = 0; m < samples; ++m) {
    std::fill(sum.begin(), sum.end(), 0.0);
    for (int w = 0; w < words; ++w) {
      const std::uint64_t bits =
          splitmix64(hash_combine(hash_combine(seed, static_cast<std::uint64_t>(m)),
                                  static_cast<std::uint64_t>(w)));
      const int lo = w * 64;
      const int hi = std::min(n, lo + 64);
      for (int i = lo; i < hi; ++i) {
        const double s = ((bits >> (i - lo)) & 1) ? 1.0 : -1.0;
        for (int k = 0; k < d; ++k) sum[k] += s * flat[i * d + k];
      }
    }
    const double y = norm_power(space, sum, p);
    acc.add(y);
    acc2.add(y * y);
  }
  const double mean = acc.value() / static_cast<double>(samples);
  if (se_out) {
    const double var =
        std::max(0.0, acc2.value() / static_cast<double>(samples) - mean * mean);
    *se_out = std::sqrt(var / static_cast<double>(samples - 1));
  }
  return mean;
}

MomentEstimate moment_of_vectors(std::span<const double> flat, int n,
                                 const VectorSpaceDescriptor& space, double p,
                                 const MomentOptions& opts) {
  if (p < 1.0) throw DomainError("moment: p must be >= 1");
  MomentEstimate est;
  est.seed = opts.seed;
  // 2^40 patterns is already far past feasible; caps the shift as well.
  if (n <= std::min(opts.exact_threshold, 40)) {
    const double ep = rademacher_expectation_p(flat, n, space, p);
    est.value = std::pow(ep, 1.0 / p);
    est.exact = true;
    est.samples = std::int64_t{1} << (n - 1);
    est.std_error = 0.0;
    return est;
  }
  double se = 0.0;
  const double mean =
      rademacher_expectation_p_mc(flat, n, space, p, opts.mc_samples, opts.seed, &se);
  est.value = std::pow(mean, 1.0 / p);
  est.exact = false;
  est.samples = opts.mc_samples;
  // Delta method for the p-th root.
  est.std_error = mean > 0.0 ? se * est.value / (p * mean) : 0.0;
  return est;
}

SignSeries SignSeries::from_vectors(const VectorSpaceDescriptor& space,
                                    const std::vector<std::vector<double>>& terms) {
  if (terms.empty()) throw DomainError("SignSeries: empty series");
  SignSeries s;
  s.space_ = space;
  s.n_ = static_cast<int>(terms.size());
  s.flat_.reserve(terms.size() * space.dimension);
  for (const auto& t : terms) {
    if (static_cast<int>(t.size()) != space.dimension)
      throw DomainError("SignSeries: term dimension mismatch");
    s.flat_.insert(s.flat_.end(), t.begin(), t.end());
  }
  return s;
}

SignSeries SignSeries::from_functions(
    std::vector<std::pair<DyadicInterval, GridFunction>> terms) {
  if (terms.empty()) throw DomainError("SignSeries: empty series");
  SignSeries s;
  s.space_ = terms.front().second.space();
  s.n_ = static_cast<int>(terms.size());
  for (std::size_t i = 0; i + 1 < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j)
      if (terms[i].first == terms[j].first)
        throw DomainError("SignSeries: labels must be distinct");
  const auto& first = terms.front().second;
  for (const auto& [label, f] : terms) {
    if (!(f.domain() == first.domain()) || f.resolution_log2() != first.resolution_log2() ||
        !(f.space() == first.space()))
      throw DomainError("SignSeries: function terms must share a grid and space");
  }
  s.functions_ = std::move(terms);
  return s;
}

int SignSeries::term_count() const { return n_; }

MomentEstimate SignSeries::moment(double p, const MomentOptions& opts) const {
  if (vector_mode()) return moment_of_vectors(flat_, n_, space_, p, opts);

  // Pointwise expectation per grid cell, then the midpoint integral.
  const auto& proto = functions_.front().second;
  const int d = space_.dimension;
  const std::int64_t cells = proto.cell_count();
  std::vector<double> per_cell(static_cast<std::size_t>(n_) * d);
  detail::CompensatedSum integral;
  MomentEstimate est;
  est.exact = n_ <= std::min(opts.exact_threshold, 40);
  est.seed = opts.seed;
  detail::CompensatedSum var_acc;
  for (std::int64_t c = 0; c < cells; ++c) {
    for (int i = 0; i < n_; ++i) {
      const auto v = functions_[static_cast<std::size_t>(i)].second.cell(c);
      std::copy(v.begin(), v.end(),
                per_cell.begin() + static_cast<std::ptrdiff_t>(i) * d);
    }
    if (est.exact) {
      integral.add(rademacher_expectation_p(per_cell, n_, space_, p));
    } else {
      double se = 0.0;
      integral.add(rademacher_expectation_p_mc(per_cell, n_, space_, p, opts.mc_samples,
                                               hash_combine(opts.seed, c), &se));
      var_acc.add(se * se);
    }
  }
  const double mean_p = integral.value() * proto.step();
  est.value = std::pow(mean_p, 1.0 / p);
  est.samples = est.exact ? (std::int64_t{1} << (n_ - 1)) : opts.mc_samples;
  if (!est.exact && mean_p > 0.0) {
    const double se_integral = std::sqrt(var_acc.value()) * proto.step();
    est.std_error = se_integral * est.value / (p * mean_p);
  }
  return est;
}

SignSeries SignSeries::contracted(std::span<const double> lambdas) const {
  if (!vector_mode()) throw PreconditionError("SignSeries::contracted: vector mode only");
  if (static_cast<int>(lambdas.size()) != n_)
    throw PreconditionError("SignSeries::contracted: coefficient count mismatch");
  SignSeries out = *this;
  const int d = space_.dimension;
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < d; ++k) out.flat_[i * d + k] *= lambdas[i];
  return out;
}

KhintchineResult khintchine_compare(std::span<const double> lambdas, double p,
                                    const MomentOptions& opts) {
  if (lambdas.empty()) throw DomainError("khintchine_compare: empty coefficients");
  KhintchineResult out;
  const VectorSpaceDescriptor scalar{1, 2.0};
  out.moment = moment_of_vectors(lambdas, static_cast<int>(lambdas.size()), scalar, p, opts)
                   .value;
  double s2 = 0.0;
  for (double l : lambdas) s2 += l * l;
  out.l2_norm = std::sqrt(s2);
  out.ratio = out.l2_norm > 0.0 ? out.moment / out.l2_norm : 0.0;
  return out;
}

ContractionResult contraction_check(const SignSeries& s, std::span<const double> lambdas,
                                    double p, const MomentOptions& opts) {
  for (double l : lambdas)
    if (std::abs(l) > 1.0)
      throw PreconditionError("contraction_check: coefficients must lie in [-1, 1]");
  ContractionResult out;
  const auto lhs = s.contracted(lambdas).moment(p, opts);
  const auto rhs = s.moment(p, opts);
  out.lhs = lhs.value;
  out.rhs = rhs.value;
  out.exact = lhs.exact && rhs.exact;
  out.pass = out.exact ? (out.lhs <= out.rhs)
                       : (out.lhs <= out.rhs + 3.0 * (lhs.std_error + rhs.std_error));
  return out;
}

KahaneResult kahane_ratio(const SignSeries& s, double p, double r,
                          const MomentOptions& opts) {
  if (p < 1.0 || r < 1.0) throw DomainError("kahane_ratio: exponents must be >= 1");
  KahaneResult out;
  out.moment_p = s.moment(p, opts).value;
  out.moment_r = s.moment(r, opts).value;
  out.ratio = out.moment_r > 0.0 ? out.moment_p / out.moment_r : 1.0;
  return out;
}

SteinResult stein_averaging_check(std::span<const GridFunction> f_list,
                                  std::span<const DyadicInterval> j_list, const Interval& I,
                                  double p, const MomentOptions& opts) {
  if (!(p > 1.0)) throw DomainError("stein_averaging_check: p must exceed 1");
  if (f_list.size() != j_list.size() || f_list.empty())
    throw PreconditionError("stein_averaging_check: need matching nonempty lists");
  const int n = static_cast<int>(j_list.size());
  // Chain must be nested: sorted by scale descending, each containing the next.
  for (int i = 0; i + 1 < n; ++i)
    if (!j_list[i].contains(j_list[i + 1]))
      throw PreconditionError("stein_averaging_check: intervals must form a nested chain");
  for (const auto& J : j_list)
    if (!I.contains(J))
      throw PreconditionError("stein_averaging_check: intervals must lie inside I");

  const auto& proto = f_list.front();
  const int res = proto.resolution_log2();
  const int d = proto.space().dimension;
  for (const auto& f : f_list)
    if (f.resolution_log2() != res || !(f.space() == proto.space()) ||
        !f.domain().contains(I))
      throw PreconditionError("stein_averaging_check: f_J must live on a common grid over I");

  std::vector<std::vector<double>> averages;
  averages.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    averages.push_back(average(f_list[i], Interval::from_dyadic(j_list[i])));

  const std::int64_t a = I.left_ticks(res);
  const std::int64_t b = I.right_ticks(res);
  std::vector<double> buf_lhs, buf_rhs;
  detail::CompensatedSum acc_lhs, acc_rhs;
  const double step = std::ldexp(1.0, -res);
  for (std::int64_t t = a; t < b; ++t) {
    // Active prefix of the chain: those J containing this cell.
    int active = 0;
    while (active < n) {
      const auto jt = Interval::from_dyadic(j_list[active]);
      const std::int64_t jl = jt.left_ticks(res), jr = jt.right_ticks(res);
      if (t >= jl && t < jr)
        ++active;
      else
        break;
    }
    if (active == 0) continue;
    buf_lhs.assign(static_cast<std::size_t>(active) * d, 0.0);
    buf_rhs.assign(static_cast<std::size_t>(active) * d, 0.0);
    for (int i = 0; i < active; ++i) {
      const auto base_f = f_list[i].domain().left_ticks(res);
      const auto c = f_list[i].cell(t - base_f);
      for (int k = 0; k < d; ++k) {
        buf_lhs[static_cast<std::size_t>(i) * d + k] = averages[i][k];
        buf_rhs[static_cast<std::size_t>(i) * d + k] = c[k];
      }
    }
    if (active <= opts.exact_threshold) {
      acc_lhs.add(rademacher_expectation_p(buf_lhs, active, proto.space(), p));
      acc_rhs.add(rademacher_expectation_p(buf_rhs, active, proto.space(), p));
    } else {
      const std::uint64_t cell_seed = hash_combine(opts.seed, static_cast<std::uint64_t>(t));
      acc_lhs.add(rademacher_expectation_p_mc(buf_lhs, active, proto.space(), p,
                                              opts.mc_samples, cell_seed, nullptr));
      acc_rhs.add(rademacher_expectation_p_mc(buf_rhs, active, proto.space(), p,
                                              opts.mc_samples, cell_seed, nullptr));
    }
  }
  SteinResult out;
  out.lhs = std::pow(acc_lhs.value() * step, 1.0 / p);
  out.rhs = std::pow(acc_rhs.value() * step, 1.0 / p);
  out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
  return out;
}

}  // namespace bmolab
