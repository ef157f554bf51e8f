#include "bmolab/wavelets.hpp"

#include <algorithm>
#include <cmath>

#include "bmolab/rng.hpp"

namespace bmolab {

namespace {

// Minimum-phase Daubechies scaling filters, sum = sqrt(2).  Indexed by
// vanishing-moment order; order k has 2k taps and support [0, 2k-1].
const std::vector<double>& daubechies_filter(int order) {
  static const std::vector<double> db3 = {
      3.32670552950082687e-01,  8.06891509311092769e-01,  4.59877502118491543e-01,
      -1.35011020010254612e-01, -8.54412738820267137e-02, 3.52262918857095403e-02};
  static const std::vector<double> db4 = {
      2.30377813308896340e-01,  7.14846570552915339e-01,  6.30880767929858921e-01,
      -2.79837694168595247e-02, -1.87034811719092919e-01, 3.08413818355606113e-02,
      3.28830116668851549e-02,  -1.05974017850690144e-02};
  static const std::vector<double> db5 = {
      1.60102397974193011e-01,  6.03829269797189871e-01,  7.24308528437773380e-01,
      1.38428145901320604e-01,  -2.42294887066382331e-01, -3.22448695846384997e-02,
      7.75714938400457188e-02,  -6.24149021279826570e-03, -1.25807519990820058e-02,
      3.33572528547377558e-03};
  static const std::vector<double> db6 = {
      1.11540743350109439e-01,  4.94623890398452948e-01,  7.51133908021095142e-01,
      3.15250351709198184e-01,  -2.26264693965439662e-01, -1.29766867567261801e-01,
      9.75016055873229731e-02,  2.75228655303056992e-02,  -3.15820393174860159e-02,
      5.53842201161496451e-04,  4.77725751094550902e-03,  -1.07730108530847959e-03};
  switch (order) {
    case 3: return db3;
    case 4: return db4;
    case 5: return db5;
    case 6: return db6;
    default:
      throw DomainError("daubechies: vanishing-moment order must be 3..6");
  }
}

}  // namespace

void WaveletModel::finalize(bool normalize) {
  if (normalize) {
    const double width = std::ldexp(1.0, -guard_resolution_log2_);
    double mean = 0.0;
    for (double v : cells_) mean += v;
    mean /= static_cast<double>(cells_.size());
    for (double& v : cells_) v -= mean;
    double nrm2 = 0.0;
    for (double v : cells_) nrm2 += v * v;
    nrm2 *= width;
    if (!(nrm2 > 0.0)) throw DomainError("WaveletModel: degenerate mother samples");
    const double inv = 1.0 / std::sqrt(nrm2);
    for (double& v : cells_) v *= inv;
  }
  prefix_.assign(cells_.size() + 1, 0.0);
  for (std::size_t i = 0; i < cells_.size(); ++i) prefix_[i + 1] = prefix_[i] + cells_[i];
}

WaveletModel WaveletModel::haar(int working_resolution_log2, int guard_refinement) {
  if (guard_refinement < 0) throw DomainError("WaveletModel: guard refinement must be >= 0");
  WaveletModel m;
  m.kind_ = "haar";
  m.vanishing_moments_ = 1;
  m.guard_refinement_ = guard_refinement;
  m.guard_resolution_log2_ = working_resolution_log2 + guard_refinement;
  m.support_length_ = 1;
  m.theorem_ok_ = false;
  const std::size_t n = std::size_t{1} << m.guard_resolution_log2_;
  m.cells_.assign(n, 1.0);
  for (std::size_t i = n / 2; i < n; ++i) m.cells_[i] = -1.0;
  m.finalize(true);  // exact no-op for Haar
  return m;
}

WaveletModel WaveletModel::daubechies(int order, int working_resolution_log2,
                                      int guard_refinement) {
  if (guard_refinement < 3)
    throw DomainError("WaveletModel: Daubechies needs guard refinement >= 3");
  const auto& h = daubechies_filter(order);
  const int taps = static_cast<int>(h.size());
  const int support = taps - 1;

  WaveletModel m;
  m.kind_ = "daubechies";
  m.vanishing_moments_ = order;
  m.guard_refinement_ = guard_refinement;
  m.guard_resolution_log2_ = working_resolution_log2 + guard_refinement;
  m.support_length_ = support;
  m.theorem_ok_ = true;

  const int R = m.guard_resolution_log2_;
  const std::int64_t pts = (static_cast<std::int64_t>(support) << R) + 1;
  const std::int64_t unit = std::int64_t{1} << R;
  const double sqrt2 = std::sqrt(2.0);

  // Cascade fixed point phi(x) = sqrt(2) sum_n h_n phi(2x - n) on guard grid
  // points, started from the unit box.
  std::vector<double> phi(pts, 0.0), next(pts, 0.0);
  for (std::int64_t i = 0; i < unit; ++i) phi[i] = 1.0;
  const int iterations = working_resolution_log2 + guard_refinement + 4;
  for (int it = 0; it < iterations; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::int64_t i = 0; i < pts; ++i) {
      double acc = 0.0;
      const std::int64_t two_i = 2 * i;
      for (int n = 0; n < taps; ++n) {
        const std::int64_t arg = two_i - (static_cast<std::int64_t>(n) << R);
        if (arg >= 0 && arg < pts) acc += h[n] * phi[arg];
      }
      next[i] = sqrt2 * acc;
    }
    phi.swap(next);
  }

  // psi(x) = sqrt(2) sum_n g_n phi(2x - n),  g_n = (-1)^n h_{taps-1-n}.
  std::vector<double> psi(pts, 0.0);
  for (std::int64_t i = 0; i < pts; ++i) {
    double acc = 0.0;
    const std::int64_t two_i = 2 * i;
    for (int n = 0; n < taps; ++n) {
      const double g = ((n % 2) ? -1.0 : 1.0) * h[taps - 1 - n];
      const std::int64_t arg = two_i - (static_cast<std::int64_t>(n) << R);
      if (arg >= 0 && arg < pts) acc += g * phi[arg];
    }
    psi[i] = sqrt2 * acc;
  }

  // Trapezoid per guard cell: cell value = exact average of the linear
  // interpolant, so integrals of the stored model match the interpolant.
  m.cells_.resize(static_cast<std::size_t>(pts - 1));
  for (std::int64_t i = 0; i + 1 < pts; ++i)
    m.cells_[static_cast<std::size_t>(i)] = 0.5 * (psi[i] + psi[i + 1]);

  m.finalize(true);
  return m;
}

WaveletModel WaveletModel::from_cells(std::vector<double> cells, int working_resolution_log2,
                                      int guard_refinement, bool normalize) {
  WaveletModel m;
  m.kind_ = "sampled";
  m.guard_refinement_ = guard_refinement;
  m.guard_resolution_log2_ = working_resolution_log2 + guard_refinement;
  const std::int64_t unit = std::int64_t{1} << m.guard_resolution_log2_;
  if (cells.empty() || static_cast<std::int64_t>(cells.size()) % unit != 0)
    throw DomainError("WaveletModel: sampled cells must span whole unit intervals");
  m.support_length_ = static_cast<int>(static_cast<std::int64_t>(cells.size()) / unit);
  m.cells_ = std::move(cells);
  m.finalize(normalize);
  return m;
}

double WaveletModel::evaluate(double y) const {
  if (y < 0.0 || y >= static_cast<double>(support_length_)) return 0.0;
  const auto idx = static_cast<std::size_t>(std::floor(std::ldexp(y, guard_resolution_log2_)));
  return idx < cells_.size() ? cells_[idx] : 0.0;
}

double WaveletModel::dilated_value(const DyadicInterval& J, double x) const {
  const double y = std::ldexp(x, -J.scale) - static_cast<double>(J.position);
  return std::pow(2.0, -0.5 * J.scale) * evaluate(y);
}

double WaveletModel::dilated_cell_average(const DyadicInterval& J, int resolution_log2,
                                          std::int64_t tick) const {
  // x-cell [tick, tick+1) * 2^-res maps to the y-interval of width 2^-(res+j)
  // starting at y0 = tick * 2^-(res+j) - k.
  const int rj = resolution_log2 + J.scale;
  if (rj < 0)
    throw ResolutionError("wavelet dilation: |J| below the working resolution");
  const int R = guard_resolution_log2_;
  const double amp = std::pow(2.0, -0.5 * J.scale);
  const std::int64_t total = static_cast<std::int64_t>(cells_.size());
  const int S = R - rj;  // guard cells per x-cell (log2)
  if (S >= 0) {
    // Whole guard cells: exact prefix-sum average.
    std::int64_t y0 = (tick - (J.position << rj)) << S;
    std::int64_t y1 = y0 + (std::int64_t{1} << S);
    const std::int64_t g0 = std::clamp<std::int64_t>(y0, 0, total);
    const std::int64_t g1 = std::clamp<std::int64_t>(y1, 0, total);
    if (g0 >= g1) return 0.0;
    return amp * (prefix_[g1] - prefix_[g0]) / static_cast<double>(std::int64_t{1} << S);
  }
  // x-cell nested inside a single guard cell.
  const std::int64_t idx = (tick - (J.position << rj)) >> (-S);
  if (idx < 0 || idx >= total) return 0.0;
  return amp * cells_[static_cast<std::size_t>(idx)];
}

std::pair<std::int64_t, std::int64_t> WaveletModel::dilated_support_ticks(
    const DyadicInterval& J, int resolution_log2) const {
  const int rj = resolution_log2 + J.scale;
  if (rj < 0)
    throw ResolutionError("wavelet dilation: |J| below the working resolution");
  const std::int64_t lo = J.position << rj;
  const std::int64_t hi = (J.position + support_length_) << rj;
  return {lo, hi};
}

GridFunction dilate_translate(const WaveletModel& psi, const DyadicInterval& J,
                              const Interval& window, int resolution_log2) {
  auto out = GridFunction::zero(window, resolution_log2, VectorSpaceDescriptor{1, 2.0});
  const std::int64_t base = window.left_ticks(resolution_log2);
  const std::int64_t end = window.right_ticks(resolution_log2);
  auto [lo, hi] = psi.dilated_support_ticks(J, resolution_log2);
  lo = std::max(lo, base);
  hi = std::min(hi, end);
  if (lo >= hi) return out;
  std::vector<double> samples(out.data().begin(), out.data().end());
  for (std::int64_t t = lo; t < hi; ++t)
    samples[static_cast<std::size_t>(t - base)] = psi.dilated_cell_average(J, resolution_log2, t);
  return GridFunction(window, resolution_log2, VectorSpaceDescriptor{1, 2.0},
                      std::move(samples));
}

std::vector<double> coefficient(const WaveletModel& psi, const DyadicInterval& J,
                                const GridFunction& f) {
  const int res = f.resolution_log2();
  const std::int64_t base = f.domain().left_ticks(res);
  const std::int64_t end = f.domain().right_ticks(res);
  auto [lo, hi] = psi.dilated_support_ticks(J, res);
  lo = std::max(lo, base);
  hi = std::min(hi, end);
  const int d = f.space().dimension;
  std::vector<detail::CompensatedSum> acc(d);
  for (std::int64_t t = lo; t < hi; ++t) {
    const double w = psi.dilated_cell_average(J, res, t);
    if (w == 0.0) continue;
    const auto c = f.cell(t - base);
    for (int k = 0; k < d; ++k) acc[k].add(w * c[k]);
  }
  std::vector<double> out(d);
  const double step = f.step();
  for (int k = 0; k < d; ++k) out[k] = acc[k].value() * step;
  return out;
}

CoefficientArray wavelet_coefficients(const WaveletModel& psi, const GridFunction& f,
                                      std::span<const DyadicInterval> candidates) {
  CoefficientArray a(f.space(), "from-wavelet");
  for (const auto& J : candidates) a.set(J, coefficient(psi, J, f));
  return a;
}

PsiClassReport psi_class_check(const WaveletModel& phi, double u, double v, double bound) {
  PsiClassReport rep;
  const double width = std::ldexp(1.0, -phi.guard_resolution_log2());
  const auto cells = phi.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const double y = (static_cast<double>(i) + 0.5) * width;
    rep.decay_constant =
        std::max(rep.decay_constant, std::abs(cells[i]) * std::pow(1.0 + y, u));
    if (i + 1 < cells.size()) {
      const double diff = std::abs(cells[i + 1] - cells[i]) / width;
      rep.derivative_constant =
          std::max(rep.derivative_constant, diff * std::pow(1.0 + y, v));
    }
  }
  rep.pass = std::isfinite(rep.decay_constant) && std::isfinite(rep.derivative_constant) &&
             std::max(rep.decay_constant, rep.derivative_constant) <= bound;
  return rep;
}

namespace {

// Exact pairing of psi_A and psi_B against the cell models: evaluate both on
// the common refinement (x-cells no coarser than either model's cells).
double wavelet_pairing(const WaveletModel& psi, const DyadicInterval& A,
                       const DyadicInterval& B) {
  const int res = psi.guard_resolution_log2() - std::min(A.scale, B.scale);
  auto [alo, ahi] = psi.dilated_support_ticks(A, res);
  auto [blo, bhi] = psi.dilated_support_ticks(B, res);
  const std::int64_t lo = std::max(alo, blo);
  const std::int64_t hi = std::min(ahi, bhi);
  if (lo >= hi) return 0.0;
  detail::CompensatedSum acc;
  for (std::int64_t t = lo; t < hi; ++t)
    acc.add(psi.dilated_cell_average(A, res, t) * psi.dilated_cell_average(B, res, t));
  return acc.value() * std::ldexp(1.0, -res);
}

}  // namespace

double orthonormality_residual(const WaveletModel& psi,
                               std::span<const DyadicInterval> family) {
  double worst = 0.0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i; j < family.size(); ++j) {
      const double gram = wavelet_pairing(psi, family[i], family[j]);
      const double target = (i == j) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(gram - target));
    }
  }
  return worst;
}

double KernelCoefficients::operator()(int j, std::int64_t k) const {
  switch (rule) {
    case Rule::zeros:
      return 0.0;
    case Rule::single:
      return (j == single_j && k == single_k) ? single_value : 0.0;
    case Rule::random_signs: {
      const std::uint64_t h = hash_combine(hash_combine(seed, static_cast<std::uint64_t>(
                                                                  static_cast<std::int64_t>(j))),
                                           static_cast<std::uint64_t>(k));
      return (h & 1) ? 1.0 : -1.0;
    }
  }
  return 0.0;
}

double kernel_eval(const KernelSpec& ks, double x, double y) {
  if (!ks.phi || !ks.psi) throw PreconditionError("kernel_eval: missing wavelet models");
  if (std::abs(ks.coefficients.single_value) > 1.0)
    throw PreconditionError("kernel_eval: |a_jk| must be <= 1");
  detail::CompensatedSum acc;
  for (int j = ks.j_min; j <= ks.j_max; ++j) {
    const double scale = std::ldexp(1.0, j);
    const double xj = std::ldexp(x, j);
    const double yj = std::ldexp(y, j);
    // k with both factors on-support.
    const double klo =
        std::max(xj - ks.phi->support_length(), yj - ks.psi->support_length());
    const double khi = std::min(xj, yj);
    const auto k0 = static_cast<std::int64_t>(std::ceil(klo));
    const auto k1 = static_cast<std::int64_t>(std::floor(khi));
    for (std::int64_t k = k0; k <= k1; ++k) {
      const double a = ks.coefficients(j, k);
      if (a == 0.0) continue;
      const double term = ks.phi->evaluate(xj - static_cast<double>(k)) *
                          ks.psi->evaluate(yj - static_cast<double>(k));
      if (term != 0.0) acc.add(a * scale * term);
    }
  }
  return acc.value();
}

KernelCheckReport kernel_size_check(const KernelSpec& ks,
                                    std::span<const std::pair<double, double>> pairs,
                                    double bound) {
  KernelCheckReport rep;
  for (const auto& [x, y] : pairs) {
    if (x == y) throw DomainError("kernel_size_check: coincident pair");
    rep.worst_constant =
        std::max(rep.worst_constant, std::abs(kernel_eval(ks, x, y)) * std::abs(x - y));
  }
  rep.pass = rep.worst_constant <= bound;
  return rep;
}

}  // namespace bmolab
