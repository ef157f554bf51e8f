#include "bmolab/grid.hpp"

#include <atomic>
#include <mutex>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace bmolab {

double VectorSpaceDescriptor::norm(std::span<const double> v) const {
  if (dimension == 1) return std::abs(v[0]);
  if (exponent == 2.0) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  }
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), exponent);
  return std::pow(s, 1.0 / exponent);
}

GridFunction::GridFunction(Interval domain, int resolution_log2, VectorSpaceDescriptor space,
                           std::vector<double> samples)
    : domain_(domain),
      resolution_log2_(resolution_log2),
      step_(std::ldexp(1.0, -resolution_log2)),
      space_(space),
      samples_(std::move(samples)) {
  if (space_.dimension < 1) throw DomainError("GridFunction: dimension must be positive");
  if (!(space_.exponent > 1.0) || !std::isfinite(space_.exponent))
    throw DomainError("GridFunction: norm exponent must lie in (1, inf)");
  if (!domain_.aligned_to(resolution_log2_))
    throw DomainError("GridFunction: domain not aligned to the resolution");
  cells_ = domain_.right_ticks(resolution_log2_) - domain_.left_ticks(resolution_log2_);
  if (static_cast<std::int64_t>(samples_.size()) != cells_ * space_.dimension)
    throw DomainError("GridFunction: sample count must equal cells * dimension");
}

GridFunction GridFunction::zero(const Interval& domain, int resolution_log2,
                                const VectorSpaceDescriptor& space) {
  const std::int64_t n =
      (domain.right_ticks(resolution_log2) - domain.left_ticks(resolution_log2)) *
      space.dimension;
  return GridFunction(domain, resolution_log2, space, std::vector<double>(n, 0.0));
}

GridFunction GridFunction::constant(const Interval& domain, int resolution_log2,
                                    const VectorSpaceDescriptor& space,
                                    std::span<const double> value) {
  if (static_cast<int>(value.size()) != space.dimension)
    throw DomainError("GridFunction::constant: value dimension mismatch");
  const std::int64_t cells =
      domain.right_ticks(resolution_log2) - domain.left_ticks(resolution_log2);
  std::vector<double> s;
  s.reserve(cells * space.dimension);
  for (std::int64_t i = 0; i < cells; ++i)
    for (double v : value) s.push_back(v);
  return GridFunction(domain, resolution_log2, space, std::move(s));
}

GridFunction GridFunction::sample(const Interval& domain, int resolution_log2,
                                  const VectorSpaceDescriptor& space,
                                  const std::function<void(double, std::span<double>)>& f) {
  const std::int64_t cells =
      domain.right_ticks(resolution_log2) - domain.left_ticks(resolution_log2);
  const double step = std::ldexp(1.0, -resolution_log2);
  const double left = domain.left();
  std::vector<double> s(cells * space.dimension);
  for (std::int64_t i = 0; i < cells; ++i) {
    const double x = left + (static_cast<double>(i) + 0.5) * step;
    f(x, {s.data() + i * space.dimension, static_cast<std::size_t>(space.dimension)});
  }
  return GridFunction(domain, resolution_log2, space, std::move(s));
}

GridFunction GridFunction::sample_scalar(const Interval& domain, int resolution_log2,
                                         const std::function<double(double)>& f) {
  return sample(domain, resolution_log2, VectorSpaceDescriptor{1, 2.0},
                [&](double x, std::span<double> out) { out[0] = f(x); });
}

double GridFunction::cell_midpoint(std::int64_t i) const {
  return domain_.left() + (static_cast<double>(i) + 0.5) * step_;
}

std::pair<std::int64_t, std::int64_t> GridFunction::cell_range(const Interval& I) const {
  if (!I.aligned_to(resolution_log2_))
    throw DomainError("interval not aligned to the working grid");
  if (!domain_.contains(I)) throw DomainError("interval escapes the function domain");
  const std::int64_t base = domain_.left_ticks(resolution_log2_);
  return {I.left_ticks(resolution_log2_) - base, I.right_ticks(resolution_log2_) - base};
}

std::vector<double> average(const GridFunction& f, const Interval& I) {
  const auto [a, b] = f.cell_range(I);
  const int d = f.space().dimension;
  std::vector<double> acc(d, 0.0);
  for (std::int64_t i = a; i < b; ++i) {
    const auto c = f.cell(i);
    for (int k = 0; k < d; ++k) acc[k] += c[k];
  }
  const double inv = 1.0 / static_cast<double>(b - a);
  for (double& v : acc) v *= inv;
  return acc;
}

double integrate_norm(const GridFunction& f, const Interval& I, double p,
                      const GridFunction* density) {
  if (p < 1.0) throw DomainError("integrate_norm: power must be >= 1");
  const auto [a, b] = f.cell_range(I);
  std::int64_t ga = 0;
  if (density) {
    if (!density->scalar()) throw DomainError("integrate_norm: density must be scalar");
    if (density->resolution_log2() != f.resolution_log2())
      throw DomainError("integrate_norm: density resolution mismatch");
    ga = density->cell_range(I).first;
  }
  const auto& space = f.space();
  detail::CompensatedSum acc;
  for (std::int64_t i = a; i < b; ++i) {
    double nv = space.norm(f.cell(i));
    double term;
    if (p == 1.0)
      term = nv;
    else if (p == 2.0)
      term = nv * nv;
    else
      term = std::pow(nv, p);
    if (density) {
      const double g = density->scalar_cell(ga + (i - a));
      if (g < 0.0) throw DomainError("integrate_norm: negative density sample");
      term *= g;
    }
    acc.add(term);
  }
  return acc.value() * f.step();
}

namespace detail {

void parallel_for_index(std::int64_t n, const std::function<void(std::int64_t)>& body) {
  if (n <= 0) return;
  unsigned threads = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("BMOLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) threads = static_cast<unsigned>(v);
  }
  if (threads <= 1 || n < 4) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned use = std::min<unsigned>(threads, static_cast<unsigned>(n));
  pool.reserve(use);
  for (unsigned t = 0; t < use; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

}  // namespace bmolab
