#include "bmolab/growth.hpp"

#include <cmath>

namespace bmolab {

namespace {

// Composite Simpson on [a, b] with n (even) panels.
double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Refine until the Simpson value stabilizes to rel_tol (or panel cap).
double simpson_adaptive(const std::function<double(double)>& f, double a, double b,
                        double rel_tol) {
  int n = 64;
  double prev = simpson(f, a, b, n);
  for (n *= 2; n <= (1 << 20); n *= 2) {
    const double cur = simpson(f, a, b, n);
    if (std::abs(cur - prev) <= rel_tol * std::max(1e-300, std::abs(cur))) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace

GrowthModel::GrowthModel(std::string kind, std::function<double(double)> eval,
                         double upper_type, double alpha, double beta, double c)
    : kind_(std::move(kind)),
      eval_(std::move(eval)),
      upper_type_(upper_type),
      alpha_(alpha),
      beta_(beta),
      c_(c) {
  validate();
}

void GrowthModel::validate() const {
  // Desk-scale probe range: wide enough to catch bad rules, narrow enough
  // that admissible fast-growing rules (e^t in diagnostics) stay finite.
  double prev = 0.0;
  bool first = true;
  for (double t : log_spaced_probes(1e-6, 1e2, 33)) {
    const double v = eval_(t);
    if (!(v > 0.0) || !std::isfinite(v))
      throw DomainError("GrowthModel: rho must be positive and finite (probe t=" +
                        std::to_string(t) + ")");
    if (!first && v < prev * (1.0 - 1e-12))
      throw DomainError("GrowthModel: rho must be non-decreasing (probe t=" +
                        std::to_string(t) + ")");
    prev = v;
    first = false;
  }
}

GrowthModel GrowthModel::constant(double c) {
  if (!(c > 0.0)) throw DomainError("GrowthModel::constant: c must be positive");
  return GrowthModel("constant", [c](double) { return c; }, 0.0, 0.0, 0.0, c);
}

GrowthModel GrowthModel::power(double alpha) {
  if (alpha < 0.0) throw DomainError("GrowthModel::power: alpha must be >= 0");
  return GrowthModel("power", [alpha](double t) { return std::pow(t, alpha); }, alpha, alpha,
                     0.0, 1.0);
}

GrowthModel GrowthModel::log_power(double alpha, double beta) {
  if (alpha < 0.0 || beta < 0.0)
    throw DomainError("GrowthModel::log_power: exponents must be >= 0");
  auto eval = [alpha, beta](double t) {
    return std::pow(t, alpha) * std::pow(1.0 + std::log1p(t), beta);
  };
  // Any alpha' > alpha is an upper type for the log factor; declare a small surplus.
  return GrowthModel("log-power", eval, alpha + 0.05, alpha, beta, 1.0);
}

GrowthModel GrowthModel::custom(std::string kind, std::function<double(double)> eval,
                                double declared_upper_type) {
  return GrowthModel(std::move(kind), std::move(eval), declared_upper_type, 0.0, 0.0, 1.0);
}

GrowthCheck upper_type_check(const GrowthModel& g, double alpha,
                             std::span<const std::pair<double, double>> probes,
                             double bound) {
  GrowthCheck out;
  for (const auto& [t, u] : probes) {
    if (!(t > 0.0) || !(u > 1.0))
      throw PreconditionError("upper_type_check: probes need t > 0, u > 1");
    const double ratio = g(u * t) / (std::pow(u, alpha) * g(t));
    if (ratio > out.constant) out.constant = ratio;
  }
  out.pass = std::isfinite(out.constant) && out.constant <= bound;
  return out;
}

GrowthCheck doubling_check(const GrowthModel& g, std::span<const double> probes,
                           double bound) {
  GrowthCheck out;
  for (double t : probes) {
    if (!(t > 0.0)) throw PreconditionError("doubling_check: probes need t > 0");
    const double ratio = g(2.0 * t) / g(t);
    if (ratio > out.constant) out.constant = ratio;
  }
  out.pass = std::isfinite(out.constant) && out.constant <= bound;
  return out;
}

std::vector<double> log_spaced_probes(double t_min, double t_max, int count) {
  if (!(t_min > 0.0) || !(t_max > t_min) || count < 2)
    throw DomainError("log_spaced_probes: need 0 < t_min < t_max and count >= 2");
  std::vector<double> out;
  out.reserve(count);
  const double l0 = std::log(t_min), l1 = std::log(t_max);
  for (int i = 0; i < count; ++i)
    out.push_back(std::exp(l0 + (l1 - l0) * i / (count - 1)));
  return out;
}

EtaTransform::EtaTransform(GrowthModel source, double q)
    : source_(std::move(source)),
      q_(q),
      memo_mutex_(std::make_shared<std::mutex>()),
      memo_(std::make_shared<std::map<double, double>>()) {
  if (!(q > 1.0) || !(q < 2.0)) throw DomainError("EtaTransform: q must lie in (1,2)");
  const double gap = 2.0 - q_ - source_.declared_upper_type();
  if (gap <= 0.0)
    throw DivergenceError("EtaTransform: declared upper type >= 2-q, tail integral diverges");
  closed_form_ = source_.kind() == "constant" || source_.kind() == "power";
  // Tail beyond y_max contributes at most ~ C rho(t) e^{-gap y} / gap; push it
  // below 1e-10 relative (C absorbed by a fixed 64x safety factor).
  y_max_ = std::log(64.0 / (gap * 1e-10)) / gap;
}

double EtaTransform::operator()(double t) const {
  if (!(t > 0.0)) throw DomainError("eta: t must be positive");
  if (closed_form_) {
    if (source_.kind() == "constant") return source_.param_c() / (2.0 - q_);
    const double alpha = source_.param_alpha();
    return std::pow(t, alpha) / (2.0 - q_ - alpha);
  }
  {
    std::lock_guard<std::mutex> lock(*memo_mutex_);
    const auto it = memo_->find(t);
    if (it != memo_->end()) return it->second;
  }
  const double v = quadrature(t);
  {
    std::lock_guard<std::mutex> lock(*memo_mutex_);
    memo_->emplace(t, v);
  }
  return v;
}

double EtaTransform::quadrature(double t) const {
  // Substitute s = t e^y:  eta(t) = \int_0^inf rho(t e^y) e^{-(2-q) y} dy.
  const auto integrand = [&](double y) {
    return source_(t * std::exp(y)) * std::exp(-(2.0 - q_) * y);
  };
  return simpson_adaptive(integrand, 0.0, y_max_, 1e-10);
}

double EtaTransform::truncated(double t, double s_max) const {
  if (!(t > 0.0) || !(s_max > t))
    throw DomainError("eta truncated: need 0 < t < s_max");
  const double y_max = std::log(s_max / t);
  const auto integrand = [&](double y) {
    return source_(t * std::exp(y)) * std::exp(-(2.0 - q_) * y);
  };
  return simpson_adaptive(integrand, 0.0, y_max, 1e-10);
}

GrowthModel EtaTransform::as_growth_model() const {
  EtaTransform copy = *this;
  return GrowthModel::custom("eta(" + source_.kind() + ")",
                             [copy](double t) { return copy(t); },
                             source_.declared_upper_type());
}

double eta_integral_s_form(const GrowthModel& rho, double q, double t, double s_max) {
  if (!(t > 0.0) || !(s_max > t)) throw DomainError("eta_integral_s_form: need 0 < t < s_max");
  const auto integrand = [&](double s) { return rho(s) * std::pow(s, q - 3.0); };
  return std::pow(t, 2.0 - q) * simpson_adaptive(integrand, t, s_max, 1e-11);
}

double eta_integral_u_form(const GrowthModel& rho, double q, double t, double u_max) {
  if (!(t > 0.0) || !(u_max > 1.0))
    throw DomainError("eta_integral_u_form: need t > 0, u_max > 1");
  const auto integrand = [&](double u) { return rho(t * u) * std::pow(u, q - 3.0); };
  return simpson_adaptive(integrand, 1.0, u_max, 1e-11);
}

}  // namespace bmolab
