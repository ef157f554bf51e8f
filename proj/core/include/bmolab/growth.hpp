#ifndef BMOLAB_GROWTH_HPP
#define BMOLAB_GROWTH_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bmolab/errors.hpp"

namespace bmolab {

/// Positive non-decreasing growth function rho on (0, inf), with a declared
/// upper-type exponent alpha (rho(ut) <= C u^alpha rho(t) for u > 1).
/// Positivity and monotonicity are probed on a log-spaced grid at construction.
class GrowthModel {
 public:
  static GrowthModel constant(double c = 1.0);
  static GrowthModel power(double alpha);  ///< rho(t) = t^alpha, alpha >= 0
  /// rho(t) = t^alpha * (1 + log(1 + t))^beta, alpha, beta >= 0.
  static GrowthModel log_power(double alpha, double beta);
  /// Arbitrary rule with a caller-declared upper type; probed for validity.
  static GrowthModel custom(std::string kind, std::function<double(double)> eval,
                            double declared_upper_type);

  double operator()(double t) const { return eval_(t); }
  const std::string& kind() const { return kind_; }
  double declared_upper_type() const { return upper_type_; }

  // Closed-form parameters when available (constant / power kinds).
  double param_alpha() const { return alpha_; }
  double param_beta() const { return beta_; }
  double param_c() const { return c_; }

 private:
  GrowthModel(std::string kind, std::function<double(double)> eval, double upper_type,
              double alpha, double beta, double c);
  void validate() const;

  std::string kind_;
  std::function<double(double)> eval_;
  double upper_type_;
  double alpha_ = 0.0, beta_ = 0.0, c_ = 1.0;
};

struct GrowthCheck {
  bool pass = false;
  double constant = 0.0;  ///< worst ratio observed over the probes
};

/// Worst rho(ut) / (u^alpha rho(t)) over probe pairs (t, u), u > 1.
GrowthCheck upper_type_check(const GrowthModel& g, double alpha,
                             std::span<const std::pair<double, double>> probes,
                             double bound = 64.0);

/// Doubling constant: worst rho(2t)/rho(t) over probes.
GrowthCheck doubling_check(const GrowthModel& g, std::span<const double> probes,
                           double bound = 64.0);

std::vector<double> log_spaced_probes(double t_min, double t_max, int count);

/// eta(t) = t^{2-q} \int_t^inf rho(s) s^{q-3} ds, for q in (1,2).
/// Closed form for constant/power rho; otherwise log-substituted composite
/// Simpson with an analytic tail bound from the declared upper type.
class EtaTransform {
 public:
  EtaTransform(GrowthModel source, double q);

  double operator()(double t) const;
  /// Truncated transform t^{2-q} \int_t^{S} rho(s) s^{q-3} ds (quadrature).
  double truncated(double t, double s_max) const;

  const GrowthModel& source() const { return source_; }
  double q() const { return q_; }

  /// eta packaged as a growth model, for use on the output side of the norms.
  GrowthModel as_growth_model() const;

 private:
  double quadrature(double t) const;

  GrowthModel source_;
  double q_;
  bool closed_form_;
  double y_max_;  // quadrature upper limit in y = log(s/t)
  std::shared_ptr<std::mutex> memo_mutex_;
  std::shared_ptr<std::map<double, double>> memo_;
};

/// Independent finite quadratures of the two displayed forms of eta; used to
/// validate the change of variables s = t u.
double eta_integral_s_form(const GrowthModel& rho, double q, double t, double s_max);
double eta_integral_u_form(const GrowthModel& rho, double q, double t, double u_max);

}  // namespace bmolab

#endif
