#ifndef SELAB_SELECTION_MODEL_HPP
#define SELAB_SELECTION_MODEL_HPP

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "selab/family.hpp"
#include "selab/mechanism.hpp"
#include "selab/quadrature.hpp"
#include "selab/rng.hpp"

namespace selab {

struct SelectionProbability {
  double value = 0.0;
  double std_error = 0.0;
};

enum class ProbMethod { Exact, Quadrature, MonteCarlo };

/// Rejection sampling could not produce an accepted sample.
class SelectionTooRareError : public std::runtime_error {
 public:
  SelectionTooRareError(double rate, long attempts_made)
      : std::runtime_error("sample_conditional: acceptance not achieved; empirical rate " +
                           std::to_string(rate) + " over " +
                           std::to_string(attempts_made) + " attempts"),
        acceptance_rate(rate),
        attempts(attempts_made) {}
  double acceptance_rate;
  long attempts;
};

/// A base family, a selection mechanism and a sample size: evaluates the
/// selection weight p_n(y^n), the selection probability phi_n(theta),
/// draws from the conditional model by rejection, and computes selective
/// log-likelihood ratios.
class SelectionModel {
 public:
  SelectionModel(std::shared_ptr<const ParametricFamily> family,
                 SelectionMechanism mechanism, int n, QuadratureSpec quad = {},
                 std::optional<VectorXd> theta_ref = std::nullopt);

  const ParametricFamily& family() const { return *family_; }
  std::shared_ptr<const ParametricFamily> family_ptr() const { return family_; }
  const SelectionMechanism& mechanism() const { return mech_; }
  int n() const { return n_; }
  const QuadratureSpec& quad() const { return quad_; }
  /// Set when phi_n at the construction-time reference parameter was < 0.01.
  bool low_selection_warning() const { return low_selection_warning_; }

  /// Raw selection statistic (sample mean, carved mean or first-stage t).
  double statistic_value(std::span<const double> y) const;

  /// p_n(y^n) in [0, 1].
  double selection_weight(std::span<const double> y) const;

  SelectionProbability selection_probability(const VectorXd& theta,
                                             ProbMethod method = ProbMethod::Exact,
                                             RngStream* rng = nullptr,
                                             long mc_draws = 100000) const;

  /// log phi_n(theta) through the exact/quadrature route.
  double log_selection_probability(const VectorXd& theta) const;

  /// Draw y^n ~ F_theta given selection. Only the prefix the weight depends
  /// on participates in the accept/reject loop; the remaining observations
  /// are appended unconditionally. attempts_out, when given, receives the
  /// number of proposals consumed.
  std::vector<double> sample_conditional(const VectorXd& theta, RngStream& rng,
                                         long max_attempts = 1000000,
                                         long* attempts_out = nullptr) const;

  /// log f_{theta+h/sqrt(n)}(y|u) - log f_theta(y|u); phi terms via the
  /// exact route.
  double selective_loglik_ratio(const VectorXd& theta, const VectorXd& h,
                                std::span<const double> y) const;

 private:
  double weight_from_prefix(std::span<const double> prefix) const;
  double phi_exact_or_quadrature(const VectorXd& theta, bool force_quadrature) const;

  std::shared_ptr<const ParametricFamily> family_;
  SelectionMechanism mech_;
  int n_;
  QuadratureSpec quad_;
  bool low_selection_warning_ = false;
};

/// First-stage t-statistic with the requested variance divisor.
double subsample_t_statistic(std::span<const double> y, int n1, TStatDivisor divisor);

}  // namespace selab

#endif  // SELAB_SELECTION_MODEL_HPP
