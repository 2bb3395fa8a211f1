#ifndef SELAB_FAMILY_HPP
#define SELAB_FAMILY_HPP

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "selab/rng.hpp"

namespace selab {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Base IID family F_theta on the real line: log-density, score, Fisher
/// information, MLE and sampler. Parameters are p-vectors with p = 1 or 2.
class ParametricFamily {
 public:
  virtual ~ParametricFamily() = default;

  virtual int dim() const = 0;
  virtual std::string name() const = 0;
  virtual bool admissible(const VectorXd& theta) const = 0;
  virtual double log_density(const VectorXd& theta, double y) const = 0;
  virtual VectorXd score(const VectorXd& theta, double y) const = 0;
  virtual MatrixXd fisher_info(const VectorXd& theta) const = 0;
  virtual VectorXd mle(std::span<const double> sample) const = 0;
  virtual void sample(const VectorXd& theta, int n, RngStream& rng,
                      std::vector<double>& out) const = 0;

  double log_likelihood(const VectorXd& theta, std::span<const double> sample) const;
  void require_admissible(const VectorXd& theta) const;
};

/// Exponential distribution with rate theta > 0 (p = 1, I = 1/theta^2).
class ExponentialRate final : public ParametricFamily {
 public:
  int dim() const override { return 1; }
  std::string name() const override { return "exponential_rate"; }
  bool admissible(const VectorXd& theta) const override;
  double log_density(const VectorXd& theta, double y) const override;
  VectorXd score(const VectorXd& theta, double y) const override;
  MatrixXd fisher_info(const VectorXd& theta) const override;
  VectorXd mle(std::span<const double> sample) const override;
  void sample(const VectorXd& theta, int n, RngStream& rng,
              std::vector<double>& out) const override;
};

/// Gaussian with unknown mean and variance, theta = (mu, sigma^2),
/// I = diag(1/sigma^2, 1/(2 sigma^4)).
class GaussianMeanVar final : public ParametricFamily {
 public:
  int dim() const override { return 2; }
  std::string name() const override { return "gaussian_mean_var"; }
  bool admissible(const VectorXd& theta) const override;
  double log_density(const VectorXd& theta, double y) const override;
  VectorXd score(const VectorXd& theta, double y) const override;
  MatrixXd fisher_info(const VectorXd& theta) const override;
  VectorXd mle(std::span<const double> sample) const override;
  void sample(const VectorXd& theta, int n, RngStream& rng,
              std::vector<double>& out) const override;
};

double sample_mean(std::span<const double> y);
/// Variance with the MLE divisor (1/n), not 1/(n-1).
double sample_var_mle(std::span<const double> y);

}  // namespace selab

#endif  // SELAB_FAMILY_HPP
