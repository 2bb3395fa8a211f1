#include "selab/family.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace selab {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;
}

double ParametricFamily::log_likelihood(const VectorXd& theta,
                                        std::span<const double> sample) const {
  double total = 0.0;
  for (double y : sample) total += log_density(theta, y);
  return total;
}

void ParametricFamily::require_admissible(const VectorXd& theta) const {
  if (theta.size() != dim() || !admissible(theta)) {
    throw std::domain_error(name() + ": inadmissible parameter");
  }
}

double sample_mean(std::span<const double> y) {
  if (y.empty()) throw std::invalid_argument("sample_mean: empty sample");
  return std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
}

double sample_var_mle(std::span<const double> y) {
  const double m = sample_mean(y);
  double ss = 0.0;
  for (double v : y) ss += (v - m) * (v - m);
  return ss / static_cast<double>(y.size());
}

// ---------------------------------------------------------------------------
// ExponentialRate

bool ExponentialRate::admissible(const VectorXd& theta) const {
  return theta.size() == 1 && theta[0] > 0.0 && std::isfinite(theta[0]);
}

double ExponentialRate::log_density(const VectorXd& theta, double y) const {
  if (y <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(theta[0]) - theta[0] * y;
}

VectorXd ExponentialRate::score(const VectorXd& theta, double y) const {
  VectorXd s(1);
  s[0] = 1.0 / theta[0] - y;
  return s;
}

MatrixXd ExponentialRate::fisher_info(const VectorXd& theta) const {
  MatrixXd info(1, 1);
  info(0, 0) = 1.0 / (theta[0] * theta[0]);
  return info;
}

VectorXd ExponentialRate::mle(std::span<const double> sample) const {
  VectorXd est(1);
  est[0] = 1.0 / sample_mean(sample);
  return est;
}

void ExponentialRate::sample(const VectorXd& theta, int n, RngStream& rng,
                             std::vector<double>& out) const {
  require_admissible(theta);
  out.resize(static_cast<std::size_t>(n));
  for (auto& y : out) y = rng.exponential(theta[0]);
}

// ---------------------------------------------------------------------------
// GaussianMeanVar

bool GaussianMeanVar::admissible(const VectorXd& theta) const {
  return theta.size() == 2 && theta[1] > 0.0 && std::isfinite(theta[0]) &&
         std::isfinite(theta[1]);
}

double GaussianMeanVar::log_density(const VectorXd& theta, double y) const {
  const double d = y - theta[0];
  return -0.5 * (kLog2Pi + std::log(theta[1])) - 0.5 * d * d / theta[1];
}

VectorXd GaussianMeanVar::score(const VectorXd& theta, double y) const {
  const double d = y - theta[0];
  const double v = theta[1];
  VectorXd s(2);
  s[0] = d / v;
  s[1] = -0.5 / v + 0.5 * d * d / (v * v);
  return s;
}

MatrixXd GaussianMeanVar::fisher_info(const VectorXd& theta) const {
  const double v = theta[1];
  MatrixXd info = MatrixXd::Zero(2, 2);
  info(0, 0) = 1.0 / v;
  info(1, 1) = 0.5 / (v * v);
  return info;
}

VectorXd GaussianMeanVar::mle(std::span<const double> sample) const {
  VectorXd est(2);
  est[0] = sample_mean(sample);
  est[1] = sample_var_mle(sample);
  return est;
}

void GaussianMeanVar::sample(const VectorXd& theta, int n, RngStream& rng,
                             std::vector<double>& out) const {
  require_admissible(theta);
  const double sd = std::sqrt(theta[1]);
  out.resize(static_cast<std::size_t>(n));
  for (auto& y : out) y = theta[0] + sd * rng.normal();
}

}  // namespace selab
