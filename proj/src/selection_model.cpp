#include "selab/selection_model.hpp"

#include <cmath>
#include <limits>

#include "selab/special.hpp"

namespace selab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double subsample_t_statistic(std::span<const double> y, int n1, TStatDivisor divisor) {
  if (static_cast<int>(y.size()) < n1) {
    throw std::invalid_argument("subsample_t_statistic: sample shorter than n1");
  }
  const auto first = y.first(static_cast<std::size_t>(n1));
  const double mean = sample_mean(first);
  const double v_mle = sample_var_mle(first);
  const double d = divisor == TStatDivisor::Mle ? static_cast<double>(n1)
                                                : static_cast<double>(n1 - 1);
  const double denom2 = v_mle * static_cast<double>(n1) / d / static_cast<double>(n1);
  if (denom2 <= 0.0) {
    return mean > 0.0 ? kInf : (mean < 0.0 ? -kInf : 0.0);
  }
  return mean / std::sqrt(denom2);
}

SelectionModel::SelectionModel(std::shared_ptr<const ParametricFamily> family,
                               SelectionMechanism mechanism, int n,
                               QuadratureSpec quad, std::optional<VectorXd> theta_ref)
    : family_(std::move(family)), mech_(mechanism), n_(n), quad_(quad) {
  if (!family_) throw std::invalid_argument("SelectionModel: null family");
  mech_.validate(n_);
  quad_.validate();
  if (mech_.statistic == SelectionStatistic::SubsampleTStat &&
      family_->name() != "gaussian_mean_var") {
    throw std::domain_error("SelectionModel: subsample t selection requires the Gaussian family");
  }
  if (theta_ref.has_value()) {
    family_->require_admissible(*theta_ref);
    const double phi = phi_exact_or_quadrature(*theta_ref, false);
    low_selection_warning_ = phi < 0.01;
  }
}

double SelectionModel::statistic_value(std::span<const double> y) const {
  if (static_cast<int>(y.size()) != n_) {
    throw std::invalid_argument("SelectionModel: sample has wrong length");
  }
  if (mech_.statistic == SelectionStatistic::SubsampleTStat) {
    return subsample_t_statistic(y, mech_.subsample_size, mech_.t_divisor);
  }
  if (mech_.kind == SelectionKind::Carving) {
    return sample_mean(y.first(static_cast<std::size_t>(mech_.prefix_extent(n_))));
  }
  return sample_mean(y);
}

double SelectionModel::weight_from_prefix(std::span<const double> prefix) const {
  switch (mech_.kind) {
    case SelectionKind::None:
      return 1.0;
    case SelectionKind::Deterministic:
    case SelectionKind::Carving: {
      double stat;
      if (mech_.statistic == SelectionStatistic::SubsampleTStat) {
        stat = subsample_t_statistic(prefix, mech_.subsample_size, mech_.t_divisor);
      } else {
        stat = sample_mean(prefix);
      }
      const bool selected = mech_.direction == Direction::Below
                                ? stat < mech_.threshold
                                : stat > mech_.threshold;
      return selected ? 1.0 : 0.0;
    }
    case SelectionKind::Randomized: {
      const double sqn = std::sqrt(static_cast<double>(n_));
      const double gap = sqn * (mech_.threshold - sample_mean(prefix));
      const double arg = (mech_.direction == Direction::Below ? gap : -gap) / mech_.sigma_w;
      return norm_cdf(arg);
    }
    case SelectionKind::ConditionOnValue: {
      const double sqn = std::sqrt(static_cast<double>(n_));
      const double r = (mech_.observed_value - sqn * sample_mean(prefix)) / mech_.sigma_w;
      return std::exp(-0.5 * r * r);
    }
  }
  throw std::logic_error("SelectionModel: unknown mechanism kind");
}

double SelectionModel::selection_weight(std::span<const double> y) const {
  if (static_cast<int>(y.size()) != n_) {
    throw std::invalid_argument("SelectionModel: sample has wrong length");
  }
  return weight_from_prefix(y.first(static_cast<std::size_t>(mech_.prefix_extent(n_))));
}

namespace {

// phi for the winners mechanism depends on theta only through the
// noncentrality sqrt(n1) * mu / sigma.
double winners_phi_from_delta(double delta, int n1, double threshold,
                              TStatDivisor divisor, Direction direction,
                              const QuadratureSpec& spec) {
  if (std::isinf(threshold)) {
    const bool all = (direction == Direction::Above) == (threshold < 0.0);
    return all ? 1.0 : 0.0;
  }
  const double df = static_cast<double>(n1 - 1);
  const double d = divisor == TStatDivisor::Mle ? static_cast<double>(n1) : df;
  auto integrand = [&](double w) {
    const double arg = threshold * std::sqrt(w / d) - delta;
    const double tail = direction == Direction::Above ? 1.0 - norm_cdf(arg)
                                                      : norm_cdf(arg);
    return std::exp(log_chi2_pdf(w, df)) * tail;
  };
  QuadratureSpec s = spec;
  s.abs_tol = 1e-250;  // keep the stop rule relative; phi can be very small
  s.rel_tol = std::min(spec.rel_tol, 1e-8);
  const double scale = std::sqrt(2.0 * df);
  const double hi = df + s.tail_cut * scale;
  return integrate(integrand, 0.0, hi, s, ScaleHint{df, scale});
}

}  // namespace

double SelectionModel::phi_exact_or_quadrature(const VectorXd& theta,
                                               bool force_quadrature) const {
  family_->require_admissible(theta);
  const std::string fam = family_->name();
  const double sqn = std::sqrt(static_cast<double>(n_));

  if (mech_.kind == SelectionKind::None) return 1.0;

  if (mech_.statistic == SelectionStatistic::SubsampleTStat) {
    const double delta = std::sqrt(static_cast<double>(mech_.subsample_size)) *
                         theta[0] / std::sqrt(theta[1]);
    return winners_phi_from_delta(delta, mech_.subsample_size, mech_.threshold,
                                  mech_.t_divisor, mech_.direction, quad_);
  }

  if (fam == "exponential_rate") {
    const double rate = theta[0];
    const int m = mech_.prefix_extent(n_);  // n, or the carved subsample size
    const double shape = static_cast<double>(m);
    const double mean_rate = shape * rate;  // Ybar over m obs ~ Gamma(m, m*rate)

    if ((mech_.kind == SelectionKind::Deterministic ||
         mech_.kind == SelectionKind::Carving) &&
        !force_quadrature) {
      const double t = mech_.threshold;
      double below;
      if (t <= 0.0) {
        below = 0.0;
      } else if (std::isinf(t)) {
        below = 1.0;
      } else {
        below = reg_gamma_lower(shape, mean_rate * t);
      }
      return mech_.direction == Direction::Below ? below : 1.0 - below;
    }

    // Quadrature over the gamma density of the (sub)sample mean against the
    // mechanism weight.
    auto weight = [&](double s) -> double {
      switch (mech_.kind) {
        case SelectionKind::Deterministic:
        case SelectionKind::Carving: {
          const bool sel = mech_.direction == Direction::Below ? s < mech_.threshold
                                                               : s > mech_.threshold;
          return sel ? 1.0 : 0.0;
        }
        case SelectionKind::Randomized: {
          const double gap = sqn * (mech_.threshold - s);
          return norm_cdf((mech_.direction == Direction::Below ? gap : -gap) /
                          mech_.sigma_w);
        }
        case SelectionKind::ConditionOnValue: {
          const double r = (mech_.observed_value - sqn * s) / mech_.sigma_w;
          return std::exp(-0.5 * r * r);
        }
        default:
          return 1.0;
      }
    };
    auto integrand = [&](double s) {
      return std::exp(log_gamma_pdf(s, shape, mean_rate)) * weight(s);
    };
    const double center = 1.0 / rate;
    const double scale = 1.0 / (rate * std::sqrt(shape));
    const double lo = std::max(0.0, center - quad_.tail_cut * scale);
    const double hi = center + quad_.tail_cut * scale;
    std::vector<double> breaks;
    if (mech_.kind == SelectionKind::Deterministic ||
        mech_.kind == SelectionKind::Carving) {
      breaks.push_back(mech_.threshold);
    }
    return integrate(integrand, lo, hi, quad_, ScaleHint{center, scale}, breaks);
  }

  if (fam == "gaussian_mean_var" && mech_.statistic == SelectionStatistic::SampleMean &&
      mech_.kind == SelectionKind::Deterministic) {
    const double sd_mean = std::sqrt(theta[1] / static_cast<double>(n_));
    const double below = std::isinf(mech_.threshold)
                             ? (mech_.threshold > 0.0 ? 1.0 : 0.0)
                             : norm_cdf((mech_.threshold - theta[0]) / sd_mean);
    return mech_.direction == Direction::Below ? below : 1.0 - below;
  }

  throw std::domain_error(
      "selection_probability: no exact/quadrature route for this family/mechanism pair");
}

SelectionProbability SelectionModel::selection_probability(const VectorXd& theta,
                                                           ProbMethod method,
                                                           RngStream* rng,
                                                           long mc_draws) const {
  if (method == ProbMethod::MonteCarlo) {
    if (rng == nullptr) {
      throw std::invalid_argument("selection_probability: monte_carlo requires an RngStream");
    }
    family_->require_admissible(theta);
    std::vector<double> y;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (long i = 0; i < mc_draws; ++i) {
      family_->sample(theta, n_, *rng, y);
      const double w = selection_weight(y);
      sum += w;
      sum_sq += w * w;
    }
    const double m = sum / static_cast<double>(mc_draws);
    const double var = std::max(0.0, sum_sq / static_cast<double>(mc_draws) - m * m);
    return {m, std::sqrt(var / static_cast<double>(mc_draws))};
  }
  return {phi_exact_or_quadrature(theta, method == ProbMethod::Quadrature), 0.0};
}

double SelectionModel::log_selection_probability(const VectorXd& theta) const {
  return std::log(phi_exact_or_quadrature(theta, false));
}

std::vector<double> SelectionModel::sample_conditional(const VectorXd& theta,
                                                       RngStream& rng, long max_attempts,
                                                       long* attempts_out) const {
  family_->require_admissible(theta);
  const int m = mech_.prefix_extent(n_);
  std::vector<double> prefix;
  long accepted_attempt = -1;
  for (long attempt = 1; attempt <= max_attempts; ++attempt) {
    if (m > 0) {
      family_->sample(theta, m, rng, prefix);
    } else {
      prefix.clear();
    }
    const double w = weight_from_prefix(prefix);
    if (w >= 1.0 || rng.uniform01() < w) {
      accepted_attempt = attempt;
      break;
    }
  }
  if (attempts_out != nullptr) {
    *attempts_out = accepted_attempt > 0 ? accepted_attempt : max_attempts;
  }
  if (accepted_attempt < 0) {
    throw SelectionTooRareError(0.0, max_attempts);
  }
  std::vector<double> rest;
  if (n_ > m) family_->sample(theta, n_ - m, rng, rest);
  prefix.insert(prefix.end(), rest.begin(), rest.end());
  return prefix;
}

double SelectionModel::selective_loglik_ratio(const VectorXd& theta, const VectorXd& h,
                                              std::span<const double> y) const {
  if (static_cast<int>(y.size()) != n_) {
    throw std::invalid_argument("selective_loglik_ratio: sample has wrong length");
  }
  family_->require_admissible(theta);
  if (h.size() != theta.size()) {
    throw std::invalid_argument("selective_loglik_ratio: dimension mismatch");
  }
  if (h.isZero(0.0)) return 0.0;
  const VectorXd shifted = theta + h / std::sqrt(static_cast<double>(n_));
  if (!family_->admissible(shifted)) {
    throw std::domain_error("selective_loglik_ratio: shifted parameter inadmissible");
  }
  double base = 0.0;
  for (double yi : y) {
    base += family_->log_density(shifted, yi) - family_->log_density(theta, yi);
  }
  if (mech_.kind == SelectionKind::None) return base;
  return base + log_selection_probability(theta) - log_selection_probability(shifted);
}

}  // namespace selab
