#include "selab/mechanism.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace selab {

SelectionMechanism SelectionMechanism::none() {
  SelectionMechanism m;
  m.kind = SelectionKind::None;
  return m;
}

SelectionMechanism SelectionMechanism::deterministic(double threshold, Direction dir) {
  SelectionMechanism m;
  m.kind = SelectionKind::Deterministic;
  m.threshold = threshold;
  m.direction = dir;
  return m;
}

SelectionMechanism SelectionMechanism::carving(double threshold, Direction dir,
                                               double fraction) {
  SelectionMechanism m;
  m.kind = SelectionKind::Carving;
  m.threshold = threshold;
  m.direction = dir;
  m.carve_fraction = fraction;
  return m;
}

SelectionMechanism SelectionMechanism::randomized(double threshold, Direction dir,
                                                  double sigma_w) {
  SelectionMechanism m;
  m.kind = SelectionKind::Randomized;
  m.threshold = threshold;
  m.direction = dir;
  m.sigma_w = sigma_w;
  return m;
}

SelectionMechanism SelectionMechanism::condition_on_value(double observed,
                                                          double sigma_w) {
  SelectionMechanism m;
  m.kind = SelectionKind::ConditionOnValue;
  m.observed_value = observed;
  m.sigma_w = sigma_w;
  return m;
}

SelectionMechanism SelectionMechanism::subsample_t(int n1, double threshold,
                                                   TStatDivisor divisor) {
  SelectionMechanism m;
  m.kind = SelectionKind::Deterministic;
  m.statistic = SelectionStatistic::SubsampleTStat;
  m.direction = Direction::Above;
  m.threshold = threshold;
  m.subsample_size = n1;
  m.t_divisor = divisor;
  return m;
}

int SelectionMechanism::prefix_extent(int n) const {
  if (kind == SelectionKind::None) return 0;
  if (statistic == SelectionStatistic::SubsampleTStat) return subsample_size;
  if (kind == SelectionKind::Carving) {
    return static_cast<int>(std::ceil(carve_fraction * n));
  }
  return n;
}

void SelectionMechanism::validate(int n) const {
  if (n < 2) throw std::domain_error("SelectionMechanism: n must be at least 2");
  switch (kind) {
    case SelectionKind::None:
      return;
    case SelectionKind::Deterministic:
      if (std::isnan(threshold)) {
        throw std::domain_error("SelectionMechanism: NaN threshold");
      }
      break;
    case SelectionKind::Carving: {
      if (statistic != SelectionStatistic::SampleMean) {
        throw std::domain_error("SelectionMechanism: carving acts on the sample mean");
      }
      if (!(carve_fraction > 0.0 && carve_fraction < 1.0)) {
        throw std::domain_error("SelectionMechanism: carve_fraction must be in (0,1)");
      }
      if (carve_fraction == 0.5 && n % 2 != 0) {
        throw std::domain_error("SelectionMechanism: carving with fraction 1/2 needs even n");
      }
      const int m = prefix_extent(n);
      if (m < 1 || m >= n) {
        throw std::domain_error("SelectionMechanism: carved subsample must be a proper prefix");
      }
      break;
    }
    case SelectionKind::Randomized:
    case SelectionKind::ConditionOnValue:
      if (statistic != SelectionStatistic::SampleMean) {
        throw std::domain_error(
            "SelectionMechanism: randomized mechanisms act on the sample mean");
      }
      if (!(sigma_w > 0.0)) {
        throw std::domain_error("SelectionMechanism: sigma_w must be positive");
      }
      break;
  }
  if (statistic == SelectionStatistic::SubsampleTStat) {
    if (kind != SelectionKind::Deterministic) {
      throw std::domain_error(
          "SelectionMechanism: the subsample t statistic is used with deterministic selection");
    }
    if (subsample_size < 2 || subsample_size > n) {
      throw std::domain_error("SelectionMechanism: subsample_size must lie in [2, n]");
    }
  }
}

std::string SelectionMechanism::label() const {
  switch (kind) {
    case SelectionKind::None:
      return "none";
    case SelectionKind::Deterministic:
      return statistic == SelectionStatistic::SubsampleTStat ? "winners"
                                                             : "deterministic";
    case SelectionKind::Carving:
      return "carving";
    case SelectionKind::Randomized:
      return "randomized";
    case SelectionKind::ConditionOnValue:
      return "condition_on_value";
  }
  return "unknown";
}

}  // namespace selab
