#ifndef SELAB_MECHANISM_HPP
#define SELAB_MECHANISM_HPP

#include <string>

namespace selab {

enum class SelectionKind { None, Deterministic, Carving, Randomized, ConditionOnValue };
enum class SelectionStatistic { SampleMean, SubsampleTStat };
enum class Direction { Below, Above };
enum class TStatDivisor { Mle, Unbiased };

/// One of the selection mechanisms acting on a scalar statistic of the
/// sample. Thresholds for Randomized mechanisms are supplied on the raw
/// statistic scale; weights act on the sqrt(n)-scaled statistic internally.
/// Kind None is the no-selection baseline (weight identically 1).
struct SelectionMechanism {
  SelectionKind kind = SelectionKind::None;
  SelectionStatistic statistic = SelectionStatistic::SampleMean;
  Direction direction = Direction::Below;
  double threshold = 0.0;
  double carve_fraction = 0.5;
  double sigma_w = 1.0;
  double observed_value = 0.0;  // conditioning value u_n (ConditionOnValue)
  int subsample_size = 0;       // n1, first-stage size for SubsampleTStat
  TStatDivisor t_divisor = TStatDivisor::Mle;

  static SelectionMechanism none();
  static SelectionMechanism deterministic(double threshold, Direction dir);
  static SelectionMechanism carving(double threshold, Direction dir,
                                    double fraction = 0.5);
  static SelectionMechanism randomized(double threshold, Direction dir,
                                       double sigma_w);
  static SelectionMechanism condition_on_value(double observed, double sigma_w);
  /// Winners mechanism: keep the sample when the first-stage t-statistic
  /// exceeds the threshold.
  static SelectionMechanism subsample_t(int n1, double threshold,
                                        TStatDivisor divisor = TStatDivisor::Mle);

  /// Number of leading observations the selection weight depends on.
  int prefix_extent(int n) const;

  void validate(int n) const;

  std::string label() const;
};

}  // namespace selab

#endif  // SELAB_MECHANISM_HPP
