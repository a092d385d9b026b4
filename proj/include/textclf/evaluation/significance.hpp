#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace textclf::evaluation {

/// Alternative hypothesis of a one-sided test.
enum class Direction { FirstBetter, SecondBetter };

struct McNemarResult {
  std::size_t b = 0;  // first correct, second wrong
  std::size_t c = 0;  // first wrong, second correct
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Continuity-corrected McNemar test. statistic = max(0, |b - c| - 1)^2 /
/// (b + c); the chi-square (1 dof) upper tail at the statistic is halved
/// when the discordant counts lean toward `direction`, else p = 1 - tail/2.
/// b + c = 0 gives statistic 0 and p = 1. Throws std::invalid_argument on a
/// length mismatch.
McNemarResult mcnemar_test(std::span<const bool> correct_a, std::span<const bool> correct_b,
                           Direction direction = Direction::FirstBetter);
McNemarResult mcnemar_from_counts(std::size_t b, std::size_t c, Direction direction = Direction::FirstBetter);

/// Upper tail of the chi-square distribution with one degree of freedom.
double chi_square_1_upper_tail(double x);

struct TTestResult {
  double t = 0.0;
  double p_value = 0.5;
  std::size_t degrees_of_freedom = 0;
  /// Zero variance of the differences; t is 0 or infinite by convention.
  bool degenerate = false;
};

/// Paired one-sided t-test on per-class scores: d_k = a_k - b_k,
/// t = mean(d) / (sd(d) / sqrt(K)) with the sample standard deviation and
/// K - 1 degrees of freedom. With zero variance: identical inputs give t = 0
/// and p = 0.5; otherwise t = ±inf and p is 0 or 1. Throws
/// std::invalid_argument for K < 2 or differing lengths.
TTestResult macro_t_test(std::span<const double> scores_a, std::span<const double> scores_b,
                         Direction direction = Direction::FirstBetter);

/// "", "*", "**" or "***" for p below 1e-2, 1e-3, 1e-4.
std::string significance_marks(double p_value);

}  // namespace textclf::evaluation
