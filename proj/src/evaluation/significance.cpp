#include "textclf/evaluation/significance.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace textclf::evaluation {

double chi_square_1_upper_tail(double x) {
  if (x <= 0.0) return 1.0;
  return boost::math::cdf(boost::math::complement(boost::math::chi_squared_distribution<double>(1.0), x));
}

McNemarResult mcnemar_from_counts(std::size_t b, std::size_t c, Direction direction) {
  McNemarResult r{b, c, 0.0, 1.0};
  if (b + c == 0) return r;
  const double diff = std::max(0.0, std::abs(static_cast<double>(b) - static_cast<double>(c)) - 1.0);
  r.statistic = diff * diff / static_cast<double>(b + c);
  const double half_tail = 0.5 * chi_square_1_upper_tail(r.statistic);
  const bool leans = direction == Direction::FirstBetter ? b > c : c > b;
  r.p_value = leans ? half_tail : 1.0 - half_tail;
  return r;
}

McNemarResult mcnemar_test(std::span<const bool> correct_a, std::span<const bool> correct_b, Direction direction) {
  if (correct_a.size() != correct_b.size()) throw std::invalid_argument("McNemar test needs paired outcomes");
  std::size_t b = 0, c = 0;
  for (std::size_t i = 0; i < correct_a.size(); ++i) {
    b += correct_a[i] && !correct_b[i];
    c += !correct_a[i] && correct_b[i];
  }
  return mcnemar_from_counts(b, c, direction);
}

TTestResult macro_t_test(std::span<const double> a, std::span<const double> b, Direction direction) {
  if (a.size() != b.size()) throw std::invalid_argument("t-test needs one score per class for both models");
  const std::size_t k = a.size();
  if (k < 2) throw std::invalid_argument("t-test needs at least two classes");
  double mean = 0.0;
  for (std::size_t i = 0; i < k; ++i) mean += a[i] - b[i];
  mean /= static_cast<double>(k);
  double ss = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double d = a[i] - b[i] - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / static_cast<double>(k - 1));
  const double sign = direction == Direction::FirstBetter ? 1.0 : -1.0;

  TTestResult r;
  r.degrees_of_freedom = k - 1;
  if (sd == 0.0) {
    r.degenerate = true;
    if (mean == 0.0) return r;
    r.t = mean > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    r.p_value = sign * mean > 0.0 ? 0.0 : 1.0;
    return r;
  }
  r.t = mean / (sd / std::sqrt(static_cast<double>(k)));
  boost::math::students_t_distribution<double> dist(static_cast<double>(k - 1));
  r.p_value = boost::math::cdf(boost::math::complement(dist, sign * r.t));
  return r;
}

std::string significance_marks(double p) {
  if (p < 1e-4) return "***";
  if (p < 1e-3) return "**";
  if (p < 1e-2) return "*";
  return "";
}

}  // namespace textclf::evaluation
