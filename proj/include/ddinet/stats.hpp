#pragma once

#include <cstddef>
#include <vector>

namespace ddinet {

/// Two-sided CDF complement helpers for Student's t.
double student_t_cdf(double t, double dof);

struct TTestResult {
  double t = 0;
  double p = 1;
};

/// Resampled-cross-validation corrected paired t-test:
///   t = mean(d) / sqrt((1/k + n_test/n_train) * s_d^2)
/// with k-1 degrees of freedom. Zero variance: t=0,p=1 when the mean is also
/// zero, otherwise an infinite-t sentinel with p=0.
TTestResult corrected_paired_ttest(const std::vector<double>& scores_a,
                                   const std::vector<double>& scores_b, std::size_t n_train,
                                   std::size_t n_test);

double mean(const std::vector<double>& v);
double sample_std(const std::vector<double>& v);

}  // namespace ddinet
