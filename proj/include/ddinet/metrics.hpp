#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ddinet {

struct MetricsReport {
  double acc = 0;
  double macro_f1 = 0;
  double pr_auc = 0;
  double kappa = 0;
  std::vector<std::string> warnings;
};

/// Multi-class metrics from row-normalised probabilities.
/// - ACC: fraction correct by argmax (ties break to the lowest index).
/// - macro-F1: unweighted mean of per-class F1 over all `n_classes`;
///   classes absent from y_true contribute 0 (warned).
/// - PR-AUC: macro one-vs-rest average precision; classes without positives
///   contribute 0 (warned).
/// - kappa: (p_o - p_e) / (1 - p_e); degenerate denominator gives 0 (warned).
MetricsReport compute_metrics(const std::vector<std::size_t>& y_true,
                              const std::vector<std::vector<double>>& probs,
                              std::size_t n_classes);

std::size_t argmax(const std::vector<double>& v);

}  // namespace ddinet
