#include "ddinet/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "ddinet/common.hpp"

namespace ddinet {

std::size_t argmax(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

MetricsReport compute_metrics(const std::vector<std::size_t>& y_true,
                              const std::vector<std::vector<double>>& probs,
                              std::size_t n_classes) {
  if (y_true.size() != probs.size() || y_true.empty())
    throw InputError("metrics need equal-sized, non-empty label and probability lists");
  const std::size_t n = y_true.size();
  MetricsReport r;

  std::vector<std::size_t> y_pred(n);
  for (std::size_t i = 0; i < n; ++i) y_pred[i] = argmax(probs[i]);

  // confusion counts
  std::vector<std::size_t> tp(n_classes, 0), fp(n_classes, 0), fn(n_classes, 0),
      support(n_classes, 0), predicted(n_classes, 0);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ++support[y_true[i]];
    ++predicted[y_pred[i]];
    if (y_pred[i] == y_true[i]) {
      ++correct;
      ++tp[y_true[i]];
    } else {
      ++fp[y_pred[i]];
      ++fn[y_true[i]];
    }
  }
  r.acc = static_cast<double>(correct) / static_cast<double>(n);

  double f1_sum = 0;
  for (std::size_t c = 0; c < n_classes; ++c) {
    if (support[c] == 0) {
      r.warnings.push_back("class " + std::to_string(c) + " absent from test set; F1 counted as 0");
      continue;
    }
    const double denom = static_cast<double>(2 * tp[c] + fp[c] + fn[c]);
    f1_sum += denom > 0 ? 2.0 * static_cast<double>(tp[c]) / denom : 0.0;
  }
  r.macro_f1 = f1_sum / static_cast<double>(n_classes);

  // macro one-vs-rest average precision
  double ap_sum = 0;
  for (std::size_t c = 0; c < n_classes; ++c) {
    if (support[c] == 0) {
      r.warnings.push_back("class " + std::to_string(c) + " has no positives; AP counted as 0");
      continue;
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return probs[a][c] > probs[b][c];
    });
    double hits = 0, ap = 0;
    for (std::size_t rank = 0; rank < n; ++rank) {
      if (y_true[order[rank]] == c) {
        hits += 1.0;
        ap += hits / static_cast<double>(rank + 1);
      }
    }
    ap_sum += ap / static_cast<double>(support[c]);
  }
  r.pr_auc = ap_sum / static_cast<double>(n_classes);

  // Cohen's kappa
  const double po = r.acc;
  double pe = 0;
  for (std::size_t c = 0; c < n_classes; ++c)
    pe += static_cast<double>(support[c]) * static_cast<double>(predicted[c]) /
          (static_cast<double>(n) * static_cast<double>(n));
  if (std::fabs(1.0 - pe) < 1e-15) {
    r.kappa = 0.0;
    r.warnings.push_back("kappa denominator degenerate (single class); reporting 0");
  } else {
    r.kappa = (po - pe) / (1.0 - pe);
  }
  return r;
}

}  // namespace ddinet
