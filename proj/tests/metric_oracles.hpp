#pragma once

// Brute-force metric reference implementations for oracle tests. Written
// from the definitions (explicit confusion matrix, rank scan, direct
// quadrature of the corrected t-statistic), independent of src/metrics.cpp.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace metric_oracle {

inline std::size_t pick_argmax(const std::vector<double>& v) {
  std::size_t b = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[b]) b = i;
  return b;
}

inline double accuracy(const std::vector<std::size_t>& y,
                       const std::vector<std::vector<double>>& p) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (pick_argmax(p[i]) == y[i]) ++c;
  return static_cast<double>(c) / static_cast<double>(y.size());
}

inline double macro_f1(const std::vector<std::size_t>& y,
                       const std::vector<std::vector<double>>& p, std::size_t k) {
  double sum = 0;
  for (std::size_t c = 0; c < k; ++c) {
    double tp = 0, fp = 0, fn = 0, present = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const bool is_c = y[i] == c;
      const bool pred_c = pick_argmax(p[i]) == c;
      if (is_c) present += 1;
      if (is_c && pred_c) tp += 1;
      if (!is_c && pred_c) fp += 1;
      if (is_c && !pred_c) fn += 1;
    }
    if (present == 0) continue;  // contributes zero
    const double prec = tp + fp > 0 ? tp / (tp + fp) : 0.0;
    const double rec = tp + fn > 0 ? tp / (tp + fn) : 0.0;
    sum += prec + rec > 0 ? 2 * prec * rec / (prec + rec) : 0.0;
  }
  return sum / static_cast<double>(k);
}

inline double macro_ap(const std::vector<std::size_t>& y,
                       const std::vector<std::vector<double>>& p, std::size_t k) {
  double sum = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<std::size_t> order(y.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return p[a][c] > p[b][c]; });
    double pos = 0;
    for (std::size_t i = 0; i < y.size(); ++i)
      if (y[i] == c) pos += 1;
    if (pos == 0) continue;
    double hits = 0, ap = 0;
    for (std::size_t r = 0; r < order.size(); ++r) {
      if (y[order[r]] == c) {
        hits += 1;
        ap += hits / static_cast<double>(r + 1);
      }
    }
    sum += ap / pos;
  }
  return sum / static_cast<double>(k);
}

inline double kappa(const std::vector<std::size_t>& y,
                    const std::vector<std::vector<double>>& p, std::size_t k) {
  const double n = static_cast<double>(y.size());
  std::vector<double> row(k, 0), col(k, 0);
  double diag = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const std::size_t pr = pick_argmax(p[i]);
    row[y[i]] += 1;
    col[pr] += 1;
    if (pr == y[i]) diag += 1;
  }
  const double po = diag / n;
  double pe = 0;
  for (std::size_t c = 0; c < k; ++c) pe += (row[c] / n) * (col[c] / n);
  if (std::fabs(1 - pe) < 1e-15) return 0.0;
  return (po - pe) / (1 - pe);
}

/// Corrected t statistic, term by term; p-value by numerically integrating
/// the Student density instead of the incomplete beta route.
struct TT {
  double t;
  double p;
};

inline double student_pdf(double x, double dof) {
  return std::exp(std::lgamma((dof + 1) / 2) - std::lgamma(dof / 2)) /
         std::sqrt(dof * M_PI) * std::pow(1 + x * x / dof, -(dof + 1) / 2);
}

inline TT corrected_ttest(const std::vector<double>& a, const std::vector<double>& b,
                          std::size_t n_train, std::size_t n_test) {
  const std::size_t k = a.size();
  std::vector<double> d(k);
  for (std::size_t i = 0; i < k; ++i) d[i] = a[i] - b[i];
  double m = 0;
  for (double x : d) m += x;
  m /= static_cast<double>(k);
  double var = 0;
  for (double x : d) var += (x - m) * (x - m);
  var /= static_cast<double>(k - 1);
  if (var == 0.0) {
    if (m == 0.0) return {0.0, 1.0};
    return {m > 0 ? INFINITY : -INFINITY, 0.0};
  }
  const double corr = 1.0 / static_cast<double>(k) +
                      static_cast<double>(n_test) / static_cast<double>(n_train);
  const double t = m / std::sqrt(corr * var);
  // two-sided tail by Simpson quadrature over |t| .. |t|+60
  const double dof = static_cast<double>(k - 1);
  const double lo = std::fabs(t), hi = lo + 60.0;
  const int steps = 40000;
  const double h = (hi - lo) / steps;
  double integral = student_pdf(lo, dof) + student_pdf(hi, dof);
  for (int i = 1; i < steps; ++i)
    integral += student_pdf(lo + i * h, dof) * (i % 2 ? 4.0 : 2.0);
  integral *= h / 3.0;
  return {t, 2.0 * integral};
}

}  // namespace metric_oracle
