#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ddinet/common.hpp"
#include "ddinet/metrics.hpp"
#include "ddinet/stats.hpp"
#include "metric_oracles.hpp"

using namespace ddinet;

namespace {

std::vector<std::vector<double>> onehot_probs(const std::vector<std::size_t>& preds,
                                              std::size_t k) {
  std::vector<std::vector<double>> p;
  for (auto c : preds) {
    std::vector<double> row(k, 0.0);
    row[c] = 1.0;
    p.push_back(row);
  }
  return p;
}

}  // namespace

TEST_CASE("perfect predictions score one everywhere") {
  std::vector<std::size_t> y = {0, 1, 2, 0, 1, 2};
  auto m = compute_metrics(y, onehot_probs(y, 3), 3);
  CHECK(m.acc == doctest::Approx(1.0));
  CHECK(m.macro_f1 == doctest::Approx(1.0));
  CHECK(m.pr_auc == doctest::Approx(1.0));
  CHECK(m.kappa == doctest::Approx(1.0));
}

TEST_CASE("hand confusion case: acc 0.75, kappa 0.5") {
  std::vector<std::size_t> y = {0, 0, 1, 1};
  std::vector<std::size_t> preds = {0, 1, 1, 1};
  auto m = compute_metrics(y, onehot_probs(preds, 2), 2);
  CHECK(m.acc == doctest::Approx(0.75));
  CHECK(m.kappa == doctest::Approx(0.5));
}

TEST_CASE("all-one-class predictor on balanced data has zero kappa") {
  std::vector<std::size_t> y = {0, 0, 1, 1};
  std::vector<std::size_t> preds = {0, 0, 0, 0};
  auto m = compute_metrics(y, onehot_probs(preds, 2), 2);
  CHECK(m.kappa == doctest::Approx(0.0));
}

TEST_CASE("metrics match brute-force oracles on random cases") {
  Rng rng = make_rng(3, "metrics");
  for (int iter = 0; iter < 25; ++iter) {
    const std::size_t k = 2 + static_cast<std::size_t>(iter % 5);
    const std::size_t n = 30;
    std::uniform_int_distribution<std::size_t> cls(0, k - 1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::size_t> y(n);
    std::vector<std::vector<double>> p(n, std::vector<double>(k));
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = cls(rng);
      double s = 0;
      for (std::size_t c = 0; c < k; ++c) {
        p[i][c] = u(rng);
        s += p[i][c];
      }
      for (std::size_t c = 0; c < k; ++c) p[i][c] /= s;
    }
    auto m = compute_metrics(y, p, k);
    CHECK(m.acc == doctest::Approx(metric_oracle::accuracy(y, p)).epsilon(1e-12));
    CHECK(m.macro_f1 == doctest::Approx(metric_oracle::macro_f1(y, p, k)).epsilon(1e-12));
    CHECK(m.pr_auc == doctest::Approx(metric_oracle::macro_ap(y, p, k)).epsilon(1e-12));
    CHECK(m.kappa == doctest::Approx(metric_oracle::kappa(y, p, k)).epsilon(1e-12));
  }
}

TEST_CASE("absent classes warn and contribute zero") {
  std::vector<std::size_t> y = {0, 0, 1};
  auto m = compute_metrics(y, onehot_probs(y, 4), 4);
  CHECK(m.macro_f1 == doctest::Approx(0.5));  // two perfect classes over four
  CHECK(m.warnings.size() >= 2);
}

TEST_CASE("corrected t-test: identical lists and degenerate variance") {
  std::vector<double> a = {0.9, 0.8, 0.85, 0.9, 0.87};
  auto r = corrected_paired_ttest(a, a, 100, 25);
  CHECK(r.t == doctest::Approx(0.0));
  CHECK(r.p == doctest::Approx(1.0));

  std::vector<double> b = a;
  for (double& x : b) x -= 0.02;  // constant positive difference
  auto r2 = corrected_paired_ttest(a, b, 100, 25);
  CHECK(std::isinf(r2.t));
  CHECK(r2.t > 0);
  CHECK(r2.p == doctest::Approx(0.0));
}

TEST_CASE("corrected t-test matches the formula oracle on random lists") {
  Rng rng = make_rng(4, "ttest");
  std::uniform_real_distribution<double> u(0.5, 1.0);
  for (int iter = 0; iter < 20; ++iter) {
    const std::size_t k = 5;
    std::vector<double> a(k), b(k);
    for (std::size_t i = 0; i < k; ++i) {
      a[i] = u(rng);
      b[i] = u(rng);
    }
    auto got = corrected_paired_ttest(a, b, 400, 100);
    auto want = metric_oracle::corrected_ttest(a, b, 400, 100);
    CHECK(got.t == doctest::Approx(want.t).epsilon(1e-10));
    CHECK(got.p == doctest::Approx(want.p).epsilon(1e-6));
  }
}

TEST_CASE("student t cdf sanity") {
  CHECK(student_t_cdf(0.0, 4) == doctest::Approx(0.5));
  // symmetric tails
  CHECK(student_t_cdf(1.3, 7) + student_t_cdf(-1.3, 7) == doctest::Approx(1.0).epsilon(1e-12));
  // against known value: t=2.776, dof=4 -> P(T<=t) ~ 0.975
  CHECK(student_t_cdf(2.776, 4) == doctest::Approx(0.975).epsilon(1e-3));
}
