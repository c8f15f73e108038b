#include "ddinet/fidelity.hpp"

#include <algorithm>
#include <cmath>

#include "ddinet/common.hpp"

namespace ddinet {

std::vector<FidelityRow> fidelity_eval(const TrainConfig& cfg, ParameterStore& store,
                                       const std::vector<SampleData>& test_samples,
                                       EntityForward* entity,
                                       const std::vector<double>& sparsity_levels) {
  if (cfg.no_tsbkg || cfg.mean_pool)
    throw InputError("fidelity evaluation needs the attention pooling of the full model");
  const Mat* table = entity ? &entity->table() : nullptr;

  // Base predictions and node rankings (ties break to the lower index).
  std::vector<bool> base_correct(test_samples.size());
  std::vector<std::vector<std::size_t>> ranking(test_samples.size());
  LossWeights w;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(test_samples.size()); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const auto& s = test_samples[idx];
    SampleResult r = run_sample(cfg, store, s, table, nullptr, w);
    base_correct[idx] = argmax(r.probs) == s.label;
    std::vector<std::size_t> order(r.caspool_scores.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return r.caspool_scores[a] > r.caspool_scores[b];
    });
    ranking[idx] = std::move(order);
  }
  double base_acc = 0;
  for (bool c : base_correct) base_acc += c ? 1.0 : 0.0;
  base_acc /= static_cast<double>(test_samples.size());

  std::vector<FidelityRow> rows;
  for (double s : sparsity_levels) {
    if (s < 0.0 || s > 1.0) throw InputError("sparsity must be in [0,1]");
    double acc_plus = 0, acc_minus = 0;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(test_samples.size()); ++i) {
      const auto idx = static_cast<std::size_t>(i);
      const auto& sample = test_samples[idx];
      const auto& order = ranking[idx];
      const std::size_t n = order.size();
      const auto n_important =
          static_cast<std::size_t>(std::ceil((1.0 - s) * static_cast<double>(n)));
      std::vector<std::size_t> important(order.begin(),
                                         order.begin() + static_cast<std::ptrdiff_t>(n_important));
      std::vector<std::size_t> rest(order.begin() + static_cast<std::ptrdiff_t>(n_important),
                                    order.end());
      auto rp = run_sample_masked(cfg, store, sample, table, important);
      auto rm = run_sample_masked(cfg, store, sample, table, rest);
      const double cp = argmax(rp.probs) == sample.label ? 1.0 : 0.0;
      const double cm = argmax(rm.probs) == sample.label ? 1.0 : 0.0;
#pragma omp atomic
      acc_plus += cp;
#pragma omp atomic
      acc_minus += cm;
    }
    acc_plus /= static_cast<double>(test_samples.size());
    acc_minus /= static_cast<double>(test_samples.size());
    rows.push_back(FidelityRow{s, base_acc - acc_plus, base_acc - acc_minus});
  }
  return rows;
}

}  // namespace ddinet
