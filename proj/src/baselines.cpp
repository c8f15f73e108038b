#include "ddinet/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "ddinet/chem/fingerprint.hpp"
#include "ddinet/common.hpp"

namespace ddinet {

MetricsReport majority_baseline(const std::vector<DdiSample>& train,
                                const std::vector<DdiSample>& test, std::size_t n_relations) {
  if (train.empty() || test.empty()) throw InputError("majority baseline needs data");
  std::vector<double> freq(n_relations, 0.0);
  for (const auto& s : train) freq[s.r] += 1.0;
  for (double& f : freq) f /= static_cast<double>(train.size());
  std::vector<std::size_t> labels;
  std::vector<std::vector<double>> probs;
  for (const auto& s : test) {
    labels.push_back(s.r);
    probs.push_back(freq);
  }
  return compute_metrics(labels, probs, n_relations);
}

MetricsReport fingerprint_logistic_baseline(const DataBundle& bundle, const FoldSplit& fold,
                                            const TrainConfig& cfg) {
  const std::size_t bits = cfg.fp_bits;
  const std::size_t dim = 2 * bits;
  const std::size_t R = bundle.n_relations;

  // whole-molecule fingerprints
  std::map<std::size_t, std::vector<double>> fp;
  for (const auto& [idx, drug] : bundle.drugs) {
    auto v = chem::fingerprint_mol(drug->molgraph.mol, bits, cfg.fp_radius);
    std::vector<double> f(bits);
    for (std::size_t j = 0; j < bits; ++j) f[j] = v[j] ? 1.0 : 0.0;
    fp[idx] = std::move(f);
  }

  auto feature = [&](const DdiSample& s) {
    std::vector<double> x(dim);
    const auto& a = fp.at(s.u);
    const auto& b = fp.at(s.v);
    std::copy(a.begin(), a.end(), x.begin());
    std::copy(b.begin(), b.end(), x.begin() + static_cast<std::ptrdiff_t>(bits));
    return x;
  };

  // weights R x dim plus bias, trained with Adam on the cross entropy
  Mat w(R, dim), bias(1, R);
  Mat mw(R, dim), vw(R, dim), mb(1, R), vb(1, R);
  Rng rng = make_rng(cfg.seed, "fp-logistic");
  std::uniform_real_distribution<double> init(-0.01, 0.01);
  for (double& x : w.d) x = init(rng);

  std::vector<std::size_t> order(fold.train.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  const double lr = 0.01, b1 = 0.9, b2 = 0.999, eps = 1e-8;
  int t = 0;
  const int epochs = 40;
  const std::size_t batch = 64;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t end = std::min(order.size(), start + batch);
      Mat gw(R, dim), gb(1, R);
      for (std::size_t i = start; i < end; ++i) {
        const auto& s = fold.train[order[i]];
        const auto x = feature(s);
        std::vector<double> logits(R);
        for (std::size_t c = 0; c < R; ++c) {
          double z = bias.d[c];
          for (std::size_t j = 0; j < dim; ++j) z += w.at(c, j) * x[j];
          logits[c] = z;
        }
        const double mx = *std::max_element(logits.begin(), logits.end());
        double zsum = 0;
        for (double& z : logits) zsum += std::exp(z - mx);
        for (std::size_t c = 0; c < R; ++c) {
          const double p = std::exp(logits[c] - mx) / zsum;
          const double err = p - (c == s.r ? 1.0 : 0.0);
          gb.d[c] += err;
          for (std::size_t j = 0; j < dim; ++j)
            if (x[j] != 0.0) gw.at(c, j) += err * x[j];
        }
      }
      const double scale = 1.0 / static_cast<double>(end - start);
      ++t;
      const double bc1 = 1.0 - std::pow(b1, t), bc2 = 1.0 - std::pow(b2, t);
      auto adam = [&](Mat& p, Mat& m, Mat& v, const Mat& g) {
        for (std::size_t i = 0; i < p.size(); ++i) {
          const double gi = g.d[i] * scale;
          m.d[i] = b1 * m.d[i] + (1 - b1) * gi;
          v.d[i] = b2 * v.d[i] + (1 - b2) * gi * gi;
          p.d[i] -= lr * (m.d[i] / bc1) / (std::sqrt(v.d[i] / bc2) + eps);
        }
      };
      adam(w, mw, vw, gw);
      adam(bias, mb, vb, gb);
    }
  }

  std::vector<std::size_t> labels;
  std::vector<std::vector<double>> probs;
  for (const auto& s : fold.test) {
    const auto x = feature(s);
    std::vector<double> logits(R);
    for (std::size_t c = 0; c < R; ++c) {
      double z = bias.d[c];
      for (std::size_t j = 0; j < dim; ++j) z += w.at(c, j) * x[j];
      logits[c] = z;
    }
    const double mx = *std::max_element(logits.begin(), logits.end());
    double zsum = 0;
    for (double& z : logits) zsum += std::exp(z - mx);
    std::vector<double> p(R);
    for (std::size_t c = 0; c < R; ++c) p[c] = std::exp(logits[c] - mx) / zsum;
    labels.push_back(s.r);
    probs.push_back(std::move(p));
  }
  return compute_metrics(labels, probs, R);
}

}  // namespace ddinet
