#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ddinet/config.hpp"
#include "ddinet/mat.hpp"

namespace ddinet {

/// Sizes that come from data rather than config.
struct ModelDims {
  std::size_t n_entities = 0;
  std::size_t n_relations = 0;  // DDI interaction types
};

/// Named tensors with gradients and Adam state, in fixed registration order.
/// Shapes are validated at construction; the full set is determined by the
/// config (ablations drop whole groups).
class ParameterStore {
 public:
  struct Entry {
    std::string name;
    Mat value;
    Mat grad;
    Mat adam_m;
    Mat adam_v;
  };

  /// Registers every parameter group the configured model needs.
  ParameterStore(const TrainConfig& cfg, const ModelDims& dims);

  const Mat& get(const std::string& name) const;
  Mat& mutable_value(const std::string& name);
  Mat& grad(const std::string& name);
  bool has(const std::string& name) const { return index_.count(name) > 0; }

  std::vector<Entry>& entries() { return entries_; }
  const std::vector<Entry>& entries() const { return entries_; }

  std::size_t num_parameters() const;
  void zero_grads();

  /// Adam update (bias-corrected, fixed parameter order, no weight decay).
  void adam_step(double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);

  /// Versioned binary checkpoint keyed by the config hash; load refuses a
  /// mismatched hash.
  void save(const std::string& path, std::uint64_t config_hash) const;
  void load(const std::string& path, std::uint64_t config_hash);

  const TrainConfig& config() const { return cfg_; }
  const ModelDims& dims() const { return dims_; }

 private:
  Mat& add(const std::string& name, std::size_t rows, std::size_t cols, bool zero_init);

  TrainConfig cfg_;
  ModelDims dims_;
  std::vector<Entry> entries_;
  std::map<std::string, std::size_t> index_;
  int adam_t_ = 0;
};

/// Per-thread gradient accumulator keyed by parameter name; reduced into the
/// store in a fixed order so batch-parallel training stays deterministic.
class GradSink {
 public:
  void accumulate(const std::string& name, const Mat& grad);
  void reduce_into(ParameterStore& store) const;
  const Mat* find(const std::string& name) const;
  void clear() { grads_.clear(); }

 private:
  std::map<std::string, Mat> grads_;
};

}  // namespace ddinet
