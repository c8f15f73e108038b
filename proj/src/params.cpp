#include "ddinet/params.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "ddinet/common.hpp"

namespace ddinet {

namespace {
constexpr char kMagic[4] = {'D', 'D', 'N', 'T'};
constexpr std::uint32_t kVersion = 1;
}  // namespace

Mat& ParameterStore::add(const std::string& name, std::size_t rows, std::size_t cols,
                         bool zero_init) {
  if (rows == 0 || cols == 0) throw InputError("parameter '" + name + "' has an empty shape");
  Entry e;
  e.name = name;
  e.value = Mat(rows, cols);
  e.grad = Mat(rows, cols);
  e.adam_m = Mat(rows, cols);
  e.adam_v = Mat(rows, cols);
  if (!zero_init) {
    // Glorot-uniform, seeded per parameter name so shapes and ablations do
    // not shift other groups' initial values.
    Rng rng = make_rng(cfg_.seed, name);
    const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
    std::uniform_real_distribution<double> u(-limit, limit);
    for (double& v : e.value.d) v = u(rng);
  }
  index_[name] = entries_.size();
  entries_.push_back(std::move(e));
  return entries_.back().value;
}

ParameterStore::ParameterStore(const TrainConfig& cfg, const ModelDims& dims)
    : cfg_(cfg), dims_(dims) {
  cfg.validate();
  const std::size_t H = cfg.hidden;
  const std::size_t d0 = cfg.entity_embed_width();
  const std::size_t dn = H / static_cast<std::size_t>(cfg.heads);

  if (!cfg.no_tsbkg) {
    add("entity_embed", dims.n_entities, d0, false);
    for (int l = 0; l < cfg.sage_layers; ++l) {
      const std::string p = "sage.l" + std::to_string(l) + ".";
      add(p + "w1", d0, d0, false);
      add(p + "w2", d0, 2 * d0, false);
    }
    for (int l = 0; l < cfg.gt_layers; ++l) {
      const std::string p = "gt.l" + std::to_string(l) + ".";
      for (int n = 0; n < cfg.heads; ++n) {
        const std::string h = p + "h" + std::to_string(n) + ".";
        add(h + "q", dn, H, false);
        add(h + "k", dn, H, false);
        add(h + "v", dn, H, false);
      }
      add(p + "o", H, H, false);
      add(p + "ffn1", H, H, false);
      add(p + "ffn2", H, H, false);
    }
    if (!cfg.mean_pool) {
      add("caspool.wh", H, H, false);
      add("caspool.wb", H, 2 * H, false);
    }
    add("centers", dims.n_entities, H, true);
  }

  if (!cfg.no_hig) {
    for (int l = 0; l < cfg.hig_layers; ++l) {
      const std::string p = "hig.l" + std::to_string(l) + ".";
      const std::size_t in = l == 0 ? cfg.fp_bits : H;
      add(p + "intra", H, in, false);
      // multi-head on all but the final layer; the final layer is single
      // head so its attentions feed the influence pooling directly
      const int heads = l + 1 == cfg.hig_layers ? 1 : cfg.heads;
      const std::size_t out = H / static_cast<std::size_t>(heads);
      for (int n = 0; n < heads; ++n) {
        const std::string h = p + "h" + std::to_string(n) + ".";
        add(h + "inter", out, in, false);
        add(h + "att", 1, 2 * out, false);
      }
    }
  }

  for (int l = 0; l < cfg.mol_layers; ++l)
    add("mol.l" + std::to_string(l) + ".w", H, l == 0 ? 107 : H, false);

  add("fuse.w1", H, 2 * H, false);
  add("fuse.w2", H, H, false);
  add("cls.w", dims.n_relations, 4 * H, false);
}

const Mat& ParameterStore::get(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw InputError("unknown parameter '" + name + "'");
  return entries_[it->second].value;
}

Mat& ParameterStore::mutable_value(const std::string& name) {
  auto it = index_.find(name);
  if (it == index_.end()) throw InputError("unknown parameter '" + name + "'");
  return entries_[it->second].value;
}

Mat& ParameterStore::grad(const std::string& name) {
  auto it = index_.find(name);
  if (it == index_.end()) throw InputError("unknown parameter '" + name + "'");
  return entries_[it->second].grad;
}

std::size_t ParameterStore::num_parameters() const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.value.size();
  return n;
}

void ParameterStore::zero_grads() {
  for (auto& e : entries_) std::fill(e.grad.d.begin(), e.grad.d.end(), 0.0);
}

void ParameterStore::adam_step(double lr, double beta1, double beta2, double eps) {
  ++adam_t_;
  const double bc1 = 1.0 - std::pow(beta1, adam_t_);
  const double bc2 = 1.0 - std::pow(beta2, adam_t_);
  for (auto& e : entries_) {
    for (std::size_t i = 0; i < e.value.size(); ++i) {
      const double g = e.grad.d[i];
      e.adam_m.d[i] = beta1 * e.adam_m.d[i] + (1.0 - beta1) * g;
      e.adam_v.d[i] = beta2 * e.adam_v.d[i] + (1.0 - beta2) * g * g;
      const double mhat = e.adam_m.d[i] / bc1;
      const double vhat = e.adam_v.d[i] / bc2;
      e.value.d[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
  }
}

void ParameterStore::save(const std::string& path, std::uint64_t config_hash) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write checkpoint: " + path);
  out.write(kMagic, 4);
  auto w32 = [&](std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); };
  auto w64 = [&](std::uint64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); };
  w32(kVersion);
  w64(config_hash);
  w64(entries_.size());
  for (const auto& e : entries_) {
    w64(e.name.size());
    out.write(e.name.data(), static_cast<std::streamsize>(e.name.size()));
    w64(e.value.rows);
    w64(e.value.cols);
    out.write(reinterpret_cast<const char*>(e.value.d.data()),
              static_cast<std::streamsize>(e.value.size() * sizeof(double)));
  }
}

void ParameterStore::load(const std::string& path, std::uint64_t config_hash) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open checkpoint: " + path);
  char magic[4];
  in.read(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) throw InputError("not a checkpoint file: " + path);
  auto r32 = [&]() { std::uint32_t v; in.read(reinterpret_cast<char*>(&v), 4); return v; };
  auto r64 = [&]() { std::uint64_t v; in.read(reinterpret_cast<char*>(&v), 8); return v; };
  if (r32() != kVersion) throw InputError("unsupported checkpoint version in " + path);
  const std::uint64_t stored_hash = r64();
  if (stored_hash != config_hash)
    throw InputError("checkpoint config hash mismatch (" + to_hex(stored_hash) + " vs " +
                     to_hex(config_hash) + "); refusing to load " + path);
  const std::uint64_t count = r64();
  if (count != entries_.size()) throw InputError("checkpoint parameter count mismatch: " + path);
  for (auto& e : entries_) {
    const std::uint64_t name_len = r64();
    std::string name(name_len, '\0');
    in.read(name.data(), static_cast<std::streamsize>(name_len));
    if (name != e.name) throw InputError("checkpoint parameter order mismatch at '" + name + "'");
    const std::uint64_t rows = r64(), cols = r64();
    if (rows != e.value.rows || cols != e.value.cols)
      throw InputError("checkpoint shape mismatch for '" + name + "'");
    in.read(reinterpret_cast<char*>(e.value.d.data()),
            static_cast<std::streamsize>(e.value.size() * sizeof(double)));
  }
  if (!in) throw InputError("truncated checkpoint: " + path);
}

void GradSink::accumulate(const std::string& name, const Mat& grad) {
  auto it = grads_.find(name);
  if (it == grads_.end()) {
    grads_.emplace(name, grad);
    return;
  }
  Mat& g = it->second;
  for (std::size_t i = 0; i < g.size(); ++i) g.d[i] += grad.d[i];
}

void GradSink::reduce_into(ParameterStore& store) const {
  for (const auto& [name, g] : grads_) {
    if (!store.has(name)) continue;  // reserved names (entity features) handled separately
    Mat& dst = store.grad(name);
    for (std::size_t i = 0; i < dst.size(); ++i) dst.d[i] += g.d[i];
  }
}

const Mat* GradSink::find(const std::string& name) const {
  auto it = grads_.find(name);
  return it == grads_.end() ? nullptr : &it->second;
}

}  // namespace ddinet
