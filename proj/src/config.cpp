#include "ddinet/config.hpp"

#include <fstream>
#include <sstream>

#include "ddinet/common.hpp"
#include "ddinet/pairgraph.hpp"

namespace ddinet {

std::size_t TrainConfig::entity_embed_width() const {
  const std::size_t extras = 2 * distance_onehot_width(k) + kNumEntityClasses;
  if (hidden <= extras + 4)
    throw InputError("hidden width " + std::to_string(hidden) +
                     " too small for k=" + std::to_string(k) +
                     " (needs > " + std::to_string(extras + 4) + ")");
  return hidden - extras;
}

std::string TrainConfig::serialize() const {
  std::ostringstream o;
  o << "k = " << k << "\n";
  o << "node_cap = " << node_cap << "\n";
  o << "hidden = " << hidden << "\n";
  o << "sage_layers = " << sage_layers << "\n";
  o << "gt_layers = " << gt_layers << "\n";
  o << "hig_layers = " << hig_layers << "\n";
  o << "mol_layers = " << mol_layers << "\n";
  o << "heads = " << heads << "\n";
  o << "gt_self_loops = " << (gt_self_loops ? 1 : 0) << "\n";
  o << "leaky_slope = " << leaky_slope << "\n";
  o << "fp_bits = " << fp_bits << "\n";
  o << "fp_radius = " << fp_radius << "\n";
  o << "beta = " << beta << "\n";
  o << "gamma_ratio = " << gamma_ratio << "\n";
  o << "epochs = " << epochs << "\n";
  o << "batch_size = " << batch_size << "\n";
  o << "learning_rate = " << learning_rate << "\n";
  o << "patience = " << patience << "\n";
  o << "seed = " << seed << "\n";
  o << "n_folds = " << n_folds << "\n";
  o << "fold_mode = " << fold_mode_label(fold_mode) << "\n";
  o << "no_tsbkg = " << (no_tsbkg ? 1 : 0) << "\n";
  o << "no_hig = " << (no_hig ? 1 : 0) << "\n";
  o << "mean_pool = " << (mean_pool ? 1 : 0) << "\n";
  o << "no_infomin = " << (no_infomin ? 1 : 0) << "\n";
  o << "threads = " << threads << "\n";
  return o.str();
}

std::uint64_t TrainConfig::hash() const { return fnv1a(serialize()); }

namespace {

bool parse_bool(const std::string& v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw InputError("expected a boolean, got '" + v + "'");
}

}  // namespace

void TrainConfig::apply_override(const std::string& key, const std::string& value) {
  try {
    if (key == "k") k = std::stoi(value);
    else if (key == "node_cap") node_cap = std::stoul(value);
    else if (key == "hidden") hidden = std::stoul(value);
    else if (key == "sage_layers") sage_layers = std::stoi(value);
    else if (key == "gt_layers") gt_layers = std::stoi(value);
    else if (key == "hig_layers") hig_layers = std::stoi(value);
    else if (key == "mol_layers") mol_layers = std::stoi(value);
    else if (key == "heads") heads = std::stoi(value);
    else if (key == "gt_self_loops") gt_self_loops = parse_bool(value);
    else if (key == "leaky_slope") leaky_slope = std::stod(value);
    else if (key == "fp_bits") fp_bits = std::stoul(value);
    else if (key == "fp_radius") fp_radius = std::stoi(value);
    else if (key == "beta") beta = std::stod(value);
    else if (key == "gamma_ratio") gamma_ratio = std::stod(value);
    else if (key == "epochs") epochs = std::stoi(value);
    else if (key == "batch_size") batch_size = std::stoul(value);
    else if (key == "learning_rate") learning_rate = std::stod(value);
    else if (key == "patience") patience = std::stoi(value);
    else if (key == "seed") seed = std::stoull(value);
    else if (key == "n_folds") n_folds = std::stoi(value);
    else if (key == "fold_mode") fold_mode = fold_mode_from_label(value);
    else if (key == "no_tsbkg") no_tsbkg = parse_bool(value);
    else if (key == "no_hig") no_hig = parse_bool(value);
    else if (key == "mean_pool") mean_pool = parse_bool(value);
    else if (key == "no_infomin") no_infomin = parse_bool(value);
    else if (key == "threads") threads = std::stoi(value);
    else throw InputError("unknown config key '" + key + "'");
  } catch (const std::invalid_argument&) {
    throw InputError("bad value '" + value + "' for config key '" + key + "'");
  } catch (const std::out_of_range&) {
    throw InputError("bad value '" + value + "' for config key '" + key + "'");
  }
}

TrainConfig TrainConfig::from_text(const std::string& text) {
  TrainConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string_view::npos)
      throw InputError("config line " + std::to_string(line_no) + ": expected key = value");
    cfg.apply_override(std::string(trim(t.substr(0, eq))), std::string(trim(t.substr(eq + 1))));
  }
  cfg.validate();
  return cfg;
}

TrainConfig TrainConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

void TrainConfig::validate() const {
  if (k < 0) throw InputError("k must be non-negative");
  if (n_folds < 2) throw InputError("n_folds must be >= 2");
  if (heads < 1 || hidden % static_cast<std::size_t>(heads) != 0)
    throw InputError("heads must divide the hidden width");
  if (sage_layers < 0 || gt_layers < 1 || hig_layers < 1 || mol_layers < 1)
    throw InputError("encoder depths must be positive (sage_layers may be 0)");
  if (beta < 0 || gamma_ratio < 0) throw InputError("beta and gamma_ratio must be >= 0");
  if (batch_size == 0) throw InputError("batch_size must be positive");
  entity_embed_width();  // throws if hidden is too small for k
}

}  // namespace ddinet
