#include "ddinet/chem/elements.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>

#include "ddinet/common.hpp"
#include "ddinet/tsv.hpp"

namespace ddinet::chem {

namespace {

// Uniform bin over [lo, hi], clamped at the edges.
std::size_t bin(double v, double lo, double hi, std::size_t nbins) {
  if (v <= lo) return 0;
  if (v >= hi) return nbins - 1;
  auto b = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(nbins));
  return b >= nbins ? nbins - 1 : b;
}

std::string data_file_path(const std::string& name) {
  if (const char* env = std::getenv("DDINET_DATA")) {
    return (std::filesystem::path(env) / name).string();
  }
#ifdef DDINET_DATA_DIR
  return (std::filesystem::path(DDINET_DATA_DIR) / name).string();
#else
  return (std::filesystem::path("data") / name).string();
#endif
}

}  // namespace

ElementTable ElementTable::load(const std::string& path) {
  ElementTable t;
  for_each_tsv_row(path, /*skip_header=*/true,
                   [&](std::size_t line_no, const std::vector<std::string>& f) {
                     if (f.size() != 11)
                       throw InputError(path + ":" + std::to_string(line_no) +
                                        ": expected 11 columns in element table");
                     ElementInfo e;
                     e.symbol = f[0];
                     e.z = std::stoi(f[1]);
                     e.group = std::stoi(f[2]);
                     e.period = std::stoi(f[3]);
                     e.electronegativity = std::stod(f[4]);
                     e.covalent_radius_pm = std::stod(f[5]);
                     e.valence_electrons = std::stoi(f[6]);
                     e.first_ionization_ev = std::stod(f[7]);
                     e.electron_affinity_ev = std::stod(f[8]);
                     e.block = f[9][0];
                     e.atomic_volume_cm3 = std::stod(f[10]);
                     t.by_z_[e.z] = e;
                     t.z_by_symbol_[e.symbol] = e.z;
                   });
  return t;
}

const ElementTable& ElementTable::bundled() {
  static const ElementTable table = load(data_file_path("element_properties.tsv"));
  return table;
}

const ElementInfo& ElementTable::info(int z) const {
  auto it = by_z_.find(z);
  if (it == by_z_.end())
    throw InputError("element Z=" + std::to_string(z) + " is not in the element table");
  return it->second;
}

const ElementInfo* ElementTable::by_symbol(const std::string& symbol) const {
  auto it = z_by_symbol_.find(symbol);
  return it == z_by_symbol_.end() ? nullptr : &by_z_.at(it->second);
}

std::vector<double> ElementTable::encode(int z) const {
  const ElementInfo& e = info(z);
  std::vector<double> v(kEncodingWidth, 0.0);
  std::size_t off = 0;
  auto onehot = [&](std::size_t idx, std::size_t width) {
    v[off + (idx < width ? idx : width - 1)] = 1.0;
    off += width;
  };
  onehot(static_cast<std::size_t>(e.group - 1), 18);
  onehot(static_cast<std::size_t>(e.period - 1), 9);
  onehot(bin(e.electronegativity, 0.5, 4.0, 10), 10);
  onehot(bin(e.covalent_radius_pm, 25.0, 250.0, 10), 10);
  onehot(static_cast<std::size_t>(e.valence_electrons - 1), 12);
  onehot(bin(e.first_ionization_ev, 3.0, 25.0, 10), 10);
  onehot(bin(e.electron_affinity_ev, -3.0, 3.7, 10), 10);
  const std::size_t block_idx = e.block == 's' ? 0 : e.block == 'p' ? 1 : e.block == 'd' ? 2 : 3;
  onehot(block_idx, 4);
  onehot(bin(e.atomic_volume_cm3, 3.0, 50.0, 9), 9);
  return v;
}

double ElementTable::bond_length(int z1, int z2, double order_factor) const {
  const double r = (info(z1).covalent_radius_pm + info(z2).covalent_radius_pm) / 100.0;
  return r * order_factor;
}

}  // namespace ddinet::chem
