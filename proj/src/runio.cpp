#include "ddinet/runio.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ddinet/common.hpp"
#include "ddinet/stats.hpp"

namespace ddinet {

const char* tool_version() { return "ddinet 0.1.0"; }

std::string make_run_dir(const std::string& base, const TrainConfig& cfg) {
  const auto now = std::chrono::system_clock::now();
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch());
  std::ostringstream name;
  name << secs.count() << "-" << to_hex(cfg.hash());
  const auto dir = std::filesystem::path(base) / name.str();
  std::filesystem::create_directories(dir);
  return dir.string();
}

std::uint64_t file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot hash missing file: " + path);
  std::uint64_t h = kFnvOffset;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    h = fnv1a(buf, static_cast<std::size_t>(in.gcount()), h);
  }
  return h;
}

void write_manifest(const std::string& run_dir, const TrainConfig& cfg,
                    const std::vector<std::string>& input_files) {
  nlohmann::json m;
  m["version"] = tool_version();
  m["config_hash"] = to_hex(cfg.hash());
  m["config"] = cfg.serialize();
  nlohmann::json files = nlohmann::json::object();
  for (const auto& f : input_files) files[f] = to_hex(file_hash(f));
  m["inputs"] = files;
  std::ofstream out(std::filesystem::path(run_dir) / "manifest.json");
  out << m.dump(2) << "\n";
}

void write_metrics_json(const std::string& path, const std::vector<FoldMetricsEntry>& folds) {
  nlohmann::json j;
  nlohmann::json arr = nlohmann::json::array();
  std::vector<double> acc, f1, pr, kappa;
  for (const auto& f : folds) {
    arr.push_back({{"fold", f.fold_id},
                   {"acc", f.metrics.acc},
                   {"macro_f1", f.metrics.macro_f1},
                   {"pr_auc", f.metrics.pr_auc},
                   {"kappa", f.metrics.kappa},
                   {"gamma", f.gamma},
                   {"best_epoch", f.best_epoch},
                   {"warnings", f.metrics.warnings}});
    acc.push_back(f.metrics.acc);
    f1.push_back(f.metrics.macro_f1);
    pr.push_back(f.metrics.pr_auc);
    kappa.push_back(f.metrics.kappa);
  }
  j["folds"] = arr;
  auto agg = [&](const std::vector<double>& v) {
    return nlohmann::json{{"mean", mean(v)}, {"std", sample_std(v)}};
  };
  j["aggregate"] = {{"acc", agg(acc)}, {"macro_f1", agg(f1)}, {"pr_auc", agg(pr)},
                    {"kappa", agg(kappa)}};
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << "\n";
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  for (const auto& l : lines) out << l << "\n";
}

void write_fidelity_csv(const std::string& path, const std::vector<FidelityRow>& rows) {
  std::vector<std::string> lines{"sparsity,fidelity_plus,fidelity_minus"};
  for (const auto& r : rows) {
    std::ostringstream s;
    s << r.sparsity << ',' << r.fid_plus << ',' << r.fid_minus;
    lines.push_back(s.str());
  }
  write_lines(path, lines);
}

namespace {

void svg_header(std::ostream& out, int w, int h, const std::string& title) {
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n";
  out << "<text x='10' y='18' font-size='14' font-family='sans-serif'>" << title << "</text>\n";
}

}  // namespace

void write_bar_chart_svg(const std::string& path, const std::string& title,
                         const std::vector<std::pair<std::string, double>>& bars) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  const int w = 560, h = 60 + static_cast<int>(bars.size()) * 26;
  double vmax = 1e-12;
  for (const auto& [label, v] : bars) vmax = std::max(vmax, std::fabs(v));
  svg_header(out, w, h, title);
  int y = 40;
  for (const auto& [label, v] : bars) {
    const int len = static_cast<int>(360.0 * std::fabs(v) / vmax);
    out << "<text x='10' y='" << y + 12 << "' font-size='11' font-family='sans-serif'>" << label
        << "</text>\n";
    out << "<rect x='150' y='" << y << "' width='" << len
        << "' height='16' fill='#3b6ea5'/>\n";
    out << "<text x='" << 155 + len << "' y='" << y + 12 << "' font-size='11'>" << v
        << "</text>\n";
    y += 26;
  }
  out << "</svg>\n";
}

void write_fidelity_svg(const std::string& path, const std::vector<FidelityRow>& rows) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  const int w = 480, h = 320;
  svg_header(out, w, h, "fidelity vs sparsity");
  double vmax = 1e-12;
  for (const auto& r : rows) vmax = std::max({vmax, std::fabs(r.fid_plus), std::fabs(r.fid_minus)});
  auto x_of = [&](double s) { return 60 + (s - 0.5) / 0.4 * 360.0; };
  auto y_of = [&](double v) { return 280.0 - (v / vmax) * 220.0; };
  auto polyline = [&](auto get, const char* colour) {
    out << "<polyline fill='none' stroke='" << colour << "' stroke-width='2' points='";
    for (const auto& r : rows) out << x_of(r.sparsity) << "," << y_of(get(r)) << " ";
    out << "'/>\n";
  };
  polyline([](const FidelityRow& r) { return r.fid_plus; }, "#a53b3b");
  polyline([](const FidelityRow& r) { return r.fid_minus; }, "#3b6ea5");
  out << "<text x='70' y='300' font-size='11'>sparsity 0.5 - 0.9; red: fid+, blue: fid-</text>\n";
  out << "</svg>\n";
}

}  // namespace ddinet
