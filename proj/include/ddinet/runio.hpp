#pragma once

#include <string>
#include <vector>

#include "ddinet/config.hpp"
#include "ddinet/fidelity.hpp"
#include "ddinet/metrics.hpp"
#include "ddinet/objective.hpp"

namespace ddinet {

/// Run directory named <timestamp>-<confighash> under `base`; created.
std::string make_run_dir(const std::string& base, const TrainConfig& cfg);

/// Manifest beside every command's outputs: config hash, input file hashes,
/// tool version.
void write_manifest(const std::string& run_dir, const TrainConfig& cfg,
                    const std::vector<std::string>& input_files);

std::uint64_t file_hash(const std::string& path);

struct FoldMetricsEntry {
  int fold_id = 0;
  MetricsReport metrics;
  double gamma = 0;
  int best_epoch = 0;
};

/// metrics.json: per fold plus mean and sample standard deviation.
void write_metrics_json(const std::string& path, const std::vector<FoldMetricsEntry>& folds);

void write_lines(const std::string& path, const std::vector<std::string>& lines);

void write_fidelity_csv(const std::string& path, const std::vector<FidelityRow>& rows);

/// Minimal SVG bar chart (labels + values) and line chart for reports.
void write_bar_chart_svg(const std::string& path, const std::string& title,
                         const std::vector<std::pair<std::string, double>>& bars);
void write_fidelity_svg(const std::string& path, const std::vector<FidelityRow>& rows);

const char* tool_version();

}  // namespace ddinet
