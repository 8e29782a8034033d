#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "iipg/iip.hpp"
#include "iipg/sim.hpp"
#include "iipg/validation.hpp"

namespace iipg::cli {

/// Locale-independent decimal text with 15 significant digits.
std::string fmt15(double v);

void write_history_csv(std::ostream& out, const SimResult& result);
void write_ground_track_csv(std::ostream& out, const SimResult& result);
void write_commands_csv(std::ostream& out, const SimResult& result);
void write_summary_json(std::ostream& out, const SimResult& result);
void write_prediction_json(std::ostream& out, const ImpactPrediction& pred);

/// history.csv, summary.json, ground_track.csv, commands.csv under dir.
void write_sim_outputs(const std::filesystem::path& dir, const SimResult& result);

void write_validation_csv(std::ostream& out,
                          const std::vector<validation::SampleResult>& results);

}  // namespace iipg::cli
