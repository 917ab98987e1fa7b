#pragma once

#include <string>
#include <vector>

#include "avt/scenario.hpp"

namespace avt {

// One JSON object per line.
std::string record_to_json(const InteractionRecord& r);
InteractionRecord record_from_json(const std::string& line);
std::vector<InteractionRecord> read_ledger(const std::string& path);

struct RunReport {
  std::size_t events = 0;
  double n_ratio_max = 0.0;
  ConservationReport conservation;
  double constraint_excess = 0.0;
  TrajectoryReport trajectory;
  std::vector<std::string> violations;
};

RunReport make_report(const SimState& sim, const Scenario& sc);
std::string format_report(const RunReport& r);

// fronts.csv, av.csv, snapshots.csv, ledger.jsonl, functionals.csv, report.txt
void write_outputs(const std::string& dir, const SimState& sim, const Scenario& sc, const RunReport& r);

}  // namespace avt
