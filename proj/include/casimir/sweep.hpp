#pragma once

// Grid evaluation of a RunConfig over a bounded worker pool. Rows come back
// in lexicographic sweep order (first axis outermost) whatever the schedule.

#include <string>
#include <variant>
#include <vector>

#include "casimir/apparatus.hpp"
#include "casimir/run_config.hpp"

namespace casimir {

using Cell = std::variant<double, long long, std::string>;

struct SweepResultRow {
  std::vector<Cell> cells;  // aligned with SweepResult::columns
  bool ok = true;
  std::string error;  // message when !ok
};

struct SweepResult {
  std::vector<std::string> columns;  // every name ends in a unit suffix
  std::vector<SweepResultRow> rows;
  bool all_ok() const;
};

// Materials resolved once per run (tables are loaded from disk).
struct MaterialSet {
  DielectricModel drude_gold;
  DielectricModel plasma_gold;
  DielectricModel tabulated_gold;  // vacuum unless a tabulated model is requested
  DielectricModel silicon;

  const DielectricModel& gold(ModelChoice choice) const;
};

// Throws ConfigError when a table cannot be read.
MaterialSet load_materials(const RunConfig& cfg);

// Column names for cfg's mode and sweeps.
std::vector<std::string> result_columns(const RunConfig& cfg);

// workers <= 0 selects std::thread::hardware_concurrency().
SweepResult run_sweep(const RunConfig& cfg, int workers = 0);

}  // namespace casimir
