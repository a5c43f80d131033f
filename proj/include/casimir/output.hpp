#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "casimir/sweep.hpp"

namespace casimir {

// Column-name unit suffixes accepted in emitted headers.
const std::vector<std::string>& unit_suffixes();
bool has_unit_suffix(const std::string& column);

// `# ...` lines: code version, constants version, resolved config (output
// destination excluded so the file content does not depend on where it goes).
std::vector<std::string> output_preamble(const RunConfig& cfg);

void write_csv(std::ostream& out, const RunConfig& cfg, const SweepResult& result);
// Array of objects keyed by column name.
void write_json(std::ostream& out, const SweepResult& result);

// Writes to cfg.output_path (stdout when empty) in cfg.output_format.
// Throws std::runtime_error when the path cannot be written.
void emit_output(const RunConfig& cfg, const SweepResult& result);

// Minimal gnuplot script plotting the first mode column against the
// innermost swept parameter of a CSV at data_path.
std::string gnuplot_stub(const RunConfig& cfg, const SweepResult& result,
                         const std::string& data_path);

}  // namespace casimir
