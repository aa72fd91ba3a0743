#pragma once

#include <string>

#include "grandmorrey/config.hpp"
#include "grandmorrey/report.hpp"
#include "grandmorrey/space.hpp"

namespace grandmorrey {

struct RunResult {
  Report report;
  Format format = Format::Json;
  std::string out_path;  // empty means stdout
};

// Dispatches on task = regularity | norms | apply | verify. Echoes the full
// config into the report, stamps version and wall time, and rejects any key
// the chosen task never read.
RunResult run_experiment(const Config& cfg);

// space.kind = interval | cube | cantor | random | file, plus generator
// params and an optional space.snowflake exponent
Space build_space(const Config& cfg);

}  // namespace grandmorrey
