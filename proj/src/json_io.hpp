#pragma once

#include <string>
#include <vector>

#include "gen.hpp"
#include "model.hpp"
#include "rta.hpp"
#include "sim.hpp"
#include "sweep.hpp"

namespace chainrta {

// Canonical JSON interchange for systems, analysis reports, simulation
// results, generator parameters and sweep specifications. All time values
// are integers. Parsers throw std::invalid_argument with an entity-level
// message on malformed input; serializers emit a stable field order so equal
// inputs yield byte-identical documents.

SystemSpec system_from_json_text(const std::string& text);
std::string system_to_json_text(const SystemSpec& system);

SimConfig sim_config_from_json_text(const std::string& text);
std::string sim_result_to_json_text(const SimResult& result);

GenParams gen_params_from_json_text(const std::string& text);
SweepSpec sweep_spec_from_json_text(const std::string& text);

std::string verdicts_to_json_text(const std::vector<AnalysisVerdict>& verdicts,
                                  const std::string& method_name);
std::string violations_to_json_text(const std::vector<std::string>& violations);

}  // namespace chainrta
