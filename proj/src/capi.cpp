#include "chainrta.h"

#include <cstring>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>

#include "assign.hpp"
#include "gen.hpp"
#include "json_io.hpp"
#include "model.hpp"
#include "rta.hpp"
#include "sim.hpp"
#include "sweep.hpp"

struct chainrta_system {
  chainrta::SystemSpec spec;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

chainrta_status fail(chainrta_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
chainrta_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    return fail(CHAINRTA_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CHAINRTA_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CHAINRTA_ERROR_INTERNAL, e.what());
  }
}

chainrta_status require_valid(const chainrta::SystemSpec& spec) {
  const auto violations = chainrta::validate(spec);
  if (violations.empty()) return CHAINRTA_OK;
  std::string message = "invalid system: " + violations.front();
  if (violations.size() > 1)
    message += " (+" + std::to_string(violations.size() - 1) + " more)";
  return fail(CHAINRTA_ERROR_VALIDATION, message);
}

}  // namespace

extern "C" {

const char* chainrta_version(void) { return "1.0.0"; }

const char* chainrta_last_error(void) { return g_last_error.c_str(); }

chainrta_status chainrta_system_parse(const char* json_text,
                                      chainrta_system** out_system) {
  if (json_text == nullptr || out_system == nullptr)
    return fail(CHAINRTA_ERROR_INVALID_ARGUMENT, "null argument");
  *out_system = nullptr;
  return guarded([&]() {
    try {
      auto* handle = new chainrta_system{chainrta::system_from_json_text(json_text)};
      *out_system = handle;
      return CHAINRTA_OK;
    } catch (const std::invalid_argument& e) {
      return fail(CHAINRTA_ERROR_PARSE, e.what());
    }
  });
}

void chainrta_system_destroy(chainrta_system* system) { delete system; }

chainrta_status chainrta_system_to_json(const chainrta_system* system,
                                        char** out_json) {
  if (system == nullptr || out_json == nullptr)
    return fail(CHAINRTA_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    *out_json = dup_string(chainrta::system_to_json_text(system->spec));
    return CHAINRTA_OK;
  });
}

chainrta_status chainrta_system_validate(const chainrta_system* system,
                                         char** out_json) {
  if (system == nullptr || out_json == nullptr)
    return fail(CHAINRTA_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    *out_json = dup_string(
        chainrta::violations_to_json_text(chainrta::validate(system->spec)));
    return CHAINRTA_OK;
  });
}

chainrta_status chainrta_analyze(const chainrta_system* system, const char* method,
                                 char** out_json, int* out_all_schedulable) {
  if (system == nullptr || method == nullptr || out_json == nullptr)
    return fail(CHAINRTA_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() -> chainrta_status {
    const auto parsed = chainrta::method_from_string(method);
    if (!parsed)
      return fail(CHAINRTA_ERROR_INVALID_ARGUMENT,
                  std::string("unknown method '") + method + "'");
    if (const auto status = require_valid(system->spec); status != CHAINRTA_OK)
      return status;

    chainrta::SystemSpec spec = system->spec;
    if (chainrta::method_is_priority_driven(*parsed))
      chainrta::apply_chain_aware_priorities(spec);
    const auto verdicts =
        chainrta::analyze_system(spec, chainrta::config_for_method(*parsed));
    bool all = true;
    for (const auto& v : verdicts) all = all && v.schedulable;
    if (out_all_schedulable != nullptr) *out_all_schedulable = all ? 1 : 0;
    *out_json = dup_string(chainrta::verdicts_to_json_text(verdicts, method));
    return CHAINRTA_OK;
  });
}

chainrta_status chainrta_simulate(const chainrta_system* system,
                                  const char* config_json, char** out_json,
                                  char** out_trace_text) {
  if (system == nullptr || config_json == nullptr || out_json == nullptr)
    return fail(CHAINRTA_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() -> chainrta_status {
    chainrta::SimConfig cfg;
    try {
      cfg = chainrta::sim_config_from_json_text(config_json);
    } catch (const std::invalid_argument& e) {
      return fail(CHAINRTA_ERROR_PARSE, e.what());
    }
    if (const auto status = require_valid(system->spec); status != CHAINRTA_OK)
      return status;
    if (out_trace_text != nullptr) cfg.collect_trace = true;

    chainrta::SystemSpec spec = system->spec;
    bool priority_driven = cfg.scheme_override == chainrta::Scheme::priority_driven;
    if (!cfg.scheme_override)
      for (const auto& exec : spec.executors)
        priority_driven = priority_driven ||
                          exec.scheme == chainrta::Scheme::priority_driven;
    if (priority_driven) chainrta::apply_chain_aware_priorities(spec);

    const chainrta::SimResult result = chainrta::simulate(spec, cfg);
    *out_json = dup_string(chainrta::sim_result_to_json_text(result));
    if (out_trace_text != nullptr)
      *out_trace_text = dup_string(chainrta::trace_to_text(result.trace));
    return CHAINRTA_OK;
  });
}

chainrta_status chainrta_generate(const char* params_json, int threads,
                                  const char* scheme, char** out_system_json) {
  if (params_json == nullptr || scheme == nullptr || out_system_json == nullptr)
    return fail(CHAINRTA_ERROR_INVALID_ARGUMENT, "null argument");
  if (threads < 1)
    return fail(CHAINRTA_ERROR_INVALID_ARGUMENT, "threads must be >= 1");
  return guarded([&]() -> chainrta_status {
    chainrta::GenParams params;
    try {
      params = chainrta::gen_params_from_json_text(params_json);
    } catch (const std::invalid_argument& e) {
      return fail(CHAINRTA_ERROR_PARSE, e.what());
    }
    chainrta::Scheme parsed_scheme;
    if (std::string(scheme) == "standard")
      parsed_scheme = chainrta::Scheme::standard;
    else if (std::string(scheme) == "priority_driven")
      parsed_scheme = chainrta::Scheme::priority_driven;
    else
      return fail(CHAINRTA_ERROR_INVALID_ARGUMENT,
                  std::string("unknown scheme '") + scheme + "'");
    const auto system = chainrta::make_single_executor_system(
        chainrta::generate_chain_set(params), threads, parsed_scheme);
    *out_system_json = dup_string(chainrta::system_to_json_text(system));
    return CHAINRTA_OK;
  });
}

chainrta_status chainrta_sweep(const char* sweep_json, char** out_csv) {
  if (sweep_json == nullptr || out_csv == nullptr)
    return fail(CHAINRTA_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() -> chainrta_status {
    chainrta::SweepSpec spec;
    try {
      spec = chainrta::sweep_spec_from_json_text(sweep_json);
    } catch (const std::invalid_argument& e) {
      return fail(CHAINRTA_ERROR_PARSE, e.what());
    }
    *out_csv = dup_string(chainrta::sweep_to_csv(chainrta::run_sweep(spec)));
    return CHAINRTA_OK;
  });
}

void chainrta_string_destroy(char* text) { delete[] text; }

}  // extern "C"
