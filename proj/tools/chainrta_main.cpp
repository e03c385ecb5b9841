// chainrta command-line front end. Talks to the core exclusively through the
// C API of libchainrta; JSON plumbing for flag merging is local to the tool.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "chainrta.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUnschedulable = 1;
constexpr int kExitInputError = 2;

std::string resolve_out_path(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("CHAINRTA_OUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  std::string resolved(dir);
  if (resolved.back() != '/') resolved += '/';
  return resolved + path;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return true;
  }
  const std::string resolved = resolve_out_path(out_path);
  std::ofstream out(resolved, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << resolved << "'\n";
    return false;
  }
  out << text;
  return true;
}

int report_api_error(const char* what) {
  std::cerr << "error: " << what << ": " << chainrta_last_error() << "\n";
  return kExitInputError;
}

struct SystemHandle {
  chainrta_system* ptr = nullptr;
  ~SystemHandle() { chainrta_system_destroy(ptr); }
};

struct ApiString {
  char* ptr = nullptr;
  ~ApiString() { chainrta_string_destroy(ptr); }
  std::string str() const { return ptr == nullptr ? std::string() : ptr; }
};

int load_system(const std::string& path, SystemHandle& handle) {
  const auto text = read_file(path);
  if (!text) {
    std::cerr << "error: cannot read '" << path << "'\n";
    return kExitInputError;
  }
  if (chainrta_system_parse(text->c_str(), &handle.ptr) != CHAINRTA_OK)
    return report_api_error("parse");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Response-time analysis and simulation of callback chains on "
               "multi-threaded non-preemptive executors"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string out_path;
  std::string method = "PWA_CD";
  std::string scheme;
  std::string offsets = "synchronous";
  std::string trace_path;
  std::string params_path;
  std::string sweep_path;
  long long horizon = 0;
  long long seed = 0;
  bool adversarial = false;
  bool check_invariants = false;
  int threads = 4;
  std::string gen_scheme = "standard";
  Json gen_overrides = Json::object();

  auto* validate_cmd = app.add_subcommand("validate", "Check a system spec");
  validate_cmd->add_option("spec", spec_path, "System JSON file")->required();
  validate_cmd->add_option("--out", out_path, "Output file (default stdout)");

  auto* analyze_cmd = app.add_subcommand("analyze", "Compute response-time bounds");
  analyze_cmd->add_option("spec", spec_path, "System JSON file")->required();
  analyze_cmd->add_option("--method", method,
                          "PWA_CD | PPWA_CD | PWA_AD | PPWA_AD");
  analyze_cmd->add_option("--out", out_path, "Output file (default stdout)");

  auto* simulate_cmd = app.add_subcommand("simulate", "Run the executor simulator");
  simulate_cmd->add_option("spec", spec_path, "System JSON file")->required();
  simulate_cmd->add_option("--horizon", horizon, "Simulated time units")->required();
  simulate_cmd->add_option("--seed", seed, "Seed for randomized offsets");
  simulate_cmd->add_option("--scheme", scheme,
                           "Override executor scheme (standard | priority_driven)");
  simulate_cmd->add_option("--offsets", offsets, "synchronous | randomized");
  simulate_cmd->add_flag("--adversarial-budget", adversarial,
                         "Worst-case reservation alignment");
  simulate_cmd->add_flag("--check-invariants", check_invariants,
                         "Enable online semantic checks");
  simulate_cmd->add_option("--trace", trace_path, "Write the event trace here");
  simulate_cmd->add_option("--out", out_path, "Output file (default stdout)");

  auto* generate_cmd = app.add_subcommand("generate", "Generate a random chain set");
  generate_cmd->add_option("--params", params_path, "Generator params JSON file");
  generate_cmd->add_option("--chains", [&](const CLI::results_t& r) {
    gen_overrides["chain_count"] = std::stoll(r[0]); return true; }, "Chain count");
  generate_cmd->add_option("--callbacks", [&](const CLI::results_t& r) {
    gen_overrides["callbacks_per_chain"] = std::stoll(r[0]); return true; },
    "Callbacks per chain");
  generate_cmd->add_option("--utilization", [&](const CLI::results_t& r) {
    gen_overrides["total_utilization"] = std::stod(r[0]); return true; },
    "Total utilization");
  generate_cmd->add_option("--period-min", [&](const CLI::results_t& r) {
    gen_overrides["period_min"] = std::stoll(r[0]); return true; }, "Shortest period");
  generate_cmd->add_option("--period-max", [&](const CLI::results_t& r) {
    gen_overrides["period_max"] = std::stoll(r[0]); return true; }, "Longest period");
  generate_cmd->add_option("--deadline-mode", [&](const CLI::results_t& r) {
    gen_overrides["deadline_mode"] = r[0]; return true; },
    "equal_period | scaled");
  generate_cmd->add_option("--deadline-factor", [&](const CLI::results_t& r) {
    gen_overrides["deadline_factor"] = std::stod(r[0]); return true; },
    "Deadline scale factor");
  generate_cmd->add_option("--seed", [&](const CLI::results_t& r) {
    gen_overrides["seed"] = std::stoll(r[0]); return true; }, "Generator seed");
  generate_cmd->add_option("--threads", threads, "Worker threads of the executor");
  generate_cmd->add_option("--scheme", gen_scheme, "standard | priority_driven");
  generate_cmd->add_option("--out", out_path, "Output file (default stdout)");

  auto* sweep_cmd = app.add_subcommand("sweep", "Run a schedulability-ratio sweep");
  sweep_cmd->add_option("sweep", sweep_path, "Sweep spec JSON file")->required();
  sweep_cmd->add_option("--out", out_path, "Output CSV file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (validate_cmd->parsed()) {
    SystemHandle system;
    if (const int rc = load_system(spec_path, system); rc != kExitOk) return rc;
    ApiString report;
    if (chainrta_system_validate(system.ptr, &report.ptr) != CHAINRTA_OK)
      return report_api_error("validate");
    if (!write_output(report.str(), out_path)) return kExitInputError;
    const bool valid = Json::parse(report.str()).at("valid").get<bool>();
    return valid ? kExitOk : kExitUnschedulable;
  }

  if (analyze_cmd->parsed()) {
    SystemHandle system;
    if (const int rc = load_system(spec_path, system); rc != kExitOk) return rc;
    ApiString report;
    int all_schedulable = 0;
    if (chainrta_analyze(system.ptr, method.c_str(), &report.ptr, &all_schedulable) !=
        CHAINRTA_OK)
      return report_api_error("analyze");
    if (!write_output(report.str(), out_path)) return kExitInputError;
    return all_schedulable ? kExitOk : kExitUnschedulable;
  }

  if (simulate_cmd->parsed()) {
    SystemHandle system;
    if (const int rc = load_system(spec_path, system); rc != kExitOk) return rc;
    Json cfg;
    cfg["horizon"] = horizon;
    cfg["seed"] = seed;
    cfg["offsets"] = offsets;
    if (!scheme.empty()) cfg["scheme"] = scheme;
    cfg["adversarial_budget_alignment"] = adversarial;
    cfg["check_invariants"] = check_invariants;
    ApiString report;
    ApiString trace;
    const auto status =
        chainrta_simulate(system.ptr, cfg.dump().c_str(), &report.ptr,
                          trace_path.empty() ? nullptr : &trace.ptr);
    if (status != CHAINRTA_OK) return report_api_error("simulate");
    if (!trace_path.empty() && !write_output(trace.str(), trace_path))
      return kExitInputError;
    if (!write_output(report.str(), out_path)) return kExitInputError;
    return kExitOk;
  }

  if (generate_cmd->parsed()) {
    Json params = Json::object();
    if (!params_path.empty()) {
      const auto text = read_file(params_path);
      if (!text) {
        std::cerr << "error: cannot read '" << params_path << "'\n";
        return kExitInputError;
      }
      params = Json::parse(*text, nullptr, false);
      if (params.is_discarded()) {
        std::cerr << "error: '" << params_path << "' is not valid JSON\n";
        return kExitInputError;
      }
    }
    for (const auto& [key, value] : gen_overrides.items()) params[key] = value;
    ApiString system_json;
    if (chainrta_generate(params.dump().c_str(), threads, gen_scheme.c_str(),
                          &system_json.ptr) != CHAINRTA_OK)
      return report_api_error("generate");
    if (!write_output(system_json.str(), out_path)) return kExitInputError;
    return kExitOk;
  }

  if (sweep_cmd->parsed()) {
    const auto text = read_file(sweep_path);
    if (!text) {
      std::cerr << "error: cannot read '" << sweep_path << "'\n";
      return kExitInputError;
    }
    ApiString csv;
    if (chainrta_sweep(text->c_str(), &csv.ptr) != CHAINRTA_OK)
      return report_api_error("sweep");
    if (!write_output(csv.str(), out_path)) return kExitInputError;
    return kExitOk;
  }

  return kExitInputError;
}
