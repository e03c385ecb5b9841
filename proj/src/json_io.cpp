#include "json_io.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace chainrta {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& message) {
  throw std::invalid_argument(message);
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("JSON parse error: ") + e.what());
  }
}

const Json& field(const Json& j, const char* key, const std::string& ctx) {
  auto it = j.find(key);
  if (it == j.end()) bad(ctx + ": missing field '" + key + "'");
  return *it;
}

std::string req_string(const Json& j, const char* key, const std::string& ctx) {
  const Json& v = field(j, key, ctx);
  if (!v.is_string()) bad(ctx + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

TimeUnit req_int(const Json& j, const char* key, const std::string& ctx) {
  const Json& v = field(j, key, ctx);
  if (!v.is_number_integer()) bad(ctx + ": field '" + key + "' must be an integer");
  return v.get<TimeUnit>();
}

TimeUnit opt_int(const Json& j, const char* key, TimeUnit fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number_integer())
    bad(std::string("field '") + key + "' must be an integer");
  return it->get<TimeUnit>();
}

double opt_double(const Json& j, const char* key, double fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number()) bad(std::string("field '") + key + "' must be a number");
  return it->get<double>();
}

bool opt_bool(const Json& j, const char* key, bool fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_boolean()) bad(std::string("field '") + key + "' must be a boolean");
  return it->get<bool>();
}

Scheme scheme_from_name(const std::string& name, const std::string& ctx) {
  if (name == "standard") return Scheme::standard;
  if (name == "priority_driven") return Scheme::priority_driven;
  bad(ctx + ": unknown scheme '" + name + "'");
}

}  // namespace

SystemSpec system_from_json_text(const std::string& text) {
  const Json root = parse(text);
  if (!root.is_object()) bad("system: top level must be an object");
  SystemSpec system;

  const Json& chains = field(root, "chains", "system");
  if (!chains.is_array()) bad("system: 'chains' must be an array");
  for (const Json& jc : chains) {
    Chain chain;
    chain.id = req_string(jc, "id", "chain");
    const std::string ctx = "chain '" + chain.id + "'";
    chain.priority = static_cast<int>(req_int(jc, "priority", ctx));
    chain.period = req_int(jc, "period", ctx);
    chain.deadline = req_int(jc, "deadline", ctx);
    const Json& callbacks = field(jc, "callbacks", ctx);
    if (!callbacks.is_array() || callbacks.empty())
      bad(ctx + ": 'callbacks' must be a non-empty array");
    int index = 1;
    for (const Json& jcb : callbacks) {
      Callback cb;
      cb.id = req_string(jcb, "id", ctx + " callback");
      const std::string cctx = "callback '" + cb.id + "'";
      cb.wcet = req_int(jcb, "wcet", cctx);
      const std::string kind = req_string(jcb, "kind", cctx);
      if (kind == "timer")
        cb.kind = CallbackKind::timer;
      else if (kind == "regular")
        cb.kind = CallbackKind::regular;
      else
        bad(cctx + ": unknown kind '" + kind + "'");
      cb.priority = static_cast<int>(opt_int(jcb, "priority", 0));
      if (auto it = jcb.find("group"); it != jcb.end()) {
        if (!it->is_string()) bad(cctx + ": field 'group' must be a string");
        cb.group_id = it->get<std::string>();
      }
      cb.chain_id = chain.id;
      cb.index_in_chain = index++;
      chain.callbacks.push_back(std::move(cb));
    }
    chain.trigger = chain.callbacks.front().kind == CallbackKind::timer
                        ? TriggerKind::timer
                        : TriggerKind::event;
    system.chains.push_back(std::move(chain));
  }

  const Json& executors = field(root, "executors", "system");
  if (!executors.is_array() || executors.empty())
    bad("system: 'executors' must be a non-empty array");
  for (const Json& je : executors) {
    ExecutorSpec exec;
    exec.id = req_string(je, "id", "executor");
    const std::string ctx = "executor '" + exec.id + "'";
    if (je.contains("scheme")) exec.scheme = scheme_from_name(req_string(je, "scheme", ctx), ctx);
    const Json& threads = field(je, "threads", ctx);
    if (!threads.is_array() || threads.empty())
      bad(ctx + ": 'threads' must be a non-empty array");
    for (const Json& jt : threads) {
      ThreadReservation r;
      r.budget = req_int(jt, "budget", ctx + " thread");
      r.period = req_int(jt, "period", ctx + " thread");
      exec.threads.push_back(r);
    }
    system.executors.push_back(std::move(exec));
  }

  if (auto it = root.find("groups"); it != root.end()) {
    if (!it->is_array()) bad("system: 'groups' must be an array");
    for (const Json& jg : *it) {
      CallbackGroup group;
      group.id = req_string(jg, "id", "group");
      const std::string ctx = "group '" + group.id + "'";
      const std::string kind = req_string(jg, "kind", ctx);
      if (kind == "reentrant")
        group.kind = GroupKind::reentrant;
      else if (kind == "mutually_exclusive")
        group.kind = GroupKind::mutually_exclusive;
      else
        bad(ctx + ": unknown kind '" + kind + "'");
      const Json& members = field(jg, "members", ctx);
      if (!members.is_array()) bad(ctx + ": 'members' must be an array");
      for (const Json& m : members) {
        if (!m.is_string()) bad(ctx + ": members must be callback ids");
        group.members.push_back(m.get<std::string>());
      }
      system.groups.push_back(std::move(group));
    }
  }

  // Callback-level group shorthand: ensure membership in the named group.
  for (auto& chain : system.chains) {
    for (auto& cb : chain.callbacks) {
      if (!cb.group_id) continue;
      bool found = false;
      for (auto& group : system.groups) {
        if (group.id != *cb.group_id) continue;
        found = true;
        if (!group.contains(cb.id)) group.members.push_back(cb.id);
      }
      if (!found)
        bad("callback '" + cb.id + "': references undeclared group '" + *cb.group_id +
            "'");
    }
  }
  // And the reverse: membership fills in the callback's group id.
  for (const auto& group : system.groups)
    for (const auto& member : group.members)
      for (auto& chain : system.chains)
        for (auto& cb : chain.callbacks)
          if (cb.id == member) cb.group_id = group.id;

  const Json& assignment = field(root, "assignment", "system");
  if (!assignment.is_object()) bad("system: 'assignment' must be an object");
  for (const auto& [cb_id, exec_id] : assignment.items()) {
    if (!exec_id.is_string()) bad("assignment: values must be executor ids");
    system.assignment[cb_id] = exec_id.get<std::string>();
  }

  if (auto it = root.find("propagation"); it != root.end()) {
    if (!it->is_object()) bad("system: 'propagation' must be an object");
    for (const auto& [chain_id, delays] : it->items()) {
      if (!delays.is_array()) bad("propagation: values must be arrays of delays");
      std::vector<TimeUnit> ds;
      for (const Json& d : delays) {
        if (!d.is_number_integer()) bad("propagation: delays must be integers");
        ds.push_back(d.get<TimeUnit>());
      }
      system.propagation[chain_id] = std::move(ds);
    }
  }

  return system;
}

std::string system_to_json_text(const SystemSpec& system) {
  Json root;
  root["chains"] = Json::array();
  for (const auto& chain : system.chains) {
    Json jc;
    jc["id"] = chain.id;
    jc["priority"] = chain.priority;
    jc["period"] = chain.period;
    jc["deadline"] = chain.deadline;
    jc["callbacks"] = Json::array();
    for (const auto& cb : chain.callbacks) {
      Json jcb;
      jcb["id"] = cb.id;
      jcb["wcet"] = cb.wcet;
      jcb["kind"] = to_string(cb.kind);
      if (cb.group_id) jcb["group"] = *cb.group_id;
      jc["callbacks"].push_back(std::move(jcb));
    }
    root["chains"].push_back(std::move(jc));
  }
  root["executors"] = Json::array();
  for (const auto& exec : system.executors) {
    Json je;
    je["id"] = exec.id;
    je["scheme"] = to_string(exec.scheme);
    je["threads"] = Json::array();
    for (const auto& r : exec.threads)
      je["threads"].push_back(Json{{"budget", r.budget}, {"period", r.period}});
    root["executors"].push_back(std::move(je));
  }
  if (!system.groups.empty()) {
    root["groups"] = Json::array();
    for (const auto& group : system.groups) {
      Json jg;
      jg["id"] = group.id;
      jg["kind"] = to_string(group.kind);
      jg["members"] = group.members;
      root["groups"].push_back(std::move(jg));
    }
  }
  root["assignment"] = Json::object();
  for (const auto& [cb_id, exec_id] : system.assignment) root["assignment"][cb_id] = exec_id;
  if (!system.propagation.empty()) {
    root["propagation"] = Json::object();
    for (const auto& [chain_id, delays] : system.propagation)
      root["propagation"][chain_id] = delays;
  }
  return root.dump(2) + "\n";
}

SimConfig sim_config_from_json_text(const std::string& text) {
  const Json root = parse(text);
  if (!root.is_object()) bad("sim config: top level must be an object");
  SimConfig cfg;
  cfg.horizon = req_int(root, "horizon", "sim config");
  cfg.seed = static_cast<std::uint64_t>(opt_int(root, "seed", 0));
  if (auto it = root.find("offsets"); it != root.end()) {
    const std::string name = req_string(root, "offsets", "sim config");
    if (name == "synchronous")
      cfg.offsets = SimConfig::Offsets::synchronous;
    else if (name == "randomized")
      cfg.offsets = SimConfig::Offsets::randomized;
    else
      bad("sim config: unknown offsets mode '" + name + "'");
  }
  if (root.contains("scheme"))
    cfg.scheme_override = scheme_from_name(req_string(root, "scheme", "sim config"),
                                           "sim config");
  cfg.adversarial_budget_alignment =
      opt_bool(root, "adversarial_budget_alignment", false);
  cfg.collect_trace = opt_bool(root, "trace", false);
  cfg.check_invariants = opt_bool(root, "check_invariants", false);
  return cfg;
}

std::string sim_result_to_json_text(const SimResult& result) {
  Json root;
  root["chains"] = Json::object();
  for (const auto& [id, stats] : result.chains) {
    Json js;
    js["released"] = stats.released;
    js["completed"] = stats.completed;
    js["incomplete"] = stats.incomplete;
    js["deadline_misses"] = stats.deadline_misses;
    js["max_response"] = stats.max_response;
    js["p99_response"] = stats.p99_response;
    js["mean_response"] = stats.mean_response;
    root["chains"][id] = std::move(js);
  }
  root["executors"] = Json::object();
  for (const auto& [id, stats] : result.executors) {
    Json js;
    js["readyset_updates"] = stats.readyset_updates;
    js["polling_points"] = stats.polling_points;
    js["processing_windows"] = stats.processing_windows;
    root["executors"][id] = std::move(js);
  }
  if (!result.invariant_violations.empty())
    root["invariant_violations"] = result.invariant_violations;
  return root.dump(2) + "\n";
}

GenParams gen_params_from_json_text(const std::string& text) {
  const Json root = parse(text);
  if (!root.is_object()) bad("generator params: top level must be an object");
  GenParams params;
  params.chain_count = static_cast<int>(opt_int(root, "chain_count", params.chain_count));
  params.callbacks_per_chain =
      static_cast<int>(opt_int(root, "callbacks_per_chain", params.callbacks_per_chain));
  params.total_utilization =
      opt_double(root, "total_utilization", params.total_utilization);
  params.period_min = opt_int(root, "period_min", params.period_min);
  params.period_max = opt_int(root, "period_max", params.period_max);
  if (auto it = root.find("deadline_mode"); it != root.end()) {
    const std::string name = req_string(root, "deadline_mode", "generator params");
    if (name == "equal_period")
      params.deadline_mode = GenParams::DeadlineMode::equal_period;
    else if (name == "scaled")
      params.deadline_mode = GenParams::DeadlineMode::scaled;
    else
      bad("generator params: unknown deadline_mode '" + name + "'");
  }
  params.deadline_factor = opt_double(root, "deadline_factor", params.deadline_factor);
  params.seed = static_cast<std::uint64_t>(opt_int(root, "seed", 0));
  return params;
}

SweepSpec sweep_spec_from_json_text(const std::string& text) {
  const Json root = parse(text);
  if (!root.is_object()) bad("sweep spec: top level must be an object");
  SweepSpec spec;
  const std::string variable = req_string(root, "variable", "sweep spec");
  if (auto v = variable_from_string(variable))
    spec.variable = *v;
  else
    bad("sweep spec: unknown variable '" + variable + "'");
  spec.from = opt_double(root, "from", spec.from);
  spec.to = opt_double(root, "to", spec.to);
  spec.step = opt_double(root, "step", spec.step);
  spec.sets_per_point =
      static_cast<int>(opt_int(root, "sets_per_point", spec.sets_per_point));
  spec.threads = static_cast<int>(opt_int(root, "threads", spec.threads));
  spec.seed = static_cast<std::uint64_t>(opt_int(root, "seed", 1));
  if (auto it = root.find("methods"); it != root.end()) {
    if (!it->is_array()) bad("sweep spec: 'methods' must be an array");
    spec.methods.clear();
    for (const Json& jm : *it) {
      if (!jm.is_string()) bad("sweep spec: methods must be strings");
      if (auto m = method_from_string(jm.get<std::string>()))
        spec.methods.push_back(*m);
      else
        bad("sweep spec: unknown method '" + jm.get<std::string>() + "'");
    }
    if (spec.methods.empty()) bad("sweep spec: 'methods' must not be empty");
  }
  if (auto it = root.find("generator"); it != root.end())
    spec.base = gen_params_from_json_text(it->dump());
  return spec;
}

std::string verdicts_to_json_text(const std::vector<AnalysisVerdict>& verdicts,
                                  const std::string& method_name) {
  Json root;
  if (!method_name.empty()) root["method"] = method_name;
  bool all = true;
  Json list = Json::array();
  for (const auto& v : verdicts) {
    Json jv;
    jv["chain"] = v.chain_id;
    jv["bounded"] = v.finite();
    if (v.finite()) jv["response_time"] = *v.response_time;
    jv["delta"] = v.delta;
    jv["iterations"] = v.iterations;
    jv["schedulable"] = v.schedulable;
    all = all && v.schedulable;
    list.push_back(std::move(jv));
  }
  root["all_schedulable"] = all;
  root["chains"] = std::move(list);
  return root.dump(2) + "\n";
}

std::string violations_to_json_text(const std::vector<std::string>& violations) {
  Json root;
  root["valid"] = violations.empty();
  root["violations"] = violations;
  return root.dump(2) + "\n";
}

}  // namespace chainrta
