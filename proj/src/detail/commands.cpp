#include "detail/commands.hpp"

#include <functional>
#include <map>

#include "detail/dispatch.hpp"

namespace sonet::detail {

namespace {

struct Output {
  int status = kOk;
  json result = json::object();
  std::vector<std::string> summary;
};

using Handler = std::function<Output(const NetDocument&, const json&)>;

Bound bound_of(const json& args) {
  Bound b;
  if (args.contains("bound")) b.max_sequences = args.at("bound").get<std::size_t>();
  if (args.contains("depth")) b.max_depth = args.at("depth").get<std::size_t>();
  if (b.max_sequences == 0 || b.max_depth == 0) throw Error(ErrorCode::InvalidArgument, "bound must be at least 1");
  return b;
}

Marking marking_of(const NetDocument& doc, const json& args) {
  return args.contains("marking") ? node_set(args.at("marking"), "marking") : doc.start_marking();
}

const json& required(const json& args, const char* key) {
  if (!args.contains(key)) throw Error(ErrorCode::InvalidArgument, std::string("missing argument '") + key + "'");
  return args.at(key);
}

std::string class_name(const NetDocument& doc, const Bound& bound, json* detail) {
  switch (doc.kind()) {
    case NetKind::Acyclic: return to_string(classify(doc.acyclic()));
    case NetKind::Csa: return to_string(classify_csa(doc.csa()));
    case NetKind::Bsa: break;
  }
  const auto& b = doc.bsa();
  (*detail)["lower"] = to_string(classify_csa(b.lower()));
  (*detail)["upper"] = to_string(classify_csa(b.upper()));
  return classify_bso(b, bound) ? "BsoNet" : "BsaNet";
}

Output cmd_validate(const NetDocument& doc, const json&) {
  Output o;
  const auto csa = doc.as_csa();
  o.result = {{"valid", true},
              {"kind", to_string(doc.kind())},
              {"name", doc.name},
              {"places", csa.places_and_buffers().size()},
              {"transitions", csa.transitions().size()}};
  o.summary.push_back(std::string(to_string(doc.kind())) + " net" + (doc.name.empty() ? "" : " " + doc.name) +
                      " is valid (" + std::to_string(csa.places_and_buffers().size()) + " places, " +
                      std::to_string(csa.transitions().size()) + " transitions)");
  return o;
}

Output cmd_classify(const NetDocument& doc, const json& args) {
  Output o;
  json detail = json::object();
  const auto name = class_name(doc, bound_of(args), &detail);
  o.result = {{"kind", to_string(doc.kind())}, {"class", name}};
  o.result.update(detail);
  o.summary.push_back(name);
  for (const auto& [k, v] : detail.items()) o.summary.push_back(k + ": " + v.get<std::string>());
  return o;
}

Output cmd_enabled(const NetDocument& doc, const json& args) {
  Output o;
  const auto m = marking_of(doc, args);
  const auto steps = enabled_steps(doc, m);
  json blocked = json::array();
  for (const auto& b : blocked_singletons(doc, m))
    blocked.push_back({{"step", b.step}, {"reason", b.reason}, {"missing", b.missing}});
  o.result = {{"marking", m}, {"steps", steps}, {"count", steps.size()}, {"blocked", blocked}};
  for (const auto& u : steps) o.summary.push_back(format_set(u));
  return o;
}

Output not_enabled(const Error& e) {
  Output o;
  o.status = kPropertyFails;
  o.result = {{"enabled", false}, {"error", to_json(e)}};
  o.summary.push_back(e.what());
  return o;
}

Output cmd_fire(const NetDocument& doc, const json& args) {
  const auto m = marking_of(doc, args);
  const auto u = node_set(required(args, "step"), "step");
  try {
    const auto next = fire(doc, m, u);
    Output o;
    o.result = {{"enabled", true}, {"marking", next}};
    o.summary.push_back(format_set(m) + " " + format_set(u) + " " + format_set(next));
    return o;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::StepNotEnabled) throw;
    return not_enabled(e);
  }
}

Output cmd_run(const NetDocument& doc, const json& args) {
  const auto m = marking_of(doc, args);
  const auto steps = step_list(required(args, "steps"), "steps");
  try {
    const auto mu = run(doc, m, steps);
    Output o;
    o.result = to_json(mu);
    o.summary.push_back(format_mixed(mu));
    return o;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::StepNotEnabled) throw;
    return not_enabled(e);
  }
}

Output behaviour(const NetDocument& doc, const json& args, BehaviourKind kind) {
  Output o;
  const auto r = behaviours(doc, {kind, bound_of(args)});
  json items = json::array();
  for (const auto& s : r.sequences) {
    items.push_back(s);
    o.summary.push_back(s.empty() ? "λ" : format_sequence(s));
  }
  for (const auto& mu : r.mixed) {
    items.push_back(to_json(mu));
    o.summary.push_back(format_mixed(mu));
  }
  for (const auto& m : r.markings) {
    items.push_back(m);
    o.summary.push_back(format_set(m));
  }
  o.result = {{"kind", to_string(kind)}, {"count", items.size()}, {"items", items}, {"truncated", r.truncated}};
  if (r.truncated) {
    o.status = kBoundExceeded;
    o.summary.push_back("(truncated: bound exceeded)");
  }
  return o;
}

Output cmd_behaviours(const NetDocument& doc, const json& args) {
  const auto name = required(args, "kind").get<std::string>();
  const auto kind = behaviour_kind_from_string(name);
  if (!kind) throw Error(ErrorCode::InvalidArgument, "unknown behaviour kind '" + name + "'");
  return behaviour(doc, args, *kind);
}

Output verdict_output(const WellFormedVerdict& v) {
  Output o;
  o.result = to_json(v);
  o.status = v.verdict == Verdict::Ok ? kOk : v.verdict == Verdict::NotOk ? kPropertyFails : kBoundExceeded;
  o.summary.push_back(std::string(to_string(v.verdict)) + (v.message.empty() ? "" : ": " + v.message));
  if (v.double_fill)
    o.summary.push_back("witness " + format_sequence(v.double_fill->sequence) + " fills " + v.double_fill->place +
                        " twice at step " + std::to_string(v.double_fill->step_number));
  if (v.unfireable) o.summary.push_back("transition " + *v.unfireable + " occurs in no step sequence");
  return o;
}

Output cmd_wellformed(const NetDocument& doc, const json& args) { return verdict_output(well_formed(doc, bound_of(args))); }

Output cmd_wf_stepseq(const NetDocument& doc, const json& args) {
  const auto s = step_list(required(args, "steps"), "steps");
  StepSequenceCheck c;
  switch (doc.kind()) {
    case NetKind::Acyclic: c = is_wf_stepseq(doc.acyclic(), s); break;
    case NetKind::Csa: c = csa_is_wf_stepseq(doc.csa(), s); break;
    case NetKind::Bsa:
      bsa_run(doc.bsa(), doc.start_marking(), s);
      c = csa_is_wf_stepseq(doc.as_csa(), s);
      break;
  }
  Output o;
  o.result = {{"well_formed", c.well_formed}};
  if (!c.well_formed) {
    o.status = kPropertyFails;
    o.result["step_number"] = c.step_number;
    o.result["place"] = c.place;
    o.summary.push_back("not well-formed: " + c.place + " filled twice at step " + std::to_string(c.step_number));
  } else {
    o.summary.push_back("well-formed");
  }
  return o;
}

Output cmd_causes(const NetDocument& doc, const json& args) {
  if (doc.kind() != NetKind::Acyclic) throw Error(ErrorCode::InvalidArgument, "causes is defined for acyclic nets");
  const auto t = required(args, "transition").get<std::string>();
  const auto r = causes(doc.acyclic(), t, bound_of(args));
  Output o;
  o.result = {{"target", r.target}, {"causes", r.causes}, {"graph_predecessors", r.graph_predecessors}};
  o.summary.push_back("causes(" + t + ") = " + format_set(r.causes));
  o.summary.push_back("graph predecessors = " + format_set(r.graph_predecessors));
  return o;
}

std::string scenario_line(const json& s) {
  const auto t = s.at("transitions").get<NodeSet>();
  std::string line = "T=" + format_set(t);
  if (s.contains("places")) line += " P=" + format_set(s.at("places").get<NodeSet>());
  if (s.contains("buffers")) line += " Q=" + format_set(s.at("buffers").get<NodeSet>());
  return line;
}

Output cmd_scenarios(const NetDocument& doc, const json& args) {
  const bool maximal = args.value("maximal", false);
  const auto bound = bound_of(args);
  Output o;
  const auto list = scenario_list(doc, maximal, bound);
  o.result = {{"maximal", maximal}, {"count", list.size()}, {"scenarios", list}};
  for (const auto& s : list) o.summary.push_back(scenario_line(s));
  if (doc.kind() == NetKind::Bsa && !maximal) {
    json rejected = json::array();
    for (const auto& r : bsa_scenarios(doc.bsa(), bound).rejected)
      rejected.push_back({{"lower", r.lower_transitions}, {"upper", r.upper_transitions}, {"reason", r.reason}});
    o.result["rejected"] = rejected;
  }
  return o;
}

Output cmd_scenario_of(const NetDocument& doc, const json& args) {
  Output o;
  o.result = induced_scenario(doc, step_list(required(args, "steps"), "steps"));
  o.summary.push_back(scenario_line(o.result));
  return o;
}

Output cmd_coverage(const NetDocument& doc, const json& args) {
  const auto bound = bound_of(args);
  const auto r = doc.kind() == NetKind::Acyclic ? coverage(doc.acyclic(), bound) : csa_coverage(doc.as_csa(), bound);
  json uncovered_arcs = json::array();
  for (const auto& a : r.uncovered_arcs) uncovered_arcs.push_back(json::array({a.from, a.to}));
  Output o;
  o.result = {{"full", r.full()},
              {"covered_places", r.covered_places},
              {"covered_transitions", r.covered_transitions},
              {"uncovered_places", r.uncovered_places},
              {"uncovered_transitions", r.uncovered_transitions},
              {"uncovered_arcs", uncovered_arcs}};
  if (!r.full()) o.status = kPropertyFails;
  o.summary.push_back(r.full() ? "fully covered"
                               : "uncovered places " + format_set(r.uncovered_places) + ", transitions " +
                                     format_set(r.uncovered_transitions));
  return o;
}

Output cmd_syncycles(const NetDocument& doc, const json& args) {
  const auto csa = doc.as_csa();
  std::vector<NodeSet> cycles;
  std::string method;
  if (args.value("direct", false)) {
    cycles = syn_cycles_direct(csa);
    method = "direct";
  } else if (classify_csa(csa) == CsaClass::CsoNet) {
    cycles = syn_cycles(csa);
    method = "cso";
  } else {
    cycles = syn_cycles_csa(csa, bound_of(args));
    method = "scenarios";
  }
  Output o;
  o.result = {{"syn_cycles", cycles}, {"method", method}};
  for (const auto& c : cycles) o.summary.push_back(format_set(c));
  return o;
}

Output cmd_project(const NetDocument& doc, const json& args) {
  const auto csa = doc.as_csa();
  const auto i = required(args, "component").get<std::size_t>();
  Output o;
  if (args.contains("mixed")) {
    const auto items = step_list(args.at("mixed"), "mixed");
    if (items.size() % 2 == 0)
      throw Error(ErrorCode::InvalidArgument, "a mixed sequence alternates markings and steps, starting and ending with a marking");
    MixedStepSequence mu;
    for (std::size_t k = 0; k < items.size(); ++k) (k % 2 ? mu.steps : mu.markings).push_back(items[k]);
    const auto replay = csa_run(csa, mu.markings.front(), mu.steps);
    if (replay.markings != mu.markings)
      throw Error(ErrorCode::NotAStepSequence, "the markings do not match a replay of the steps");
    const auto p = project(csa, i, mu);
    o.result = {{"projection", p}};
    o.summary.push_back(format_sequence(p));
  } else {
    const auto p = project(csa, i, step_list(required(args, "steps"), "steps"));
    o.result = {{"projection", p}};
    o.summary.push_back(p.empty() ? "λ" : format_sequence(p));
  }
  return o;
}

Output cmd_decompose(const NetDocument& doc, const json& args) {
  const auto m = marking_of(doc, args);
  const auto u = node_set(required(args, "step"), "step");
  check_marking(doc, m);
  const auto parts = decompose_step(doc.as_csa(), m, u);
  Output o;
  o.result = {{"decomposition", parts}};
  o.summary.push_back(format_sequence(parts));
  return o;
}

const BsaNet& need_bsa(const NetDocument& doc) {
  if (doc.kind() != NetKind::Bsa) throw Error(ErrorCode::InvalidArgument, "this command needs a bsa-net");
  return doc.bsa();
}

Output cmd_phases(const NetDocument& doc, const json& args) {
  const auto& b = need_bsa(doc);
  Output o;
  json table = json::object();
  auto add = [&](const NodeId& p) {
    const auto& markings = phase(b, p);
    table[p] = markings;
    std::string line = "phase(" + p + ") = {";
    bool first = true;
    for (const auto& m : markings) {
      line += (first ? "" : ",") + format_set(m);
      first = false;
    }
    o.summary.push_back(line + "}");
  };
  if (args.contains("place")) {
    add(args.at("place").get<std::string>());
  } else {
    for (const auto& [p, markings] : b.phases()) add(p);
  }
  o.result = {{"phases", table}};
  return o;
}

Output cmd_bsa_check(const NetDocument& doc, const json& args) {
  const auto& b = need_bsa(doc);
  const auto bound = bound_of(args);
  Output o;
  const bool bso = classify_bso(b, bound);
  const auto v = bsa_is_well_formed(b, bound);
  o = verdict_output(v);
  o.summary.insert(o.summary.begin(), std::string("bso-net: ") + (bso ? "yes" : "no"));
  o.result = {{"valid", true}, {"bso", bso}, {"well_formed", to_json(v)}};
  if (args.contains("marking")) {
    const auto m = node_set(args.at("marking"), "marking");
    const auto pc = is_phase_consistent(b, m, args.value("speculative", false), bound);
    json check = {{"consistent", pc.consistent}, {"speculative", pc.speculative}};
    if (pc.reachable) check["reachable"] = *pc.reachable;
    o.result["phase_consistent"] = check;
    o.summary.push_back(format_set(m) + (pc.consistent ? " is" : " is not") + " phase-consistent" +
                        (pc.speculative ? " (speculative)" : ""));
    if (!pc.consistent || (pc.reachable && !*pc.reachable)) o.status = kPropertyFails;
  }
  return o;
}

Output cmd_export_dot(const NetDocument& doc, const json& args) {
  DotOptions options;
  if (args.contains("marking")) options.marking = node_set(args.at("marking"), "marking");
  if (args.contains("highlight")) options.highlight = node_set(args.at("highlight"), "highlight");
  Output o;
  const auto dot = export_dot(doc, options);
  o.result = {{"dot", dot}};
  o.summary.push_back(dot);
  return o;
}

Output cmd_serialize(const NetDocument& doc, const json&) {
  Output o;
  const auto text = serialize(doc);
  o.result = {{"text", text}};
  o.summary.push_back(text);
  return o;
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"validate", cmd_validate},
      {"classify", cmd_classify},
      {"enabled", cmd_enabled},
      {"fire", cmd_fire},
      {"run", cmd_run},
      {"reach", [](const NetDocument& d, const json& a) { return behaviour(d, a, BehaviourKind::Reach); }},
      {"finreach", [](const NetDocument& d, const json& a) { return behaviour(d, a, BehaviourKind::Finreach); }},
      {"maxsseq", [](const NetDocument& d, const json& a) { return behaviour(d, a, BehaviourKind::Maxsseq); }},
      {"behaviours", cmd_behaviours},
      {"wellformed", cmd_wellformed},
      {"wf-stepseq", cmd_wf_stepseq},
      {"causes", cmd_causes},
      {"scenarios", cmd_scenarios},
      {"scenario-of", cmd_scenario_of},
      {"coverage", cmd_coverage},
      {"syncycles", cmd_syncycles},
      {"project", cmd_project},
      {"decompose", cmd_decompose},
      {"phases", cmd_phases},
      {"bsa-check", cmd_bsa_check},
      {"export-dot", cmd_export_dot},
      {"serialize", cmd_serialize},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, h] : handlers()) out.push_back(name);
    return out;
  }();
  return names;
}

int status_of(const Error& e) {
  switch (e.code()) {
    case ErrorCode::BoundExceeded: return kBoundExceeded;
    case ErrorCode::StepNotEnabled:
    case ErrorCode::NotWellFormed:
    case ErrorCode::TransitionNeverFires:
    case ErrorCode::NoDecomposition:
    case ErrorCode::NotACsoNet: return kPropertyFails;
    default: return kUsage;
  }
}

json run_command(const NetDocument& doc, const std::string& command, const json& args) {
  const auto it = handlers().find(command);
  if (it == handlers().end()) throw Error(ErrorCode::InvalidArgument, "unknown command '" + command + "'");
  if (!args.is_object() && !args.is_null()) throw Error(ErrorCode::InvalidArgument, "arguments must be a JSON object");
  Output o;
  try {
    o = it->second(doc, args.is_null() ? json::object() : args);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad argument: ") + e.what());
  }
  return {{"status", o.status}, {"result", o.result}, {"summary", o.summary}};
}

}  // namespace sonet::detail
