#include "detail/dispatch.hpp"

namespace sonet::detail {

namespace {

template <class A, class C, class B>
decltype(auto) visit_kind(const NetDocument& doc, A&& on_acyclic, C&& on_csa, B&& on_bsa) {
  switch (doc.kind()) {
    case NetKind::Acyclic: return on_acyclic(doc.acyclic());
    case NetKind::Csa: return on_csa(doc.csa());
    case NetKind::Bsa: break;
  }
  return on_bsa(doc.bsa());
}

json arcs(const std::set<Arc>& flow) {
  json out = json::array();
  for (const auto& a : flow) out.push_back(json::array({a.from, a.to}));
  return out;
}

}  // namespace

void check_marking(const NetDocument& doc, const Marking& m) {
  const auto places = doc.all_places();
  for (const auto& p : m)
    if (!places.count(p)) throw Error(ErrorCode::UnknownPlace, "unknown place '" + p + "' in marking", {p});
}

bool enabled(const NetDocument& doc, const Marking& m, const Step& u) {
  check_marking(doc, m);
  return visit_kind(
      doc, [&](const AcyclicNet& n) { return enabled_step(n, m, u); },
      [&](const CsaNet& n) { return csa_enabled(n, m, u); }, [&](const BsaNet& n) { return bsa_enabled(n, m, u); });
}

Marking fire(const NetDocument& doc, const Marking& m, const Step& u) {
  check_marking(doc, m);
  return visit_kind(
      doc, [&](const AcyclicNet& n) { return sonet::fire(n, m, u); },
      [&](const CsaNet& n) { return csa_fire(n, m, u); }, [&](const BsaNet& n) { return bsa_fire(n, m, u); });
}

MixedStepSequence run(const NetDocument& doc, const Marking& m0, const std::vector<Step>& steps) {
  check_marking(doc, m0);
  return visit_kind(
      doc, [&](const AcyclicNet& n) { return sonet::run(n, m0, steps); },
      [&](const CsaNet& n) { return csa_run(n, m0, steps); }, [&](const BsaNet& n) { return bsa_run(n, m0, steps); });
}

std::vector<Step> enabled_steps(const NetDocument& doc, const Marking& m) {
  check_marking(doc, m);
  return visit_kind(
      doc, [&](const AcyclicNet& n) { return sonet::enabled_steps(n, m); },
      [&](const CsaNet& n) { return csa_enabled_steps(n, m); },
      [&](const BsaNet& n) { return bsa_enabled_steps(n, m); });
}

BehaviourResult behaviours(const NetDocument& doc, const BehaviourQuery& q) {
  return visit_kind(
      doc, [&](const AcyclicNet& n) { return sonet::behaviours(n, q); },
      [&](const CsaNet& n) { return csa_behaviours(n, q); }, [&](const BsaNet& n) { return bsa_behaviours(n, q); });
}

WellFormedVerdict well_formed(const NetDocument& doc, const Bound& bound) {
  return visit_kind(
      doc, [&](const AcyclicNet& n) { return is_well_formed(n, bound); },
      [&](const CsaNet& n) { return csa_is_well_formed(n, bound); },
      [&](const BsaNet& n) { return bsa_is_well_formed(n, bound); });
}

std::vector<NodeSet> decomposition(const NetDocument& doc, const Marking& m, const Step& u) {
  try {
    return decompose_step(doc.as_csa(), m, u);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoDecomposition || e.code() == ErrorCode::StepNotEnabled) return {};
    throw;
  }
}

std::vector<Blocked> blocked_singletons(const NetDocument& doc, const Marking& m) {
  check_marking(doc, m);
  std::vector<Blocked> out;
  const auto csa = doc.as_csa();
  for (const auto& t : doc.all_transitions()) {
    const Step u{t};
    if (doc.kind() == NetKind::Bsa) {
      const auto e = bsa_enabling(doc.bsa(), m, u);
      if (!e.enabled) out.push_back({u, to_string(e.reason), e.missing});
      continue;
    }
    if (csa_enabled(csa, m, u)) continue;
    NodeSet missing;
    for (const auto& p : csa.preset(t))
      if (!m.count(p)) missing.insert(p);
    out.push_back({u, "underlying", missing});
  }
  return out;
}

json to_json(const AcyclicNet& net) {
  return {{"places", net.places()}, {"transitions", net.transitions()}, {"arcs", arcs(net.flow())}};
}

json to_json(const CsaNet& net) {
  json components = json::array();
  for (const auto& c : net.components()) components.push_back(to_json(c));
  return {{"places", net.places()},
          {"transitions", net.transitions()},
          {"buffers", net.buffers()},
          {"components", components},
          {"buffer_arcs", arcs(net.buffer_arcs())}};
}

json to_json(const BsaNet& net) {
  json beta = json::array();
  for (const auto& [r, p] : net.beta()) beta.push_back(json::array({r, p}));
  return {{"transitions", net.transitions()},
          {"lower", to_json(net.lower())},
          {"upper", to_json(net.upper())},
          {"beta", beta}};
}

json induced_scenario(const NetDocument& doc, const StepSequence& s) {
  return visit_kind(
      doc, [&](const AcyclicNet& n) { return to_json(scenario_of(n, s)); },
      [&](const CsaNet& n) { return to_json(csa_scenario_of(n, s)); },
      [&](const BsaNet& n) { return to_json(bsa_scenario_of(n, s)); });
}

json scenario_list(const NetDocument& doc, bool maximal, const Bound& bound) {
  json out = json::array();
  switch (doc.kind()) {
    case NetKind::Acyclic:
      for (const auto& s : maximal ? maximal_scenarios(doc.acyclic(), bound) : enumerate_scenarios(doc.acyclic(), bound))
        out.push_back(to_json(s));
      break;
    case NetKind::Csa:
      for (const auto& s : maximal ? csa_maximal_scenarios(doc.csa(), bound) : csa_scenarios(doc.csa(), bound))
        out.push_back(to_json(s));
      break;
    case NetKind::Bsa:
      for (const auto& s : maximal ? bsa_maximal_scenarios(doc.bsa(), bound) : bsa_scenarios(doc.bsa(), bound).scenarios)
        out.push_back(to_json(s));
      break;
  }
  return out;
}

json to_json(const Error& e) {
  json out = {{"code", to_string(e.code())}, {"message", e.what()}, {"nodes", e.nodes()}};
  if (e.index()) out["index"] = *e.index();
  if (!e.reason().empty()) out["reason"] = e.reason();
  if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
    json list = json::array();
    for (const auto& x : v->violations())
      list.push_back({{"kind", to_string(x.kind)}, {"nodes", x.nodes}, {"message", x.message}});
    out["violations"] = list;
  }
  return out;
}

json to_json(const WellFormedVerdict& v) {
  json out = {{"verdict", to_string(v.verdict)}, {"message", v.message}, {"truncated", v.truncated}};
  if (v.double_fill)
    out["double_fill"] = {{"sequence", v.double_fill->sequence},
                          {"place", v.double_fill->place},
                          {"step_number", v.double_fill->step_number}};
  if (v.unfireable) out["unfireable"] = *v.unfireable;
  if (v.unmatched_sequence) out["unmatched_sequence"] = *v.unmatched_sequence;
  if (v.unrealized_scenario) out["unrealized_scenario"] = *v.unrealized_scenario;
  return out;
}

json to_json(const MixedStepSequence& mu) {
  return {{"markings", mu.markings}, {"steps", mu.steps}, {"text", format_mixed(mu)}};
}

json phase_json(const BsaNet& b) {
  json out = json::object();
  for (const auto& [p, markings] : b.phases()) out[p] = markings;
  return out;
}

NodeSet node_set(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be a list of ids");
  NodeSet out;
  for (const auto& x : j) {
    if (!x.is_string()) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be a list of ids");
    out.insert(x.get<std::string>());
  }
  return out;
}

std::vector<Step> step_list(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be a list of steps");
  std::vector<Step> out;
  for (const auto& x : j) out.push_back(node_set(x, what));
  return out;
}

}  // namespace sonet::detail
