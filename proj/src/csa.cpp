#include "sonet/csa.hpp"

#include <algorithm>
#include <map>

#include "detail/csa_system.hpp"
#include "detail/maximal.hpp"
#include "detail/scc.hpp"
#include "detail/wf_search.hpp"

namespace sonet {

const char* to_string(CsaClass c) {
  switch (c) {
    case CsaClass::CsoNet: return "CsoNet";
    case CsaClass::BdCsaNet: return "BdCsaNet";
    case CsaClass::CsaNet: return "CsaNet";
  }
  return "Unknown";
}

std::vector<Violation> CsaNet::check(const RawCsaNet& raw, const Bound& bound) {
  std::vector<Violation> out;
  if (raw.components.empty())
    out.push_back({ViolationKind::ComponentInvalid, {}, "a csa-net needs at least one component"});

  std::map<NodeId, std::size_t> owner;
  std::map<NodeId, bool> is_transition;
  for (std::size_t i = 0; i < raw.components.size(); ++i) {
    const auto& comp = raw.components[i];
    const auto tag = "component " + std::to_string(i + 1) + ": ";
    auto violations = AcyclicNet::check(comp);
    for (auto& v : violations)
      out.push_back({ViolationKind::ComponentInvalid, v.nodes, tag + v.message});
    if (violations.empty()) {
      const auto verdict = is_well_formed(AcyclicNet::validate(comp), bound);
      if (!verdict.ok()) {
        std::vector<std::string> nodes;
        if (verdict.double_fill) nodes.push_back(verdict.double_fill->place);
        if (verdict.unfireable) nodes.push_back(*verdict.unfireable);
        out.push_back({ViolationKind::ComponentNotWellFormed, nodes,
                       tag + (verdict.verdict == Verdict::Unknown ? "well-formedness undecided within the bound"
                                                                   : verdict.message)});
      }
    }
    auto note = [&](const NodeId& x, bool transition) {
      auto [it, fresh] = owner.emplace(x, i);
      if (!fresh && it->second != i)
        out.push_back({ViolationKind::NodeClashAcrossComponents, {x},
                       "'" + x + "' appears in components " + std::to_string(it->second + 1) + " and " +
                           std::to_string(i + 1)});
      is_transition[x] = transition;
    };
    for (const auto& p : NodeSet(comp.places.begin(), comp.places.end())) note(p, false);
    for (const auto& t : NodeSet(comp.transitions.begin(), comp.transitions.end())) note(t, true);
  }

  NodeSet buffers;
  for (const auto& q : raw.buffers) {
    if (!buffers.insert(q).second)
      out.push_back({ViolationKind::DuplicateId, {q}, "buffer '" + q + "' is listed twice"});
    if (owner.count(q))
      out.push_back({ViolationKind::NodeClashAcrossComponents, {q},
                     "buffer '" + q + "' is also a node of component " + std::to_string(owner[q] + 1)});
  }

  std::map<NodeId, NodeSet> producers, consumers;
  for (const auto& [from, to] : raw.buffer_arcs) {
    const bool from_buffer = buffers.count(from) != 0;
    const bool to_buffer = buffers.count(to) != 0;
    const bool from_known = from_buffer || owner.count(from);
    const bool to_known = to_buffer || owner.count(to);
    if (!from_known || !to_known) {
      out.push_back({ViolationKind::DanglingArcEndpoint, {from, to},
                     "buffer arc " + from + "->" + to + " names an unknown node"});
      continue;
    }
    if (from_buffer && !to_buffer && is_transition[to]) {
      consumers[from].insert(to);
    } else if (to_buffer && !from_buffer && is_transition[from]) {
      producers[to].insert(from);
    } else {
      out.push_back({ViolationKind::InvalidArcDirection, {from, to},
                     "buffer arc " + from + "->" + to + " must join a buffer and a transition"});
    }
  }
  for (const auto& q : buffers) {
    if (producers[q].empty())
      out.push_back({ViolationKind::BufferWithoutProducer, {q}, "buffer '" + q + "' has no producing transition"});
    for (const auto& t : producers[q])
      for (const auto& u : consumers[q])
        if (owner[t] == owner[u])
          out.push_back({ViolationKind::BufferWithinOneComponent, {q, t, u},
                         "buffer '" + q + "' links " + t + " and " + u + " of the same component"});
  }
  return out;
}

CsaNet CsaNet::validate(const RawCsaNet& raw, const Bound& bound) {
  if (auto violations = check(raw, bound); !violations.empty()) throw ValidationError(std::move(violations));
  CsaNet net;
  for (const auto& comp : raw.components) {
    net.components_.push_back(AcyclicNet::validate(comp));
    const auto& c = net.components_.back();
    net.places_.insert(c.places().begin(), c.places().end());
    net.transitions_.insert(c.transitions().begin(), c.transitions().end());
  }
  net.buffers_.insert(raw.buffers.begin(), raw.buffers.end());
  net.buffer_arcs_.insert(raw.buffer_arcs.begin(), raw.buffer_arcs.end());
  return net;
}

bool CsaNet::has_node(const NodeId& x) const {
  return places_.count(x) || transitions_.count(x) || buffers_.count(x);
}

std::optional<std::size_t> CsaNet::component_of(const NodeId& x) const {
  for (std::size_t i = 0; i < components_.size(); ++i)
    if (components_[i].has_node(x)) return i;
  return std::nullopt;
}

NodeSet CsaNet::preset(const NodeId& x) const {
  if (!has_node(x)) throw Error(ErrorCode::UnknownNode, "unknown node '" + x + "'", {x});
  NodeSet out;
  if (auto i = component_of(x)) out = components_[*i].preset(x);
  for (const auto& arc : buffer_arcs_)
    if (arc.to == x) out.insert(arc.from);
  return out;
}

NodeSet CsaNet::postset(const NodeId& x) const {
  if (!has_node(x)) throw Error(ErrorCode::UnknownNode, "unknown node '" + x + "'", {x});
  NodeSet out;
  if (auto i = component_of(x)) out = components_[*i].postset(x);
  for (const auto& arc : buffer_arcs_)
    if (arc.from == x) out.insert(arc.to);
  return out;
}

NodeSet CsaNet::preset(const NodeSet& xs) const {
  NodeSet out;
  for (const auto& x : xs) out.merge(preset(x));
  return out;
}

NodeSet CsaNet::postset(const NodeSet& xs) const {
  NodeSet out;
  for (const auto& x : xs) out.merge(postset(x));
  return out;
}

NodeSet CsaNet::initial_places() const {
  NodeSet out;
  for (const auto& c : components_) out.insert(c.initial_places().begin(), c.initial_places().end());
  return out;
}

NodeSet CsaNet::final_places() const {
  NodeSet out;
  for (const auto& c : components_) out.insert(c.final_places().begin(), c.final_places().end());
  for (const auto& q : buffers_)
    if (postset(q).empty()) out.insert(q);
  return out;
}

RawCsaNet CsaNet::to_raw() const {
  RawCsaNet raw;
  for (const auto& c : components_) raw.components.push_back(c.to_raw());
  raw.buffers.assign(buffers_.begin(), buffers_.end());
  raw.buffer_arcs.assign(buffer_arcs_.begin(), buffer_arcs_.end());
  return raw;
}

CsaNet csa_of(const AcyclicNet& net) {
  CsaNet out;
  out.components_.push_back(net);
  out.places_ = net.places();
  out.transitions_ = net.transitions();
  return out;
}

namespace detail {

StepSystem csa_system(const CsaNet& net) {
  StepSystem::Spec spec;
  spec.places = net.places_and_buffers();
  spec.transitions = net.transitions();
  for (const auto& c : net.components()) spec.arcs.insert(spec.arcs.end(), c.flow().begin(), c.flow().end());
  spec.arcs.insert(spec.arcs.end(), net.buffer_arcs().begin(), net.buffer_arcs().end());
  spec.buffers = net.buffers();
  spec.initial = net.initial_places();
  return StepSystem(spec);
}

std::vector<NodeSet> w_components(const CsaNet& net, const NodeSet& within) {
  const NodeSet nodes = within.empty() ? net.transitions() : within;
  const std::vector<NodeId> order(nodes.begin(), nodes.end());
  std::map<NodeId, std::size_t> index;
  for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = i;
  std::map<NodeId, NodeSet> producers, consumers;
  for (const auto& arc : net.buffer_arcs()) {
    if (net.buffers().count(arc.to)) producers[arc.to].insert(arc.from);
    else consumers[arc.from].insert(arc.to);
  }
  std::vector<std::vector<std::size_t>> adj(order.size());
  for (const auto& q : net.buffers())
    for (const auto& t : producers[q])
      for (const auto& u : consumers[q])
        if (index.count(t) && index.count(u)) adj[index[t]].push_back(index[u]);
  std::size_t count = 0;
  const auto comp = scc_ids(adj, &count);
  std::vector<NodeSet> groups(count);
  for (std::size_t i = 0; i < order.size(); ++i) groups[comp[i]].insert(order[i]);
  std::sort(groups.begin(), groups.end());
  return groups;
}

namespace {

bool has_place_on_cycle(const StepSystem& sys, const Bits& chosen) {
  const std::size_t np = sys.place_count();
  std::vector<std::vector<std::size_t>> adj(np + sys.transition_count());
  chosen.for_each([&](std::size_t t) {
    sys.pre(t).for_each([&](std::size_t p) { adj[p].push_back(np + t); });
    sys.post(t).for_each([&](std::size_t p) { adj[np + t].push_back(p); });
  });
  const auto cyclic = on_cycle(adj);
  for (std::size_t p = 0; p < np; ++p)
    if (cyclic[p] && !sys.buffers().test(p)) return true;
  return false;
}

}  // namespace

std::vector<NodeSet> csa_scenario_sets(const CsaNet& net, const Bound& bound) {
  const auto sys = csa_system(net);
  const std::size_t n = sys.transition_count();
  std::vector<NodeSet> out;
  Bits chosen = sys.empty_transitions();
  Bits produced = sys.empty_places();
  Bits consumed = sys.empty_places();

  // Producer/consumer uniqueness (places and buffers alike) and the absence of
  // place cycles only get worse as T grows; closure of inputs is checked last.
  std::function<void(std::size_t)> grow = [&](std::size_t i) {
    if (i == n) {
      if (consumed.subset_of(sys.initial() | produced) && !has_place_on_cycle(sys, chosen)) {
        if (out.size() >= bound.max_sequences)
          throw Error(ErrorCode::BoundExceeded, "more than " + std::to_string(bound.max_sequences) + " scenarios");
        out.push_back(sys.transition_set(chosen));
      }
      return;
    }
    grow(i + 1);
    if (produced.intersects(sys.post(i)) || consumed.intersects(sys.pre(i))) return;
    const auto saved_produced = produced;
    const auto saved_consumed = consumed;
    chosen.set(i);
    produced |= sys.post(i);
    consumed |= sys.pre(i);
    if (!has_place_on_cycle(sys, chosen)) grow(i + 1);
    chosen.reset(i);
    produced = saved_produced;
    consumed = saved_consumed;
  };
  grow(0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

CsaClass classify_csa(const CsaNet& net) {
  const auto& comps = net.components();
  auto one_producer = [&] {
    return std::all_of(net.buffers().begin(), net.buffers().end(),
                       [&](const NodeId& q) { return net.preset(q).size() == 1; });
  };
  const bool occurrence =
      std::all_of(comps.begin(), comps.end(), [](const AcyclicNet& c) { return is_occurrence_net(c); });
  if (occurrence && one_producer() &&
      std::all_of(net.buffers().begin(), net.buffers().end(),
                  [&](const NodeId& q) { return net.postset(q).size() <= 1; })) {
    const auto sys = detail::csa_system(net);
    detail::Bits all = sys.empty_transitions();
    for (std::size_t t = 0; t < sys.transition_count(); ++t) all.set(t);
    if (!detail::has_place_on_cycle(sys, all)) return CsaClass::CsoNet;
  }
  const bool bd =
      std::all_of(comps.begin(), comps.end(), [](const AcyclicNet& c) { return is_backward_deterministic(c); });
  if (bd && one_producer()) return CsaClass::BdCsaNet;
  return CsaClass::CsaNet;
}

Neighbourhood csa_neighbourhood(const CsaNet& net, const NodeId& x) { return {net.preset(x), net.postset(x)}; }

namespace {

[[noreturn]] void not_enabled(const detail::StepSystem& sys, const detail::Bits& m, const detail::Bits& u,
                              std::optional<std::size_t> index) {
  const NodeSet missing = sys.place_set(sys.missing(m, u));
  std::string msg = "step " + format_set(sys.transition_set(u)) + " is not enabled";
  if (index) msg += " at position " + std::to_string(*index);
  msg += ": missing " + format_set(missing);
  throw Error(ErrorCode::StepNotEnabled, msg, {missing.begin(), missing.end()}, index, "underlying");
}

void check_index(const CsaNet& net, std::size_t i) {
  if (i >= net.components().size())
    throw Error(ErrorCode::IndexOutOfRange,
                "component index " + std::to_string(i) + " out of range (net has " +
                    std::to_string(net.components().size()) + ")");
}

std::vector<detail::Bits> checked_steps(const detail::StepSystem& sys, const StepSequence& s) {
  std::vector<detail::Bits> steps;
  for (const auto& u : s) steps.push_back(detail::checked_step(sys, u));
  return steps;
}

}  // namespace

bool csa_enabled(const CsaNet& net, const Marking& m, const Step& u) {
  const auto sys = detail::csa_system(net);
  const auto bits = detail::checked_step(sys, u);
  return sys.enabled(sys.marking(m), bits);
}

Marking csa_fire(const CsaNet& net, const Marking& m, const Step& u) {
  const auto sys = detail::csa_system(net);
  const auto bits = detail::checked_step(sys, u);
  const auto mb = sys.marking(m);
  if (!sys.enabled(mb, bits)) not_enabled(sys, mb, bits, std::nullopt);
  return sys.place_set(sys.fire(mb, bits));
}

MixedStepSequence csa_run(const CsaNet& net, const Marking& m0, const std::vector<Step>& steps) {
  const auto sys = detail::csa_system(net);
  MixedStepSequence out;
  auto m = sys.marking(m0);
  out.markings.push_back(m0);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto u = detail::checked_step(sys, steps[i]);
    if (!sys.enabled(m, u)) not_enabled(sys, m, u, i);
    m = sys.fire(m, u);
    out.steps.push_back(steps[i]);
    out.markings.push_back(sys.place_set(m));
  }
  return out;
}

std::vector<Step> csa_enabled_steps(const CsaNet& net, const Marking& m) {
  const auto sys = detail::csa_system(net);
  std::vector<Step> out;
  for (const auto& u : sys.enabled_steps(sys.marking(m))) out.push_back(sys.transition_set(u));
  return out;
}

BehaviourResult csa_behaviours(const CsaNet& net, const BehaviourQuery& q) {
  if (q.bound.max_sequences < 1 || q.bound.max_depth < 1)
    throw Error(ErrorCode::InvalidArgument, "bounds must be at least 1");
  if (q.kind == BehaviourKind::Fseq && (net.components().size() != 1 || !net.buffers().empty()))
    throw Error(ErrorCode::InvalidArgument, "firing sequences are only defined for single-component nets");
  const auto sys = detail::csa_system(net);
  return sys.behaviours(sys.initial(), q);
}

StepSequence project(const CsaNet& net, std::size_t i, const StepSequence& s) {
  check_index(net, i);
  const auto sys = detail::csa_system(net);
  detail::replay(sys, sys.initial(), checked_steps(sys, s));
  return restrict_compact(s, net.components()[i].transitions());
}

SetSequence project(const CsaNet& net, std::size_t i, const MixedStepSequence& mu) {
  check_index(net, i);
  if (mu.markings.size() != mu.steps.size() + 1)
    throw Error(ErrorCode::NotAStepSequence, "a mixed step sequence needs one more marking than steps");
  const auto sys = detail::csa_system(net);
  auto m = sys.marking(mu.markings.front());
  for (std::size_t k = 0; k < mu.steps.size(); ++k) {
    const auto u = detail::checked_step(sys, mu.steps[k]);
    if (!sys.enabled(m, u) || sys.fire(m, u) != sys.marking(mu.markings[k + 1]))
      throw Error(ErrorCode::NotAStepSequence,
                  "step " + std::to_string(k + 1) + " does not lead to the listed marking", {}, k);
    m = sys.fire(m, u);
  }
  const auto& comp = net.components()[i];
  SetSequence out;
  for (auto& x : restrict_compact(mu.interleaved(), set_union(comp.places(), comp.transitions())))
    if (out.empty() || out.back() != x) out.push_back(std::move(x));
  return out;
}

std::vector<NodeSet> syn_cycles(const CsaNet& net) {
  if (classify_csa(net) != CsaClass::CsoNet) throw Error(ErrorCode::NotACsoNet, "syn-cycles need a cso-net");
  return detail::w_components(net, {});
}

std::vector<NodeSet> syn_cycles_direct(const CsaNet& net) { return detail::w_components(net, {}); }

std::vector<NodeSet> syn_cycles_csa(const CsaNet& net, const Bound& bound) {
  const auto verdict = csa_is_well_formed(net, bound);
  if (verdict.verdict == Verdict::Unknown)
    throw Error(ErrorCode::BoundExceeded, "well-formedness undecided within the bound");
  if (!verdict.ok()) throw Error(ErrorCode::NotWellFormed, verdict.message);
  std::set<NodeSet> all;
  for (const auto& scenario : csa_scenarios(net, bound))
    for (auto& s : syn_cycles(scenario)) all.insert(std::move(s));
  return {all.begin(), all.end()};
}

std::vector<NodeSet> decompose_step(const CsaNet& net, const Marking& m, const Step& u) {
  const auto sys = detail::csa_system(net);
  const auto ub = detail::checked_step(sys, u);
  const auto mb = sys.marking(m);
  if (!sys.enabled(mb, ub)) not_enabled(sys, mb, ub, std::nullopt);
  const auto target = sys.fire(mb, ub);

  const auto parts = detail::w_components(net, u);
  std::vector<detail::Bits> part_bits;
  for (const auto& p : parts) part_bits.push_back(sys.step(p));
  std::vector<bool> used(parts.size(), false);
  std::vector<NodeSet> order;
  std::function<bool(const detail::Bits&)> place = [&](const detail::Bits& cur) -> bool {
    if (order.size() == parts.size()) return cur == target;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      if (used[k] || !sys.enabled(cur, part_bits[k])) continue;
      used[k] = true;
      order.push_back(parts[k]);
      if (place(sys.fire(cur, part_bits[k]))) return true;
      order.pop_back();
      used[k] = false;
    }
    return false;
  };
  if (!place(mb))
    throw Error(ErrorCode::NoDecomposition,
                "step " + format_set(u) + " cannot be executed as a sequence of its syn-cycles",
                {u.begin(), u.end()});
  return order;
}

StepSequenceCheck csa_is_wf_stepseq(const CsaNet& net, const StepSequence& s) {
  const auto sys = detail::csa_system(net);
  const auto steps = checked_steps(sys, s);
  detail::replay(sys, sys.initial(), steps);
  return detail::check_stepseq(sys, steps);
}

WellFormedVerdict csa_is_well_formed(const CsaNet& net, const Bound& bound) {
  return detail::wf_search(detail::csa_system(net), false, bound);
}

CsaNet csa_scenario_for(const CsaNet& net, const NodeSet& transitions) {
  for (const auto& t : transitions)
    if (!net.transitions().count(t)) throw Error(ErrorCode::UnknownTransition, "unknown transition '" + t + "'", {t});
  const NodeSet post = net.postset(transitions);
  const NodeSet buffers = set_intersection(post, net.buffers());
  std::vector<Violation> violations;
  for (const auto& t : transitions)
    for (const auto& q : set_intersection(net.preset(t), net.buffers()))
      if (!buffers.count(q))
        violations.push_back({ViolationKind::TransitionWithoutPre, {t, q},
                              "'" + t + "' would lose its buffer input " + q});
  if (!violations.empty()) throw ValidationError(std::move(violations));

  RawCsaNet raw;
  for (const auto& comp : net.components()) {
    const NodeSet ts = set_intersection(transitions, comp.transitions());
    const NodeSet ps = set_union(comp.initial_places(), set_intersection(post, comp.places()));
    raw.components.push_back(induced_subnet(comp, ps, ts).to_raw());
  }
  raw.buffers.assign(buffers.begin(), buffers.end());
  for (const auto& arc : net.buffer_arcs())
    if ((buffers.count(arc.from) && transitions.count(arc.to)) ||
        (transitions.count(arc.from) && buffers.count(arc.to)))
      raw.buffer_arcs.push_back(arc);
  return CsaNet::validate(raw);
}

CsaNet csa_scenario_of(const CsaNet& net, const StepSequence& s) {
  const auto check = csa_is_wf_stepseq(net, s);
  if (!check.well_formed)
    throw Error(ErrorCode::NotWellFormed,
                "step " + std::to_string(check.step_number) + " fills " + check.place + " a second time",
                {check.place}, check.step_number - 1);
  return csa_scenario_for(net, occurring(s));
}

std::vector<CsaNet> csa_scenarios(const CsaNet& net, const Bound& bound) {
  std::vector<CsaNet> out;
  for (const auto& t : detail::csa_scenario_sets(net, bound)) out.push_back(csa_scenario_for(net, t));
  return out;
}

std::vector<CsaNet> csa_maximal_scenarios(const CsaNet& net, const Bound& bound) {
  std::vector<CsaNet> out;
  for (const auto& t : detail::maximal_sets(detail::csa_scenario_sets(net, bound)))
    out.push_back(csa_scenario_for(net, t));
  return out;
}

CoverageReport csa_coverage(const CsaNet& net, const Bound& bound) {
  CoverageReport report;
  for (const auto& s : csa_scenarios(net, bound)) {
    for (const auto& c : s.components()) {
      report.covered_places.insert(c.places().begin(), c.places().end());
      report.covered_transitions.insert(c.transitions().begin(), c.transitions().end());
      report.covered_arcs.insert(c.flow().begin(), c.flow().end());
    }
    report.covered_places.insert(s.buffers().begin(), s.buffers().end());
    report.covered_arcs.insert(s.buffer_arcs().begin(), s.buffer_arcs().end());
  }
  report.uncovered_places = set_difference(net.places_and_buffers(), report.covered_places);
  report.uncovered_transitions = set_difference(net.transitions(), report.covered_transitions);
  auto note = [&](const Arc& arc) {
    if (!report.covered_arcs.count(arc)) report.uncovered_arcs.insert(arc);
  };
  for (const auto& c : net.components())
    for (const auto& arc : c.flow()) note(arc);
  for (const auto& arc : net.buffer_arcs()) note(arc);
  return report;
}

}  // namespace sonet
