#include "sonet/scenarios.hpp"

#include <algorithm>

#include "detail/maximal.hpp"
#include "detail/step_system.hpp"
#include "detail/wf_search.hpp"

namespace sonet {

AcyclicNet scenario_for(const AcyclicNet& net, const NodeSet& transitions) {
  return induced_subnet(net, set_union(net.initial_places(), net.postset(transitions)), transitions);
}

AcyclicNet scenario_of(const AcyclicNet& net, const StepSequence& s) {
  const auto sys = detail::StepSystem::of(net);
  std::vector<detail::Bits> steps;
  for (const auto& u : s) steps.push_back(detail::checked_step(sys, u));
  detail::replay(sys, sys.initial(), steps);
  if (auto check = detail::check_stepseq(sys, steps); !check.well_formed)
    throw Error(ErrorCode::NotWellFormed,
                "step " + std::to_string(check.step_number) + " fills " + check.place + " a second time",
                {check.place}, check.step_number - 1);
  return scenario_for(net, occurring(s));
}

namespace {

// Transition subsets T such that P^init ∪ post(T) carries an occurrence net:
// every place has at most one producer and one consumer inside T, and
// pre(T) ⊆ P^init ∪ post(T). The first two conditions only get worse when T
// grows, so the include branch is cut as soon as one fails.
std::vector<NodeSet> scenario_sets(const AcyclicNet& net, const Bound& bound) {
  const auto sys = detail::StepSystem::of(net);
  const std::size_t n = sys.transition_count();
  std::vector<NodeSet> out;
  detail::Bits chosen = sys.empty_transitions();
  detail::Bits produced = sys.empty_places();
  detail::Bits consumed = sys.empty_places();

  std::function<void(std::size_t)> grow = [&](std::size_t i) {
    if (i == n) {
      if (consumed.subset_of(sys.initial() | produced)) {
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
    grow(i + 1);
    chosen.reset(i);
    produced = saved_produced;
    consumed = saved_consumed;
  };
  grow(0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<AcyclicNet> enumerate_scenarios(const AcyclicNet& net, const Bound& bound) {
  std::vector<AcyclicNet> out;
  for (const auto& t : scenario_sets(net, bound)) out.push_back(scenario_for(net, t));
  return out;
}

std::vector<AcyclicNet> maximal_scenarios(const AcyclicNet& net, const Bound& bound) {
  std::vector<AcyclicNet> out;
  for (const auto& t : detail::maximal_sets(scenario_sets(net, bound))) out.push_back(scenario_for(net, t));
  return out;
}

bool same_scenario(const AcyclicNet& net, const StepSequence& s1, const StepSequence& s2) {
  return scenario_of(net, s1) == scenario_of(net, s2);
}

CoverageReport coverage(const AcyclicNet& net, const Bound& bound) {
  CoverageReport report;
  for (const auto& scenario : enumerate_scenarios(net, bound)) {
    report.covered_places.insert(scenario.places().begin(), scenario.places().end());
    report.covered_transitions.insert(scenario.transitions().begin(), scenario.transitions().end());
    report.covered_arcs.insert(scenario.flow().begin(), scenario.flow().end());
  }
  report.uncovered_places = set_difference(net.places(), report.covered_places);
  report.uncovered_transitions = set_difference(net.transitions(), report.covered_transitions);
  for (const auto& arc : net.flow())
    if (!report.covered_arcs.count(arc)) report.uncovered_arcs.insert(arc);
  return report;
}

}  // namespace sonet

