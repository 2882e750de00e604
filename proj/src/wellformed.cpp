#include "sonet/wellformed.hpp"

#include <unordered_set>

#include "detail/step_system.hpp"
#include "detail/wf_search.hpp"

namespace sonet {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Ok: return "ok";
    case Verdict::NotOk: return "not_ok";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

StepSequenceCheck is_wf_stepseq(const AcyclicNet& net, const StepSequence& s) {
  const auto sys = detail::StepSystem::of(net);
  std::vector<detail::Bits> steps;
  for (const auto& u : s) steps.push_back(detail::checked_step(sys, u));
  detail::replay(sys, sys.initial(), steps);
  return detail::check_stepseq(sys, steps);
}

WellFormedVerdict is_well_formed(const AcyclicNet& net, const Bound& bound) {
  return detail::wf_search(detail::StepSystem::of(net), true, bound);
}

CausalityReport causes(const AcyclicNet& net, const NodeId& t, const Bound& bound) {
  if (!net.has_transition(t)) throw Error(ErrorCode::UnknownTransition, "unknown transition '" + t + "'", {t});
  CausalityReport report;
  report.target = t;
  const Relation closure = transitive_closure(net.flow_relation());
  for (const auto& u : net.transitions())
    if (closure.contains(u, t)) report.graph_predecessors.insert(u);

  // Serialising σ and putting t first in U turns every σU into a firing
  // sequence, so the intersection over firing-sequence prefixes is exact.
  const auto sys = detail::StepSystem::of(net);
  const std::size_t target = std::distance(sys.transition_names().begin(),
                                           std::find(sys.transition_names().begin(),
                                                     sys.transition_names().end(), t));
  std::unordered_set<std::pair<detail::Bits, detail::Bits>, detail::BitsPairHash> seen;
  std::optional<detail::Bits> common;
  std::function<void(const detail::Bits&, const detail::Bits&)> dfs = [&](const detail::Bits& m,
                                                                        const detail::Bits& done) {
    if (!seen.emplace(m, done).second) return;
    if (seen.size() > bound.max_sequences)
      throw Error(ErrorCode::BoundExceeded, "causality search exceeded the state bound");
    for (const auto& u : sys.enabled_steps(m, true)) {
      if (u.test(target)) {
        common = common ? (*common & done) : done;
        continue;
      }
      dfs(sys.fire(m, u), done | u);
    }
  };
  dfs(sys.initial(), sys.empty_transitions());
  if (!common)
    throw Error(ErrorCode::TransitionNeverFires, "transition " + t + " occurs in no step sequence", {t});
  report.causes = sys.transition_set(*common);
  return report;
}

}  // namespace sonet
