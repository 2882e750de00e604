#pragma once

#include <optional>
#include <string>

#include "sonet/semantics.hpp"

namespace sonet {

enum class Verdict { Ok, NotOk, Unknown };

const char* to_string(Verdict v);

/// A place that receives a token twice. `sequence` replays from the initial
/// marking; `step_number` (1-based) is the step whose execution refills
/// `place` or, for a conflict inside one step, that step itself.
struct DoubleFill {
  StepSequence sequence;
  NodeId place;
  std::size_t step_number = 0;
};

/// Outcome of a well-formedness decision. For NotOk exactly one witness field
/// is set. The last two fields are only used for bsa-nets.
struct WellFormedVerdict {
  Verdict verdict = Verdict::Ok;
  std::optional<DoubleFill> double_fill;
  std::optional<NodeId> unfireable;
  std::optional<StepSequence> unmatched_sequence;  // in sseq(net) but no scenario's
  std::optional<NodeSet> unrealized_scenario;      // transitions of the scenario
  std::string message;
  bool truncated = false;

  bool ok() const { return verdict == Verdict::Ok; }
};

struct StepSequenceCheck {
  bool well_formed = true;
  std::size_t step_number = 0;  // 1-based; 0 when well formed
  NodeId place;                 // the place filled twice
};

/// Checks both conditions on a step sequence replayed from P^init. Throws
/// NotAStepSequence when the replay fails.
StepSequenceCheck is_wf_stepseq(const AcyclicNet& net, const StepSequence& s);

/// Decides well-formedness over firing sequences, memoised on the pair
/// (marking, places filled so far). The bound caps the number of explored
/// states; hitting it gives Unknown.
WellFormedVerdict is_well_formed(const AcyclicNet& net, const Bound& bound = {});

struct CausalityReport {
  NodeId target;
  NodeSet causes;
  NodeSet graph_predecessors;
};

/// u is a cause of t when every step sequence σU with t ∈ U has u in σ.
/// A u that only occurs together with t in U does not count. Throws
/// UnknownTransition or TransitionNeverFires.
CausalityReport causes(const AcyclicNet& net, const NodeId& t, const Bound& bound = {});

}  // namespace sonet
