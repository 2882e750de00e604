#pragma once

#include <vector>

#include "sonet/semantics.hpp"

namespace sonet {

/// The co-initial subnet with transitions T and places P^init ∪ post(T).
/// Throws ValidationError if some transition would lose a pre-place.
AcyclicNet scenario_for(const AcyclicNet& net, const NodeSet& transitions);

/// Scenario induced by a well-formed step sequence. Throws NotAStepSequence
/// or NotWellFormed (index = 0-based offending step, nodes = the place).
AcyclicNet scenario_of(const AcyclicNet& net, const StepSequence& s);

/// All co-initial occurrence subnets, ordered by their transition sets.
/// Throws BoundExceeded when more than bound.max_sequences exist.
std::vector<AcyclicNet> enumerate_scenarios(const AcyclicNet& net, const Bound& bound = {});
std::vector<AcyclicNet> maximal_scenarios(const AcyclicNet& net, const Bound& bound = {});

/// Both sequences must be well-formed step sequences of net.
bool same_scenario(const AcyclicNet& net, const StepSequence& s1, const StepSequence& s2);

struct CoverageReport {
  NodeSet covered_places;
  NodeSet covered_transitions;
  std::set<Arc> covered_arcs;
  NodeSet uncovered_places;
  NodeSet uncovered_transitions;
  std::set<Arc> uncovered_arcs;

  bool full() const {
    return uncovered_places.empty() && uncovered_transitions.empty() && uncovered_arcs.empty();
  }
};

CoverageReport coverage(const AcyclicNet& net, const Bound& bound = {});

}  // namespace sonet
