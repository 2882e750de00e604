#pragma once

#include "detail/step_system.hpp"
#include "sonet/csa.hpp"

namespace sonet::detail {

StepSystem csa_system(const CsaNet& net);

// The W-graph on transitions: t -> u iff t W q W u for some buffer q.
// Returns its strongly connected components, restricted to `within`
// (all transitions when empty), as sorted name sets.
std::vector<NodeSet> w_components(const CsaNet& net, const NodeSet& within);

// Transition sets of the structural scenarios, sorted.
std::vector<NodeSet> csa_scenario_sets(const CsaNet& net, const Bound& bound);

}  // namespace sonet::detail
