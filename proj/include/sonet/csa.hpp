#pragma once

#include <optional>
#include <vector>

#include "sonet/scenarios.hpp"
#include "sonet/wellformed.hpp"

namespace sonet {

struct RawCsaNet {
  std::vector<RawNet> components;
  std::vector<NodeId> buffers;
  std::vector<Arc> buffer_arcs;
};

enum class CsaClass { CsoNet, BdCsaNet, CsaNet };

const char* to_string(CsaClass c);

/// Components (acyclic nets with disjoint node sets) plus buffer places Q and
/// buffer arcs W between buffers and component transitions.
class CsaNet {
 public:
  /// Throws ValidationError listing every violation.
  static CsaNet validate(const RawCsaNet& raw, const Bound& bound = {});
  static std::vector<Violation> check(const RawCsaNet& raw, const Bound& bound = {});

  const std::vector<AcyclicNet>& components() const noexcept { return components_; }
  const NodeSet& buffers() const noexcept { return buffers_; }
  const std::set<Arc>& buffer_arcs() const noexcept { return buffer_arcs_; }

  /// Component places only (buffers excluded).
  const NodeSet& places() const noexcept { return places_; }
  const NodeSet& transitions() const noexcept { return transitions_; }
  NodeSet places_and_buffers() const { return set_union(places_, buffers_); }

  bool has_node(const NodeId& x) const;
  /// Index of the component owning a place or transition; nullopt for buffers.
  std::optional<std::size_t> component_of(const NodeId& x) const;

  /// Neighbourhood over F ∪ W. Throws UnknownNode.
  NodeSet preset(const NodeId& x) const;
  NodeSet postset(const NodeId& x) const;
  NodeSet preset(const NodeSet& xs) const;
  NodeSet postset(const NodeSet& xs) const;

  /// Component initial places (buffers never are).
  NodeSet initial_places() const;
  /// Component final places plus buffers without a consumer.
  NodeSet final_places() const;

  RawCsaNet to_raw() const;

  friend bool operator==(const CsaNet& a, const CsaNet& b) {
    return a.components_ == b.components_ && a.buffers_ == b.buffers_ && a.buffer_arcs_ == b.buffer_arcs_;
  }

 private:
  friend CsaNet csa_of(const AcyclicNet& net);
  CsaNet() = default;

  std::vector<AcyclicNet> components_;
  NodeSet buffers_;
  std::set<Arc> buffer_arcs_;
  NodeSet places_;
  NodeSet transitions_;
};

/// Single-component net without buffers. The component is taken as is,
/// well-formed or not.
CsaNet csa_of(const AcyclicNet& net);

CsaClass classify_csa(const CsaNet& net);

struct Neighbourhood {
  NodeSet pre;
  NodeSet post;
};
Neighbourhood csa_neighbourhood(const CsaNet& net, const NodeId& x);

/// •U ⊆ M ∪ (U• ∩ Q). Throws UnknownTransition / NotAStep.
bool csa_enabled(const CsaNet& net, const Marking& m, const Step& u);
/// (M ∪ U•) \ •U over F ∪ W. Throws StepNotEnabled (nodes = missing places).
Marking csa_fire(const CsaNet& net, const Marking& m, const Step& u);
MixedStepSequence csa_run(const CsaNet& net, const Marking& m0, const std::vector<Step>& steps);
std::vector<Step> csa_enabled_steps(const CsaNet& net, const Marking& m);

/// fseq is only accepted for single-component nets (InvalidArgument otherwise).
BehaviourResult csa_behaviours(const CsaNet& net, const BehaviourQuery& q);

/// Projection onto component i (0-based) of a step sequence of net.
/// Throws IndexOutOfRange or NotAStepSequence.
StepSequence project(const CsaNet& net, std::size_t i, const StepSequence& s);
/// Mixed projection: restrict M0 U1 M1 ... to the component's nodes, drop
/// empty sets, then collapse consecutive duplicates.
SetSequence project(const CsaNet& net, std::size_t i, const MixedStepSequence& mu);

/// Maximal sets of transitions pairwise related by W⁺ in both directions
/// (singletons included), ordered. Throws NotACsoNet.
std::vector<NodeSet> syn_cycles(const CsaNet& net);
/// Union of the syn-cycles of all scenarios. Throws NotWellFormed.
std::vector<NodeSet> syn_cycles_csa(const CsaNet& net, const Bound& bound = {});
/// Same computation run directly on the whole net (diagnostic only).
std::vector<NodeSet> syn_cycles_direct(const CsaNet& net);

/// Splits an enabled step into syn-cycles that execute one after another and
/// reach csa_fire(m, u). Throws StepNotEnabled or NoDecomposition.
std::vector<NodeSet> decompose_step(const CsaNet& net, const Marking& m, const Step& u);

StepSequenceCheck csa_is_wf_stepseq(const CsaNet& net, const StepSequence& s);
WellFormedVerdict csa_is_well_formed(const CsaNet& net, const Bound& bound = {});

/// Scenario with transitions T: each component restricted to its initial
/// places plus post(T), buffers post(T) ∩ Q and the buffer arcs touching them.
CsaNet csa_scenario_for(const CsaNet& net, const NodeSet& transitions);
/// Throws NotAStepSequence or NotWellFormed.
CsaNet csa_scenario_of(const CsaNet& net, const StepSequence& s);
std::vector<CsaNet> csa_scenarios(const CsaNet& net, const Bound& bound = {});
std::vector<CsaNet> csa_maximal_scenarios(const CsaNet& net, const Bound& bound = {});
CoverageReport csa_coverage(const CsaNet& net, const Bound& bound = {});

}  // namespace sonet
