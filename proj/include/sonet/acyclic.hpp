#pragma once

#include <map>
#include <string>
#include <vector>

#include "sonet/error.hpp"
#include "sonet/foundations.hpp"

namespace sonet {

struct Arc {
  NodeId from;
  NodeId to;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Unvalidated net description, as read from a file or built by hand.
struct RawNet {
  std::vector<NodeId> places;
  std::vector<NodeId> transitions;
  std::vector<Arc> arcs;
};

enum class NetClass { OccurrenceNet, BackwardDeterministic, GeneralAcyclic };

const char* to_string(NetClass c);

/// An acyclic net (P, T, F): disjoint places and transitions, acyclic flow,
/// every transition with at least one pre-place and one post-place.
/// Instances only exist in validated form and are immutable.
class AcyclicNet {
 public:
  /// Throws ValidationError listing every violation.
  static AcyclicNet validate(const RawNet& raw);
  /// All violations of `raw`; empty iff validate succeeds.
  static std::vector<Violation> check(const RawNet& raw);

  const NodeSet& places() const noexcept { return places_; }
  const NodeSet& transitions() const noexcept { return transitions_; }
  const std::set<Arc>& flow() const noexcept { return flow_; }

  bool has_place(const NodeId& x) const { return places_.count(x) != 0; }
  bool has_transition(const NodeId& x) const { return transitions_.count(x) != 0; }
  bool has_node(const NodeId& x) const { return has_place(x) || has_transition(x); }

  /// Throws Error(UnknownNode).
  const NodeSet& preset(const NodeId& x) const;
  const NodeSet& postset(const NodeId& x) const;
  NodeSet preset(const NodeSet& xs) const;
  NodeSet postset(const NodeSet& xs) const;

  const NodeSet& initial_places() const noexcept { return initial_; }
  const NodeSet& final_places() const noexcept { return final_; }

  RawNet to_raw() const;
  Relation flow_relation() const;

  friend bool operator==(const AcyclicNet& a, const AcyclicNet& b) {
    return a.places_ == b.places_ && a.transitions_ == b.transitions_ && a.flow_ == b.flow_;
  }

 private:
  AcyclicNet() = default;

  NodeSet places_;
  NodeSet transitions_;
  std::set<Arc> flow_;
  std::map<NodeId, NodeSet> pre_;
  std::map<NodeId, NodeSet> post_;
  NodeSet initial_;
  NodeSet final_;
};

/// Most specific class: OccurrenceNet (|•p|<=1 and |p•|<=1), then
/// BackwardDeterministic (|•p|<=1), else GeneralAcyclic.
NetClass classify(const AcyclicNet& net);
bool is_occurrence_net(const AcyclicNet& net);
bool is_backward_deterministic(const AcyclicNet& net);

bool is_subnet(const AcyclicNet& outer, const AcyclicNet& inner);
bool is_coinitial_subnet(const AcyclicNet& outer, const AcyclicNet& inner);

/// The subnet on the chosen places and transitions; the flow is the
/// restriction of the outer flow. Throws ValidationError when the choice does
/// not form a subnet (a transition would lose a pre- or post-place, or the
/// place set is empty).
AcyclicNet induced_subnet(const AcyclicNet& outer, const NodeSet& places, const NodeSet& transitions);

/// The lexicographically smallest directed cycle of a relation, written with
/// its smallest node first and repeated at the end; empty if acyclic.
std::vector<NodeId> smallest_cycle(const Relation& r);

}  // namespace sonet
