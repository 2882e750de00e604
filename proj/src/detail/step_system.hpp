#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "detail/bits.hpp"
#include "sonet/acyclic.hpp"
#include "sonet/semantics.hpp"

namespace sonet::detail {

// Index-based step semantics shared by acyclic, csa and bsa nets.
//
// A step U is enabled at M iff its transitions have pairwise disjoint presets,
// •U ⊆ M ∪ (U• ∩ Q), and (when a marking filter is installed) both M and the
// successor marking pass the filter. Q is empty for plain acyclic nets, which
// reduces the condition to •U ⊆ M.
class StepSystem {
 public:
  using Filter = std::function<bool(const Bits&)>;

  struct Spec {
    NodeSet places;  // including buffer places
    NodeSet transitions;
    std::vector<Arc> arcs;
    NodeSet buffers;
    NodeSet initial;
  };

  StepSystem() = default;
  explicit StepSystem(const Spec& spec);
  static StepSystem of(const AcyclicNet& net);

  void set_filter(Filter f) { filter_ = std::move(f); }
  bool has_filter() const { return static_cast<bool>(filter_); }
  bool admissible(const Bits& m) const { return !filter_ || filter_(m); }

  std::size_t place_count() const { return places_.size(); }
  std::size_t transition_count() const { return transitions_.size(); }
  const std::vector<NodeId>& place_names() const { return places_; }
  const std::vector<NodeId>& transition_names() const { return transitions_; }
  const Bits& initial() const { return initial_; }
  const Bits& buffers() const { return buffers_; }
  const Bits& pre(std::size_t t) const { return pre_[t]; }
  const Bits& post(std::size_t t) const { return post_[t]; }

  Bits empty_places() const { return Bits(places_.size()); }
  Bits empty_transitions() const { return Bits(transitions_.size()); }

  Bits marking(const NodeSet& m) const;   // throws UnknownPlace
  Bits step(const NodeSet& u) const;      // throws UnknownTransition
  NodeSet place_set(const Bits& m) const;
  NodeSet transition_set(const Bits& u) const;

  Bits pre_of(const Bits& u) const;
  Bits post_of(const Bits& u) const;

  /// Pre-places shared by two distinct members of u (empty for a step).
  Bits shared_pre(const Bits& u) const;
  /// Places of •U missing from M ∪ (U• ∩ Q).
  Bits missing(const Bits& m, const Bits& u) const;

  /// Structural enabling only (ignores the filter).
  bool enabled_unfiltered(const Bits& m, const Bits& u) const;
  bool enabled(const Bits& m, const Bits& u) const;
  Bits fire(const Bits& m, const Bits& u) const;

  /// Enabled steps in canonical order. With `unfiltered` the marking filter is
  /// ignored. `cap` limits the number returned (0 = no cap); `capped` reports
  /// whether the cap cut the list.
  std::vector<Bits> enabled_steps(const Bits& m, bool singletons_only = false, bool unfiltered = false,
                                  std::size_t cap = 0, bool* capped = nullptr) const;

  struct Node {
    const std::vector<Bits>& steps;
    const std::vector<Bits>& markings;
    bool maximal;
  };
  /// Depth-first enumeration of all step sequences from m0 (canonical order,
  /// prefixes before extensions). Returns true if the bound truncated it.
  bool explore(const Bits& m0, bool singletons_only, const Bound& bound,
               const std::function<void(const Node&)>& visit) const;

  /// Marking-graph breadth-first search. Returns true if truncated.
  bool reach(const Bits& m0, std::size_t max_markings, std::set<Bits>& out) const;

  BehaviourResult behaviours(const Bits& m0, const BehaviourQuery& q) const;

  StepSequence names(const std::vector<Bits>& steps) const;
  MixedStepSequence names(const std::vector<Bits>& steps, const std::vector<Bits>& markings) const;

 private:
  std::vector<NodeId> places_;
  std::vector<NodeId> transitions_;
  std::map<NodeId, std::size_t> place_index_;
  std::map<NodeId, std::size_t> transition_index_;
  std::vector<Bits> pre_;
  std::vector<Bits> post_;
  Bits buffers_;
  Bits initial_;
  Filter filter_;
};

/// Validates a named step against the system and returns its index form:
/// UnknownTransition, or NotAStep if empty or pre-sharing.
Bits checked_step(const StepSystem& sys, const Step& u);

/// Replays a step sequence from m0. Throws NotAStepSequence (index = failing
/// position) when a step is not enabled.
std::vector<Bits> replay(const StepSystem& sys, const Bits& m0, const std::vector<Bits>& steps);

}  // namespace sonet::detail
