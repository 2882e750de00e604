#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace sonet {

using NodeId = std::string;
using NodeSet = std::set<NodeId>;
using Pair = std::pair<NodeId, NodeId>;

/// A finite binary relation over an explicit universe of node identifiers.
class Relation {
 public:
  Relation() = default;
  /// Throws Error(InvalidArgument) if a pair mentions a node outside the universe.
  Relation(NodeSet universe, std::set<Pair> pairs);

  const NodeSet& universe() const noexcept { return universe_; }
  const std::set<Pair>& pairs() const noexcept { return pairs_; }
  bool contains(const NodeId& x, const NodeId& y) const { return pairs_.count({x, y}) != 0; }
  bool subset_of(const Relation& other) const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  NodeSet universe_;
  std::set<Pair> pairs_;
};

/// R+ = R^1 ∪ R^2 ∪ ... (worklist closure from every node).
Relation transitive_closure(const Relation& r);

/// True iff R+ has an empty diagonal.
bool is_acyclic(const Relation& r);

/// Same predicate via Kahn's topological sort; kept as an independent route.
bool is_acyclic_by_topological_sort(const Relation& r);

using SetSequence = std::vector<NodeSet>;

NodeSet occurring(const SetSequence& s);

/// Element-wise intersection with x; empty sets are kept.
SetSequence restrict(const SetSequence& s, const NodeSet& x);

/// Intersection with x followed by deletion of every empty set.
SetSequence restrict_compact(const SetSequence& s, const NodeSet& x);

// Small set helpers used throughout.
NodeSet set_union(const NodeSet& a, const NodeSet& b);
NodeSet set_intersection(const NodeSet& a, const NodeSet& b);
NodeSet set_difference(const NodeSet& a, const NodeSet& b);
bool is_subset(const NodeSet& a, const NodeSet& b);
bool disjoint(const NodeSet& a, const NodeSet& b);

/// "{a,b}" rendering used by diagnostics and the table output of the CLI.
std::string format_set(const NodeSet& s);
std::string format_sequence(const SetSequence& s);

}  // namespace sonet
