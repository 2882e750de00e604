#include "sonet/acyclic.hpp"

#include <algorithm>
#include <functional>

namespace sonet {

const char* to_string(NetClass c) {
  switch (c) {
    case NetClass::OccurrenceNet: return "OccurrenceNet";
    case NetClass::BackwardDeterministic: return "BackwardDeterministic";
    case NetClass::GeneralAcyclic: return "GeneralAcyclic";
  }
  return "Unknown";
}

std::vector<NodeId> smallest_cycle(const Relation& r) {
  const Relation closure = transitive_closure(r);
  const NodeId* start = nullptr;
  for (const auto& x : r.universe()) {
    if (closure.contains(x, x)) {
      start = &x;
      break;
    }
  }
  if (!start) return {};
  const NodeId s = *start;

  // Nodes on a cycle through s are exactly those reachable from s that reach s.
  std::map<NodeId, std::vector<NodeId>> succ;
  for (const auto& [x, y] : r.pairs())
    if ((x == s || (closure.contains(s, x) && closure.contains(x, s))) &&
        (y == s || (closure.contains(s, y) && closure.contains(y, s))))
      succ[x].push_back(y);  // pairs() is sorted, so successor lists are too

  std::vector<NodeId> path{s};
  NodeSet on_path{s};
  std::function<bool(const NodeId&)> dfs = [&](const NodeId& x) -> bool {
    for (const auto& y : succ[x]) {
      if (y == s) {
        path.push_back(s);
        return true;
      }
      if (on_path.count(y)) continue;
      path.push_back(y);
      on_path.insert(y);
      if (dfs(y)) return true;
      on_path.erase(y);
      path.pop_back();
    }
    return false;
  };
  dfs(s);
  return path;
}

std::vector<Violation> AcyclicNet::check(const RawNet& raw) {
  std::vector<Violation> out;
  if (raw.places.empty()) out.push_back({ViolationKind::EmptyPlaceSet, {}, "the place set is empty"});

  NodeSet places;
  NodeSet transitions;
  for (const auto& p : raw.places)
    if (!places.insert(p).second)
      out.push_back({ViolationKind::DuplicateId, {p}, "place '" + p + "' is listed twice"});
  for (const auto& t : raw.transitions)
    if (!transitions.insert(t).second)
      out.push_back({ViolationKind::DuplicateId, {t}, "transition '" + t + "' is listed twice"});
  for (const auto& x : set_intersection(places, transitions))
    out.push_back({ViolationKind::NodeClash, {x}, "'" + x + "' is both a place and a transition"});

  std::set<Pair> pairs;
  NodeSet has_pre;
  NodeSet has_post;
  for (const auto& [from, to] : raw.arcs) {
    const bool from_known = places.count(from) || transitions.count(from);
    const bool to_known = places.count(to) || transitions.count(to);
    if (!from_known || !to_known) {
      out.push_back({ViolationKind::DanglingArcEndpoint, {from, to},
                     "arc " + from + "->" + to + " names an unknown node"});
      continue;
    }
    const bool place_to_transition = places.count(from) && transitions.count(to);
    const bool transition_to_place = transitions.count(from) && places.count(to);
    if (!place_to_transition && !transition_to_place) {
      out.push_back({ViolationKind::InvalidArcDirection, {from, to},
                     "arc " + from + "->" + to + " does not join a place and a transition"});
      continue;
    }
    pairs.emplace(from, to);
    if (place_to_transition) has_pre.insert(to);
    if (transition_to_place) has_post.insert(from);
  }

  const auto cycle = smallest_cycle(Relation(set_union(places, transitions), pairs));
  if (!cycle.empty()) {
    std::string text;
    for (const auto& x : cycle) text += (text.empty() ? "" : "->") + x;
    out.push_back({ViolationKind::CyclicFlow, cycle, "flow contains the cycle " + text});
  }

  for (const auto& t : transitions) {
    if (!has_pre.count(t))
      out.push_back({ViolationKind::TransitionWithoutPre, {t}, "transition '" + t + "' has no pre-place"});
    if (!has_post.count(t))
      out.push_back({ViolationKind::TransitionWithoutPost, {t}, "transition '" + t + "' has no post-place"});
  }
  return out;
}

AcyclicNet AcyclicNet::validate(const RawNet& raw) {
  if (auto violations = check(raw); !violations.empty()) throw ValidationError(std::move(violations));
  AcyclicNet net;
  net.places_.insert(raw.places.begin(), raw.places.end());
  net.transitions_.insert(raw.transitions.begin(), raw.transitions.end());
  for (const auto& x : net.places_) net.pre_[x], net.post_[x];
  for (const auto& x : net.transitions_) net.pre_[x], net.post_[x];
  for (const auto& arc : raw.arcs) {
    net.flow_.insert(arc);
    net.post_[arc.from].insert(arc.to);
    net.pre_[arc.to].insert(arc.from);
  }
  for (const auto& p : net.places_) {
    if (net.pre_[p].empty()) net.initial_.insert(p);
    if (net.post_[p].empty()) net.final_.insert(p);
  }
  return net;
}

const NodeSet& AcyclicNet::preset(const NodeId& x) const {
  auto it = pre_.find(x);
  if (it == pre_.end()) throw Error(ErrorCode::UnknownNode, "unknown node '" + x + "'", {x});
  return it->second;
}

const NodeSet& AcyclicNet::postset(const NodeId& x) const {
  auto it = post_.find(x);
  if (it == post_.end()) throw Error(ErrorCode::UnknownNode, "unknown node '" + x + "'", {x});
  return it->second;
}

NodeSet AcyclicNet::preset(const NodeSet& xs) const {
  NodeSet out;
  for (const auto& x : xs) {
    const auto& pre = preset(x);
    out.insert(pre.begin(), pre.end());
  }
  return out;
}

NodeSet AcyclicNet::postset(const NodeSet& xs) const {
  NodeSet out;
  for (const auto& x : xs) {
    const auto& post = postset(x);
    out.insert(post.begin(), post.end());
  }
  return out;
}

RawNet AcyclicNet::to_raw() const {
  return RawNet{{places_.begin(), places_.end()},
                {transitions_.begin(), transitions_.end()},
                {flow_.begin(), flow_.end()}};
}

Relation AcyclicNet::flow_relation() const {
  std::set<Pair> pairs;
  for (const auto& a : flow_) pairs.emplace(a.from, a.to);
  return Relation(set_union(places_, transitions_), std::move(pairs));
}

bool is_backward_deterministic(const AcyclicNet& net) {
  return std::all_of(net.places().begin(), net.places().end(),
                     [&](const NodeId& p) { return net.preset(p).size() <= 1; });
}

bool is_occurrence_net(const AcyclicNet& net) {
  return std::all_of(net.places().begin(), net.places().end(), [&](const NodeId& p) {
    return net.preset(p).size() <= 1 && net.postset(p).size() <= 1;
  });
}

NetClass classify(const AcyclicNet& net) {
  if (is_occurrence_net(net)) return NetClass::OccurrenceNet;
  if (is_backward_deterministic(net)) return NetClass::BackwardDeterministic;
  return NetClass::GeneralAcyclic;
}

bool is_subnet(const AcyclicNet& outer, const AcyclicNet& inner) {
  if (!is_subset(inner.places(), outer.places()) || !is_subset(inner.transitions(), outer.transitions()))
    return false;
  for (const auto& arc : outer.flow()) {
    const bool inside = inner.has_node(arc.from) && inner.has_node(arc.to);
    if (inside != (inner.flow().count(arc) != 0)) return false;
  }
  for (const auto& arc : inner.flow())
    if (!outer.flow().count(arc)) return false;
  for (const auto& t : inner.transitions())
    if (inner.preset(t) != outer.preset(t) || inner.postset(t) != outer.postset(t)) return false;
  return true;
}

bool is_coinitial_subnet(const AcyclicNet& outer, const AcyclicNet& inner) {
  return is_subnet(outer, inner) && inner.initial_places() == outer.initial_places();
}

AcyclicNet induced_subnet(const AcyclicNet& outer, const NodeSet& places, const NodeSet& transitions) {
  std::vector<Violation> violations;
  if (places.empty()) violations.push_back({ViolationKind::EmptyPlaceSet, {}, "subnet needs a place"});
  for (const auto& p : places)
    if (!outer.has_place(p))
      violations.push_back({ViolationKind::DanglingArcEndpoint, {p}, "'" + p + "' is not a place of the net"});
  for (const auto& t : transitions) {
    if (!outer.has_transition(t)) {
      violations.push_back(
          {ViolationKind::DanglingArcEndpoint, {t}, "'" + t + "' is not a transition of the net"});
      continue;
    }
    if (!is_subset(outer.preset(t), places))
      violations.push_back({ViolationKind::TransitionWithoutPre, {t}, "'" + t + "' would lose a pre-place"});
    if (!is_subset(outer.postset(t), places))
      violations.push_back({ViolationKind::TransitionWithoutPost, {t}, "'" + t + "' would lose a post-place"});
  }
  if (!violations.empty()) throw ValidationError(std::move(violations));

  RawNet raw{{places.begin(), places.end()}, {transitions.begin(), transitions.end()}, {}};
  for (const auto& arc : outer.flow()) {
    const bool from_in = places.count(arc.from) || transitions.count(arc.from);
    const bool to_in = places.count(arc.to) || transitions.count(arc.to);
    if (from_in && to_in) raw.arcs.push_back(arc);
  }
  return AcyclicNet::validate(raw);
}

}  // namespace sonet
