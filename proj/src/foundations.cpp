#include "sonet/foundations.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "sonet/error.hpp"

namespace sonet {

Relation::Relation(NodeSet universe, std::set<Pair> pairs)
    : universe_(std::move(universe)), pairs_(std::move(pairs)) {
  for (const auto& [x, y] : pairs_) {
    if (!universe_.count(x) || !universe_.count(y)) {
      throw Error(ErrorCode::InvalidArgument, "relation pair (" + x + "," + y + ") leaves the universe",
                  {x, y});
    }
  }
}

bool Relation::subset_of(const Relation& other) const {
  return std::includes(other.pairs_.begin(), other.pairs_.end(), pairs_.begin(), pairs_.end());
}

namespace {

std::map<NodeId, std::vector<NodeId>> successors(const Relation& r) {
  std::map<NodeId, std::vector<NodeId>> succ;
  for (const auto& [x, y] : r.pairs()) succ[x].push_back(y);
  return succ;
}

}  // namespace

Relation transitive_closure(const Relation& r) {
  const auto succ = successors(r);
  std::set<Pair> closed;
  for (const auto& start : r.universe()) {
    NodeSet seen;
    std::deque<NodeId> work;
    if (auto it = succ.find(start); it != succ.end()) work.assign(it->second.begin(), it->second.end());
    while (!work.empty()) {
      NodeId y = std::move(work.front());
      work.pop_front();
      if (!seen.insert(y).second) continue;
      closed.emplace(start, y);
      if (auto it = succ.find(y); it != succ.end()) work.insert(work.end(), it->second.begin(), it->second.end());
    }
  }
  return Relation(r.universe(), std::move(closed));
}

bool is_acyclic(const Relation& r) {
  const Relation closure = transitive_closure(r);
  return std::none_of(closure.pairs().begin(), closure.pairs().end(),
                      [](const Pair& p) { return p.first == p.second; });
}

bool is_acyclic_by_topological_sort(const Relation& r) {
  std::map<NodeId, std::size_t> indegree;
  for (const auto& x : r.universe()) indegree[x] = 0;
  for (const auto& [x, y] : r.pairs()) ++indegree[y];
  const auto succ = successors(r);
  std::deque<NodeId> ready;
  for (const auto& [x, d] : indegree)
    if (d == 0) ready.push_back(x);
  std::size_t removed = 0;
  while (!ready.empty()) {
    NodeId x = ready.front();
    ready.pop_front();
    ++removed;
    if (auto it = succ.find(x); it != succ.end())
      for (const auto& y : it->second)
        if (--indegree[y] == 0) ready.push_back(y);
  }
  return removed == r.universe().size();
}

NodeSet occurring(const SetSequence& s) {
  NodeSet out;
  for (const auto& step : s) out.insert(step.begin(), step.end());
  return out;
}

SetSequence restrict(const SetSequence& s, const NodeSet& x) {
  SetSequence out;
  out.reserve(s.size());
  for (const auto& step : s) out.push_back(set_intersection(step, x));
  return out;
}

SetSequence restrict_compact(const SetSequence& s, const NodeSet& x) {
  SetSequence out;
  for (auto& step : restrict(s, x))
    if (!step.empty()) out.push_back(std::move(step));
  return out;
}

NodeSet set_union(const NodeSet& a, const NodeSet& b) {
  NodeSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

NodeSet set_intersection(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

NodeSet set_difference(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

bool is_subset(const NodeSet& a, const NodeSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool disjoint(const NodeSet& a, const NodeSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return true;
}

std::string format_set(const NodeSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& x : s) {
    if (!first) out += ",";
    out += x;
    first = false;
  }
  return out + "}";
}

std::string format_sequence(const SetSequence& s) {
  if (s.empty()) return "λ";
  std::string out;
  for (const auto& step : s) out += format_set(step);
  return out;
}

}  // namespace sonet
