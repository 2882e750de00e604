#include "detail/step_system.hpp"

#include <deque>

namespace sonet::detail {

StepSystem::StepSystem(const Spec& spec)
    : places_(spec.places.begin(), spec.places.end()),
      transitions_(spec.transitions.begin(), spec.transitions.end()) {
  for (std::size_t i = 0; i < places_.size(); ++i) place_index_[places_[i]] = i;
  for (std::size_t i = 0; i < transitions_.size(); ++i) transition_index_[transitions_[i]] = i;
  pre_.assign(transitions_.size(), Bits(places_.size()));
  post_.assign(transitions_.size(), Bits(places_.size()));
  for (const auto& [from, to] : spec.arcs) {
    if (auto t = transition_index_.find(to); t != transition_index_.end())
      pre_[t->second].set(place_index_.at(from));
    else
      post_[transition_index_.at(from)].set(place_index_.at(to));
  }
  buffers_ = marking(spec.buffers);
  initial_ = marking(spec.initial);
}

StepSystem StepSystem::of(const AcyclicNet& net) {
  return StepSystem(Spec{net.places(), net.transitions(), {net.flow().begin(), net.flow().end()}, {},
                         net.initial_places()});
}

Bits StepSystem::marking(const NodeSet& m) const {
  Bits out(places_.size());
  for (const auto& p : m) {
    auto it = place_index_.find(p);
    if (it == place_index_.end()) throw Error(ErrorCode::UnknownPlace, "unknown place '" + p + "'", {p});
    out.set(it->second);
  }
  return out;
}

Bits StepSystem::step(const NodeSet& u) const {
  Bits out(transitions_.size());
  for (const auto& t : u) {
    auto it = transition_index_.find(t);
    if (it == transition_index_.end())
      throw Error(ErrorCode::UnknownTransition, "unknown transition '" + t + "'", {t});
    out.set(it->second);
  }
  return out;
}

NodeSet StepSystem::place_set(const Bits& m) const {
  NodeSet out;
  m.for_each([&](std::size_t i) { out.insert(out.end(), places_[i]); });
  return out;
}

NodeSet StepSystem::transition_set(const Bits& u) const {
  NodeSet out;
  u.for_each([&](std::size_t i) { out.insert(out.end(), transitions_[i]); });
  return out;
}

Bits StepSystem::pre_of(const Bits& u) const {
  Bits out(places_.size());
  u.for_each([&](std::size_t t) { out |= pre_[t]; });
  return out;
}

Bits StepSystem::post_of(const Bits& u) const {
  Bits out(places_.size());
  u.for_each([&](std::size_t t) { out |= post_[t]; });
  return out;
}

Bits StepSystem::shared_pre(const Bits& u) const {
  Bits seen(places_.size());
  Bits shared(places_.size());
  u.for_each([&](std::size_t t) {
    shared |= (seen & pre_[t]);
    seen |= pre_[t];
  });
  return shared;
}

Bits StepSystem::missing(const Bits& m, const Bits& u) const {
  return pre_of(u) - (m | (post_of(u) & buffers_));
}

bool StepSystem::enabled_unfiltered(const Bits& m, const Bits& u) const {
  return u.any() && shared_pre(u).none() && missing(m, u).none();
}

bool StepSystem::enabled(const Bits& m, const Bits& u) const {
  if (!enabled_unfiltered(m, u)) return false;
  if (!filter_) return true;
  return filter_(m) && filter_(fire(m, u));
}

Bits StepSystem::fire(const Bits& m, const Bits& u) const { return (m | post_of(u)) - pre_of(u); }

std::vector<Bits> StepSystem::enabled_steps(const Bits& m, bool singletons_only, bool unfiltered,
                                            std::size_t cap, bool* capped) const {
  if (capped) *capped = false;
  std::vector<Bits> out;
  if (!unfiltered && filter_ && !filter_(m)) return out;

  // Candidates: non-buffer inputs marked, and every buffer input either marked
  // or producible by another candidate (fixpoint).
  std::vector<bool> alive(transitions_.size(), false);
  for (std::size_t t = 0; t < transitions_.size(); ++t) alive[t] = ((pre_[t] - buffers_) - m).none();
  for (bool changed = true; changed;) {
    changed = false;
    Bits producible(places_.size());
    for (std::size_t t = 0; t < transitions_.size(); ++t)
      if (alive[t]) producible |= post_[t];
    for (std::size_t t = 0; t < transitions_.size(); ++t) {
      if (alive[t] && ((pre_[t] & buffers_) - m - producible).any()) {
        alive[t] = false;
        changed = true;
      }
    }
  }
  std::vector<std::size_t> candidates;
  for (std::size_t t = 0; t < transitions_.size(); ++t)
    if (alive[t]) candidates.push_back(t);

  auto accept = [&](const Bits& u) {
    if (!enabled_unfiltered(m, u)) return;
    if (!unfiltered && filter_ && !filter_(fire(m, u))) return;
    out.push_back(u);
  };

  if (singletons_only) {
    for (auto t : candidates) {
      if (cap && out.size() >= cap) {
        if (capped) *capped = true;
        break;
      }
      Bits u(transitions_.size());
      u.set(t);
      accept(u);
    }
    return out;
  }

  Bits u(transitions_.size());
  Bits used_pre(places_.size());
  bool stop = false;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    for (std::size_t i = from; i < candidates.size() && !stop; ++i) {
      const auto t = candidates[i];
      if (used_pre.intersects(pre_[t])) continue;
      u.set(t);
      const Bits saved = used_pre;
      used_pre |= pre_[t];
      if (cap && out.size() >= cap) {
        if (capped) *capped = true;
        stop = true;
      } else {
        accept(u);
        grow(i + 1);
      }
      used_pre = saved;
      u.reset(t);
    }
  };
  grow(0);
  return out;
}

bool StepSystem::explore(const Bits& m0, bool singletons_only, const Bound& bound,
                         const std::function<void(const Node&)>& visit) const {
  std::vector<Bits> steps;
  std::vector<Bits> markings{m0};
  std::size_t visited = 0;
  bool truncated = false;
  std::function<void()> dfs = [&]() {
    if (truncated) return;
    if (visited >= bound.max_sequences) {
      truncated = true;
      return;
    }
    ++visited;
    const auto next = enabled_steps(markings.back(), singletons_only);
    visit(Node{steps, markings, next.empty()});
    if (next.empty()) return;
    if (steps.size() >= bound.max_depth) {
      truncated = true;
      return;
    }
    for (const auto& u : next) {
      steps.push_back(u);
      markings.push_back(fire(markings.back(), u));
      dfs();
      markings.pop_back();
      steps.pop_back();
      if (truncated) return;
    }
  };
  dfs();
  return truncated;
}

bool StepSystem::reach(const Bits& m0, std::size_t max_markings, std::set<Bits>& out) const {
  std::deque<Bits> work{m0};
  out.insert(m0);
  while (!work.empty()) {
    const Bits m = std::move(work.front());
    work.pop_front();
    for (const auto& u : enabled_steps(m)) {
      Bits next = fire(m, u);
      if (out.count(next)) continue;
      if (out.size() >= max_markings) return true;
      out.insert(next);
      work.push_back(std::move(next));
    }
  }
  return false;
}

StepSequence StepSystem::names(const std::vector<Bits>& steps) const {
  StepSequence out;
  out.reserve(steps.size());
  for (const auto& u : steps) out.push_back(transition_set(u));
  return out;
}

MixedStepSequence StepSystem::names(const std::vector<Bits>& steps, const std::vector<Bits>& markings) const {
  MixedStepSequence out;
  out.steps = names(steps);
  for (const auto& m : markings) out.markings.push_back(place_set(m));
  return out;
}

BehaviourResult StepSystem::behaviours(const Bits& m0, const BehaviourQuery& q) const {
  BehaviourResult result;
  result.kind = q.kind;
  if (q.kind == BehaviourKind::Reach) {
    std::set<Bits> found;
    result.truncated = reach(m0, q.bound.max_sequences, found);
    for (const auto& m : found) result.markings.insert(place_set(m));
    return result;
  }
  const bool singletons = q.kind == BehaviourKind::Fseq;
  result.truncated = explore(m0, singletons, q.bound, [&](const Node& node) {
    switch (q.kind) {
      case BehaviourKind::Sseq:
      case BehaviourKind::Fseq: result.sequences.insert(names(node.steps)); break;
      case BehaviourKind::Maxsseq:
        if (node.maximal) result.sequences.insert(names(node.steps));
        break;
      case BehaviourKind::Mixsseq: result.mixed.insert(names(node.steps, node.markings)); break;
      case BehaviourKind::Maxmixsseq:
        if (node.maximal) result.mixed.insert(names(node.steps, node.markings));
        break;
      case BehaviourKind::Finreach:
        if (node.maximal) result.markings.insert(place_set(node.markings.back()));
        break;
      case BehaviourKind::Reach: break;
    }
  });
  return result;
}

Bits checked_step(const StepSystem& sys, const Step& u) {
  if (u.empty()) throw Error(ErrorCode::NotAStep, "a step must contain at least one transition");
  Bits bits = sys.step(u);
  if (Bits shared = sys.shared_pre(bits); shared.any()) {
    const NodeSet places = sys.place_set(shared);
    throw Error(ErrorCode::NotAStep, format_set(u) + " is not a step: transitions share " + format_set(places),
                {places.begin(), places.end()});
  }
  return bits;
}

std::vector<Bits> replay(const StepSystem& sys, const Bits& m0, const std::vector<Bits>& steps) {
  std::vector<Bits> markings{m0};
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!sys.enabled(markings.back(), steps[i])) {
      const NodeSet missing = sys.place_set(sys.missing(markings.back(), steps[i]));
      throw Error(ErrorCode::NotAStepSequence,
                  "step " + std::to_string(i + 1) + " " + format_set(sys.transition_set(steps[i])) +
                      " is not enabled",
                  {missing.begin(), missing.end()}, i);
    }
    markings.push_back(sys.fire(markings.back(), steps[i]));
  }
  return markings;
}

}  // namespace sonet::detail
