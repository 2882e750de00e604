#include "detail/wf_search.hpp"

#include <unordered_set>

namespace sonet::detail {

Bits overlapping_posts(const StepSystem& sys, const Bits& u) {
  Bits seen = sys.empty_places();
  Bits twice = sys.empty_places();
  u.for_each([&](std::size_t t) {
    twice |= (seen & sys.post(t));
    seen |= sys.post(t);
  });
  return twice;
}

namespace {

std::size_t first_index(const Bits& b) { return b.indices().front(); }

}  // namespace

WellFormedVerdict wf_search(const StepSystem& sys, bool singletons_only, const Bound& bound) {
  WellFormedVerdict verdict;
  std::unordered_set<std::pair<Bits, Bits>, BitsPairHash> seen;
  std::vector<Bits> path;
  Bits occurred = sys.empty_transitions();
  bool stop = false;

  std::function<void(const Bits&, const Bits&)> dfs = [&](const Bits& m, const Bits& filled) {
    if (stop) return;
    if (!seen.emplace(m, filled).second) return;
    if (seen.size() > bound.max_sequences || path.size() > bound.max_depth) {
      verdict.verdict = Verdict::Unknown;
      verdict.truncated = true;
      verdict.message = "state bound reached before a decision";
      stop = true;
      return;
    }
    for (const auto& u : sys.enabled_steps(m, singletons_only)) {
      occurred |= u;
      Bits twice = overlapping_posts(sys, u) | (sys.post_of(u) & filled);
      if (twice.any()) {
        path.push_back(u);
        const NodeId place = sys.place_names()[first_index(twice)];
        verdict.verdict = Verdict::NotOk;
        verdict.double_fill = DoubleFill{sys.names(path), place, path.size()};
        verdict.message = "place " + place + " receives a token twice in " + format_sequence(sys.names(path));
        stop = true;
        return;
      }
      path.push_back(u);
      dfs(sys.fire(m, u), filled | sys.post_of(u));
      path.pop_back();
      if (stop) return;
    }
  };
  dfs(sys.initial(), sys.empty_places());
  if (stop) return verdict;

  Bits never = sys.empty_transitions();
  for (std::size_t t = 0; t < sys.transition_count(); ++t)
    if (!occurred.test(t)) never.set(t);
  if (never.any()) {
    const NodeId t = sys.transition_names()[first_index(never)];
    verdict.verdict = Verdict::NotOk;
    verdict.unfireable = t;
    verdict.message = "transition " + t + " occurs in no step sequence";
  }
  return verdict;
}

StepSequenceCheck check_stepseq(const StepSystem& sys, const std::vector<Bits>& steps) {
  StepSequenceCheck out;
  Bits filled = sys.empty_places();
  for (std::size_t i = 0; i < steps.size(); ++i) {
    Bits twice = overlapping_posts(sys, steps[i]) | (sys.post_of(steps[i]) & filled);
    if (twice.any()) {
      out.well_formed = false;
      out.step_number = i + 1;
      out.place = sys.place_names()[first_index(twice)];
      return out;
    }
    filled |= sys.post_of(steps[i]);
  }
  return out;
}

}  // namespace sonet::detail
