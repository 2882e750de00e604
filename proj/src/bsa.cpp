#include "sonet/bsa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <unordered_set>

#include "detail/csa_system.hpp"
#include "detail/maximal.hpp"

namespace sonet {

const char* to_string(BlockReason r) {
  switch (r) {
    case BlockReason::None: return "none";
    case BlockReason::Underlying: return "underlying";
    case BlockReason::SourcePhase: return "source_phase";
    case BlockReason::TargetPhase: return "target_phase";
  }
  return "none";
}

namespace {

RawCsaNet underlying_raw(const RawCsaNet& lower, const RawCsaNet& upper) {
  RawCsaNet raw = lower;
  raw.components.insert(raw.components.end(), upper.components.begin(), upper.components.end());
  raw.buffers.insert(raw.buffers.end(), upper.buffers.begin(), upper.buffers.end());
  raw.buffer_arcs.insert(raw.buffer_arcs.end(), upper.buffer_arcs.begin(), upper.buffer_arcs.end());
  return raw;
}

NodeSet image(const std::set<Pair>& beta, const NodeSet& upper_places) {
  NodeSet out;
  for (const auto& [r, p] : beta)
    if (upper_places.count(p)) out.insert(r);
  return out;
}

// Markings reachable from m0 in one lower component, with the successor
// relation. Returns false when the bound cut the search.
struct ReachGraph {
  std::map<Marking, std::set<Marking>> succ;
  bool complete = true;
};

ReachGraph reach_graph(const AcyclicNet& net, const Marking& m0, const Bound& bound) {
  const auto sys = detail::StepSystem::of(net);
  ReachGraph g;
  std::deque<detail::Bits> work{sys.marking(m0)};
  std::map<detail::Bits, Marking> names{{work.front(), m0}};
  g.succ[m0];
  while (!work.empty()) {
    const auto m = work.front();
    work.pop_front();
    for (const auto& u : sys.enabled_steps(m)) {
      const auto next = sys.fire(m, u);
      auto [it, fresh] = names.emplace(next, Marking{});
      if (fresh) {
        if (names.size() > bound.max_sequences) {
          g.complete = false;
          return g;
        }
        it->second = sys.place_set(next);
        g.succ[it->second];
        work.push_back(next);
      }
      g.succ[names[m]].insert(it->second);
    }
  }
  return g;
}

std::set<Marking> backward(const ReachGraph& g, const Marking& target) {
  std::map<Marking, std::vector<Marking>> pred;
  for (const auto& [m, next] : g.succ)
    for (const auto& n : next) pred[n].push_back(m);
  std::set<Marking> seen{target};
  std::deque<Marking> work{target};
  while (!work.empty()) {
    const auto m = work.front();
    work.pop_front();
    for (const auto& p : pred[m])
      if (seen.insert(p).second) work.push_back(p);
  }
  return seen;
}

}  // namespace

std::vector<Violation> BsaNet::check(const RawBsaNet& raw, const Bound& bound) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < raw.upper.components.size(); ++i) {
    const auto& comp = raw.upper.components[i];
    std::map<NodeId, std::size_t> ins, outs;
    for (const auto& arc : comp.arcs) {
      ++outs[arc.from];
      ++ins[arc.to];
    }
    const NodeSet transitions(comp.transitions.begin(), comp.transitions.end());
    std::size_t initial = 0;
    for (const auto& p : NodeSet(comp.places.begin(), comp.places.end()))
      if (!ins[p]) ++initial;
    if (initial != 1)
      out.push_back({ViolationKind::UpperNotLineLike, {},
                     "upper component " + std::to_string(i + 1) + " has " + std::to_string(initial) +
                         " initial places"});
    for (const auto& t : transitions)
      if (ins[t] != 1 || outs[t] != 1)
        out.push_back({ViolationKind::UpperNotLineLike, {t},
                       "upper transition " + t + " needs exactly one input and one output place"});
  }

  auto level = [&](const RawCsaNet& net, const char* name) {
    auto violations = CsaNet::check(net, bound);
    for (auto& v : violations) out.push_back({ViolationKind::LevelInvalid, v.nodes, std::string(name) + ": " + v.message});
    return violations.empty();
  };
  const bool lower_ok = level(raw.lower, "lower");
  const bool upper_ok = level(raw.upper, "upper");
  if (raw.lower.components.size() != raw.upper.components.size())
    out.push_back({ViolationKind::ComponentCountMismatch, {},
                   "lower has " + std::to_string(raw.lower.components.size()) + " components, upper " +
                       std::to_string(raw.upper.components.size())});
  if (!lower_ok || !upper_ok || !out.empty()) return out;

  const auto lower = CsaNet::validate(raw.lower, bound);
  const auto upper = CsaNet::validate(raw.upper, bound);
  for (const auto& x : set_intersection(set_union(lower.places_and_buffers(), lower.transitions()),
                                        set_union(upper.places_and_buffers(), upper.transitions())))
    out.push_back({ViolationKind::NodeClash, {x}, "'" + x + "' is used on both levels"});

  std::set<Pair> beta;
  for (const auto& [r, p] : raw.beta) {
    const std::size_t none = lower.components().size();
    const std::size_t li = lower.places().count(r) ? lower.component_of(r).value_or(none) : none;
    const std::size_t ui = upper.places().count(p) ? upper.component_of(p).value_or(none) : none;
    if (li == none || ui == none) {
      out.push_back({ViolationKind::DanglingArcEndpoint, {r, p},
                     "beta pair (" + r + "," + p + ") needs a lower and an upper component place"});
    } else if (li != ui) {
      out.push_back({ViolationKind::BetaComponentMismatch, {r, p},
                     "beta pair (" + r + "," + p + ") joins components " + std::to_string(li + 1) + " and " +
                         std::to_string(ui + 1)});
    } else {
      beta.emplace(r, p);
    }
  }
  if (!out.empty()) return out;

  for (std::size_t i = 0; i < lower.components().size(); ++i) {
    const auto& lan = lower.components()[i];
    const auto& han = upper.components()[i];
    if (image(beta, han.initial_places()) != lan.initial_places())
      out.push_back({ViolationKind::BetaInitialMismatch, {han.initial_places().begin(), han.initial_places().end()},
                     "beta of the initial upper place of component " + std::to_string(i + 1) +
                         " differs from the initial lower marking"});
    for (const auto& t : han.transitions()) {
      const auto from = image(beta, han.preset(t));
      const auto to = image(beta, han.postset(t));
      const auto graph = reach_graph(lan, from, bound);
      if (!graph.succ.count(to))
        out.push_back({ViolationKind::BetaUnreachableBoundary, {t},
                       "beta boundary " + format_set(to) + " after " + t + " is not reachable from " +
                           format_set(from) + (graph.complete ? "" : " within the bound")});
    }
  }
  return out;
}

BsaNet BsaNet::validate(const RawBsaNet& raw, const Bound& bound) {
  if (auto violations = check(raw, bound); !violations.empty()) throw ValidationError(std::move(violations));
  BsaNet b(CsaNet::validate(raw.lower, bound), CsaNet::validate(raw.upper, bound),
           CsaNet::validate(underlying_raw(raw.lower, raw.upper), bound));
  b.beta_.insert(raw.beta.begin(), raw.beta.end());

  // phase(p) = {β_p} ∪ ⋃_{t ∈ p•} fwd(β_p) ∩ bwd(β_{t•}) in the component's reachability graph
  for (std::size_t i = 0; i < b.component_count(); ++i) {
    const auto& lan = b.lower_.components()[i];
    const auto& han = b.upper_.components()[i];
    const auto graph = reach_graph(lan, lan.initial_places(), bound);
    if (!graph.complete)
      throw Error(ErrorCode::BoundExceeded, "lower component " + std::to_string(i + 1) + " has too many markings");
    for (const auto& p : han.places()) {
      const auto anchor = b.beta_of(p);
      auto& markings = b.phases_[p];
      markings.insert(anchor);
      std::set<Marking> forward{anchor};
      std::deque<Marking> work{anchor};
      while (!work.empty()) {
        const auto m = work.front();
        work.pop_front();
        for (const auto& n : graph.succ.at(m))
          if (forward.insert(n).second) work.push_back(n);
      }
      for (const auto& t : han.postset(p)) {
        const auto back = backward(graph, b.beta_of(han.postset(t)));
        for (const auto& m : forward)
          if (back.count(m)) markings.insert(m);
      }
    }
  }
  return b;
}

NodeSet BsaNet::beta_of(const NodeId& p) const { return image(beta_, {p}); }
NodeSet BsaNet::beta_of(const NodeSet& ps) const { return image(beta_, ps); }

RawBsaNet BsaNet::to_raw() const { return RawBsaNet{lower_.to_raw(), upper_.to_raw(), {beta_.begin(), beta_.end()}}; }

CsaNet underlying_csa(const BsaNet& b) { return b.underlying(); }

const std::set<Marking>& phase(const BsaNet& b, const NodeId& p) {
  auto it = b.phases().find(p);
  if (it == b.phases().end()) throw Error(ErrorCode::UnknownPlace, "'" + p + "' is not an upper place", {p});
  return it->second;
}

namespace detail {

namespace {

struct PhaseIndex {
  std::vector<Bits> lower_parts;
  std::vector<Bits> upper_parts;
  std::map<std::size_t, std::unordered_set<Bits, BitsHash>> allowed;  // upper place index -> lower markings
};

}  // namespace

StepSystem bsa_system(const BsaNet& b) {
  auto sys = csa_system(b.underlying());
  auto index = std::make_shared<PhaseIndex>();
  for (std::size_t i = 0; i < b.component_count(); ++i) {
    index->lower_parts.push_back(sys.marking(b.lower().components()[i].places()));
    index->upper_parts.push_back(sys.marking(b.upper().components()[i].places()));
  }
  for (const auto& [p, markings] : b.phases()) {
    auto& set = index->allowed[sys.marking({p}).indices().front()];
    for (const auto& m : markings) set.insert(sys.marking(m));
  }
  sys.set_filter([index](const Bits& m) {
    for (std::size_t i = 0; i < index->lower_parts.size(); ++i) {
      const Bits upper = m & index->upper_parts[i];
      if (upper.count() != 1) return false;
      const auto& allowed = index->allowed.at(upper.indices().front());
      if (!allowed.count(m & index->lower_parts[i])) return false;
    }
    return true;
  });
  return sys;
}

}  // namespace detail

PhaseCheck is_phase_consistent(const BsaNet& b, const Marking& m, bool speculative, const Bound& bound) {
  const auto sys = detail::bsa_system(b);
  const auto bits = sys.marking(m);
  for (std::size_t i = 0; i < b.component_count(); ++i) {
    const auto upper = set_intersection(m, b.upper().components()[i].places());
    if (upper.size() != 1)
      throw Error(ErrorCode::UpperMarkingNotSingleton,
                  "upper component " + std::to_string(i + 1) + " holds " + format_set(upper),
                  {upper.begin(), upper.end()});
  }
  PhaseCheck out;
  out.speculative = speculative;
  out.consistent = sys.admissible(bits);
  if (!speculative) {
    std::set<detail::Bits> reach;
    const auto csa = detail::csa_system(b.underlying());
    if (csa.reach(csa.initial(), bound.max_sequences, reach))
      throw Error(ErrorCode::BoundExceeded, "reachability check exceeded the bound");
    out.reachable = reach.count(bits) != 0;
    out.consistent = out.consistent && *out.reachable;
  }
  return out;
}

BsaEnabling bsa_enabling(const BsaNet& b, const Marking& m, const Step& u) {
  const auto sys = detail::bsa_system(b);
  const auto ub = detail::checked_step(sys, u);
  const auto mb = sys.marking(m);
  BsaEnabling out;
  if (!sys.enabled_unfiltered(mb, ub)) {
    out.reason = BlockReason::Underlying;
    out.missing = sys.place_set(sys.missing(mb, ub));
  } else if (!sys.admissible(mb)) {
    out.reason = BlockReason::SourcePhase;
  } else if (!sys.admissible(sys.fire(mb, ub))) {
    out.reason = BlockReason::TargetPhase;
  } else {
    out.enabled = true;
  }
  return out;
}

bool bsa_enabled(const BsaNet& b, const Marking& m, const Step& u) { return bsa_enabling(b, m, u).enabled; }

namespace {

[[noreturn]] void blocked(const Step& u, const BsaEnabling& e, std::optional<std::size_t> index) {
  std::string msg = "step " + format_set(u) + " is not enabled";
  if (index) msg += " at position " + std::to_string(*index);
  switch (e.reason) {
    case BlockReason::Underlying: msg += ": missing " + format_set(e.missing); break;
    case BlockReason::SourcePhase: msg += ": the current marking is not phase-consistent"; break;
    case BlockReason::TargetPhase: msg += ": the resulting marking is not phase-consistent"; break;
    case BlockReason::None: break;
  }
  throw Error(ErrorCode::StepNotEnabled, msg, {e.missing.begin(), e.missing.end()}, index, to_string(e.reason));
}

}  // namespace

Marking bsa_fire(const BsaNet& b, const Marking& m, const Step& u) {
  const auto e = bsa_enabling(b, m, u);
  if (!e.enabled) blocked(u, e, std::nullopt);
  return csa_fire(b.underlying(), m, u);
}

MixedStepSequence bsa_run(const BsaNet& b, const Marking& m0, const std::vector<Step>& steps) {
  MixedStepSequence out;
  out.markings.push_back(m0);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto e = bsa_enabling(b, out.markings.back(), steps[i]);
    if (!e.enabled) blocked(steps[i], e, i);
    out.markings.push_back(csa_fire(b.underlying(), out.markings.back(), steps[i]));
    out.steps.push_back(steps[i]);
  }
  return out;
}

std::vector<Step> bsa_enabled_steps(const BsaNet& b, const Marking& m) {
  const auto sys = detail::bsa_system(b);
  std::vector<Step> out;
  for (const auto& u : sys.enabled_steps(sys.marking(m))) out.push_back(sys.transition_set(u));
  return out;
}

BehaviourResult bsa_behaviours(const BsaNet& b, const BehaviourQuery& q) {
  if (q.bound.max_sequences < 1 || q.bound.max_depth < 1)
    throw Error(ErrorCode::InvalidArgument, "bounds must be at least 1");
  if (q.kind == BehaviourKind::Fseq)
    throw Error(ErrorCode::InvalidArgument, "firing sequences are not defined for bsa-nets");
  const auto sys = detail::bsa_system(b);
  return sys.behaviours(sys.initial(), q);
}

bool classify_bso(const BsaNet& b, const Bound& bound) {
  if (classify_csa(b.lower()) != CsaClass::CsoNet || classify_csa(b.upper()) != CsaClass::CsoNet) return false;
  const auto sys = detail::bsa_system(b);
  detail::Bits all = sys.empty_transitions();
  for (std::size_t t = 0; t < sys.transition_count(); ++t) all.set(t);
  std::unordered_set<std::pair<detail::Bits, detail::Bits>, detail::BitsPairHash> seen;
  std::function<bool(const detail::Bits&, const detail::Bits&)> dfs = [&](const detail::Bits& m,
                                                                        const detail::Bits& done) -> bool {
    if (done == all) return true;
    if (!seen.emplace(m, done).second) return false;
    if (seen.size() > bound.max_sequences)
      throw Error(ErrorCode::BoundExceeded, "covering-sequence search exceeded the state bound");
    for (const auto& u : sys.enabled_steps(m))
      if (dfs(sys.fire(m, u), done | u)) return true;
    return false;
  };
  return dfs(sys.initial(), sys.empty_transitions());
}

namespace {

struct Candidate {
  NodeSet lower;
  NodeSet upper;
  NodeSet all;
};

std::vector<std::pair<Candidate, BsaNet>> scenario_pairs(const BsaNet& b, const Bound& bound,
                                                        std::vector<RejectedScenarioPair>* rejected) {
  std::vector<std::pair<Candidate, BsaNet>> out;
  const auto lowers = detail::csa_scenario_sets(b.lower(), bound);
  const auto uppers = detail::csa_scenario_sets(b.upper(), bound);
  for (const auto& tl : lowers) {
    const auto ls = csa_scenario_for(b.lower(), tl);
    for (const auto& th : uppers) {
      const auto hs = csa_scenario_for(b.upper(), th);
      RawBsaNet raw{ls.to_raw(), hs.to_raw(), {}};
      for (const auto& [r, p] : b.beta())
        if (ls.places().count(r) && hs.places().count(p)) raw.beta.emplace_back(r, p);
      auto reject = [&](std::string reason) {
        if (rejected) rejected->push_back({tl, th, std::move(reason)});
      };
      if (auto violations = BsaNet::check(raw, bound); !violations.empty()) {
        reject("invalid bsa-net: " + violations.front().message);
        continue;
      }
      auto candidate = BsaNet::validate(raw, bound);
      if (!classify_bso(candidate, bound)) {
        reject("no step sequence uses every transition");
        continue;
      }
      out.emplace_back(Candidate{tl, th, set_union(tl, th)}, std::move(candidate));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first.all < y.first.all; });
  return out;
}

}  // namespace

BsaNet bsa_scenario_of(const BsaNet& b, const StepSequence& s) {
  bsa_run(b, b.initial_marking(), s);
  const auto ls = csa_scenario_of(b.lower(), restrict_compact(s, b.lower().transitions()));
  const auto hs = csa_scenario_of(b.upper(), restrict_compact(s, b.upper().transitions()));
  RawBsaNet raw{ls.to_raw(), hs.to_raw(), {}};
  for (const auto& [r, p] : b.beta())
    if (ls.places().count(r) && hs.places().count(p)) raw.beta.emplace_back(r, p);
  return BsaNet::validate(raw);
}

BsaScenarioEnumeration bsa_scenarios(const BsaNet& b, const Bound& bound) {
  BsaScenarioEnumeration out;
  for (auto& [c, net] : scenario_pairs(b, bound, &out.rejected)) out.scenarios.push_back(std::move(net));
  return out;
}

std::vector<BsaNet> bsa_maximal_scenarios(const BsaNet& b, const Bound& bound) {
  auto pairs = scenario_pairs(b, bound, nullptr);
  std::vector<NodeSet> sets;
  for (const auto& [c, net] : pairs) sets.push_back(c.all);
  const auto maximal = detail::maximal_sets(sets);
  std::vector<BsaNet> out;
  for (auto& [c, net] : pairs)
    if (std::find(maximal.begin(), maximal.end(), c.all) != maximal.end()) out.push_back(std::move(net));
  return out;
}

WellFormedVerdict bsa_is_well_formed(const BsaNet& b, const Bound& bound) {
  WellFormedVerdict verdict;
  auto unknown = [&](const std::string& what) {
    verdict.verdict = Verdict::Unknown;
    verdict.truncated = true;
    verdict.message = what + " exceeded the bound";
    return verdict;
  };
  std::vector<std::pair<Candidate, BsaNet>> pairs;
  try {
    pairs = scenario_pairs(b, bound, nullptr);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BoundExceeded) return unknown("scenario enumeration");
    throw;
  }

  const auto direct = bsa_behaviours(b, {BehaviourKind::Sseq, bound});
  if (direct.truncated) return unknown("step-sequence enumeration");
  std::set<StepSequence> from_scenarios;
  for (const auto& [c, net] : pairs) {
    const auto r = bsa_behaviours(net, {BehaviourKind::Sseq, bound});
    if (r.truncated) return unknown("scenario step-sequence enumeration");
    from_scenarios.insert(r.sequences.begin(), r.sequences.end());
  }
  if (direct.sequences != from_scenarios) {
    std::vector<StepSequence> diff;
    std::set_symmetric_difference(direct.sequences.begin(), direct.sequences.end(), from_scenarios.begin(),
                                  from_scenarios.end(), std::back_inserter(diff));
    verdict.verdict = Verdict::NotOk;
    verdict.unmatched_sequence = diff.front();
    verdict.message = "step sequence " + format_sequence(diff.front()) +
                      (direct.sequences.count(diff.front()) ? " is not generated by any scenario"
                                                            : " of a scenario is not generated by the net");
    return verdict;
  }

  const auto maximal_runs = bsa_behaviours(b, {BehaviourKind::Maxsseq, bound});
  if (maximal_runs.truncated) return unknown("maximal step-sequence enumeration");
  std::vector<NodeSet> sets;
  for (const auto& [c, net] : pairs) sets.push_back(c.all);
  const auto maximal = detail::maximal_sets(sets);
  for (const auto& [c, net] : pairs) {
    if (std::find(maximal.begin(), maximal.end(), c.all) == maximal.end()) continue;
    const auto own = bsa_behaviours(net, {BehaviourKind::Maxsseq, bound});
    if (own.truncated) return unknown("scenario maximal step-sequence enumeration");
    const bool realised = std::any_of(maximal_runs.sequences.begin(), maximal_runs.sequences.end(),
                                      [&](const StepSequence& s) {
                                        return own.sequences.count(restrict_compact(s, c.all)) != 0;
                                      });
    if (!realised) {
      verdict.verdict = Verdict::NotOk;
      verdict.unrealized_scenario = c.all;
      verdict.message = "maximal scenario " + format_set(c.all) + " is not realised by a maximal step sequence";
      return verdict;
    }
  }

  for (const auto& lower : detail::maximal_sets(detail::csa_scenario_sets(b.lower(), bound))) {
    const bool present = std::any_of(pairs.begin(), pairs.end(), [&](const auto& pair) {
      return pair.first.lower == lower && std::find(maximal.begin(), maximal.end(), pair.first.all) != maximal.end();
    });
    if (!present) {
      verdict.verdict = Verdict::NotOk;
      verdict.unrealized_scenario = lower;
      verdict.message = "maximal lower scenario " + format_set(lower) + " is not part of any maximal scenario";
      return verdict;
    }
  }
  return verdict;
}

}  // namespace sonet
