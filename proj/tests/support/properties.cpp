#include "support/properties.hpp"

#include <algorithm>

#include "support/oracle.hpp"

namespace props {

namespace {

using namespace sonet;
using oracle::Generator;
using oracle::Shape;

const Bound kBound{20000, 64};

struct Run {
  Outcome out;
  int wanted;
  int attempts = 0;

  Run(const char* name, int cases) : wanted(cases) { out.name = name; }
  bool more() { return out.cases < wanted && ++attempts < wanted * 20; }
  void fail(const std::string& what) {
    if (out.failures++ == 0) out.first_failure = what;
  }
};

std::string describe(const RawNet& raw) {
  std::string out = "net";
  for (const auto& a : raw.arcs) out += " " + a.from + ">" + a.to;
  return out;
}

Marking end_of(const AcyclicNet& net, const StepSequence& s) {
  return run(net, net.initial_places(), s).final_marking();
}

}  // namespace

Outcome serialization(std::uint64_t seed, int cases) {
  Run r("serialization", cases);
  Generator g(seed);
  while (r.more()) {
    const auto raw = g.net(Shape::General);
    const auto net = AcyclicNet::validate(raw);
    const auto o = oracle::Net::of(raw);
    Marking m = net.initial_places();
    const int walk = g.uniform(0, 4);
    for (int i = 0; i <= walk; ++i) {
      const auto steps = enabled_steps(net, m);
      const auto expected = o.steps(m);
      if (std::vector<oracle::Ids>(steps.begin(), steps.end()) != expected) r.fail(describe(raw) + ": enabled steps differ");
      for (const auto& u : steps) {
        std::vector<NodeId> order(u.begin(), u.end());
        std::shuffle(order.begin(), order.end(), g.rng);
        std::vector<Step> parts;
        for (const auto& t : order) {
          if (parts.empty() || g.uniform(0, 1) == 0) parts.emplace_back();
          parts.back().insert(t);
        }
        try {
          const auto mu = serialize(net, m, u, parts);
          oracle::Ids x = m;
          for (std::size_t k = 0; k < parts.size(); ++k) {
            const auto allowed = o.steps(x);
            if (std::find(allowed.begin(), allowed.end(), parts[k]) == allowed.end())
              r.fail(describe(raw) + ": oracle rejects a block");
            x = o.fire(x, parts[k]);
            if (mu.markings[k + 1] != x) r.fail(describe(raw) + ": serialized markings differ");
          }
        } catch (const Error& e) {
          r.fail(describe(raw) + ": " + e.what());
        }
      }
      if (steps.empty()) break;
      m = fire(net, m, steps[std::size_t(g.uniform(0, int(steps.size()) - 1))]);
    }
    ++r.out.cases;
  }
  return r.out;
}

Outcome subnet_inclusion(std::uint64_t seed, int cases) {
  Run r("subnet inclusion", cases);
  Generator g(seed + 1);
  while (r.more()) {
    const auto raw = g.net(Shape::General);
    const auto net = AcyclicNet::validate(raw);
    std::optional<AcyclicNet> sub;
    for (int attempt = 0; attempt < 6 && !sub; ++attempt) {
      NodeSet ts;
      for (const auto& t : net.transitions())
        if (g.uniform(0, 1)) ts.insert(t);
      NodeSet ps = set_union(net.initial_places(), set_union(net.preset(ts), net.postset(ts)));
      try {
        auto candidate = induced_subnet(net, ps, ts);
        if (is_coinitial_subnet(net, candidate)) sub = candidate;
      } catch (const ValidationError&) {
      }
    }
    if (!sub) sub = induced_subnet(net, net.initial_places(), {});
    bool skipped = false;
    for (auto kind : {BehaviourKind::Sseq, BehaviourKind::Mixsseq, BehaviourKind::Reach, BehaviourKind::Fseq}) {
      const auto big = behaviours(net, {kind, kBound});
      const auto small = behaviours(*sub, {kind, kBound});
      if (big.truncated || small.truncated) {
        skipped = true;
        break;
      }
      const bool included = std::includes(big.sequences.begin(), big.sequences.end(), small.sequences.begin(),
                                          small.sequences.end()) &&
                            std::includes(big.mixed.begin(), big.mixed.end(), small.mixed.begin(), small.mixed.end()) &&
                            std::includes(big.markings.begin(), big.markings.end(), small.markings.begin(),
                                          small.markings.end());
      if (!included) r.fail(describe(raw) + ": " + to_string(kind) + " of the subnet is not included");
    }
    skipped ? ++r.out.skipped : ++r.out.cases;
  }
  return r.out;
}

Outcome occurrence_final_marking(std::uint64_t seed, int cases) {
  Run r("occurrence final marking", cases);
  Generator g(seed + 2);
  while (r.more()) {
    const auto raw = g.net(Shape::Occurrence);
    const auto net = AcyclicNet::validate(raw);
    if (classify(net) != NetClass::OccurrenceNet) r.fail(describe(raw) + ": generator produced a non-occurrence net");
    const auto o = oracle::Net::of(raw);
    const auto fin = behaviours(net, {BehaviourKind::Finreach, kBound});
    const auto max = behaviours(net, {BehaviourKind::Maxsseq, kBound});
    if (fin.truncated || max.truncated) {
      ++r.out.skipped;
      continue;
    }
    if (fin.markings != std::set<Marking>{o.final_places()}) r.fail(describe(raw) + ": finreach is not {P^fin}");
    for (const auto& s : max.sequences)
      if (occurring(s) != net.transitions()) r.fail(describe(raw) + ": maximal sequence misses a transition");
    ++r.out.cases;
  }
  return r.out;
}

Outcome backward_deterministic_runs(std::uint64_t seed, int cases) {
  Run r("backward-deterministic runs", cases);
  Generator g(seed + 3);
  while (r.more()) {
    const auto raw = g.net(Shape::BackwardDeterministic);
    const auto net = AcyclicNet::validate(raw);
    const auto o = oracle::Net::of(raw);
    const auto all = behaviours(net, {BehaviourKind::Sseq, kBound});
    if (all.truncated) {
      ++r.out.skipped;
      continue;
    }
    for (const auto& s : all.sequences) {
      if (!is_wf_stepseq(net, s).well_formed) r.fail(describe(raw) + ": " + format_sequence(s) + " judged ill-formed");
      // independent check: all postsets of all transitions of the run are pairwise disjoint
      std::size_t total = 0;
      for (const auto& u : s)
        for (const auto& t : u) total += o.post.at(t).size();
      if (o.post_of(occurring(s)).size() != total) r.fail(describe(raw) + ": a place is filled twice");
    }
    if (is_well_formed(net, kBound).double_fill) r.fail(describe(raw) + ": double fill reported");
    ++r.out.cases;
  }
  return r.out;
}

Outcome scenario_correspondence(std::uint64_t seed, int cases) {
  Run r("scenario correspondence", cases);
  Generator g(seed + 4);
  while (r.more()) {
    const auto raw = g.net(Shape::General, 6);
    const auto net = AcyclicNet::validate(raw);
    if (!is_well_formed(net, kBound).ok()) continue;
    const auto o = oracle::Net::of(raw);
    const auto all = enumerate_scenarios(net, kBound);
    const auto max = maximal_scenarios(net, kBound);
    std::set<oracle::Ids> sets, max_sets;
    for (const auto& s : all) sets.insert(s.transitions());
    for (const auto& s : max) max_sets.insert(s.transitions());
    if (sets != oracle::scenario_sets(o)) r.fail(describe(raw) + ": scenario sets differ from brute force");
    if (max_sets != oracle::maximal(sets)) r.fail(describe(raw) + ": maximal scenarios differ");
    bool skipped = false;
    for (auto kind : {BehaviourKind::Sseq, BehaviourKind::Mixsseq, BehaviourKind::Reach, BehaviourKind::Fseq,
                      BehaviourKind::Maxsseq, BehaviourKind::Maxmixsseq, BehaviourKind::Finreach}) {
      const bool maximal_kind = kind == BehaviourKind::Maxsseq || kind == BehaviourKind::Maxmixsseq ||
                                kind == BehaviourKind::Finreach;
      const auto whole = behaviours(net, {kind, kBound});
      BehaviourResult joined;
      for (const auto& s : maximal_kind ? max : all) {
        const auto part = behaviours(s, {kind, kBound});
        skipped = skipped || part.truncated;
        joined.sequences.insert(part.sequences.begin(), part.sequences.end());
        joined.mixed.insert(part.mixed.begin(), part.mixed.end());
        joined.markings.insert(part.markings.begin(), part.markings.end());
      }
      if (skipped || whole.truncated) {
        skipped = true;
        break;
      }
      if (whole.sequences != joined.sequences || whole.mixed != joined.mixed || whole.markings != joined.markings)
        r.fail(describe(raw) + ": " + to_string(kind) + " differs from the union over scenarios");
    }
    skipped ? ++r.out.skipped : ++r.out.cases;
  }
  return r.out;
}

Outcome end_marking_formula(std::uint64_t seed, int cases) {
  Run r("end-marking formula", cases);
  Generator g(seed + 5);
  while (r.more()) {
    const bool bd = g.uniform(0, 1) == 0;
    const auto raw = g.net(bd ? Shape::BackwardDeterministic : Shape::General, 7);
    const auto net = AcyclicNet::validate(raw);
    if (!bd && !is_well_formed(net, kBound).ok()) continue;
    const auto o = oracle::Net::of(raw);
    const auto all = behaviours(net, {BehaviourKind::Sseq, kBound});
    if (all.truncated) {
      ++r.out.skipped;
      continue;
    }
    for (const auto& s : all.sequences) {
      const auto t = occurring(s);
      oracle::Ids expected = o.initial();
      for (const auto& p : o.post_of(t)) expected.insert(p);
      for (const auto& p : o.pre_of(t)) expected.erase(p);
      if (end_of(net, s) != expected) r.fail(describe(raw) + ": " + format_sequence(s) + " ends elsewhere");
    }
    ++r.out.cases;
  }
  return r.out;
}

Outcome reach_matches_sseq(std::uint64_t seed, int cases) {
  Run r("reach equals sseq ends", cases);
  Generator g(seed + 6);
  while (r.more()) {
    const auto raw = g.net(Shape::General, 7);
    const auto net = AcyclicNet::validate(raw);
    const auto o = oracle::Net::of(raw);
    const auto all = behaviours(net, {BehaviourKind::Mixsseq, kBound});
    const auto reach = behaviours(net, {BehaviourKind::Reach, kBound});
    if (all.truncated || reach.truncated) {
      ++r.out.skipped;
      continue;
    }
    std::set<Marking> ends;
    for (const auto& mu : all.mixed) ends.insert(mu.final_marking());
    const auto bfs = o.reach(o.initial());
    if (ends != bfs) r.fail(describe(raw) + ": sseq end markings differ from BFS");
    if (reach.markings != bfs) r.fail(describe(raw) + ": reach differs from BFS");
    ++r.out.cases;
  }
  return r.out;
}

}  // namespace props
