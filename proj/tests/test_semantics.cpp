#include <doctest.h>

#include <algorithm>

#include "sonet/fixtures.hpp"
#include "support/oracle.hpp"

using namespace sonet;

namespace {

AcyclicNet net(const char* name) { return fixture(name).acyclic(); }

std::set<StepSequence> seqs(std::initializer_list<StepSequence> list) { return {list.begin(), list.end()}; }

}  // namespace

TEST_CASE("enabled steps") {
  const auto an1 = net("AN1");
  CHECK(enabled_step(an1, {"p2", "p3"}, {"b", "c"}));
  CHECK_FALSE(enabled_step(an1, {"p1"}, {"b"}));
  try {
    enabled_step(an1, {"p2", "p3"}, {"c", "d"});
    FAIL("expected NotAStep");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAStep);
    CHECK(e.nodes() == std::vector<std::string>{"p3"});
  }
  CHECK_THROWS_AS(enabled_step(an1, {"p1"}, {"zz"}), Error);
  CHECK_THROWS_AS(enabled_step(an1, {"p1"}, {}), Error);
}

TEST_CASE("steps of AN1 are the subsets without both c and d") {
  const auto an1 = net("AN1");
  const oracle::Net o = oracle::Net::of(an1);
  std::set<Step> steps;
  for (const auto& m : o.reach({"p1"}))
    for (const auto& u : enabled_steps(an1, m)) steps.insert(u);
  std::set<Step> expected;
  const std::vector<std::string> ts{"a", "b", "c", "d"};
  for (int mask = 1; mask < 16; ++mask) {
    Step u;
    for (int i = 0; i < 4; ++i)
      if (mask >> i & 1) u.insert(ts[std::size_t(i)]);
    if (!(u.count("c") && u.count("d"))) expected.insert(u);
  }
  CHECK(expected.size() == 11);
  // every such set is a step (pre-disjoint), whether or not it is ever enabled together
  for (const auto& u : expected) CHECK(o.pre_of(u).size() == u.size());
  for (const auto& u : steps) CHECK(expected.count(u));
}

TEST_CASE("firing") {
  const auto an1 = net("AN1");
  CHECK(fire(an1, {"p1"}, {"a"}) == Marking{"p2", "p3"});
  CHECK(fire(net("BD1"), {"p2", "p3"}, {"b", "c"}) == Marking{"p4", "p5"});
  try {
    fire(an1, {"p1"}, {"b"});
    FAIL("expected StepNotEnabled");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StepNotEnabled);
    CHECK(e.nodes() == std::vector<std::string>{"p2"});
  }
}

TEST_CASE("set firing rule against the standard rule") {
  const auto w1 = net("W1");
  CHECK(fire(w1, {"p1", "p2"}, {"a", "b"}) == Marking{"p3"});
  CHECK(fire_standard(w1, {"p1", "p2"}, {"a", "b"}) == Marking{"p3"});
  // a place both produced and consumed by the step
  const auto chain = AcyclicNet::validate({{"p", "q", "r"}, {"t", "u"}, {{"p", "t"}, {"t", "q"}, {"q", "u"}, {"u", "r"}}});
  CHECK(fire(chain, {"p", "q"}, {"t", "u"}) == Marking{"r"});
  CHECK(fire_standard(chain, {"p", "q"}, {"t", "u"}) == Marking{"q", "r"});
}

TEST_CASE("mixed runs of AN1") {
  const auto an1 = net("AN1");
  const auto mu = run(an1, {"p1"}, {{"a"}, {"b"}, {"c"}});
  CHECK(mu.markings == std::vector<Marking>{{"p1"}, {"p2", "p3"}, {"p3", "p4"}, {"p4", "p5"}});
  const auto nu = run(an1, {"p1"}, {{"a"}, {"b", "c"}});
  CHECK(nu.markings == std::vector<Marking>{{"p1"}, {"p2", "p3"}, {"p4", "p5"}});
  CHECK(format_mixed(nu) == "{p1}{a}{p2,p3}{b,c}{p4,p5}");
  const auto empty = run(an1, {"p1"}, {});
  CHECK(empty.markings == std::vector<Marking>{{"p1"}});
  CHECK(empty.steps.empty());
  try {
    run(an1, {"p1"}, {{"a"}, {"a"}});
    FAIL("expected StepNotEnabled");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StepNotEnabled);
    CHECK(e.index() == std::optional<std::size_t>(1));
  }
}

TEST_CASE("behaviours of BD1") {
  const auto bd1 = net("BD1");
  const auto sseq = behaviours(bd1, {BehaviourKind::Sseq});
  CHECK(sseq.sequences.size() == 11);
  CHECK(behaviours(bd1, {BehaviourKind::Maxsseq}).sequences ==
        seqs({{{"a"}, {"b"}, {"c"}},
              {{"a"}, {"c"}, {"b"}},
              {{"a"}, {"b", "c"}},
              {{"a"}, {"b"}, {"d"}},
              {{"a"}, {"d"}, {"b"}},
              {{"a"}, {"b", "d"}}}));
  CHECK(behaviours(bd1, {BehaviourKind::Finreach}).markings == std::set<Marking>{{"p4", "p5"}, {"p4", "p6"}});
  CHECK(behaviours(bd1, {BehaviourKind::Fseq}).sequences ==
        seqs({{},
              {{"a"}},
              {{"a"}, {"b"}},
              {{"a"}, {"c"}},
              {{"a"}, {"d"}},
              {{"a"}, {"b"}, {"c"}},
              {{"a"}, {"c"}, {"b"}},
              {{"a"}, {"b"}, {"d"}},
              {{"a"}, {"d"}, {"b"}}}));
  const auto mixed = behaviours(bd1, {BehaviourKind::Maxmixsseq});
  CHECK(mixed.mixed.size() == 6);
  CHECK(std::any_of(mixed.mixed.begin(), mixed.mixed.end(), [](const MixedStepSequence& mu) {
    return format_mixed(mu) == "{p1}{a}{p2,p3}{b,c}{p4,p5}";
  }));
}

TEST_CASE("behaviours agree with brute force on the fixtures") {
  for (const char* name : {"AN1", "BD1", "ON1", "ON2", "W1", "WF-A", "WF-B"}) {
    const auto n = net(name);
    const auto o = oracle::Net::of(n);
    CHECK(behaviours(n, {BehaviourKind::Sseq}).sequences == o.sseq(n.initial_places()));
    CHECK(behaviours(n, {BehaviourKind::Fseq}).sequences == o.sseq(n.initial_places(), true));
    CHECK(behaviours(n, {BehaviourKind::Maxsseq}).sequences == o.maxsseq(n.initial_places()));
    CHECK(behaviours(n, {BehaviourKind::Reach}).markings == o.reach(n.initial_places()));
    CHECK(behaviours(n, {BehaviourKind::Finreach}).markings == o.finreach(n.initial_places()));
    for (const auto& m : o.reach(n.initial_places())) {
      const auto steps = enabled_steps(n, m);
      CHECK(std::vector<oracle::Ids>(steps.begin(), steps.end()) == o.steps(m));
    }
  }
}

TEST_CASE("bounds") {
  const auto bd1 = net("BD1");
  const auto r = behaviours(bd1, {BehaviourKind::Sseq, {3, 64}});
  CHECK(r.truncated);
  CHECK(r.sequences.size() <= 3);
  CHECK(behaviours(bd1, {BehaviourKind::Sseq, {100000, 1}}).truncated);
  CHECK_FALSE(behaviours(bd1, {BehaviourKind::Sseq, {100000, 3}}).truncated);
  CHECK_THROWS_AS(behaviours(bd1, {BehaviourKind::Sseq, {0, 64}}), Error);
  CHECK(behaviour_kind_from_string("maxmixsseq") == BehaviourKind::Maxmixsseq);
  CHECK_FALSE(behaviour_kind_from_string("nope"));
}

TEST_CASE("serialization of steps") {
  const auto bd1 = net("BD1");
  const auto mu = serialize(bd1, {"p2", "p3"}, {"b", "c"}, {{"b"}, {"c"}});
  CHECK(format_mixed(mu) == "{p2,p3}{b}{p3,p4}{c}{p4,p5}");
  CHECK(serialize(bd1, {"p1"}, {"a"}, {{"a"}}).steps.size() == 1);
  CHECK_THROWS_AS(serialize(bd1, {"p2", "p3"}, {"b", "c"}, {{"b"}}), Error);
  CHECK_THROWS_AS(serialize(bd1, {"p2", "p3"}, {"b", "c"}, {{"b"}, {"b", "c"}}), Error);

  // a three-transition step split into singletons, all six orders
  const auto wide = AcyclicNet::validate(
      {{"p1", "p2", "p3", "q1", "q2", "q3"}, {"a", "b", "c"}, {{"p1", "a"}, {"p2", "b"}, {"p3", "c"}, {"a", "q1"}, {"b", "q2"}, {"c", "q3"}}});
  std::vector<std::string> order{"a", "b", "c"};
  int count = 0;
  do {
    const auto r = serialize(wide, {"p1", "p2", "p3"}, {"a", "b", "c"}, {{order[0]}, {order[1]}, {order[2]}});
    CHECK(r.final_marking() == fire(wide, {"p1", "p2", "p3"}, {"a", "b", "c"}));
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  CHECK(count == 6);
}

TEST_CASE("co-initial subnet behaviours are included") {
  const auto an1 = net("AN1");
  const auto on1 = net("ON1");
  for (auto kind : {BehaviourKind::Sseq, BehaviourKind::Mixsseq, BehaviourKind::Reach, BehaviourKind::Fseq}) {
    const auto big = behaviours(an1, {kind});
    const auto small = behaviours(on1, {kind});
    CHECK(std::includes(big.sequences.begin(), big.sequences.end(), small.sequences.begin(), small.sequences.end()));
    CHECK(std::includes(big.mixed.begin(), big.mixed.end(), small.mixed.begin(), small.mixed.end()));
    CHECK(std::includes(big.markings.begin(), big.markings.end(), small.markings.begin(), small.markings.end()));
  }
}

TEST_CASE("occurrence nets") {
  for (const char* name : {"ON1", "ON2"}) {
    const auto on = net(name);
    CHECK(behaviours(on, {BehaviourKind::Finreach}).markings == std::set<Marking>{on.final_places()});
    for (const auto& s : behaviours(on, {BehaviourKind::Maxsseq}).sequences) CHECK(occurring(s) == on.transitions());
    // a step disjoint from a fired step stays enabled
    const auto o = oracle::Net::of(on);
    for (const auto& m : o.reach(on.initial_places()))
      for (const auto& u : enabled_steps(on, m))
        for (const auto& v : enabled_steps(on, m))
          if (disjoint(u, v) && disjoint(on.preset(u), on.preset(v))) CHECK(enabled_step(on, fire(on, m, u), v));
  }
}
