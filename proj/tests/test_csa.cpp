#include <doctest.h>

#include <algorithm>

#include "sonet/fixtures.hpp"
#include "support/oracle.hpp"

using namespace sonet;

namespace {

CsaNet net(const char* name) { return fixture(name).csa(); }

bool has(const std::vector<Violation>& vs, ViolationKind k) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == k; });
}

std::set<StepSequence> seqs(std::initializer_list<StepSequence> list) { return {list.begin(), list.end()}; }

// Each component's places and transitions, ordered.
std::vector<NodeSet> transitions_by_component(const CsaNet& n) {
  std::vector<NodeSet> out;
  for (const auto& c : n.components()) out.push_back(c.transitions());
  return out;
}

}  // namespace

TEST_CASE("csa validation") {
  const auto raw = net("CS1").to_raw();
  CHECK(CsaNet::check(raw).empty());

  auto rerouted = raw;
  std::replace(rerouted.buffer_arcs.begin(), rerouted.buffer_arcs.end(), Arc{"q2", "f"}, Arc{"q2", "d"});
  CHECK(has(CsaNet::check(rerouted), ViolationKind::BufferWithinOneComponent));

  auto orphan = raw;
  orphan.buffers.push_back("q4");
  orphan.buffer_arcs.push_back({"q4", "a"});
  CHECK(has(CsaNet::check(orphan), ViolationKind::BufferWithoutProducer));

  auto clash = raw;
  clash.components[1].places.push_back("p1");
  CHECK(has(CsaNet::check(clash), ViolationKind::NodeClashAcrossComponents));

  auto broken = raw;
  broken.components[0].arcs.push_back({"p4", "a"});
  CHECK(has(CsaNet::check(broken), ViolationKind::ComponentInvalid));

  auto w1 = RawCsaNet{{fixture("W1").acyclic().to_raw()}, {}, {}};
  CHECK(has(CsaNet::check(w1), ViolationKind::ComponentNotWellFormed));

  CHECK_THROWS_AS(CsaNet::validate(rerouted), ValidationError);
}

TEST_CASE("csa classification") {
  for (const char* name : {"CSO1", "CSO2", "CSO3"}) CHECK(classify_csa(net(name)) == CsaClass::CsoNet);
  const auto cs1 = net("CS1");
  CHECK(classify_csa(cs1) == CsaClass::CsaNet);
  auto raw = cs1.to_raw();
  auto& c = raw.components[0];
  c.transitions.erase(std::find(c.transitions.begin(), c.transitions.end(), "d"));
  c.arcs.erase(std::remove_if(c.arcs.begin(), c.arcs.end(), [](const Arc& a) { return a.from == "d" || a.to == "d"; }),
               c.arcs.end());
  // without d the buffers q2 and q3 lose a partner; drop them with their arcs
  raw.buffer_arcs = {{"e", "q1"}, {"q1", "c"}};
  raw.buffers = {"q1"};
  CHECK(classify_csa(CsaNet::validate(raw)) == CsaClass::BdCsaNet);
}

TEST_CASE("csa neighbourhood") {
  const auto cs1 = net("CS1");
  CHECK(cs1.preset("p4") == NodeSet{"b", "d"});
  CHECK(cs1.postset("e") == NodeSet{"p6", "q1"});
  CHECK(csa_neighbourhood(cs1, "e").post == NodeSet{"p6", "q1"});
  CHECK(csa_neighbourhood(cs1, "d").pre == NodeSet{"p3", "q3"});
  CHECK(cs1.initial_places() == NodeSet{"p1", "p5"});
  CHECK(cs1.component_of("f") == std::optional<std::size_t>(1));
  CHECK_FALSE(cs1.component_of("q1"));
  CHECK_THROWS_AS(cs1.preset("zz"), Error);
}

TEST_CASE("csa enabling and firing") {
  const auto cs1 = net("CS1");
  CHECK(csa_enabled(cs1, {"p1", "p5"}, {"c", "e"}));
  CHECK(csa_enabled(cs1, {"p3", "p6"}, {"d", "f"}));
  CHECK_FALSE(csa_enabled(cs1, {"p1", "p5"}, {"c"}));
  CHECK_FALSE(csa_enabled(cs1, {"p3", "p6"}, {"d"}));
  CHECK(csa_fire(cs1, {"p1", "p5"}, {"a", "e"}) == Marking{"p2", "p6", "q1"});
  CHECK(csa_fire(cs1, {"p3", "p6"}, {"d", "f"}) == Marking{"p4", "p7"});
  CHECK(csa_fire(cs1, {"p2", "p6", "q1"}, {"b"}) == Marking{"p4", "p6", "q1"});
  try {
    csa_fire(cs1, {"p1", "p5"}, {"c"});
    FAIL("expected StepNotEnabled");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StepNotEnabled);
    CHECK(e.nodes() == std::vector<std::string>{"q1"});
  }
  CHECK_THROWS_AS(csa_enabled(cs1, {"p1"}, {"a", "c"}), Error);
  const auto mu = csa_run(cs1, {"p1", "p5"}, {{"a", "e"}, {"b"}});
  CHECK(format_mixed(mu) == "{p1,p5}{a,e}{p2,p6,q1}{b}{p4,p6,q1}");
}

TEST_CASE("csa enabled steps agree with brute force") {
  for (const char* name : {"CS1", "CSO1", "CSO2", "CSO3"}) {
    const auto n = net(name);
    const auto o = oracle::Net::of(n);
    for (const auto& m : o.reach(n.initial_places())) {
      const auto steps = csa_enabled_steps(n, m);
      CHECK(std::vector<oracle::Ids>(steps.begin(), steps.end()) == o.steps(m));
    }
    CHECK(csa_behaviours(n, {BehaviourKind::Sseq}).sequences == o.sseq(n.initial_places()));
    CHECK(csa_behaviours(n, {BehaviourKind::Reach}).markings == o.reach(n.initial_places()));
  }
}

TEST_CASE("csa behaviours of CS1") {
  const auto cs1 = net("CS1");
  CHECK(csa_behaviours(cs1, {BehaviourKind::Maxsseq}).sequences ==
        seqs({{{"e"}, {"a"}, {"b"}},
              {{"a"}, {"e"}, {"b"}},
              {{"a"}, {"b"}, {"e"}},
              {{"a", "e"}, {"b"}},
              {{"a"}, {"b", "e"}},
              {{"e"}, {"c"}, {"d", "f"}},
              {{"c", "e"}, {"d", "f"}}}));
  CHECK(csa_behaviours(cs1, {BehaviourKind::Finreach}).markings ==
        std::set<Marking>{{"p4", "p6", "q1"}, {"p4", "p7"}});
  const auto mixed = csa_behaviours(cs1, {BehaviourKind::Maxmixsseq}).mixed;
  CHECK(std::any_of(mixed.begin(), mixed.end(), [](const MixedStepSequence& mu) {
    return format_mixed(mu).rfind("{p1,p5}{a,e}{p2,p6,q1}", 0) == 0;
  }));
  CHECK_THROWS_AS(csa_behaviours(cs1, {BehaviourKind::Fseq}), Error);

  const auto bd1 = fixture("BD1").acyclic();
  const auto single = csa_of(bd1);
  for (auto kind : {BehaviourKind::Sseq, BehaviourKind::Fseq, BehaviourKind::Maxsseq, BehaviourKind::Finreach}) {
    const auto a = csa_behaviours(single, {kind});
    const auto b = behaviours(bd1, {kind});
    CHECK(a.sequences == b.sequences);
    CHECK(a.markings == b.markings);
  }
}

TEST_CASE("projections") {
  const auto cs1 = net("CS1");
  CHECK(project(cs1, 0, StepSequence{{"a", "e"}, {"b"}}) == StepSequence{{"a"}, {"b"}});
  CHECK(project(cs1, 1, StepSequence{{"a", "e"}, {"b"}}) == StepSequence{{"e"}});
  const auto mu = csa_run(cs1, {"p1", "p5"}, {{"a"}, {"b"}});
  CHECK(project(cs1, 1, mu) == SetSequence{{"p5"}});
  CHECK(project(cs1, 0, mu) == SetSequence{{"p1"}, {"a"}, {"p2"}, {"b"}, {"p4"}});
  CHECK_THROWS_AS(project(cs1, 2, StepSequence{}), Error);
  CHECK_THROWS_AS(project(cs1, 0, StepSequence{{"c"}}), Error);

  // every projection of a step sequence is a step sequence of the component
  const auto all = csa_behaviours(cs1, {BehaviourKind::Sseq}).sequences;
  for (std::size_t i = 0; i < cs1.components().size(); ++i) {
    const auto& comp = cs1.components()[i];
    const auto own = oracle::Net::of(comp).sseq(comp.initial_places());
    for (const auto& s : all) CHECK(own.count(project(cs1, i, s)));
  }
}

TEST_CASE("syn-cycles") {
  CHECK(syn_cycles(net("CSO3")) == std::vector<NodeSet>{{"c"}, {"d", "f"}, {"e"}});
  CHECK(syn_cycles(net("CSO1")) == std::vector<NodeSet>{{"a"}, {"e"}});
  CHECK(syn_cycles_csa(net("CS1")) == std::vector<NodeSet>{{"a"}, {"b"}, {"c"}, {"d", "f"}, {"e"}});
  try {
    syn_cycles(net("CS1"));
    FAIL("expected NotACsoNet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotACsoNet);
  }
  for (const char* name : {"CSO1", "CSO2", "CSO3"}) {
    const auto n = net(name);
    const auto cycles = syn_cycles(n);
    NodeSet all;
    std::size_t total = 0;
    for (const auto& c : cycles) {
      CHECK_FALSE(c.empty());
      all = set_union(all, c);
      total += c.size();
    }
    CHECK(all == n.transitions());
    CHECK(total == n.transitions().size());
    // mutual W+ reachability by an independent closure
    std::set<std::pair<std::string, std::string>> w;
    const auto o = oracle::Net::of(n);
    for (const auto& t : n.transitions())
      for (const auto& q : o.post.at(t))
        if (o.buffers.count(q))
          for (const auto& [u, pre] : o.pre)
            if (pre.count(q)) w.insert({t, u});
    const auto plus = oracle::closure(set_union(n.transitions(), n.buffers()), w);
    for (const auto& c : cycles)
      for (const auto& t : c)
        for (const auto& u : n.transitions())
          if (t != u) CHECK((c.count(u) > 0) == (plus.count({t, u}) && plus.count({u, t})));
  }
}

TEST_CASE("step decomposition") {
  const auto cs1 = net("CS1");
  CHECK(decompose_step(cs1, {"p3", "p6"}, {"d", "f"}) == std::vector<NodeSet>{{"d", "f"}});
  CHECK(decompose_step(cs1, {"p1", "p5"}, {"a", "e"}) == std::vector<NodeSet>{{"a"}, {"e"}});
  CHECK(decompose_step(cs1, {"p1", "p5"}, {"c", "e"}) == std::vector<NodeSet>{{"e"}, {"c"}});
  CHECK_THROWS_AS(decompose_step(cs1, {"p1", "p5"}, {"c"}), Error);

  // every enabled step splits into syn-cycles that replay to the same marking
  const auto o = oracle::Net::of(cs1);
  for (const auto& m : o.reach(cs1.initial_places()))
    for (const auto& u : csa_enabled_steps(cs1, m)) {
      const auto parts = decompose_step(cs1, m, u);
      Marking x = m;
      NodeSet seen;
      for (const auto& part : parts) {
        REQUIRE(csa_enabled(cs1, x, part));
        x = csa_fire(cs1, x, part);
        seen = set_union(seen, part);
      }
      CHECK(seen == u);
      CHECK(x == csa_fire(cs1, m, u));
    }
}

TEST_CASE("csa scenarios") {
  const auto cs1 = net("CS1");
  CHECK(csa_scenario_of(cs1, {{"a", "e"}}) == net("CSO1"));
  CHECK(csa_scenario_of(cs1, {{"e"}, {"a"}, {"b"}}) == net("CSO2"));
  CHECK(csa_scenario_of(cs1, {{"c", "e"}, {"d", "f"}}) == net("CSO3"));
  CHECK(csa_maximal_scenarios(net("CSO3")) == std::vector<CsaNet>{net("CSO3")});
  const auto max = csa_maximal_scenarios(cs1);
  REQUIRE(max.size() == 2);
  CHECK(max[0] == csa_scenario_of(cs1, {{"a"}, {"b"}, {"e"}}));
  CHECK(max[1] == net("CSO3"));
  for (const auto& s : csa_scenarios(cs1)) CHECK(classify_csa(s) == CsaClass::CsoNet);
  CHECK(transitions_by_component(net("CSO2")) == std::vector<NodeSet>{{"a", "b"}, {"e"}});
  CHECK(csa_coverage(cs1).full());
}

TEST_CASE("csa well-formedness") {
  for (const char* name : {"CS1", "CSO1", "CSO2", "CSO3"}) CHECK_MESSAGE(csa_is_well_formed(net(name)).ok(), name);
  CHECK(csa_is_wf_stepseq(net("CS1"), {{"c", "e"}, {"d", "f"}}).well_formed);

  // two components feeding one buffer consumed once: the buffer may be filled twice
  const RawCsaNet twice{{RawNet{{"p1", "p2"}, {"a"}, {{"p1", "a"}, {"a", "p2"}}},
                         RawNet{{"p3", "p4"}, {"b"}, {{"p3", "b"}, {"b", "p4"}}},
                         RawNet{{"p5", "p6"}, {"c"}, {{"p5", "c"}, {"c", "p6"}}}},
                        {"q"},
                        {{"a", "q"}, {"b", "q"}, {"q", "c"}}};
  const auto n = CsaNet::validate(twice);
  const auto v = csa_is_well_formed(n);
  CHECK(v.verdict == Verdict::NotOk);
  REQUIRE(v.double_fill);
  CHECK(v.double_fill->place == "q");
  CHECK_FALSE(csa_is_wf_stepseq(n, {{"a", "b"}}).well_formed);
  CHECK_THROWS_AS(csa_scenario_of(n, {{"a", "b"}}), Error);
}

TEST_CASE("csa scenarios generate the behaviour of well-formed nets") {
  const auto cs1 = net("CS1");
  const auto all = csa_scenarios(cs1);
  const auto max = csa_maximal_scenarios(cs1);
  for (auto kind : {BehaviourKind::Sseq, BehaviourKind::Mixsseq, BehaviourKind::Reach, BehaviourKind::Maxsseq,
                    BehaviourKind::Maxmixsseq, BehaviourKind::Finreach}) {
    const bool maximal_kind =
        kind == BehaviourKind::Maxsseq || kind == BehaviourKind::Maxmixsseq || kind == BehaviourKind::Finreach;
    const auto whole = csa_behaviours(cs1, {kind});
    BehaviourResult joined;
    for (const auto& s : maximal_kind ? max : all) {
      const auto part = csa_behaviours(s, {kind});
      joined.sequences.insert(part.sequences.begin(), part.sequences.end());
      joined.mixed.insert(part.mixed.begin(), part.mixed.end());
      joined.markings.insert(part.markings.begin(), part.markings.end());
    }
    CHECK_MESSAGE(whole.sequences == joined.sequences, to_string(kind));
    CHECK(whole.mixed == joined.mixed);
    CHECK(whole.markings == joined.markings);
  }
}
