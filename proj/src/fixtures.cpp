#include "sonet/fixtures.hpp"

#include <functional>
#include <map>

namespace sonet {

namespace {

std::vector<Arc> arcs(std::initializer_list<std::pair<const char*, const char*>> list) {
  std::vector<Arc> out;
  for (const auto& [from, to] : list) out.push_back({from, to});
  return out;
}

NetDocument acyclic(const std::string& name, RawNet raw) { return {name, AcyclicNet::validate(raw), {}, {}}; }
NetDocument csa(const std::string& name, RawCsaNet raw) { return {name, CsaNet::validate(raw), {}, {}}; }
NetDocument bsa(const std::string& name, RawBsaNet raw) { return {name, BsaNet::validate(raw), {}, {}}; }

RawNet an1() {
  return {{"p1", "p2", "p3", "p4", "p5"},
          {"a", "b", "c", "d"},
          arcs({{"p1", "a"}, {"p2", "b"}, {"p3", "c"}, {"p3", "d"}, {"a", "p2"}, {"a", "p3"}, {"b", "p4"},
                {"c", "p5"}, {"d", "p5"}})};
}

RawNet bd1() {
  return {{"p1", "p2", "p3", "p4", "p5", "p6"},
          {"a", "b", "c", "d"},
          arcs({{"p1", "a"}, {"p2", "b"}, {"p3", "c"}, {"p3", "d"}, {"a", "p2"}, {"a", "p3"}, {"b", "p4"},
                {"c", "p5"}, {"d", "p6"}})};
}

RawNet on1() {
  return {{"p1", "p2", "p3", "p4", "p5"},
          {"a", "b", "c"},
          arcs({{"p1", "a"}, {"p2", "b"}, {"p3", "c"}, {"a", "p2"}, {"a", "p3"}, {"b", "p4"}, {"c", "p5"}})};
}

RawNet on2() {
  return {{"p1", "p2", "p3", "p4", "p5"},
          {"a", "b", "d"},
          arcs({{"p1", "a"}, {"p2", "b"}, {"p3", "d"}, {"a", "p2"}, {"a", "p3"}, {"b", "p4"}, {"d", "p5"}})};
}

RawNet w1() {
  return {{"p1", "p2", "p3", "p4"},
          {"a", "b", "c"},
          arcs({{"p1", "a"}, {"p2", "b"}, {"p3", "c"}, {"a", "p3"}, {"b", "p3"}, {"c", "p4"}})};
}

RawNet w1_via(const char* t, const char* p) {
  return {{"p1", "p2", "p3", "p4"}, {t, "c"}, arcs({{p, t}, {t, "p3"}, {"p3", "c"}, {"c", "p4"}})};
}

RawNet wf_a() {
  return {{"p1", "p2", "p3", "p4", "p5"},
          {"a", "b", "c"},
          arcs({{"p1", "a"}, {"a", "p3"}, {"p3", "c"}, {"c", "p4"}, {"p2", "b"}, {"b", "p5"}})};
}

RawNet wf_b() {
  return {{"p1", "p2", "p3", "p4", "p5"},
          {"a", "b", "c"},
          arcs({{"p1", "a"}, {"a", "p3"}, {"p2", "b"}, {"b", "p5"}, {"p5", "c"}, {"c", "p4"}})};
}

RawCsaNet cs1() {
  RawNet an1{{"p1", "p2", "p3", "p4"},
             {"a", "b", "c", "d"},
             arcs({{"p1", "a"}, {"p1", "c"}, {"p2", "b"}, {"p3", "d"}, {"a", "p2"}, {"b", "p4"}, {"d", "p4"},
                   {"c", "p3"}})};
  RawNet an2{{"p5", "p6", "p7"}, {"e", "f"}, arcs({{"p5", "e"}, {"p6", "f"}, {"e", "p6"}, {"f", "p7"}})};
  return {{an1, an2},
          {"q1", "q2", "q3"},
          arcs({{"e", "q1"}, {"q1", "c"}, {"d", "q2"}, {"q2", "f"}, {"f", "q3"}, {"q3", "d"}})};
}

RawCsaNet cso1() {
  return {{RawNet{{"p1", "p2"}, {"a"}, arcs({{"p1", "a"}, {"a", "p2"}})},
           RawNet{{"p5", "p6"}, {"e"}, arcs({{"p5", "e"}, {"e", "p6"}})}},
          {"q1"},
          arcs({{"e", "q1"}})};
}

RawCsaNet cso2() {
  return {{RawNet{{"p1", "p2", "p4"}, {"a", "b"}, arcs({{"p1", "a"}, {"a", "p2"}, {"p2", "b"}, {"b", "p4"}})},
           RawNet{{"p5", "p6"}, {"e"}, arcs({{"p5", "e"}, {"e", "p6"}})}},
          {"q1"},
          arcs({{"e", "q1"}})};
}

RawCsaNet cso3() {
  return {{RawNet{{"p1", "p3", "p4"}, {"c", "d"}, arcs({{"p1", "c"}, {"c", "p3"}, {"p3", "d"}, {"d", "p4"}})},
           RawNet{{"p5", "p6", "p7"}, {"e", "f"}, arcs({{"p5", "e"}, {"e", "p6"}, {"p6", "f"}, {"f", "p7"}})}},
          {"q1", "q2", "q3"},
          arcs({{"e", "q1"}, {"q1", "c"}, {"d", "q2"}, {"q2", "f"}, {"f", "q3"}, {"q3", "d"}})};
}

std::vector<Pair> beta0() {
  return {{"r1", "p1"}, {"r2", "p1"}, {"r3", "p2"}, {"r5", "p2"},  {"r7", "p3"},
          {"r8", "p3"}, {"r9", "p4"}, {"r11", "p4"}, {"r10", "p5"}, {"r11", "p5"}};
}

RawBsaNet bsa0() {
  RawNet lan1{{"r1", "r2", "r3", "r4", "r5", "r6", "r7", "r8", "r9", "r10", "r11"},
              {"e", "f", "g", "h", "i", "j", "k", "l", "m"},
              arcs({{"r1", "e"}, {"r1", "g"}, {"r3", "f"}, {"r4", "h"}, {"r6", "i"}, {"r7", "j"}, {"r2", "k"},
                    {"r5", "l"}, {"r8", "m"}, {"e", "r3"}, {"f", "r6"}, {"g", "r4"}, {"h", "r7"}, {"i", "r9"},
                    {"j", "r10"}, {"k", "r5"}, {"l", "r8"}, {"m", "r11"}})};
  RawNet han1{{"p1", "p2", "p3", "p4", "p5"},
              {"a", "b", "c", "d"},
              arcs({{"p1", "a"}, {"p1", "c"}, {"p2", "b"}, {"p3", "d"}, {"a", "p2"}, {"b", "p4"}, {"c", "p3"},
                    {"d", "p5"}})};
  return {{{lan1}, {}, {}}, {{han1}, {}, {}}, beta0()};
}

// The two maximal scenarios of BSA0: upper branch a,b or c,d with its lower part.
RawBsaNet bsa0_scenario(bool left) {
  const NodeSet upper_t = left ? NodeSet{"a", "b"} : NodeSet{"c", "d"};
  const NodeSet lower_t = left ? NodeSet{"e", "f", "i", "k", "l", "m"} : NodeSet{"g", "h", "j", "k", "l", "m"};
  const auto full = BsaNet::validate(bsa0());
  const auto lower = csa_scenario_for(full.lower(), lower_t);
  const auto upper = csa_scenario_for(full.upper(), upper_t);
  RawBsaNet raw{lower.to_raw(), upper.to_raw(), {}};
  for (const auto& [r, p] : beta0())
    if (lower.places().count(r) && upper.places().count(p)) raw.beta.emplace_back(r, p);
  return raw;
}

const std::vector<std::pair<std::string, std::function<NetDocument()>>>& registry() {
  static const std::vector<std::pair<std::string, std::function<NetDocument()>>> all{
      {"AN1", [] { return acyclic("AN1", an1()); }},
      {"BD1", [] { return acyclic("BD1", bd1()); }},
      {"ON1", [] { return acyclic("ON1", on1()); }},
      {"ON2", [] { return acyclic("ON2", on2()); }},
      {"W1", [] { return acyclic("W1", w1()); }},
      {"W1-S1", [] { return acyclic("W1-S1", w1_via("a", "p1")); }},
      {"W1-S2", [] { return acyclic("W1-S2", w1_via("b", "p2")); }},
      {"WF-A", [] { return acyclic("WF-A", wf_a()); }},
      {"WF-B", [] { return acyclic("WF-B", wf_b()); }},
      {"CS1", [] { return csa("CS1", cs1()); }},
      {"CSO1", [] { return csa("CSO1", cso1()); }},
      {"CSO2", [] { return csa("CSO2", cso2()); }},
      {"CSO3", [] { return csa("CSO3", cso3()); }},
      {"BSA0", [] { return bsa("BSA0", bsa0()); }},
      {"BSA0-S1", [] { return bsa("BSA0-S1", bsa0_scenario(true)); }},
      {"BSA0-S2", [] { return bsa("BSA0-S2", bsa0_scenario(false)); }},
  };
  return all;
}

}  // namespace

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& [name, make] : registry()) out.push_back(name);
  return out;
}

NetDocument fixture(const std::string& name) {
  for (const auto& [n, make] : registry())
    if (n == name) return make();
  throw Error(ErrorCode::InvalidArgument, "unknown fixture '" + name + "'", {name});
}

}  // namespace sonet
