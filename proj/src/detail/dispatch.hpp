#pragma once

// Kind-independent entry points over a NetDocument, plus the JSON shapes
// shared by the command layer and the session service.

#include <json.hpp>
#include <string>
#include <vector>

#include "sonet/netio.hpp"

namespace sonet::detail {

using json = nlohmann::json;

/// Throws UnknownPlace when m mentions a node that is not a place or buffer.
void check_marking(const NetDocument& doc, const Marking& m);

bool enabled(const NetDocument& doc, const Marking& m, const Step& u);
Marking fire(const NetDocument& doc, const Marking& m, const Step& u);
MixedStepSequence run(const NetDocument& doc, const Marking& m0, const std::vector<Step>& steps);
std::vector<Step> enabled_steps(const NetDocument& doc, const Marking& m);
BehaviourResult behaviours(const NetDocument& doc, const BehaviourQuery& q);
WellFormedVerdict well_formed(const NetDocument& doc, const Bound& bound);

/// Syn-cycle split of a step; empty when none exists.
std::vector<NodeSet> decomposition(const NetDocument& doc, const Marking& m, const Step& u);

/// Why {t} is not enabled at m, for each transition t; "underlying" carries the
/// missing places, bsa phase reasons carry none.
struct Blocked {
  Step step;
  std::string reason;
  NodeSet missing;
};
std::vector<Blocked> blocked_singletons(const NetDocument& doc, const Marking& m);

/// Induced scenario of a step sequence, any kind. bsa-nets use the scenario
/// pair of the lower and upper projections with β restricted.
json induced_scenario(const NetDocument& doc, const StepSequence& s);
json scenario_list(const NetDocument& doc, bool maximal, const Bound& bound);

json to_json(const Error& e);
json to_json(const WellFormedVerdict& v);
json to_json(const MixedStepSequence& mu);
json to_json(const AcyclicNet& net);
json to_json(const CsaNet& net);
json to_json(const BsaNet& net);
json phase_json(const BsaNet& b);

/// Node lists in a JSON argument; InvalidArgument on the wrong shape.
NodeSet node_set(const json& j, const char* what);
std::vector<Step> step_list(const json& j, const char* what);

}  // namespace sonet::detail
