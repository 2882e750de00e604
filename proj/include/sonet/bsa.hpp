#pragma once

#include <map>
#include <optional>
#include <vector>

#include "sonet/csa.hpp"

namespace sonet {

struct RawBsaNet {
  RawCsaNet lower;
  RawCsaNet upper;
  std::vector<Pair> beta;  // (lower place, upper place)
};

/// Upper place -> the lower markings of its phase.
using PhaseTable = std::map<NodeId, std::set<Marking>>;

/// Two csa-nets with the same number of components, the upper one made of
/// line-like components, tied together by β. Phases are computed once here.
class BsaNet {
 public:
  static BsaNet validate(const RawBsaNet& raw, const Bound& bound = {});
  static std::vector<Violation> check(const RawBsaNet& raw, const Bound& bound = {});

  const CsaNet& lower() const noexcept { return lower_; }
  const CsaNet& upper() const noexcept { return upper_; }
  const std::set<Pair>& beta() const noexcept { return beta_; }
  /// lower components first, then upper ones
  const CsaNet& underlying() const noexcept { return underlying_; }
  const PhaseTable& phases() const noexcept { return phases_; }
  std::size_t component_count() const { return lower_.components().size(); }

  /// β_p, and its lift to sets.
  NodeSet beta_of(const NodeId& p) const;
  NodeSet beta_of(const NodeSet& ps) const;

  NodeSet transitions() const { return set_union(lower_.transitions(), upper_.transitions()); }
  NodeSet initial_marking() const { return underlying_.initial_places(); }

  RawBsaNet to_raw() const;

  friend bool operator==(const BsaNet& a, const BsaNet& b) {
    return a.lower_ == b.lower_ && a.upper_ == b.upper_ && a.beta_ == b.beta_;
  }

 private:
  BsaNet(CsaNet lower, CsaNet upper, CsaNet underlying)
      : lower_(std::move(lower)), upper_(std::move(upper)), underlying_(std::move(underlying)) {}

  CsaNet lower_;
  CsaNet upper_;
  CsaNet underlying_;
  std::set<Pair> beta_;
  PhaseTable phases_;
};

CsaNet underlying_csa(const BsaNet& b);

/// Throws UnknownPlace when p is not an upper place.
const std::set<Marking>& phase(const BsaNet& b, const NodeId& p);

struct PhaseCheck {
  bool consistent = false;
  /// Set unless the query ran in speculative mode.
  std::optional<bool> reachable;
  bool speculative = false;
};

/// Phase-consistency of a marking of the underlying csa-net. Unless
/// speculative, the marking must also be reachable there. Throws
/// UpperMarkingNotSingleton when an upper component does not hold exactly
/// one token, and UnknownPlace for foreign places.
PhaseCheck is_phase_consistent(const BsaNet& b, const Marking& m, bool speculative = false,
                               const Bound& bound = {});

enum class BlockReason { None, Underlying, SourcePhase, TargetPhase };

const char* to_string(BlockReason r);

struct BsaEnabling {
  bool enabled = false;
  BlockReason reason = BlockReason::None;
  NodeSet missing;  // for Underlying
};

/// Throws UnknownTransition / NotAStep for malformed steps.
BsaEnabling bsa_enabling(const BsaNet& b, const Marking& m, const Step& u);
bool bsa_enabled(const BsaNet& b, const Marking& m, const Step& u);
/// Throws StepNotEnabled with reason() "underlying", "source_phase" or "target_phase".
Marking bsa_fire(const BsaNet& b, const Marking& m, const Step& u);
MixedStepSequence bsa_run(const BsaNet& b, const Marking& m0, const std::vector<Step>& steps);
std::vector<Step> bsa_enabled_steps(const BsaNet& b, const Marking& m);

/// fseq is not defined here (InvalidArgument).
BehaviourResult bsa_behaviours(const BsaNet& b, const BehaviourQuery& q);

/// Both levels are cso-nets and one step sequence uses every transition.
/// Throws BoundExceeded when the covering search runs out of states.
bool classify_bso(const BsaNet& b, const Bound& bound = {});

struct RejectedScenarioPair {
  NodeSet lower_transitions;
  NodeSet upper_transitions;
  std::string reason;
};

struct BsaScenarioEnumeration {
  std::vector<BsaNet> scenarios;               // ordered by transition sets
  std::vector<RejectedScenarioPair> rejected;  // pairs that fail the bsa or bso conditions
};

/// Scenario induced by a step sequence: the csa scenarios of its lower and
/// upper parts with β restricted. Throws StepNotEnabled when the sequence does
/// not replay, NotWellFormed as csa_scenario_of, and ValidationError when the
/// pair is not a bsa-net.
BsaNet bsa_scenario_of(const BsaNet& b, const StepSequence& s);

BsaScenarioEnumeration bsa_scenarios(const BsaNet& b, const Bound& bound = {});
std::vector<BsaNet> bsa_maximal_scenarios(const BsaNet& b, const Bound& bound = {});

/// Three conditions: sseq(b) equals the union of the scenarios' sseq; every
/// maximal scenario is realised by a maximal step sequence whose restriction
/// is maximal in it; every maximal lower scenario is the lower part of a
/// maximal scenario.
WellFormedVerdict bsa_is_well_formed(const BsaNet& b, const Bound& bound = {});

}  // namespace sonet
