#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "sonet/acyclic.hpp"

namespace sonet {

using Marking = NodeSet;
using Step = NodeSet;
using StepSequence = SetSequence;

/// M0 U1 M1 ... Uk Mk; markings.size() == steps.size() + 1.
struct MixedStepSequence {
  std::vector<Marking> markings;
  std::vector<Step> steps;

  const Marking& final_marking() const { return markings.back(); }
  /// Interleaved view M0 U1 M1 ... as a plain sequence of sets.
  SetSequence interleaved() const;

  friend auto operator<=>(const MixedStepSequence&, const MixedStepSequence&) = default;
};

std::string format_mixed(const MixedStepSequence& mu);

enum class BehaviourKind { Sseq, Mixsseq, Maxsseq, Maxmixsseq, Reach, Finreach, Fseq };

const char* to_string(BehaviourKind kind);
std::optional<BehaviourKind> behaviour_kind_from_string(const std::string& name);

inline constexpr std::size_t kDefaultMaxSequences = 100000;
inline constexpr std::size_t kDefaultMaxDepth = 64;

struct Bound {
  std::size_t max_sequences = kDefaultMaxSequences;
  std::size_t max_depth = kDefaultMaxDepth;
};

struct BehaviourQuery {
  BehaviourKind kind = BehaviourKind::Sseq;
  Bound bound{};
};

/// Exactly one of the three collections is populated, according to `kind`.
/// `truncated` is set when the bound stopped the enumeration early; the
/// collections then hold the part explored so far.
struct BehaviourResult {
  BehaviourKind kind = BehaviourKind::Sseq;
  std::set<StepSequence> sequences;
  std::set<MixedStepSequence> mixed;
  std::set<Marking> markings;
  bool truncated = false;
};

/// Throws UnknownTransition, or NotAStep (nodes = the shared pre-places) when
/// two transitions of `u` share a pre-place; an empty `u` is NotAStep too.
bool enabled_step(const AcyclicNet& net, const Marking& m, const Step& u);

/// (M ∪ U•) \ •U. Throws StepNotEnabled with the missing places.
Marking fire(const AcyclicNet& net, const Marking& m, const Step& u);

/// The standard Petri-net rule (M \ •U) ∪ U•, exposed for comparison only.
Marking fire_standard(const AcyclicNet& net, const Marking& m, const Step& u);

/// Executes `steps` from m0. Throws StepNotEnabled with index() = position
/// of the failing step (0-based) and nodes() = missing places.
MixedStepSequence run(const AcyclicNet& net, const Marking& m0, const std::vector<Step>& steps);

/// Every step enabled at m, in canonical (lexicographic) order.
std::vector<Step> enabled_steps(const AcyclicNet& net, const Marking& m, bool singletons_only = false);

/// Behaviour sets from the initial marking P^init.
BehaviourResult behaviours(const AcyclicNet& net, const BehaviourQuery& q);

/// Executes the blocks of an ordered partition of u one after another.
/// Throws InvalidArgument if `parts` is not a partition of u into nonempty
/// blocks, and StepNotEnabled if u is not enabled at m.
MixedStepSequence serialize(const AcyclicNet& net, const Marking& m, const Step& u,
                            const std::vector<Step>& parts);

}  // namespace sonet
