#include "sonet/semantics.hpp"

#include <map>

#include "detail/step_system.hpp"

namespace sonet {

SetSequence MixedStepSequence::interleaved() const {
  SetSequence out;
  for (std::size_t i = 0; i < markings.size(); ++i) {
    out.push_back(markings[i]);
    if (i < steps.size()) out.push_back(steps[i]);
  }
  return out;
}

std::string format_mixed(const MixedStepSequence& mu) {
  std::string out;
  for (std::size_t i = 0; i < mu.markings.size(); ++i) {
    out += format_set(mu.markings[i]);
    if (i < mu.steps.size()) out += format_set(mu.steps[i]);
  }
  return out;
}

const char* to_string(BehaviourKind kind) {
  switch (kind) {
    case BehaviourKind::Sseq: return "sseq";
    case BehaviourKind::Mixsseq: return "mixsseq";
    case BehaviourKind::Maxsseq: return "maxsseq";
    case BehaviourKind::Maxmixsseq: return "maxmixsseq";
    case BehaviourKind::Reach: return "reach";
    case BehaviourKind::Finreach: return "finreach";
    case BehaviourKind::Fseq: return "fseq";
  }
  return "unknown";
}

std::optional<BehaviourKind> behaviour_kind_from_string(const std::string& name) {
  static const std::map<std::string, BehaviourKind> kinds{
      {"sseq", BehaviourKind::Sseq},         {"mixsseq", BehaviourKind::Mixsseq},
      {"maxsseq", BehaviourKind::Maxsseq},   {"maxmixsseq", BehaviourKind::Maxmixsseq},
      {"reach", BehaviourKind::Reach},       {"finreach", BehaviourKind::Finreach},
      {"fseq", BehaviourKind::Fseq}};
  auto it = kinds.find(name);
  if (it == kinds.end()) return std::nullopt;
  return it->second;
}

namespace {

void check_bound(const Bound& b) {
  if (b.max_sequences < 1 || b.max_depth < 1)
    throw Error(ErrorCode::InvalidArgument, "bounds must be at least 1");
}

[[noreturn]] void not_enabled(const detail::StepSystem& sys, const detail::Bits& m, const detail::Bits& u,
                              std::optional<std::size_t> index) {
  const NodeSet missing = sys.place_set(sys.missing(m, u));
  std::string msg = "step " + format_set(sys.transition_set(u)) + " is not enabled";
  if (index) msg += " at position " + std::to_string(*index);
  msg += ": missing " + format_set(missing);
  throw Error(ErrorCode::StepNotEnabled, msg, {missing.begin(), missing.end()}, index, "underlying");
}

}  // namespace

bool enabled_step(const AcyclicNet& net, const Marking& m, const Step& u) {
  const auto sys = detail::StepSystem::of(net);
  const auto bits = detail::checked_step(sys, u);
  return sys.enabled(sys.marking(m), bits);
}

Marking fire(const AcyclicNet& net, const Marking& m, const Step& u) {
  const auto sys = detail::StepSystem::of(net);
  const auto bits = detail::checked_step(sys, u);
  const auto mb = sys.marking(m);
  if (!sys.enabled(mb, bits)) not_enabled(sys, mb, bits, std::nullopt);
  return sys.place_set(sys.fire(mb, bits));
}

Marking fire_standard(const AcyclicNet& net, const Marking& m, const Step& u) {
  const auto sys = detail::StepSystem::of(net);
  const auto bits = detail::checked_step(sys, u);
  const auto mb = sys.marking(m);
  if (!sys.enabled(mb, bits)) not_enabled(sys, mb, bits, std::nullopt);
  return sys.place_set((mb - sys.pre_of(bits)) | sys.post_of(bits));
}

MixedStepSequence run(const AcyclicNet& net, const Marking& m0, const std::vector<Step>& steps) {
  const auto sys = detail::StepSystem::of(net);
  MixedStepSequence out;
  auto m = sys.marking(m0);
  out.markings.push_back(m0);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto u = detail::checked_step(sys, steps[i]);
    if (!sys.enabled(m, u)) not_enabled(sys, m, u, i);
    m = sys.fire(m, u);
    out.steps.push_back(steps[i]);
    out.markings.push_back(sys.place_set(m));
  }
  return out;
}

std::vector<Step> enabled_steps(const AcyclicNet& net, const Marking& m, bool singletons_only) {
  const auto sys = detail::StepSystem::of(net);
  std::vector<Step> out;
  for (const auto& u : sys.enabled_steps(sys.marking(m), singletons_only)) out.push_back(sys.transition_set(u));
  return out;
}

BehaviourResult behaviours(const AcyclicNet& net, const BehaviourQuery& q) {
  check_bound(q.bound);
  const auto sys = detail::StepSystem::of(net);
  return sys.behaviours(sys.initial(), q);
}

MixedStepSequence serialize(const AcyclicNet& net, const Marking& m, const Step& u,
                            const std::vector<Step>& parts) {
  NodeSet seen;
  for (const auto& part : parts) {
    if (part.empty()) throw Error(ErrorCode::InvalidArgument, "partition blocks must be nonempty");
    for (const auto& t : part) {
      if (!u.count(t))
        throw Error(ErrorCode::InvalidArgument, "'" + t + "' is not in the step " + format_set(u), {t});
      if (!seen.insert(t).second)
        throw Error(ErrorCode::InvalidArgument, "'" + t + "' appears in two blocks", {t});
    }
  }
  if (seen != u) throw Error(ErrorCode::InvalidArgument, "blocks do not cover " + format_set(u));
  if (!enabled_step(net, m, u)) {
    const auto sys = detail::StepSystem::of(net);
    not_enabled(sys, sys.marking(m), sys.step(u), std::nullopt);
  }
  return run(net, m, parts);
}

}  // namespace sonet
