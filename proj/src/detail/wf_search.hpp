#pragma once

#include "detail/step_system.hpp"
#include "sonet/wellformed.hpp"

namespace sonet::detail {

// Places filled twice inside one step u (distinct transitions with a shared
// output place), smallest first.
Bits overlapping_posts(const StepSystem& sys, const Bits& u);

// Exhaustive search over (marking, filled) states. Each move is an enabled
// step (or a single transition with singletons_only). The first violation in
// canonical order is reported; afterwards every transition must have occurred.
WellFormedVerdict wf_search(const StepSystem& sys, bool singletons_only, const Bound& bound);

// Checks a replayable step sequence against both well-formedness conditions.
StepSequenceCheck check_stepseq(const StepSystem& sys, const std::vector<Bits>& steps);

}  // namespace sonet::detail
