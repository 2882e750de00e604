#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace props {

struct Outcome {
  std::string name;
  int cases = 0;    // cases actually checked
  int skipped = 0;  // generated nets whose enumeration hit the bound
  int failures = 0;
  std::string first_failure;

  bool passed(int wanted) const { return failures == 0 && cases >= wanted; }
};

Outcome serialization(std::uint64_t seed, int cases);
Outcome subnet_inclusion(std::uint64_t seed, int cases);
Outcome occurrence_final_marking(std::uint64_t seed, int cases);
Outcome backward_deterministic_runs(std::uint64_t seed, int cases);
Outcome scenario_correspondence(std::uint64_t seed, int cases);
Outcome end_marking_formula(std::uint64_t seed, int cases);
Outcome reach_matches_sseq(std::uint64_t seed, int cases);

inline constexpr std::uint64_t kSeed = 20240611;
inline constexpr int kCases = 1000;

struct Named {
  const char* label;
  Outcome (*run)(std::uint64_t, int);
};

inline const std::vector<Named>& all() {
  static const std::vector<Named> list = {
      {"step serialization in any partition order", serialization},
      {"co-initial subnet behaviour inclusion", subnet_inclusion},
      {"occurrence nets end in P^fin", occurrence_final_marking},
      {"backward-deterministic runs are well-formed", backward_deterministic_runs},
      {"scenario/behaviour correspondence", scenario_correspondence},
      {"well-formed run end-marking formula", end_marking_formula},
      {"marking-graph reach equals sseq end markings", reach_matches_sseq},
  };
  return list;
}

}  // namespace props
