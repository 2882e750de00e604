#pragma once

#include <algorithm>
#include <vector>

#include "sonet/foundations.hpp"

namespace sonet::detail {

// Members of `all` with no strict superset in `all`.
inline std::vector<NodeSet> maximal_sets(const std::vector<NodeSet>& all) {
  std::vector<NodeSet> out;
  for (const auto& t : all) {
    const bool dominated = std::any_of(all.begin(), all.end(), [&](const NodeSet& other) {
      return other.size() > t.size() && is_subset(t, other);
    });
    if (!dominated) out.push_back(t);
  }
  return out;
}

}  // namespace sonet::detail
