#pragma once

#include <string>
#include <vector>

#include "sonet/netio.hpp"

namespace sonet {

/// Names of the built-in example nets, in a fixed order.
std::vector<std::string> fixture_names();

/// Throws InvalidArgument for an unknown name.
NetDocument fixture(const std::string& name);

}  // namespace sonet
