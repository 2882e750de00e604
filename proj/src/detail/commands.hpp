#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "sonet/netio.hpp"

namespace sonet::detail {

enum Status { kOk = 0, kPropertyFails = 1, kUsage = 2, kBoundExceeded = 3, kInternal = 4 };

/// {"status": n, "result": {...}, "summary": ["line", ...]}. Library errors
/// propagate as exceptions; the caller maps them to a status.
nlohmann::json run_command(const NetDocument& doc, const std::string& command, const nlohmann::json& args);

const std::vector<std::string>& command_names();

/// Status for a library error: bound problems are 3, everything else 2.
int status_of(const Error& e);

}  // namespace sonet::detail
