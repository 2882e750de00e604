#include "sonet/sonet.h"

#include <cstdlib>
#include <cstring>
#include <json.hpp>

#include "detail/commands.hpp"
#include "detail/dispatch.hpp"
#include "detail/service.hpp"
#include "sonet/fixtures.hpp"

struct sonet_net {
  sonet::NetDocument doc;
  std::vector<std::string> warnings;
};

struct sonet_service {
  sonet::detail::Service service;
};

namespace {

using nlohmann::json;

thread_local std::string last_error = "{}";

int set_error(int status, const json& payload) {
  last_error = payload.dump();
  return status;
}

int from_error(const sonet::Error& e) {
  if (e.code() == sonet::ErrorCode::Validation) return set_error(SONET_INVALID_NET, sonet::detail::to_json(e));
  return set_error(sonet::detail::status_of(e), sonet::detail::to_json(e));
}

int usage(const std::string& message) {
  return set_error(SONET_USAGE, {{"code", "InvalidArgument"}, {"message", message}, {"nodes", json::array()}});
}

char* copy(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const sonet::Error& e) {
    return from_error(e);
  } catch (const json::exception& e) {
    return usage(e.what());
  } catch (const std::exception& e) {
    return set_error(SONET_INTERNAL, {{"code", "Internal"}, {"message", e.what()}, {"nodes", json::array()}});
  } catch (...) {
    return set_error(SONET_INTERNAL, {{"code", "Internal"}, {"message", "unknown failure"}, {"nodes", json::array()}});
  }
}

}  // namespace

extern "C" {

const char* sonet_version(void) { return "1.0.0"; }

const char* sonet_last_error(void) { return last_error.c_str(); }

void sonet_free_string(char* s) { std::free(s); }

int sonet_fixture_names(char** out_json) {
  if (!out_json) return usage("out_json is NULL");
  return guarded([&] {
    *out_json = copy(json(sonet::fixture_names()).dump());
    return SONET_OK;
  });
}

int sonet_net_parse(const char* text, int strict, sonet_net** out) {
  if (!text || !out) return usage("text and out must not be NULL");
  *out = nullptr;
  return guarded([&] {
    auto parsed = sonet::parse_document(text, {strict != 0, {}});
    *out = new sonet_net{std::move(parsed.document), std::move(parsed.warnings)};
    return SONET_OK;
  });
}

int sonet_net_fixture(const char* name, sonet_net** out) {
  if (!name || !out) return usage("name and out must not be NULL");
  *out = nullptr;
  return guarded([&] {
    *out = new sonet_net{sonet::fixture(name), {}};
    return SONET_OK;
  });
}

void sonet_net_free(sonet_net* net) { delete net; }

const char* sonet_net_kind(const sonet_net* net) { return net ? sonet::to_string(net->doc.kind()) : nullptr; }

int sonet_net_warnings(const sonet_net* net, char** out_json) {
  if (!net || !out_json) return usage("net and out_json must not be NULL");
  *out_json = copy(json(net->warnings).dump());
  return SONET_OK;
}

int sonet_net_command(const sonet_net* net, const char* command, const char* args_json, char** out_json) {
  if (!net || !command || !out_json) return usage("net, command and out_json must not be NULL");
  *out_json = nullptr;
  return guarded([&] {
    json args = json::object();
    if (args_json && *args_json) {
      try {
        args = json::parse(args_json);
      } catch (const json::parse_error& e) {
        return usage(std::string("arguments are not JSON: ") + e.what());
      }
    }
    const auto out = sonet::detail::run_command(net->doc, command, args);
    *out_json = copy(out.dump());
    return out.at("status").get<int>();
  });
}

int sonet_command_names(char** out_json) {
  if (!out_json) return usage("out_json is NULL");
  *out_json = copy(json(sonet::detail::command_names()).dump());
  return SONET_OK;
}

sonet_service* sonet_service_new(const char* options_json) {
  sonet_service* svc = nullptr;
  const int status = guarded([&] {
    sonet::detail::ServiceOptions options;
    if (options_json && *options_json) {
      const auto j = json::parse(options_json);
      options.step_cap = j.value("step_cap", options.step_cap);
      options.bound.max_sequences = j.value("bound", options.bound.max_sequences);
      options.bound.max_depth = j.value("depth", options.bound.max_depth);
      options.snapshot_dir = j.value("snapshot_dir", std::string());
    }
    svc = new sonet_service{sonet::detail::Service(std::move(options))};
    return SONET_OK;
  });
  return status == SONET_OK ? svc : nullptr;
}

void sonet_service_free(sonet_service* svc) { delete svc; }

int sonet_service_handle(sonet_service* svc, const char* method, const char* target, const char* body,
                         char** out_json) {
  if (!svc || !method || !target || !out_json) {
    usage("service, method, target and out_json must not be NULL");
    return 500;
  }
  try {
    const auto r = svc->service.handle(method, target, body ? body : "");
    *out_json = copy(r.body);
    return r.status;
  } catch (const std::exception& e) {
    *out_json = copy(json{{"error", {{"code", "Internal"}, {"message", e.what()}}}}.dump());
    return 500;
  }
}

}  // extern "C"
