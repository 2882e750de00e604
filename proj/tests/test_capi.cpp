#include <doctest.h>

#include <string>

#include <nlohmann/json.hpp>

#include "sonet/sonet.h"

using json = nlohmann::json;

namespace {

json take(char* s) {
  REQUIRE(s != nullptr);
  auto j = json::parse(s);
  sonet_free_string(s);
  return j;
}

struct Net {
  sonet_net* handle = nullptr;
  ~Net() { sonet_net_free(handle); }
};

json command(sonet_net* net, const char* name, const json& args, int* status) {
  char* out = nullptr;
  *status = sonet_net_command(net, name, args.is_null() ? nullptr : args.dump().c_str(), &out);
  return out ? take(out) : json();
}

}  // namespace

TEST_CASE("version and names") {
  CHECK(std::string(sonet_version()).size() > 0);
  char* out = nullptr;
  REQUIRE(sonet_fixture_names(&out) == SONET_OK);
  CHECK(take(out).size() == 16);
  REQUIRE(sonet_command_names(&out) == SONET_OK);
  const auto names = take(out);
  CHECK(std::find(names.begin(), names.end(), "wellformed") != names.end());
}

TEST_CASE("fixtures and commands") {
  Net w1;
  REQUIRE(sonet_net_fixture("W1", &w1.handle) == SONET_OK);
  CHECK(std::string(sonet_net_kind(w1.handle)) == "acyclic");
  int status = -1;
  const auto wf = command(w1.handle, "wellformed", nullptr, &status);
  CHECK(status == SONET_PROPERTY_FAILS);
  CHECK(wf["result"]["verdict"] == "not_ok");
  CHECK(wf["result"]["double_fill"]["place"] == "p3");

  const auto causes = command(w1.handle, "causes", {{"transition", "c"}}, &status);
  CHECK(status == SONET_OK);
  CHECK(causes["result"]["causes"].empty());
  CHECK(causes["result"]["graph_predecessors"] == json{"a", "b"});

  Net bd1;
  REQUIRE(sonet_net_fixture("BD1", &bd1.handle) == SONET_OK);
  command(bd1.handle, "maxsseq", {{"bound", 2}}, &status);
  CHECK(status == SONET_BOUND_EXCEEDED);

  const auto bad = command(bd1.handle, "fire", {{"step", {"b"}}}, &status);
  CHECK(status == SONET_PROPERTY_FAILS);
  CHECK(bad["result"]["enabled"] == false);
  CHECK(bad["result"]["error"]["code"] == "StepNotEnabled");

  const auto raised = command(bd1.handle, "causes", {{"transition", "zz"}}, &status);
  CHECK(status == SONET_USAGE);
  CHECK(raised.is_null());
  CHECK(json::parse(sonet_last_error())["code"] == "UnknownTransition");

  command(bd1.handle, "no-such-command", nullptr, &status);
  CHECK(status == SONET_USAGE);
  CHECK(sonet_net_fixture("NOPE", &bd1.handle) == SONET_USAGE);
  CHECK(sonet_net_command(nullptr, "validate", nullptr, nullptr) == SONET_USAGE);
}

TEST_CASE("parsing") {
  Net n;
  CHECK(sonet_net_parse("{", 0, &n.handle) == SONET_USAGE);
  CHECK(n.handle == nullptr);
  CHECK(json::parse(sonet_last_error())["code"] == "SyntaxError");

  const char* cyclic =
      R"({"format":"sonet/1","kind":"acyclic","net":{"places":["p","q"],"transitions":["t","u"],"arcs":[["p","t"],["t","q"],["q","u"],["u","p"]]}})";
  CHECK(sonet_net_parse(cyclic, 0, &n.handle) == SONET_INVALID_NET);
  CHECK(json::parse(sonet_last_error())["violations"][0]["kind"] == "CyclicFlow");

  const char* extra =
      R"({"format":"sonet/1","kind":"acyclic","extra":1,"net":{"places":["p"],"transitions":[],"arcs":[]}})";
  REQUIRE(sonet_net_parse(extra, 0, &n.handle) == SONET_OK);
  char* out = nullptr;
  REQUIRE(sonet_net_warnings(n.handle, &out) == SONET_OK);
  CHECK(take(out).size() == 1);
  Net strict;
  CHECK(sonet_net_parse(extra, 1, &strict.handle) == SONET_USAGE);
}

TEST_CASE("service") {
  sonet_service* svc = sonet_service_new(R"({"step_cap": 3})");
  REQUIRE(svc != nullptr);
  char* out = nullptr;
  CHECK(sonet_service_handle(svc, "POST", "/api/v1/sessions", R"({"fixture":"BSA0"})", &out) == 201);
  const auto s = take(out);
  CHECK(s["enabled"].size() == 3);
  CHECK(s["truncated"] == true);
  const auto id = s["id"].get<std::string>();
  const auto fire = "/api/v1/sessions/" + id + "/fire";
  CHECK(sonet_service_handle(svc, "POST", fire.c_str(), R"({"version":1,"step":["g","k"]})", &out) == 200);
  CHECK(take(out)["marking"] == json{"p1", "r4", "r5"});
  CHECK(sonet_service_handle(svc, "POST", fire.c_str(), R"({"version":1,"step":["h"]})", &out) == 409);
  take(out);
  CHECK(sonet_service_handle(svc, "GET", "/api/v1/sessions/none", nullptr, &out) == 404);
  take(out);
  sonet_service_free(svc);
  CHECK(sonet_service_new("not json") == nullptr);
}
