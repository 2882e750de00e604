#include "detail/service.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "detail/dispatch.hpp"
#include "sonet/fixtures.hpp"

namespace sonet::detail {

namespace {

constexpr const char* kSnapshotFormat = "sonet-session/1";

struct HttpError {
  int status;
  json body;
};

[[noreturn]] void fail(int status, const std::string& code, const std::string& message, json extra = json::object()) {
  json error = {{"code", code}, {"message", message}};
  error.update(extra);
  throw HttpError{status, {{"error", error}}};
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::stringstream in(path);
  std::string part;
  while (std::getline(in, part, '/'))
    if (!part.empty()) out.push_back(part);
  return out;
}

std::map<std::string, std::string> parse_query(const std::string& query) {
  std::map<std::string, std::string> out;
  std::stringstream in(query);
  std::string pair;
  while (std::getline(in, pair, '&')) {
    if (pair.empty()) continue;
    const auto eq = pair.find('=');
    out[pair.substr(0, eq)] = eq == std::string::npos ? "1" : pair.substr(eq + 1);
  }
  return out;
}

bool truthy(const std::map<std::string, std::string>& q, const std::string& key) {
  const auto it = q.find(key);
  return it != q.end() && (it->second == "1" || it->second == "true" || it->second == "yes");
}

json parse_body(const std::string& body) {
  if (body.empty()) return json::object();
  try {
    auto j = json::parse(body);
    if (!j.is_object()) fail(400, "BadRequest", "request body must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    fail(400, "BadRequest", std::string("request body is not JSON: ") + e.what());
  }
}

int http_status(const Error& e) {
  switch (e.code()) {
    case ErrorCode::StepNotEnabled: return 422;
    case ErrorCode::NotWellFormed:
    case ErrorCode::NoDecomposition:
    case ErrorCode::TransitionNeverFires:
    case ErrorCode::NotACsoNet: return 422;
    case ErrorCode::BoundExceeded: return 507;
    default: return 400;
  }
}

std::uint64_t required_version(const json& body) {
  if (!body.contains("version") || !body["version"].is_number_unsigned())
    fail(400, "BadRequest", "mutations need the session 'version'");
  return body["version"].get<std::uint64_t>();
}

void check_version(const Session& s, std::uint64_t version) {
  if (version != s.version)
    fail(409, "StaleVersion", "session is at version " + std::to_string(s.version),
         {{"current_version", s.version}});
}

json phase_info(const Session& s) {
  const auto& b = s.doc.bsa();
  json components = json::array();
  bool all = true;
  for (std::size_t i = 0; i < b.component_count(); ++i) {
    const auto& upper = b.upper().components()[i];
    const auto& lower = b.lower().components()[i];
    const auto up = set_intersection(s.current, upper.places());
    const auto low = set_intersection(s.current, lower.places());
    json c = {{"component", i}, {"upper", up}, {"lower", low}};
    bool in_phase = false;
    if (up.size() == 1) {
      const auto& markings = phase(b, *up.begin());
      in_phase = markings.count(low) != 0;
      c["anchor"] = *up.begin();
      c["boundary"] = b.beta_of(*up.begin());
    }
    c["in_phase"] = in_phase;
    all = all && in_phase;
    components.push_back(c);
  }
  return {{"consistent", all}, {"components", components}};
}

json state(const Session& s, const ServiceOptions& o) {
  auto steps = enabled_steps(s.doc, s.current);
  json enabled = json::array();
  std::vector<std::pair<bool, json>> rows;
  for (const auto& u : steps) {
    const auto parts = decomposition(s.doc, s.current, u);
    rows.push_back({parts.size() == 1, {{"step", u}, {"decomposition", parts}, {"syn_cycle", parts.size() == 1}}});
  }
  // single syn-cycles first, each group in canonical order
  std::stable_partition(rows.begin(), rows.end(), [](const auto& r) { return r.first; });
  const bool truncated = rows.size() > o.step_cap;
  for (std::size_t i = 0; i < rows.size() && i < o.step_cap; ++i) enabled.push_back(rows[i].second);

  json blocked = json::array();
  for (const auto& b : blocked_singletons(s.doc, s.current))
    blocked.push_back({{"step", b.step}, {"reason", b.reason}, {"missing", b.missing}});

  json out = {{"id", s.id},
              {"version", s.version},
              {"kind", to_string(s.doc.kind())},
              {"name", s.doc.name},
              {"marking", s.current},
              {"initial_marking", s.initial},
              {"recorded", s.recorded()},
              {"enabled", enabled},
              {"enabled_count", rows.size()},
              {"truncated", truncated},
              {"blocked", blocked},
              {"final", steps.empty()}};
  if (s.doc.kind() == NetKind::Bsa) out["phase"] = phase_info(s);
  return out;
}

json document_json(const NetDocument& doc) { return json::parse(serialize(doc)); }

json snapshot(const Session& s) {
  return {{"format", kSnapshotFormat},
          {"id", s.id},
          {"version", s.version},
          {"document", document_json(s.doc)},
          {"initial_marking", s.initial},
          {"trace", s.recorded()}};
}

NetDocument document_from(const json& body, const Bound& bound) {
  const bool strict = body.value("strict", false);
  if (body.contains("fixture")) {
    if (!body["fixture"].is_string()) fail(400, "BadRequest", "'fixture' must be a name");
    return fixture(body["fixture"].get<std::string>());
  }
  if (body.contains("document")) return parse_document(body["document"].dump(), {strict, bound}).document;
  if (body.contains("text")) {
    if (!body["text"].is_string()) fail(400, "BadRequest", "'text' must be a string");
    return parse_document(body["text"].get<std::string>(), {strict, bound}).document;
  }
  fail(400, "BadRequest", "give one of 'fixture', 'document', 'text' or 'snapshot'");
}

}  // namespace

StepSequence Session::recorded() const {
  StepSequence out;
  for (const auto& [u, m] : history) out.push_back(u);
  return out;
}

Service::Service(ServiceOptions options) : options_(std::move(options)) {
  std::random_device rd;
  id_salt_ = (std::uint64_t(rd()) << 32) ^ rd();
}

std::size_t Service::session_count() const {
  std::shared_lock lock(sessions_mutex_);
  return sessions_.size();
}

std::string Service::new_id() {
  std::lock_guard lock(id_mutex_);
  std::mt19937_64 gen(id_salt_ + ++id_counter_);
  std::ostringstream out;
  out << std::hex << gen();
  return out.str();
}

std::shared_ptr<Session> Service::find(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) fail(404, "UnknownSession", "no session '" + id + "'");
  return it->second;
}

Response Service::handle(const std::string& method, const std::string& target, const std::string& body_text) {
  const auto qpos = target.find('?');
  const auto parts = split_path(target.substr(0, qpos));
  const auto query = parse_query(qpos == std::string::npos ? "" : target.substr(qpos + 1));
  auto ok = [](json j, int status = 200) { return Response{status, j.dump()}; };
  auto route_missing = [&]() -> Response { fail(404, "NotFound", "no route " + method + " " + target); };
  auto wrong_method = [&]() -> Response { fail(405, "MethodNotAllowed", method + " is not allowed on " + target); };

  try {
    if (parts.size() < 2 || parts[0] != "api" || parts[1] != "v1") return route_missing();
    const std::vector<std::string> rest(parts.begin() + 2, parts.end());
    if (rest.empty()) return route_missing();

    if (rest[0] == "health" && rest.size() == 1) {
      if (method != "GET") return wrong_method();
      return ok({{"status", "ok"}, {"sessions", session_count()}});
    }

    if (rest[0] == "fixtures") {
      if (method != "GET") return wrong_method();
      if (rest.size() == 1) return ok({{"fixtures", fixture_names()}});
      if (rest.size() == 2) {
        const auto names = fixture_names();
        if (std::find(names.begin(), names.end(), rest[1]) == names.end())
          fail(404, "UnknownFixture", "no fixture '" + rest[1] + "'");
        return ok(document_json(fixture(rest[1])));
      }
      return route_missing();
    }

    if (rest[0] != "sessions") return route_missing();

    if (rest.size() == 1) {
      if (method == "GET") {
        std::shared_lock lock(sessions_mutex_);
        json ids = json::array();
        for (const auto& [id, s] : sessions_) ids.push_back(id);
        return ok({{"sessions", ids}});
      }
      if (method != "POST") return wrong_method();
      const auto body = parse_body(body_text);
      json trace = json::array();
      std::optional<NetDocument> doc;
      if (body.contains("snapshot")) {
        const auto& snap = body["snapshot"];
        if (!snap.is_object() || snap.value("format", "") != kSnapshotFormat)
          fail(400, "BadRequest", std::string("snapshot must have format \"") + kSnapshotFormat + "\"");
        doc = parse_document(snap.at("document").dump(), {false, options_.bound}).document;
        if (snap.contains("initial_marking")) doc->marking = node_set(snap["initial_marking"], "initial_marking");
        trace = snap.value("trace", json::array());
      } else {
        doc = document_from(body, options_.bound);
        if (body.contains("marking")) doc->marking = node_set(body["marking"], "marking");
      }
      auto s = std::make_shared<Session>(std::move(*doc));
      check_marking(s->doc, s->doc.start_marking());
      s->initial = s->current = s->doc.start_marking();
      for (const auto& u : step_list(trace, "trace")) {
        const auto next = fire(s->doc, s->current, u);
        s->history.push_back({u, s->current});
        s->current = next;
      }
      s->id = new_id();
      {
        std::unique_lock lock(sessions_mutex_);
        sessions_[s->id] = s;
      }
      std::lock_guard lock(s->mutex);
      return ok(state(*s, options_), 201);
    }

    const auto session = find(rest[1]);
    const std::string action = rest.size() >= 3 ? rest[2] : "";
    if (rest.size() > 3) return route_missing();

    if (action.empty()) {
      if (method == "GET") {
        std::lock_guard lock(session->mutex);
        return ok(state(*session, options_));
      }
      if (method == "DELETE") {
        std::unique_lock lock(sessions_mutex_);
        sessions_.erase(session->id);
        return ok({{"deleted", session->id}});
      }
      return wrong_method();
    }

    if (action == "fire" || action == "undo" || action == "reset") {
      if (method != "POST") return wrong_method();
      const auto body = parse_body(body_text);
      const auto version = required_version(body);
      std::lock_guard lock(session->mutex);
      check_version(*session, version);
      if (action == "fire") {
        if (!body.contains("step")) fail(400, "BadRequest", "missing 'step'");
        const auto u = node_set(body["step"], "step");
        const auto next = fire(session->doc, session->current, u);
        session->history.push_back({u, session->current});
        session->current = next;
      } else if (action == "undo") {
        if (session->history.empty()) fail(409, "NothingToUndo", "the trace is empty");
        session->current = session->history.back().second;
        session->history.pop_back();
      } else {
        session->history.clear();
        session->current = session->initial;
      }
      ++session->version;
      return ok(state(*session, options_));
    }

    if (action == "preview") {
      if (method != "POST") return wrong_method();
      const auto body = parse_body(body_text);
      if (!body.contains("step")) fail(400, "BadRequest", "missing 'step'");
      const auto u = node_set(body["step"], "step");
      std::lock_guard lock(session->mutex);
      try {
        return ok({{"enabled", true}, {"marking", fire(session->doc, session->current, u)}, {"version", session->version}});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::StepNotEnabled) throw;
        return ok({{"enabled", false}, {"error", to_json(e)}, {"version", session->version}});
      }
    }

    if (method != "GET" && !(action == "snapshot" && method == "POST")) return wrong_method();
    std::lock_guard lock(session->mutex);
    const auto& s = *session;

    if (action == "trace") {
      const auto mu = run(s.doc, s.initial, s.recorded());
      json out = to_json(mu);
      out["version"] = s.version;
      return ok(out);
    }
    if (action == "scenario") {
      json out = {{"version", s.version}, {"trace", s.recorded()}};
      out["scenario"] = induced_scenario(s.doc, s.recorded());
      return ok(out);
    }
    if (action == "scenarios") {
      const bool maximal = truthy(query, "maximal");
      return ok({{"version", s.version}, {"maximal", maximal}, {"scenarios", scenario_list(s.doc, maximal, options_.bound)}});
    }
    if (action == "dot") {
      DotOptions d;
      d.marking = s.current;
      if (truthy(query, "scenario")) d.highlight = set_union(occurring(s.recorded()), set_union(s.initial, s.current));
      return ok({{"version", s.version}, {"dot", export_dot(s.doc, d)}});
    }
    if (action == "phases") {
      if (s.doc.kind() != NetKind::Bsa) fail(400, "BadRequest", "phases exist for bsa-nets only");
      return ok({{"version", s.version}, {"phases", phase_json(s.doc.bsa())}, {"current", phase_info(s)}});
    }
    if (action == "document") return ok(document_json(s.doc));
    if (action == "snapshot") {
      const auto snap = snapshot(s);
      json out = {{"snapshot", snap}};
      if (method == "POST" && !options_.snapshot_dir.empty()) {
        const auto path = std::filesystem::path(options_.snapshot_dir) / (s.id + ".json");
        std::ofstream file(path);
        if (!file) fail(500, "SnapshotFailed", "cannot write " + path.string());
        file << snap.dump(2) << "\n";
        out["path"] = path.string();
      }
      return ok(out);
    }
    return route_missing();
  } catch (const HttpError& e) {
    return {e.status, e.body.dump()};
  } catch (const Error& e) {
    return {http_status(e), json{{"error", to_json(e)}}.dump()};
  } catch (const json::exception& e) {
    return {400, json{{"error", {{"code", "BadRequest"}, {"message", e.what()}}}}.dump()};
  } catch (const std::exception& e) {
    return {500, json{{"error", {{"code", "Internal"}, {"message", e.what()}}}}.dump()};
  }
}

}  // namespace sonet::detail
