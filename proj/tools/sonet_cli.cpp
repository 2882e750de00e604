#include <CLI11.hpp>
#include <csignal>
#include <fstream>
#include <httplib.h>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <sstream>

#include "sonet/sonet.h"

namespace {

using nlohmann::json;

constexpr int kUsage = SONET_USAGE;

struct Common {
  std::string file;
  std::string format = "table";
  std::size_t bound = 0;
  std::size_t depth = 0;
  bool strict = false;
};

struct NetHandle {
  sonet_net* net = nullptr;
  ~NetHandle() { sonet_net_free(net); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  sonet_free_string(s);
  return out;
}

json last_error() { return json::parse(sonet_last_error()); }

int report_error(const Common& c, int status) {
  const auto e = last_error();
  if (c.format == "json") {
    std::cout << json{{"status", status}, {"error", e}}.dump(2) << "\n";
  } else {
    std::cerr << "error: " << e.value("message", std::string("unknown error")) << "\n";
    if (e.contains("violations"))
      for (const auto& v : e["violations"])
        std::cerr << "  " << v.value("kind", std::string()) << ": " << v.value("message", std::string()) << "\n";
  }
  return status;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

json id_list(const std::string& text) {
  json out = json::array();
  for (const auto& id : split(text, ','))
    if (!id.empty()) out.push_back(id);
  return out;
}

/// "a,e;b" -> [["a","e"],["b"]]; the empty string is the empty sequence.
json sequence(const std::string& text) {
  json out = json::array();
  if (text.empty()) return out;
  for (const auto& part : split(text, ';')) out.push_back(id_list(part));
  return out;
}

int load(const Common& c, NetHandle& h) {
  std::ifstream in(c.file);
  if (!in) {
    std::cerr << "error: cannot read " << c.file << "\n";
    return kUsage;
  }
  std::stringstream text;
  text << in.rdbuf();
  const int status = sonet_net_parse(text.str().c_str(), c.strict ? 1 : 0, &h.net);
  if (status == SONET_OK) {
    char* warnings = nullptr;
    sonet_net_warnings(h.net, &warnings);
    for (const auto& w : json::parse(take(warnings))) std::cerr << "warning: " << w.get<std::string>() << "\n";
  }
  return status;
}

int execute(const Common& c, const std::string& command, json args, const std::string& output_file = {}) {
  NetHandle h;
  if (int status = load(c, h); status != SONET_OK) return report_error(c, status == SONET_INVALID_NET ? kUsage : status);
  if (c.bound) args["bound"] = c.bound;
  if (c.depth) args["depth"] = c.depth;
  char* out = nullptr;
  const int status = sonet_net_command(h.net, command.c_str(), args.dump().c_str(), &out);
  if (!out) return report_error(c, status);
  const auto reply = json::parse(take(out));
  std::ostringstream text;
  if (c.format == "json") {
    text << reply["result"].dump(2) << "\n";
  } else if (command == "export-dot" || command == "serialize") {
    text << reply["summary"][0].get<std::string>();
  } else {
    for (const auto& line : reply["summary"]) text << line.get<std::string>() << "\n";
  }
  if (output_file.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream(output_file) << text.str();
  }
  return status;
}

void add_common(CLI::App* sub, Common& c, bool needs_file = true) {
  if (needs_file) sub->add_option("file", c.file, "net document (.sonet.json)")->required()->check(CLI::ExistingFile);
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"table", "json"}));
  sub->add_option("--bound", c.bound, "maximum number of sequences or states to enumerate")->check(CLI::PositiveNumber);
  sub->add_option("--depth", c.depth, "maximum sequence length")->check(CLI::PositiveNumber);
  sub->add_flag("--strict", c.strict, "reject unknown keys in the document");
}

std::unique_ptr<httplib::Server> server;

int serve(const std::string& host, int port, const std::string& options) {
  sonet_service* svc = sonet_service_new(options.c_str());
  if (!svc) {
    std::cerr << "error: " << last_error().value("message", std::string()) << "\n";
    return kUsage;
  }
  server = std::make_unique<httplib::Server>();
  auto handler = [svc](const httplib::Request& req, httplib::Response& res) {
    std::string target = req.path;
    if (!req.params.empty()) {
      target += "?";
      bool first = true;
      for (const auto& [k, v] : req.params) {
        target += (first ? "" : "&") + k + "=" + v;
        first = false;
      }
    }
    char* out = nullptr;
    res.status = sonet_service_handle(svc, req.method.c_str(), target.c_str(), req.body.c_str(), &out);
    res.set_content(take(out), "application/json");
    res.set_header("Access-Control-Allow-Origin", "*");
  };
  const char* pattern = R"(/api/v1/.*)";
  server->Get(pattern, handler);
  server->Post(pattern, handler);
  server->Delete(pattern, handler);
  server->Options(pattern, [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
  server->Get("/", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("sonet session service; endpoints under /api/v1/\n", "text/plain");
  });
  std::signal(SIGINT, [](int) { server->stop(); });
  std::signal(SIGTERM, [](int) { server->stop(); });
  std::cerr << "listening on http://" << host << ":" << port << "/api/v1/\n";
  const bool ok = server->listen(host, port);
  sonet_service_free(svc);
  if (!ok) {
    std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
    return kUsage;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sonet: structured acyclic nets toolkit"};
  app.set_version_flag("--version", sonet_version());
  app.require_subcommand(1);

  Common c;
  json args = json::object();
  std::string marking, step, steps, mixed, place, transition, highlight, kind, output, host = "127.0.0.1";
  std::size_t component = 0, step_cap = 200;
  bool maximal = false, direct = false, speculative = false, list = false;
  int port = 8080;
  std::string fixture_name, snapshot_dir;
  std::string command;

  auto simple = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, c);
    sub->callback([&, name] { command = name; });
    return sub;
  };
  auto with_marking = [&](CLI::App* sub) {
    sub->add_option("--marking", marking, "marking as p1,p2 (default: the document's)");
    return sub;
  };

  simple("validate", "check a net document");
  simple("classify", "most specific net class");
  with_marking(simple("enabled", "steps enabled at a marking"));
  with_marking(simple("fire", "execute one step"))->add_option("--step", step, "step as a,b")->required();
  with_marking(simple("run", "execute a step sequence"))->add_option("--steps", steps, "steps as a,b;c")->required();
  simple("reach", "reachable markings");
  simple("finreach", "final reachable markings");
  simple("maxsseq", "maximal step sequences");
  simple("behaviours", "any behaviour set")
      ->add_option("--kind", kind, "sseq, mixsseq, maxsseq, maxmixsseq, reach, finreach or fseq")
      ->required();
  simple("wellformed", "decide well-formedness");
  simple("wf-stepseq", "check one step sequence")->add_option("--steps", steps, "steps as a,b;c")->required();
  simple("causes", "causes of a transition")->add_option("-t,--transition", transition)->required();
  simple("scenarios", "scenarios of a net")->add_flag("--maximal", maximal, "maximal scenarios only");
  simple("scenario-of", "scenario induced by a step sequence")->add_option("--steps", steps)->required();
  simple("coverage", "nodes covered by scenarios");
  simple("syncycles", "syn-cycles")->add_flag("--direct", direct, "strongly connected parts of the whole net");
  auto* project = simple("project", "projection onto one component");
  project->add_option("--component", component, "component number, from 1")->required()->check(CLI::PositiveNumber);
  auto* project_input = project->add_option_group("input");
  project_input->add_option("--steps", steps, "steps as a,b;c");
  project_input->add_option("--mixed", mixed, "marking;step;marking;... as p1,p5;a;p2,p5");
  project_input->require_option(1);
  with_marking(simple("decompose", "split a step into syn-cycles"))->add_option("--step", step)->required();
  simple("phases", "phase table of a bsa-net")->add_option("--place", place, "one upper place");
  auto* bsa_check = with_marking(simple("bsa-check", "bso class, well-formedness and phase-consistency"));
  bsa_check->add_flag("--speculative", speculative, "skip the reachability requirement");
  auto* dot = with_marking(simple("export-dot", "Graphviz rendering"));
  dot->add_option("--highlight", highlight, "nodes to emphasise as a,b");
  dot->add_option("-o,--output", output, "write to a file");
  simple("serialize", "canonical form of a document")->add_option("-o,--output", output, "write to a file");

  auto* fixture = app.add_subcommand("fixture", "print a built-in example net");
  fixture->add_option("name", fixture_name);
  fixture->add_flag("--list", list, "list the names");
  fixture->add_option("-o,--output", output, "write to a file");
  fixture->callback([&] { command = "fixture"; });

  auto* srv = app.add_subcommand("serve", "run the HTTP session service");
  srv->add_option("--port", port)->check(CLI::Range(1, 65535));
  srv->add_option("--host", host);
  srv->add_option("--bound", c.bound)->check(CLI::PositiveNumber);
  srv->add_option("--step-cap", step_cap)->check(CLI::PositiveNumber);
  srv->add_option("--snapshot-dir", snapshot_dir)->check(CLI::ExistingDirectory);
  srv->callback([&] { command = "serve"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  if (command == "serve") {
    json options = {{"step_cap", step_cap}};
    if (c.bound) options["bound"] = c.bound;
    if (!snapshot_dir.empty()) options["snapshot_dir"] = snapshot_dir;
    return serve(host, port, options.dump());
  }

  if (command == "fixture") {
    char* names = nullptr;
    sonet_fixture_names(&names);
    if (list || fixture_name.empty()) {
      for (const auto& n : json::parse(take(names))) std::cout << n.get<std::string>() << "\n";
      return 0;
    }
    sonet_free_string(names);
    NetHandle h;
    if (int status = sonet_net_fixture(fixture_name.c_str(), &h.net); status != SONET_OK) return report_error(c, status);
    char* out = nullptr;
    sonet_net_command(h.net, "serialize", nullptr, &out);
    const auto text = json::parse(take(out))["result"]["text"].get<std::string>();
    if (output.empty()) {
      std::cout << text;
    } else {
      std::ofstream(output) << text;
    }
    return 0;
  }

  if (command == "validate") {
    NetHandle h;
    const int status = load(c, h);
    if (status == SONET_INVALID_NET) return report_error(c, SONET_PROPERTY_FAILS);
    if (status != SONET_OK) return report_error(c, status);
    return execute(c, command, args);
  }

  if (!marking.empty() || command == "bsa-check") {
    if (!marking.empty()) args["marking"] = id_list(marking);
  }
  if (!step.empty()) args["step"] = id_list(step);
  if (command == "run" || command == "wf-stepseq" || command == "scenario-of" || (command == "project" && mixed.empty()))
    args["steps"] = sequence(steps);
  if (!mixed.empty()) args["mixed"] = sequence(mixed);
  if (!transition.empty()) args["transition"] = transition;
  if (!kind.empty()) args["kind"] = kind;
  if (!place.empty()) args["place"] = place;
  if (!highlight.empty()) args["highlight"] = id_list(highlight);
  if (maximal) args["maximal"] = true;
  if (direct) args["direct"] = true;
  if (speculative) args["speculative"] = true;
  if (command == "project") args["component"] = component - 1;
  return execute(c, command, args, output);
}
