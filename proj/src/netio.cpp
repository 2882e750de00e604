#include "sonet/netio.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace sonet {

using json = nlohmann::ordered_json;

const char* to_string(NetKind kind) {
  switch (kind) {
    case NetKind::Acyclic: return "acyclic";
    case NetKind::Csa: return "csa";
    case NetKind::Bsa: return "bsa";
  }
  return "acyclic";
}

std::optional<NetKind> net_kind_from_string(const std::string& name) {
  if (name == "acyclic") return NetKind::Acyclic;
  if (name == "csa") return NetKind::Csa;
  if (name == "bsa") return NetKind::Bsa;
  return std::nullopt;
}

const AcyclicNet& NetDocument::acyclic() const {
  if (auto* n = std::get_if<AcyclicNet>(&net)) return *n;
  throw Error(ErrorCode::InvalidArgument, std::string("expected an acyclic net, got ") + to_string(kind()));
}

const CsaNet& NetDocument::csa() const {
  if (auto* n = std::get_if<CsaNet>(&net)) return *n;
  throw Error(ErrorCode::InvalidArgument, std::string("expected a csa-net, got ") + to_string(kind()));
}

const BsaNet& NetDocument::bsa() const {
  if (auto* n = std::get_if<BsaNet>(&net)) return *n;
  throw Error(ErrorCode::InvalidArgument, std::string("expected a bsa-net, got ") + to_string(kind()));
}

CsaNet NetDocument::as_csa() const {
  switch (kind()) {
    case NetKind::Acyclic: return csa_of(acyclic());
    case NetKind::Csa: return csa();
    case NetKind::Bsa: return bsa().underlying();
  }
  return csa();
}

Marking NetDocument::start_marking() const {
  if (marking) return *marking;
  return as_csa().initial_places();
}

NodeSet NetDocument::all_places() const { return as_csa().places_and_buffers(); }
NodeSet NetDocument::all_transitions() const { return as_csa().transitions(); }

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::SchemaError, where + ": " + what);
}

class Reader {
 public:
  explicit Reader(bool strict) : strict_(strict) {}

  void known_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
    for (const auto& [key, value] : obj.items()) {
      if (std::find_if(keys.begin(), keys.end(), [&](const char* k) { return key == k; }) != keys.end()) continue;
      const std::string msg = where + ": unknown key '" + key + "'";
      if (strict_) throw Error(ErrorCode::SchemaError, msg);
      warnings.push_back(msg);
    }
  }

  const json& object(const json& parent, const char* key, const std::string& where) {
    if (!parent.contains(key)) schema(where, std::string("missing key '") + key + "'");
    const json& v = parent.at(key);
    if (!v.is_object()) schema(where + "." + key, "expected an object");
    return v;
  }

  std::vector<NodeId> ids(const json& parent, const char* key, const std::string& where, bool required = true) {
    std::vector<NodeId> out;
    if (!parent.contains(key)) {
      if (required) schema(where, std::string("missing key '") + key + "'");
      return out;
    }
    const json& v = parent.at(key);
    const std::string path = where + "." + key;
    if (!v.is_array()) schema(path, "expected an array of identifiers");
    NodeSet seen;
    for (const auto& x : v) {
      if (!x.is_string() || x.get<std::string>().empty()) schema(path, "identifiers must be nonempty strings");
      auto id = x.get<std::string>();
      if (!seen.insert(id).second) throw Error(ErrorCode::DuplicateId, path + ": '" + id + "' is listed twice", {id});
      out.push_back(std::move(id));
    }
    return out;
  }

  std::vector<Pair> pairs(const json& parent, const char* key, const std::string& where, bool required = true) {
    std::vector<Pair> out;
    if (!parent.contains(key)) {
      if (required) schema(where, std::string("missing key '") + key + "'");
      return out;
    }
    const json& v = parent.at(key);
    const std::string path = where + "." + key;
    if (!v.is_array()) schema(path, "expected an array of pairs");
    for (const auto& x : v) {
      if (!x.is_array() || x.size() != 2 || !x[0].is_string() || !x[1].is_string())
        schema(path, "each entry must be a pair of identifiers");
      out.emplace_back(x[0].get<std::string>(), x[1].get<std::string>());
    }
    return out;
  }

  RawNet raw_net(const json& obj, const std::string& where) {
    known_keys(obj, where, {"places", "transitions", "arcs"});
    RawNet raw;
    raw.places = ids(obj, "places", where);
    raw.transitions = ids(obj, "transitions", where, false);
    for (auto& [from, to] : pairs(obj, "arcs", where, false)) raw.arcs.push_back({from, to});
    return raw;
  }

  RawCsaNet raw_csa(const json& obj, const std::string& where) {
    known_keys(obj, where, {"components", "buffers", "buffer_arcs"});
    RawCsaNet raw;
    if (!obj.contains("components") || !obj.at("components").is_array())
      schema(where, "expected an array 'components'");
    std::size_t i = 0;
    for (const auto& c : obj.at("components")) {
      const std::string path = where + ".components[" + std::to_string(i++) + "]";
      if (!c.is_object()) schema(path, "expected an object");
      raw.components.push_back(raw_net(c, path));
    }
    raw.buffers = ids(obj, "buffers", where, false);
    for (auto& [from, to] : pairs(obj, "buffer_arcs", where, false)) raw.buffer_arcs.push_back({from, to});
    return raw;
  }

  std::vector<std::string> warnings;

 private:
  bool strict_;
};

json ids_json(const NodeSet& s) { return json(std::vector<NodeId>(s.begin(), s.end())); }

json arcs_json(const std::set<Arc>& arcs) {
  json out = json::array();
  for (const auto& a : arcs) out.push_back(json::array({a.from, a.to}));
  return out;
}

json net_json(const AcyclicNet& net) {
  json out;
  out["places"] = ids_json(net.places());
  out["transitions"] = ids_json(net.transitions());
  out["arcs"] = arcs_json(net.flow());
  return out;
}

json csa_json(const CsaNet& net) {
  json out;
  out["components"] = json::array();
  for (const auto& c : net.components()) out["components"].push_back(net_json(c));
  out["buffers"] = ids_json(net.buffers());
  out["buffer_arcs"] = arcs_json(net.buffer_arcs());
  return out;
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

ParseResult parse_document(const std::string& text, const ParseOptions& options) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string what = e.what();
    if (auto pos = what.find(": ", what.find("column")); pos != std::string::npos) what = what.substr(pos + 2);
    throw Error(ErrorCode::SyntaxError,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what, {}, std::nullopt,
                std::to_string(line) + ":" + std::to_string(col));
  }
  if (!root.is_object()) schema("document", "expected a JSON object");

  Reader reader(options.strict);
  reader.known_keys(root, "document", {"format", "kind", "name", "net", "marking", "layout"});
  if (!root.contains("format") || !root["format"].is_string() || root["format"].get<std::string>() != kFormatTag)
    schema("document", std::string("'format' must be \"") + kFormatTag + "\"");
  if (!root.contains("kind") || !root["kind"].is_string()) schema("document", "missing string key 'kind'");
  const auto kind_name = root["kind"].get<std::string>();
  const auto kind = net_kind_from_string(kind_name);
  if (!kind) throw Error(ErrorCode::UnknownKind, "unknown net kind '" + kind_name + "'", {kind_name});

  std::string name;
  if (root.contains("name")) {
    if (!root["name"].is_string()) schema("document.name", "expected a string");
    name = root["name"].get<std::string>();
  }
  const json& body = reader.object(root, "net", "document");

  std::optional<NetDocument> doc;
  switch (*kind) {
    case NetKind::Acyclic:
      doc.emplace(NetDocument{name, AcyclicNet::validate(reader.raw_net(body, "net")), std::nullopt, {}});
      break;
    case NetKind::Csa:
      doc.emplace(NetDocument{name, CsaNet::validate(reader.raw_csa(body, "net"), options.bound), std::nullopt, {}});
      break;
    case NetKind::Bsa: {
      reader.known_keys(body, "net", {"lower", "upper", "beta"});
      RawBsaNet raw;
      raw.lower = reader.raw_csa(reader.object(body, "lower", "net"), "net.lower");
      raw.upper = reader.raw_csa(reader.object(body, "upper", "net"), "net.upper");
      raw.beta = reader.pairs(body, "beta", "net");
      doc.emplace(NetDocument{name, BsaNet::validate(raw, options.bound), std::nullopt, {}});
      break;
    }
  }

  if (root.contains("marking")) {
    const auto ids = reader.ids(root, "marking", "document");
    const NodeSet places = doc->all_places();
    for (const auto& p : ids)
      if (!places.count(p)) throw Error(ErrorCode::UnknownPlace, "marking names unknown place '" + p + "'", {p});
    doc->marking = Marking(ids.begin(), ids.end());
  }
  if (root.contains("layout")) {
    if (!root["layout"].is_object()) schema("document.layout", "expected an object");
    doc->layout = root["layout"].dump();
  }
  return ParseResult{std::move(*doc), std::move(reader.warnings)};
}

NetDocument parse(const std::string& text) { return parse_document(text).document; }

std::string serialize(const NetDocument& doc) {
  json out;
  out["format"] = kFormatTag;
  out["kind"] = to_string(doc.kind());
  if (!doc.name.empty()) out["name"] = doc.name;
  switch (doc.kind()) {
    case NetKind::Acyclic: out["net"] = net_json(doc.acyclic()); break;
    case NetKind::Csa: out["net"] = csa_json(doc.csa()); break;
    case NetKind::Bsa: {
      const auto& b = doc.bsa();
      json body;
      body["lower"] = csa_json(b.lower());
      body["upper"] = csa_json(b.upper());
      body["beta"] = json::array();
      for (const auto& [r, p] : b.beta()) body["beta"].push_back(json::array({r, p}));
      out["net"] = std::move(body);
      break;
    }
  }
  if (doc.marking) out["marking"] = ids_json(*doc.marking);
  if (!doc.layout.empty()) out["layout"] = json::parse(doc.layout);
  return out.dump(2) + "\n";
}

namespace {

std::string quote(const std::string& id) {
  std::string out = "\"";
  for (char c : id) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

class DotWriter {
 public:
  DotWriter(const Marking& marking, std::optional<NodeSet> highlight)
      : marking_(marking), highlight_(std::move(highlight)) {}

  void place(const NodeId& p, bool buffer, const std::string& indent) {
    std::string label = p + (marking_.count(p) ? "\\n•" : "");
    out_ << indent << quote(p) << " [shape=" << (buffer ? "doublecircle" : "circle") << ", label=\"" << label
         << "\"" << emphasis(p) << "];\n";
  }

  void transition(const NodeId& t, const std::string& indent) {
    out_ << indent << quote(t) << " [shape=box" << emphasis(t) << "];\n";
  }

  void component(const AcyclicNet& net, const std::string& id, const std::string& label) {
    out_ << "  subgraph " << quote("cluster_" + id) << " {\n    label=" << quote(label) << ";\n    style=dashed;\n";
    for (const auto& p : net.places()) place(p, false, "    ");
    for (const auto& t : net.transitions()) transition(t, "    ");
    out_ << "  }\n";
  }

  void arc(const Arc& a, const std::string& style = {}) {
    out_ << "  " << quote(a.from) << " -> " << quote(a.to);
    std::string attrs = style;
    if (highlight_ && highlight_->count(a.from) && highlight_->count(a.to))
      attrs += std::string(attrs.empty() ? "" : ", ") + "color=red, penwidth=2";
    if (!attrs.empty()) out_ << " [" << attrs << "]";
    out_ << ";\n";
  }

  void csa(const CsaNet& net, const std::string& prefix, const std::string& label) {
    for (std::size_t i = 0; i < net.components().size(); ++i)
      component(net.components()[i], prefix + std::to_string(i + 1), label + " " + std::to_string(i + 1));
    for (const auto& q : net.buffers()) place(q, true, "  ");
    for (const auto& c : net.components())
      for (const auto& a : c.flow()) arc(a);
    for (const auto& a : net.buffer_arcs()) arc(a);
  }

  std::ostringstream out_;

 private:
  std::string emphasis(const NodeId& x) const {
    return highlight_ && highlight_->count(x) ? ", color=red, penwidth=2" : "";
  }

  Marking marking_;
  std::optional<NodeSet> highlight_;
};

}  // namespace

std::string export_dot(const NetDocument& doc, const DotOptions& options) {
  DotWriter w(options.marking ? *options.marking : doc.start_marking(), options.highlight);
  w.out_ << "digraph " << quote(doc.name.empty() ? "sonet" : doc.name) << " {\n  rankdir=LR;\n";
  switch (doc.kind()) {
    case NetKind::Acyclic: {
      const auto& net = doc.acyclic();
      for (const auto& p : net.places()) w.place(p, false, "  ");
      for (const auto& t : net.transitions()) w.transition(t, "  ");
      for (const auto& a : net.flow()) w.arc(a);
      break;
    }
    case NetKind::Csa: w.csa(doc.csa(), "c", "component"); break;
    case NetKind::Bsa: {
      const auto& b = doc.bsa();
      w.csa(b.lower(), "l", "lower");
      w.csa(b.upper(), "u", "upper");
      for (const auto& [r, p] : b.beta()) w.arc({r, p}, "style=dotted, dir=none, constraint=false");
      break;
    }
  }
  w.out_ << "}\n";
  return w.out_.str();
}

}  // namespace sonet
