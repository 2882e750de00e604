#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sonet/bsa.hpp"

namespace sonet {

enum class NetKind { Acyclic, Csa, Bsa };

const char* to_string(NetKind kind);
std::optional<NetKind> net_kind_from_string(const std::string& name);

inline constexpr const char* kFormatTag = "sonet/1";
inline constexpr const char* kFileExtension = ".sonet.json";

/// One net of any kind plus an optional marking and opaque layout hints.
struct NetDocument {
  std::string name;
  std::variant<AcyclicNet, CsaNet, BsaNet> net;
  std::optional<Marking> marking;
  std::string layout;  // compact JSON object text, empty when absent

  NetKind kind() const { return static_cast<NetKind>(net.index()); }
  /// Throw InvalidArgument for the wrong kind.
  const AcyclicNet& acyclic() const;
  const CsaNet& csa() const;
  const BsaNet& bsa() const;
  /// Acyclic and bsa nets are widened to csa-nets (the bsa via its underlying net).
  CsaNet as_csa() const;

  /// `marking` when present, otherwise the net's initial marking.
  Marking start_marking() const;
  NodeSet all_places() const;
  NodeSet all_transitions() const;

  friend bool operator==(const NetDocument&, const NetDocument&) = default;
};

struct ParseOptions {
  /// Unknown keys become SchemaError instead of warnings.
  bool strict = false;
  Bound bound{};
};

struct ParseResult {
  NetDocument document;
  std::vector<std::string> warnings;
};

/// Throws SyntaxError (message carries line and column), UnknownKind,
/// DuplicateId, SchemaError, UnknownPlace (marking) or ValidationError.
ParseResult parse_document(const std::string& text, const ParseOptions& options = {});
NetDocument parse(const std::string& text);

/// Canonical text: fixed key order, sorted node lists and arcs, two-space
/// indentation, trailing newline.
std::string serialize(const NetDocument& doc);

struct DotOptions {
  std::optional<Marking> marking;    // defaults to the document's start marking
  std::optional<NodeSet> highlight;  // nodes of a scenario to emphasise
};

std::string export_dot(const NetDocument& doc, const DotOptions& options = {});

}  // namespace sonet
