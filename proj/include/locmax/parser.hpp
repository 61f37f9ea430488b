#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "locmax/instance.hpp"
#include "locmax/reductions.hpp"

namespace locmax {

struct SourcePos {
  int line = 0;
  int column = 0;
};

// Result of parsing one document. Language documents carry only relations;
// instance documents add var/constraint lines; graph documents are
// left/right/edge lines and cannot mix with the other two.
struct ParsedDocument {
  ConstraintLanguage language;
  std::optional<Instance> instance;
  std::optional<BipartiteGraph> graph;

  std::map<std::string, SourcePos> relation_pos;
  std::map<std::string, SourcePos> name_pos;  // variables and graph vertices
  std::vector<SourcePos> constraint_pos;      // constraints or edges, in order
};

// Strict line parser. `#` starts a comment; tokens are whitespace-separated.
//   relation NAME ARITY TUPLE...   (0/1 strings of length ARITY)
//   var NAME...
//   constraint RELATION VAR...
//   left NAME... / right NAME... / edge LEFT RIGHT
// Declarations must appear in stage order (relations, then vars, then
// constraints; vertices before edges). Errors are ParseError with a 1-based
// line and column.
ParsedDocument parse(std::string_view text);

std::string print_language(const ConstraintLanguage& language);
std::string print_instance(const Instance& instance);
std::string print_graph(const BipartiteGraph& graph);

}  // namespace locmax
