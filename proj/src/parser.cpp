#include "locmax/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace locmax {

namespace {

struct Token {
  std::string text;
  int column = 0;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '#') {
      ++i;
    }
    tokens.push_back(Token{line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

[[noreturn]] void fail(int line, const Token& tok, const std::string& message) {
  throw ParseError(line, tok.column, message);
}

}  // namespace

ParsedDocument parse(std::string_view text) {
  ParsedDocument doc;

  enum class Kind { Unknown, Csp, Graph };
  Kind kind = Kind::Unknown;
  int stage = 0;  // csp: 0 relations, 1 vars, 2 constraints; graph: 0 vertices, 1 edges

  std::vector<std::string> variable_names;
  std::vector<Constraint> constraints;
  bool saw_instance_line = false;
  BipartiteGraph graph;
  std::set<std::string> vertex_names;

  auto variable_index = [&variable_names](const std::string& name) {
    auto it = std::find(variable_names.begin(), variable_names.end(), name);
    return it == variable_names.end() ? -1 : static_cast<int>(it - variable_names.begin());
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string line(text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                    : eol - pos));
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    std::vector<Token> tokens = tokenize(line);
    if (tokens.empty()) continue;
    const Token& directive = tokens[0];

    Kind line_kind = Kind::Unknown;
    if (directive.text == "relation" || directive.text == "var" || directive.text == "constraint") {
      line_kind = Kind::Csp;
    } else if (directive.text == "left" || directive.text == "right" || directive.text == "edge") {
      line_kind = Kind::Graph;
    } else {
      fail(line_no, directive, "unknown directive '" + directive.text + "'");
    }
    if (kind == Kind::Unknown) {
      kind = line_kind;
    } else if (kind != line_kind) {
      fail(line_no, directive, "graph and language/instance declarations cannot mix");
    }

    if (directive.text == "relation") {
      if (stage > 0) fail(line_no, directive, "relation lines must precede var and constraint lines");
      if (tokens.size() < 4) {
        fail(line_no, directive, "expected: relation NAME ARITY TUPLE...");
      }
      const Token& name = tokens[1];
      if (!is_identifier(name.text)) fail(line_no, name, "'" + name.text + "' is not an identifier");
      if (doc.language.find(name.text) != nullptr) {
        fail(line_no, name, "relation '" + name.text + "' already declared");
      }
      int arity = 0;
      for (char c : tokens[2].text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
          fail(line_no, tokens[2], "arity must be a positive integer");
        }
        arity = arity * 10 + (c - '0');
        if (arity > 1000) break;
      }
      if (arity < 1 || arity > Relation::kMaxArity) {
        fail(line_no, tokens[2],
             "arity must lie in 1.." + std::to_string(Relation::kMaxArity));
      }
      std::vector<BitTuple> tuples;
      for (std::size_t t = 3; t < tokens.size(); ++t) {
        const Token& tok = tokens[t];
        if (static_cast<int>(tok.text.size()) != arity ||
            tok.text.find_first_not_of("01") != std::string::npos) {
          fail(line_no, tok, "tuples are 0/1 strings of length " + std::to_string(arity));
        }
        BitTuple tuple = BitTuple::parse(tok.text);
        if (std::find(tuples.begin(), tuples.end(), tuple) != tuples.end()) {
          fail(line_no, tok, "duplicate tuple " + tok.text);
        }
        tuples.push_back(tuple);
      }
      try {
        doc.language.add(name.text, Relation(arity, tuples));
      } catch (const Error& e) {
        fail(line_no, name, e.what());
      }
      doc.relation_pos[name.text] = SourcePos{line_no, name.column};
    } else if (directive.text == "var") {
      if (stage > 1) fail(line_no, directive, "var lines must precede constraint lines");
      stage = 1;
      saw_instance_line = true;
      if (tokens.size() < 2) fail(line_no, directive, "expected: var NAME...");
      for (std::size_t t = 1; t < tokens.size(); ++t) {
        const Token& tok = tokens[t];
        if (!is_identifier(tok.text)) fail(line_no, tok, "'" + tok.text + "' is not an identifier");
        if (variable_index(tok.text) >= 0) {
          fail(line_no, tok, "variable '" + tok.text + "' already declared");
        }
        variable_names.push_back(tok.text);
        doc.name_pos[tok.text] = SourcePos{line_no, tok.column};
      }
    } else if (directive.text == "constraint") {
      stage = 2;
      saw_instance_line = true;
      if (tokens.size() < 2) fail(line_no, directive, "expected: constraint RELATION VAR...");
      const Token& rel_tok = tokens[1];
      const Relation* rel = doc.language.find(rel_tok.text);
      if (rel == nullptr) fail(line_no, rel_tok, "unknown relation '" + rel_tok.text + "'");
      if (tokens.size() - 2 != static_cast<std::size_t>(rel->arity())) {
        fail(line_no, rel_tok, "relation '" + rel_tok.text + "' has arity " +
                                   std::to_string(rel->arity()) + ", got " +
                                   std::to_string(tokens.size() - 2) + " variables");
      }
      Constraint c;
      c.relation = rel_tok.text;
      for (std::size_t t = 2; t < tokens.size(); ++t) {
        int id = variable_index(tokens[t].text);
        if (id < 0) fail(line_no, tokens[t], "unknown variable '" + tokens[t].text + "'");
        c.scope.push_back(id);
      }
      constraints.push_back(std::move(c));
      doc.constraint_pos.push_back(SourcePos{line_no, directive.column});
    } else if (directive.text == "left" || directive.text == "right") {
      if (stage > 0) fail(line_no, directive, "vertex lines must precede edge lines");
      if (tokens.size() < 2) fail(line_no, directive, "expected: " + directive.text + " NAME...");
      for (std::size_t t = 1; t < tokens.size(); ++t) {
        const Token& tok = tokens[t];
        if (!is_identifier(tok.text)) fail(line_no, tok, "'" + tok.text + "' is not an identifier");
        if (!vertex_names.insert(tok.text).second) {
          fail(line_no, tok, "vertex '" + tok.text + "' already declared");
        }
        (directive.text == "left" ? graph.left : graph.right).push_back(tok.text);
        doc.name_pos[tok.text] = SourcePos{line_no, tok.column};
      }
    } else {  // edge
      stage = 1;
      if (tokens.size() != 3) fail(line_no, directive, "expected: edge LEFT RIGHT");
      const auto& l = tokens[1];
      const auto& r = tokens[2];
      if (std::find(graph.left.begin(), graph.left.end(), l.text) == graph.left.end()) {
        fail(line_no, l, "'" + l.text + "' is not a left vertex");
      }
      if (std::find(graph.right.begin(), graph.right.end(), r.text) == graph.right.end()) {
        fail(line_no, r, "'" + r.text + "' is not a right vertex");
      }
      graph.edges.emplace_back(l.text, r.text);
      doc.constraint_pos.push_back(SourcePos{line_no, directive.column});
    }
  }

  if (kind == Kind::Graph) {
    doc.graph = std::move(graph);
  } else if (saw_instance_line) {
    doc.instance = Instance(doc.language, std::move(variable_names), std::move(constraints));
  }
  return doc;
}

std::string print_language(const ConstraintLanguage& language) {
  std::string out;
  for (const auto& [name, rel] : language) {
    out += "relation " + name + " " + std::to_string(rel.arity());
    for (TupleWord w : rel.words()) out += " " + BitTuple(rel.arity(), w).to_string();
    out += "\n";
  }
  return out;
}

std::string print_instance(const Instance& instance) {
  std::string out = print_language(instance.language());
  for (const Variable& v : instance.variables()) out += "var " + v.name + "\n";
  for (const Constraint& c : instance.constraints()) {
    out += "constraint " + c.relation;
    for (int v : c.scope) out += " " + instance.variables()[static_cast<std::size_t>(v)].name;
    out += "\n";
  }
  return out;
}

std::string print_graph(const BipartiteGraph& graph) {
  std::string out;
  for (const std::string& u : graph.left) out += "left " + u + "\n";
  for (const std::string& v : graph.right) out += "right " + v + "\n";
  for (const auto& [u, v] : graph.edges) out += "edge " + u + " " + v + "\n";
  return out;
}

}  // namespace locmax
