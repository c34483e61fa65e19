#include "permsel/document.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "permsel/cellular.hpp"
#include "permsel/error.hpp"

namespace permsel {

namespace {

Error parse_error(std::string message, int line, int column) {
  Error e(ErrorKind::ParseError, std::move(message));
  e.at(line, column);
  return e;
}

bool is_delimiter(char c) {
  return c == '(' || c == ')' || c == '[' || c == ']' || c == ',' || c == ':';
}

/// One logical line with its comment stripped; tracks 1-based columns.
struct LineScanner {
  std::string text;
  int line = 0;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  int column() const { return static_cast<int>(pos) + 1; }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  void expect(char c) {
    if (peek() != c) {
      throw parse_error(std::string("expected '") + c + "'", line, column());
    }
    ++pos;
  }
  std::string word(const char* what) {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           !is_delimiter(text[pos])) {
      ++pos;
    }
    if (pos == start) {
      throw parse_error(std::string("expected ") + what, line, column());
    }
    return text.substr(start, pos - start);
  }
};

struct Statement {
  std::string keyword;
  std::string name;  // second head token, when present
  int name_column = 0;
  LineScanner payload;  // positioned after the ':'
};

std::vector<Statement> split_statements(const std::string& text) {
  std::vector<Statement> out;
  std::istringstream stream(text);
  std::string raw;
  int line_number = 0;
  while (std::getline(stream, raw)) {
    ++line_number;
    if (auto hash = raw.find('#'); hash != std::string::npos) {
      raw.erase(hash);
    }
    if (!raw.empty() && raw.back() == '\r') {
      raw.pop_back();
    }
    LineScanner scanner{raw, line_number};
    if (scanner.done()) {
      continue;
    }
    Statement statement;
    statement.keyword = scanner.word("a statement keyword");
    if (scanner.peek() != ':') {
      statement.name_column = scanner.column();
      statement.name = scanner.word("a name before ':'");
    }
    scanner.expect(':');
    statement.payload = scanner;
    out.push_back(std::move(statement));
  }
  return out;
}

GroundPtr parse_ground(Statement& statement) {
  std::vector<std::string> labels;
  std::unordered_set<std::string> seen;
  LineScanner& scanner = statement.payload;
  while (!scanner.done()) {
    int column = scanner.column();
    std::string label = scanner.word("an element label");
    if (!seen.insert(label).second) {
      throw Error(ErrorKind::DuplicateElement, "element '" + label + "' listed twice",
                  label)
          .at(scanner.line, column);
    }
    labels.push_back(std::move(label));
  }
  return GroundSet::make(std::move(labels));
}

int lookup(const GroundSet& ground, const std::string& label, int line, int column) {
  if (auto index = ground.index_of(label)) {
    return *index;
  }
  throw Error(ErrorKind::UnknownElement, "unknown element '" + label + "'", label)
      .at(line, column);
}

struct DocumentHead {
  GroundPtr ground;
  std::vector<Statement> rest;
};

DocumentHead parse_head(const std::string& text) {
  std::vector<Statement> statements = split_statements(text);
  if (statements.empty()) {
    throw parse_error("empty document; expected a ground line", 1, 1);
  }
  if (statements.front().keyword != "ground") {
    throw parse_error("first statement must be 'ground:'", statements.front().payload.line,
                      1);
  }
  DocumentHead head;
  head.ground = parse_ground(statements.front());
  head.rest.assign(std::make_move_iterator(statements.begin() + 1),
                   std::make_move_iterator(statements.end()));
  for (const auto& statement : head.rest) {
    if (statement.keyword == "ground") {
      throw parse_error("duplicate ground line", statement.payload.line, 1);
    }
  }
  return head;
}

[[noreturn]] void reject_statement(const Statement& statement, const char* document) {
  throw parse_error("unexpected '" + statement.keyword + "' in a " + document +
                        " document",
                    statement.payload.line, 1);
}

}  // namespace

SetValuedMap parse_map_document(const std::string& text) {
  DocumentHead head = parse_head(text);
  const GroundSet& ground = *head.ground;
  std::vector<std::vector<int>> rows(static_cast<size_t>(ground.size()));
  std::vector<int> defined_at(static_cast<size_t>(ground.size()), 0);

  for (auto& statement : head.rest) {
    if (statement.keyword != "map") {
      reject_statement(statement, "map");
    }
    LineScanner& scanner = statement.payload;
    if (statement.name.empty()) {
      throw parse_error("map statement needs an element name", scanner.line, 1);
    }
    int x = lookup(ground, statement.name, scanner.line, statement.name_column);
    if (defined_at[static_cast<size_t>(x)] != 0) {
      throw Error(ErrorKind::DuplicateEntry,
                  "second map line for '" + statement.name + "' (first on line " +
                      std::to_string(defined_at[static_cast<size_t>(x)]) + ")",
                  statement.name)
          .at(scanner.line, statement.name_column);
    }
    defined_at[static_cast<size_t>(x)] = scanner.line;
    auto& row = rows[static_cast<size_t>(x)];
    while (!scanner.done()) {
      int column = scanner.column();
      std::string label = scanner.word("a target label");
      row.push_back(lookup(ground, label, scanner.line, column));
    }
    if (std::find(row.begin(), row.end(), x) == row.end()) {
      throw Error(ErrorKind::MissingReflexive,
                  "image of '" + statement.name + "' does not contain it",
                  statement.name)
          .at(scanner.line, statement.name_column);
    }
  }
  for (int x = 0; x < ground.size(); ++x) {
    if (defined_at[static_cast<size_t>(x)] == 0) {
      throw Error(ErrorKind::MissingEntry, "no map line for '" + ground.label(x) + "'",
                  ground.label(x))
          .at(1, 1);
    }
  }
  return SetValuedMap::from_rows(head.ground, std::move(rows));
}

SelectorFamily parse_family_document(const std::string& text) {
  DocumentHead head = parse_head(text);
  const GroundSet& ground = *head.ground;
  SelectorFamily family;
  family.mode = SelectorFamily::Mode::Relaxed;
  bool mode_seen = false;

  for (auto& statement : head.rest) {
    LineScanner& scanner = statement.payload;
    if (statement.keyword == "mode") {
      if (mode_seen) {
        throw parse_error("duplicate mode line", scanner.line, 1);
      }
      mode_seen = true;
      scanner.skip_ws();
      int column = scanner.column();
      std::string value = scanner.word("'strict' or 'relaxed'");
      if (value == "strict") {
        family.mode = SelectorFamily::Mode::Strict;
      } else if (value == "relaxed") {
        family.mode = SelectorFamily::Mode::Relaxed;
      } else {
        throw parse_error("mode must be 'strict' or 'relaxed'", scanner.line, column);
      }
      if (!scanner.done()) {
        throw parse_error("trailing text after mode", scanner.line, scanner.column());
      }
      continue;
    }
    if (statement.keyword != "perm") {
      reject_statement(statement, "family");
    }
    std::vector<int> forward(static_cast<size_t>(ground.size()), -1);
    std::vector<bool> hit(static_cast<size_t>(ground.size()), false);
    while (!scanner.done()) {
      int column = scanner.column();
      std::string token = scanner.word("a mapping like a->b");
      auto arrow = token.find("->");
      if (arrow == std::string::npos || arrow == 0 || arrow + 2 >= token.size()) {
        throw parse_error("expected a mapping like a->b", scanner.line, column);
      }
      int from = lookup(ground, token.substr(0, arrow), scanner.line, column);
      int to = lookup(ground, token.substr(arrow + 2), scanner.line,
                      column + static_cast<int>(arrow) + 2);
      if (forward[static_cast<size_t>(from)] != -1) {
        throw Error(ErrorKind::DuplicateEntry,
                    "'" + ground.label(from) + "' mapped twice", ground.label(from))
            .at(scanner.line, column);
      }
      if (hit[static_cast<size_t>(to)]) {
        throw Error(ErrorKind::NotBijective, "'" + ground.label(to) + "' hit twice",
                    ground.label(to))
            .at(scanner.line, column + static_cast<int>(arrow) + 2);
      }
      forward[static_cast<size_t>(from)] = to;
      hit[static_cast<size_t>(to)] = true;
    }
    for (int x = 0; x < ground.size(); ++x) {
      if (forward[static_cast<size_t>(x)] == -1) {
        throw Error(ErrorKind::MissingEntry,
                    "permutation does not map '" + ground.label(x) + "'",
                    ground.label(x))
            .at(scanner.line, 1);
      }
    }
    family.perms.push_back(Permutation::from_forward(head.ground, std::move(forward)));
  }
  return family;
}

CoarseBase parse_ballean_document(const std::string& text) {
  DocumentHead head = parse_head(text);
  const GroundSet& ground = *head.ground;
  CoarseBase base;
  base.ground = head.ground;
  std::unordered_map<std::string, int> named_at;

  for (auto& statement : head.rest) {
    LineScanner& scanner = statement.payload;
    const bool is_entourage = statement.keyword == "entourage";
    const bool is_partition = statement.keyword == "partition";
    if (!is_entourage && !is_partition) {
      reject_statement(statement, "ballean");
    }
    if (statement.name.empty()) {
      throw parse_error(statement.keyword + " statement needs a name", scanner.line, 1);
    }
    if (auto [it, fresh] = named_at.emplace(statement.name, scanner.line); !fresh) {
      throw Error(ErrorKind::DuplicateEntry,
                  "second definition of '" + statement.name + "' (first on line " +
                      std::to_string(it->second) + ")",
                  statement.name)
          .at(scanner.line, statement.name_column);
    }

    Entourage entourage;
    if (is_entourage) {
      std::vector<std::pair<int, int>> pairs;
      while (!scanner.done()) {
        scanner.expect('(');
        int column = scanner.column();
        int a = lookup(ground, scanner.word("an element label"), scanner.line, column);
        scanner.expect(',');
        column = scanner.column();
        int b = lookup(ground, scanner.word("an element label"), scanner.line, column);
        scanner.expect(')');
        pairs.emplace_back(a, b);
      }
      entourage = Entourage::from_pairs(head.ground, pairs);
    } else {
      std::vector<std::vector<int>> blocks;
      std::vector<int> seen_at(static_cast<size_t>(ground.size()), 0);
      while (!scanner.done()) {
        scanner.expect('[');
        std::vector<int> block;
        while (scanner.peek() != ']') {
          int column = scanner.column();
          int x = lookup(ground, scanner.word("an element label"), scanner.line, column);
          if (seen_at[static_cast<size_t>(x)] != 0) {
            throw Error(ErrorKind::DuplicateEntry,
                        "'" + ground.label(x) + "' appears in two blocks",
                        ground.label(x))
                .at(scanner.line, column);
          }
          seen_at[static_cast<size_t>(x)] = scanner.line;
          block.push_back(x);
        }
        scanner.expect(']');
        if (block.empty()) {
          throw parse_error("empty partition block", scanner.line, scanner.column());
        }
        blocks.push_back(std::move(block));
      }
      for (int x = 0; x < ground.size(); ++x) {
        if (seen_at[static_cast<size_t>(x)] == 0) {
          throw Error(ErrorKind::MissingEntry,
                      "'" + ground.label(x) + "' missing from partition '" +
                          statement.name + "'",
                      ground.label(x))
              .at(scanner.line, 1);
        }
      }
      entourage =
          PartitionEntourage::from_blocks(head.ground, std::move(blocks)).relation();
    }
    base.members.push_back({statement.name, std::move(entourage)});
  }
  return base;
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) {
    throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return buffer.str();
}

}  // namespace

SetValuedMap read_map_file(const std::string& path) {
  return parse_map_document(slurp(path));
}

SelectorFamily read_family_file(const std::string& path) {
  return parse_family_document(slurp(path));
}

CoarseBase read_ballean_file(const std::string& path) {
  return parse_ballean_document(slurp(path));
}

std::string write_family_document(const SelectorFamily& family) {
  std::string out = "ground:";
  if (!family.perms.empty()) {
    for (const auto& label : family.perms.front().ground()->labels()) {
      out += ' ';
      out += label;
    }
  }
  out += '\n';
  out += "mode: ";
  out += mode_name(family.mode);
  out += '\n';
  std::vector<std::string> lines;
  lines.reserve(family.perms.size());
  for (const auto& perm : family.perms) {
    lines.push_back("perm: " + perm.one_line());
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

std::string format_pair(const GroundSet& ground, const std::pair<int, int>& pair) {
  return "(" + ground.label(pair.first) + "," + ground.label(pair.second) + ")";
}

}  // namespace permsel
