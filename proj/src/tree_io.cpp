#include "subpath/tree_io.hpp"

#include <fstream>

namespace subpath {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
         c == '\f';
}

bool is_label_char(char c) {
  return c != '(' && c != ')' && c != ',' && !is_space(c);
}

class Parser {
 public:
  Parser(std::string_view text, Alphabet& alphabet)
      : text_(text), alphabet_(alphabet) {}

  Tree run() {
    std::vector<NodeId> open;  // nodes whose child list is still open
    bool need_child = false;
    const NodeId root = parse_label(kNoNode);
    skip_space();
    if (peek() == '(') {
      ++pos_;
      open.push_back(root);
      need_child = true;
    }
    while (!open.empty()) {
      if (need_child) {
        const NodeId node = parse_label(open.back());
        skip_space();
        need_child = peek() == '(';
        if (need_child) {
          ++pos_;
          open.push_back(node);
        }
        continue;
      }
      skip_space();
      const char c = peek();
      if (c == ',') {
        ++pos_;
        need_child = true;
      } else if (c == ')') {
        ++pos_;
        open.pop_back();
      } else if (at_end()) {
        throw ParseError("unbalanced brackets: missing ')'", pos_);
      } else {
        throw ParseError("expected ',' or ')'", pos_);
      }
    }
    skip_space();
    if (!at_end()) throw ParseError("trailing characters after tree", pos_);
    return Tree::from_parents(labels_, parents_);
  }

 private:
  NodeId parse_label(NodeId parent) {
    skip_space();
    const std::size_t start = pos_;
    while (!at_end() && is_label_char(text_[pos_])) ++pos_;
    if (pos_ == start) {
      if (at_end()) throw ParseError("empty label at end of input", pos_);
      throw ParseError(std::string("empty label before '") + text_[pos_] + "'",
                       pos_);
    }
    const auto id = static_cast<NodeId>(labels_.size());
    labels_.push_back(alphabet_.intern(text_.substr(start, pos_ - start)));
    parents_.push_back(parent);
    return id;
  }

  void skip_space() {
    while (!at_end() && is_space(text_[pos_])) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  std::string_view text_;
  Alphabet& alphabet_;
  std::size_t pos_ = 0;
  std::vector<Label> labels_;
  std::vector<NodeId> parents_;
};

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t offset,
                       std::size_t line)
    : std::runtime_error(
          (line > 0 ? "line " + std::to_string(line) + ", " : std::string()) +
          "offset " + std::to_string(offset) + ": " + what),
      detail_(what),
      offset_(offset),
      line_(line) {}

Tree parse_tree(std::string_view text, Alphabet& alphabet) {
  return Parser(text, alphabet).run();
}

std::string serialize_tree(const Tree& tree, const Alphabet& alphabet) {
  std::string out;
  if (tree.empty()) return out;
  // Stack entries: (node, index of next child to emit).
  std::vector<std::pair<NodeId, std::size_t>> stack;
  out += alphabet.name(tree.label(tree.root()));
  stack.emplace_back(tree.root(), 0);
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const auto kids = tree.children(v);
    if (next < kids.size()) {
      out += next == 0 ? '(' : ',';
      const NodeId child = kids[next++];
      out += alphabet.name(tree.label(child));
      stack.emplace_back(child, 0);
    } else {
      if (!kids.empty()) out += ')';
      stack.pop_back();
    }
  }
  return out;
}

std::vector<Tree> read_corpus(std::istream& in, Alphabet& alphabet) {
  std::vector<Tree> trees;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = 0;
    while (first < line.size() && is_space(line[first])) ++first;
    if (first == line.size() || line[first] == '#') continue;
    try {
      trees.push_back(parse_tree(line, alphabet));
    } catch (const ParseError& e) {
      throw ParseError(e.detail(), e.offset(), line_no);
    }
  }
  return trees;
}

std::vector<Tree> read_corpus_file(const std::string& path,
                                   Alphabet& alphabet) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_corpus(in, alphabet);
}

}  // namespace subpath
