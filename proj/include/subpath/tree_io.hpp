#pragma once

#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "subpath/tree.hpp"

namespace subpath {

/// Malformed bracket text. `offset` is the byte offset inside the offending
/// line; `line` is 1-based and 0 when parsing a standalone string.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset, std::size_t line = 0);

  const std::string& detail() const { return detail_; }
  std::size_t offset() const { return offset_; }
  std::size_t line() const { return line_; }

 private:
  std::string detail_;
  std::size_t offset_;
  std::size_t line_;
};

// Grammar:  tree := label [ '(' tree (',' tree)* ')' ]
// Labels are non-empty runs of bytes other than "()," and whitespace.
// Whitespace between tokens is ignored.
Tree parse_tree(std::string_view text, Alphabet& alphabet);

/// Canonical bracket text, children in stored order.
std::string serialize_tree(const Tree& tree, const Alphabet& alphabet);

/// One tree per line; blank lines and lines starting with '#' are skipped.
std::vector<Tree> read_corpus(std::istream& in, Alphabet& alphabet);
std::vector<Tree> read_corpus_file(const std::string& path, Alphabet& alphabet);

}  // namespace subpath
