#include "subpath/model_io.hpp"

#include <charconv>
#include <fstream>
#include <string_view>

namespace subpath {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view text, std::size_t line, std::size_t offset) {
  double value = 0.0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  if (!text.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ParseError("invalid number '" + std::string(text) + "'", offset, line);
  }
  return value;
}

// Parses "<keyword> <real>" and returns the real.
double keyword_value(std::string_view line, std::string_view keyword,
                     std::size_t line_no) {
  std::string_view rest = trim(line.substr(keyword.size()));
  return parse_real(rest, line_no, static_cast<std::size_t>(rest.data() - line.data()));
}

bool starts_with_word(std::string_view line, std::string_view word) {
  return line.size() > word.size() && line.substr(0, word.size()) == word &&
         (line[word.size()] == ' ' || line[word.size()] == '\t');
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, value + 0.0, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

Model read_model(std::istream& in, Alphabet& alphabet) {
  Model model;
  bool have_lambda = false;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!have_lambda) {
      if (!starts_with_word(line, "lambda")) {
        throw ParseError("expected 'lambda <real>'", 0, line_no);
      }
      model.params.lambda = keyword_value(line, "lambda", line_no);
      try {
        model.params.validate();
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 0, line_no);
      }
      have_lambda = true;
      continue;
    }
    if (model.support.items.empty() && starts_with_word(line, "bias")) {
      model.support.bias = keyword_value(line, "bias", line_no);
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw ParseError("expected '<alpha>\\t<tree>'", 0, line_no);
    }
    const double alpha = parse_real(trim(line.substr(0, tab)), line_no, 0);
    try {
      model.support.items.push_back({parse_tree(line.substr(tab + 1), alphabet), alpha});
    } catch (const ParseError& e) {
      throw ParseError(e.detail(), e.offset() + tab + 1, line_no);
    }
  }
  if (!have_lambda) throw ParseError("missing 'lambda' line", 0, line_no);
  if (model.support.items.empty()) throw ParseError("model has no support trees", 0, line_no);
  return model;
}

Model read_model_file(const std::string& path, Alphabet& alphabet) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_model(in, alphabet);
}

void write_model(std::ostream& out, const Model& model, const Alphabet& alphabet) {
  out << "lambda " << format_real(model.params.lambda) << '\n';
  out << "bias " << format_real(model.support.bias) << '\n';
  for (const auto& sv : model.support.items) {
    out << format_real(sv.alpha) << '\t' << serialize_tree(sv.tree, alphabet) << '\n';
  }
}

}  // namespace subpath
