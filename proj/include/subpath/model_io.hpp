#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "subpath/predict.hpp"
#include "subpath/tree_io.hpp"

namespace subpath {

struct Model {
  KernelParams params;
  SupportSet support;
};

// Model text format:
//   lambda <real>
//   bias <real>                  (optional, defaults to 0)
//   <alpha> TAB <tree>           (one line per support tree)
// Blank lines and '#' comments are ignored. Errors throw ParseError with the
// 1-based line number.
Model read_model(std::istream& in, Alphabet& alphabet);
Model read_model_file(const std::string& path, Alphabet& alphabet);
void write_model(std::ostream& out, const Model& model, const Alphabet& alphabet);

/// Shortest text that round-trips to the same double ("%.17g" style),
/// independent of the C locale.
std::string format_real(double value);

}  // namespace subpath
