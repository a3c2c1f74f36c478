#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "l1embed/metric.hpp"
#include "l1embed/planar.hpp"

// Text formats used by the command-line tool.
//
// Instance file: first line `n` (or `labeled`, then `n`), followed by n rows
// of n entries, each "p", "p/q" or a decimal. In labeled files every row
// starts with its label. Blank lines and lines starting with '#' are skipped.
//
// Coordinates file: one `label x y` line per point.

namespace l1embed {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct Instance {
  DistanceTable table;
  std::vector<std::string> labels;
  bool labeled = false;
};

Instance read_instance(std::istream& in);
void write_instance(std::ostream& out, const MetricSpace& m, bool labeled = false);

struct LabeledPoint {
  std::string label;
  PlanePoint point;
};

std::vector<LabeledPoint> read_coordinates(std::istream& in);
void write_coordinates(std::ostream& out, const Embedding& e, const std::vector<std::string>& labels);

/// Result document: {"embeddable", "points": [{"label","x","y"}], "stats": {...}}.
std::string result_json(const EmbedResult& r, const MetricSpace& m, double elapsed_ms);

/// Deterministic SVG drawing of an embedding with exact coordinate captions.
std::string render_svg(const Embedding& e, const MetricSpace& m);

}  // namespace l1embed
