#include "l1embed/io.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace l1embed {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(std::move(tok));
  return out;
}

/// Next line with content; false at end of input.
bool next_tokens(std::istream& in, std::size_t& lineno, std::vector<std::string>& tokens) {
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    tokens = split(line);
    if (tokens.empty() || tokens.front()[0] == '#') continue;
    return true;
  }
  return false;
}

Scalar parse_entry(const std::string& tok, std::size_t lineno) {
  try {
    return Scalar::parse(tok);
  } catch (const std::invalid_argument&) {
    throw ParseError(lineno, "malformed number '" + tok + "'");
  }
}

std::size_t parse_count(const std::string& tok, std::size_t lineno) {
  std::size_t pos = 0;
  long long n = -1;
  try {
    n = std::stoll(tok, &pos);
  } catch (const std::exception&) {
  }
  if (n < 0 || pos != tok.size()) throw ParseError(lineno, "expected a point count, got '" + tok + "'");
  return static_cast<std::size_t>(n);
}

std::string decimal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

Instance read_instance(std::istream& in) {
  Instance inst;
  std::size_t lineno = 0;
  std::vector<std::string> tok;
  if (!next_tokens(in, lineno, tok)) throw ParseError(lineno, "empty instance file");
  if (tok[0] == "labeled") {
    inst.labeled = true;
    tok.erase(tok.begin());
    if (tok.empty() && !next_tokens(in, lineno, tok)) throw ParseError(lineno, "missing point count");
  }
  if (tok.size() != 1) throw ParseError(lineno, "expected a single point count");
  const std::size_t n = parse_count(tok[0], lineno);

  inst.table.assign(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!next_tokens(in, lineno, tok)) throw ParseError(lineno, "expected " + std::to_string(n) + " rows");
    std::size_t first = 0;
    if (inst.labeled) {
      inst.labels.push_back(tok[0]);
      first = 1;
    }
    if (tok.size() - first != n)
      throw ParseError(lineno, "row " + std::to_string(i) + " has " + std::to_string(tok.size() - first) +
                                   " entries, expected " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) inst.table[i][j] = parse_entry(tok[first + j], lineno);
  }
  if (next_tokens(in, lineno, tok)) throw ParseError(lineno, "trailing content after the matrix");
  if (!inst.labeled) inst.labels = default_labels(n);

  std::vector<std::string> sorted = inst.labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParseError(lineno, "duplicate label '" + *std::adjacent_find(sorted.begin(), sorted.end()) + "'");
  return inst;
}

void write_instance(std::ostream& out, const MetricSpace& m, bool labeled) {
  const std::size_t n = m.size();
  if (labeled) out << "labeled\n";
  out << n << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    if (labeled) out << m.label(i) << ' ';
    for (std::size_t j = 0; j < n; ++j) out << (j ? " " : "") << m(i, j).str();
    out << '\n';
  }
}

std::vector<LabeledPoint> read_coordinates(std::istream& in) {
  std::vector<LabeledPoint> out;
  std::size_t lineno = 0;
  std::vector<std::string> tok;
  while (next_tokens(in, lineno, tok)) {
    if (tok.size() != 3) throw ParseError(lineno, "expected 'label x y'");
    out.push_back({tok[0], {parse_entry(tok[1], lineno), parse_entry(tok[2], lineno)}});
  }
  return out;
}

void write_coordinates(std::ostream& out, const Embedding& e, const std::vector<std::string>& labels) {
  for (std::size_t i = 0; i < e.size(); ++i) out << labels[i] << ' ' << e[i].x.str() << ' ' << e[i].y.str() << '\n';
}

std::string result_json(const EmbedResult& r, const MetricSpace& m, double elapsed_ms) {
  nlohmann::ordered_json doc;
  doc["embeddable"] = r.embeddable;
  doc["points"] = nlohmann::ordered_json::array();
  if (r.embeddable) {
    for (std::size_t i = 0; i < r.points.size(); ++i)
      doc["points"].push_back({{"label", m.label(i)}, {"x", r.points[i].x.str()}, {"y", r.points[i].y.str()}});
  }
  doc["stats"] = {{"n", m.size()}, {"scenes_tried", r.scenes_tried}, {"elapsed_ms", elapsed_ms}};
  return doc.dump(2) + "\n";
}

std::string render_svg(const Embedding& e, const MetricSpace& m) {
  constexpr double kSize = 800, kMargin = 60;
  double lo_x = 0, lo_y = 0, hi_x = 0, hi_y = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double x = e[i].x.to_double(), y = e[i].y.to_double();
    if (i == 0 || x < lo_x) lo_x = x;
    if (i == 0 || y < lo_y) lo_y = y;
    if (i == 0 || x > hi_x) hi_x = x;
    if (i == 0 || y > hi_y) hi_y = y;
  }
  double span = std::max(hi_x - lo_x, hi_y - lo_y);
  if (span <= 0) span = 1;
  const double scale = (kSize - 2 * kMargin) / span;
  auto sx = [&](double x) { return kMargin + (x - lo_x) * scale; };
  auto sy = [&](double y) { return kSize - kMargin - (y - lo_y) * scale; };  // y grows upwards

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n"
      << "  <rect x=\"0\" y=\"0\" width=\"" << kSize << "\" height=\"" << kSize << "\" fill=\"white\"/>\n"
      << "  <rect x=\"" << decimal(sx(lo_x)) << "\" y=\"" << decimal(sy(hi_y)) << "\" width=\""
      << decimal((hi_x - lo_x) * scale) << "\" height=\"" << decimal((hi_y - lo_y) * scale)
      << "\" fill=\"none\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
  for (std::size_t i = 0; i < e.size(); ++i) {
    const std::string label = xml_escape(m.label(i));
    const std::string caption = label + " (" + e[i].x.str() + ", " + e[i].y.str() + ")";
    const double cx = sx(e[i].x.to_double()), cy = sy(e[i].y.to_double());
    svg << "  <g>\n"
        << "    <title>" << caption << "</title>\n"
        << "    <circle cx=\"" << decimal(cx) << "\" cy=\"" << decimal(cy) << "\" r=\"4\" fill=\"#1f5fa8\"/>\n"
        << "    <text x=\"" << decimal(cx + 6) << "\" y=\"" << decimal(cy - 6)
        << "\" font-family=\"monospace\" font-size=\"11\">" << caption << "</text>\n"
        << "  </g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace l1embed
