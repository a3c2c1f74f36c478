// l1embed: decide isometric embeddability of a finite metric into the l1 plane.
//
// Exit status: 0 yes / isometric, 1 no / not isometric, 2 error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "l1embed/io.hpp"
#include "l1embed/oracle.hpp"
#include "l1embed/planar.hpp"

namespace fs = std::filesystem;
using namespace l1embed;

namespace {

constexpr int kYes = 0, kNo = 1, kError = 2;

struct Failure {
  std::string message;
};

std::string with_path(const std::string& path, const std::string& what) { return path + ": " + what; }

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{with_path(path, "cannot open")};
  try {
    return read_instance(in);
  } catch (const ParseError& e) {
    throw Failure{with_path(path, e.what())};
  }
}

/// Shape, diagonal, symmetry and positivity; the cubic triangle scan is left
/// to callers that need it.
MetricSpace basic_metric(const std::string& path, const Instance& inst) {
  try {
    check_basic_axioms(inst.table);
  } catch (const MetricError& e) {
    throw Failure{with_path(path, e.what())};
  }
  return MetricSpace::from_trusted(inst.table, inst.labels);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{with_path(path, "cannot write")};
  out << text;
}

struct EmbedOutcome {
  int status;
  std::string json;
  std::string svg;
};

EmbedOutcome run_embed(const std::string& path, bool want_svg) {
  const Instance inst = load_instance(path);
  const MetricSpace m = basic_metric(path, inst);
  const auto t0 = std::chrono::steady_clock::now();
  EmbedResult r;
  try {
    r = embed(m);
  } catch (const std::exception&) {
    // Triangle violations can trip internal consistency checks.
    if (auto v = find_triangle_violation(m)) throw Failure{with_path(path, v->what())};
    throw;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (!r.embeddable) {
    // An isometric image is a metric by construction, so the triangle scan is
    // only needed to tell a plain "no" from invalid input.
    if (auto v = find_triangle_violation(m)) throw Failure{with_path(path, v->what())};
  }
  EmbedOutcome out{r.embeddable ? kYes : kNo, result_json(r, m, ms), {}};
  if (want_svg && r.embeddable) out.svg = render_svg(r.points, m);
  return out;
}

int cmd_embed(const std::string& path, const std::string& json_path, const std::string& svg_path) {
  EmbedOutcome out = run_embed(path, !svg_path.empty());
  if (json_path.empty()) {
    std::cout << out.json;
  } else {
    write_file(json_path, out.json);
    std::cout << (out.status == kYes ? "embeddable" : "not embeddable") << '\n';
  }
  if (!svg_path.empty()) {
    if (out.status == kYes) {
      write_file(svg_path, out.svg);
    } else {
      std::cerr << "note: no drawing for a non-embeddable instance\n";
    }
  }
  return out.status;
}

int cmd_batch(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto ext = entry.path().extension();
    if (entry.is_regular_file() && ext != ".json" && ext != ".svg" && ext != ".coords") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  int status = kYes;
  for (const auto& f : files) {
    try {
      EmbedOutcome out = run_embed(f.string(), false);
      write_file(f.string() + ".json", out.json);
      std::cout << f.filename().string() << ": " << (out.status == kYes ? "yes" : "no") << '\n';
    } catch (const Failure& e) {
      std::cout << f.filename().string() << ": error\n";
      std::cerr << "error: " << e.message << '\n';
      status = kError;
    } catch (const std::exception& e) {
      std::cout << f.filename().string() << ": error\n";
      std::cerr << "error: " << f.string() << ": " << e.what() << '\n';
      status = kError;
    }
  }
  return status;
}

int cmd_verify(const std::string& instance_path, const std::string& coords_path) {
  const Instance inst = load_instance(instance_path);
  const MetricSpace m = basic_metric(instance_path, inst);
  std::ifstream in(coords_path);
  if (!in) throw Failure{with_path(coords_path, "cannot open")};
  std::vector<LabeledPoint> pts;
  try {
    pts = read_coordinates(in);
  } catch (const ParseError& e) {
    throw Failure{with_path(coords_path, e.what())};
  }

  std::map<std::string, PlanePoint> by_label;
  for (auto& p : pts)
    if (!by_label.emplace(p.label, p.point).second) throw Failure{"duplicate label '" + p.label + "' in coordinates"};
  if (by_label.size() != m.size()) throw Failure{"label mismatch: instance and coordinates differ in size"};
  Embedding e;
  for (const auto& label : m.labels()) {
    auto it = by_label.find(label);
    if (it == by_label.end()) throw Failure{"label mismatch: no coordinates for '" + label + "'"};
    e.push_back(it->second);
  }

  const VerifyResult v = verify_isometric(e, m);
  if (v.ok) {
    std::cout << "isometric\n";
    return kYes;
  }
  std::cout << "not isometric: d(" << m.label(v.i) << "," << m.label(v.j) << ") = " << v.expected.str()
            << " but the points are " << v.actual.str() << " apart\n";
  return kNo;
}

int cmd_oracle(const std::string& path) {
  const Instance inst = load_instance(path);
  if (inst.table.size() > kOracleMaxPoints)
    throw Failure{"TooLarge: the oracle handles at most " + std::to_string(kOracleMaxPoints) + " points, got " +
                  std::to_string(inst.table.size())};
  MetricSpace m;
  try {
    m = validate_metric(inst.table, inst.labels);
  } catch (const MetricError& e) {
    throw Failure{with_path(path, e.what())};
  }
  const bool yes = oracle_embed(m).embeddable;
  std::cout << (yes ? "yes" : "no") << '\n';
  return yes ? kYes : kNo;
}

int cmd_gen(std::size_t n, std::uint64_t seed, std::int64_t bound, const std::vector<std::string>& perturb,
            const std::string& out_path, std::string coords_path) {
  if (n == 0) throw Failure{"n must be at least 1"};
  if (bound <= 0) throw Failure{"--bound must be positive"};
  PlantedInstance inst;
  try {
    inst = random_planar_instance(n, seed, bound);
  } catch (const std::invalid_argument& e) {
    throw Failure{e.what()};
  }
  MetricSpace m = inst.metric;
  if (!perturb.empty()) {
    std::size_t i = 0, j = 0;
    Scalar eps;
    try {
      i = std::stoul(perturb[0]);
      j = std::stoul(perturb[1]);
      eps = Scalar::parse(perturb[2]);
    } catch (const std::exception&) {
      throw Failure{"--perturb expects I J EPS"};
    }
    try {
      m = perturb_instance(m, i, j, eps);
    } catch (const std::invalid_argument& e) {
      throw Failure{std::string("NotAMetricAfterPerturbation: ") + e.what()};
    }
  }

  std::ostringstream text;
  write_instance(text, m);
  if (out_path.empty()) {
    std::cout << text.str();
  } else {
    write_file(out_path, text.str());
    if (coords_path.empty() && perturb.empty()) coords_path = out_path + ".coords";
  }
  if (!coords_path.empty()) {
    if (!perturb.empty()) throw Failure{"planted coordinates do not describe a perturbed instance"};
    std::ostringstream coords;
    write_coordinates(coords, inst.points, m.labels());
    write_file(coords_path, coords.str());
  }
  return kYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isometric embedding of finite metrics into the l1 plane"};
  app.require_subcommand(1);

  std::string instance, json_path, svg_path, batch_dir, coords;
  auto* embed_cmd = app.add_subcommand("embed", "decide embeddability and print exact coordinates");
  auto* embed_file = embed_cmd->add_option("instance", instance, "instance file");
  embed_cmd->add_option("--json", json_path, "write the result document here instead of stdout");
  embed_cmd->add_option("--svg", svg_path, "write a drawing of the embedding");
  auto* batch_opt = embed_cmd->add_option("--batch", batch_dir, "embed every instance file in a directory")
                        ->check(CLI::ExistingDirectory);
  embed_file->excludes(batch_opt);

  std::string verify_instance;
  auto* verify_cmd = app.add_subcommand("verify", "check coordinates against an instance");
  verify_cmd->add_option("instance", verify_instance, "instance file")->required();
  verify_cmd->add_option("coords", coords, "coordinates file (label x y per line)")->required();

  std::string oracle_instance;
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive decision for at most six points");
  oracle_cmd->add_option("instance", oracle_instance, "instance file")->required();

  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::int64_t bound = 100;
  std::vector<std::string> perturb;
  std::string out_path, gen_coords;
  auto* gen_cmd = app.add_subcommand("gen", "generate a planted planar instance");
  gen_cmd->add_option("n", n, "number of points")->required();
  gen_cmd->add_option("--seed", seed, "random seed");
  gen_cmd->add_option("--bound", bound, "coordinate bound");
  gen_cmd->add_option("--perturb", perturb, "add EPS to d(I,J)")->expected(3);
  gen_cmd->add_option("-o,--output", out_path, "instance file (default stdout)");
  gen_cmd->add_option("--coords", gen_coords, "planted coordinates file (default OUTPUT.coords)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    if (*embed_cmd) {
      if (!batch_dir.empty()) return cmd_batch(batch_dir);
      if (instance.empty()) throw Failure{"embed needs an instance file or --batch DIR"};
      return cmd_embed(instance, json_path, svg_path);
    }
    if (*verify_cmd) return cmd_verify(verify_instance, coords);
    if (*oracle_cmd) return cmd_oracle(oracle_instance);
    if (*gen_cmd) return cmd_gen(n, seed, bound, perturb, out_path, gen_coords);
  } catch (const Failure& e) {
    std::cerr << "error: " << e.message << '\n';
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
