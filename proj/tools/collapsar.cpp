// collapsar: certify small-cancellation and collapsibility properties of group
// presentations, solve word problems in branched presentations by Dehn's
// algorithm, enumerate disk diagrams, and inspect walls and cube fragments in
// Cayley-ball fragments of the cover.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "collapsar/export.hpp"
#include "collapsar/runtime.hpp"
#include "collapsar/small_cancellation.hpp"

namespace fs = std::filesystem;
using namespace collapsar;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr const char* kSchema = "collapsar/1";

// exit codes: 0 certified/trivial, 1 refuted/nontrivial, 2 inconclusive, 3 usage
enum Exit { kOk = 0, kNegative = 1, kInconclusive = 2, kUsage = 3 };

struct Options {
  bool json = false;
  bool unsafe = false;
  int max_area = 3;
  int radius = 4;
  int max_flips = 4;
  unsigned seed = 1;
  std::string out_dir;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Report {
  Json body;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  Report(const std::string& command, const std::string& input) {
    body["schema"] = kSchema;
    body["tool"] = "collapsar";
    body["version"] = kVersion;
    body["command"] = command;
    body["input_digest"] = digest(input);
    body["threads"] = runtime_threads();
  }

  // digest covers everything except the timing field
  void finish(const Options& opt, int exit_code) {
    body["exit"] = exit_code;
    body["report_digest"] = digest(body.dump());
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    body["timing"] = Json{{"total_ms", ms}};
    if (!opt.out_dir.empty()) {
      fs::create_directories(opt.out_dir);
      std::string name = body["command"].get<std::string>();
      std::ofstream out(fs::path(opt.out_dir) / (name + ".json"));
      out << body.dump(2) << "\n";
    }
  }
};

void write_artifact(const Options& opt, const std::string& name, const std::string& payload) {
  if (opt.out_dir.empty()) return;
  fs::create_directories(opt.out_dir);
  std::ofstream out(fs::path(opt.out_dir) / name);
  out << payload;
}

void emit(const Options& opt, const Report& report, const std::string& text) {
  if (opt.json) {
    std::cout << report.body.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

const char* status_word(const CollapsingVerdict& v) {
  switch (v.status) {
    case CollapsingVerdict::Status::certified:
      return "certified";
    case CollapsingVerdict::Status::refuted:
      return "refuted";
    default:
      return "inconclusive";
  }
}

int verdict_exit(const CollapsingVerdict& v) {
  switch (v.status) {
    case CollapsingVerdict::Status::certified:
      return kOk;
    case CollapsingVerdict::Status::refuted:
      return kNegative;
    default:
      return kInconclusive;
  }
}

// ---------------------------------------------------------------------------

int cmd_parse(const std::string& file, const Options& opt) {
  std::string text = read_file(file);
  Presentation p = parse_presentation(text);
  Report report("parse", text);
  report.body["presentation"] = to_json(p);
  report.body["canonical_text"] = to_text(p);
  std::ostringstream os;
  os << to_text(p) << "\n";
  for (size_t i = 0; i < p.relators.size(); ++i) {
    os << "  relator " << i << ": length " << p.relators[i].size()
       << (p.relators[i].cyclically_reduced() ? "" : "  (not cyclically reduced)") << "\n";
  }
  TwoComplex c = presentation_complex(p);
  write_artifact(opt, "skeleton.dot", dot_skeleton(c, &p));
  write_artifact(opt, "link_v0.dot", dot_link(link(c, 0)));
  report.finish(opt, kOk);
  emit(opt, report, os.str());
  return kOk;
}

int cmd_certify(const std::string& file, const Options& opt) {
  std::string text = read_file(file);
  Presentation p = parse_presentation(text);
  Report report("certify", text);

  Json checks;
  bool reduced = true;
  for (const auto& r : p.relators) reduced = reduced && r.cyclically_reduced();
  checks["relators_cyclically_reduced"] = reduced;
  if (reduced) {
    PieceIndex idx = pieces(p);
    checks["max_piece_length"] = idx.max_piece_length;
    checks["C4"] = check_C(p, 4);
    checks["C6"] = check_C(p, 6);
    checks["T4"] = check_T(p, 4);
  }
  checks["staggered"] = is_staggered(p);

  CollapsingVerdict three = certify_3_collapsing(p);
  CertifyBudget budget;
  budget.max_sphere_area = opt.max_area;
  CollapsingVerdict bi = certify_bicollapsible(p, budget);

  report.body["checks"] = checks;
  report.body["three_collapsing"] = to_json(three, &p);
  report.body["bicollapsible"] = to_json(bi, &p);

  std::ostringstream os;
  os << "presentation: " << to_text(p) << "\n";
  if (reduced) {
    os << "C(4): " << (checks["C4"].get<bool>() ? "true" : "false") << "   C(6): "
       << (checks["C6"].get<bool>() ? "true" : "false") << "   T(4): "
       << (checks["T4"].get<bool>() ? "true" : "false") << "\n";
  }
  os << "staggered: " << (checks["staggered"].get<bool>() ? "true" : "false") << "\n";
  os << "3-collapsing: " << status_word(three) << "  [" << three.provenance << "]\n";
  os << "bicollapsible: " << status_word(bi) << "  [" << bi.provenance << "]\n";
  if (bi.witness) {
    os << "witness: " << bi.witness->num_vertices << " vertices, " << bi.witness->num_edges()
       << " edges, " << bi.witness->num_faces() << " faces\n";
    write_artifact(opt, "witness.dot", dot_skeleton(*bi.witness, &p));
  }
  int code = verdict_exit(bi);
  report.finish(opt, code);
  emit(opt, report, os.str());
  return code;
}

int cmd_branch(const std::string& file, const std::vector<int>& exponents, const Options& opt) {
  std::string text = read_file(file);
  Presentation p = parse_presentation(text);
  BranchedPresentation b = branch(p, exponents);
  Report report("branch", text);
  report.body["branched"] = to_json(b);
  Presentation out;
  out.generators = p.generators;
  out.relators = b.relators;
  report.body["presentation_text"] = to_text(out);
  report.finish(opt, kOk);
  emit(opt, report, to_text(out) + "\n");
  return kOk;
}

// decompose relators as maximal powers and certify the base
BranchedPresentation prepare_branched(const Presentation& p, const Options& opt, Json* onto) {
  BranchedPresentation b = branched_decomposition(p);
  CertifyBudget budget;
  budget.max_sphere_area = opt.max_area;
  CollapsingVerdict base = certify_bicollapsible(b.base, budget);
  b.base_certified_bicollapsible = base.certified();
  if (onto) {
    (*onto)["base_certification"] = to_json(base, &b.base);
    (*onto)["dehn_eligible"] = b.dehn_eligible();
  }
  return b;
}

int cmd_solve(const std::string& file, const std::string& word_text, const Options& opt) {
  std::string text = read_file(file);
  Presentation p = parse_presentation(text);
  Report report("solve", text + "\n" + word_text);
  BranchedPresentation b = prepare_branched(p, opt, &report.body);
  Word w = parse_word(word_text, p);
  std::ostringstream os;
  if (!b.dehn_eligible() && !opt.unsafe) {
    os << "presentation is not dehn-eligible; rerun with --unsafe for a heuristic run\n";
    report.body["verdict"] = "ineligible";
    report.finish(opt, kInconclusive);
    emit(opt, report, os.str());
    return kInconclusive;
  }
  DehnOptions dopts;
  dopts.unsafe = opt.unsafe;
  auto [reduced, trace] = dehn_reduce(w, b, dopts);
  bool trivial = reduced.empty();
  report.body["word"] = word_text;
  report.body["verdict"] = trivial ? "trivial" : "nontrivial";
  report.body["heuristic"] = !b.dehn_eligible();
  report.body["reduced_word"] = to_text(reduced, p);
  Json steps = Json::array();
  for (const auto& s : trace.steps) {
    Json sj;
    sj["pos"] = s.pos;
    sj["relator"] = s.relator;
    sj["orient"] = s.orient;
    sj["offset"] = s.offset;
    sj["removed"] = to_text(s.removed, p);
    sj["inserted"] = to_text(s.inserted, p);
    steps.push_back(sj);
  }
  report.body["trace"] = steps;
  os << (trivial ? "trivial" : "nontrivial");
  if (!b.dehn_eligible()) os << " (heuristic: presentation not certified)";
  os << "\n";
  if (!trivial) os << "dehn-reduced form: " << to_text(reduced, p) << "\n";
  os << "trace: " << trace.size() << " rewrite(s)\n";
  int code = trivial ? kOk : kNegative;
  report.finish(opt, code);
  emit(opt, report, os.str());
  return code;
}

int cmd_order(const std::string& file, const Options& opt) {
  std::string text = read_file(file);
  Presentation p = parse_presentation(text);
  Report report("order", text);
  BranchedPresentation b = prepare_branched(p, opt, &report.body);
  std::ostringstream os;
  if (!b.dehn_eligible()) {
    os << "presentation is not dehn-eligible; orders unavailable\n";
    report.finish(opt, kInconclusive);
    emit(opt, report, os.str());
    return kInconclusive;
  }
  Json table = Json::array();
  bool all_match = true;
  for (size_t i = 0; i < b.base.relators.size(); ++i) {
    int m = order_of_relator(static_cast<int>(i), b);
    bool match = m == b.exponents[i];
    all_match = all_match && match;
    Json row;
    row["relator"] = to_text(b.base.relators[i].rep(), p);
    row["exponent"] = b.exponents[i];
    row["order"] = m;
    row["matches_exponent"] = match;
    table.push_back(row);
    os << "w_" << i << " = " << to_text(b.base.relators[i].rep(), p) << ": order " << m
       << " (exponent " << b.exponents[i] << (match ? ", as predicted)" : ", VIOLATION)") << "\n";
  }
  report.body["orders"] = table;
  int code = all_match ? kOk : kNegative;
  report.finish(opt, code);
  emit(opt, report, os.str());
  return code;
}

int cmd_diagrams(const std::string& file, const Options& opt) {
  std::string text = read_file(file);
  Presentation p = parse_presentation(text);
  Report report("diagrams", text);
  auto all = enumerate_reduced_disks(p, opt.max_area);
  std::map<int, int> per_area;
  for (const auto& d : all) per_area[d.area()]++;
  Json ja = Json::array();
  std::ostringstream os;
  os << all.size() << " reduced disk diagram(s) up to area " << opt.max_area << "\n";
  for (const auto& [area, count] : per_area) {
    os << "  area " << area << ": " << count << "\n";
    ja.push_back(Json{{"area", area}, {"count", count}});
  }
  report.body["max_area"] = opt.max_area;
  report.body["counts"] = ja;
  if (!opt.out_dir.empty()) {
    Json listing = Json::array();
    for (size_t i = 0; i < all.size(); ++i) {
      listing.push_back(to_json(all[i], &p));
      write_artifact(opt, "diagram_" + std::to_string(i) + ".dot", dot_diagram(all[i], &p));
    }
    report.body["diagrams"] = listing;
  }
  report.finish(opt, kOk);
  emit(opt, report, os.str());
  return kOk;
}

int cmd_sphere_search(const std::string& file, const Options& opt) {
  std::string text = read_file(file);
  Presentation p = parse_presentation(text);
  Report report("sphere-search", text);
  auto sphere = find_spherical_near_immersion(p, opt.max_area);
  std::ostringstream os;
  int code;
  if (sphere) {
    os << "spherical near-immersion found: " << sphere->complex.num_faces()
       << " faces (not diagrammatically reducible)\n";
    report.body["found"] = true;
    report.body["sphere"] = to_json(sphere->complex, &p);
    write_artifact(opt, "sphere.dot", dot_skeleton(sphere->complex, &p));
    code = kNegative;
  } else {
    os << "no spherical near-immersion up to area " << opt.max_area << "\n";
    report.body["found"] = false;
    code = kOk;
  }
  report.body["max_area"] = opt.max_area;
  report.finish(opt, code);
  emit(opt, report, os.str());
  return code;
}

EqualityOracle pick_oracle(const std::string& name, const BranchedPresentation& b,
                           const Options& opt, std::string* chosen) {
  auto commutator = [&]() {
    Presentation q;
    q.generators = b.base.generators;
    Word w;
    w.push_back(Letter(0, 1));
    w.push_back(Letter(1, 1));
    w.push_back(Letter(0, -1));
    w.push_back(Letter(1, -1));
    return CyclicWord(w);
  };
  if (name == "dehn" || (name == "auto" && b.dehn_eligible())) {
    *chosen = "dehn";
    return dehn_equality_oracle(b);
  }
  if (name == "free" || (name == "auto" && b.relators.empty())) {
    *chosen = "free";
    return free_group_oracle();
  }
  bool cyclic = b.base.generators.size() == 1 && b.relators.size() == 1 &&
                b.base.relators[0].size() == 1;
  if (name == "cyclic" || (name == "auto" && cyclic)) {
    if (!cyclic) throw ParseError("cyclic oracle requires a one-generator power relator");
    *chosen = "cyclic";
    return cyclic_group_oracle(b.relators[0].size());
  }
  bool z2 = b.base.generators.size() == 2 && b.relators.size() == 1 && b.exponents[0] == 1 &&
            b.base.relators[0].equal_up_to_inversion(commutator());
  if (name == "z2" || (name == "auto" && z2)) {
    if (!z2) throw ParseError("z2 oracle requires the commutator relator");
    *chosen = "z2";
    return free_abelian_rank2_oracle();
  }
  if (name == "bounded") {
    Presentation q;
    q.generators = b.base.generators;
    q.relators = b.relators;
    *chosen = "bounded";
    return bounded_diagram_oracle(q, opt.max_area, 2 * opt.radius + b.max_relator_length());
  }
  throw ParseError("no equality oracle applies (try --oracle dehn|cyclic|z2|free|bounded)");
}

CayleyBall make_ball(const Presentation& p, const std::string& oracle_name, const Options& opt,
                     Json* onto) {
  BranchedPresentation b = prepare_branched(p, opt, onto);
  std::string chosen;
  EqualityOracle oracle = pick_oracle(oracle_name, b, opt, &chosen);
  if (onto) (*onto)["oracle"] = chosen;
  return build_ball(b, opt.radius, oracle);
}

int cmd_ball(const std::string& file, const std::string& oracle_name, const Options& opt) {
  std::string text = read_file(file);
  Presentation p = parse_presentation(text);
  Report report("ball", text);
  CayleyBall ball = make_ball(p, oracle_name, opt, &report.body);
  std::ostringstream os;
  os << "radius " << ball.radius << ": " << ball.complex.num_vertices << " vertices, "
     << ball.complex.num_edges() << " edges, " << ball.complex.num_faces() << " faces; safe radius "
     << ball.safe_radius << "\n";
  report.body["radius"] = ball.radius;
  report.body["safe_radius"] = ball.safe_radius;
  report.body["vertices"] = ball.complex.num_vertices;
  report.body["edges"] = ball.complex.num_edges();
  report.body["faces"] = ball.complex.num_faces();
  if (ball.safe_radius >= 0 && !ball.safe_faces().empty()) {
    auto verdict = check_n_collapsing(ball, 3);
    report.body["three_collapsing_on_ball"] = to_json(verdict, &p);
    os << "3-collapsing on safe faces: " << status_word(verdict) << "\n";
  }
  write_artifact(opt, "ball.dot", dot_skeleton(ball.complex, &p));
  write_artifact(opt, "ball.json", to_json(ball.complex, &p).dump(2));
  report.finish(opt, kOk);
  emit(opt, report, os.str());
  return kOk;
}

int cmd_walls(const std::string& file, const std::string& oracle_name, const Options& opt) {
  std::string text = read_file(file);
  Presentation p = parse_presentation(text);
  Report report("walls", text);
  CayleyBall ball = make_ball(p, oracle_name, opt, &report.body);
  auto trees = divisive_trees(ball);
  auto ws = walls_of_trees(ball, trees);
  std::ostringstream os;
  int acyclic = 0, embedded = 0, partial = 0;
  Json jt = Json::array();
  for (const auto& t : trees) {
    acyclic += t.acyclic;
    embedded += t.embedded;
    partial += t.partial;
    jt.push_back(to_json(t));
  }
  os << trees.size() << " divisive tree component(s): " << acyclic << " acyclic, " << embedded
     << " embedded, " << partial << " partial\n";
  Json jw = Json::array();
  int convexity_failures = 0, pairs = 0;
  for (const auto& w : ws) {
    Json wj = to_json(w);
    Halfspaces h = halfspaces(ball, w);
    wj["halfspace_components"] = h.components;
    wj["side_sizes"] = Json::array({h.side_a.size(), h.side_b.size()});
    CarrierReport cr = carrier(ball, w, 100, opt.seed);
    wj["carrier_pairs_checked"] = cr.pairs_checked;
    wj["carrier_failures"] = cr.failures.size();
    convexity_failures += static_cast<int>(cr.failures.size());
    pairs += cr.pairs_checked;
    jw.push_back(wj);
  }
  os << ws.size() << " wall(s); carrier convexity: " << pairs << " pairs sampled, "
     << convexity_failures << " failure(s)\n";
  report.body["trees"] = jt;
  report.body["walls"] = jw;
  report.body["carrier_pairs"] = pairs;
  report.body["carrier_failures"] = convexity_failures;
  write_artifact(opt, "walls.dot", dot_ball_walls(ball, ws));
  bool bad = false;
  for (const auto& t : trees) bad = bad || !t.acyclic || !t.embedded;
  bad = bad || convexity_failures > 0;
  int code = bad ? kNegative : kOk;
  report.finish(opt, code);
  emit(opt, report, os.str());
  return code;
}

int cmd_cube(const std::string& file, const std::string& oracle_name, const Options& opt) {
  std::string text = read_file(file);
  Presentation p = parse_presentation(text);
  Report report("cube", text);
  CayleyBall ball = make_ball(p, oracle_name, opt, &report.body);
  auto ws = walls(ball);
  CubeFragment frag = dual_cube_fragment(ball, ws, opt.max_flips);
  std::ostringstream os;
  os << "fragment within " << opt.max_flips << " flips: " << frag.complex.num_vertices
     << " vertices, " << frag.complex.num_edges() << " edges, " << frag.num_squares
     << " squares; simply connected: " << (frag.simply_connected ? "yes" : "no") << "; "
     << frag.skipped_walls.size() << " degenerate wall(s) skipped, " << frag.duplicate_partitions
     << " duplicate partition(s) merged\n";
  report.body["vertices"] = frag.complex.num_vertices;
  report.body["edges"] = frag.complex.num_edges();
  report.body["squares"] = frag.num_squares;
  report.body["simply_connected"] = frag.simply_connected;
  report.body["flag_condition_ok"] = frag.flag_condition_ok;
  report.body["duplicate_partitions"] = frag.duplicate_partitions;
  report.body["skipped_walls"] = frag.skipped_walls;
  write_artifact(opt, "cube.dot", dot_skeleton(frag.complex));
  int code = frag.simply_connected ? kOk : kNegative;
  report.finish(opt, code);
  emit(opt, report, os.str());
  return code;
}

int cmd_report(const Options& opt) {
  if (opt.out_dir.empty()) throw ParseError("report requires --out DIR");
  fs::path dir(opt.out_dir);
  if (!fs::exists(dir)) throw ParseError("no such directory: " + opt.out_dir);
  std::vector<fs::path> artifacts;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".json" && entry.path().filename() != "index.json")
      artifacts.push_back(entry.path());
  }
  std::sort(artifacts.begin(), artifacts.end());
  if (artifacts.empty()) throw ParseError("no artifacts in " + opt.out_dir);
  Json index;
  index["schema"] = kSchema;
  index["artifacts"] = Json::array();
  std::ostringstream os;
  os << "collapsar report\n================\n";
  for (const auto& path : artifacts) {
    Json j = Json::parse(read_file(path.string()));
    Json entry;
    entry["file"] = path.filename().string();
    if (j.contains("command")) entry["command"] = j["command"];
    if (j.contains("report_digest")) entry["digest"] = j["report_digest"];
    if (j.contains("exit")) entry["exit"] = j["exit"];
    index["artifacts"].push_back(entry);
    os << path.filename().string();
    if (j.contains("command")) os << "  [" << j["command"].get<std::string>() << "]";
    if (j.contains("exit")) os << "  exit=" << j["exit"].get<int>();
    os << "\n";
  }
  std::ofstream idx(dir / "index.json");
  idx << index.dump(2) << "\n";
  std::ofstream sum(dir / "summary.txt");
  sum << os.str();
  std::cout << os.str();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"combinatorial certification toolkit for group presentations"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_flag("--json", opt.json, "emit the JSON report on stdout");
  app.add_option("--max-area", opt.max_area, "diagram/sphere search area bound");
  app.add_option("--radius", opt.radius, "Cayley ball radius");
  app.add_option("--max-flips", opt.max_flips, "cube fragment flip distance bound");
  app.add_flag("--unsafe", opt.unsafe, "run Dehn rewriting without certification (heuristic)");
  app.add_option("--seed", opt.seed, "seed for sampled checks");
  app.add_option("--out", opt.out_dir, "artifact output directory");

  std::string file, word_text, oracle_name = "auto";
  std::vector<int> exponents;

  auto* parse_cmd = app.add_subcommand("parse", "parse a presentation file");
  parse_cmd->add_option("file", file)->required();
  auto* certify_cmd = app.add_subcommand("certify", "run the certification tree");
  certify_cmd->add_option("file", file)->required();
  auto* branch_cmd = app.add_subcommand("branch", "raise relators to powers");
  branch_cmd->add_option("file", file)->required();
  branch_cmd->add_option("exponents", exponents, "one exponent per relator")->required();
  auto* solve_cmd = app.add_subcommand("solve", "decide a word by Dehn's algorithm");
  solve_cmd->add_option("file", file)->required();
  solve_cmd->add_option("word", word_text)->required();
  auto* order_cmd = app.add_subcommand("order", "orders of base relators in the branched group");
  order_cmd->add_option("file", file)->required();
  auto* diagrams_cmd = app.add_subcommand("diagrams", "enumerate reduced disk diagrams");
  diagrams_cmd->add_option("file", file)->required();
  auto* sphere_cmd = app.add_subcommand("sphere-search", "search for spherical near-immersions");
  sphere_cmd->add_option("file", file)->required();
  auto* ball_cmd = app.add_subcommand("ball", "build a Cayley ball of the cover");
  ball_cmd->add_option("file", file)->required();
  ball_cmd->add_option("--oracle", oracle_name, "equality oracle: auto|dehn|cyclic|z2|free|bounded");
  auto* walls_cmd = app.add_subcommand("walls", "divisive trees and natural walls");
  walls_cmd->add_option("file", file)->required();
  walls_cmd->add_option("--oracle", oracle_name, "equality oracle");
  auto* cube_cmd = app.add_subcommand("cube", "Sageev dual cube fragment");
  cube_cmd->add_option("file", file)->required();
  cube_cmd->add_option("--oracle", oracle_name, "equality oracle");
  auto* report_cmd = app.add_subcommand("report", "bundle artifacts in --out into a summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (parse_cmd->parsed()) return cmd_parse(file, opt);
    if (certify_cmd->parsed()) return cmd_certify(file, opt);
    if (branch_cmd->parsed()) return cmd_branch(file, exponents, opt);
    if (solve_cmd->parsed()) return cmd_solve(file, word_text, opt);
    if (order_cmd->parsed()) return cmd_order(file, opt);
    if (diagrams_cmd->parsed()) return cmd_diagrams(file, opt);
    if (sphere_cmd->parsed()) return cmd_sphere_search(file, opt);
    if (ball_cmd->parsed()) return cmd_ball(file, oracle_name, opt);
    if (walls_cmd->parsed()) return cmd_walls(file, oracle_name, opt);
    if (cube_cmd->parsed()) return cmd_cube(file, oracle_name, opt);
    if (report_cmd->parsed()) return cmd_report(opt);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
