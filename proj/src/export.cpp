#include "collapsar/export.hpp"

#include <iomanip>
#include <sstream>

namespace collapsar {

namespace {

std::string letter_text(Letter l, const Presentation* names) {
  if (l.gen < 0) return "?";
  if (names && l.gen < static_cast<int>(names->generators.size())) {
    Word w;
    w.push_back(l);
    return to_text(w, *names);
  }
  std::ostringstream os;
  os << "g" << l.gen << (l.sign < 0 ? "^-1" : "");
  return os.str();
}

}  // namespace

Json to_json(const Presentation& p) {
  Json j;
  j["generators"] = Json::array();
  for (const auto& g : p.generators) j["generators"].push_back(g.name);
  j["relators"] = Json::array();
  for (const auto& r : p.relators) {
    Json rj;
    rj["word"] = to_text(r.rep(), p);
    rj["length"] = r.size();
    rj["freely_reduced"] = r.freely_reduced();
    rj["cyclically_reduced"] = r.cyclically_reduced();
    j["relators"].push_back(rj);
  }
  return j;
}

Json to_json(const BranchedPresentation& b) {
  Json j;
  j["base"] = to_json(b.base);
  j["exponents"] = b.exponents;
  j["relators"] = Json::array();
  for (const auto& r : b.relators) j["relators"].push_back(to_text(r.rep(), b.base));
  j["base_certified_bicollapsible"] = b.base_certified_bicollapsible;
  j["dehn_eligible"] = b.dehn_eligible();
  return j;
}

Json to_json(const TwoComplex& c, const Presentation* names) {
  Json j;
  j["vertices"] = c.num_vertices;
  j["edges"] = Json::array();
  for (int e = 0; e < c.num_edges(); ++e) {
    Json ej;
    ej["id"] = e;
    ej["tail"] = c.tail(2 * e);
    ej["head"] = c.head(2 * e);
    ej["label"] = letter_text(c.label(2 * e), names);
    j["edges"].push_back(ej);
  }
  j["faces"] = Json::array();
  for (const auto& f : c.faces) {
    Json fj;
    fj["darts"] = f.path;
    fj["relator"] = f.relator;
    fj["orient"] = f.orient;
    j["faces"].push_back(fj);
  }
  j["euler_characteristic"] = c.euler_characteristic();
  return j;
}

Json to_json(const DiskDiagram& d, const Presentation* names) {
  Json j;
  j["vertices"] = d.num_vertices;
  j["area"] = d.area();
  j["boundary_length"] = d.boundary_length();
  if (names) j["boundary_word"] = to_text(d.boundary_word(), *names);
  j["edges"] = Json::array();
  for (int e = 0; e < d.num_edges(); ++e) {
    Json ej;
    ej["tail"] = d.tail(2 * e);
    ej["head"] = d.head(2 * e);
    ej["label"] = letter_text(d.label(2 * e), names);
    j["edges"].push_back(ej);
  }
  j["faces"] = Json::array();
  for (const auto& f : d.faces) {
    Json fj;
    fj["darts"] = f.cycle;
    fj["relator"] = f.relator;
    fj["orient"] = f.orient;
    j["faces"].push_back(fj);
  }
  j["outer"] = d.outer;
  return j;
}

Json to_json(const CollapsingVerdict& v, const Presentation* names) {
  Json j;
  switch (v.status) {
    case CollapsingVerdict::Status::certified:
      j["status"] = "certified";
      break;
    case CollapsingVerdict::Status::refuted:
      j["status"] = "refuted";
      break;
    default:
      j["status"] = "inconclusive";
  }
  j["provenance"] = v.provenance;
  j["bound"] = v.bound;
  if (!v.witness_faces.empty()) j["witness_faces"] = v.witness_faces;
  if (v.witness) j["witness"] = to_json(*v.witness, names);
  return j;
}

Json to_json(const Wall& w) {
  Json j;
  j["tree"] = w.tree;
  j["crossings"] = Json::array();
  for (const auto& c : w.crossings) {
    j["crossings"].push_back(Json::array({c.edge, c.side}));
  }
  j["sector_faces"] = w.sector_faces;
  j["partial"] = w.partial;
  return j;
}

Json to_json(const DivisiveTree& t) {
  Json j;
  j["centers"] = Json::array();
  for (const auto& c : t.centers) j["centers"].push_back(Json::array({c.first, c.second}));
  j["feet"] = t.feet;
  j["legs"] = t.legs.size();
  j["acyclic"] = t.acyclic;
  j["embedded"] = t.embedded;
  j["partial"] = t.partial;
  return j;
}

std::string dot_skeleton(const TwoComplex& c, const Presentation* names) {
  std::ostringstream os;
  os << "digraph skeleton {\n";
  for (int v = 0; v < c.num_vertices; ++v) os << "  v" << v << ";\n";
  for (int e = 0; e < c.num_edges(); ++e) {
    os << "  v" << c.tail(2 * e) << " -> v" << c.head(2 * e) << " [label=\""
       << letter_text(c.label(2 * e), names) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string dot_link(const LinkGraph& g) {
  std::ostringstream os;
  os << "graph link {\n";
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    os << "  n" << i << " [label=\"dart" << g.nodes[i] << "\"];\n";
  }
  for (const auto& a : g.arcs) os << "  n" << a.first << " -- n" << a.second << ";\n";
  os << "}\n";
  return os.str();
}

std::string dot_diagram(const DiskDiagram& d, const Presentation* names) {
  std::ostringstream os;
  os << "digraph diagram {\n  // outer walk: ";
  for (int dart : d.outer) os << dart << " ";
  os << "\n";
  for (int v = 0; v < d.num_vertices; ++v) os << "  v" << v << ";\n";
  for (int e = 0; e < d.num_edges(); ++e) {
    os << "  v" << d.tail(2 * e) << " -> v" << d.head(2 * e) << " [label=\""
       << letter_text(d.label(2 * e), names) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string dot_ball_walls(const CayleyBall& ball, const std::vector<Wall>& ws) {
  static const char* colors[] = {"red", "blue", "green", "orange", "purple", "brown", "cyan", "magenta"};
  std::map<int, std::vector<size_t>> edge_walls;
  for (size_t wi = 0; wi < ws.size(); ++wi) {
    for (const auto& c : ws[wi].crossings) edge_walls[c.edge].push_back(wi);
  }
  std::ostringstream os;
  os << "digraph ball {\n";
  for (int v = 0; v < ball.complex.num_vertices; ++v) {
    os << "  v" << v << " [label=\"" << v << ":d" << ball.dist[static_cast<size_t>(v)] << "\""
       << (ball.vertex_safe(v) ? "" : " style=dotted") << "];\n";
  }
  for (int e = 0; e < ball.complex.num_edges(); ++e) {
    os << "  v" << ball.complex.tail(2 * e) << " -> v" << ball.complex.head(2 * e);
    auto it = edge_walls.find(e);
    if (it != edge_walls.end() && !it->second.empty()) {
      os << " [color=\"" << colors[it->second.front() % 8] << "\" penwidth=2]";
    }
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string digest(const std::string& payload) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char ch : payload) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace collapsar
