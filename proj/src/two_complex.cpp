#include "collapsar/two_complex.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace collapsar {

namespace {

struct DSU {
  std::vector<int> p;
  explicit DSU(int n) : p(static_cast<size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[static_cast<size_t>(x)] == x ? x : p[static_cast<size_t>(x)] = find(p[static_cast<size_t>(x)]); }
  void unite(int a, int b) { p[static_cast<size_t>(find(a))] = find(b); }
};

}  // namespace

bool TwoComplex::face_path_closed(const Face& f) const {
  if (f.path.empty()) return false;
  for (size_t i = 0; i < f.path.size(); ++i) {
    int d = f.path[i];
    int next = f.path[(i + 1) % f.path.size()];
    if (head(d) != tail(next)) return false;
  }
  return true;
}

bool TwoComplex::face_immersed(int fi) const {
  const auto& path = faces[static_cast<size_t>(fi)].path;
  size_t n = path.size();
  if (n == 1) return true;
  for (size_t i = 0; i < n; ++i) {
    if (path[(i + 1) % n] == reverse(path[i])) return false;
  }
  return true;
}

std::vector<int> TwoComplex::edge_traversal_count() const {
  std::vector<int> cnt(static_cast<size_t>(num_edges()), 0);
  for (const auto& f : faces) {
    for (int d : f.path) cnt[static_cast<size_t>(edge_of(d))]++;
  }
  return cnt;
}

std::vector<int> TwoComplex::vertex_valence() const {
  std::vector<int> val(static_cast<size_t>(num_vertices), 0);
  for (int d = 0; d < static_cast<int>(dart_tail.size()); ++d) val[static_cast<size_t>(tail(d))]++;
  return val;
}

std::vector<char> TwoComplex::vertex_on_face() const {
  std::vector<char> on(static_cast<size_t>(num_vertices), 0);
  for (const auto& f : faces) {
    for (int d : f.path) {
      on[static_cast<size_t>(tail(d))] = 1;
      on[static_cast<size_t>(head(d))] = 1;
    }
  }
  return on;
}

int TwoComplex::num_components() const {
  if (num_vertices == 0) return 0;
  DSU dsu(num_vertices);
  for (int e = 0; e < num_edges(); ++e) dsu.unite(tail(2 * e), head(2 * e));
  std::vector<char> seen(static_cast<size_t>(num_vertices), 0);
  int comps = 0;
  for (int v = 0; v < num_vertices; ++v) {
    int r = dsu.find(v);
    if (!seen[static_cast<size_t>(r)]) {
      seen[static_cast<size_t>(r)] = 1;
      ++comps;
    }
  }
  return comps;
}

Word TwoComplex::face_word(int fi) const {
  Word w;
  for (int d : faces[static_cast<size_t>(fi)].path) w.push_back(label(d));
  return w;
}

int TwoComplexBuilder::add_vertex() { return c_.num_vertices++; }

int TwoComplexBuilder::add_vertices(int n) {
  int first = c_.num_vertices;
  c_.num_vertices += n;
  return first;
}

int TwoComplexBuilder::add_edge(int tail, int head, Letter label) {
  int d = static_cast<int>(c_.dart_tail.size());
  c_.dart_tail.push_back(tail);
  c_.dart_tail.push_back(head);
  c_.dart_label.push_back(label);
  c_.dart_label.push_back(label.gen >= 0 ? label.inverse() : label);
  return d;
}

void TwoComplexBuilder::add_face(std::vector<int> dart_path, int relator, int orient) {
  TwoComplex::Face f;
  f.path = std::move(dart_path);
  f.relator = relator;
  f.orient = orient;
  c_.faces.push_back(std::move(f));
}

TwoComplex TwoComplexBuilder::build() {
  for (const auto& f : c_.faces) {
    if (!c_.face_path_closed(f)) throw PreconditionError("face attaching path not closed");
  }
  return c_;
}

SubComplex::SubComplex(const TwoComplex& c)
    : parent(&c),
      v_in(static_cast<size_t>(c.num_vertices), 0),
      e_in(static_cast<size_t>(c.num_edges()), 0),
      f_in(c.faces.size(), 0) {}

void SubComplex::add_closed_face(int fi) {
  f_in[static_cast<size_t>(fi)] = 1;
  for (int d : parent->faces[static_cast<size_t>(fi)].path) add_closed_edge(TwoComplex::edge_of(d));
}

void SubComplex::add_closed_edge(int e) {
  e_in[static_cast<size_t>(e)] = 1;
  v_in[static_cast<size_t>(parent->tail(2 * e))] = 1;
  v_in[static_cast<size_t>(parent->head(2 * e))] = 1;
}

bool SubComplex::closed() const {
  for (size_t fi = 0; fi < f_in.size(); ++fi) {
    if (!f_in[fi]) continue;
    for (int d : parent->faces[fi].path) {
      if (!e_in[static_cast<size_t>(TwoComplex::edge_of(d))]) return false;
    }
  }
  for (size_t e = 0; e < e_in.size(); ++e) {
    if (!e_in[e]) continue;
    if (!v_in[static_cast<size_t>(parent->tail(static_cast<int>(2 * e)))]) return false;
    if (!v_in[static_cast<size_t>(parent->head(static_cast<int>(2 * e)))]) return false;
  }
  return true;
}

int SubComplex::num_cells() const {
  int n = 0;
  for (char b : v_in) n += b;
  for (char b : e_in) n += b;
  for (char b : f_in) n += b;
  return n;
}

int SubComplex::num_components() const {
  int nv = parent->num_vertices;
  DSU dsu(nv);
  for (size_t e = 0; e < e_in.size(); ++e) {
    if (e_in[e]) dsu.unite(parent->tail(static_cast<int>(2 * e)), parent->head(static_cast<int>(2 * e)));
  }
  std::vector<char> seen(static_cast<size_t>(nv), 0);
  int comps = 0;
  for (int v = 0; v < nv; ++v) {
    if (!v_in[static_cast<size_t>(v)]) continue;
    int r = dsu.find(v);
    if (!seen[static_cast<size_t>(r)]) {
      seen[static_cast<size_t>(r)] = 1;
      ++comps;
    }
  }
  return comps;
}

int SubComplex::euler_characteristic() const {
  int v = 0, e = 0, f = 0;
  for (char b : v_in) v += b;
  for (char b : e_in) e += b;
  for (char b : f_in) f += b;
  return v - e + f;
}

TwoComplex SubComplex::extract() const {
  TwoComplexBuilder b;
  std::vector<int> vmap(v_in.size(), -1);
  for (size_t v = 0; v < v_in.size(); ++v) {
    if (v_in[v]) vmap[v] = b.add_vertex();
  }
  std::vector<int> dmap(static_cast<size_t>(2) * e_in.size(), -1);
  for (size_t e = 0; e < e_in.size(); ++e) {
    if (!e_in[e]) continue;
    int d0 = static_cast<int>(2 * e);
    int nd = b.add_edge(vmap[static_cast<size_t>(parent->tail(d0))], vmap[static_cast<size_t>(parent->head(d0))],
                        parent->label(d0));
    dmap[static_cast<size_t>(d0)] = nd;
    dmap[static_cast<size_t>(d0 + 1)] = nd + 1;
  }
  for (size_t fi = 0; fi < f_in.size(); ++fi) {
    if (!f_in[fi]) continue;
    std::vector<int> path;
    for (int d : parent->faces[fi].path) path.push_back(dmap[static_cast<size_t>(d)]);
    b.add_face(std::move(path), parent->faces[fi].relator, parent->faces[fi].orient);
  }
  return b.build();
}

TwoComplex presentation_complex(const Presentation& p) {
  TwoComplexBuilder b;
  int v = b.add_vertex();
  std::vector<int> gen_dart(p.generators.size());
  for (size_t g = 0; g < p.generators.size(); ++g) {
    gen_dart[g] = b.add_edge(v, v, Letter(static_cast<int>(g), +1));
  }
  for (size_t ri = 0; ri < p.relators.size(); ++ri) {
    std::vector<int> path;
    const Word& w = p.relators[ri].rep();
    for (const auto& l : w.letters()) {
      int d = gen_dart[static_cast<size_t>(l.gen)];
      path.push_back(l.sign > 0 ? d : TwoComplex::reverse(d));
    }
    b.add_face(std::move(path), static_cast<int>(ri), +1);
  }
  return b.build();
}

LinkGraph link(const TwoComplex& c, int v) {
  LinkGraph g;
  std::vector<int> node_of(c.dart_tail.size(), -1);
  for (int d = 0; d < static_cast<int>(c.dart_tail.size()); ++d) {
    if (c.head(d) == v) {
      node_of[static_cast<size_t>(d)] = static_cast<int>(g.nodes.size());
      g.nodes.push_back(d);
    }
  }
  for (const auto& f : c.faces) {
    size_t n = f.path.size();
    for (size_t i = 0; i < n; ++i) {
      int d = f.path[i];
      int next = f.path[(i + 1) % n];
      if (c.head(d) != v) continue;
      // corner between arriving dart d and departing dart next
      g.arcs.emplace_back(node_of[static_cast<size_t>(d)], node_of[static_cast<size_t>(TwoComplex::reverse(next))]);
    }
  }
  return g;
}

std::optional<int> girth(const LinkGraph& g) {
  int n = static_cast<int>(g.nodes.size());
  int best = -1;
  // loops and parallel arcs
  std::map<std::pair<int, int>, int> mult;
  for (const auto& a : g.arcs) {
    if (a.first == a.second) {
      best = 1;
    } else {
      auto key = std::minmax(a.first, a.second);
      mult[{key.first, key.second}]++;
    }
  }
  if (best == 1) return 1;
  for (const auto& [k, m] : mult) {
    (void)k;
    if (m >= 2) return 2;
  }
  // simple-graph girth by BFS from each vertex
  std::vector<std::vector<int>> adj(static_cast<size_t>(n));
  for (const auto& [k, m] : mult) {
    (void)m;
    adj[static_cast<size_t>(k.first)].push_back(k.second);
    adj[static_cast<size_t>(k.second)].push_back(k.first);
  }
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist(static_cast<size_t>(n), -1), par(static_cast<size_t>(n), -1);
    std::deque<int> q{s};
    dist[static_cast<size_t>(s)] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int w : adj[static_cast<size_t>(u)]) {
        if (dist[static_cast<size_t>(w)] < 0) {
          dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(u)] + 1;
          par[static_cast<size_t>(w)] = u;
          q.push_back(w);
        } else if (par[static_cast<size_t>(u)] != w) {
          int cyc = dist[static_cast<size_t>(u)] + dist[static_cast<size_t>(w)] + 1;
          if (best < 0 || cyc < best) best = cyc;
        }
      }
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

namespace {

// Canonical key of a face boundary cycle up to rotation and reflection.
std::vector<int> face_cycle_key(const TwoComplex::Face& f) {
  size_t n = f.path.size();
  std::vector<int> best;
  for (int refl = 0; refl < 2; ++refl) {
    std::vector<int> cyc(n);
    for (size_t i = 0; i < n; ++i) {
      cyc[i] = refl ? TwoComplex::reverse(f.path[n - 1 - i]) : f.path[i];
    }
    for (size_t r = 0; r < n; ++r) {
      std::vector<int> rot(n);
      for (size_t i = 0; i < n; ++i) rot[i] = cyc[(r + i) % n];
      if (best.empty() || rot < best) best = rot;
    }
  }
  return best;
}

}  // namespace

TwoComplex quotient_duplicates(const TwoComplex& c) {
  TwoComplex out = c;
  out.faces.clear();
  std::vector<std::vector<int>> seen;
  for (const auto& f : c.faces) {
    auto key = face_cycle_key(f);
    bool dup = false;
    for (const auto& k : seen) {
      if (k == key) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      seen.push_back(key);
      out.faces.push_back(f);
    }
  }
  return out;
}

BoundaryIntersection boundary_intersection(const TwoComplex& c, int f1, int f2) {
  if (f1 == f2) throw PreconditionError("boundary_intersection: faces must differ");
  BoundaryIntersection out;
  out.cells = SubComplex(c);
  std::vector<char> e1(static_cast<size_t>(c.num_edges()), 0), e2 = e1;
  std::vector<char> v1(static_cast<size_t>(c.num_vertices), 0), v2 = v1;
  for (int d : c.faces[static_cast<size_t>(f1)].path) {
    e1[static_cast<size_t>(TwoComplex::edge_of(d))] = 1;
    v1[static_cast<size_t>(c.tail(d))] = 1;
    v1[static_cast<size_t>(c.head(d))] = 1;
  }
  for (int d : c.faces[static_cast<size_t>(f2)].path) {
    e2[static_cast<size_t>(TwoComplex::edge_of(d))] = 1;
    v2[static_cast<size_t>(c.tail(d))] = 1;
    v2[static_cast<size_t>(c.head(d))] = 1;
  }
  for (int e = 0; e < c.num_edges(); ++e) {
    if (e1[static_cast<size_t>(e)] && e2[static_cast<size_t>(e)]) out.cells.add_closed_edge(e);
  }
  for (int v = 0; v < c.num_vertices; ++v) {
    if (v1[static_cast<size_t>(v)] && v2[static_cast<size_t>(v)]) out.cells.add_vertex(v);
  }
  out.connected = out.cells.num_components() == 1;
  return out;
}

int face_boundary_euler(const TwoComplex& c, int fi) {
  SubComplex s(c);
  for (int d : c.faces[static_cast<size_t>(fi)].path) s.add_closed_edge(TwoComplex::edge_of(d));
  int v = 0, e = 0;
  for (char b : s.v_in) v += b;
  for (char b : s.e_in) e += b;
  return v - e;
}

}  // namespace collapsar
