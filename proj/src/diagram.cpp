#include "collapsar/diagram.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace collapsar {

Word DiskDiagram::boundary_word() const {
  Word w;
  for (int d : outer) w.push_back(label(d));
  return w;
}

std::vector<int> DiskDiagram::cycle_of() const {
  std::vector<int> c(dart_tail.size(), -2);
  for (size_t fi = 0; fi < faces.size(); ++fi) {
    for (int d : faces[fi].cycle) c[static_cast<size_t>(d)] = static_cast<int>(fi);
  }
  for (int d : outer) c[static_cast<size_t>(d)] = -1;
  return c;
}

std::vector<int> DiskDiagram::vertex_valence() const {
  std::vector<int> val(static_cast<size_t>(num_vertices), 0);
  for (int d = 0; d < static_cast<int>(dart_tail.size()); ++d) val[static_cast<size_t>(tail(d))]++;
  return val;
}

bool DiskDiagram::valid() const {
  auto c = cycle_of();
  for (int assigned : c) {
    if (assigned == -2) return false;  // dart in no cycle
  }
  auto closed = [&](const std::vector<int>& cyc) {
    if (cyc.empty()) return true;
    for (size_t i = 0; i < cyc.size(); ++i) {
      if (head(cyc[i]) != tail(cyc[(i + 1) % cyc.size()])) return false;
    }
    return true;
  };
  for (const auto& f : faces) {
    if (f.cycle.empty() || !closed(f.cycle)) return false;
  }
  if (!closed(outer)) return false;
  if (num_vertices - num_edges() + area() != 1) return false;
  return true;
}

bool DiskDiagram::single_closed_cell() const {
  if (num_edges() == 0 && faces.empty()) return num_vertices == 1;
  if (faces.empty()) {
    // closure of one 1-cell: nothing but the edge and its endpoints
    return num_edges() == 1 && num_vertices == (tail(0) == head(0) ? 1 : 2);
  }
  if (faces.size() != 1) return false;
  // closure of the face: every edge traversed by it, every vertex on it
  std::vector<char> e_on(static_cast<size_t>(num_edges()), 0), v_on(static_cast<size_t>(num_vertices), 0);
  for (int d : faces[0].cycle) {
    e_on[static_cast<size_t>(edge_of(d))] = 1;
    v_on[static_cast<size_t>(tail(d))] = 1;
  }
  for (char b : e_on) {
    if (!b) return false;
  }
  for (char b : v_on) {
    if (!b) return false;
  }
  return true;
}

DiskDiagram DiskDiagram::mirrored() const {
  DiskDiagram m = *this;
  for (auto& f : m.faces) {
    std::reverse(f.cycle.begin(), f.cycle.end());
    for (int& d : f.cycle) d = reverse(d);
    f.orient = -f.orient;
  }
  std::reverse(m.outer.begin(), m.outer.end());
  for (int& d : m.outer) d = reverse(d);
  return m;
}

namespace {

// Complete invariant of the rooted labeled map via BFS over (cycle-successor,
// reverse); minimized over outer roots and the mirror image.
std::string encode_from(const DiskDiagram& d, int root) {
  auto cyc = d.cycle_of();
  // successor within own cycle
  std::vector<int> succ(d.dart_tail.size(), -1);
  auto fill = [&](const std::vector<int>& cycle) {
    for (size_t i = 0; i < cycle.size(); ++i) {
      succ[static_cast<size_t>(cycle[i])] = cycle[(i + 1) % cycle.size()];
    }
  };
  for (const auto& f : d.faces) fill(f.cycle);
  fill(d.outer);

  std::vector<int> id(d.dart_tail.size(), -1);
  std::vector<int> order;
  order.reserve(d.dart_tail.size());
  auto visit = [&](int dart) {
    if (id[static_cast<size_t>(dart)] < 0) {
      id[static_cast<size_t>(dart)] = static_cast<int>(order.size());
      order.push_back(dart);
    }
    return id[static_cast<size_t>(dart)];
  };
  std::ostringstream os;
  visit(root);
  for (size_t i = 0; i < order.size(); ++i) {
    int dart = order[i];
    int s = visit(succ[static_cast<size_t>(dart)]);
    int r = visit(DiskDiagram::reverse(dart));
    int f = cyc[static_cast<size_t>(dart)];
    os << s << ',' << r << ',' << d.label(dart).code() << ','
       << (f < 0 ? -1 : d.faces[static_cast<size_t>(f)].relator) << ','
       << (f < 0 ? 'o' : 'i') << ';';
  }
  return os.str();
}

std::string code_one_orientation(const DiskDiagram& d) {
  if (d.dart_tail.empty()) return "V" + std::to_string(d.num_vertices);
  std::string best;
  for (int root : d.outer) {
    std::string s = encode_from(d, root);
    if (best.empty() || s < best) best = s;
  }
  return best;
}

}  // namespace

std::string DiskDiagram::canonical_code() const {
  std::string a = code_one_orientation(*this);
  std::string b = code_one_orientation(mirrored());
  return a < b ? a : b;
}

TwoComplex DiskDiagram::as_two_complex() const {
  TwoComplexBuilder b;
  b.add_vertices(num_vertices);
  for (int e = 0; e < num_edges(); ++e) {
    b.add_edge(tail(2 * e), head(2 * e), label(2 * e));
  }
  for (const auto& f : faces) b.add_face(f.cycle, f.relator, f.orient);
  return b.build();
}

DiskDiagram single_vertex_diagram() {
  DiskDiagram d;
  d.num_vertices = 1;
  return d;
}

DiskDiagram polygon_diagram(const Presentation& p, int relator) {
  const Word& w = p.relators[static_cast<size_t>(relator)].rep();
  int L = w.size();
  DiskDiagram d;
  d.num_vertices = L;
  DiskDiagram::Face f;
  f.relator = relator;
  f.orient = +1;
  for (int t = 0; t < L; ++t) {
    int dart = 2 * t;
    d.dart_tail.push_back(t);
    d.dart_tail.push_back((t + 1) % L);
    d.dart_label.push_back(w[t]);
    d.dart_label.push_back(w[t].inverse());
    f.cycle.push_back(dart);
  }
  for (int t = L - 1; t >= 0; --t) d.outer.push_back(DiskDiagram::reverse(2 * t));
  d.faces.push_back(std::move(f));
  return d;
}

bool face_is_shell(const DiskDiagram& d, int fi) {
  const auto& cyc = d.faces[static_cast<size_t>(fi)].cycle;
  int L = static_cast<int>(cyc.size());
  int B = d.boundary_length();
  std::vector<int> pos(d.dart_tail.size(), -1);
  for (int i = 0; i < B; ++i) pos[static_cast<size_t>(d.outer[static_cast<size_t>(i)])] = i;
  // outer path Q = cyc[s..s+len): its reversed darts must appear consecutively
  // (in reverse order) on the outer walk
  for (int s = 0; s < L; ++s) {
    for (int len = L; 2 * len > L; --len) {
      int p_last = pos[static_cast<size_t>(DiskDiagram::reverse(cyc[static_cast<size_t>((s + len - 1) % L)]))];
      if (p_last < 0) continue;
      bool ok = true;
      for (int t = 1; t < len && ok; ++t) {
        int expect = (p_last + t) % B;
        int dart = DiskDiagram::reverse(cyc[static_cast<size_t>((s + len - 1 - t) % L)]);
        ok = pos[static_cast<size_t>(dart)] == expect;
      }
      if (ok) return true;
    }
  }
  return false;
}

// Maximal boundary exposure of a face: largest len such that some rotation of
// the face cycle has its first len darts exposed consecutively on the outer
// walk.  -1 when no edge is exposed.
static int max_outer_run(const DiskDiagram& d, int fi) {
  const auto& cyc = d.faces[static_cast<size_t>(fi)].cycle;
  int L = static_cast<int>(cyc.size());
  int B = d.boundary_length();
  std::vector<int> pos(d.dart_tail.size(), -1);
  for (int i = 0; i < B; ++i) pos[static_cast<size_t>(d.outer[static_cast<size_t>(i)])] = i;
  int best = -1;
  for (int s = 0; s < L; ++s) {
    for (int len = L; len >= 1 && len > best; --len) {
      int p_last = pos[static_cast<size_t>(DiskDiagram::reverse(cyc[static_cast<size_t>((s + len - 1) % L)]))];
      if (p_last < 0) continue;
      bool ok = true;
      for (int t = 1; t < len && ok; ++t) {
        int expect = (p_last + t) % B;
        int dart = DiskDiagram::reverse(cyc[static_cast<size_t>((s + len - 1 - t) % L)]);
        ok = pos[static_cast<size_t>(dart)] == expect;
      }
      if (ok) best = std::max(best, len);
    }
  }
  return best;
}

bool face_is_cutcell(const DiskDiagram& d, int fi) {
  // cells outside cl(fi), connectivity through shared vertices/edges
  std::vector<char> v_cl(static_cast<size_t>(d.num_vertices), 0);
  std::vector<char> e_cl(static_cast<size_t>(d.num_edges()), 0);
  for (int dart : d.faces[static_cast<size_t>(fi)].cycle) {
    v_cl[static_cast<size_t>(d.tail(dart))] = 1;
    v_cl[static_cast<size_t>(d.head(dart))] = 1;
    e_cl[static_cast<size_t>(DiskDiagram::edge_of(dart))] = 1;
  }
  // nodes: vertices + edges + faces outside the closure
  int nv = d.num_vertices, ne = d.num_edges(), nf = d.area();
  std::vector<int> parent(static_cast<size_t>(nv + ne + nf));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[static_cast<size_t>(x)] == x ? x : parent[static_cast<size_t>(x)] = find(parent[static_cast<size_t>(x)]);
  };
  auto unite = [&](int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); };
  auto v_id = [&](int v) { return v; };
  auto e_id = [&](int e) { return nv + e; };
  auto f_id = [&](int f) { return nv + ne + f; };
  for (int e = 0; e < ne; ++e) {
    if (e_cl[static_cast<size_t>(e)]) continue;
    if (!v_cl[static_cast<size_t>(d.tail(2 * e))]) unite(e_id(e), v_id(d.tail(2 * e)));
    if (!v_cl[static_cast<size_t>(d.head(2 * e))]) unite(e_id(e), v_id(d.head(2 * e)));
  }
  for (int f = 0; f < nf; ++f) {
    if (f == fi) continue;
    for (int dart : d.faces[static_cast<size_t>(f)].cycle) {
      int e = DiskDiagram::edge_of(dart);
      if (!e_cl[static_cast<size_t>(e)]) unite(f_id(f), e_id(e));
      if (!v_cl[static_cast<size_t>(d.tail(dart))]) unite(f_id(f), v_id(d.tail(dart)));
    }
  }
  std::set<int> comps;
  for (int v = 0; v < nv; ++v) {
    if (!v_cl[static_cast<size_t>(v)]) comps.insert(find(v_id(v)));
  }
  for (int e = 0; e < ne; ++e) {
    if (!e_cl[static_cast<size_t>(e)]) comps.insert(find(e_id(e)));
  }
  for (int f = 0; f < nf; ++f) {
    if (f != fi) comps.insert(find(f_id(f)));
  }
  return comps.size() > 1;
}

CellRoles classify_cells(const DiskDiagram& d) {
  CellRoles roles;
  if (d.single_closed_cell()) {
    roles.single_cell = true;
    return roles;
  }
  auto val = d.vertex_valence();
  for (int v = 0; v < d.num_vertices; ++v) {
    if (val[static_cast<size_t>(v)] == 1) roles.spur_vertices.push_back(v);
  }
  for (int fi = 0; fi < d.area(); ++fi) {
    if (face_is_shell(d, fi)) roles.shell_faces.push_back(fi);
    if (face_is_cutcell(d, fi)) roles.cutcell_faces.push_back(fi);
  }
  return roles;
}

int CellRoles::role_count() const {
  std::set<int> role_faces(shell_faces.begin(), shell_faces.end());
  role_faces.insert(cutcell_faces.begin(), cutcell_faces.end());
  return static_cast<int>(spur_vertices.size() + role_faces.size());
}

bool is_reduced(const DiskDiagram& d) {
  auto cyc_of = d.cycle_of();
  for (int e = 0; e < d.num_edges(); ++e) {
    int d0 = 2 * e, d1 = 2 * e + 1;
    int f0 = cyc_of[static_cast<size_t>(d0)], f1 = cyc_of[static_cast<size_t>(d1)];
    if (f0 < 0 || f1 < 0 || f0 == f1) continue;
    const auto& a = d.faces[static_cast<size_t>(f0)].cycle;
    const auto& b = d.faces[static_cast<size_t>(f1)].cycle;
    if (a.size() != b.size()) continue;
    int L = static_cast<int>(a.size());
    int ia = static_cast<int>(std::find(a.begin(), a.end(), d0) - a.begin());
    int ib = static_cast<int>(std::find(b.begin(), b.end(), d1) - b.begin());
    bool mirror = true;
    for (int k = 1; k < L && mirror; ++k) {
      Letter x = d.label(a[static_cast<size_t>((ia + k) % L)]);
      Letter y = d.label(b[static_cast<size_t>((ib + L - k) % L)]);
      mirror = y == x.inverse();
    }
    if (mirror) return false;
  }
  return true;
}

bool check_generalized_dehn(const DiskDiagram& d, bool strong) {
  if (d.single_closed_cell()) return true;
  return classify_cells(d).role_count() >= (strong ? 2 : 1);
}

bool check_dehn_property(const DiskDiagram& d) {
  if (d.num_edges() == 0 && d.area() == 0) return true;  // 0-cell
  if (d.area() == 1 && d.single_closed_cell()) return true;
  CellRoles roles = classify_cells(d);
  return !roles.spur_vertices.empty() || !roles.shell_faces.empty();
}

bool area_bound_check(const DiskDiagram& d, int r) {
  if (d.area() < 1) throw PreconditionError("area_bound_check: diagram must have a face");
  for (const auto& f : d.faces) {
    if (static_cast<int>(f.cycle.size()) != r)
      throw PreconditionError("area_bound_check: mixed face perimeters");
  }
  return d.area() <= d.boundary_length() + 1 - r;
}

std::vector<int> tiny_innerpath_shells(const DiskDiagram& d, const std::vector<int>& degrees) {
  std::vector<int> out;
  if (d.single_closed_cell()) return out;
  for (int fi = 0; fi < d.area(); ++fi) {
    int run = max_outer_run(d, fi);
    if (run < 0) continue;
    int L = static_cast<int>(d.faces[static_cast<size_t>(fi)].cycle.size());
    int inner = L - run;  // |S| for the best decomposition
    int n = degrees[static_cast<size_t>(fi)];
    // |S| < |boundary| / n, strict
    if (static_cast<long>(inner) * n < L) out.push_back(fi);
  }
  return out;
}

bool is_ladder(const DiskDiagram& d) {
  // chain elements: closed faces, plus closed edges on no face
  auto cyc_of = d.cycle_of();
  std::vector<char> edge_on_face(static_cast<size_t>(d.num_edges()), 0);
  for (const auto& f : d.faces) {
    for (int dart : f.cycle) edge_on_face[static_cast<size_t>(DiskDiagram::edge_of(dart))] = 1;
  }
  struct Elem {
    std::set<int> vs;
    std::set<int> es;
  };
  std::vector<Elem> elems;
  for (const auto& f : d.faces) {
    Elem el;
    for (int dart : f.cycle) {
      el.vs.insert(d.tail(dart));
      el.vs.insert(d.head(dart));
      el.es.insert(DiskDiagram::edge_of(dart));
    }
    elems.push_back(std::move(el));
  }
  for (int e = 0; e < d.num_edges(); ++e) {
    if (edge_on_face[static_cast<size_t>(e)]) continue;
    Elem el;
    el.vs.insert(d.tail(2 * e));
    el.vs.insert(d.head(2 * e));
    el.es.insert(e);
    elems.push_back(std::move(el));
  }
  int n = static_cast<int>(elems.size());
  if (n < 2) return false;
  // coverage: every vertex in some element (edges/faces are by construction)
  std::vector<char> v_cov(static_cast<size_t>(d.num_vertices), 0);
  for (const auto& el : elems) {
    for (int v : el.vs) v_cov[static_cast<size_t>(v)] = 1;
  }
  for (char b : v_cov) {
    if (!b) return false;
  }
  // intersection graph must be a simple path
  std::vector<std::vector<int>> adj(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      bool meet = false;
      for (int v : elems[static_cast<size_t>(i)].vs) {
        if (elems[static_cast<size_t>(j)].vs.count(v)) {
          meet = true;
          break;
        }
      }
      if (!meet) {
        for (int e : elems[static_cast<size_t>(i)].es) {
          if (elems[static_cast<size_t>(j)].es.count(e)) {
            meet = true;
            break;
          }
        }
      }
      if (meet) {
        adj[static_cast<size_t>(i)].push_back(j);
        adj[static_cast<size_t>(j)].push_back(i);
      }
    }
  }
  int deg1 = 0, edges = 0;
  for (int i = 0; i < n; ++i) {
    int deg = static_cast<int>(adj[static_cast<size_t>(i)].size());
    if (deg > 2 || deg == 0) return false;
    if (deg == 1) ++deg1;
    edges += deg;
  }
  edges /= 2;
  if (deg1 != 2 || edges != n - 1) return false;
  // connectivity
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::deque<int> q{0};
  seen[0] = 1;
  int cnt = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int w : adj[static_cast<size_t>(u)]) {
      if (!seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = 1;
        ++cnt;
        q.push_back(w);
      }
    }
  }
  return cnt == n;
}

bool check_ladder_trichotomy(const DiskDiagram& d, const std::vector<int>& degrees) {
  if (d.num_edges() == 0 && d.area() == 0 && d.num_vertices == 1) return true;
  if (d.area() == 1 && d.single_closed_cell()) return true;
  if (is_ladder(d)) return true;
  CellRoles roles = classify_cells(d);
  auto tiny = tiny_innerpath_shells(d, degrees);
  return static_cast<int>(roles.spur_vertices.size() + tiny.size()) >= 3;
}

// ---------------------------------------------------------------------------
// enumeration

namespace {

struct DiagramSet {
  std::set<std::string> seen;
  std::vector<DiskDiagram> out;

  bool insert(const DiskDiagram& d) {
    std::string code = d.canonical_code();
    if (seen.count(code)) return false;
    seen.insert(code);
    out.push_back(d);
    return true;
  }
};

// the new face takes over the glued outer segment; reducedness is re-checked
// on the shared edges
std::optional<DiskDiagram> try_add_face(const DiskDiagram& d, const Presentation& p, int s, int len,
                                        int relator, int orient, int rot) {
  const CyclicWord& rw = p.relators[static_cast<size_t>(relator)];
  int L = rw.size();
  int B = d.boundary_length();
  if (len > L || len > B) return std::nullopt;
  if (len == B && len == L) return std::nullopt;  // would close a sphere
  auto rel_letter = [&](int k) {
    Letter l = orient > 0 ? rw.at(rot + k) : rw.at(rot - k).inverse();
    return l;
  };
  for (int t = 0; t < len; ++t) {
    if (!(d.label(d.outer[static_cast<size_t>((s + t) % B)]) == rel_letter(t))) return std::nullopt;
  }
  // cap gluing must close up
  int seg_start_v = d.tail(d.outer[static_cast<size_t>(s % B)]);
  int seg_end_v = d.head(d.outer[static_cast<size_t>((s + len - 1) % B)]);
  if (len == L && seg_start_v != seg_end_v) return std::nullopt;

  DiskDiagram nd = d;
  DiskDiagram::Face f;
  f.relator = relator;
  f.orient = orient;
  for (int t = 0; t < len; ++t) f.cycle.push_back(d.outer[static_cast<size_t>((s + t) % B)]);
  std::vector<int> new_darts;
  int prev_v = seg_end_v;
  for (int t = 0; t < L - len; ++t) {
    int next_v = (t == L - len - 1) ? seg_start_v : nd.num_vertices++;
    int dart = static_cast<int>(nd.dart_tail.size());
    nd.dart_tail.push_back(prev_v);
    nd.dart_tail.push_back(next_v);
    Letter l = rel_letter(len + t);
    nd.dart_label.push_back(l);
    nd.dart_label.push_back(l.inverse());
    f.cycle.push_back(dart);
    new_darts.push_back(dart);
    prev_v = next_v;
  }
  // outer walk: segment replaced by reverses of the new darts, in reverse order
  std::vector<int> nouter;
  for (int t = static_cast<int>(new_darts.size()) - 1; t >= 0; --t) {
    nouter.push_back(DiskDiagram::reverse(new_darts[static_cast<size_t>(t)]));
  }
  for (int t = 0; t < B - len; ++t) nouter.push_back(d.outer[static_cast<size_t>((s + len + t) % B)]);
  nd.outer = std::move(nouter);
  nd.faces.push_back(std::move(f));
  if (!is_reduced(nd)) return std::nullopt;
  return nd;
}

DiskDiagram wedge(const DiskDiagram& a, int ai, const DiskDiagram& b, int bi) {
  // merge tail(a.outer[ai]) with tail(b.outer[bi]); b spliced into a's corner
  DiskDiagram out = a;
  int a_vertex = a.outer.empty() ? 0 : a.tail(a.outer[static_cast<size_t>(ai)]);
  int b_vertex = b.outer.empty() ? 0 : b.tail(b.outer[static_cast<size_t>(bi)]);
  int voff = a.num_vertices;
  int doff = static_cast<int>(a.dart_tail.size());
  auto map_v = [&](int v) { return v == b_vertex ? a_vertex : (v < b_vertex ? voff + v : voff + v - 1); };
  out.num_vertices = a.num_vertices + b.num_vertices - 1;
  for (size_t dd = 0; dd < b.dart_tail.size(); ++dd) {
    out.dart_tail.push_back(map_v(b.dart_tail[dd]));
    out.dart_label.push_back(b.dart_label[dd]);
  }
  for (const auto& f : b.faces) {
    DiskDiagram::Face nf = f;
    for (int& dart : nf.cycle) dart += doff;
    out.faces.push_back(std::move(nf));
  }
  std::vector<int> nouter;
  int B1 = a.boundary_length(), B2 = b.boundary_length();
  for (int t = 0; t < B1; ++t) {
    if (t == ai) {
      for (int u = 0; u < B2; ++u) nouter.push_back(b.outer[static_cast<size_t>((bi + u) % B2)] + doff);
    }
    nouter.push_back(a.outer[static_cast<size_t>(t)]);
  }
  out.outer = std::move(nouter);
  return out;
}

DiskDiagram add_pendant(const DiskDiagram& d, int ci, Letter l) {
  DiskDiagram out = d;
  int v = d.outer.empty() ? 0 : d.tail(d.outer[static_cast<size_t>(ci)]);
  int u = out.num_vertices++;
  int dart = static_cast<int>(out.dart_tail.size());
  out.dart_tail.push_back(v);
  out.dart_tail.push_back(u);
  out.dart_label.push_back(l);
  out.dart_label.push_back(l.inverse());
  std::vector<int> nouter;
  int B = d.boundary_length();
  if (B == 0) {
    nouter = {dart, DiskDiagram::reverse(dart)};
  } else {
    for (int t = 0; t < B; ++t) {
      if (t == ci) {
        nouter.push_back(dart);
        nouter.push_back(DiskDiagram::reverse(dart));
      }
      nouter.push_back(d.outer[static_cast<size_t>(t)]);
    }
  }
  out.outer = std::move(nouter);
  return out;
}

}  // namespace

std::vector<DiskDiagram> enumerate_reduced_disks(const Presentation& p, int max_area,
                                                 const EnumerateOptions& opts) {
  int num_letters = 2 * static_cast<int>(p.generators.size());
  std::vector<DiagramSet> by_area(static_cast<size_t>(max_area) + 1);
  by_area[0].insert(single_vertex_diagram());
  // pendant closure within one area level
  auto pendant_close = [&](DiagramSet& level) {
    if (opts.max_pendant_edges <= 0) return;
    size_t head = 0;
    while (head < level.out.size()) {
      DiskDiagram d = level.out[head++];
      // count non-face edges
      std::vector<char> on_face(static_cast<size_t>(d.num_edges()), 0);
      for (const auto& f : d.faces) {
        for (int dart : f.cycle) on_face[static_cast<size_t>(DiskDiagram::edge_of(dart))] = 1;
      }
      int pend = 0;
      for (char b : on_face) pend += b ? 0 : 1;
      if (pend >= opts.max_pendant_edges) continue;
      int corners = std::max(1, d.boundary_length());
      for (int ci = 0; ci < corners; ++ci) {
        for (int lc = 0; lc < num_letters; ++lc) {
          level.insert(add_pendant(d, ci, Letter::from_code(lc)));
        }
      }
    }
  };
  pendant_close(by_area[0]);

  for (int area = 1; area <= max_area; ++area) {
    auto& level = by_area[static_cast<size_t>(area)];
    // seeds
    if (area == 1) {
      for (size_t ri = 0; ri < p.relators.size(); ++ri) {
        level.insert(polygon_diagram(p, static_cast<int>(ri)));
      }
    }
    // face additions
    for (const DiskDiagram& d : by_area[static_cast<size_t>(area - 1)].out) {
      int B = d.boundary_length();
      if (B == 0) continue;
      for (size_t ri = 0; ri < p.relators.size(); ++ri) {
        int L = p.relators[ri].size();
        for (int orient : {+1, -1}) {
          for (int rot = 0; rot < L; ++rot) {
            for (int s = 0; s < B; ++s) {
              for (int len = 1; len <= std::min(L, B); ++len) {
                auto nd = try_add_face(d, p, s, len, static_cast<int>(ri), orient, rot);
                if (nd) level.insert(*nd);
              }
            }
          }
        }
      }
    }
    // wedges of smaller face-bearing diagrams (and trees when pendants on)
    for (int a = 1; a <= area - 1; ++a) {
      int b = area - a;
      if (a > b) break;
      for (const DiskDiagram& d1 : by_area[static_cast<size_t>(a)].out) {
        if (d1.boundary_length() == 0) continue;
        for (const DiskDiagram& d2 : by_area[static_cast<size_t>(b)].out) {
          if (d2.boundary_length() == 0) continue;
          for (int ai = 0; ai < d1.boundary_length(); ++ai) {
            for (int bi = 0; bi < d2.boundary_length(); ++bi) {
              DiskDiagram w = wedge(d1, ai, d2, bi);
              if (is_reduced(w)) level.insert(w);
            }
          }
        }
      }
    }
    pendant_close(level);
  }
  std::vector<DiskDiagram> all;
  for (auto& level : by_area) {
    for (auto& d : level.out) all.push_back(std::move(d));
  }
  std::stable_sort(all.begin(), all.end(), [](const DiskDiagram& a, const DiskDiagram& b) {
    if (a.area() != b.area()) return a.area() < b.area();
    return a.canonical_code() < b.canonical_code();
  });
  return all;
}

// ---------------------------------------------------------------------------
// spherical near-immersions

namespace {

struct SphereSearch {
  const Presentation& p;
  std::vector<std::pair<int, int>> face_cfg;  // (relator, orient)
  std::vector<int> slot_letter;               // letter codes
  std::vector<int> slot_face, slot_pos;
  std::vector<int> match;
  bool found = false;

  explicit SphereSearch(const Presentation& pr) : p(pr) {}

  // near-immersion violation: same relator, opposite orientations, mirrored positions
  bool violates(int a, int b) const {
    int fa = slot_face[static_cast<size_t>(a)], fb = slot_face[static_cast<size_t>(b)];
    const auto& ca = face_cfg[static_cast<size_t>(fa)];
    const auto& cb = face_cfg[static_cast<size_t>(fb)];
    if (ca.first != cb.first || ca.second == cb.second) return false;
    int L = p.relators[static_cast<size_t>(ca.first)].size();
    int pa = slot_pos[static_cast<size_t>(a)], pb = slot_pos[static_cast<size_t>(b)];
    int wa = ca.second > 0 ? pa : L - 1 - pa;
    int wb = cb.second > 0 ? pb : L - 1 - pb;
    return wa == wb;
  }

  bool backtrack(size_t from) {
    size_t s = from;
    while (s < match.size() && match[s] >= 0) ++s;
    if (s == match.size()) return check_closed();
    for (size_t t = s + 1; t < match.size(); ++t) {
      if (match[t] >= 0) continue;
      if (slot_letter[t] != (slot_letter[s] ^ 1)) continue;
      if (violates(static_cast<int>(s), static_cast<int>(t))) continue;
      match[s] = static_cast<int>(t);
      match[t] = static_cast<int>(s);
      if (backtrack(s + 1)) return true;
      match[s] = match[t] = -1;
    }
    return false;
  }

  std::vector<int> corner_class;  // computed in check_closed

  bool check_closed() {
    // corners: (face, pos) = polygon vertex before slot pos
    std::vector<int> corner_of_face_start;
    int total = 0;
    for (const auto& cfg : face_cfg) {
      corner_of_face_start.push_back(total);
      total += p.relators[static_cast<size_t>(cfg.first)].size();
    }
    std::vector<int> par(static_cast<size_t>(total));
    std::iota(par.begin(), par.end(), 0);
    std::function<int(int)> find = [&](int x) {
      return par[static_cast<size_t>(x)] == x ? x : par[static_cast<size_t>(x)] = find(par[static_cast<size_t>(x)]);
    };
    auto unite = [&](int a, int b) { par[static_cast<size_t>(find(a))] = find(b); };
    auto corner = [&](int face, int pos) {
      int L = p.relators[static_cast<size_t>(face_cfg[static_cast<size_t>(face)].first)].size();
      return corner_of_face_start[static_cast<size_t>(face)] + ((pos % L) + L) % L;
    };
    for (size_t s = 0; s < match.size(); ++s) {
      int t = match[s];
      if (t < 0 || static_cast<size_t>(t) < s) continue;
      int fa = slot_face[s], pa = slot_pos[s];
      int fb = slot_face[static_cast<size_t>(t)], pb = slot_pos[static_cast<size_t>(t)];
      unite(corner(fa, pa), corner(fb, pb + 1));
      unite(corner(fa, pa + 1), corner(fb, pb));
    }
    int V = 0;
    for (int i = 0; i < total; ++i) {
      if (find(i) == i) ++V;
    }
    int E = static_cast<int>(match.size()) / 2;
    int F = static_cast<int>(face_cfg.size());
    if (V - E + F != 2) return false;
    // connectivity across faces
    std::vector<int> fpar(face_cfg.size());
    std::iota(fpar.begin(), fpar.end(), 0);
    std::function<int(int)> ffind = [&](int x) {
      return fpar[static_cast<size_t>(x)] == x ? x : fpar[static_cast<size_t>(x)] = ffind(fpar[static_cast<size_t>(x)]);
    };
    for (size_t s = 0; s < match.size(); ++s) {
      if (match[s] >= 0) fpar[static_cast<size_t>(ffind(slot_face[s]))] = ffind(slot_face[static_cast<size_t>(match[s])]);
    }
    for (size_t f = 1; f < face_cfg.size(); ++f) {
      if (ffind(static_cast<int>(f)) != ffind(0)) return false;
    }
    corner_class = std::move(par);
    return true;
  }

  std::optional<SphericalDiagram> run(int max_area) {
    std::vector<int> combo;
    std::function<std::optional<SphericalDiagram>(int, int)> faces_rec =
        [&](int next_min, int remaining) -> std::optional<SphericalDiagram> {
      if (!combo.empty()) {
        // orientations: first face +
        int m = static_cast<int>(combo.size());
        for (int bits = 0; bits < (1 << std::max(0, m - 1)); ++bits) {
          face_cfg.clear();
          for (int f = 0; f < m; ++f) {
            int orient = (f == 0) ? +1 : ((bits >> (f - 1)) & 1 ? -1 : +1);
            face_cfg.emplace_back(combo[static_cast<size_t>(f)], orient);
          }
          slot_letter.clear();
          slot_face.clear();
          slot_pos.clear();
          for (int f = 0; f < m; ++f) {
            const CyclicWord& w = p.relators[static_cast<size_t>(face_cfg[static_cast<size_t>(f)].first)];
            int L = w.size();
            for (int k = 0; k < L; ++k) {
              // slot k of a reversed face traverses cell position L-1-k
              Letter l = face_cfg[static_cast<size_t>(f)].second > 0 ? w.at(k) : w.at(L - 1 - k).inverse();
              slot_letter.push_back(l.code());
              slot_face.push_back(f);
              slot_pos.push_back(k);
            }
          }
          if (slot_letter.size() % 2 != 0) continue;
          match.assign(slot_letter.size(), -1);
          if (backtrack(0)) return build();
        }
      }
      if (remaining == 0) return std::nullopt;
      for (int r = next_min; r < static_cast<int>(p.relators.size()); ++r) {
        combo.push_back(r);
        auto res = faces_rec(r, remaining - 1);
        combo.pop_back();
        if (res) return res;
      }
      return std::nullopt;
    };
    return faces_rec(0, max_area);
  }

  std::optional<SphericalDiagram> build() {
    // vertices = corner classes
    std::vector<int> corner_of_face_start;
    int total = 0;
    for (const auto& cfg : face_cfg) {
      corner_of_face_start.push_back(total);
      total += p.relators[static_cast<size_t>(cfg.first)].size();
    }
    std::function<int(int)> find = [&](int x) {
      return corner_class[static_cast<size_t>(x)] == x ? x
                                                       : corner_class[static_cast<size_t>(x)] = find(corner_class[static_cast<size_t>(x)]);
    };
    auto corner = [&](int face, int pos) {
      int L = p.relators[static_cast<size_t>(face_cfg[static_cast<size_t>(face)].first)].size();
      return corner_of_face_start[static_cast<size_t>(face)] + ((pos % L) + L) % L;
    };
    std::map<int, int> vmap;
    TwoComplexBuilder b;
    for (int i = 0; i < total; ++i) {
      int r = find(i);
      if (!vmap.count(r)) vmap[r] = b.add_vertex();
    }
    // one edge per matched pair; owner = smaller slot id, dart runs along owner
    std::map<int, int> owner_dart;
    auto slot_id = [&](int face, int pos) { return corner_of_face_start[static_cast<size_t>(face)] + pos; };
    for (size_t s = 0; s < match.size(); ++s) {
      int t = match[s];
      if (t < 0 || static_cast<size_t>(t) < s) continue;
      int fa = slot_face[s], pa = slot_pos[s];
      int dart = b.add_edge(vmap[find(corner(fa, pa))], vmap[find(corner(fa, pa + 1))],
                            Letter::from_code(slot_letter[s]));
      owner_dart[static_cast<int>(s)] = dart;
    }
    for (size_t f = 0; f < face_cfg.size(); ++f) {
      std::vector<int> path;
      int L = p.relators[static_cast<size_t>(face_cfg[f].first)].size();
      for (int k = 0; k < L; ++k) {
        int sid = slot_id(static_cast<int>(f), k);
        if (owner_dart.count(sid)) {
          path.push_back(owner_dart[sid]);
        } else {
          path.push_back(TwoComplex::reverse(owner_dart[match[static_cast<size_t>(sid)]]));
        }
      }
      b.add_face(std::move(path), face_cfg[f].first, face_cfg[f].second);
    }
    SphericalDiagram sd;
    sd.complex = b.build();
    return sd;
  }
};

}  // namespace

std::optional<SphericalDiagram> find_spherical_near_immersion(const Presentation& p, int max_area) {
  if (p.relators.empty() || max_area < 1) return std::nullopt;
  SphereSearch search(p);
  return search.run(max_area);
}

}  // namespace collapsar
