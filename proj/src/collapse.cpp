#include "collapsar/collapse.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "collapsar/diagram.hpp"
#include "collapsar/small_cancellation.hpp"
#include "collapsar/runtime.hpp"

namespace collapsar {

namespace {

std::vector<char> spur_blocked(const TwoComplex& c) { return c.vertex_on_face(); }

// unique incident edge of a valence-1 vertex
int incident_edge(const TwoComplex& c, int v) {
  for (int d = 0; d < static_cast<int>(c.dart_tail.size()); ++d) {
    if (c.tail(d) == v) return TwoComplex::edge_of(d);
  }
  return -1;
}

}  // namespace

std::vector<FreeFacePair> free_face_pairs(const TwoComplex& c) {
  std::vector<FreeFacePair> out;
  auto val = c.vertex_valence();
  auto blocked = spur_blocked(c);
  for (int v = 0; v < c.num_vertices; ++v) {
    if (val[static_cast<size_t>(v)] == 1 && !blocked[static_cast<size_t>(v)]) {
      out.push_back(FreeFacePair{FreeFacePair::Kind::spur, v, incident_edge(c, v)});
    }
  }
  auto cnt = c.edge_traversal_count();
  for (int fi = 0; fi < c.num_faces(); ++fi) {
    std::set<int> used;
    for (int d : c.faces[static_cast<size_t>(fi)].path) used.insert(TwoComplex::edge_of(d));
    for (int e : used) {
      if (cnt[static_cast<size_t>(e)] == 1) {
        out.push_back(FreeFacePair{FreeFacePair::Kind::face, e, fi});
      }
    }
  }
  return out;
}

bool pair_valid(const TwoComplex& c, const FreeFacePair& p) {
  auto pairs = free_face_pairs(c);
  return std::find(pairs.begin(), pairs.end(), p) != pairs.end();
}

TwoComplex do_collapse(const TwoComplex& c, const FreeFacePair& p) {
  if (!pair_valid(c, p)) throw PreconditionError("do_collapse: stale free-face pair");
  SubComplex keep(c);
  for (int v = 0; v < c.num_vertices; ++v) keep.v_in[static_cast<size_t>(v)] = 1;
  for (int e = 0; e < c.num_edges(); ++e) keep.e_in[static_cast<size_t>(e)] = 1;
  for (int f = 0; f < c.num_faces(); ++f) keep.f_in[static_cast<size_t>(f)] = 1;
  if (p.kind == FreeFacePair::Kind::spur) {
    keep.v_in[static_cast<size_t>(p.free_cell)] = 0;
    keep.e_in[static_cast<size_t>(p.collapse_cell)] = 0;
  } else {
    keep.e_in[static_cast<size_t>(p.free_cell)] = 0;
    keep.f_in[static_cast<size_t>(p.collapse_cell)] = 0;
  }
  return keep.extract();
}

bool validate_sequence(const TwoComplex& c, const CollapseSequence& seq) {
  std::vector<char> v_alive(static_cast<size_t>(c.num_vertices), 1);
  std::vector<char> e_alive(static_cast<size_t>(c.num_edges()), 1);
  std::vector<char> f_alive(static_cast<size_t>(c.num_faces()), 1);
  auto edge_count = [&](int e) {
    int cnt = 0;
    for (int fi = 0; fi < c.num_faces(); ++fi) {
      if (!f_alive[static_cast<size_t>(fi)]) continue;
      for (int d : c.faces[static_cast<size_t>(fi)].path) {
        if (TwoComplex::edge_of(d) == e) ++cnt;
      }
    }
    return cnt;
  };
  for (const auto& p : seq.steps) {
    if (p.kind == FreeFacePair::Kind::spur) {
      int v = p.free_cell, e = p.collapse_cell;
      if (!v_alive[static_cast<size_t>(v)] || !e_alive[static_cast<size_t>(e)]) return false;
      int valence = 0;
      for (int d = 0; d < static_cast<int>(c.dart_tail.size()); ++d) {
        if (c.tail(d) == v && e_alive[static_cast<size_t>(TwoComplex::edge_of(d))]) ++valence;
      }
      if (valence != 1) return false;
      if (c.tail(2 * e) != v && c.head(2 * e) != v) return false;
      for (int fi = 0; fi < c.num_faces(); ++fi) {
        if (!f_alive[static_cast<size_t>(fi)]) continue;
        for (int d : c.faces[static_cast<size_t>(fi)].path) {
          if (c.tail(d) == v || c.head(d) == v) return false;
        }
      }
      v_alive[static_cast<size_t>(v)] = 0;
      e_alive[static_cast<size_t>(e)] = 0;
    } else {
      int e = p.free_cell, fi = p.collapse_cell;
      if (!e_alive[static_cast<size_t>(e)] || !f_alive[static_cast<size_t>(fi)]) return false;
      if (edge_count(e) != 1) return false;
      bool traversed = false;
      for (int d : c.faces[static_cast<size_t>(fi)].path) traversed = traversed || TwoComplex::edge_of(d) == e;
      if (!traversed) return false;
      e_alive[static_cast<size_t>(e)] = 0;
      f_alive[static_cast<size_t>(fi)] = 0;
    }
  }
  return true;
}

std::vector<int> complex_shell_faces(const TwoComplex& c) {
  std::vector<int> out;
  auto traversal_count = c.edge_traversal_count();
  auto valence = c.vertex_valence();
  // visits of vertices by face paths, with multiplicity
  std::vector<std::vector<int>> vertex_visits(static_cast<size_t>(c.num_vertices));
  for (int fi = 0; fi < c.num_faces(); ++fi) {
    for (int d : c.faces[static_cast<size_t>(fi)].path) {
      vertex_visits[static_cast<size_t>(c.head(d))].push_back(fi);
    }
  }
  for (int fi = 0; fi < c.num_faces(); ++fi) {
    const auto& path = c.faces[static_cast<size_t>(fi)].path;
    int L = static_cast<int>(path.size());
    // exposed positions: the edge is traversed exactly once in the whole complex
    std::vector<char> exposed(static_cast<size_t>(L), 0);
    for (int i = 0; i < L; ++i) {
      exposed[static_cast<size_t>(i)] = traversal_count[static_cast<size_t>(TwoComplex::edge_of(path[static_cast<size_t>(i)]))] == 1;
    }
    // a vertex is free when its star lies inside this face's arc: valence 2 and
    // exactly one face visit (the corner of this arc)
    auto interior_free = [&](int pos_after) {
      int v = c.head(path[static_cast<size_t>(pos_after)]);
      return valence[static_cast<size_t>(v)] == 2 && vertex_visits[static_cast<size_t>(v)].size() == 1;
    };
    bool shell = false;
    for (int s = 0; s < L && !shell; ++s) {
      for (int len = L; 2 * len > L && !shell; --len) {
        bool ok = true;
        for (int t = 0; t < len && ok; ++t) ok = exposed[static_cast<size_t>((s + t) % L)];
        for (int t = 0; t + 1 < len && ok; ++t) ok = interior_free((s + t) % L);
        shell = ok;
      }
    }
    if (shell) out.push_back(fi);
  }
  return out;
}

namespace {

struct FacePhase {
  const TwoComplex& c;
  std::vector<std::map<int, int>> face_edge_mult;  // face -> edge -> multiplicity
  std::vector<char> face_alive, edge_alive;
  std::set<std::vector<unsigned long long>> failed;
  std::vector<FreeFacePair> seq;

  explicit FacePhase(const TwoComplex& cc) : c(cc) {
    face_edge_mult.resize(static_cast<size_t>(c.num_faces()));
    for (int fi = 0; fi < c.num_faces(); ++fi) {
      for (int d : c.faces[static_cast<size_t>(fi)].path) {
        face_edge_mult[static_cast<size_t>(fi)][TwoComplex::edge_of(d)]++;
      }
    }
    face_alive.assign(static_cast<size_t>(c.num_faces()), 1);
    edge_alive.assign(static_cast<size_t>(c.num_edges()), 1);
  }

  std::vector<unsigned long long> key() const {
    std::vector<unsigned long long> k;
    unsigned long long acc = 0;
    int bits = 0;
    auto push = [&](bool b) {
      acc = (acc << 1) | (b ? 1u : 0u);
      if (++bits == 64) {
        k.push_back(acc);
        acc = 0;
        bits = 0;
      }
    };
    for (char b : face_alive) push(b);
    for (char b : edge_alive) push(b);
    if (bits) k.push_back(acc);
    return k;
  }

  std::vector<FreeFacePair> moves() const {
    std::vector<int> cnt(static_cast<size_t>(c.num_edges()), 0);
    std::vector<int> who(static_cast<size_t>(c.num_edges()), -1);
    for (int fi = 0; fi < c.num_faces(); ++fi) {
      if (!face_alive[static_cast<size_t>(fi)]) continue;
      for (const auto& [e, m] : face_edge_mult[static_cast<size_t>(fi)]) {
        cnt[static_cast<size_t>(e)] += m;
        who[static_cast<size_t>(e)] = fi;
      }
    }
    std::vector<FreeFacePair> out;
    for (int e = 0; e < c.num_edges(); ++e) {
      if (edge_alive[static_cast<size_t>(e)] && cnt[static_cast<size_t>(e)] == 1) {
        out.push_back(FreeFacePair{FreeFacePair::Kind::face, e, who[static_cast<size_t>(e)]});
      }
    }
    return out;
  }

  bool solve() {
    bool any_face = false;
    for (char b : face_alive) any_face |= b != 0;
    if (!any_face) return true;
    auto k = key();
    if (failed.count(k)) return false;
    for (const auto& mv : moves()) {
      edge_alive[static_cast<size_t>(mv.free_cell)] = 0;
      face_alive[static_cast<size_t>(mv.collapse_cell)] = 0;
      seq.push_back(mv);
      if (solve()) return true;
      seq.pop_back();
      edge_alive[static_cast<size_t>(mv.free_cell)] = 1;
      face_alive[static_cast<size_t>(mv.collapse_cell)] = 1;
    }
    failed.insert(std::move(k));
    return false;
  }
};

}  // namespace

std::optional<CollapseSequence> collapses_to_graph(const TwoComplex& c) {
  FacePhase fp(c);
  if (!fp.solve()) return std::nullopt;
  CollapseSequence s;
  s.steps = fp.seq;
  return s;
}

std::optional<CollapseSequence> collapses_to_point(const TwoComplex& c) {
  if (c.num_vertices == 0 || c.num_components() != 1) return std::nullopt;
  FacePhase fp(c);
  if (!fp.solve()) return std::nullopt;
  // remaining graph must be a tree; peel leaves
  int alive_edges = 0;
  for (char b : fp.edge_alive) alive_edges += b;
  if (c.num_vertices - alive_edges != 1) return std::nullopt;
  CollapseSequence s;
  s.steps = fp.seq;
  std::vector<char> v_alive(static_cast<size_t>(c.num_vertices), 1);
  std::vector<char> e_alive = fp.edge_alive;
  for (;;) {
    int leaf = -1, leaf_edge = -1;
    for (int v = 0; v < c.num_vertices && leaf < 0; ++v) {
      if (!v_alive[static_cast<size_t>(v)]) continue;
      int deg = 0, le = -1;
      for (int e = 0; e < c.num_edges(); ++e) {
        if (!e_alive[static_cast<size_t>(e)]) continue;
        if (c.tail(2 * e) == v) {
          ++deg;
          le = e;
        }
        if (c.head(2 * e) == v) {
          ++deg;
          le = e;
        }
      }
      if (deg == 1) {
        leaf = v;
        leaf_edge = le;
      }
    }
    if (leaf < 0) break;
    s.steps.push_back(FreeFacePair{FreeFacePair::Kind::spur, leaf, leaf_edge});
    v_alive[static_cast<size_t>(leaf)] = 0;
    e_alive[static_cast<size_t>(leaf_edge)] = 0;
  }
  for (char b : e_alive) {
    if (b) return std::nullopt;  // cycle left over
  }
  return s;
}

int count_collapsible_cells(const TwoComplex& c) {
  std::set<std::pair<int, int>> cells;  // (dim, id)
  for (const auto& p : free_face_pairs(c)) {
    cells.insert({p.kind == FreeFacePair::Kind::spur ? 1 : 2, p.collapse_cell});
  }
  return static_cast<int>(cells.size());
}

bool is_trivial_complex(const TwoComplex& c) {
  if (c.num_faces() == 0 && c.num_edges() == 0) return c.num_vertices == 1;
  if (c.num_faces() == 0 && c.num_edges() == 1) {
    int t = c.tail(0), h = c.head(0);
    return c.num_vertices == (t == h ? 1 : 2);
  }
  if (c.num_faces() != 1) return false;
  std::vector<char> e_on(static_cast<size_t>(c.num_edges()), 0);
  std::vector<char> v_on(static_cast<size_t>(c.num_vertices), 0);
  for (int d : c.faces[0].path) {
    e_on[static_cast<size_t>(TwoComplex::edge_of(d))] = 1;
    v_on[static_cast<size_t>(c.tail(d))] = 1;
  }
  for (char b : e_on) {
    if (!b) return false;
  }
  for (char b : v_on) {
    if (!b) return false;
  }
  auto cnt = c.edge_traversal_count();
  for (int e = 0; e < c.num_edges(); ++e) {
    if (cnt[static_cast<size_t>(e)] == 1) return true;
  }
  return false;
}

namespace {

bool union_undercollapses(const TwoComplex& cover, const std::vector<int>& subset) {
  SubComplex sc(cover);
  for (int fi : subset) sc.add_closed_face(fi);
  return count_collapsible_cells(sc.extract()) < static_cast<int>(subset.size());
}

}  // namespace

CollapsingVerdict check_n_collapsing(const TwoComplex& cover_fragment, const std::vector<int>& faces,
                                     int n) {
  if (n < 1) throw PreconditionError("check_n_collapsing: n must be >= 1");
  CollapsingVerdict out;
  out.bound = n;
  for (int m = 1; m <= n; ++m) {
    // parallel over the first chosen face; the reduce keeps the lexicographically
    // first witness so results do not depend on the thread count
    std::vector<std::vector<int>> found(faces.size());
    parallel_chunks(static_cast<int>(faces.size()), [&](int lo, int hi) {
      for (int i0 = lo; i0 < hi; ++i0) {
        std::vector<int> subset{faces[static_cast<size_t>(i0)]};
        std::function<bool(size_t, int)> rec = [&](size_t from, int need) -> bool {
          if (need == 0) return union_undercollapses(cover_fragment, subset);
          for (size_t i = from; i < faces.size(); ++i) {
            subset.push_back(faces[i]);
            if (rec(i + 1, need - 1)) return true;
            subset.pop_back();
          }
          return false;
        };
        if (m == 1 ? union_undercollapses(cover_fragment, subset)
                   : rec(static_cast<size_t>(i0) + 1, m - 1)) {
          found[static_cast<size_t>(i0)] = subset;
        }
      }
    });
    for (const auto& witness : found) {
      if (witness.empty()) continue;
      SubComplex sc(cover_fragment);
      for (int fi : witness) sc.add_closed_face(fi);
      TwoComplex y = sc.extract();
      out.status = CollapsingVerdict::Status::refuted;
      std::ostringstream os;
      os << witness.size() << "-face union with " << count_collapsible_cells(y)
         << " collapsible cells";
      out.provenance = os.str();
      out.witness = std::move(y);
      out.witness_faces = witness;
      return out;
    }
  }
  out.status = CollapsingVerdict::Status::certified;
  std::ostringstream os;
  os << "all unions of m <= " << n << " closed faces admit m distinct collapses (" << faces.size()
     << " faces examined)";
  out.provenance = os.str();
  return out;
}

// ---------------------------------------------------------------------------
// folding, amalgams, and the bicollapsibility witness search

namespace {

struct DartDSU {
  std::vector<int> vpar, dpar;
  explicit DartDSU(int nv, int nd) : vpar(static_cast<size_t>(nv)), dpar(static_cast<size_t>(nd)) {
    std::iota(vpar.begin(), vpar.end(), 0);
    std::iota(dpar.begin(), dpar.end(), 0);
  }
  int vfind(int x) { return vpar[static_cast<size_t>(x)] == x ? x : vpar[static_cast<size_t>(x)] = vfind(vpar[static_cast<size_t>(x)]); }
  int dfind(int x) { return dpar[static_cast<size_t>(x)] == x ? x : dpar[static_cast<size_t>(x)] = dfind(dpar[static_cast<size_t>(x)]); }
  void vunite(int a, int b) { vpar[static_cast<size_t>(vfind(a))] = vfind(b); }
  bool dunite_sym(const TwoComplex& c, int a, int b) {
    a = dfind(a);
    b = dfind(b);
    if (a == b) return false;
    dpar[static_cast<size_t>(a)] = b;
    vunite(c.tail(a), c.tail(b));
    dunite_sym(c, TwoComplex::reverse(a), TwoComplex::reverse(b));
    return true;
  }
};

// Quotient by the dart DSU, then fold to make the 1-skeleton locally
// injective.  Fails when an edge gets identified with its own reverse.
std::optional<TwoComplex> quotient_and_fold(const TwoComplex& c, DartDSU& dsu) {
  for (;;) {
    // vertex merges induced by dart merges
    bool changed = true;
    while (changed) {
      changed = false;
      for (int d = 0; d < static_cast<int>(c.dart_tail.size()); ++d) {
        int r = dsu.dfind(d);
        if (dsu.vfind(c.tail(d)) != dsu.vfind(c.tail(r))) {
          dsu.vunite(c.tail(d), c.tail(r));
          changed = true;
        }
      }
    }
    // fold step: same tail class, same label, distinct dart classes
    std::map<std::pair<int, int>, int> first;  // (vclass, label code) -> dart class
    int fold_a = -1, fold_b = -1;
    for (int d = 0; d < static_cast<int>(c.dart_tail.size()) && fold_a < 0; ++d) {
      int dc = dsu.dfind(d);
      if (dc != d) continue;  // class representatives only
      int vc = dsu.vfind(c.tail(d));
      int lc = c.label(d).code();
      auto key = std::make_pair(vc, lc);
      auto it = first.find(key);
      if (it == first.end()) {
        first[key] = dc;
      } else if (it->second != dc) {
        fold_a = it->second;
        fold_b = dc;
      }
    }
    if (fold_a < 0) break;
    dsu.dunite_sym(c, fold_a, fold_b);
  }
  // rebuild
  TwoComplexBuilder b;
  std::map<int, int> vmap;
  for (int v = 0; v < c.num_vertices; ++v) {
    int r = dsu.vfind(v);
    if (!vmap.count(r)) vmap[r] = b.add_vertex();
  }
  std::map<int, int> dmap;
  for (int d = 0; d < static_cast<int>(c.dart_tail.size()); ++d) {
    int r = dsu.dfind(d);
    if (dmap.count(r)) continue;
    int rr = dsu.dfind(TwoComplex::reverse(r));
    if (rr == r) return std::nullopt;  // edge folded onto its own reverse
    if (dmap.count(rr)) {
      dmap[r] = TwoComplex::reverse(dmap[rr]);
    } else {
      int nd = b.add_edge(vmap[dsu.vfind(c.tail(r))], vmap[dsu.vfind(c.head(r))], c.label(r));
      dmap[r] = nd;
    }
  }
  for (const auto& f : c.faces) {
    std::vector<int> path;
    for (int d : f.path) path.push_back(dmap[dsu.dfind(d)]);
    b.add_face(std::move(path), f.relator, f.orient);
  }
  return b.build();
}

// Face slot -> boundary position of the relator cell, under the face's
// (orient, rot) reading.
struct FaceReading {
  int relator;
  int orient;
  int rot;
  int len;
  int cell_pos(int k) const {
    int m = orient > 0 ? (rot + k) % len : ((rot - k) % len + len) % len;
    return m;
  }
  int cell_corner_after(int k) const {
    return orient > 0 ? (rot + k + 1) % len : ((rot - k) % len + len) % len;
  }
};

bool is_immersed_over(const TwoComplex& y, const std::vector<FaceReading>& readings) {
  // (i) folded 1-skeleton
  {
    std::set<std::pair<int, int>> seen;
    for (int d = 0; d < static_cast<int>(y.dart_tail.size()); ++d) {
      auto key = std::make_pair(y.tail(d), y.label(d).code());
      if (seen.count(key)) return false;
      seen.insert(key);
    }
  }
  // (ii) edge-side injectivity: no two traversals land on one cell side
  {
    std::map<int, std::set<std::pair<int, int>>> sides;  // edge -> {(relator, cell pos)}
    for (size_t fi = 0; fi < y.faces.size(); ++fi) {
      const auto& path = y.faces[fi].path;
      const auto& rd = readings[fi];
      for (size_t k = 0; k < path.size(); ++k) {
        int e = TwoComplex::edge_of(path[k]);
        auto side = std::make_pair(rd.relator, rd.cell_pos(static_cast<int>(k)));
        if (sides[e].count(side)) return false;
        sides[e].insert(side);
      }
    }
  }
  // (iii) corner injectivity at vertices
  {
    std::map<int, std::set<std::pair<int, int>>> corners;  // vertex -> {(relator, cell corner)}
    for (size_t fi = 0; fi < y.faces.size(); ++fi) {
      const auto& path = y.faces[fi].path;
      const auto& rd = readings[fi];
      for (size_t k = 0; k < path.size(); ++k) {
        int v = y.head(path[k]);
        auto corner = std::make_pair(rd.relator, rd.cell_corner_after(static_cast<int>(k)));
        if (corners[v].count(corner)) return false;
        corners[v].insert(corner);
      }
    }
  }
  return true;
}

struct Amalgam {
  TwoComplex complex;
  std::vector<FaceReading> readings;
};

// Two relator polygons glued along a length-l common boundary path, folded.
std::optional<Amalgam> build_amalgam(const Presentation& p, int ri, int start_i, int rj, int orient_j,
                                     int rot_j, int len) {
  const CyclicWord& wi = p.relators[static_cast<size_t>(ri)];
  const CyclicWord& wj = p.relators[static_cast<size_t>(rj)];
  int Li = wi.size(), Lj = wj.size();
  if (len > Li || len > Lj) return std::nullopt;
  auto letter_j = [&](int k) {
    return orient_j > 0 ? wj.at(rot_j + k) : wj.at(rot_j - k).inverse();
  };
  // face j traverses the shared path opposite to face i:
  // slot t of j must carry the inverse of slot (start_i + len - 1 - t) of i
  for (int t = 0; t < len; ++t) {
    if (!(letter_j(t) == wi.at(start_i + len - 1 - t).inverse())) return std::nullopt;
  }
  TwoComplexBuilder b;
  int v0 = b.add_vertices(Li);
  int v1 = b.add_vertices(Lj);
  std::vector<int> darts_i(static_cast<size_t>(Li)), darts_j(static_cast<size_t>(Lj));
  for (int k = 0; k < Li; ++k) darts_i[static_cast<size_t>(k)] = b.add_edge(v0 + k, v0 + (k + 1) % Li, wi.at(k));
  for (int k = 0; k < Lj; ++k) darts_j[static_cast<size_t>(k)] = b.add_edge(v1 + k, v1 + (k + 1) % Lj, letter_j(k));
  b.add_face(darts_i, ri, +1);
  b.add_face(darts_j, rj, orient_j);
  TwoComplex raw = b.build();
  DartDSU dsu(raw.num_vertices, static_cast<int>(raw.dart_tail.size()));
  for (int t = 0; t < len; ++t) {
    int di = darts_i[static_cast<size_t>((start_i + len - 1 - t) % Li)];
    dsu.dunite_sym(raw, darts_j[static_cast<size_t>(t)], TwoComplex::reverse(di));
  }
  auto folded = quotient_and_fold(raw, dsu);
  if (!folded) return std::nullopt;
  Amalgam am;
  am.complex = std::move(*folded);
  am.readings.push_back(FaceReading{ri, +1, 0, Li});
  am.readings.push_back(FaceReading{rj, orient_j, rot_j, Lj});
  return am;
}

}  // namespace

CollapsingVerdict certify_bicollapsible(const Presentation& p, const CertifyBudget& budget) {
  CollapsingVerdict out;
  out.bound = budget.max_witness_faces;

  // certification route: small cancellation
  CollapsingVerdict sc = certify_3_collapsing(p);
  if (sc.certified()) {
    sc.provenance += "; 3-collapsing => 2-collapsing => bicollapsible";
    return sc;
  }

  // certification route: staggered without torsion
  bool reduced = true, no_powers = true;
  for (const auto& r : p.relators) {
    reduced = reduced && r.cyclically_reduced();
    if (reduced) no_powers = no_powers && !is_proper_power(r);
  }
  if (reduced && no_powers && is_staggered(p)) {
    out.status = CollapsingVerdict::Status::certified;
    out.provenance = "staggered without torsion";
    return out;
  }

  // refutation route: spherical near-immersion refutes DR, hence bicollapsibility
  if (auto sphere = find_spherical_near_immersion(p, budget.max_sphere_area)) {
    out.status = CollapsingVerdict::Status::refuted;
    out.provenance = "spherical near-immersion found (not diagrammatically reducible)";
    out.witness = std::move(sphere->complex);
    return out;
  }

  // refutation route: simply-connected immersed two-face amalgam with < 2 collapses
  if (budget.max_witness_faces >= 2) {
    int R = static_cast<int>(p.relators.size());
    for (int ri = 0; ri < R; ++ri) {
      for (int rj = ri; rj < R; ++rj) {
        int Li = p.relators[static_cast<size_t>(ri)].size();
        int Lj = p.relators[static_cast<size_t>(rj)].size();
        for (int start_i = 0; start_i < Li; ++start_i) {
          for (int orient_j : {+1, -1}) {
            for (int rot_j = 0; rot_j < Lj; ++rot_j) {
              for (int len = std::min(Li, Lj); len >= 1; --len) {
                auto am = build_amalgam(p, ri, start_i, rj, orient_j, rot_j, len);
                if (!am) continue;
                if (am->complex.num_faces() != 2) continue;
                if (!is_immersed_over(am->complex, am->readings)) continue;
                if (is_trivial_complex(am->complex)) continue;
                if (count_collapsible_cells(am->complex) >= 2) continue;
                if (!collapses_to_point(am->complex)) continue;  // pi_1 = 1 certificate
                out.status = CollapsingVerdict::Status::refuted;
                std::ostringstream os;
                os << "simply-connected immersed complex (relators " << ri << "," << rj << ") with "
                   << count_collapsible_cells(am->complex) << " collapsible cell(s)";
                out.provenance = os.str();
                out.witness = std::move(am->complex);
                return out;
              }
            }
          }
        }
      }
    }
  }

  out.status = CollapsingVerdict::Status::inconclusive;
  std::ostringstream os;
  os << "no certification route applies; no witness within " << budget.max_witness_faces
     << " faces / sphere area " << budget.max_sphere_area;
  out.provenance = os.str();
  return out;
}

BranchedPresentation certified_branch(const Presentation& p, const std::vector<int>& exponents,
                                      const CertifyBudget& budget) {
  BranchedPresentation bp = branch(p, exponents);
  bp.base_certified_bicollapsible = certify_bicollapsible(p, budget).certified();
  return bp;
}

}  // namespace collapsar
