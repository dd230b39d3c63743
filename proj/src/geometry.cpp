#include "collapsar/geometry.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace collapsar {

EqualityOracle dehn_equality_oracle(const BranchedPresentation& b) {
  return [b](const Word& w) { return is_trivial(w, b) ? Tri::yes : Tri::no; };
}

EqualityOracle cyclic_group_oracle(int n) {
  return [n](const Word& w) {
    long long s = 0;
    for (const auto& l : w.letters()) s += l.sign;
    return (s % n + n) % n == 0 ? Tri::yes : Tri::no;
  };
}

EqualityOracle free_abelian_rank2_oracle() {
  return [](const Word& w) {
    long long x = 0, y = 0;
    for (const auto& l : w.letters()) {
      if (l.gen == 0) x += l.sign;
      if (l.gen == 1) y += l.sign;
    }
    return (x == 0 && y == 0) ? Tri::yes : Tri::no;
  };
}

EqualityOracle free_group_oracle() {
  return [](const Word& w) { return free_reduce(w).empty() ? Tri::yes : Tri::no; };
}

EqualityOracle trivial_group_oracle() {
  return [](const Word&) { return Tri::yes; };
}

EqualityOracle bounded_diagram_oracle(const Presentation& p, int max_area, int max_len) {
  auto oracle = std::make_shared<BoundedOracle>(p, max_area, max_len);
  auto abelian = std::make_shared<AbelianTester>(p);
  int k = static_cast<int>(p.generators.size());
  return [oracle, abelian, k](const Word& w) {
    if (!abelian->maybe_trivial(exponent_vector(w, k))) return Tri::no;
    return oracle->query(w);  // yes or unknown (refusal)
  };
}

std::vector<int> CayleyBall::safe_faces() const {
  std::vector<int> out;
  for (int fi = 0; fi < static_cast<int>(face_info.size()); ++fi) {
    if (face_safe(fi)) out.push_back(fi);
  }
  return out;
}

std::vector<int> CayleyBall::bfs_distances(int from) const {
  std::vector<int> d(static_cast<size_t>(complex.num_vertices), -1);
  std::deque<int> q{from};
  d[static_cast<size_t>(from)] = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int dart = 0; dart < static_cast<int>(complex.dart_tail.size()); ++dart) {
      if (complex.tail(dart) != u) continue;
      int v = complex.head(dart);
      if (d[static_cast<size_t>(v)] < 0) {
        d[static_cast<size_t>(v)] = d[static_cast<size_t>(u)] + 1;
        q.push_back(v);
      }
    }
  }
  return d;
}

namespace {

std::vector<int> dart_cycle_key(const std::vector<int>& path) {
  size_t n = path.size();
  std::vector<int> best;
  for (int refl = 0; refl < 2; ++refl) {
    std::vector<int> cyc(n);
    for (size_t i = 0; i < n; ++i) {
      cyc[i] = refl ? TwoComplex::reverse(path[n - 1 - i]) : path[i];
    }
    for (size_t r = 0; r < n; ++r) {
      std::vector<int> rot(n);
      for (size_t i = 0; i < n; ++i) rot[i] = cyc[(r + i) % n];
      if (best.empty() || rot < best) best = rot;
    }
  }
  return best;
}

struct BallBuilder {
  const BranchedPresentation& pres;
  EqualityOracle oracle;
  int radius;
  AbelianTester abelian;

  std::vector<Word> words;
  std::vector<int> dist;
  std::vector<std::vector<long long>> expvec;
  // growing 1-skeleton
  std::vector<int> dart_tail;
  std::vector<Letter> dart_label;

  BallBuilder(const BranchedPresentation& b, int r, EqualityOracle o)
      : pres(b), oracle(std::move(o)), radius(r), abelian(abelian_tester(b)) {}

  static AbelianTester abelian_tester(const BranchedPresentation& b) {
    Presentation q;
    q.generators = b.base.generators;
    q.relators = b.relators;
    return AbelianTester(q);
  }

  int head_of(int d) const { return dart_tail[static_cast<size_t>(d ^ 1)]; }

  bool has_dart(int v, Letter l) const {
    for (int d = 0; d < static_cast<int>(dart_tail.size()); ++d) {
      if (dart_tail[static_cast<size_t>(d)] == v && dart_label[static_cast<size_t>(d)] == l) return true;
    }
    return false;
  }

  int add_edge(int t, int h, Letter l) {
    int d = static_cast<int>(dart_tail.size());
    dart_tail.push_back(t);
    dart_tail.push_back(h);
    dart_label.push_back(l);
    dart_label.push_back(l.inverse());
    return d;
  }

  bool equal_words(const Word& a, const std::vector<long long>& ea, int u) {
    const auto& eu = expvec[static_cast<size_t>(u)];
    std::vector<long long> diff(ea.size());
    for (size_t i = 0; i < ea.size(); ++i) diff[i] = ea[i] - eu[i];
    if (!abelian.maybe_trivial(diff)) return false;
    Word test = a;
    test.append(words[static_cast<size_t>(u)].inverse());
    Tri t = oracle(free_reduce(test));
    if (t == Tri::unknown) throw PreconditionError("build_ball: oracle insufficient for this radius");
    return t == Tri::yes;
  }

  void run() {
    int k = static_cast<int>(pres.base.generators.size());
    words.push_back(Word());
    dist.push_back(0);
    expvec.push_back(exponent_vector(Word(), k));
    std::vector<std::vector<int>> level{{0}};
    for (int d = 0; d <= radius; ++d) {
      if (d >= static_cast<int>(level.size())) break;
      std::vector<int> next;
      for (int v : level[static_cast<size_t>(d)]) {
        for (int code = 0; code < 2 * k; ++code) {
          Letter x = Letter::from_code(code);
          if (has_dart(v, x)) continue;
          Word w = words[static_cast<size_t>(v)];
          w.push_back(x);
          w = free_reduce(w);
          auto ew = exponent_vector(w, k);
          int target = -1;
          // candidates at levels d-1, d, d+1
          auto scan = [&](const std::vector<int>& cand) {
            for (int u : cand) {
              if (target >= 0) break;
              if (equal_words(w, ew, u)) target = u;
            }
          };
          if (d >= 1) scan(level[static_cast<size_t>(d - 1)]);
          if (target < 0) scan(level[static_cast<size_t>(d)]);
          if (target < 0) scan(next);
          if (target < 0) {
            if (d == radius) continue;  // would leave the ball
            target = static_cast<int>(words.size());
            words.push_back(w);
            dist.push_back(d + 1);
            expvec.push_back(ew);
            next.push_back(target);
          }
          add_edge(v, target, x);
        }
      }
      if (!next.empty()) level.push_back(std::move(next));
    }
  }
};

}  // namespace

CayleyBall build_ball(const BranchedPresentation& b, int radius, EqualityOracle oracle) {
  if (radius < 0) throw PreconditionError("build_ball: radius must be >= 0");
  BallBuilder builder(b, radius, oracle);
  builder.run();

  TwoComplexBuilder tb;
  tb.add_vertices(static_cast<int>(builder.words.size()));
  for (int e = 0; e < static_cast<int>(builder.dart_tail.size()) / 2; ++e) {
    tb.add_edge(builder.dart_tail[static_cast<size_t>(2 * e)], builder.dart_tail[static_cast<size_t>(2 * e + 1)],
                builder.dart_label[static_cast<size_t>(2 * e)]);
  }
  // one face per relator-power cycle fully inside the ball
  std::set<std::vector<int>> cycle_keys;
  std::vector<std::pair<std::vector<int>, int>> face_paths;  // (darts, relator)
  TwoComplex skeleton = tb.build();
  auto dart_from = [&](int v, Letter l) {
    for (int dd = 0; dd < static_cast<int>(skeleton.dart_tail.size()); ++dd) {
      if (skeleton.tail(dd) == v && skeleton.label(dd) == l) return dd;
    }
    return -1;
  };
  for (int v = 0; v < skeleton.num_vertices; ++v) {
    for (size_t ri = 0; ri < b.relators.size(); ++ri) {
      const CyclicWord& r = b.relators[ri];
      std::vector<int> path;
      int cur = v;
      bool ok = true;
      for (int i = 0; i < r.size() && ok; ++i) {
        int dd = dart_from(cur, r.at(i));
        if (dd < 0) {
          ok = false;
        } else {
          path.push_back(dd);
          cur = skeleton.head(dd);
        }
      }
      if (!ok || cur != v) continue;
      auto key = dart_cycle_key(path);
      if (cycle_keys.count(key)) continue;
      cycle_keys.insert(key);
      face_paths.emplace_back(path, static_cast<int>(ri));
    }
  }
  for (auto& [path, ri] : face_paths) tb.add_face(path, ri, +1);

  CayleyBall ball;
  ball.complex = tb.build();
  ball.pres = b;
  ball.oracle = std::move(oracle);
  ball.radius = radius;
  ball.safe_radius = radius - (b.max_relator_length() + 1) / 2;
  ball.vertex_word = std::move(builder.words);
  ball.dist = std::move(builder.dist);
  for (const auto& f : ball.complex.faces) {
    CayleyBall::FaceInfo info;
    info.relator = f.relator;
    info.min_dist = ball.radius + 1;
    info.max_dist = 0;
    for (int dd : f.path) {
      int v = ball.complex.tail(dd);
      info.cycle_vertices.push_back(v);
      info.min_dist = std::min(info.min_dist, ball.dist[static_cast<size_t>(v)]);
      info.max_dist = std::max(info.max_dist, ball.dist[static_cast<size_t>(v)]);
    }
    ball.face_info.push_back(std::move(info));
  }
  return ball;
}

const CayleyBall::EdgeCover& CayleyBall::edge_cover(int e) const {
  auto it = cover_cache_.find(e);
  if (it != cover_cache_.end()) return it->second;
  EdgeCover cover;
  cover.complete = true;
  std::set<std::vector<int>> seen;
  auto dart_from = [&](int v, Letter l) {
    for (int dd = 0; dd < static_cast<int>(complex.dart_tail.size()); ++dd) {
      if (complex.tail(dd) == v && complex.label(dd) == l) return dd;
    }
    return -1;
  };
  for (size_t ri = 0; ri < pres.relators.size(); ++ri) {
    for (int orient : {+1, -1}) {
      CyclicWord r = orient > 0 ? pres.relators[ri] : pres.relators[ri].inverse();
      int L = r.size();
      for (int t = 0; t < L; ++t) {
        if (!(r.at(t) == complex.label(2 * e))) continue;
        // trace the cycle entering dart 2e at position t
        std::vector<int> path;
        int cur = complex.tail(2 * e);
        bool inside = true;
        for (int s = 0; s < L && inside; ++s) {
          int dd = dart_from(cur, r.at(t + s));
          if (dd < 0) {
            inside = false;
          } else {
            path.push_back(dd);
            cur = complex.head(dd);
          }
        }
        if (!inside) {
          cover.complete = false;
          continue;
        }
        auto key = dart_cycle_key(path);
        if (seen.count(key)) continue;
        seen.insert(key);
        cover.cycles += 1;
        for (int dd : path) {
          if (TwoComplex::edge_of(dd) == e) cover.traversals += 1;
        }
      }
    }
  }
  return cover_cache_.emplace(e, cover).first->second;
}

CollapsingVerdict check_n_collapsing(const CayleyBall& ball, int n) {
  if (ball.safe_radius < 0)
    throw PreconditionError("check_n_collapsing: ball has no safe region for the relator length");
  auto verdict = check_n_collapsing(ball.complex, ball.safe_faces(), n);
  std::ostringstream os;
  os << verdict.provenance << "; safe radius " << ball.safe_radius << " of ball radius " << ball.radius;
  verdict.provenance = os.str();
  return verdict;
}

std::vector<Spider> spiders(const CayleyBall& ball) {
  std::vector<Spider> out;
  for (size_t fi = 0; fi < ball.complex.faces.size(); ++fi) {
    int ri = ball.complex.faces[fi].relator;
    int base_len = ball.pres.base.relators[static_cast<size_t>(ri)].size();
    int n = ball.pres.exponents[static_cast<size_t>(ri)];
    for (int o = 0; o < base_len; ++o) {
      out.push_back(Spider{static_cast<int>(fi), o, n});
    }
  }
  return out;
}

namespace {

struct GammaGraph {
  // node ids: centers first, then edge midpoints
  std::vector<std::pair<int, int>> centers;  // (face, orbit)
  std::map<std::pair<int, int>, int> center_id;
  std::map<int, int> midpoint_id;  // edge -> node
  std::vector<int> midpoint_edge;
  std::vector<DivisiveTree::Leg> legs;

  int node_count() const { return static_cast<int>(centers.size() + midpoint_edge.size()); }
  int mid_node(int idx) const { return static_cast<int>(centers.size()) + idx; }
};

GammaGraph build_gamma(const CayleyBall& ball) {
  GammaGraph g;
  for (size_t fi = 0; fi < ball.complex.faces.size(); ++fi) {
    const auto& face = ball.complex.faces[fi];
    int ri = face.relator;
    int base_len = ball.pres.base.relators[static_cast<size_t>(ri)].size();
    int N = static_cast<int>(face.path.size());
    for (int p = 0; p < N; ++p) {
      int orbit = p % base_len;
      auto ckey = std::make_pair(static_cast<int>(fi), orbit);
      if (!g.center_id.count(ckey)) {
        g.center_id[ckey] = static_cast<int>(g.centers.size());
        g.centers.push_back(ckey);
      }
      int e = TwoComplex::edge_of(face.path[static_cast<size_t>(p)]);
      if (!g.midpoint_id.count(e)) {
        g.midpoint_id[e] = static_cast<int>(g.midpoint_edge.size());
        g.midpoint_edge.push_back(e);
      }
      g.legs.push_back(DivisiveTree::Leg{static_cast<int>(fi), orbit, p, e});
    }
  }
  return g;
}

}  // namespace

std::vector<DivisiveTree> divisive_trees(const CayleyBall& ball) {
  GammaGraph g = build_gamma(ball);
  int n = g.node_count();
  std::vector<int> par(static_cast<size_t>(n));
  std::iota(par.begin(), par.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return par[static_cast<size_t>(x)] == x ? x : par[static_cast<size_t>(x)] = find(par[static_cast<size_t>(x)]);
  };
  for (const auto& leg : g.legs) {
    int c = g.center_id[{leg.face, leg.orbit}];
    int m = g.mid_node(g.midpoint_id[leg.edge]);
    par[static_cast<size_t>(find(c))] = find(m);
  }
  std::map<int, DivisiveTree> trees;
  for (const auto& leg : g.legs) {
    int root = find(g.center_id[{leg.face, leg.orbit}]);
    trees[root].legs.push_back(leg);
  }
  std::vector<DivisiveTree> out;
  for (auto& [root, t] : trees) {
    (void)root;
    std::set<std::pair<int, int>> cs;
    std::set<int> feet;
    for (const auto& leg : t.legs) {
      cs.insert({leg.face, leg.orbit});
      feet.insert(leg.edge);
    }
    t.centers.assign(cs.begin(), cs.end());
    t.feet.assign(feet.begin(), feet.end());
    int nodes = static_cast<int>(t.centers.size() + t.feet.size());
    t.acyclic = static_cast<int>(t.legs.size()) == nodes - 1;
    std::set<int> center_faces;
    bool faces_distinct = true;
    for (const auto& c : t.centers) {
      if (!center_faces.insert(c.first).second) faces_distinct = false;
    }
    t.embedded = t.acyclic && faces_distinct;
    t.partial = false;
    for (int e : t.feet) {
      if (!ball.edge_cover(e).complete) t.partial = true;
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Wall> walls_of_trees(const CayleyBall& ball, const std::vector<DivisiveTree>& trees) {
  std::vector<Wall> out;
  for (size_t ti = 0; ti < trees.size(); ++ti) {
    const DivisiveTree& tree = trees[ti];
    // legs per face, by boundary position
    std::map<int, std::vector<int>> face_positions;
    for (const auto& leg : tree.legs) face_positions[leg.face].push_back(leg.position);
    // wall-graph nodes: (edge, side)
    std::map<WallCrossing, int> node_id;
    std::vector<WallCrossing> nodes;
    auto node = [&](int edge, int side) {
      WallCrossing c{edge, side};
      auto it = node_id.find(c);
      if (it != node_id.end()) return it->second;
      int id = static_cast<int>(nodes.size());
      node_id[c] = id;
      nodes.push_back(c);
      return id;
    };
    struct Arc {
      int a, b, face;  // face = -1 for edge bridges
    };
    std::vector<Arc> arcs;
    for (auto& [face, positions] : face_positions) {
      std::sort(positions.begin(), positions.end());
      const auto& path = ball.complex.faces[static_cast<size_t>(face)].path;
      int m = static_cast<int>(positions.size());
      for (int i = 0; i < m; ++i) {
        int p = positions[static_cast<size_t>(i)];
        int q = positions[static_cast<size_t>((i + 1) % m)];
        int dart_p = path[static_cast<size_t>(p)];
        int dart_q = path[static_cast<size_t>(q)];
        // exit through the head half of dart_p, enter the tail half of dart_q
        int exit_side = 1 - (dart_p & 1);
        int entry_side = dart_q & 1;
        arcs.push_back(Arc{node(TwoComplex::edge_of(dart_p), exit_side),
                           node(TwoComplex::edge_of(dart_q), entry_side), face});
      }
    }
    for (int e : tree.feet) {
      const auto& cover = ball.edge_cover(e);
      if (cover.complete && cover.traversals == 1) {
        arcs.push_back(Arc{node(e, 0), node(e, 1), -1});
      }
    }
    // components
    int n = static_cast<int>(nodes.size());
    std::vector<int> par(static_cast<size_t>(n));
    std::iota(par.begin(), par.end(), 0);
    std::function<int(int)> find = [&](int x) {
      return par[static_cast<size_t>(x)] == x ? x : par[static_cast<size_t>(x)] = find(par[static_cast<size_t>(x)]);
    };
    for (const auto& a : arcs) par[static_cast<size_t>(find(a.a))] = find(a.b);
    std::map<int, Wall> comp;
    for (int i = 0; i < n; ++i) {
      Wall& w = comp[find(i)];
      w.tree = static_cast<int>(ti);
      w.crossings.push_back(nodes[static_cast<size_t>(i)]);
    }
    for (const auto& a : arcs) {
      if (a.face >= 0) {
        Wall& w = comp[find(a.a)];
        if (std::find(w.sector_faces.begin(), w.sector_faces.end(), a.face) == w.sector_faces.end())
          w.sector_faces.push_back(a.face);
      }
    }
    for (auto& [root, w] : comp) {
      (void)root;
      std::sort(w.crossings.begin(), w.crossings.end());
      std::sort(w.sector_faces.begin(), w.sector_faces.end());
      w.partial = tree.partial;
      out.push_back(std::move(w));
    }
  }
  return out;
}

std::vector<Wall> walls(const CayleyBall& ball) {
  return walls_of_trees(ball, divisive_trees(ball));
}

Halfspaces halfspaces(const CayleyBall& ball, const Wall& w) {
  Halfspaces out;
  out.partial = w.partial;
  std::set<int> crossed_once;
  {
    std::map<int, int> per_edge;
    for (const auto& c : w.crossings) per_edge[c.edge]++;
    for (const auto& [e, k] : per_edge) {
      if (k == 1) crossed_once.insert(e);
    }
  }
  int nv = ball.complex.num_vertices;
  std::vector<int> par(static_cast<size_t>(nv));
  std::iota(par.begin(), par.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return par[static_cast<size_t>(x)] == x ? x : par[static_cast<size_t>(x)] = find(par[static_cast<size_t>(x)]);
  };
  for (int e = 0; e < ball.complex.num_edges(); ++e) {
    if (!ball.edge_safe(e) || crossed_once.count(e)) continue;
    int t = ball.complex.tail(2 * e), h = ball.complex.head(2 * e);
    if (ball.vertex_safe(t) && ball.vertex_safe(h)) par[static_cast<size_t>(find(t))] = find(h);
  }
  std::map<int, std::vector<int>> comps;
  for (int v = 0; v < nv; ++v) {
    if (ball.vertex_safe(v)) comps[find(v)].push_back(v);
  }
  out.components = static_cast<int>(comps.size());
  std::vector<std::vector<int>> sorted;
  for (auto& [r, vs] : comps) {
    (void)r;
    sorted.push_back(std::move(vs));
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() > b.size() : a < b; });
  if (!sorted.empty()) out.side_a = sorted[0];
  if (sorted.size() > 1) out.side_b = sorted[1];
  return out;
}

CarrierReport carrier(const CayleyBall& ball, const Wall& w, int sample_pairs, unsigned seed) {
  CarrierReport report;
  report.advisory = w.partial;
  report.carrier = SubComplex(ball.complex);
  for (int fi : w.sector_faces) report.carrier.add_closed_face(fi);
  for (const auto& c : w.crossings) report.carrier.add_closed_edge(c.edge);
  // safe vertices in the carrier
  std::vector<int> verts;
  for (int v = 0; v < ball.complex.num_vertices; ++v) {
    if (report.carrier.v_in[static_cast<size_t>(v)] && ball.vertex_safe(v)) verts.push_back(v);
  }
  std::vector<std::pair<int, int>> pairs;
  for (size_t i = 0; i < verts.size(); ++i) {
    for (size_t j = i + 1; j < verts.size(); ++j) pairs.emplace_back(verts[i], verts[j]);
  }
  if (static_cast<int>(pairs.size()) > sample_pairs) {
    std::mt19937 rng(seed);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    pairs.resize(static_cast<size_t>(sample_pairs));
  }
  // carrier-restricted BFS vs ball BFS
  auto carrier_dist = [&](int from) {
    std::vector<int> d(static_cast<size_t>(ball.complex.num_vertices), -1);
    std::deque<int> q;
    if (report.carrier.v_in[static_cast<size_t>(from)]) {
      d[static_cast<size_t>(from)] = 0;
      q.push_back(from);
    }
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int dart = 0; dart < static_cast<int>(ball.complex.dart_tail.size()); ++dart) {
        if (ball.complex.tail(dart) != u) continue;
        if (!report.carrier.e_in[static_cast<size_t>(TwoComplex::edge_of(dart))]) continue;
        int v = ball.complex.head(dart);
        if (d[static_cast<size_t>(v)] < 0) {
          d[static_cast<size_t>(v)] = d[static_cast<size_t>(u)] + 1;
          q.push_back(v);
        }
      }
    }
    return d;
  };
  std::map<int, std::vector<int>> ball_dist, car_dist;
  for (const auto& [u, v] : pairs) {
    if (!ball_dist.count(u)) ball_dist[u] = ball.bfs_distances(u);
    if (!car_dist.count(u)) car_dist[u] = carrier_dist(u);
    report.pairs_checked++;
    int db = ball_dist[u][static_cast<size_t>(v)];
    int dc = car_dist[u][static_cast<size_t>(v)];
    if (dc < 0 || dc != db) report.failures.emplace_back(u, v);
  }
  return report;
}

LadderReport ladder_check(const CayleyBall& ball, const DivisiveTree& tree, int center_from,
                          int center_to) {
  LadderReport report;
  // tree graph over centers and feet
  std::map<std::pair<int, int>, int> cid;
  for (size_t i = 0; i < tree.centers.size(); ++i) cid[tree.centers[i]] = static_cast<int>(i);
  std::map<int, int> fid;
  for (size_t i = 0; i < tree.feet.size(); ++i) fid[tree.feet[i]] = static_cast<int>(i);
  int nc = static_cast<int>(tree.centers.size());
  int nn = nc + static_cast<int>(tree.feet.size());
  std::vector<std::vector<int>> adj(static_cast<size_t>(nn));
  for (const auto& leg : tree.legs) {
    int c = cid[{leg.face, leg.orbit}];
    int m = nc + fid[leg.edge];
    adj[static_cast<size_t>(c)].push_back(m);
    adj[static_cast<size_t>(m)].push_back(c);
  }
  // BFS path between the two centers
  std::vector<int> prev(static_cast<size_t>(nn), -2);
  std::deque<int> q{center_from};
  prev[static_cast<size_t>(center_from)] = -1;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v : adj[static_cast<size_t>(u)]) {
      if (prev[static_cast<size_t>(v)] == -2) {
        prev[static_cast<size_t>(v)] = u;
        q.push_back(v);
      }
    }
  }
  if (prev[static_cast<size_t>(center_to)] == -2) {
    report.detail = "centers not connected in tree";
    return report;
  }
  std::vector<int> node_path;
  for (int u = center_to; u != -1; u = prev[static_cast<size_t>(u)]) node_path.push_back(u);
  std::reverse(node_path.begin(), node_path.end());
  std::vector<int> face_seq;
  std::vector<int> foot_seq;
  for (int u : node_path) {
    if (u < nc) {
      face_seq.push_back(tree.centers[static_cast<size_t>(u)].first);
    } else {
      foot_seq.push_back(tree.feet[static_cast<size_t>(u - nc)]);
    }
  }
  report.num_faces = static_cast<int>(face_seq.size());
  if (face_seq.size() < 2) {
    report.ok = report.chain_disjointness = report.injective = true;
    report.detail = "arc spans a single face; vacuous";
    return report;
  }
  // maximal common boundary path (piece) around each connecting foot
  std::vector<std::set<int>> piece_cells;  // vertices offset by +V for edges
  int V = ball.complex.num_vertices;
  for (size_t t = 0; t + 1 < face_seq.size(); ++t) {
    int f = face_seq[t], gface = face_seq[t + 1];
    int e = foot_seq[t];
    const auto& pf = ball.complex.faces[static_cast<size_t>(f)].path;
    const auto& pg = ball.complex.faces[static_cast<size_t>(gface)].path;
    int Lf = static_cast<int>(pf.size()), Lg = static_cast<int>(pg.size());
    int i0 = -1, j0 = -1;
    for (int i = 0; i < Lf && i0 < 0; ++i) {
      if (TwoComplex::edge_of(pf[static_cast<size_t>(i)]) != e) continue;
      for (int j = 0; j < Lg && i0 < 0; ++j) {
        if (pg[static_cast<size_t>(j)] == TwoComplex::reverse(pf[static_cast<size_t>(i)])) {
          i0 = i;
          j0 = j;
        }
      }
    }
    if (i0 < 0) {
      report.detail = "faces do not traverse the foot edge oppositely";
      return report;
    }
    // extend while the traversals mirror each other
    int fwd = 0;
    while (fwd + 1 < std::min(Lf, Lg) &&
           pg[static_cast<size_t>(((j0 - fwd - 1) % Lg + Lg) % Lg)] ==
               TwoComplex::reverse(pf[static_cast<size_t>((i0 + fwd + 1) % Lf)]))
      ++fwd;
    int bwd = 0;
    while (fwd + bwd + 1 < std::min(Lf, Lg) &&
           pg[static_cast<size_t>((j0 + bwd + 1) % Lg)] ==
               TwoComplex::reverse(pf[static_cast<size_t>(((i0 - bwd - 1) % Lf + Lf) % Lf)]))
      ++bwd;
    std::set<int> cells;
    for (int s = -bwd; s <= fwd; ++s) {
      int dart = pf[static_cast<size_t>(((i0 + s) % Lf + Lf) % Lf)];
      cells.insert(V + TwoComplex::edge_of(dart));
      cells.insert(ball.complex.tail(dart));
      cells.insert(ball.complex.head(dart));
    }
    report.piece_lengths.push_back(fwd + bwd + 1);
    piece_cells.push_back(std::move(cells));
  }
  // closures
  auto closure = [&](int f) {
    std::set<int> cells;
    for (int dart : ball.complex.faces[static_cast<size_t>(f)].path) {
      cells.insert(V + TwoComplex::edge_of(dart));
      cells.insert(ball.complex.tail(dart));
      cells.insert(ball.complex.head(dart));
    }
    return cells;
  };
  std::vector<std::set<int>> cls;
  for (int f : face_seq) cls.push_back(closure(f));
  report.chain_disjointness = true;
  for (size_t i = 0; i < cls.size(); ++i) {
    for (size_t j = i + 2; j < cls.size(); ++j) {
      for (int c : cls[i]) {
        if (cls[j].count(c)) {
          report.chain_disjointness = false;
        }
      }
    }
  }
  // injectivity: abstract cell count equals union cell count (faces counted apart)
  long abstract_cells = 0;
  std::set<int> union_cells;
  for (const auto& s : cls) {
    abstract_cells += static_cast<long>(s.size());
    union_cells.insert(s.begin(), s.end());
  }
  for (const auto& s : piece_cells) abstract_cells -= static_cast<long>(s.size());
  report.injective = abstract_cells == static_cast<long>(union_cells.size());
  report.ok = report.chain_disjointness && report.injective;
  return report;
}

CrossingProfile geodesic_crossing_profile(const CayleyBall& ball, const std::vector<int>& path,
                                          const std::vector<Wall>& ws) {
  if (path.size() < 2) throw PreconditionError("geodesic_crossing_profile: path too short");
  std::vector<int> edges;
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    int e = -1;
    for (int cand = 0; cand < ball.complex.num_edges() && e < 0; ++cand) {
      int t = ball.complex.tail(2 * cand), h = ball.complex.head(2 * cand);
      if ((t == path[i] && h == path[i + 1]) || (h == path[i] && t == path[i + 1])) e = cand;
    }
    if (e < 0) throw PreconditionError("geodesic_crossing_profile: path not an edge path");
    edges.push_back(e);
  }
  auto d = ball.bfs_distances(path.front());
  if (d[static_cast<size_t>(path.back())] != static_cast<int>(path.size()) - 1)
    throw PreconditionError("geodesic_crossing_profile: path is not a BFS geodesic");

  CrossingProfile out;
  out.counts.assign(ws.size(), 0);
  std::vector<std::vector<int>> hit_positions(ws.size());
  for (size_t wi = 0; wi < ws.size(); ++wi) {
    std::map<int, int> per_edge;
    for (const auto& c : ws[wi].crossings) per_edge[c.edge]++;
    for (size_t k = 0; k < edges.size(); ++k) {
      auto it = per_edge.find(edges[k]);
      if (it != per_edge.end() && it->second == 1) {
        out.counts[wi]++;
        hit_positions[wi].push_back(static_cast<int>(k));
      }
    }
  }
  std::ostringstream detail;
  for (size_t wi = 0; wi < ws.size(); ++wi) {
    if (out.counts[wi] < 2) continue;
    int k1 = hit_positions[wi][0], k2 = hit_positions[wi][1];
    bool found = false;
    for (size_t vj = 0; vj < ws.size() && !found; ++vj) {
      if (out.counts[vj] != 1) continue;
      int kv = hit_positions[vj][0];
      if (k1 < kv && kv < k2) found = true;
    }
    if (!found) {
      out.equisector_ok = false;
      detail << "wall " << wi << " crossed at positions " << k1 << "," << k2
             << " with no singly-crossing separator; ";
    }
  }
  out.detail = detail.str();
  return out;
}

// ---------------------------------------------------------------------------
// dual cube fragment

namespace {

bool sets_intersect(const std::vector<int>& a, const std::vector<int>& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

}  // namespace

CubeFragment dual_cube_fragment(const std::vector<AbstractWall>& input_walls, int root_vertex,
                                int max_flips) {
  CubeFragment out;
  std::vector<AbstractWall> ws;
  std::vector<char> principal;
  for (size_t i = 0; i < input_walls.size(); ++i) {
    AbstractWall w = input_walls[i];
    std::sort(w.side_a.begin(), w.side_a.end());
    std::sort(w.side_b.begin(), w.side_b.end());
    bool in_a = std::binary_search(w.side_a.begin(), w.side_a.end(), root_vertex);
    bool in_b = std::binary_search(w.side_b.begin(), w.side_b.end(), root_vertex);
    if (w.side_a.empty() || w.side_b.empty() || in_a == in_b) {
      out.skipped_walls.push_back(static_cast<int>(i));
      continue;
    }
    ws.push_back(std::move(w));
    principal.push_back(in_a ? 0 : 1);
  }
  int n = static_cast<int>(ws.size());
  auto side = [&](int i, char s) -> const std::vector<int>& {
    return s == 0 ? ws[static_cast<size_t>(i)].side_a : ws[static_cast<size_t>(i)].side_b;
  };
  std::vector<std::vector<std::array<char, 4>>> inter(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    inter[static_cast<size_t>(i)].resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
      for (int si = 0; si < 2; ++si) {
        for (int sj = 0; sj < 2; ++sj) {
          inter[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(2 * si + sj)] =
              sets_intersect(side(i, static_cast<char>(si)), side(j, static_cast<char>(sj))) ? 1 : 0;
        }
      }
    }
  }
  auto valid = [&](const std::vector<char>& o) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (!inter[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(2 * o[static_cast<size_t>(i)] + o[static_cast<size_t>(j)])])
          return false;
      }
    }
    return true;
  };
  std::map<std::vector<char>, int> id;
  std::vector<std::vector<char>> states;
  std::vector<int> flips_from_root;
  std::deque<int> q;
  id[principal] = 0;
  states.push_back(principal);
  flips_from_root.push_back(0);
  q.push_back(0);
  std::map<std::pair<int, int>, int> edge_id;  // (min state, max state) -> dart
  TwoComplexBuilder tb;
  tb.add_vertex();
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    if (flips_from_root[static_cast<size_t>(u)] >= max_flips) continue;
    for (int i = 0; i < n; ++i) {
      std::vector<char> o = states[static_cast<size_t>(u)];
      o[static_cast<size_t>(i)] ^= 1;
      if (!valid(o)) continue;
      auto it = id.find(o);
      int v;
      if (it == id.end()) {
        v = static_cast<int>(states.size());
        id[o] = v;
        states.push_back(o);
        flips_from_root.push_back(flips_from_root[static_cast<size_t>(u)] + 1);
        q.push_back(v);
        tb.add_vertex();
      } else {
        v = it->second;
      }
      auto key = std::minmax(u, v);
      if (!edge_id.count({key.first, key.second})) {
        edge_id[{key.first, key.second}] = tb.add_edge(key.first, key.second);
      }
    }
  }
  // flag-condition spot check: flippable crossing pairs admit the double flip
  auto crossing = [&](int i, int j) {
    for (int si = 0; si < 2; ++si) {
      for (int sj = 0; sj < 2; ++sj) {
        if (!inter[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(2 * si + sj)])
          return false;
      }
    }
    return true;
  };
  for (const auto& state : states) {
    for (int i = 0; i < n && out.flag_condition_ok; ++i) {
      for (int j = i + 1; j < n && out.flag_condition_ok; ++j) {
        if (!crossing(i, j)) continue;
        std::vector<char> oi = state, oj = state, oij = state;
        oi[static_cast<size_t>(i)] ^= 1;
        oj[static_cast<size_t>(j)] ^= 1;
        oij[static_cast<size_t>(i)] ^= 1;
        oij[static_cast<size_t>(j)] ^= 1;
        if (valid(oi) && valid(oj) && !valid(oij)) out.flag_condition_ok = false;
      }
    }
  }
  // squares among visited states
  int num_squares = 0;
  auto dart_between = [&](int a, int b) {
    auto key = std::minmax(a, b);
    int d = edge_id.at({key.first, key.second});
    return key.first == a ? d : TwoComplex::reverse(d);
  };
  for (size_t s = 0; s < states.size(); ++s) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        std::vector<char> oi = states[s], oj = states[s], oij = states[s];
        oi[static_cast<size_t>(i)] ^= 1;
        oj[static_cast<size_t>(j)] ^= 1;
        oij[static_cast<size_t>(i)] ^= 1;
        oij[static_cast<size_t>(j)] ^= 1;
        if (!id.count(oi) || !id.count(oj) || !id.count(oij)) continue;
        // emit each square once, from its lexicographically smallest corner
        bool smallest = states[s] < oi && states[s] < oj && states[s] < oij;
        if (!smallest) continue;
        int a = static_cast<int>(s), b = id[oi], c = id[oij], dd = id[oj];
        std::vector<int> cycle{dart_between(a, b), dart_between(b, c), dart_between(c, dd),
                               dart_between(dd, a)};
        tb.add_face(cycle);
        ++num_squares;
      }
    }
  }
  out.complex = tb.build();
  out.num_squares = num_squares;
  // cycle-basis check over GF(2): squares must span the cycle space
  int V = out.complex.num_vertices, E = out.complex.num_edges();
  int comps = out.complex.num_components();
  int cycle_dim = E - V + comps;
  std::vector<std::vector<unsigned long long>> rows;
  size_t wordn = static_cast<size_t>(E + 63) / 64;
  for (const auto& f : out.complex.faces) {
    std::vector<unsigned long long> row(wordn, 0);
    for (int dart : f.path) {
      int e = TwoComplex::edge_of(dart);
      row[static_cast<size_t>(e) / 64] ^= 1ull << (static_cast<size_t>(e) % 64);
    }
    rows.push_back(std::move(row));
  }
  int rank = 0;
  for (int col = 0; col < E && rank < static_cast<int>(rows.size()); ++col) {
    size_t wi = static_cast<size_t>(col) / 64;
    unsigned long long bit = 1ull << (static_cast<size_t>(col) % 64);
    int pivot = -1;
    for (size_t r = static_cast<size_t>(rank); r < rows.size(); ++r) {
      if (rows[r][wi] & bit) {
        pivot = static_cast<int>(r);
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[static_cast<size_t>(rank)], rows[static_cast<size_t>(pivot)]);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<int>(r) != rank && (rows[r][wi] & bit)) {
        for (size_t k = 0; k < wordn; ++k) rows[r][k] ^= rows[static_cast<size_t>(rank)][k];
      }
    }
    ++rank;
  }
  out.simply_connected = comps == 1 && rank == cycle_dim;
  return out;
}

CubeFragment dual_cube_fragment(const CayleyBall& ball, const std::vector<Wall>& ws, int max_flips) {
  std::vector<AbstractWall> aws;
  std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
  int duplicates = 0;
  for (const auto& w : ws) {
    Halfspaces h = halfspaces(ball, w);
    AbstractWall aw;
    if (h.components == 2) {
      std::sort(h.side_a.begin(), h.side_a.end());
      std::sort(h.side_b.begin(), h.side_b.end());
      auto key = h.side_a < h.side_b ? std::make_pair(h.side_a, h.side_b)
                                     : std::make_pair(h.side_b, h.side_a);
      if (!seen.insert(key).second) {
        ++duplicates;
        continue;
      }
      aw.side_a = h.side_a;
      aw.side_b = h.side_b;
    }
    aws.push_back(std::move(aw));  // degenerate ones get skipped downstream
  }
  CubeFragment out = dual_cube_fragment(aws, ball.root, max_flips);
  out.duplicate_partitions = duplicates;
  return out;
}

}  // namespace collapsar
