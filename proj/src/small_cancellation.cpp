#include "collapsar/small_cancellation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace collapsar {

namespace {

std::vector<int> cycle_codes(const CyclicWord& w, int orient) {
  Word rep = orient > 0 ? w.rep() : w.rep().inverse();
  return rep.codes();
}

std::vector<int> wrapped_subword(const std::vector<int>& cyc, int offset, int len) {
  std::vector<int> out(static_cast<size_t>(len));
  int n = static_cast<int>(cyc.size());
  for (int i = 0; i < len; ++i) out[static_cast<size_t>(i)] = cyc[static_cast<size_t>((offset + i) % n)];
  return out;
}

}  // namespace

PieceIndex pieces(const Presentation& p) {
  for (size_t i = 0; i < p.relators.size(); ++i) {
    if (!p.relators[i].cyclically_reduced())
      throw PreconditionError("pieces: relators must be cyclically reduced");
  }
  // occurrences of every subword of every relator cycle
  std::map<std::vector<int>, std::vector<Placement>> occ;
  for (size_t ri = 0; ri < p.relators.size(); ++ri) {
    int L = p.relators[ri].size();
    for (int orient : {+1, -1}) {
      auto cyc = cycle_codes(p.relators[ri], orient);
      for (int off = 0; off < L; ++off) {
        for (int len = 1; len <= L; ++len) {
          occ[wrapped_subword(cyc, off, len)].push_back(Placement{static_cast<int>(ri), orient, off});
        }
      }
    }
  }
  PieceIndex idx;
  idx.max_piece_length_per_relator.assign(p.relators.size(), 0);
  for (auto& [codes, places] : occ) {
    std::sort(places.begin(), places.end());
    places.erase(std::unique(places.begin(), places.end()), places.end());
    bool piece = false;
    for (size_t a = 0; a < places.size() && !piece; ++a) {
      for (size_t b = a + 1; b < places.size() && !piece; ++b) {
        if (places[a].relator == places[b].relator &&
            static_cast<int>(codes.size()) == p.relators[static_cast<size_t>(places[a].relator)].size())
          continue;  // full-length same-relator pair never qualifies
        piece = true;
      }
    }
    if (piece) {
      idx.pieces[codes] = places;
      int len = static_cast<int>(codes.size());
      idx.max_piece_length = std::max(idx.max_piece_length, len);
      for (const auto& pl : places) {
        auto& m = idx.max_piece_length_per_relator[static_cast<size_t>(pl.relator)];
        m = std::max(m, len);
      }
    }
  }
  return idx;
}

std::optional<int> min_piece_decomposition(const CyclicWord& r, int relator_index, const PieceIndex& idx) {
  int L = r.size();
  if (L == 0) return std::nullopt;
  auto cyc = cycle_codes(r, +1);
  // piece_at[s][len]: the wrapped subword starting at s of length len is a piece
  const int INF = 1 << 28;
  (void)relator_index;
  int best = INF;
  for (int s = 0; s < L; ++s) {
    // linear DP on the cycle cut at s
    std::vector<int> dp(static_cast<size_t>(L) + 1, INF);
    dp[0] = 0;
    for (int pos = 0; pos < L; ++pos) {
      if (dp[static_cast<size_t>(pos)] >= INF) continue;
      for (int len = 1; pos + len <= L; ++len) {
        if (idx.is_piece(wrapped_subword(cyc, s + pos, len))) {
          dp[static_cast<size_t>(pos + len)] = std::min(dp[static_cast<size_t>(pos + len)],
                                                        dp[static_cast<size_t>(pos)] + 1);
        }
      }
    }
    best = std::min(best, dp[static_cast<size_t>(L)]);
  }
  if (best >= INF) return std::nullopt;
  return best;
}

bool check_C(const Presentation& p, int k) {
  PieceIndex idx = pieces(p);
  for (size_t ri = 0; ri < p.relators.size(); ++ri) {
    auto d = min_piece_decomposition(p.relators[ri], static_cast<int>(ri), idx);
    if (d && *d < k) return false;
  }
  return true;
}

StarGraph star_graph(const Presentation& p) {
  StarGraph g;
  g.num_nodes = 2 * static_cast<int>(p.generators.size());
  for (const auto& r : p.relators) {
    int L = r.size();
    for (int i = 0; i < L; ++i) {
      Letter x = r.at(i);
      Letter y = r.at(i + 1);
      g.arcs.emplace_back(x.code(), y.inverse().code());
    }
  }
  return g;
}

bool star_graph_has_short_reduced_cycle(const StarGraph& g, int q) {
  // arcs as darts: arc a gives darts 2a (first->second) and 2a+1
  int na = static_cast<int>(g.arcs.size());
  auto dart_from = [&](int d) { return d % 2 == 0 ? g.arcs[static_cast<size_t>(d / 2)].first : g.arcs[static_cast<size_t>(d / 2)].second; };
  auto dart_to = [&](int d) { return d % 2 == 0 ? g.arcs[static_cast<size_t>(d / 2)].second : g.arcs[static_cast<size_t>(d / 2)].first; };
  // DFS for closed dart paths of length h in [3, q) without immediate reversal
  // (also cyclically, between last and first dart).
  std::vector<int> path;
  bool found = false;
  std::function<void(int, int)> extend = [&](int start_dart, int target_len) {
    if (found) return;
    int cur = static_cast<int>(path.size());
    int last = path.back();
    if (cur == target_len) {
      if (dart_to(last) == dart_from(start_dart) && (last / 2) != (start_dart / 2)) found = true;
      return;
    }
    for (int d = 0; d < 2 * na; ++d) {
      if (dart_from(d) != dart_to(last)) continue;
      if (d / 2 == last / 2) continue;  // no immediate backtrack
      path.push_back(d);
      extend(start_dart, target_len);
      path.pop_back();
      if (found) return;
    }
  };
  for (int h = 3; h < q; ++h) {
    for (int d = 0; d < 2 * na; ++d) {
      path.assign(1, d);
      extend(d, h);
      if (found) return true;
    }
  }
  return false;
}

bool check_T(const Presentation& p, int q) {
  for (const auto& r : p.relators) {
    if (!r.cyclically_reduced()) throw PreconditionError("check_T: relators must be cyclically reduced");
  }
  return !star_graph_has_short_reduced_cycle(star_graph(p), q);
}

bool is_staggered(const Presentation& p) {
  size_t k = p.generators.size();
  if (p.relators.empty()) return true;
  for (const auto& r : p.relators) {
    if (r.size() == 0) return false;
  }
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  // rank[g] = position of generator g in the candidate order
  do {
    std::vector<int> rank(k);
    for (size_t i = 0; i < k; ++i) rank[static_cast<size_t>(perm[i])] = static_cast<int>(i);
    struct Ext {
      int mx, mn;
    };
    std::vector<Ext> ext;
    ext.reserve(p.relators.size());
    for (const auto& r : p.relators) {
      int mx = -1, mn = static_cast<int>(k);
      for (int i = 0; i < r.size(); ++i) {
        int rk = rank[static_cast<size_t>(r.at(i).gen)];
        mx = std::max(mx, rk);
        mn = std::min(mn, rk);
      }
      ext.push_back({mx, mn});
    }
    std::vector<size_t> order(p.relators.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return ext[a].mx < ext[b].mx; });
    bool ok = true;
    for (size_t i = 0; i + 1 < order.size() && ok; ++i) {
      ok = ext[order[i]].mx < ext[order[i + 1]].mx && ext[order[i]].mn < ext[order[i + 1]].mn;
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::pair<CurvatureParams, CurvatureVerdict> curvature_condition(const TwoComplex& c) {
  for (int fi = 0; fi < c.num_faces(); ++fi) {
    if (!c.face_immersed(fi)) throw PreconditionError("curvature_condition: face attaching map not immersed");
  }
  CurvatureParams params;
  for (int v = 0; v < c.num_vertices; ++v) {
    auto g = girth(link(c, v));
    if (g) params.p = params.p ? std::min(*params.p, *g) : *g;
  }
  params.q = 0;
  for (const auto& f : c.faces) {
    int per = static_cast<int>(f.path.size());
    params.q = params.q == 0 ? per : std::min(params.q, per);
  }
  if (params.q == 0) return {params, CurvatureVerdict::none};
  // 2/p + 1/q vs 1, exact: with finite p: 2q + p vs pq
  CurvatureVerdict v;
  if (!params.p) {
    v = params.q > 1 ? CurvatureVerdict::negative : CurvatureVerdict::nonpositive;
  } else {
    long lhs = 2L * params.q + *params.p;
    long rhs = static_cast<long>(*params.p) * params.q;
    v = lhs < rhs ? CurvatureVerdict::negative
                  : (lhs == rhs ? CurvatureVerdict::nonpositive : CurvatureVerdict::none);
  }
  return {params, v};
}

CollapsingVerdict certify_3_collapsing(const Presentation& p) {
  CollapsingVerdict out;
  for (const auto& r : p.relators) {
    if (!r.cyclically_reduced()) {
      out.status = CollapsingVerdict::Status::inconclusive;
      out.provenance = "relator not immersed; small-cancellation route unavailable";
      return out;
    }
  }
  for (const auto& r : p.relators) {
    if (is_proper_power(r)) {
      out.status = CollapsingVerdict::Status::inconclusive;
      out.provenance = "proper-power relator; distinct 2-cells over one cycle in the cover";
      return out;
    }
  }
  for (size_t i = 0; i < p.relators.size(); ++i) {
    for (size_t j = i + 1; j < p.relators.size(); ++j) {
      if (p.relators[i].equal_up_to_inversion(p.relators[j])) {
        out.status = CollapsingVerdict::Status::inconclusive;
        out.provenance = "duplicate relators; distinct 2-cells share boundary paths";
        return out;
      }
    }
  }
  bool c6 = check_C(p, 6);
  bool c4 = c6 || check_C(p, 4);
  bool t4 = false;
  if (!c6 && c4) t4 = check_T(p, 4);
  if (c6 || (c4 && t4)) {
    out.status = CollapsingVerdict::Status::certified;
    std::ostringstream os;
    os << (c6 ? "C(6)" : "C(4)-T(4)") << " complex is 3-collapsing";
    out.provenance = os.str();
    return out;
  }
  out.status = CollapsingVerdict::Status::inconclusive;
  out.provenance = "neither C(6) nor C(4)-T(4)";
  return out;
}

}  // namespace collapsar
