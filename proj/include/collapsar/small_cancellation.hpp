#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "collapsar/collapse.hpp"
#include "collapsar/two_complex.hpp"
#include "collapsar/words.hpp"

namespace collapsar {

// A placement is (relator, orientation, rotation offset); distinct triples are
// essentially distinct.  A pair of placements inside the same relator never
// qualifies a full-length subword (rotations of a relator are not pieces of
// themselves), while cross-relator full-length occurrences do count.
struct Placement {
  int relator = -1;
  int orient = +1;
  int offset = 0;

  friend bool operator==(const Placement& a, const Placement& b) {
    return a.relator == b.relator && a.orient == b.orient && a.offset == b.offset;
  }
  friend bool operator<(const Placement& a, const Placement& b) {
    if (a.relator != b.relator) return a.relator < b.relator;
    if (a.orient != b.orient) return a.orient > b.orient;
    return a.offset < b.offset;
  }
};

struct PieceIndex {
  // key: letter-code string of the piece
  std::map<std::vector<int>, std::vector<Placement>> pieces;
  std::vector<int> max_piece_length_per_relator;
  int max_piece_length = 0;

  bool is_piece(const std::vector<int>& codes) const { return pieces.count(codes) > 0; }
};

PieceIndex pieces(const Presentation& p);

// Minimum number of pieces concatenating to the relator cycle (exact circular
// cover DP); nullopt encodes infinity.
std::optional<int> min_piece_decomposition(const CyclicWord& r, int relator_index, const PieceIndex& idx);

bool check_C(const Presentation& p, int k);
bool check_T(const Presentation& p, int q);

// Star graph: nodes are letters, arcs come from consecutive letters of the
// relator cycles; coincides with the link of the presentation complex vertex.
struct StarGraph {
  int num_nodes = 0;                      // 2 * generators
  std::vector<std::pair<int, int>> arcs;  // node pairs (letter codes)
};
StarGraph star_graph(const Presentation& p);
// A reduced closed path of length h exists with 3 <= h < q?
bool star_graph_has_short_reduced_cycle(const StarGraph& g, int q);

bool is_staggered(const Presentation& p);

struct CurvatureParams {
  std::optional<int> p;  // min girth over vertex links; nullopt = infinity
  int q = 0;             // min face perimeter
};
enum class CurvatureVerdict { negative, nonpositive, none };
std::pair<CurvatureParams, CurvatureVerdict> curvature_condition(const TwoComplex& c);

// C(6) or C(4)-T(4), no proper-power relator, no duplicate relators.
CollapsingVerdict certify_3_collapsing(const Presentation& p);

}  // namespace collapsar
