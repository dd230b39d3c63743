#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "collapsar/collapse.hpp"
#include "collapsar/dehn.hpp"
#include "collapsar/two_complex.hpp"
#include "collapsar/words.hpp"

namespace collapsar {

// Triviality oracle for words in the presented group.
using EqualityOracle = std::function<Tri(const Word&)>;

EqualityOracle dehn_equality_oracle(const BranchedPresentation& b);
EqualityOracle cyclic_group_oracle(int n);          // <a | a^n>
EqualityOracle free_abelian_rank2_oracle();         // <a,b | [a,b]>
EqualityOracle free_group_oracle();
EqualityOracle trivial_group_oracle();
EqualityOracle bounded_diagram_oracle(const Presentation& p, int max_area, int max_len);

// Radius-R fragment of the 1-skeleton of the universal cover with every
// relator-power cycle lying fully inside filled by one face (the duplicates
// quotient realized directly).
struct CayleyBall {
  TwoComplex complex;
  BranchedPresentation pres;
  EqualityOracle oracle;
  int radius = 0;
  int safe_radius = -1;  // radius - ceil(max relator length / 2)
  int root = 0;
  std::vector<Word> vertex_word;
  std::vector<int> dist;

  struct FaceInfo {
    int relator = -1;
    int min_dist = 0;
    int max_dist = 0;
    std::vector<int> cycle_vertices;
  };
  std::vector<FaceInfo> face_info;

  bool vertex_safe(int v) const { return dist[static_cast<size_t>(v)] <= safe_radius; }
  bool edge_safe(int e) const {
    return vertex_safe(complex.tail(2 * e)) && vertex_safe(complex.head(2 * e));
  }
  bool face_safe(int fi) const { return face_info[static_cast<size_t>(fi)].max_dist <= safe_radius; }
  std::vector<int> safe_faces() const;

  // Exact data on the cover's relator-power cycles through an edge.
  struct EdgeCover {
    int cycles = 0;      // distinct cycles of the cover through the edge
    int traversals = 0;  // edge traversals among those cycles
    bool complete = false;  // all of them are faces of the ball
  };
  const EdgeCover& edge_cover(int e) const;

  std::vector<int> bfs_distances(int from) const;

 private:
  mutable std::map<int, EdgeCover> cover_cache_;
};

CayleyBall build_ball(const BranchedPresentation& b, int radius, EqualityOracle oracle);

// n-collapsing check over the ball's safe closed faces.
CollapsingVerdict check_n_collapsing(const CayleyBall& ball, int n);

struct Spider {
  int face = -1;
  int orbit = -1;  // in [0, |w_i|)
  int legs = 0;
};
std::vector<Spider> spiders(const CayleyBall& ball);

// Component of the glued spider graph.
struct DivisiveTree {
  struct Leg {
    int face, orbit, position, edge;
  };
  std::vector<std::pair<int, int>> centers;  // (face, orbit)
  std::vector<int> feet;                     // edge ids
  std::vector<Leg> legs;
  bool acyclic = false;
  bool embedded = false;
  bool partial = false;  // continues beyond the ball / safe region
};
std::vector<DivisiveTree> divisive_trees(const CayleyBall& ball);

// Half-edge crossing: side 0 is the half at the tail of dart 2e, side 1 the
// half at its head.
struct WallCrossing {
  int edge = -1;
  int side = 0;
  friend bool operator<(const WallCrossing& a, const WallCrossing& b) {
    return a.edge != b.edge ? a.edge < b.edge : a.side < b.side;
  }
  friend bool operator==(const WallCrossing& a, const WallCrossing& b) {
    return a.edge == b.edge && a.side == b.side;
  }
};

struct Wall {
  int tree = -1;
  std::vector<WallCrossing> crossings;
  std::vector<int> sector_faces;
  bool partial = false;
};
std::vector<Wall> walls_of_trees(const CayleyBall& ball, const std::vector<DivisiveTree>& trees);
std::vector<Wall> walls(const CayleyBall& ball);

struct Halfspaces {
  std::vector<int> side_a, side_b;  // safe vertices
  int components = 0;
  bool partial = false;
};
Halfspaces halfspaces(const CayleyBall& ball, const Wall& w);

struct CarrierReport {
  SubComplex carrier;
  int pairs_checked = 0;
  std::vector<std::pair<int, int>> failures;
  bool advisory = false;
};
CarrierReport carrier(const CayleyBall& ball, const Wall& w, int sample_pairs = 100, unsigned seed = 1);

struct LadderReport {
  bool ok = false;
  bool chain_disjointness = false;
  bool injective = false;
  int num_faces = 0;
  std::vector<int> piece_lengths;
  std::string detail;
};
// Arc in the tree between two face-centers (indices into tree.centers).
LadderReport ladder_check(const CayleyBall& ball, const DivisiveTree& tree, int center_from,
                          int center_to);

struct CrossingProfile {
  std::vector<int> counts;  // per wall
  bool equisector_ok = true;
  std::string detail;
};
CrossingProfile geodesic_crossing_profile(const CayleyBall& ball, const std::vector<int>& path,
                                          const std::vector<Wall>& ws);

// Sageev fragment over an abstract wallspace (vertex-id halfspaces).
struct AbstractWall {
  std::vector<int> side_a, side_b;
};
struct CubeFragment {
  TwoComplex complex;  // vertices = orientations, edges = flips, faces = squares
  int num_squares = 0;
  bool simply_connected = false;
  // at every vertex, two flippable crossing walls admit the double flip
  bool flag_condition_ok = true;
  std::vector<int> skipped_walls;  // degenerate (one side empty)
  int duplicate_partitions = 0;    // ball walls merged into one hyperplane class
};
CubeFragment dual_cube_fragment(const std::vector<AbstractWall>& ws, int root_vertex, int max_flips);
// Walls inducing the same vertex partition (the two sides of one divisive
// tree cross exactly the same safe edges) are merged into one hyperplane
// class before taking the dual.
CubeFragment dual_cube_fragment(const CayleyBall& ball, const std::vector<Wall>& ws, int max_flips);

}  // namespace collapsar
