#pragma once

#include <optional>
#include <string>
#include <vector>

#include "collapsar/words.hpp"

namespace collapsar {

// Combinatorial 2-complex.  Edge e owns darts 2e and 2e+1 (mutual reverses);
// dart 2e runs tail->head as built.  Face attaching paths are closed dart
// sequences, so edge traversal multiplicity is a count.
struct TwoComplex {
  struct Face {
    std::vector<int> path;  // darts
    int relator = -1;       // index into an associated presentation, if any
    int orient = +1;        // +1 reads w, -1 reads w^-1
  };

  int num_vertices = 0;
  std::vector<int> dart_tail;     // size 2E
  std::vector<Letter> dart_label; // label of dart (inverse on the reverse); gen -1 if unlabeled
  std::vector<Face> faces;

  int num_edges() const { return static_cast<int>(dart_tail.size()) / 2; }
  int num_faces() const { return static_cast<int>(faces.size()); }
  static int reverse(int d) { return d ^ 1; }
  static int edge_of(int d) { return d / 2; }
  int tail(int d) const { return dart_tail[static_cast<size_t>(d)]; }
  int head(int d) const { return dart_tail[static_cast<size_t>(reverse(d))]; }
  Letter label(int d) const { return dart_label[static_cast<size_t>(d)]; }

  bool face_path_closed(const Face& f) const;
  bool face_immersed(int fi) const;  // attaching path locally injective (cyclically reduced)

  // Per-edge traversal count over all face paths, with multiplicity.
  std::vector<int> edge_traversal_count() const;
  // Dart-end count per vertex (loops count twice).
  std::vector<int> vertex_valence() const;
  // Vertices visited by at least one face path.
  std::vector<char> vertex_on_face() const;

  int euler_characteristic() const { return num_vertices - num_edges() + num_faces(); }
  int num_components() const;

  Word face_word(int fi) const;  // empty letters when unlabeled
};

class TwoComplexBuilder {
 public:
  int add_vertex();
  int add_vertices(int n);
  // Returns the forward dart id (2e).
  int add_edge(int tail, int head, Letter label = Letter());
  void add_face(std::vector<int> dart_path, int relator = -1, int orient = +1);
  TwoComplex build();  // validates closure of face paths

 private:
  TwoComplex c_;
};

// Subsets of cells of a parent complex, closed under boundary.
struct SubComplex {
  const TwoComplex* parent = nullptr;
  std::vector<char> v_in, e_in, f_in;

  SubComplex() = default;
  explicit SubComplex(const TwoComplex& c);

  void add_closed_face(int fi);
  void add_closed_edge(int e);
  void add_vertex(int v) { v_in[static_cast<size_t>(v)] = 1; }
  bool closed() const;
  int num_cells() const;
  int num_components() const;  // over all cells
  int euler_characteristic() const;
  // Standalone reindexed copy of the induced complex.
  TwoComplex extract() const;
};

// Link of a vertex: nodes are darts entering v, arcs are face corners at v.
struct LinkGraph {
  std::vector<int> nodes;                  // dart ids with head == v
  std::vector<std::pair<int, int>> arcs;   // node indices (unordered), multi/loops allowed
};

TwoComplex presentation_complex(const Presentation& p);
LinkGraph link(const TwoComplex& c, int v);

// Shortest cycle length: loops 1, parallel arcs 2; nullopt for forests.
std::optional<int> girth(const LinkGraph& g);

// Merge faces whose boundary cycles agree up to rotation and reflection.
TwoComplex quotient_duplicates(const TwoComplex& c);

struct BoundaryIntersection {
  SubComplex cells;
  bool connected = false;
};
BoundaryIntersection boundary_intersection(const TwoComplex& c, int f1, int f2);

// V - E of the closed boundary of one face (no 2-cells).
int face_boundary_euler(const TwoComplex& c, int fi);

}  // namespace collapsar
