#pragma once

#include <optional>
#include <string>
#include <vector>

#include "collapsar/two_complex.hpp"
#include "collapsar/words.hpp"

namespace collapsar {

// Planar combinatorial map with a distinguished outer face.  Inner face
// cycles are traversed with the face on the left; the outer walk is traversed
// with the outer region on the left, so every dart lies in exactly one cycle.
struct DiskDiagram {
  struct Face {
    std::vector<int> cycle;  // darts
    int relator = -1;
    int orient = +1;
  };

  int num_vertices = 0;
  std::vector<int> dart_tail;
  std::vector<Letter> dart_label;
  std::vector<Face> faces;
  std::vector<int> outer;  // boundary walk

  static int reverse(int d) { return d ^ 1; }
  static int edge_of(int d) { return d / 2; }
  int num_edges() const { return static_cast<int>(dart_tail.size()) / 2; }
  int tail(int d) const { return dart_tail[static_cast<size_t>(d)]; }
  int head(int d) const { return dart_tail[static_cast<size_t>(reverse(d))]; }
  Letter label(int d) const { return dart_label[static_cast<size_t>(d)]; }

  int area() const { return static_cast<int>(faces.size()); }
  int boundary_length() const { return static_cast<int>(outer.size()); }
  Word boundary_word() const;  // labels along the outer walk

  // cycle index per dart: -1 outer, else face index
  std::vector<int> cycle_of() const;
  std::vector<int> vertex_valence() const;

  bool valid() const;  // structural invariants incl. V - E + F_inner == 1
  bool single_closed_cell() const;

  DiskDiagram mirrored() const;
  std::string canonical_code() const;
  TwoComplex as_two_complex() const;
};

DiskDiagram single_vertex_diagram();
DiskDiagram polygon_diagram(const Presentation& p, int relator);

struct CellRoles {
  bool single_cell = false;
  std::vector<int> spur_vertices;
  std::vector<int> shell_faces;
  std::vector<int> cutcell_faces;
  // distinct cells carrying a role (a face that is both shell and cutcell counts once)
  int role_count() const;
};

CellRoles classify_cells(const DiskDiagram& d);
bool face_is_shell(const DiskDiagram& d, int fi);
bool face_is_cutcell(const DiskDiagram& d, int fi);

bool is_reduced(const DiskDiagram& d);
bool check_generalized_dehn(const DiskDiagram& d, bool strong);
bool check_dehn_property(const DiskDiagram& d);
bool area_bound_check(const DiskDiagram& d, int r);

// Shells requalified under |S| < |boundary|/degree (strict).
std::vector<int> tiny_innerpath_shells(const DiskDiagram& d, const std::vector<int>& degrees);
bool is_ladder(const DiskDiagram& d);
bool check_ladder_trichotomy(const DiskDiagram& d, const std::vector<int>& degrees);

struct EnumerateOptions {
  int max_pendant_edges = 0;
};

// All reduced labeled disk diagrams with at most max_area faces, one per
// isomorphism class (mirror images identified), sorted by canonical code.
std::vector<DiskDiagram> enumerate_reduced_disks(const Presentation& p, int max_area,
                                                 const EnumerateOptions& opts = {});

struct SphericalDiagram {
  TwoComplex complex;  // closed: every edge in exactly two face traversals, chi == 2
};

// Reduced spherical gluing of at most max_area relator faces; a witness that
// the presentation complex is not diagrammatically reducible.
std::optional<SphericalDiagram> find_spherical_near_immersion(const Presentation& p, int max_area);

}  // namespace collapsar
