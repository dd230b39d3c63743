#pragma once

#include <optional>
#include <string>
#include <vector>

#include "collapsar/two_complex.hpp"

namespace collapsar {

// An elementary collapse: spur removes (vertex, edge), face removes (edge, face).
struct FreeFacePair {
  enum class Kind { spur, face };
  Kind kind = Kind::face;
  int free_cell = -1;      // vertex (spur) or edge (face)
  int collapse_cell = -1;  // edge (spur) or face (face)

  friend bool operator==(const FreeFacePair& a, const FreeFacePair& b) {
    return a.kind == b.kind && a.free_cell == b.free_cell && a.collapse_cell == b.collapse_cell;
  }
};

struct CollapseSequence {
  std::vector<FreeFacePair> steps;
  int size() const { return static_cast<int>(steps.size()); }
};

struct CollapsingVerdict {
  enum class Status { certified, refuted, inconclusive };
  Status status = Status::inconclusive;
  std::string provenance;               // rule that fired
  int bound = 0;                        // search radius / size used
  std::optional<TwoComplex> witness;    // standalone witness complex (refuted)
  std::vector<int> witness_faces;       // face ids in the examined complex, when applicable

  bool certified() const { return status == Status::certified; }
  bool refuted() const { return status == Status::refuted; }
};

std::vector<FreeFacePair> free_face_pairs(const TwoComplex& c);
bool pair_valid(const TwoComplex& c, const FreeFacePair& p);
TwoComplex do_collapse(const TwoComplex& c, const FreeFacePair& p);

// Replays a sequence against masked copies of c (cell ids stay stable);
// true iff every pair is valid at its step.
bool validate_sequence(const TwoComplex& c, const CollapseSequence& seq);

// Complex-level shells: a face with a boundary arc Q, |Q| > |S|, whose
// interior meets no cell outside Q and the face.  This is coarser than the
// disk-diagram shell (diagram.hpp), which requires Q to sit on the boundary
// walk; callers should say which notion they use.
std::vector<int> complex_shell_faces(const TwoComplex& c);

// Exhaustive backtracking with memoization; spur collapses never affect face
// freeness, so the face phase is searched alone.
std::optional<CollapseSequence> collapses_to_graph(const TwoComplex& c);
std::optional<CollapseSequence> collapses_to_point(const TwoComplex& c);

// Number of distinct cells (edges or faces) admitting at least one free face.
int count_collapsible_cells(const TwoComplex& c);

// Closure of a single 0-cell, 1-cell, or 2-cell that collapses.
bool is_trivial_complex(const TwoComplex& c);

// m-face unions of closed faces drawn from `faces`; refuted when some union
// of m <= n faces has fewer than m collapsible cells.  Unions of closed faces
// realize the minimum: adding 1-cells to a subcomplex cannot lower any edge's
// traversal count and spurs only ever add collapses.
CollapsingVerdict check_n_collapsing(const TwoComplex& cover_fragment, const std::vector<int>& faces,
                                     int n);

struct CertifyBudget {
  int max_sphere_area = 2;
  int max_witness_faces = 2;
};

CollapsingVerdict certify_bicollapsible(const Presentation& p, const CertifyBudget& budget = {});

// Convenience: branch + certify the base, recording the certification.
BranchedPresentation certified_branch(const Presentation& p, const std::vector<int>& exponents,
                                      const CertifyBudget& budget = {});

}  // namespace collapsar
