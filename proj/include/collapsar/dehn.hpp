#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "collapsar/diagram.hpp"
#include "collapsar/words.hpp"

namespace collapsar {

enum class Tri { yes, no, unknown };

// All cyclic rotations of each w_i^{n_i} and of their inverses, with the
// half-length thresholds used by the rewriting step.
struct RelatorBank {
  struct Rotation {
    std::vector<int> codes;
    int relator;
    int orient;
    int offset;
  };
  std::vector<Rotation> rotations;
  std::vector<int> relator_length;
  std::vector<int> threshold;  // floor(|R_i| / 2)
};

RelatorBank build_relator_bank(const BranchedPresentation& b);

struct DehnStep {
  int pos = 0;  // start of Q in the current word
  int relator = -1, orient = +1, offset = 0;
  Word removed;   // Q
  Word inserted;  // S^-1
};

struct DehnTrace {
  std::vector<DehnStep> steps;
  int size() const { return static_cast<int>(steps.size()); }
};

struct DehnOptions {
  bool unsafe = false;               // run without dehn_eligible certification
  bool randomized_tie_break = false; // tests: pick any qualifying match
  unsigned seed = 0;
};

// Leftmost match, then longest Q, then lowest relator index.  Every step
// strictly shortens the word.
std::pair<Word, DehnTrace> dehn_reduce(const Word& w, const BranchedPresentation& b,
                                       const DehnOptions& opts = {});
bool is_trivial(const Word& w, const BranchedPresentation& b, const DehnOptions& opts = {});

// Least m >= 1 with w_i^m trivial (m <= n_i always holds).
int order_of_relator(int i, const BranchedPresentation& b);

// Replays a trace; throws if any step does not apply.
Word replay_trace(const Word& w, const DehnTrace& t, const BranchedPresentation& b);

enum class AbelianVerdict { nontrivial, inconclusive };

// Membership of exponent vectors in the relator lattice; Smith normal form is
// computed once at construction.
class AbelianTester {
 public:
  explicit AbelianTester(const Presentation& p);
  // false: the vector is outside the lattice, so the word is nontrivial
  bool maybe_trivial(const std::vector<long long>& exponent_vec) const;
  int num_generators() const { return k_; }

 private:
  int k_ = 0;
  std::vector<std::vector<long long>> u_;
  std::vector<long long> diag_;
};

// Exponent-sum vector against the relator lattice via Smith normal form.
AbelianVerdict abelianization_test(const Word& w, const Presentation& p);

// Reusable bounded triviality oracle backed by diagram enumeration.
class BoundedOracle {
 public:
  BoundedOracle(const Presentation& p, int max_area, int max_len);
  // yes (with certificate) or unknown; never "no"
  Tri query(const Word& w) const;
  std::optional<DiskDiagram> certificate(const Word& w) const;

 private:
  const Presentation pres_;
  int max_len_;
  std::vector<DiskDiagram> diagrams_;
};

struct BoundedTrivialResult {
  bool trivial = false;
  std::optional<DiskDiagram> diagram;
};
BoundedTrivialResult bounded_oracle_trivial(const Word& w, const Presentation& p, int max_area,
                                            int max_len);

}  // namespace collapsar
