#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace collapsar {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PreconditionError : std::logic_error {
  using std::logic_error::logic_error;
};

struct Generator {
  int id = -1;
  std::string name;
};

// One generator occurrence with a sign.  Encoded form 2*gen+(sign<0) is used
// wherever letters are compared in bulk.
struct Letter {
  int gen = -1;
  int sign = +1;

  Letter() = default;
  Letter(int g, int s) : gen(g), sign(s) {}

  Letter inverse() const { return Letter(gen, -sign); }
  int code() const { return 2 * gen + (sign < 0 ? 1 : 0); }
  static Letter from_code(int c) { return Letter(c / 2, (c % 2) ? -1 : +1); }

  friend bool operator==(const Letter& a, const Letter& b) {
    return a.gen == b.gen && a.sign == b.sign;
  }
  friend bool operator!=(const Letter& a, const Letter& b) { return !(a == b); }
};

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> ls) : letters_(std::move(ls)) {}

  int size() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](int i) const { return letters_[static_cast<size_t>(i)]; }
  const std::vector<Letter>& letters() const { return letters_; }

  void push_back(Letter l) { letters_.push_back(l); }
  void append(const Word& w) {
    letters_.insert(letters_.end(), w.letters_.begin(), w.letters_.end());
  }

  Word inverse() const;
  Word subword(int from, int len) const;  // non-cyclic
  std::vector<int> codes() const;

  friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }

 private:
  std::vector<Letter> letters_;
};

Word free_reduce(const Word& w);
bool is_freely_reduced(const Word& w);
bool is_cyclically_reduced(const Word& w);

// Cyclic word: stores the representative as given and flags computed at
// construction.  operator== is rotation equality only.
class CyclicWord {
 public:
  CyclicWord() = default;
  explicit CyclicWord(Word w);

  const Word& rep() const { return rep_; }
  int size() const { return rep_.size(); }
  Letter at(int i) const;  // cyclic index, any integer
  bool freely_reduced() const { return freely_reduced_; }
  bool cyclically_reduced() const { return cyclically_reduced_; }

  CyclicWord rotated(int k) const;
  CyclicWord inverse() const;
  bool equal_up_to_rotation(const CyclicWord& o) const;
  bool equal_up_to_inversion(const CyclicWord& o) const;

  friend bool operator==(const CyclicWord& a, const CyclicWord& b) {
    return a.equal_up_to_rotation(b);
  }
  friend bool operator!=(const CyclicWord& a, const CyclicWord& b) { return !(a == b); }

 private:
  Word rep_;
  bool freely_reduced_ = true;
  bool cyclically_reduced_ = true;
};

// w = conjugator * result * conjugator^-1 in the free group.
std::pair<CyclicWord, Word> cyclically_reduce(const Word& w);

Word power(const CyclicWord& w, int n);

// Maximal root decomposition: w = root^k with k maximal; nullopt iff k == 1.
std::optional<std::pair<CyclicWord, int>> is_proper_power(const CyclicWord& w);

struct Presentation {
  std::vector<Generator> generators;
  std::vector<CyclicWord> relators;

  int find_generator(const std::string& name) const;
  bool relator_immersed(int i) const { return relators[static_cast<size_t>(i)].cyclically_reduced(); }
  int total_relator_length() const;
};

Presentation parse_presentation(const std::string& text);
Word parse_word(const std::string& text, const Presentation& p);
std::string to_text(const Word& w, const Presentation& p);
std::string to_text(const Presentation& p);

// Relators raised to powers.  dehn_eligible() additionally requires the base
// to be certified bicollapsible; certification is recorded by whoever ran it.
struct BranchedPresentation {
  Presentation base;
  std::vector<int> exponents;
  std::vector<CyclicWord> relators;  // w_i^{n_i}
  bool base_certified_bicollapsible = false;

  bool dehn_eligible() const;
  int max_relator_length() const;
  int max_base_relator_length() const;
};

BranchedPresentation branch(const Presentation& p, const std::vector<int>& exponents);

// Factor each relator as root^k with k maximal; base keeps the roots.
BranchedPresentation branched_decomposition(const Presentation& p);

// Exponent-sum vector of w over the k generators.
std::vector<long long> exponent_vector(const Word& w, int num_generators);

}  // namespace collapsar
