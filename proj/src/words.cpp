#include "collapsar/words.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace collapsar {

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverse());
  return Word(std::move(out));
}

Word Word::subword(int from, int len) const {
  std::vector<Letter> out(letters_.begin() + from, letters_.begin() + from + len);
  return Word(std::move(out));
}

std::vector<int> Word::codes() const {
  std::vector<int> out;
  out.reserve(letters_.size());
  for (const auto& l : letters_) out.push_back(l.code());
  return out;
}

Word free_reduce(const Word& w) {
  std::vector<Letter> stack;
  for (const auto& l : w.letters()) {
    if (!stack.empty() && stack.back() == l.inverse()) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return Word(std::move(stack));
}

bool is_freely_reduced(const Word& w) {
  for (int i = 0; i + 1 < w.size(); ++i) {
    if (w[i] == w[i + 1].inverse()) return false;
  }
  return true;
}

bool is_cyclically_reduced(const Word& w) {
  if (!is_freely_reduced(w)) return false;
  if (w.size() >= 2 && w[w.size() - 1] == w[0].inverse()) return false;
  return true;
}

CyclicWord::CyclicWord(Word w) : rep_(std::move(w)) {
  freely_reduced_ = is_freely_reduced(rep_);
  cyclically_reduced_ = is_cyclically_reduced(rep_);
}

Letter CyclicWord::at(int i) const {
  int n = size();
  int k = ((i % n) + n) % n;
  return rep_[k];
}

CyclicWord CyclicWord::rotated(int k) const {
  int n = size();
  std::vector<Letter> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(at(k + i));
  return CyclicWord(Word(std::move(out)));
}

CyclicWord CyclicWord::inverse() const { return CyclicWord(rep_.inverse()); }

bool CyclicWord::equal_up_to_rotation(const CyclicWord& o) const {
  if (size() != o.size()) return false;
  int n = size();
  if (n == 0) return true;
  for (int k = 0; k < n; ++k) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = at(k + i) == o.at(i);
    if (ok) return true;
  }
  return false;
}

bool CyclicWord::equal_up_to_inversion(const CyclicWord& o) const {
  return equal_up_to_rotation(o) || equal_up_to_rotation(o.inverse());
}

std::pair<CyclicWord, Word> cyclically_reduce(const Word& w) {
  Word r = free_reduce(w);
  int lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == r[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  std::vector<Letter> core(r.letters().begin() + lo, r.letters().begin() + hi);
  std::vector<Letter> conj(r.letters().begin(), r.letters().begin() + lo);
  return {CyclicWord(Word(std::move(core))), Word(std::move(conj))};
}

Word power(const CyclicWord& w, int n) {
  if (n < 1) throw PreconditionError("power: exponent must be >= 1");
  if (!w.cyclically_reduced()) throw PreconditionError("power: word must be cyclically reduced");
  std::vector<Letter> out;
  out.reserve(static_cast<size_t>(w.size()) * static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < w.size(); ++i) out.push_back(w.at(i));
  }
  return Word(std::move(out));
}

std::optional<std::pair<CyclicWord, int>> is_proper_power(const CyclicWord& w) {
  if (!w.cyclically_reduced()) throw PreconditionError("is_proper_power: word must be cyclically reduced");
  int n = w.size();
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (int i = 0; i < n && periodic; ++i) periodic = w.at(i) == w.at(i % d);
    if (periodic) {
      std::vector<Letter> root;
      for (int i = 0; i < d; ++i) root.push_back(w.at(i));
      return std::make_pair(CyclicWord(Word(std::move(root))), n / d);
    }
  }
  return std::nullopt;
}

int Presentation::find_generator(const std::string& name) const {
  for (const auto& g : generators) {
    if (g.name == name) return g.id;
  }
  return -1;
}

int Presentation::total_relator_length() const {
  int s = 0;
  for (const auto& r : relators) s += r.size();
  return s;
}

namespace {

struct Parser {
  const std::string& s;
  size_t i = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip() {
    while (i < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[i]))) {
        ++i;
      } else if (s[i] == '#') {
        while (i < s.size() && s[i] != '\n') ++i;
      } else {
        break;
      }
    }
  }

  bool done() {
    skip();
    return i >= s.size();
  }

  char peek() {
    skip();
    if (i >= s.size()) throw ParseError("unexpected end of input");
    return s[i];
  }

  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "' at position " + std::to_string(i));
    ++i;
  }

  bool try_eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }

  std::string ident() {
    skip();
    size_t start = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
    if (i == start) throw ParseError("expected identifier at position " + std::to_string(i));
    return s.substr(start, i - start);
  }

  std::optional<long> try_exponent() {
    skip();
    if (i >= s.size() || s[i] != '^') return std::nullopt;
    ++i;
    skip();
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
      neg = s[i] == '-';
      ++i;
    }
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw ParseError("expected integer exponent at position " + std::to_string(i));
    long v = std::stol(s.substr(start, i - start));
    return neg ? -v : v;
  }
};

Word repeat_word(const Word& w, long e) {
  Word out;
  Word base = e < 0 ? w.inverse() : w;
  long k = e < 0 ? -e : e;
  for (long t = 0; t < k; ++t) out.append(base);
  return out;
}

// A word expression: atoms are generator names (single upper-case letter as
// inverse shorthand), (...) groups, and [u,v] commutators; each atom takes an
// optional ^k.
Word parse_word_expr(Parser& pa, const Presentation& p, const std::string& stops) {
  Word out;
  for (;;) {
    pa.skip();
    if (pa.i >= pa.s.size()) break;
    char c = pa.s[pa.i];
    if (stops.find(c) != std::string::npos) break;
    Word atom;
    if (c == '[') {
      ++pa.i;
      Word u = parse_word_expr(pa, p, ",");
      pa.expect(',');
      Word v = parse_word_expr(pa, p, "]");
      pa.expect(']');
      atom = u;
      atom.append(v);
      atom.append(u.inverse());
      atom.append(v.inverse());
    } else if (c == '(') {
      ++pa.i;
      atom = parse_word_expr(pa, p, ")");
      pa.expect(')');
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      // longest generator-name match, else single upper-case inverse shorthand
      int best = -1;
      size_t best_len = 0;
      for (const auto& g : p.generators) {
        if (g.name.size() > best_len && pa.s.compare(pa.i, g.name.size(), g.name) == 0) {
          best = g.id;
          best_len = g.name.size();
        }
      }
      if (best >= 0) {
        pa.i += best_len;
        atom.push_back(Letter(best, +1));
      } else if (std::isupper(static_cast<unsigned char>(c))) {
        std::string lower(1, static_cast<char>(std::tolower(c)));
        int id = p.find_generator(lower);
        if (id < 0) throw ParseError(std::string("unknown generator '") + c + "'");
        ++pa.i;
        atom.push_back(Letter(id, -1));
      } else {
        throw ParseError(std::string("unknown generator '") + c + "'");
      }
    } else {
      throw ParseError(std::string("unexpected character '") + c + "' in word");
    }
    if (auto e = pa.try_exponent()) {
      atom = repeat_word(atom, *e);
    }
    out.append(atom);
  }
  return out;
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
  Parser pa(text);
  Presentation p;
  pa.expect('<');
  if (pa.peek() != '|') {
    for (;;) {
      std::string name = pa.ident();
      if (p.find_generator(name) >= 0) throw ParseError("duplicate generator '" + name + "'");
      p.generators.push_back(Generator{static_cast<int>(p.generators.size()), name});
      if (!pa.try_eat(',')) break;
    }
  }
  pa.expect('|');
  if (pa.peek() != '>') {
    for (;;) {
      Word w = parse_word_expr(pa, p, ",>");
      if (w.empty()) throw ParseError("empty relator");
      p.relators.emplace_back(std::move(w));
      if (!pa.try_eat(',')) break;
    }
  }
  pa.expect('>');
  if (!pa.done()) throw ParseError("trailing input after '>'");
  return p;
}

Word parse_word(const std::string& text, const Presentation& p) {
  Parser pa(text);
  Word w = parse_word_expr(pa, p, "");
  if (!pa.done()) throw ParseError("trailing input in word");
  return w;
}

std::string to_text(const Word& w, const Presentation& p) {
  std::ostringstream os;
  for (const auto& l : w.letters()) {
    const std::string& name = p.generators[static_cast<size_t>(l.gen)].name;
    if (l.sign > 0) {
      os << name;
    } else if (name.size() == 1 && std::islower(static_cast<unsigned char>(name[0])) &&
               p.find_generator(std::string(1, static_cast<char>(std::toupper(name[0])))) < 0) {
      os << static_cast<char>(std::toupper(name[0]));
    } else {
      os << name << "^-1";
    }
  }
  if (w.empty()) os << "";
  return os.str();
}

std::string to_text(const Presentation& p) {
  std::ostringstream os;
  os << "<";
  for (size_t i = 0; i < p.generators.size(); ++i) {
    if (i) os << ",";
    os << p.generators[i].name;
  }
  os << "|";
  for (size_t i = 0; i < p.relators.size(); ++i) {
    if (i) os << ",";
    os << to_text(p.relators[i].rep(), p);
  }
  os << ">";
  return os.str();
}

bool BranchedPresentation::dehn_eligible() const {
  if (!base_certified_bicollapsible) return false;
  for (size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 2) return false;
    const CyclicWord& w = base.relators[i];
    if (!w.cyclically_reduced()) return false;
    if (is_proper_power(w)) return false;
  }
  return !exponents.empty();
}

int BranchedPresentation::max_relator_length() const {
  int m = 0;
  for (const auto& r : relators) m = std::max(m, r.size());
  return m;
}

int BranchedPresentation::max_base_relator_length() const {
  int m = 0;
  for (const auto& r : base.relators) m = std::max(m, r.size());
  return m;
}

BranchedPresentation branch(const Presentation& p, const std::vector<int>& exponents) {
  if (exponents.size() != p.relators.size())
    throw PreconditionError("branch: one exponent per relator required");
  BranchedPresentation b;
  b.base = p;
  b.exponents = exponents;
  for (size_t i = 0; i < exponents.size(); ++i) {
    int n = exponents[i];
    if (n < 1) throw PreconditionError("branch: exponents must be >= 1");
    if (n > 1 && !p.relators[i].cyclically_reduced())
      throw PreconditionError("branch: base relator must be immersed when its exponent exceeds 1");
    if (n == 1) {
      b.relators.push_back(p.relators[i]);
    } else {
      b.relators.emplace_back(power(p.relators[i], n));
    }
  }
  return b;
}

BranchedPresentation branched_decomposition(const Presentation& p) {
  Presentation base;
  base.generators = p.generators;
  std::vector<int> exps;
  for (const auto& r : p.relators) {
    if (!r.cyclically_reduced()) {
      base.relators.push_back(r);
      exps.push_back(1);
      continue;
    }
    if (auto pw = is_proper_power(r)) {
      base.relators.push_back(pw->first);
      exps.push_back(pw->second);
    } else {
      base.relators.push_back(r);
      exps.push_back(1);
    }
  }
  return branch(base, exps);
}

std::vector<long long> exponent_vector(const Word& w, int num_generators) {
  std::vector<long long> v(static_cast<size_t>(num_generators), 0);
  for (const auto& l : w.letters()) v[static_cast<size_t>(l.gen)] += l.sign;
  return v;
}

}  // namespace collapsar
