#include "collapsar/dehn.hpp"

#include <algorithm>
#include <random>

namespace collapsar {

RelatorBank build_relator_bank(const BranchedPresentation& b) {
  RelatorBank bank;
  for (size_t ri = 0; ri < b.relators.size(); ++ri) {
    const CyclicWord& r = b.relators[ri];
    int L = r.size();
    bank.relator_length.push_back(L);
    bank.threshold.push_back(L / 2);
    for (int orient : {+1, -1}) {
      CyclicWord w = orient > 0 ? r : r.inverse();
      for (int off = 0; off < L; ++off) {
        RelatorBank::Rotation rot;
        rot.relator = static_cast<int>(ri);
        rot.orient = orient;
        rot.offset = off;
        for (int k = 0; k < L; ++k) rot.codes.push_back(w.at(off + k).code());
        bank.rotations.push_back(std::move(rot));
      }
    }
  }
  return bank;
}

namespace {

struct Match {
  int pos, len, relator, orient, offset;
  int rotation_index;
};

// longest common prefix of word[pos..] with the rotation
int lcp(const std::vector<int>& word, int pos, const std::vector<int>& rot) {
  int n = static_cast<int>(word.size());
  int m = static_cast<int>(rot.size());
  int k = 0;
  while (pos + k < n && k < m && word[static_cast<size_t>(pos + k)] == rot[static_cast<size_t>(k)]) ++k;
  return k;
}

std::optional<Match> find_match(const std::vector<int>& codes, const RelatorBank& bank,
                                const DehnOptions& opts) {
  std::vector<Match> qualifying;
  for (int pos = 0; pos < static_cast<int>(codes.size()); ++pos) {
    Match best{-1, 0, 0, 0, 0, -1};
    for (size_t ri = 0; ri < bank.rotations.size(); ++ri) {
      const auto& rot = bank.rotations[ri];
      int len = lcp(codes, pos, rot.codes);
      if (len <= bank.threshold[static_cast<size_t>(rot.relator)]) continue;
      if (len > best.len) {
        best = Match{pos, len, rot.relator, rot.orient, rot.offset, static_cast<int>(ri)};
      }
    }
    if (best.len > 0) {
      if (!opts.randomized_tie_break) return best;
      qualifying.push_back(best);
    }
  }
  if (qualifying.empty()) return std::nullopt;
  std::mt19937 rng(opts.seed + static_cast<unsigned>(codes.size()));
  return qualifying[rng() % qualifying.size()];
}

Word word_from_codes(const std::vector<int>& codes) {
  Word w;
  for (int c : codes) w.push_back(Letter::from_code(c));
  return w;
}

}  // namespace

std::pair<Word, DehnTrace> dehn_reduce(const Word& w, const BranchedPresentation& b,
                                       const DehnOptions& opts) {
  if (!b.dehn_eligible() && !opts.unsafe)
    throw PreconditionError("dehn_reduce: presentation not dehn-eligible (use unsafe to override)");
  RelatorBank bank = build_relator_bank(b);
  DehnTrace trace;
  Word cur = free_reduce(w);
  for (;;) {
    auto codes = cur.codes();
    auto m = find_match(codes, bank, opts);
    if (!m) break;
    const auto& rot = bank.rotations[static_cast<size_t>(m->rotation_index)];
    DehnStep step;
    step.pos = m->pos;
    step.relator = m->relator;
    step.orient = m->orient;
    step.offset = m->offset;
    step.removed = cur.subword(m->pos, m->len);
    std::vector<int> s_codes(rot.codes.begin() + m->len, rot.codes.end());
    step.inserted = word_from_codes(s_codes).inverse();
    Word next;
    for (int i = 0; i < m->pos; ++i) next.push_back(cur[i]);
    next.append(step.inserted);
    for (int i = m->pos + m->len; i < cur.size(); ++i) next.push_back(cur[i]);
    trace.steps.push_back(std::move(step));
    Word reduced = free_reduce(next);
    if (reduced.size() >= cur.size())
      throw std::logic_error("dehn_reduce: rewrite failed to shorten the word");
    cur = std::move(reduced);
  }
  return {cur, trace};
}

bool is_trivial(const Word& w, const BranchedPresentation& b, const DehnOptions& opts) {
  return dehn_reduce(w, b, opts).first.empty();
}

int order_of_relator(int i, const BranchedPresentation& b) {
  const CyclicWord& base = b.base.relators[static_cast<size_t>(i)];
  int n = b.exponents[static_cast<size_t>(i)];
  for (int m = 1; m <= n; ++m) {
    if (is_trivial(power(base, m), b)) return m;
  }
  return n;  // w_i^{n_i} is the relator itself
}

Word replay_trace(const Word& w, const DehnTrace& t, const BranchedPresentation& b) {
  (void)b;
  Word cur = free_reduce(w);
  for (const auto& step : t.steps) {
    if (step.pos + step.removed.size() > cur.size())
      throw PreconditionError("replay_trace: step out of range");
    for (int i = 0; i < step.removed.size(); ++i) {
      if (!(cur[step.pos + i] == step.removed[i]))
        throw PreconditionError("replay_trace: removed subword mismatch");
    }
    Word next;
    for (int i = 0; i < step.pos; ++i) next.push_back(cur[i]);
    next.append(step.inserted);
    for (int i = step.pos + step.removed.size(); i < cur.size(); ++i) next.push_back(cur[i]);
    Word reduced = free_reduce(next);
    if (reduced.size() >= cur.size()) throw PreconditionError("replay_trace: step does not shorten");
    cur = std::move(reduced);
  }
  return cur;
}

// ---------------------------------------------------------------------------
// abelianization via Smith normal form

namespace {

// returns U (k x k unimodular) and diagonal entries of U*A*V
struct SNF {
  std::vector<std::vector<long long>> u;
  std::vector<long long> diag;
  int rows = 0, cols = 0;
};

SNF smith_normal_form(std::vector<std::vector<long long>> a, int rows, int cols) {
  SNF out;
  out.rows = rows;
  out.cols = cols;
  out.u.assign(static_cast<size_t>(rows), std::vector<long long>(static_cast<size_t>(rows), 0));
  for (int i = 0; i < rows; ++i) out.u[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;

  auto swap_rows = [&](int r1, int r2) {
    std::swap(a[static_cast<size_t>(r1)], a[static_cast<size_t>(r2)]);
    std::swap(out.u[static_cast<size_t>(r1)], out.u[static_cast<size_t>(r2)]);
  };
  auto add_row = [&](int dst, int src, long long f) {
    for (int j = 0; j < cols; ++j)
      a[static_cast<size_t>(dst)][static_cast<size_t>(j)] += f * a[static_cast<size_t>(src)][static_cast<size_t>(j)];
    for (int j = 0; j < rows; ++j)
      out.u[static_cast<size_t>(dst)][static_cast<size_t>(j)] += f * out.u[static_cast<size_t>(src)][static_cast<size_t>(j)];
  };
  auto swap_cols = [&](int c1, int c2) {
    for (int i = 0; i < rows; ++i)
      std::swap(a[static_cast<size_t>(i)][static_cast<size_t>(c1)], a[static_cast<size_t>(i)][static_cast<size_t>(c2)]);
  };
  auto add_col = [&](int dst, int src, long long f) {
    for (int i = 0; i < rows; ++i)
      a[static_cast<size_t>(i)][static_cast<size_t>(dst)] += f * a[static_cast<size_t>(i)][static_cast<size_t>(src)];
  };

  int t = 0;
  while (t < rows && t < cols) {
    // find pivot: smallest nonzero |entry| in submatrix
    int pi = -1, pj = -1;
    long long pv = 0;
    for (int i = t; i < rows; ++i) {
      for (int j = t; j < cols; ++j) {
        long long v = a[static_cast<size_t>(i)][static_cast<size_t>(j)];
        if (v != 0 && (pi < 0 || std::abs(v) < std::abs(pv))) {
          pi = i;
          pj = j;
          pv = v;
        }
      }
    }
    if (pi < 0) break;
    if (pi != t) swap_rows(t, pi);
    if (pj != t) swap_cols(t, pj);
    bool clean = true;
    for (int i = t + 1; i < rows; ++i) {
      long long q = a[static_cast<size_t>(i)][static_cast<size_t>(t)] / a[static_cast<size_t>(t)][static_cast<size_t>(t)];
      if (q != 0) add_row(i, t, -q);
      if (a[static_cast<size_t>(i)][static_cast<size_t>(t)] != 0) clean = false;
    }
    for (int j = t + 1; j < cols; ++j) {
      long long q = a[static_cast<size_t>(t)][static_cast<size_t>(j)] / a[static_cast<size_t>(t)][static_cast<size_t>(t)];
      if (q != 0) add_col(j, t, -q);
      if (a[static_cast<size_t>(t)][static_cast<size_t>(j)] != 0) clean = false;
    }
    if (clean) ++t;
  }
  for (int i = 0; i < std::min(rows, cols); ++i) out.diag.push_back(a[static_cast<size_t>(i)][static_cast<size_t>(i)]);
  return out;
}

}  // namespace

AbelianTester::AbelianTester(const Presentation& p) : k_(static_cast<int>(p.generators.size())) {
  int s = static_cast<int>(p.relators.size());
  u_.assign(static_cast<size_t>(k_), std::vector<long long>(static_cast<size_t>(k_), 0));
  for (int i = 0; i < k_; ++i) u_[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
  if (s == 0 || k_ == 0) return;
  std::vector<std::vector<long long>> a(static_cast<size_t>(k_),
                                        std::vector<long long>(static_cast<size_t>(s), 0));
  for (int j = 0; j < s; ++j) {
    auto rv = exponent_vector(p.relators[static_cast<size_t>(j)].rep(), k_);
    for (int i = 0; i < k_; ++i) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = rv[static_cast<size_t>(i)];
  }
  SNF snf = smith_normal_form(std::move(a), k_, s);
  u_ = std::move(snf.u);
  diag_ = std::move(snf.diag);
}

bool AbelianTester::maybe_trivial(const std::vector<long long>& v) const {
  // v in the column lattice iff (U v)_i divisible by diag_i, zero beyond the rank
  for (int i = 0; i < k_; ++i) {
    long long x = 0;
    for (int j = 0; j < k_; ++j) x += u_[static_cast<size_t>(i)][static_cast<size_t>(j)] * v[static_cast<size_t>(j)];
    long long d = i < static_cast<int>(diag_.size()) ? diag_[static_cast<size_t>(i)] : 0;
    if (d == 0) {
      if (x != 0) return false;
    } else if (x % d != 0) {
      return false;
    }
  }
  return true;
}

AbelianVerdict abelianization_test(const Word& w, const Presentation& p) {
  AbelianTester tester(p);
  return tester.maybe_trivial(exponent_vector(w, static_cast<int>(p.generators.size())))
             ? AbelianVerdict::inconclusive
             : AbelianVerdict::nontrivial;
}

// ---------------------------------------------------------------------------
// bounded triviality oracle

BoundedOracle::BoundedOracle(const Presentation& p, int max_area, int max_len)
    : pres_(p), max_len_(max_len) {
  diagrams_ = enumerate_reduced_disks(p, max_area);
}

Tri BoundedOracle::query(const Word& w) const {
  if (w.size() > max_len_) return Tri::unknown;
  Word r = free_reduce(w);
  if (r.empty()) return Tri::yes;
  auto [core, conj] = cyclically_reduce(r);
  (void)conj;
  for (const auto& d : diagrams_) {
    if (d.area() == 0) continue;
    CyclicWord bw(d.boundary_word());
    if (bw.size() != core.size()) continue;
    if (bw.equal_up_to_inversion(core)) return Tri::yes;
  }
  return Tri::unknown;
}

std::optional<DiskDiagram> BoundedOracle::certificate(const Word& w) const {
  if (w.size() > max_len_) return std::nullopt;
  Word r = free_reduce(w);
  if (r.empty()) return single_vertex_diagram();
  auto [core, conj] = cyclically_reduce(r);
  (void)conj;
  for (const auto& d : diagrams_) {
    if (d.area() == 0) continue;
    CyclicWord bw(d.boundary_word());
    if (bw.size() != core.size()) continue;
    if (bw.equal_up_to_inversion(core)) return d;
  }
  return std::nullopt;
}

BoundedTrivialResult bounded_oracle_trivial(const Word& w, const Presentation& p, int max_area,
                                            int max_len) {
  BoundedOracle oracle(p, max_area, max_len);
  BoundedTrivialResult out;
  if (oracle.query(w) == Tri::yes) {
    out.trivial = true;
    out.diagram = oracle.certificate(w);
  }
  return out;
}

}  // namespace collapsar
