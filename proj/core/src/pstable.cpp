#include "wordeq/pstable.hpp"

#include <algorithm>
#include <limits>

namespace wordeq {

namespace {

bool matches_at(const Word& w, int pos, const Word& pat) {
  if (pos < 0 || pos + static_cast<int>(pat.size()) > static_cast<int>(w.size())) return false;
  return std::equal(pat.letters.begin(), pat.letters.end(), w.letters.begin() + pos);
}

bool is_factor(const Word& pat, const Word& host) {
  if (pat.empty()) return true;
  for (int i = 0; i + static_cast<int>(pat.size()) <= static_cast<int>(host.size()); ++i) {
    if (matches_at(host, i, pat)) return true;
  }
  return false;
}

// Occurrence-start prefix counts for O(1) "occurs inside [x,y)" queries.
struct OccIndex {
  std::vector<int> prefix;  // prefix[i] = #occurrence starts < i
  int pat_len = 0;

  OccIndex() = default;
  OccIndex(const Word& w, const Word& pat) : pat_len(static_cast<int>(pat.size())) {
    prefix.assign(w.size() + 2, 0);
    for (int i = 0; i <= static_cast<int>(w.size()); ++i) {
      prefix[static_cast<size_t>(i) + 1] =
          prefix[static_cast<size_t>(i)] + (matches_at(w, i, pat) ? 1 : 0);
    }
  }

  bool at(int i) const {
    if (i < 0 || i + 1 >= static_cast<int>(prefix.size())) return false;
    return prefix[static_cast<size_t>(i) + 1] - prefix[static_cast<size_t>(i)] > 0;
  }
  // an occurrence lies fully inside [x, y)
  bool inside(int x, int y) const {
    int last = y - pat_len;  // latest admissible start
    if (last < x) return false;
    return prefix[static_cast<size_t>(last) + 1] - prefix[static_cast<size_t>(x)] > 0;
  }
};

constexpr int kInf = std::numeric_limits<int>::max() / 4;

}  // namespace

bool is_primitive(const Word& p) {
  const int n = static_cast<int>(p.size());
  if (n == 0) return false;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (int i = d; i < n && periodic; ++i) {
      if (p[static_cast<size_t>(i)] != p[static_cast<size_t>(i - d)]) periodic = false;
    }
    if (periodic) return false;
  }
  return true;
}

namespace {

// Shared minimal-block-count search.  A "state" is the position where the
// current u-piece starts together with the sign of the preceding block.
// Transition: pick the next block start s (the u-piece is w[t,s)), a sign
// and an exponent, and continue after the block.
struct NormalFormSearch {
  const Word& w;
  int N;

  // per sign: occurrence index of the boundary marker (p^eps resp. rs/sr)
  // and of the block unit.
  struct SignData {
    OccIndex end_marker;    // word the u-piece must END with (before a block)
    OccIndex start_marker;  // word the u-piece must START with (after a block)
    int marker_len = 0;
  };
  std::vector<SignData> signs;
  // validity of "no forbidden factor inside [x,y)" shared by all pieces
  std::vector<OccIndex> forbidden;

  // extra boundary exclusions (second kind): u must not end with end_sq /
  // start with start_sq (occurrence flush at the boundary).
  std::optional<OccIndex> end_sq, start_sq;

  // block layout: given sign and exponent, length of the block
  virtual int block_len(int sign, int alpha) const = 0;
  virtual bool block_matches(int sign, int s, int alpha) const = 0;
  virtual ~NormalFormSearch() = default;

  explicit NormalFormSearch(const Word& word) : w(word), N(static_cast<int>(word.size())) {}

  bool piece_clean(int x, int y) const {
    for (const auto& f : forbidden) {
      if (f.inside(x, y)) return false;
    }
    return true;
  }

  bool piece_boundaries_ok(int x, int y, bool is_first, bool is_last, int sign_in,
                           int sign_out) const {
    if (!is_first) {
      const SignData& sd = signs[static_cast<size_t>(sign_in)];
      if (!sd.start_marker.at(x)) return false;
      if (start_sq && start_sq->at(x)) return false;
    }
    if (!is_last) {
      const SignData& sd = signs[static_cast<size_t>(sign_out)];
      if (y - sd.marker_len < x) return false;
      if (!sd.end_marker.at(y - sd.marker_len)) return false;
      if (end_sq && end_sq->at(y - (end_sq->pat_len))) return false;
    }
    return piece_clean(x, y);
  }

  struct Step {
    int s = 0;      // block start
    int sign = 0;
    int alpha = 0;
  };

  // f[t][sign_in] plus parents; sign_in indexes signs, plus a pseudo sign
  // for the very first piece.
  std::vector<std::vector<int>> cost;
  std::vector<std::vector<Step>> parent;

  int solve_from(int t, int sign_in, bool is_first);

  std::vector<Step> reconstruct() {
    std::vector<Step> steps;
    int t = 0, sign_in = 0;
    bool is_first = true;
    for (;;) {
      int c = solve_from(t, sign_in, is_first);
      if (c == 0) break;
      const Step& st = is_first ? first_parent : parent[static_cast<size_t>(t)][static_cast<size_t>(sign_in)];
      steps.push_back(st);
      t = st.s + block_len(st.sign, st.alpha);
      sign_in = st.sign;
      is_first = false;
    }
    return steps;
  }

  int first_cost = -1;
  Step first_parent;
};

int NormalFormSearch::solve_from(int t, int sign_in, bool is_first) {
  if (!is_first) {
    if (cost.empty()) {
      cost.assign(static_cast<size_t>(N + 1), std::vector<int>(signs.size(), -1));
      parent.assign(static_cast<size_t>(N + 1), std::vector<Step>(signs.size()));
    }
    int& memo = cost[static_cast<size_t>(t)][static_cast<size_t>(sign_in)];
    if (memo != -1) return memo;
    memo = kInf;  // cycle guard; real value set below
  } else if (first_cost != -1) {
    return first_cost;
  }

  int best = kInf;
  Step best_step;

  // option: this piece is the last one
  if (piece_boundaries_ok(t, N, is_first, /*is_last=*/true, sign_in, 0)) best = 0;

  for (std::size_t sg = 0; sg < signs.size(); ++sg) {
    const SignData& sd = signs[sg];
    for (int s = t + (is_first ? sd.marker_len : 0); s <= N; ++s) {
      if (s - sd.marker_len < t) continue;
      if (!piece_boundaries_ok(t, s, is_first, /*is_last=*/false, sign_in, static_cast<int>(sg)))
        continue;
      for (int alpha = 0;; ++alpha) {
        int blen = block_len(static_cast<int>(sg), alpha);
        if (s + blen > N) break;
        if (!block_matches(static_cast<int>(sg), s, alpha)) break;
        int rest = solve_from(s + blen, static_cast<int>(sg), false);
        if (rest != kInf && rest + 1 < best) {
          best = rest + 1;
          best_step = {s, static_cast<int>(sg), alpha};
        }
      }
    }
  }

  if (is_first) {
    first_cost = best;
    first_parent = best_step;
  } else {
    cost[static_cast<size_t>(t)][static_cast<size_t>(sign_in)] = best;
    parent[static_cast<size_t>(t)][static_cast<size_t>(sign_in)] = best_step;
  }
  return best;
}

struct FirstKindSearch : NormalFormSearch {
  Word p, pbar;
  int lp;

  FirstKindSearch(const InvAlphabet& alph, const Word& word, const Word& prim)
      : NormalFormSearch(word), p(prim), pbar(involute(alph, prim)),
        lp(static_cast<int>(prim.size())) {
    signs.resize(2);
    for (int sg = 0; sg < 2; ++sg) {
      const Word& q = sg == 0 ? p : pbar;
      signs[static_cast<size_t>(sg)].end_marker = OccIndex(w, q);
      signs[static_cast<size_t>(sg)].start_marker = OccIndex(w, q);
      signs[static_cast<size_t>(sg)].marker_len = lp;
    }
    forbidden.push_back(OccIndex(w, concat(p, p)));
    forbidden.push_back(OccIndex(w, concat(pbar, pbar)));
  }

  int block_len(int, int alpha) const override { return alpha * lp; }
  bool block_matches(int sign, int s, int alpha) const override {
    const auto& occ = signs[static_cast<size_t>(sign)].end_marker;
    for (int i = 0; i < alpha; ++i) {
      if (!occ.at(s + i * lp)) return false;
    }
    return true;
  }
};

struct SecondKindSearch : NormalFormSearch {
  Word p, r, s_;
  int lp, lr;
  OccIndex occP;

  SecondKindSearch(const InvAlphabet& alph, const Word& word, const Word& prim, Word rr, Word ss)
      : NormalFormSearch(word), p(prim), r(std::move(rr)), s_(std::move(ss)),
        lp(static_cast<int>(prim.size())), lr(static_cast<int>(r.size())), occP(w, prim) {
    signs.resize(1);
    signs[0].end_marker = OccIndex(w, p);                      // u ends with rs = p
    signs[0].start_marker = OccIndex(w, involute(alph, prim));  // u starts with sr = pbar
    signs[0].marker_len = lp;
    Word p2r = concat(concat(p, p), r);
    forbidden.push_back(OccIndex(w, p2r));
    end_sq = OccIndex(w, concat(p, p));                        // not ending with rsrs
    Word sr = involute(alph, prim);
    start_sq = OccIndex(w, concat(sr, sr));                    // not starting with srsr
  }

  int block_len(int, int alpha) const override { return alpha * lp + lr; }
  bool block_matches(int, int s, int alpha) const override {
    for (int i = 0; i < alpha; ++i) {
      if (!occP.at(s + i * lp)) return false;
    }
    return matches_at(w, s + alpha * lp, r);
  }
};

}  // namespace

PStableNF p_stable_normal_form(const InvAlphabet& alph, const Word& w, const Word& p) {
  if (p.empty()) throw std::invalid_argument("p_stable_normal_form: empty period");
  if (!is_primitive(p)) throw std::invalid_argument("p_stable_normal_form: p must be primitive");

  Word pbar = involute(alph, p);
  Word p2 = concat(p, p);
  PStableNF nf;
  nf.p = p;

  if (!is_factor(pbar, p2)) {
    nf.kind = PStableNF::Kind::first;
    // k = 0 iff neither p^2 nor pbar^2 occurs
    if (!is_factor(p2, w) && !is_factor(concat(pbar, pbar), w)) {
      nf.pieces.push_back(w);
      return nf;
    }
    FirstKindSearch search(alph, w, p);
    if (search.solve_from(0, 0, true) >= kInf) {
      throw std::logic_error("p_stable_normal_form: no valid decomposition (first kind)");
    }
    auto steps = search.reconstruct();
    int t = 0;
    for (const auto& st : steps) {
      nf.pieces.push_back(factor(alph, w, {t, st.s}));
      nf.exps.push_back(st.sign == 0 ? st.alpha : -st.alpha);
      t = st.s + st.alpha * static_cast<int>(p.size());
    }
    nf.pieces.push_back(factor(alph, w, {t, static_cast<int>(w.size())}));
    return nf;
  }

  // Second kind: p = r s with pbar = s r, r and s fixed by the involution.
  nf.kind = PStableNF::Kind::second;
  bool found = false;
  for (int rl = 0; rl <= static_cast<int>(p.size()) && !found; ++rl) {
    Word r = factor(alph, p, {0, rl});
    Word s = factor(alph, p, {rl, static_cast<int>(p.size())});
    if (involute(alph, r) == r && involute(alph, s) == s && concat(s, r) == pbar) {
      nf.r = r;
      nf.s = s;
      found = true;
    }
  }
  if (!found) throw std::logic_error("p_stable_normal_form: no r s decomposition found");

  Word p2r = concat(p2, nf.r);
  if (!is_factor(p2r, w)) {
    nf.pieces.push_back(w);
    return nf;
  }
  SecondKindSearch search(alph, w, p, nf.r, nf.s);
  if (search.solve_from(0, 0, true) >= kInf) {
    throw std::logic_error("p_stable_normal_form: no valid decomposition (second kind)");
  }
  auto steps = search.reconstruct();
  int t = 0;
  for (const auto& st : steps) {
    nf.pieces.push_back(factor(alph, w, {t, st.s}));
    nf.exps.push_back(st.alpha);
    t = st.s + st.alpha * static_cast<int>(p.size()) + static_cast<int>(nf.r.size());
  }
  nf.pieces.push_back(factor(alph, w, {t, static_cast<int>(w.size())}));
  return nf;
}

Word reconstruct(const InvAlphabet& alph, const PStableNF& nf) {
  Word out = nf.pieces.at(0);
  Word pbar = involute(alph, nf.p);
  for (std::size_t i = 0; i < nf.exps.size(); ++i) {
    std::int64_t e = nf.exps[i];
    if (nf.kind == PStableNF::Kind::first) {
      const Word& unit = e >= 0 ? nf.p : pbar;
      for (std::int64_t k = 0; k < std::abs(e); ++k) out.append(unit);
    } else {
      for (std::int64_t k = 0; k < e; ++k) out.append(nf.p);
      out.append(nf.r);
    }
    out.append(nf.pieces.at(i + 1));
  }
  return out;
}

}  // namespace wordeq
