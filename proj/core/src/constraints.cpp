#include "wordeq/constraints.hpp"

#include <bit>
#include <deque>

namespace wordeq {

BoolMat BoolMat::identity(int n) {
  BoolMat m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BoolMat BoolMat::operator*(const BoolMat& o) const {
  if (n_ != o.n_) throw std::invalid_argument("BoolMat: dimension mismatch");
  BoolMat out(n_);
  for (int i = 0; i < n_; ++i) {
    std::uint64_t acc = 0;
    std::uint64_t r = rows_[static_cast<size_t>(i)];
    while (r) {
      int j = std::countr_zero(r);
      r &= r - 1;
      acc |= o.rows_[static_cast<size_t>(j)];
    }
    out.rows_[static_cast<size_t>(i)] = acc;
  }
  return out;
}

BoolMat BoolMat::transposed() const {
  BoolMat out(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (get(i, j)) out.set(j, i, true);
  return out;
}

std::size_t BoolMat::hash() const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::size_t>(n_);
  for (std::uint64_t r : rows_) h = (h ^ r) * 0x100000001b3ull;
  return h;
}

MonElem MonElem::pow(std::uint64_t k) const {
  MonElem acc = MonElem::identity(dim());
  MonElem base = *this;
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

std::size_t MonElem::hash() const noexcept {
  return A_.hash() * 0x9e3779b97f4a7c15ull + B_.hash();
}

const MonElem& ConstraintHom::at(Letter a) const {
  auto it = map_.find(a);
  if (it == map_.end()) throw std::invalid_argument("ConstraintHom: letter without image");
  return it->second;
}

HomFromAutomata hom_from_automata(const InvAlphabet& alph, const std::vector<Letter>& gamma,
                                  const std::vector<Nfa>& automata) {
  int n = 0;
  for (const Nfa& a : automata) {
    if (a.has_epsilon()) throw std::invalid_argument("hom_from_automata: automata must be eps-free");
    n += a.num_states();
  }
  if (n == 0) n = 1;  // empty constraint list still needs a monoid to live in
  if (n > 64) throw ResourceError("hom_from_automata: combined state space beyond 64");

  // g(a) over the union state space
  std::map<Letter, BoolMat> g;
  for (Letter x : gamma) g.emplace(x, BoolMat(n));
  int offset = 0;
  for (const Nfa& a : automata) {
    for (const auto& t : a.transitions()) {
      auto it = g.find(t.label);
      if (it == g.end()) throw std::invalid_argument("hom_from_automata: transition letter outside gamma");
      it->second.set(offset + t.from, offset + t.to, true);
    }
    offset += a.num_states();
  }

  HomFromAutomata out;
  out.n = n;
  out.hom = ConstraintHom(n);
  for (Letter x : gamma) {
    out.hom.set(x, MonElem(g.at(x), g.at(alph.bar(x)).transposed()));
  }

  offset = 0;
  for (const Nfa& a : automata) {
    AcceptancePair p;
    for (int q : a.initial()) p.I.upper |= 1ull << (offset + q);
    for (int q : a.final()) p.F.upper |= 1ull << (offset + q);
    out.pairs.push_back(p);
    offset += a.num_states();
  }
  return out;
}

MonElem hom_image(const ConstraintHom& h, const Word& w) {
  MonElem acc = MonElem::identity(h.dim());
  for (Letter a : w.letters) acc = acc * h.at(a);
  return acc;
}

bool acceptance_value(const BitVec2n& I, const MonElem& m, const BitVec2n& F) {
  const int n = m.dim();
  for (int i = 0; i < n; ++i) {
    if (!((I.upper >> i) & 1u)) continue;
    if (m.blockA().row(i) & F.upper) return true;
  }
  for (int i = 0; i < n; ++i) {
    if (!((I.lower >> i) & 1u)) continue;
    if (m.blockB().row(i) & F.lower) return true;
  }
  return false;
}

bool check_acceptance(const AcceptancePair& p, const MonElem& m) {
  bool v = acceptance_value(p.I, m, p.F);
  return p.polarity == Polarity::positive ? v : !v;
}

Word ReachSet::witness(const MonElem& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) throw std::invalid_argument("ReachSet: element not contained");
  Word out;
  for (int node = it->second; parent_[static_cast<size_t>(node)] >= 0;
       node = parent_[static_cast<size_t>(node)]) {
    out.push_back(via_[static_cast<size_t>(node)]);
  }
  std::reverse(out.letters.begin(), out.letters.end());
  return out;
}

ReachSet reachable_submonoid(const InvAlphabet& alph, const std::vector<Letter>& gamma,
                             const ConstraintHom& h, std::size_t budget) {
  (void)alph;
  ReachSet rs;
  rs.elems_.push_back(MonElem::identity(h.dim()));
  rs.parent_.push_back(-1);
  rs.via_.push_back(kNoLetter);
  rs.index_.emplace(rs.elems_.front(), 0);
  for (std::size_t head = 0; head < rs.elems_.size(); ++head) {
    MonElem cur = rs.elems_[head];
    for (Letter a : gamma) {
      MonElem next = cur * h.at(a);
      if (rs.index_.count(next)) continue;
      if (rs.elems_.size() >= budget) throw ResourceError("reachable submonoid budget exceeded");
      rs.index_.emplace(next, static_cast<int>(rs.elems_.size()));
      rs.elems_.push_back(std::move(next));
      rs.parent_.push_back(static_cast<int>(head));
      rs.via_.push_back(a);
    }
  }
  return rs;
}

std::optional<Word> exists_word_with_image(const InvAlphabet& alph,
                                           const std::vector<Letter>& gamma,
                                           const ConstraintHom& h, const MonElem& target,
                                           std::size_t budget) {
  auto reach = reachable_submonoid(alph, gamma, h, budget);
  if (!reach.contains(target)) return std::nullopt;
  return reach.witness(target);
}

std::optional<Word> exists_selfinvolutive_word_with_image(
    const InvAlphabet& alph, const std::vector<Letter>& gamma, const ConstraintHom& h,
    const MonElem& target, std::size_t budget) {
  auto reach = reachable_submonoid(alph, gamma, h, budget);
  // Middle letters: the unit or a constant fixed by the involution.
  std::vector<std::optional<Letter>> middles{std::nullopt};
  for (Letter a : gamma) {
    if (alph.is_self_bar(a)) middles.push_back(a);
  }
  std::optional<Word> best;
  for (const MonElem& B : reach.elements()) {
    for (const auto& mid : middles) {
      MonElem m = mid ? B * h.at(*mid) * B.involuted() : B * B.involuted();
      if (m != target) continue;
      Word w = reach.witness(B);
      if (mid) w.push_back(*mid);
      w.append(involute(alph, reach.witness(B)));
      if (!best || w.size() < best->size()) best = std::move(w);
    }
  }
  return best;
}

std::uint64_t idempotent_exponent(int n) {
  if (n < 1) throw std::invalid_argument("idempotent_exponent: n must be positive");
  if (n > 8) throw ResourceError("idempotent_exponent: n beyond the desk-scale cap");
  // n = 2 needs an even exponent >= 3 (a two-cycle permutation block has
  // period two), so max{3, n!} is corrected to 4 there.
  if (n == 2) return 4;
  std::uint64_t fact = 1;
  for (int i = 2; i <= n; ++i) fact *= static_cast<std::uint64_t>(i);
  return std::max<std::uint64_t>(3, fact);
}

}  // namespace wordeq
