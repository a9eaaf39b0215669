#include "wordeq/engine.hpp"

#include <algorithm>

namespace wordeq {

namespace {

bool contains(const std::vector<Letter>& v, Letter x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

std::vector<Letter> sorted_unique(std::vector<Letter> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

BitVec2n transform_initial(const BitVec2n& I, const MonElem& m) {
  // I'^T = I^T m, i.e. I' = m^T I blockwise.
  BitVec2n out;
  const int n = m.dim();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (((I.upper >> i) & 1u) && m.blockA().get(i, j)) out.upper |= 1ull << j;
      if (((I.lower >> i) & 1u) && m.blockB().get(i, j)) out.lower |= 1ull << j;
    }
  }
  return out;
}

BitVec2n transform_final(const MonElem& m, const BitVec2n& F) {
  BitVec2n out;
  const int n = m.dim();
  for (int i = 0; i < n; ++i) {
    if (m.blockA().row(i) & F.upper) out.upper |= 1ull << i;
    if (m.blockB().row(i) & F.lower) out.lower |= 1ull << i;
  }
  return out;
}

}  // namespace

EquationE apply_base_change(const BaseChange& beta, const EquationE& eprime,
                            const std::vector<Letter>& gamma, const ConstraintHom& h) {
  const InvAlphabet& alph = *eprime.alph;
  for (const auto& [a, img] : beta) {
    if (!alph.is_constant(a)) throw std::invalid_argument("base change on a variable");
    auto it = beta.find(alph.bar(a));
    if (it != beta.end()) {
      if (!eq_eval(it->second, involute_expr(alph, img))) {
        throw std::invalid_argument("base change not involution compatible at " + alph.name(a));
      }
    }
    if (eprime.h.contains(a) && eprime.h.at(a) != hom_of_expr(h, img, h.dim())) {
      throw std::invalid_argument("base change violates h' = h beta at " + alph.name(a));
    }
    for (Letter b : letters_of(img)) {
      if (!contains(gamma, b)) {
        throw std::invalid_argument("base change image uses a letter outside gamma");
      }
    }
  }
  for (Letter a : eprime.gamma) {
    // letters without an entry are mapped identically and must exist below
    if (!beta.count(a) && !contains(gamma, a)) {
      throw std::invalid_argument("implicit identity base change outside gamma: " + alph.name(a));
    }
  }

  EquationE out;
  out.alph = eprime.alph;
  out.gamma = gamma;
  out.omega = eprime.omega;
  out.n = eprime.n;
  out.h = h;
  out.rho = eprime.rho;
  out.residual = eprime.residual;
  out.lhs = subst_letters(eprime.lhs, beta);
  out.rhs = subst_letters(eprime.rhs, beta);
  return out;
}

EquationE apply_projection(const Projection& pi, const EquationE& e) {
  const InvAlphabet& alph = *e.alph;
  EquationE out = e;
  for (const auto& [a, w] : pi) {
    if (contains(e.gamma, a)) {
      if (w.size() != 1 || w[0] != a) {
        throw std::invalid_argument("projection must be the identity on gamma");
      }
      continue;
    }
    auto bar_it = pi.find(alph.bar(a));
    if (bar_it == pi.end() || bar_it->second != involute(alph, w)) {
      throw std::invalid_argument("projection not involution compatible at " + alph.name(a));
    }
    for (Letter b : w.letters) {
      if (!contains(e.gamma, b)) {
        throw std::invalid_argument("projection image outside gamma");
      }
    }
    out.gamma.push_back(a);
    out.h.set(a, hom_image(e.h, w));
  }
  out.gamma = sorted_unique(std::move(out.gamma));
  return out;
}

bool projection_exists(const EquationE& e, const EquationE& eprime, std::size_t budget) {
  return find_projection(e, eprime, budget).has_value();
}

std::optional<Projection> find_projection(const EquationE& e, const EquationE& eprime,
                                          std::size_t budget) {
  const InvAlphabet& alph = *e.alph;
  Projection pi;
  for (Letter a : eprime.gamma) {
    if (contains(e.gamma, a)) {
      if (eprime.h.at(a) != e.h.at(a)) return std::nullopt;
      continue;
    }
    if (pi.count(a)) continue;
    const MonElem& target = eprime.h.at(a);
    std::optional<Word> w;
    if (alph.is_self_bar(a)) {
      w = exists_selfinvolutive_word_with_image(alph, e.gamma, e.h, target, budget);
      if (!w) return std::nullopt;
      pi[a] = *w;
    } else {
      w = exists_word_with_image(alph, e.gamma, e.h, target, budget);
      if (!w) return std::nullopt;
      pi[a] = *w;
      pi[alph.bar(a)] = involute(alph, *w);
    }
  }
  return pi;
}

EquationE apply_partial_solution(const PartialSolution& delta, const EquationE& e) {
  const InvAlphabet& alph = *e.alph;
  const int n = e.n;

  // Validate the images pairwise and build the substitution map.
  std::map<Letter, ExpExpr> subst;
  std::vector<Letter> kept;
  for (Letter x : e.omega) {
    auto it = delta.images.find(x);
    if (it == delta.images.end()) {
      kept.push_back(x);  // implicit identity
      continue;
    }
    const PartialImage& im = it->second;
    for (const ExpExpr* part : {&im.prefix, &im.suffix}) {
      for (Letter b : letters_of(*part)) {
        if (!alph.is_constant(b) || !contains(e.gamma, b)) {
          throw std::invalid_argument("partial solution image outside gamma*");
        }
      }
    }
    auto bar_it = delta.images.find(alph.bar(x));
    if (bar_it == delta.images.end()) throw std::invalid_argument("partial solution missing bar partner");
    const PartialImage& bim = bar_it->second;
    if (im.keeps_var != bim.keeps_var ||
        !eq_eval(bim.prefix, involute_expr(alph, im.keeps_var ? im.suffix : im.prefix)) ||
        (im.keeps_var && !eq_eval(bim.suffix, involute_expr(alph, im.prefix)))) {
      throw std::invalid_argument("partial solution not involution compatible at " + alph.name(x));
    }

    if (im.keeps_var) {
      kept.push_back(x);
      ExpExpr xe = ExpExpr::literal(word_of(x));
      subst.emplace(x, ExpExpr::concat(ExpExpr::concat(im.prefix, xe), im.suffix));
      // rho bookkeeping: rho(X) = h(u) rho'(X) h(v)
      if (e.has_rho(x)) {
        auto rp = delta.rho_prime.find(x);
        if (rp == delta.rho_prime.end()) {
          throw std::invalid_argument("kept variable loses its constraint: " + alph.name(x));
        }
        MonElem lhs = hom_of_expr(e.h, im.prefix, n) * rp->second * hom_of_expr(e.h, im.suffix, n);
        if (lhs != e.rho.at(x)) {
          throw std::invalid_argument("rho bookkeeping fails at " + alph.name(x));
        }
      }
    } else {
      subst.emplace(x, im.prefix);
      if (e.has_rho(x) && hom_of_expr(e.h, im.prefix, n) != e.rho.at(x)) {
        throw std::invalid_argument("eliminated variable contradicts rho at " + alph.name(x));
      }
    }
  }

  EquationE out;
  out.alph = e.alph;
  out.gamma = e.gamma;
  out.omega = sorted_unique(std::move(kept));
  out.n = e.n;
  out.h = e.h;
  for (Letter x : out.omega) {
    auto rp = delta.rho_prime.find(x);
    if (rp != delta.rho_prime.end()) {
      out.rho.emplace(x, rp->second);
    } else if (!delta.images.count(x) && e.has_rho(x)) {
      out.rho.emplace(x, e.rho.at(x));  // identity image keeps the constraint
    }
  }
  // Residual acceptance checks transport along the guessed prefix/suffix.
  for (const AcceptancePair& p : e.residual) {
    auto it = delta.images.find(p.var);
    if (it == delta.images.end()) {
      out.residual.push_back(p);
      continue;
    }
    const PartialImage& im = it->second;
    if (im.keeps_var) {
      AcceptancePair q = p;
      q.I = transform_initial(p.I, hom_of_expr(e.h, im.prefix, n));
      q.F = transform_final(hom_of_expr(e.h, im.suffix, n), p.F);
      out.residual.push_back(q);
    } else if (!check_acceptance(p, hom_of_expr(e.h, im.prefix, n))) {
      throw std::invalid_argument("eliminated variable fails a residual acceptance check");
    }
  }
  out.lhs = subst_letters(e.lhs, subst);
  out.rhs = subst_letters(e.rhs, subst);
  return out;
}

ArcCheck verify_arc(const Arc& arc, std::uint64_t cap) {
  try {
    EquationE projected = apply_projection(arc.pi, arc.source);
    EquationE via_delta = apply_partial_solution(arc.delta, projected);
    EquationE via_beta = apply_base_change(arc.beta, arc.target, projected.gamma, projected.h);

    if (!eq_eval(via_delta.lhs, via_beta.lhs, cap) || !eq_eval(via_delta.rhs, via_beta.rhs, cap)) {
      return {false, "delta_*(pi^*(E)) and beta_*(E') differ on the sides"};
    }
    auto om1 = sorted_unique(via_delta.omega);
    auto om2 = sorted_unique(via_beta.omega);
    if (om1 != om2) return {false, "kept variable sets differ"};
    for (Letter x : om1) {
      bool c1 = via_delta.rho.count(x) != 0;
      bool c2 = via_beta.rho.count(x) != 0;
      if (c1 != c2 || (c1 && via_delta.rho.at(x) != via_beta.rho.at(x))) {
        return {false, "rho bookkeeping differs at " + arc.source.alph->name(x)};
      }
    }
    if (arc.intermediate.alph) {
      if (!eq_eval(arc.intermediate.lhs, via_beta.lhs, cap) ||
          !eq_eval(arc.intermediate.rhs, via_beta.rhs, cap)) {
        return {false, "declared intermediate equation does not match beta_*(E')"};
      }
    }
    return {true, ""};
  } catch (const std::invalid_argument& ex) {
    return {false, ex.what()};
  }
}

Solution pull_back(const Arc& arc, const Solution& target_sigma, std::uint64_t cap) {
  const InvAlphabet& alph = *arc.source.alph;

  std::map<Letter, ExpExpr> beta_subst;
  for (const auto& [a, img] : arc.beta) beta_subst.emplace(a, img);

  auto through_pi = [&](const Word& w) {
    Word out;
    for (Letter a : w.letters) {
      auto it = arc.pi.find(a);
      if (it == arc.pi.end()) {
        out.push_back(a);
      } else {
        out.append(it->second);
      }
    }
    return out;
  };

  Solution out;
  for (Letter x : arc.source.omega) {
    Word mid;
    bool has_mid = false;
    Word pre, suf;
    auto it = arc.delta.images.find(x);
    if (it == arc.delta.images.end()) {
      has_mid = true;
    } else {
      pre = eval(it->second.prefix, cap);
      if (it->second.keeps_var) {
        has_mid = true;
        suf = eval(it->second.suffix, cap);
      }
    }
    if (has_mid) {
      auto ts = target_sigma.find(x);
      if (ts == target_sigma.end()) throw std::invalid_argument("pull_back: target solution incomplete");
      mid = eval(subst_letters(ExpExpr::literal(ts->second), beta_subst), cap);
    }
    Word full = pre;
    full.append(mid);
    full.append(suf);
    out.emplace(x, through_pi(full));
  }
  (void)alph;
  return out;
}

// ---------------------------------------------------------------------------
// Cuts

CutData compute_cuts(const EquationE& e, const Solution& sigma) {
  if (!check_solution(e, sigma)) {
    throw std::invalid_argument("compute_cuts: sigma does not solve the equation");
  }
  CutData cd;
  cd.eq = &e;
  Word L = eval(e.lhs);
  Word R = eval(e.rhs);
  cd.g = static_cast<int>(L.size());
  cd.d = static_cast<int>(L.size() + R.size());
  cd.symbols = L.letters;
  cd.symbols.insert(cd.symbols.end(), R.letters.begin(), R.letters.end());
  cd.w0 = apply_solution(e, e.lhs, sigma);
  cd.m0 = static_cast<int>(cd.w0.size());
  if (cd.m0 == 0) throw std::invalid_argument("compute_cuts: empty solution word");

  auto sym_len = [&](Letter x) -> int {
    if (e.alph->is_constant(x)) return 1;
    int len = static_cast<int>(sigma.at(x).size());
    if (len == 0) {
      throw std::invalid_argument("compute_cuts: sigma(x_i) = 1 must be eliminated beforehand");
    }
    return len;
  };

  cd.l.resize(static_cast<size_t>(cd.d));
  cd.r.resize(static_cast<size_t>(cd.d));
  int pos = 0;
  for (int i = 0; i < cd.d; ++i) {
    if (i == cd.g) pos = 0;  // right-hand side restarts at the left edge
    int len = sym_len(cd.symbols[static_cast<size_t>(i)]);
    cd.l[static_cast<size_t>(i)] = pos;
    cd.r[static_cast<size_t>(i)] = pos + len;
    pos += len;
  }
  for (int i = 0; i < cd.d; ++i) {
    cd.cuts.insert(cd.l[static_cast<size_t>(i)]);
    cd.cuts.insert(cd.r[static_cast<size_t>(i)]);
  }
  return cd;
}

// ---------------------------------------------------------------------------
// Interval closure

IntervalClosure::IntervalClosure(const CutData& cd) : cd_(cd) {
  const InvAlphabet& alph = *cd.eq->alph;
  for (int i = 0; i < cd.d; ++i) {
    for (int j = 0; j < cd.d; ++j) {
      Letter xi = cd.symbols[static_cast<size_t>(i)];
      Letter xj = cd.symbols[static_cast<size_t>(j)];
      if (xi == xj && i != j) pairs_.push_back({i, j, true});
      if (alph.bar(xi) == xj) pairs_.push_back({i, j, false});
    }
  }
}

std::vector<Interval> IntervalClosure::neighbors(Interval iv) const {
  std::vector<Interval> out;
  int lo = std::min(iv.lo, iv.hi), hi = std::max(iv.lo, iv.hi);
  for (const Pair& p : pairs_) {
    int li = cd_.l[static_cast<size_t>(p.i)];
    int ri = cd_.r[static_cast<size_t>(p.i)];
    if (lo < li || hi > ri) continue;
    int mu = iv.lo - li, nu = iv.hi - li;
    if (p.same) {
      int lj = cd_.l[static_cast<size_t>(p.j)];
      out.push_back({lj + mu, lj + nu});
    } else {
      int rj = cd_.r[static_cast<size_t>(p.j)];
      out.push_back({rj - mu, rj - nu});
    }
  }
  return out;
}

const std::vector<Interval>& IntervalClosure::cls(Interval iv) {
  auto known = class_of_.find(iv);
  if (known != class_of_.end()) return classes_[known->second];

  std::vector<Interval> members{iv};
  std::map<Interval, bool> seen{{iv, true}};
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (Interval next : neighbors(members[head])) {
      if (seen.emplace(next, true).second) members.push_back(next);
    }
  }
  std::size_t id = classes_.size();
  classes_.push_back(std::move(members));
  for (const Interval& m : classes_.back()) class_of_.emplace(m, id);
  return classes_.back();
}

bool IntervalClosure::is_free(Interval iv) {
  for (const Interval& m : cls(iv)) {
    int lo = std::min(m.lo, m.hi), hi = std::max(m.lo, m.hi);
    auto it = cd_.cuts.upper_bound(lo);
    if (it != cd_.cuts.end() && *it < hi) return false;
  }
  return true;
}

std::vector<int> IntervalClosure::implicit_cuts(Interval iv) {
  if (!iv.positive()) throw std::invalid_argument("implicit_cuts: positive interval required");
  std::set<int> out;
  for (const Interval& m : cls(iv)) {
    int lo = std::min(m.lo, m.hi), hi = std::max(m.lo, m.hi);
    for (auto it = cd_.cuts.upper_bound(lo); it != cd_.cuts.end() && *it < hi; ++it) {
      int gamma = iv.lo + std::abs(*it - m.lo);
      if (iv.lo < gamma && gamma < iv.hi) out.insert(gamma);
    }
  }
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Maximal free factorization

FreeFactorization maximal_free_factorization(const EquationE& e, const Solution& sigma) {
  CutData cd = compute_cuts(e, sigma);
  IntervalClosure closure(cd);
  InvAlphabet& alph = *e.alph;

  FreeFactorization out;
  out.alphas.push_back(0);
  int pos = 0;
  while (pos < cd.m0) {
    int q = pos + 1;
    while (q + 1 <= cd.m0 && closure.is_free({pos, q + 1})) ++q;
    out.alphas.push_back(q);
    pos = q;
  }

  // Letters for the factors; length-1 factors keep their original letter.
  std::map<Word, Letter> letter_for;
  auto intern = [&](const Word& w) -> Letter {
    if (w.size() == 1) return w[0];
    auto it = letter_for.find(w);
    if (it != letter_for.end()) return it->second;
    Word wbar = involute(alph, w);
    Letter fresh;
    if (w == wbar) {
      fresh = alph.fresh_involutive_constant("g");
      letter_for.emplace(w, fresh);
    } else {
      fresh = alph.fresh_pair(LetterKind::constant, "g");
      letter_for.emplace(w, fresh);
      letter_for.emplace(wbar, alph.bar(fresh));
    }
    ++out.fresh_letters;
    return letter_for.at(w);
  };

  std::map<int, int> newpos;  // old position -> new position for alphas
  std::vector<Letter> new_letters;
  std::map<Letter, Word> expansion;
  for (std::size_t i = 0; i + 1 < out.alphas.size(); ++i) {
    Word piece = factor(alph, cd.w0, {out.alphas[i], out.alphas[i + 1]});
    Letter la = intern(piece);
    expansion[la] = piece;
    expansion[alph.bar(la)] = involute(alph, piece);
    out.w0_new.push_back(la);
    newpos[out.alphas[i]] = static_cast<int>(i);
  }
  newpos[cd.m0] = static_cast<int>(out.w0_new.size());

  for (Letter la : out.w0_new.letters) {
    new_letters.push_back(la);
    new_letters.push_back(alph.bar(la));
  }
  for (const ExpExpr* side : {&e.lhs, &e.rhs}) {
    for (Letter a : letters_of(*side)) {
      if (alph.is_constant(a)) {
        new_letters.push_back(a);
        new_letters.push_back(alph.bar(a));
      }
    }
  }
  std::sort(new_letters.begin(), new_letters.end());
  new_letters.erase(std::unique(new_letters.begin(), new_letters.end()), new_letters.end());
  out.new_gamma = new_letters;

  EquationE rebased;
  rebased.alph = e.alph;
  rebased.gamma = out.new_gamma;
  rebased.omega = e.omega;
  rebased.n = e.n;
  rebased.h = ConstraintHom(e.n);
  for (Letter a : out.new_gamma) {
    auto ex = expansion.find(a);
    rebased.h.set(a, ex != expansion.end() ? hom_image(e.h, ex->second) : e.h.at(a));
  }
  rebased.rho = e.rho;
  rebased.residual = e.residual;
  rebased.lhs = e.lhs;
  rebased.rhs = e.rhs;
  out.rebased = rebased;

  for (Letter x : e.omega) {
    auto it = std::find(cd.symbols.begin(), cd.symbols.end(), x);
    if (it == cd.symbols.end()) continue;
    int i = static_cast<int>(it - cd.symbols.begin());
    Word img;
    for (int k = newpos.at(cd.l[static_cast<size_t>(i)]); k < newpos.at(cd.r[static_cast<size_t>(i)]); ++k) {
      img.push_back(out.w0_new[static_cast<size_t>(k)]);
    }
    out.sigma_new[x] = std::move(img);
  }
  for (Letter x : e.omega) {
    if (out.sigma_new.count(x)) continue;
    auto partner = out.sigma_new.find(alph.bar(x));
    // a pair absent from both sides keeps empty images
    out.sigma_new[x] =
        partner != out.sigma_new.end() ? involute(alph, partner->second) : Word{};
  }

  Arc arc;
  arc.source = e;
  arc.target = rebased;
  for (const auto& [a, w] : expansion) {
    if (!contains(e.gamma, a)) arc.pi[a] = w;
  }
  for (Letter x : e.omega) {
    PartialImage id;
    id.keeps_var = true;
    arc.delta.images.emplace(x, id);
  }
  arc.delta.rho_prime = e.rho;
  EquationE projected = apply_projection(arc.pi, e);
  arc.intermediate = apply_base_change(arc.beta, rebased, projected.gamma, projected.h);
  arc.note = "alphabet reduction along maximal free intervals";
  out.arc = std::move(arc);
  return out;
}

// ---------------------------------------------------------------------------
// Critical words and l-factorizations

std::set<Word> critical_words(const InvAlphabet& alph, const Word& w0, int ell,
                              const std::set<int>& cuts) {
  const int m0 = static_cast<int>(w0.size());
  if (ell < 1 || ell > m0) throw std::invalid_argument("critical_words: 1 <= ell <= m0 required");
  std::set<Word> out;
  for (int c : cuts) {
    if (c < ell || c > m0 - ell) continue;
    Word positive = factor(alph, w0, {c - ell, c + ell});
    out.insert(involute(alph, positive));
    out.insert(std::move(positive));
  }
  return out;
}

Block involute_block(const InvAlphabet& alph, const Block& b) {
  return {involute(alph, b.v), involute(alph, b.w), involute(alph, b.u)};
}

LFactorization l_factorize(const InvAlphabet& alph, const Word& w, int ell,
                           const std::set<Word>& crit) {
  if (w.empty()) throw std::invalid_argument("l_factorize: nonempty word required");
  const int m = static_cast<int>(w.size());
  LFactorization lf;
  lf.ell = ell;
  lf.splits.push_back(0);
  for (int s = ell; s <= m - ell; ++s) {
    if (crit.count(factor(alph, w, {s - ell, s + ell}))) lf.splits.push_back(s);
  }
  if (lf.splits.back() != m) lf.splits.push_back(m);

  const int k = static_cast<int>(lf.splits.size()) - 1;
  for (int i = 0; i < k; ++i) {
    Block b;
    int lo = lf.splits[static_cast<size_t>(i)];
    int hi = lf.splits[static_cast<size_t>(i + 1)];
    b.w = factor(alph, w, {lo, hi});
    if (i > 0) b.u = factor(alph, w, {lo - ell, lo});
    if (i + 1 < k) b.v = factor(alph, w, {hi, hi + ell});
    lf.blocks.push_back(std::move(b));
  }
  return lf;
}

HeadBodyTail head_body_tail(const LFactorization& lf) {
  HeadBodyTail out;
  out.head = lf.blocks.front();
  out.tail = lf.blocks.back();
  out.head_len = static_cast<int>(out.head.w.size());
  out.tail_len = static_cast<int>(out.tail.w.size());
  if (lf.blocks.size() >= 2) {
    out.body.assign(lf.blocks.begin() + 1, lf.blocks.end() - 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exponent of periodicity

int exponent_of_periodicity(const Word& w) {
  const int n = static_cast<int>(w.size());
  if (n == 0) return 0;
  // match[i][j]: longest common prefix of the suffixes at i and j.
  std::vector<std::vector<int>> match(static_cast<size_t>(n + 1),
                                      std::vector<int>(static_cast<size_t>(n + 1), 0));
  for (int i = n - 1; i >= 0; --i) {
    for (int j = n - 1; j >= 0; --j) {
      if (w[static_cast<size_t>(i)] == w[static_cast<size_t>(j)]) {
        match[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            1 + match[static_cast<size_t>(i + 1)][static_cast<size_t>(j + 1)];
      }
    }
  }
  int best = 1;
  for (int i = 0; i < n; ++i) {
    for (int period = 1; i + period <= n; ++period) {
      int m = std::min(match[static_cast<size_t>(i)][static_cast<size_t>(i + period)],
                       n - i - period);
      best = std::max(best, 1 + m / period);
    }
  }
  return best;
}

}  // namespace wordeq
