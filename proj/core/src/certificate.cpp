// l-transformations, block-sequence compression and certificate paths.

#include <algorithm>
#include <span>

#include "wordeq/engine.hpp"

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

ExpExpr compress_span(std::span<const Letter> s) {
  if (s.empty()) return ExpExpr::literal(Word{});
  const int n = static_cast<int>(s.size());

  // Earliest start with a repetition; there, widest span, then highest power.
  int best_i = -1, best_p = 0, best_e = 0;
  for (int i = 0; i < n && best_i < 0; ++i) {
    for (int p = 1; i + 2 * p <= n; ++p) {
      int match = 0;
      while (i + p + match < n && s[static_cast<size_t>(i + match)] == s[static_cast<size_t>(i + p + match)]) {
        ++match;
      }
      int e = 1 + match / p;
      if (e < 2) continue;
      if (best_i < 0 || p * e > best_p * best_e ||
          (p * e == best_p * best_e && e > best_e)) {
        best_i = i;
        best_p = p;
        best_e = e;
      }
    }
  }
  if (best_i < 0) {
    return ExpExpr::literal(Word{{s.begin(), s.end()}});
  }

  std::vector<ExpExpr> parts;
  if (best_i > 0) {
    parts.push_back(ExpExpr::literal(Word{{s.begin(), s.begin() + best_i}}));
  }
  parts.push_back(ExpExpr::power(compress_span(s.subspan(static_cast<size_t>(best_i),
                                                         static_cast<size_t>(best_p))),
                                 static_cast<std::uint64_t>(best_e)));
  parts.push_back(compress_span(s.subspan(static_cast<size_t>(best_i + best_p * best_e))));
  return ExpExpr::concat_all(parts);
}

}  // namespace

ExpExpr compress_l_factor(const std::vector<Letter>& seq, std::uint64_t budget) {
  ExpExpr e = compress_span(std::span<const Letter>(seq));
  if (e.size() > budget) {
    throw ResourceError("compressed sequence exceeds the admissibility budget");
  }
  return e;
}

// ---------------------------------------------------------------------------
// l-transformation

LevelData l_transformation(const EquationE& e0, const Solution& sigma, int ell,
                           std::uint64_t budget) {
  InvAlphabet& alph = *e0.alph;
  CutData cd = compute_cuts(e0, sigma);

  LevelData ld;
  ld.ell = ell;
  ld.crit = critical_words(alph, cd.w0, ell, cd.cuts);
  ld.fact = l_factorize(alph, cd.w0, ell, ld.crit);
  const auto& splits = ld.fact.splits;
  const int k = static_cast<int>(ld.fact.blocks.size());

  // Letters for every block of F_l(w0) plus involution partners.
  for (int t = 0; t < k; ++t) {
    const Block& b = ld.fact.blocks[static_cast<size_t>(t)];
    if (!ld.letter_of.count(b)) {
      Block bbar = involute_block(alph, b);
      Letter fresh;
      if (bbar == b) {
        fresh = alph.fresh_involutive_constant("B");
        ld.letter_of.emplace(b, fresh);
      } else {
        fresh = alph.fresh_pair(LetterKind::constant, "B");
        ld.letter_of.emplace(b, fresh);
        ld.letter_of.emplace(bbar, alph.bar(fresh));
        ld.block_of.emplace(alph.bar(fresh), bbar);
      }
      ld.block_of.emplace(fresh, b);
    }
    Letter la = ld.letter_of.at(b);
    if (!ld.occurrence.count(la)) {
      ld.occurrence.emplace(la, Interval{splits[static_cast<size_t>(t)],
                                         splits[static_cast<size_t>(t + 1)]});
    }
  }

  // Standalone factorization data per occurring variable.
  auto splits_in = [&](int lo, int hi) {
    std::vector<int> out;
    for (int s : splits) {
      if (s >= lo + ell && s <= hi - ell) out.push_back(s);
    }
    return out;
  };
  for (int i = 0; i < cd.d; ++i) {
    Letter x = cd.symbols[static_cast<size_t>(i)];
    if (!alph.is_variable(x) || ld.vars.count(x)) continue;
    VarLevelInfo vi;
    vi.occurrence = i;
    int lo = cd.l[static_cast<size_t>(i)], hi = cd.r[static_cast<size_t>(i)];
    std::vector<int> inner = splits_in(lo, hi);
    if (inner.size() >= 2) {
      vi.in_omega = true;
      vi.head_len = inner.front() - lo;
      vi.tail_len = hi - inner.back();
      vi.body_lo = inner.front();
      vi.body_hi = inner.back();
    } else {
      vi.head_len = hi - lo;
      vi.tail_len = hi - lo;
      vi.body_lo = vi.body_hi = 0;
    }
    ld.vars.emplace(x, vi);
  }

  // Replace the minimal cover of each variable body by the variable.
  auto split_index = [&](int pos) {
    auto it = std::lower_bound(splits.begin(), splits.end(), pos);
    if (it == splits.end() || *it != pos) {
      throw std::logic_error("l_transformation: position is not a split");
    }
    return static_cast<int>(it - splits.begin());
  };
  auto build_side = [&](int from, int to) {
    std::map<int, std::pair<int, Letter>> replaced;  // start block -> (end block, var)
    for (int i = from; i < to; ++i) {
      Letter x = cd.symbols[static_cast<size_t>(i)];
      if (!alph.is_variable(x)) continue;
      const VarLevelInfo& vi = ld.vars.at(x);
      if (!vi.in_omega) continue;
      int lo = cd.l[static_cast<size_t>(i)], hi = cd.r[static_cast<size_t>(i)];
      int blo = lo + vi.head_len, bhi = hi - vi.tail_len;
      replaced.emplace(split_index(blo), std::make_pair(split_index(bhi), x));
    }
    std::vector<Letter> syms;
    int t = 0;
    while (t < k) {
      auto it = replaced.find(t);
      if (it != replaced.end()) {
        syms.push_back(it->second.second);
        t = it->second.first;
      } else {
        syms.push_back(ld.letter_of.at(ld.fact.blocks[static_cast<size_t>(t)]));
        ++t;
      }
    }
    return syms;
  };
  ld.lsyms = build_side(0, cd.g);
  ld.rsyms = build_side(cd.g, cd.d);

  // Assemble E_l.
  EquationE eq;
  eq.alph = e0.alph;
  eq.n = e0.n;
  std::vector<Letter> gamma = e0.gamma;
  for (const std::vector<Letter>* side : {&ld.lsyms, &ld.rsyms}) {
    for (Letter a : *side) {
      if (alph.is_variable(a)) continue;
      gamma.push_back(a);
      gamma.push_back(alph.bar(a));
    }
  }
  eq.gamma = sorted_unique(std::move(gamma));
  eq.h = ConstraintHom(e0.n);
  for (Letter a : eq.gamma) {
    auto bo = ld.block_of.find(a);
    eq.h.set(a, bo != ld.block_of.end() ? hom_image(e0.h, bo->second.w) : e0.h.at(a));
  }
  for (const auto& [x, vi] : ld.vars) {
    if (!vi.in_omega) continue;
    eq.omega.push_back(x);
    eq.omega.push_back(alph.bar(x));
    Word body = factor(alph, cd.w0, {vi.body_lo, vi.body_hi});
    eq.rho[x] = hom_image(e0.h, body);
    eq.rho[alph.bar(x)] = eq.rho[x].involuted();
  }
  eq.omega = sorted_unique(std::move(eq.omega));
  // A variable whose partner occurs but who does not occur itself still
  // needs var info for the arcs; derive it from the partner.
  for (Letter x : eq.omega) {
    if (ld.vars.count(x)) continue;
    const VarLevelInfo& pv = ld.vars.at(alph.bar(x));
    VarLevelInfo vi = pv;
    vi.occurrence = -1;
    std::swap(vi.head_len, vi.tail_len);
    ld.vars.emplace(x, vi);
  }
  for (const AcceptancePair& p : e0.residual) {
    auto vit = ld.vars.find(p.var);
    if (vit == ld.vars.end()) {
      eq.residual.push_back(p);  // variable not in the sides; keep as is
      continue;
    }
    const VarLevelInfo& vi = vit->second;
    Letter rep = vi.occurrence >= 0 ? p.var : alph.bar(p.var);
    const VarLevelInfo& rv = ld.vars.at(rep);
    int lo = cd.l[static_cast<size_t>(rv.occurrence)];
    int hi = cd.r[static_cast<size_t>(rv.occurrence)];
    Word image = factor(alph, cd.w0, {lo, hi});
    if (rep != p.var) image = involute(alph, image);
    if (!vi.in_omega) {
      if (!check_acceptance(p, hom_image(e0.h, image))) {
        throw std::logic_error("l_transformation: sigma fails a residual check");
      }
      continue;
    }
    Word head{{image.letters.begin(), image.letters.begin() + vi.head_len}};
    Word tail{{image.letters.end() - vi.tail_len, image.letters.end()}};
    AcceptancePair q = p;
    MonElem hh = hom_image(e0.h, head);
    MonElem ht = hom_image(e0.h, tail);
    const int n = e0.n;
    // I'^T = I^T h(head), F' = h(tail) F
    BitVec2n I2, F2;
    for (int j = 0; j < n; ++j) {
      for (int i2 = 0; i2 < n; ++i2) {
        if (((p.I.upper >> i2) & 1u) && hh.blockA().get(i2, j)) I2.upper |= 1ull << j;
        if (((p.I.lower >> i2) & 1u) && hh.blockB().get(i2, j)) I2.lower |= 1ull << j;
      }
    }
    for (int i2 = 0; i2 < n; ++i2) {
      if (ht.blockA().row(i2) & p.F.upper) F2.upper |= 1ull << i2;
      if (ht.blockB().row(i2) & p.F.lower) F2.lower |= 1ull << i2;
    }
    q.I = I2;
    q.F = F2;
    eq.residual.push_back(q);
  }
  eq.lhs = compress_l_factor(ld.lsyms, budget);
  eq.rhs = compress_l_factor(ld.rsyms, budget);
  ld.eq = std::move(eq);
  return ld;
}

// ---------------------------------------------------------------------------
// Certificate path

namespace {

// Letters of the F_l blocks tiling the split-aligned interval [lo, hi].
Word tile_letters(const LevelData& ld, int lo, int hi) {
  const auto& splits = ld.fact.splits;
  auto idx = [&](int pos) {
    auto it = std::lower_bound(splits.begin(), splits.end(), pos);
    if (it == splits.end() || *it != pos) {
      throw std::logic_error("certificate: interval endpoint is not an l-split");
    }
    return static_cast<int>(it - splits.begin());
  };
  Word out;
  for (int t = idx(lo); t < idx(hi); ++t) {
    out.push_back(ld.letter_of.at(ld.fact.blocks[static_cast<size_t>(t)]));
  }
  return out;
}

// The arc E_l -> E_l' built from the two level factorizations of the same
// preprocessed base instance.
Arc build_level_arc(const EquationE& base, const LevelData& lo_ld, const LevelData& hi_ld) {
  InvAlphabet& alph = *base.alph;
  Arc arc;
  arc.source = lo_ld.eq;
  arc.target = hi_ld.eq;
  arc.note = "arc E_" + std::to_string(lo_ld.ell) + " -> E_" + std::to_string(hi_ld.ell);

  std::vector<Letter> used;  // l-block letters appearing in images

  // beta: each l'-block letter expands to the minimal l-cover of its
  // representative interval.
  for (Letter c : hi_ld.eq.gamma) {
    if (contains(base.gamma, c) || arc.beta.count(c)) continue;
    Letter rep = hi_ld.occurrence.count(c) ? c : alph.bar(c);
    auto occ = hi_ld.occurrence.find(rep);
    if (occ == hi_ld.occurrence.end()) {
      throw std::logic_error("certificate: block letter without a representative interval");
    }
    Word tiles = tile_letters(lo_ld, occ->second.lo, occ->second.hi);
    ExpExpr image = ExpExpr::literal(tiles);
    if (rep == c) {
      arc.beta.emplace(c, image);
      arc.beta.emplace(alph.bar(c), involute_expr(alph, image));
    } else {
      arc.beta.emplace(rep, image);
      arc.beta.emplace(c, involute_expr(alph, image));
    }
    for (Letter t : tiles.letters) {
      used.push_back(t);
      used.push_back(alph.bar(t));
    }
  }

  // delta: peel each l-body down to the l'-body.
  for (Letter x : lo_ld.eq.omega) {
    if (arc.delta.images.count(x)) continue;
    const VarLevelInfo& lv = lo_ld.vars.at(x);
    Letter rep = lv.occurrence >= 0 ? x : alph.bar(x);
    const VarLevelInfo& lo_vi = lo_ld.vars.at(rep);
    const VarLevelInfo& hi_vi = hi_ld.vars.at(rep);
    PartialImage im;
    if (hi_vi.in_omega) {
      im.keeps_var = true;
      im.prefix = ExpExpr::literal(tile_letters(lo_ld, lo_vi.body_lo, hi_vi.body_lo));
      im.suffix = ExpExpr::literal(tile_letters(lo_ld, hi_vi.body_hi, lo_vi.body_hi));
      arc.delta.rho_prime[rep] = hi_ld.eq.rho.at(rep);
      arc.delta.rho_prime[alph.bar(rep)] = hi_ld.eq.rho.at(alph.bar(rep));
    } else {
      im.prefix = ExpExpr::literal(tile_letters(lo_ld, lo_vi.body_lo, lo_vi.body_hi));
    }
    PartialImage bim;
    bim.keeps_var = im.keeps_var;
    if (im.keeps_var) {
      bim.prefix = involute_expr(alph, im.suffix);
      bim.suffix = involute_expr(alph, im.prefix);
    } else {
      bim.prefix = involute_expr(alph, im.prefix);
    }
    arc.delta.images.emplace(rep, im);
    arc.delta.images.emplace(alph.bar(rep), bim);
    for (const PartialImage* pi : {&im, &bim}) {
      for (Letter t : letters_of(pi->prefix)) { used.push_back(t); used.push_back(alph.bar(t)); }
      for (Letter t : letters_of(pi->suffix)) { used.push_back(t); used.push_back(alph.bar(t)); }
    }
  }

  // pi: expand the l-block letters that are not part of E_l's alphabet.
  for (Letter t : sorted_unique(std::move(used))) {
    if (contains(lo_ld.eq.gamma, t) || arc.pi.count(t)) continue;
    auto bo = lo_ld.block_of.find(t);
    if (bo == lo_ld.block_of.end()) {
      throw std::logic_error("certificate: image letter is neither in gamma nor a block letter");
    }
    arc.pi.emplace(t, bo->second.w);
    arc.pi.emplace(alph.bar(t), involute(alph, bo->second.w));
  }

  EquationE projected = apply_projection(arc.pi, lo_ld.eq);
  arc.intermediate = apply_base_change(arc.beta, hi_ld.eq, projected.gamma, projected.h);
  return arc;
}

ExpExpr compressed_literal(const Word& w, std::uint64_t budget) {
  return compress_l_factor(w.letters, budget);
}

}  // namespace

CertPath build_certificate_path(const EquationE& e0, const Solution& sigma,
                                const CertificateOptions& opt) {
  std::uint64_t budget = opt.budget ? opt.budget : admissibility_budget(e0);
  if (!check_solution(e0, sigma, opt.cap)) {
    throw std::invalid_argument("build_certificate_path: sigma does not solve E0");
  }

  CertPath path;
  path.root = e0;
  EquationE cur = e0;
  Solution sig = sigma;

  auto push_arc = [&](Arc arc) {
    if (opt.verify_each_arc) {
      ArcCheck chk = verify_arc(arc, opt.cap);
      if (!chk.ok) {
        throw std::logic_error("certificate construction failed at step '" + arc.note +
                               "': " + chk.diagnostic);
      }
    }
    path.notes.push_back(arc.note);
    path.arcs.push_back(std::move(arc));
  };

  auto trivially_done = [&]() {
    return cur.omega.empty() && eq_eval(cur.lhs, cur.rhs, opt.cap);
  };

  // Step 1: eliminate empty-valued variables and variables absent from the
  // sides with a single partial solution.
  {
    std::vector<Letter> side_letters;
    for (const ExpExpr* side : {&cur.lhs, &cur.rhs}) {
      for (Letter a : letters_of(*side)) {
        side_letters.push_back(a);
        side_letters.push_back(cur.alph->bar(a));
      }
    }
    PartialSolution delta;
    for (Letter x : cur.omega) {
      bool empty_val = sig.at(x).empty();
      bool absent = !contains(side_letters, x);
      if (empty_val || absent) {
        PartialImage im;
        im.prefix = compressed_literal(sig.at(x), budget);
        delta.images.emplace(x, im);
      }
    }
    if (!delta.images.empty()) {
      for (Letter x : cur.omega) {
        if (delta.images.count(x)) continue;
        if (cur.has_rho(x)) delta.rho_prime[x] = cur.rho.at(x);
      }
      Arc arc;
      arc.source = cur;
      arc.target = apply_partial_solution(delta, cur);
      arc.delta = delta;
      arc.intermediate = arc.target;
      arc.note = "eliminate empty or absent variables";
      EquationE next = arc.target;
      push_arc(std::move(arc));
      cur = next;
      Solution pruned;
      for (Letter x : cur.omega) pruned.emplace(x, sig.at(x));
      sig = pruned;
    }
  }
  if (trivially_done()) return path;
  if (cur.omega.empty()) {
    throw std::logic_error("certificate: variable-free equation with unequal sides");
  }

  // Step 2: alphabet reduction along maximal free intervals.
  {
    FreeFactorization ff = maximal_free_factorization(cur, sig);
    if (sorted_unique(ff.rebased.gamma) != sorted_unique(cur.gamma)) {
      push_arc(ff.arc);
      cur = ff.rebased;
      sig = ff.sigma_new;
    }
  }

  CutData cd = compute_cuts(cur, sig);

  // Degenerate instances skip the level machinery: assign everything.
  if (cd.m0 < 3 || cd.d <= 2) {
    PartialSolution delta;
    for (Letter x : cur.omega) {
      PartialImage im;
      im.prefix = compressed_literal(sig.at(x), budget);
      delta.images.emplace(x, im);
    }
    Arc arc;
    arc.source = cur;
    arc.target = apply_partial_solution(delta, cur);
    arc.delta = delta;
    arc.intermediate = arc.target;
    arc.note = "degenerate instance: full assignment";
    EquationE next = arc.target;
    push_arc(std::move(arc));
    cur = next;
    if (!trivially_done()) {
      throw std::logic_error("certificate: degenerate assignment did not close the equation");
    }
    return path;
  }

  // Step 3: arc E_0 -> E_1.
  EquationE base = cur;
  Solution base_sigma = sig;
  LevelData level = l_transformation(base, base_sigma, 1, budget);
  {
    Arc arc;
    arc.source = base;
    arc.target = level.eq;
    for (const auto& [b, letter] : level.letter_of) {
      if (b.w.size() != 1) {
        throw std::logic_error("certificate: level-1 block is not a single letter");
      }
      arc.beta.emplace(letter, ExpExpr::literal(b.w));
    }
    for (Letter x : base.omega) {
      const Word& img = base_sigma.at(x);
      PartialImage im;
      if (img.size() <= 2) {
        im.prefix = ExpExpr::literal(img);
      } else {
        im.keeps_var = true;
        im.prefix = ExpExpr::literal(word_of(img.letters.front()));
        im.suffix = ExpExpr::literal(word_of(img.letters.back()));
        arc.delta.rho_prime[x] = level.eq.rho.at(x);
      }
      arc.delta.images.emplace(x, im);
    }
    arc.intermediate = apply_base_change(arc.beta, level.eq, base.gamma, base.h);
    arc.note = "arc E_0 -> E_1";
    push_arc(std::move(arc));
    cur = level.eq;
  }

  // Step 4: doubling schedule up to the trivial level.
  int ell = 1;
  while (!cur.omega.empty()) {
    int next_ell = std::min(2 * ell, cd.m0);
    if (next_ell == ell) {
      throw std::logic_error("certificate: schedule is stuck before the trivial level");
    }
    LevelData next = l_transformation(base, base_sigma, next_ell, budget);
    push_arc(build_level_arc(base, level, next));
    cur = next.eq;
    level = std::move(next);
    ell = next_ell;
  }
  if (!trivially_done()) {
    throw std::logic_error("certificate: final level is not a trivial equation");
  }
  return path;
}

ArcCheck replay_certificate(const CertPath& path, std::uint64_t cap) {
  const EquationE* cur = &path.root;
  for (std::size_t i = 0; i < path.arcs.size(); ++i) {
    const Arc& arc = path.arcs[i];
    if (!eq_eval(arc.source.lhs, cur->lhs, cap) || !eq_eval(arc.source.rhs, cur->rhs, cap)) {
      return {false, "arc " + std::to_string(i) + ": source does not match the previous target"};
    }
    ArcCheck chk = verify_arc(arc, cap);
    if (!chk.ok) {
      return {false, "arc " + std::to_string(i) + " (" + arc.note + "): " + chk.diagnostic};
    }
    cur = &arc.target;
  }
  if (!cur->omega.empty()) return {false, "final equation still has variables"};
  if (!eq_eval(cur->lhs, cur->rhs, cap)) return {false, "final equation sides differ"};
  return {true, ""};
}

}  // namespace wordeq
