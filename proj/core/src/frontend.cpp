#include "wordeq/frontend.hpp"

#include <algorithm>

namespace wordeq {

GroupFormula GroupFormula::eq_atom(Word w) {
  GroupFormula f;
  f.kind = Kind::eq;
  f.w = std::move(w);
  return f;
}

GroupFormula GroupFormula::in_atom(Letter var, std::string automaton) {
  GroupFormula f;
  f.kind = Kind::membership;
  f.var = var;
  f.automaton = std::move(automaton);
  return f;
}

GroupFormula GroupFormula::neg(GroupFormula f) {
  GroupFormula g;
  g.kind = Kind::negation;
  g.children.push_back(std::move(f));
  return g;
}

GroupFormula GroupFormula::conj(std::vector<GroupFormula> fs) {
  GroupFormula g;
  g.kind = Kind::conjunction;
  g.children = std::move(fs);
  return g;
}

GroupFormula GroupFormula::disj(std::vector<GroupFormula> fs) {
  GroupFormula g;
  g.kind = Kind::disjunction;
  g.children = std::move(fs);
  return g;
}

namespace {

GroupFormula normalize_rec(const GroupFormula& f, bool flip) {
  switch (f.kind) {
    case GroupFormula::Kind::eq:
    case GroupFormula::Kind::membership: {
      GroupFormula out = f;
      out.negated = f.negated != flip;
      return out;
    }
    case GroupFormula::Kind::negation:
      return normalize_rec(f.children.at(0), !flip);
    case GroupFormula::Kind::conjunction:
    case GroupFormula::Kind::disjunction: {
      GroupFormula out;
      bool conj = (f.kind == GroupFormula::Kind::conjunction) != flip;
      out.kind = conj ? GroupFormula::Kind::conjunction : GroupFormula::Kind::disjunction;
      for (const GroupFormula& c : f.children) out.children.push_back(normalize_rec(c, flip));
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

GroupFormula normalize(const GroupFormula& f) { return normalize_rec(f, false); }

namespace {

void eliminate_ineq_rec(GroupTask& task, GroupFormula& f) {
  if (f.kind == GroupFormula::Kind::eq && f.negated) {
    Letter x = task.alph->fresh_pair(LetterKind::variable, "N");
    task.vars.push_back(x);
    task.vars.push_back(task.alph->bar(x));
    Word wx = f.w;
    wx.push_back(x);
    GroupFormula in_unit = GroupFormula::in_atom(x, kUnitAutomaton);
    in_unit.negated = true;
    f = GroupFormula::conj({GroupFormula::eq_atom(std::move(wx)), std::move(in_unit)});
    return;
  }
  for (GroupFormula& c : f.children) eliminate_ineq_rec(task, c);
}

}  // namespace

void eliminate_group_inequalities(GroupTask& task) {
  if (!task.automata.count(kUnitAutomaton)) {
    task.automata.emplace(kUnitAutomaton, unit_nfa(task.gamma));
  }
  eliminate_ineq_rec(task, task.root);
}

namespace {

void walk_branch(const GroupFormula& f, std::vector<int>& choice, std::vector<int>& arity,
                 std::size_t& idx, std::vector<const GroupFormula*>& atoms) {
  switch (f.kind) {
    case GroupFormula::Kind::eq:
    case GroupFormula::Kind::membership:
      atoms.push_back(&f);
      return;
    case GroupFormula::Kind::negation:
      throw std::invalid_argument("branch enumeration requires a normalized formula");
    case GroupFormula::Kind::conjunction:
      for (const GroupFormula& c : f.children) walk_branch(c, choice, arity, idx, atoms);
      return;
    case GroupFormula::Kind::disjunction: {
      if (f.children.empty()) throw std::invalid_argument("empty disjunction");
      std::size_t my = idx++;
      if (choice.size() <= my) choice.push_back(0);
      arity.push_back(static_cast<int>(f.children.size()));
      walk_branch(f.children.at(static_cast<size_t>(choice[my])), choice, arity, idx, atoms);
      return;
    }
  }
}

}  // namespace

std::optional<std::vector<const GroupFormula*>> DisjunctChoices::next() {
  if (done_) return std::nullopt;
  std::vector<const GroupFormula*> atoms;
  arity_.clear();
  std::size_t idx = 0;
  walk_branch(*root_, choice_, arity_, idx, atoms);
  choice_.resize(arity_.size());

  // advance the odometer over the or-nodes reached in this branch
  int pos = static_cast<int>(arity_.size()) - 1;
  while (pos >= 0) {
    choice_.resize(static_cast<size_t>(pos) + 1);
    if (++choice_[static_cast<size_t>(pos)] < arity_[static_cast<size_t>(pos)]) break;
    --pos;
  }
  if (pos < 0) done_ = true;
  return atoms;
}

TriangularBranch triangulate(GroupTask& task, const std::vector<const GroupFormula*>& atoms) {
  if (task.gamma.empty()) throw std::invalid_argument("triangulate: empty constant alphabet");
  Letter pad = task.gamma.front();
  TriangularBranch out;
  for (const GroupFormula* a : atoms) {
    if (a->kind == GroupFormula::Kind::membership) {
      out.memberships.push_back(a);
      continue;
    }
    if (a->negated) throw std::invalid_argument("triangulate: inequality atom not eliminated");
    Word w = a->w;
    if (w.empty()) continue;  // 1 = 1
    while (w.size() < 3) {
      w.push_back(pad);
      w.push_back(task.alph->bar(pad));
    }
    while (w.size() > 3) {
      Letter y = task.alph->fresh_pair(LetterKind::variable, "T");
      task.vars.push_back(y);
      task.vars.push_back(task.alph->bar(y));
      Word head{{w.letters[0], w.letters[1], y}};
      out.triples.push_back(std::move(head));
      Word rest;
      rest.push_back(task.alph->bar(y));
      rest.letters.insert(rest.letters.end(), w.letters.begin() + 2, w.letters.end());
      w = std::move(rest);
    }
    out.triples.push_back(std::move(w));
  }
  return out;
}

std::vector<std::pair<Word, Word>> lemma1_split(GroupTask& task, const Word& triple) {
  if (triple.size() != 3) throw std::invalid_argument("lemma1_split: |W| = 3 required");
  InvAlphabet& alph = *task.alph;
  Letter p = alph.fresh_pair(LetterKind::variable, "P");
  Letter q = alph.fresh_pair(LetterKind::variable, "P");
  Letter r = alph.fresh_pair(LetterKind::variable, "P");
  for (Letter v : {p, q, r}) {
    task.vars.push_back(v);
    task.vars.push_back(alph.bar(v));
  }
  std::vector<std::pair<Word, Word>> out;
  out.emplace_back(word_of(triple[0]), Word{{p, q}});
  out.emplace_back(word_of(triple[1]), Word{{alph.bar(q), r}});
  out.emplace_back(word_of(triple[2]), Word{{alph.bar(r), alph.bar(p)}});
  return out;
}

MonoidSystem transfer_to_monoid(GroupTask& task, const TriangularBranch& branch) {
  MonoidSystem sys;
  for (const Word& triple : branch.triples) {
    auto split = lemma1_split(task, triple);
    sys.equations.insert(sys.equations.end(), split.begin(), split.end());
  }
  for (const GroupFormula* m : branch.memberships) {
    const Nfa& aut = task.automata.at(m->automaton);
    Nfa saturated = benois_saturate(*task.alph, aut);
    if (!m->negated) {
      sys.memberships.push_back({m->var, std::move(saturated), Polarity::positive});
    } else {
      sys.memberships.push_back({m->var, std::move(saturated), Polarity::negative});
      sys.memberships.push_back(
          {m->var, reduced_words_dfa(*task.alph, task.gamma), Polarity::positive});
    }
  }
  return sys;
}

std::vector<MonoidSystem> eliminate_monoid_inequalities(GroupTask& task,
                                                        const MonoidSystem& sys) {
  std::vector<MonoidSystem> out{sys};
  out.front().inequalities.clear();
  InvAlphabet& alph = *task.alph;
  if (sys.inequalities.empty()) return out;
  if (task.gamma.size() < 2) {
    throw std::invalid_argument("inequality elimination requires |Gamma| >= 2");
  }

  for (const auto& [u, v] : sys.inequalities) {
    std::vector<MonoidSystem> next;
    Letter x = alph.fresh_pair(LetterKind::variable, "D");
    Letter y = alph.fresh_pair(LetterKind::variable, "D");
    Letter z = alph.fresh_pair(LetterKind::variable, "D");
    for (Letter fresh : {x, y, z}) {
      task.vars.push_back(fresh);
      task.vars.push_back(alph.bar(fresh));
    }
    for (const MonoidSystem& base : out) {
      for (Letter a : task.gamma) {
        {  // U = V a X
          MonoidSystem b = base;
          Word rhs = v;
          rhs.push_back(a);
          rhs.push_back(x);
          b.equations.emplace_back(u, std::move(rhs));
          next.push_back(std::move(b));
        }
        {  // V = U a X
          MonoidSystem b = base;
          Word rhs = u;
          rhs.push_back(a);
          rhs.push_back(x);
          b.equations.emplace_back(v, std::move(rhs));
          next.push_back(std::move(b));
        }
        for (Letter bl : task.gamma) {
          if (bl == a) continue;  // U = XaY and V = XbZ with a != b
          MonoidSystem b = base;
          Word ru{{x, a, y}};
          Word rv{{x, bl, z}};
          b.equations.emplace_back(u, std::move(ru));
          b.equations.emplace_back(v, std::move(rv));
          next.push_back(std::move(b));
        }
      }
    }
    out = std::move(next);
  }
  return out;
}

std::optional<CompiledSystem> combine_to_single_equation(GroupTask& task,
                                                         const MonoidSystem& sys,
                                                         std::size_t reach_budget) {
  if (!sys.inequalities.empty()) {
    throw std::invalid_argument("combine: inequalities must be eliminated first");
  }
  InvAlphabet& alph = *task.alph;

  std::vector<Letter> gamma = task.gamma;
  Word lhs, rhs;
  bool need_separator = sys.equations.size() >= 2;
  Letter sep = kNoLetter;
  if (need_separator) sep = alph.fresh_pair(LetterKind::constant, "s");
  for (std::size_t i = 0; i < sys.equations.size(); ++i) {
    if (i) {
      lhs.push_back(sep);
      rhs.push_back(sep);
    }
    lhs.append(sys.equations[i].first);
    rhs.append(sys.equations[i].second);
  }
  if (need_separator) {
    gamma.push_back(sep);
    gamma.push_back(alph.bar(sep));
  }

  // Variables of the combined equation.
  std::vector<Letter> omega;
  for (const Word* side : {&lhs, &rhs}) {
    for (Letter a : side->letters) {
      if (alph.is_variable(a)) {
        omega.push_back(a);
        omega.push_back(alph.bar(a));
      }
    }
  }
  for (const MonoidMembership& m : sys.memberships) {
    omega.push_back(m.var);
    omega.push_back(alph.bar(m.var));
  }
  std::sort(omega.begin(), omega.end());
  omega.erase(std::unique(omega.begin(), omega.end()), omega.end());

  // Compile the membership automata plus, when a separator exists, the
  // "gamma star" automaton that keeps the separator out of the images.
  std::vector<Nfa> automata;
  for (const MonoidMembership& m : sys.memberships) automata.push_back(m.aut);
  int star_index = -1;
  if (need_separator) {
    star_index = static_cast<int>(automata.size());
    automata.push_back(universal_nfa(task.gamma));
  }
  HomFromAutomata compiled = hom_from_automata(alph, gamma, automata);

  CompiledSystem cs;
  cs.equation.alph = task.alph;
  cs.equation.gamma = gamma;
  std::sort(cs.equation.gamma.begin(), cs.equation.gamma.end());
  cs.equation.omega = omega;
  cs.equation.n = compiled.n;
  cs.equation.h = compiled.hom;
  cs.equation.lhs = ExpExpr::literal(lhs);
  cs.equation.rhs = ExpExpr::literal(rhs);
  for (std::size_t j = 0; j < sys.memberships.size(); ++j) {
    AcceptancePair p = compiled.pairs[j];
    p.var = sys.memberships[j].var;
    p.polarity = sys.memberships[j].polarity;
    cs.equation.residual.push_back(p);
  }
  if (need_separator) {
    for (Letter x : omega) {
      AcceptancePair p = compiled.pairs[static_cast<size_t>(star_index)];
      p.var = x;
      p.polarity = Polarity::positive;
      cs.equation.residual.push_back(p);
    }
  }

  // Lemma-4 pretest: a variable pair absent from the sides must admit some
  // generated matrix satisfying its checks; it is then cancelled.  When
  // the submonoid blows the budget the pretest is skipped: variables stay
  // and the rho candidate lists are left empty.
  ReachSet reach;
  try {
    reach = reachable_submonoid(alph, cs.equation.gamma, cs.equation.h, reach_budget);
  } catch (const ResourceError&) {
    return cs;
  }
  std::vector<Letter> side_letters;
  for (const Word* side : {&lhs, &rhs}) {
    for (Letter a : side->letters) {
      side_letters.push_back(a);
      side_letters.push_back(alph.bar(a));
    }
  }
  auto occurs = [&](Letter x) {
    return std::find(side_letters.begin(), side_letters.end(), x) != side_letters.end();
  };
  auto pairs_pass = [&](Letter x, const MonElem& m) {
    for (const AcceptancePair& p : cs.equation.residual) {
      if (p.var == x && !check_acceptance(p, m)) return false;
      if (p.var == alph.bar(x) && !check_acceptance(p, m.involuted())) return false;
    }
    return true;
  };

  std::vector<Letter> kept;
  for (Letter x : cs.equation.omega) {
    if (alph.bar(x) < x) continue;  // one representative per pair
    if (occurs(x) || occurs(alph.bar(x))) {
      kept.push_back(x);
      kept.push_back(alph.bar(x));
      continue;
    }
    bool witness = false;
    for (const MonElem& m : reach.elements()) {
      if (pairs_pass(x, m)) {
        Word w = reach.witness(m);
        cs.cancelled[x] = w;
        cs.cancelled[alph.bar(x)] = involute(alph, w);
        witness = true;
        break;
      }
    }
    if (!witness) return std::nullopt;  // branch dies
  }
  std::sort(kept.begin(), kept.end());
  cs.equation.omega = kept;
  std::vector<AcceptancePair> residual_kept;
  for (const AcceptancePair& p : cs.equation.residual) {
    if (std::find(kept.begin(), kept.end(), p.var) != kept.end()) residual_kept.push_back(p);
  }
  cs.equation.residual = std::move(residual_kept);

  // rho candidates per representative, filtered by the acceptance pairs.
  for (Letter x : cs.equation.omega) {
    if (alph.bar(x) < x) continue;
    std::vector<MonElem> candidates;
    for (const MonElem& m : reach.elements()) {
      if (pairs_pass(x, m)) candidates.push_back(m);
    }
    std::sort(candidates.begin(), candidates.end());
    cs.rho_candidates.emplace_back(x, std::move(candidates));
  }
  return cs;
}

std::optional<RhoMap> RhoAssignments::next() {
  if (done_) return std::nullopt;
  const auto& lists = cs_->rho_candidates;
  if (!started_) {
    started_ = true;
    idx_.assign(lists.size(), 0);
    for (const auto& [x, c] : lists) {
      if (c.empty()) {
        done_ = true;
        return std::nullopt;
      }
    }
  }
  RhoMap out;
  const InvAlphabet& alph = *cs_->equation.alph;
  for (std::size_t i = 0; i < lists.size(); ++i) {
    const MonElem& m = lists[i].second[idx_[i]];
    out[lists[i].first] = m;
    out[alph.bar(lists[i].first)] = m.involuted();
  }
  int pos = static_cast<int>(lists.size()) - 1;
  while (pos >= 0) {
    if (++idx_[static_cast<size_t>(pos)] < lists[static_cast<size_t>(pos)].second.size()) break;
    idx_[static_cast<size_t>(pos)] = 0;
    --pos;
  }
  if (pos < 0) done_ = true;
  return out;
}

bool eval_group_formula(const GroupTask& task, const GroupFormula& f,
                        const Solution& assignment) {
  const InvAlphabet& alph = *task.alph;
  switch (f.kind) {
    case GroupFormula::Kind::eq: {
      Word expanded;
      for (Letter a : f.w.letters) {
        if (alph.is_variable(a)) {
          expanded.append(assignment.at(a));
        } else {
          expanded.push_back(a);
        }
      }
      bool holds = free_reduce(alph, expanded).empty();
      return f.negated ? !holds : holds;
    }
    case GroupFormula::Kind::membership: {
      const Nfa& aut = task.automata.at(f.automaton);
      Nfa saturated = benois_saturate(alph, aut);
      bool holds = accepts(saturated, free_reduce(alph, assignment.at(f.var)));
      return f.negated ? !holds : holds;
    }
    case GroupFormula::Kind::negation:
      return !eval_group_formula(task, f.children.at(0), assignment);
    case GroupFormula::Kind::conjunction:
      for (const GroupFormula& c : f.children) {
        if (!eval_group_formula(task, c, assignment)) return false;
      }
      return true;
    case GroupFormula::Kind::disjunction:
      for (const GroupFormula& c : f.children) {
        if (eval_group_formula(task, c, assignment)) return true;
      }
      return false;
  }
  throw std::logic_error("unreachable");
}

}  // namespace wordeq
