#include "helpers.hpp"

namespace weqtest {

namespace {

Fixture make_fixture(std::initializer_list<const char*> constants) {
  Fixture fx;
  fx.alph = std::make_shared<InvAlphabet>();
  for (const char* name : constants) {
    Letter x = fx.alph->add_pair(name, LetterKind::constant);
    fx.gamma.push_back(x);
    fx.gamma.push_back(fx.alph->bar(x));
  }
  for (const char* name : {"X", "Y", "Z"}) {
    Letter x = fx.alph->add_pair(name, LetterKind::variable);
    fx.omega.push_back(x);
    fx.omega.push_back(fx.alph->bar(x));
  }
  return fx;
}

}  // namespace

Fixture abc_fixture() { return make_fixture({"a", "b", "c"}); }

Fixture ab_fixture() { return make_fixture({"a", "b"}); }

EquationE plain_equation(const Fixture& fx, const std::string& lhs, const std::string& rhs) {
  EquationE e;
  e.alph = fx.alph;
  e.gamma = fx.gamma;
  e.n = 1;
  e.h = ConstraintHom(1);
  for (Letter a : fx.gamma) e.h.set(a, MonElem::identity(1));
  e.lhs = ExpExpr::literal(fx.w(lhs));
  e.rhs = ExpExpr::literal(fx.w(rhs));
  std::vector<Letter> used;
  for (const ExpExpr* side : {&e.lhs, &e.rhs}) {
    for (Letter a : letters_of(*side)) {
      if (fx.alph->is_variable(a)) {
        used.push_back(a);
        used.push_back(fx.alph->bar(a));
      }
    }
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  e.omega = used;
  return e;
}

EquationE running_example(const Fixture& fx) {
  return plain_equation(fx, "a X X' a'", "Y b' Y a' b Y'");
}

Solution running_solution(const Fixture& fx) {
  Solution s;
  s[fx.l("X")] = fx.w("b c c' b' b' a b c");
  s[fx.l("X'")] = involute(*fx.alph, s[fx.l("X")]);
  s[fx.l("Y")] = fx.w("a b c c' b'");
  s[fx.l("Y'")] = involute(*fx.alph, s[fx.l("Y")]);
  return s;
}

Word random_word(const Fixture& fx, std::mt19937& rng, int maxlen) {
  std::uniform_int_distribution<int> len(0, maxlen);
  std::uniform_int_distribution<std::size_t> pick(0, fx.gamma.size() - 1);
  Word w;
  int n = len(rng);
  for (int i = 0; i < n; ++i) w.push_back(fx.gamma[pick(rng)]);
  return w;
}

RandomInstance random_solved_instance(const Fixture& fx, std::mt19937& rng, int max_m0,
                                      bool with_constraints, int max_side_symbols) {
  InvAlphabet& alph = *fx.alph;
  std::uniform_int_distribution<int> m0_dist(3, max_m0);
  std::uniform_int_distribution<int> coin(0, 1);
  const int m0 = m0_dist(rng);

  // solution word, periodic with probability 1/3
  Word w0;
  if (coin(rng) && coin(rng)) {
    std::uniform_int_distribution<int> seed_len(1, 3);
    Word seed = random_word(fx, rng, seed_len(rng));
    if (seed.empty()) seed.push_back(fx.gamma.front());
    while (static_cast<int>(w0.size()) < m0) w0.append(seed);
    w0.letters.resize(static_cast<size_t>(m0));
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, fx.gamma.size() - 1);
    for (int i = 0; i < m0; ++i) w0.push_back(fx.gamma[pick(rng)]);
  }

  auto random_partition = [&](std::vector<int>& cuts) {
    cuts.push_back(0);
    int pos = 0;
    int min_step = 1;
    if (max_side_symbols > 0) min_step = std::max(1, (m0 + max_side_symbols - 1) / max_side_symbols);
    std::uniform_int_distribution<int> step(min_step, std::max(min_step, 4));
    while (pos < m0) {
      pos = std::min(m0, pos + step(rng));
      cuts.push_back(pos);
    }
  };

  std::map<Word, Letter> pool;  // value -> variable
  Solution sigma;
  auto segment_symbol = [&](int lo, int hi) -> Letter {
    Word f = factor(alph, w0, {lo, hi});
    if (f.size() == 1 && coin(rng)) return f[0];
    auto it = pool.find(f);
    if (it != pool.end()) return it->second;
    Word fbar = involute(alph, f);
    auto bit2 = pool.find(fbar);
    if (bit2 != pool.end()) return alph.bar(bit2->second);
    Letter v = alph.fresh_pair(LetterKind::variable, "V");
    pool.emplace(f, v);
    if (f != fbar) pool.emplace(fbar, alph.bar(v));
    sigma[v] = f;
    sigma[alph.bar(v)] = fbar;
    return v;
  };

  RandomInstance out;
  Word lsyms, rsyms;
  std::vector<int> lcuts, rcuts;
  random_partition(lcuts);
  random_partition(rcuts);
  for (std::size_t i = 0; i + 1 < lcuts.size(); ++i) {
    lsyms.push_back(segment_symbol(lcuts[i], lcuts[i + 1]));
  }
  for (std::size_t i = 0; i + 1 < rcuts.size(); ++i) {
    rsyms.push_back(segment_symbol(rcuts[i], rcuts[i + 1]));
  }

  EquationE e;
  e.alph = fx.alph;
  e.gamma = fx.gamma;
  e.lhs = ExpExpr::literal(lsyms);
  e.rhs = ExpExpr::literal(rsyms);
  for (const auto& [v, img] : sigma) e.omega.push_back(v);
  std::sort(e.omega.begin(), e.omega.end());

  if (with_constraints) {
    std::uniform_int_distribution<int> states(1, 3);
    Nfa aut = random_nfa(fx.gamma, rng, states(rng));
    auto compiled = hom_from_automata(*fx.alph, fx.gamma, {aut});
    e.n = compiled.n;
    e.h = compiled.hom;
    for (const auto& [v, img] : sigma) e.rho[v] = hom_image(e.h, img);
  } else {
    e.n = 1;
    e.h = ConstraintHom(1);
    for (Letter a : fx.gamma) e.h.set(a, MonElem::identity(1));
  }
  out.eq = std::move(e);
  out.sigma = std::move(sigma);
  if (!check_solution(out.eq, out.sigma)) {
    throw std::logic_error("random_solved_instance: generated instance is inconsistent");
  }
  return out;
}

Nfa random_nfa(const std::vector<Letter>& sigma, std::mt19937& rng, int max_states) {
  std::uniform_int_distribution<int> nstates(1, max_states);
  int n = nstates(rng);
  Nfa a(n, sigma);
  std::uniform_int_distribution<int> q(0, n - 1);
  std::uniform_int_distribution<std::size_t> s(0, sigma.size() - 1);
  std::uniform_int_distribution<int> ntrans(0, 2 * n + 2);
  int t = ntrans(rng);
  for (int i = 0; i < t; ++i) a.add_transition(q(rng), sigma[s(rng)], q(rng));
  a.set_initial(q(rng));
  std::uniform_int_distribution<int> nfinal(1, n);
  int f = nfinal(rng);
  for (int i = 0; i < f; ++i) a.set_final(q(rng));
  return a;
}

EpsOracle::EpsOracle(const InvAlphabet& alph, const Nfa& a) : a_(a) {
  const int n = a.num_states();
  eps_.assign(static_cast<size_t>(n), std::vector<char>(static_cast<size_t>(n), 0));
  for (int q = 0; q < n; ++q) eps_[static_cast<size_t>(q)][static_cast<size_t>(q)] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& t1 : a.transitions()) {
      for (const auto& t2 : a.transitions()) {
        if (t2.label != alph.bar(t1.label)) continue;
        if (!eps_[static_cast<size_t>(t1.to)][static_cast<size_t>(t2.from)]) continue;
        if (!eps_[static_cast<size_t>(t1.from)][static_cast<size_t>(t2.to)]) {
          eps_[static_cast<size_t>(t1.from)][static_cast<size_t>(t2.to)] = 1;
          changed = true;
        }
      }
    }
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        for (int r = 0; r < n; ++r) {
          if (eps_[static_cast<size_t>(p)][static_cast<size_t>(q)] &&
              eps_[static_cast<size_t>(q)][static_cast<size_t>(r)] &&
              !eps_[static_cast<size_t>(p)][static_cast<size_t>(r)]) {
            eps_[static_cast<size_t>(p)][static_cast<size_t>(r)] = 1;
            changed = true;
          }
        }
  }
}

bool EpsOracle::group_member(const Word& reduced) const {
  const int n = a_.num_states();
  std::set<int> cur;
  for (int i : a_.initial())
    for (int q = 0; q < n; ++q)
      if (eps_[static_cast<size_t>(i)][static_cast<size_t>(q)]) cur.insert(q);
  for (Letter x : reduced.letters) {
    std::set<int> next;
    for (const auto& t : a_.transitions()) {
      if (t.label != x || !cur.count(t.from)) continue;
      for (int q = 0; q < n; ++q) {
        if (eps_[static_cast<size_t>(t.to)][static_cast<size_t>(q)]) next.insert(q);
      }
    }
    cur = std::move(next);
    if (cur.empty()) return false;
  }
  for (int q : cur)
    if (a_.final().count(q)) return true;
  return false;
}

}  // namespace weqtest
