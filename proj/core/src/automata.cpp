#include "wordeq/automata.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace wordeq {

void Nfa::add_transition(int from, Letter label, int to) {
  if (from < 0 || from >= num_states_ || to < 0 || to >= num_states_) {
    throw std::invalid_argument("transition endpoint outside state set");
  }
  trans_.push_back({from, label, to});
}

void Nfa::add_epsilon(int from, int to) { add_transition(from, kNoLetter, to); }

bool Nfa::has_epsilon() const {
  return std::any_of(trans_.begin(), trans_.end(),
                     [](const Transition& t) { return t.label == kNoLetter; });
}

namespace {

// eps-closure over an adjacency list of epsilon edges.
std::set<int> eps_closure(const std::vector<std::vector<int>>& eps, std::set<int> states) {
  std::vector<int> stack(states.begin(), states.end());
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (int r : eps[static_cast<size_t>(q)]) {
      if (states.insert(r).second) stack.push_back(r);
    }
  }
  return states;
}

std::vector<std::vector<int>> eps_adjacency(const Nfa& a) {
  std::vector<std::vector<int>> eps(static_cast<size_t>(a.num_states()));
  for (const auto& t : a.transitions()) {
    if (t.label == kNoLetter) eps[static_cast<size_t>(t.from)].push_back(t.to);
  }
  return eps;
}

}  // namespace

bool accepts(const Nfa& a, const Word& w) {
  auto eps = eps_adjacency(a);
  std::set<int> cur = eps_closure(eps, a.initial());
  for (Letter x : w.letters) {
    std::set<int> next;
    for (const auto& t : a.transitions()) {
      if (t.label == x && cur.count(t.from)) next.insert(t.to);
    }
    cur = eps_closure(eps, std::move(next));
    if (cur.empty()) return false;
  }
  for (int q : cur) {
    if (a.final().count(q)) return true;
  }
  return false;
}

Nfa eliminate_epsilon(const Nfa& a) {
  auto eps = eps_adjacency(a);
  Nfa out(a.num_states(), a.sigma());
  std::set<Transition> added;
  for (int p = 0; p < a.num_states(); ++p) {
    std::set<int> from_p = eps_closure(eps, {p});
    for (const auto& t : a.transitions()) {
      if (t.label == kNoLetter || !from_p.count(t.from)) continue;
      for (int q : eps_closure(eps, {t.to})) {
        if (added.insert({p, t.label, q}).second) out.add_transition(p, t.label, q);
      }
    }
    bool final_reachable = false;
    for (int q : from_p) {
      if (a.final().count(q)) final_reachable = true;
    }
    if (final_reachable) out.set_final(p);
  }
  for (int q : a.initial()) out.set_initial(q);
  return out;
}

Nfa benois_saturate(const InvAlphabet& alph, const Nfa& input) {
  for (Letter x : input.sigma()) {
    if (!alph.is_constant(x)) {
      throw std::invalid_argument("benois_saturate: alphabet must be all constants");
    }
  }
  Nfa a = input.has_epsilon() ? eliminate_epsilon(input) : input;

  // Fixpoint: add eps edges p -> q whenever p -x-> r, r =eps*=> s, s -x'-> q.
  // The eps-closure is recomputed from scratch each round.
  std::set<std::pair<int, int>> eps_pairs;
  bool changed = true;
  while (changed) {
    changed = false;
    // transitive closure of the current eps pairs
    std::vector<std::vector<int>> eps(static_cast<size_t>(a.num_states()));
    for (auto [p, q] : eps_pairs) eps[static_cast<size_t>(p)].push_back(q);
    std::vector<std::set<int>> closure(static_cast<size_t>(a.num_states()));
    for (int p = 0; p < a.num_states(); ++p) closure[static_cast<size_t>(p)] = eps_closure(eps, {p});

    for (const auto& t1 : a.transitions()) {
      if (t1.label == kNoLetter) continue;
      Letter barred = alph.bar(t1.label);
      for (const auto& t2 : a.transitions()) {
        if (t2.label != barred) continue;
        if (!closure[static_cast<size_t>(t1.to)].count(t2.from)) continue;
        if (eps_pairs.insert({t1.from, t2.to}).second) changed = true;
      }
    }
  }

  Nfa with_eps(a.num_states(), a.sigma());
  for (int q : a.initial()) with_eps.set_initial(q);
  for (int q : a.final()) with_eps.set_final(q);
  for (const auto& t : a.transitions()) with_eps.add_transition(t.from, t.label, t.to);
  for (auto [p, q] : eps_pairs) with_eps.add_epsilon(p, q);
  return eliminate_epsilon(with_eps);
}

Nfa reduced_words_dfa(const InvAlphabet& alph, const std::vector<Letter>& gamma) {
  // State 0 = start; state 1+i = "last letter was gamma[i]".  All accepting.
  const int n = static_cast<int>(gamma.size());
  Nfa out(n + 1, gamma);
  out.set_initial(0);
  for (int q = 0; q <= n; ++q) out.set_final(q);
  for (int i = 0; i < n; ++i) out.add_transition(0, gamma[static_cast<size_t>(i)], i + 1);
  for (int i = 0; i < n; ++i) {
    Letter prev = gamma[static_cast<size_t>(i)];
    for (int j = 0; j < n; ++j) {
      Letter next = gamma[static_cast<size_t>(j)];
      if (next != alph.bar(prev)) out.add_transition(i + 1, next, j + 1);
    }
  }
  return out;
}

namespace {

Nfa determinize(const Nfa& a, std::size_t state_cap, bool complement_finals) {
  if (a.has_epsilon()) throw std::invalid_argument("determinize: input must be eps-free");
  std::map<std::set<int>, int> index;
  std::vector<std::set<int>> subsets;
  auto intern = [&](const std::set<int>& s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    if (subsets.size() >= state_cap) {
      throw ResourceError("subset construction exceeded the state budget");
    }
    int id = static_cast<int>(subsets.size());
    subsets.push_back(s);
    index.emplace(s, id);
    return id;
  };

  intern(a.initial());
  std::vector<std::vector<std::pair<Letter, int>>> delta;
  for (std::size_t qi = 0; qi < subsets.size(); ++qi) {
    delta.emplace_back();
    for (Letter x : a.sigma()) {
      std::set<int> next;
      for (const auto& t : a.transitions()) {
        if (t.label == x && subsets[qi].count(t.from)) next.insert(t.to);
      }
      delta.back().emplace_back(x, intern(next));
    }
  }

  Nfa out(static_cast<int>(subsets.size()), a.sigma());
  out.set_initial(0);
  for (std::size_t qi = 0; qi < subsets.size(); ++qi) {
    bool is_final = std::any_of(subsets[qi].begin(), subsets[qi].end(),
                                [&](int q) { return a.final().count(q) != 0; });
    if (is_final != complement_finals) out.set_final(static_cast<int>(qi));
    for (auto [x, to] : delta[qi]) out.add_transition(static_cast<int>(qi), x, to);
  }
  return out;
}

}  // namespace

Nfa complement(const Nfa& a, std::size_t state_cap) {
  return determinize(a, state_cap, /*complement_finals=*/true);
}

Nfa group_complement(const InvAlphabet& alph, const Nfa& a, std::size_t state_cap) {
  Nfa saturated = benois_saturate(alph, a);
  Nfa comp = complement(saturated, state_cap);
  return product(comp, reduced_words_dfa(alph, a.sigma()));
}

Nfa product(const Nfa& a, const Nfa& b) {
  if (a.has_epsilon() || b.has_epsilon()) {
    throw std::invalid_argument("product: inputs must be eps-free");
  }
  std::vector<Letter> sigma = a.sigma();
  for (Letter x : b.sigma()) {
    if (std::find(sigma.begin(), sigma.end(), x) == sigma.end()) sigma.push_back(x);
  }
  const int nb = b.num_states();
  Nfa out(a.num_states() * nb, sigma);
  auto id = [nb](int p, int q) { return p * nb + q; };
  for (int p : a.initial())
    for (int q : b.initial()) out.set_initial(id(p, q));
  for (int p : a.final())
    for (int q : b.final()) out.set_final(id(p, q));
  for (const auto& ta : a.transitions()) {
    for (const auto& tb : b.transitions()) {
      if (ta.label != tb.label) continue;
      out.add_transition(id(ta.from, tb.from), ta.label, id(ta.to, tb.to));
    }
  }
  return out;
}

Nfa union_nfa(const Nfa& a, const Nfa& b) {
  std::vector<Letter> sigma = a.sigma();
  for (Letter x : b.sigma()) {
    if (std::find(sigma.begin(), sigma.end(), x) == sigma.end()) sigma.push_back(x);
  }
  Nfa out(a.num_states() + b.num_states(), sigma);
  for (const auto& t : a.transitions()) out.add_transition(t.from, t.label, t.to);
  const int off = a.num_states();
  for (const auto& t : b.transitions()) out.add_transition(t.from + off, t.label, t.to + off);
  for (int q : a.initial()) out.set_initial(q);
  for (int q : a.final()) out.set_final(q);
  for (int q : b.initial()) out.set_initial(q + off);
  for (int q : b.final()) out.set_final(q + off);
  return out;
}

Nfa universal_nfa(const std::vector<Letter>& gamma) {
  Nfa out(1, gamma);
  out.set_initial(0);
  out.set_final(0);
  for (Letter x : gamma) out.add_transition(0, x, 0);
  return out;
}

Nfa unit_nfa(const std::vector<Letter>& gamma) {
  Nfa out(1, gamma);
  out.set_initial(0);
  out.set_final(0);
  return out;
}

std::vector<Word> all_words_up_to(const std::vector<Letter>& gamma, int maxlen) {
  std::vector<Word> out{Word{}};
  std::size_t level_begin = 0;
  for (int len = 1; len <= maxlen; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (Letter x : gamma) {
        Word w = out[i];
        w.push_back(x);
        out.push_back(std::move(w));
      }
    }
    level_begin = level_end;
  }
  return out;
}

}  // namespace wordeq
