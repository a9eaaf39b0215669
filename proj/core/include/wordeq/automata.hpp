// automata.hpp -- NFAs over involutive constant alphabets, the Benois
// saturation and the effective Boolean algebra of rational group languages.

#ifndef WORDEQ_AUTOMATA_HPP_
#define WORDEQ_AUTOMATA_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "wordeq/words.hpp"

namespace wordeq {

struct Transition {
  int from = 0;
  Letter label = kNoLetter;  // kNoLetter encodes an epsilon transition
  int to = 0;

  friend bool operator==(const Transition&, const Transition&) = default;
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Nondeterministic automaton over an explicit letter set.
class Nfa {
 public:
  Nfa() = default;
  Nfa(int num_states, std::vector<Letter> sigma)
      : num_states_(num_states), sigma_(std::move(sigma)) {}

  int num_states() const { return num_states_; }
  const std::vector<Letter>& sigma() const { return sigma_; }
  const std::vector<Transition>& transitions() const { return trans_; }
  const std::set<int>& initial() const { return initial_; }
  const std::set<int>& final() const { return final_; }

  void add_transition(int from, Letter label, int to);
  void add_epsilon(int from, int to);
  void set_initial(int q) { initial_.insert(q); }
  void set_final(int q) { final_.insert(q); }

  bool has_epsilon() const;

 private:
  int num_states_ = 0;
  std::vector<Letter> sigma_;
  std::vector<Transition> trans_;
  std::set<int> initial_, final_;
};

bool accepts(const Nfa& a, const Word& w);

/// Benois saturation: an eps-free automaton over the same state set that
/// accepts exactly the descendants of L(a) under the rewriting a a' -> 1.
/// Epsilon transitions p -> q are added whenever p -a-> r, r =eps*=> s,
/// s -a'-> q, iterated to the fixpoint, then eliminated.
Nfa benois_saturate(const InvAlphabet& alph, const Nfa& a);

/// Deterministic automaton with |gamma|+1 states accepting exactly the
/// freely reduced words.
Nfa reduced_words_dfa(const InvAlphabet& alph, const std::vector<Letter>& gamma);

inline constexpr std::size_t kDefaultSubsetCap = 1u << 16;

/// Automaton for { free_reduce(w) | psi(w) not in psi(L(a)) }: complement
/// the saturation via the subset construction and intersect with the
/// reduced-words DFA.  The subset construction aborts with ResourceError
/// past the state cap.
Nfa group_complement(const InvAlphabet& alph, const Nfa& a,
                     std::size_t state_cap = kDefaultSubsetCap);

/// Intersection (pair construction); inputs must be eps-free.
Nfa product(const Nfa& a, const Nfa& b);

/// Disjoint-union automaton for L(a) | L(b).
Nfa union_nfa(const Nfa& a, const Nfa& b);

/// Eps-free equivalent over the same state set.
Nfa eliminate_epsilon(const Nfa& a);

/// Complement through determinization; input must be eps-free.
Nfa complement(const Nfa& a, std::size_t state_cap = kDefaultSubsetCap);

/// Single-state automaton accepting gamma^*.
Nfa universal_nfa(const std::vector<Letter>& gamma);

/// Single-state automaton accepting only the empty word.
Nfa unit_nfa(const std::vector<Letter>& gamma);

/// Enumerates all words over gamma with length <= maxlen (test helper and
/// brute-force oracle support).
std::vector<Word> all_words_up_to(const std::vector<Letter>& gamma, int maxlen);

}  // namespace wordeq

#endif  // WORDEQ_AUTOMATA_HPP_
