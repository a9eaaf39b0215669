// Shared fixtures: the running-example equation and small random
// generators used across the suites.

#ifndef WORDEQ_TESTS_HELPERS_HPP_
#define WORDEQ_TESTS_HELPERS_HPP_

#include <random>

#include "wordeq/io.hpp"
#include "wordeq/solver.hpp"

namespace weqtest {

using namespace wordeq;

struct Fixture {
  std::shared_ptr<InvAlphabet> alph;
  std::vector<Letter> gamma;
  std::vector<Letter> omega;

  Letter l(const std::string& tok) const {
    auto x = alph->find(tok);
    if (!x) throw std::invalid_argument("fixture: unknown letter " + tok);
    return *x;
  }
  Word w(const std::string& text) const { return parse_word(*alph, text); }
};

/// Alphabet {a,b,c} with bars and variables {X,Y,Z}.
Fixture abc_fixture();

/// Alphabet {a,b} with bars and variables {X,Y,Z} (|Gamma| = 4).
Fixture ab_fixture();

/// The running example "a X X' a' = Y b' Y a' b Y'" over {a,b,c} with the
/// trivial one-dimensional constraint monoid and no constraints.
EquationE running_example(const Fixture& fx);

/// Its published solution sigma(X) = b c c' b' b' a b c, sigma(Y) = a b c c' b'.
Solution running_solution(const Fixture& fx);

/// Unconstrained equation from explicit side strings.
EquationE plain_equation(const Fixture& fx, const std::string& lhs, const std::string& rhs);

/// Random freely-reducible-or-not word over the fixture constants.
Word random_word(const Fixture& fx, std::mt19937& rng, int maxlen);

/// Random small NFA over the given letters.
Nfa random_nfa(const std::vector<Letter>& sigma, std::mt19937& rng, int max_states);

struct RandomInstance {
  EquationE eq;
  Solution sigma;  // solves eq; every value nonempty
};

/// Builds a solvable instance around a random solution word: both sides
/// are random segmentations of the same w0, segments become constants or
/// (possibly shared, possibly involuted) variables.  With constraints, h
/// comes from a random automaton and rho is installed from sigma.
/// max_side_symbols bounds the segment count per side (0: unbounded).
RandomInstance random_solved_instance(const Fixture& fx, std::mt19937& rng, int max_m0,
                                      bool with_constraints, int max_side_symbols = 0);

/// Independent group-membership oracle built from an epsilon-pair
/// fixpoint, implemented separately from benois_saturate: group_member(v)
/// holds iff some u in L(a) freely reduces to the reduced word v.
class EpsOracle {
 public:
  EpsOracle(const InvAlphabet& alph, const Nfa& a);
  bool group_member(const Word& reduced) const;

 private:
  std::vector<std::vector<char>> eps_;
  const Nfa& a_;
};

}  // namespace weqtest

#endif  // WORDEQ_TESTS_HELPERS_HPP_
