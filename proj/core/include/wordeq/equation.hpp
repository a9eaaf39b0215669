// equation.hpp -- equations with constraints over a free monoid with
// involution: E = (Gamma, h, Omega, rho; L = R), sides given as
// exponential expressions.

#ifndef WORDEQ_EQUATION_HPP_
#define WORDEQ_EQUATION_HPP_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wordeq/constraints.hpp"
#include "wordeq/expressions.hpp"
#include "wordeq/words.hpp"

namespace wordeq {

/// Assignment of constant words to variables; sigma(X') = involute(sigma(X)).
using Solution = std::map<Letter, Word>;

struct EquationE {
  std::shared_ptr<InvAlphabet> alph;
  std::vector<Letter> gamma;   // constants, closed under involution
  std::vector<Letter> omega;   // variables, closed under involution
  int n = 1;                   // half-dimension of the matrix monoid
  ConstraintHom h;             // images of the gamma letters
  RhoMap rho;                  // optional per-variable constraints
  std::vector<AcceptancePair> residual;  // acceptance checks kept on sigma
  ExpExpr lhs, rhs;

  /// Denotational length d = |LR| (variables count as single symbols).
  std::uint64_t d() const { return lhs.eval_length() + rhs.eval_length(); }

  bool has_rho(Letter x) const { return rho.count(x) != 0; }

  /// Input size n + d + log2(|Gamma| + |Omega|).
  std::uint64_t input_size() const;

  /// Checks the structural invariants (closure under involution, h/rho
  /// involution compatibility, side letters declared).  Throws on violation.
  void validate() const;
};

/// sigma solves E: sigma(L) = sigma(R), involution compatibility,
/// h sigma(X) = rho(X) where constrained, and all residual checks pass.
bool check_solution(const EquationE& e, const Solution& sigma,
                    std::uint64_t cap = kDefaultExpansionCap);

/// Substitutes sigma into an expression over Gamma and Omega and expands.
Word apply_solution(const EquationE& e, const ExpExpr& side, const Solution& sigma,
                    std::uint64_t cap = kDefaultExpansionCap);

/// Completes a representative assignment: for each pair {X, X'} with only
/// one member present, the partner is set to the involuted word.
Solution close_under_involution(const InvAlphabet& alph, const std::vector<Letter>& omega,
                                const Solution& partial);

/// Admissibility budget C * (input size)^4 and the corresponding check.
std::uint64_t admissibility_budget(const EquationE& root, std::uint64_t constant = 64);
bool is_admissible(const EquationE& e, const EquationE& root, std::uint64_t budget);

}  // namespace wordeq

#endif  // WORDEQ_EQUATION_HPP_
