// frontend.hpp -- reduction pipeline: existential formulas with rational
// constraints over a free group -> systems over the free monoid with
// involution -> one equation with matrix constraints.

#ifndef WORDEQ_FRONTEND_HPP_
#define WORDEQ_FRONTEND_HPP_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wordeq/automata.hpp"
#include "wordeq/equation.hpp"

namespace wordeq {

struct GroupFormula {
  enum class Kind : std::uint8_t { eq, membership, negation, conjunction, disjunction };
  Kind kind = Kind::eq;
  bool negated = false;        // atoms only, after normalization
  Word w;                      // eq atom: W = 1 with W over Gamma and Omega
  Letter var = kNoLetter;      // membership atom
  std::string automaton;       // membership atom: named NFA
  std::vector<GroupFormula> children;

  static GroupFormula eq_atom(Word w);
  static GroupFormula in_atom(Letter var, std::string automaton);
  static GroupFormula neg(GroupFormula f);
  static GroupFormula conj(std::vector<GroupFormula> fs);
  static GroupFormula disj(std::vector<GroupFormula> fs);

  bool is_atom() const { return kind == Kind::eq || kind == Kind::membership; }
};

/// A closed existential formula package: alphabet, generators, variables,
/// named constraint automata and the formula body.
struct GroupTask {
  std::shared_ptr<InvAlphabet> alph;
  std::vector<Letter> gamma;  // generators and their bars
  std::vector<Letter> vars;   // existential block, closed under involution
  std::map<std::string, Nfa> automata;
  GroupFormula root;
};

/// DeMorgan normalization: negations pushed onto the atoms, double
/// negations removed.  Negative memberships stay as negated atoms.
GroupFormula normalize(const GroupFormula& f);

/// Replaces each negated equation atom W != 1 by a fresh variable X with
/// W X = 1 and X outside the unit language ("<unit>" automaton).
void eliminate_group_inequalities(GroupTask& task);

inline const std::string kUnitAutomaton = "<unit>";

/// Lazy enumeration of the conjunctive branches of a normalized formula:
/// every disjunction is resolved both ways, depth first.
class DisjunctChoices {
 public:
  explicit DisjunctChoices(const GroupFormula& root) : root_(&root) {}

  /// Atoms of the next branch, or nullopt when exhausted.
  std::optional<std::vector<const GroupFormula*>> next();

 private:
  const GroupFormula* root_;
  std::vector<int> choice_;
  std::vector<int> arity_;
  bool done_ = false;
};

/// One conjunctive branch of atoms, all equations brought to |W| = 3.
struct TriangularBranch {
  std::vector<Word> triples;  // each of length exactly 3, meaning W = 1
  std::vector<const GroupFormula*> memberships;  // possibly negated
};

/// Pads short equations with a a' and splits long ones with fresh
/// variables until every equational atom has length three.
TriangularBranch triangulate(GroupTask& task, const std::vector<const GroupFormula*>& atoms);

struct MonoidMembership {
  Letter var = kNoLetter;
  Nfa aut;
  Polarity polarity = Polarity::positive;
};

struct MonoidSystem {
  std::vector<std::pair<Word, Word>> equations;
  std::vector<std::pair<Word, Word>> inequalities;
  std::vector<MonoidMembership> memberships;
};

/// Moves the interpretation to the free monoid with involution: positive
/// constraints become memberships in the Benois saturation, negative ones
/// become non-membership in the saturation plus membership in the
/// reduced-words language.  Group triples are split via fresh P, Q, R
/// (u = PQ, v = involute(Q) R, w = involute(R) involute(P)).
MonoidSystem transfer_to_monoid(GroupTask& task, const TriangularBranch& branch);

/// The Lemma-1 split of a single group triple; exposed for tests.
std::vector<std::pair<Word, Word>> lemma1_split(GroupTask& task, const Word& triple);

/// Branches replacing each monoid inequality U != V by the standard
/// disjunction over first-difference positions.  Requires |Gamma| >= 2.
std::vector<MonoidSystem> eliminate_monoid_inequalities(GroupTask& task,
                                                        const MonoidSystem& sys);

struct CompiledSystem {
  EquationE equation;  // residual mode: empty rho, acceptance pairs kept
  /// Candidate constraint matrices per representative variable, already
  /// filtered by the acceptance pairs and involution compatibility.
  std::vector<std::pair<Letter, std::vector<MonElem>>> rho_candidates;
  /// Witness words for the variables cancelled by the Lemma-4 pretest;
  /// they complete any solution of the equation to a solution of the
  /// original system.
  Solution cancelled;
};

/// Combines the system into a single equation over Gamma plus a fresh
/// separator pair, compiles the memberships into h and acceptance pairs,
/// and prepares the rho guessing data.  Returns nullopt when the Lemma-4
/// pretest proves a constrained absent variable impossible.
std::optional<CompiledSystem> combine_to_single_equation(
    GroupTask& task, const MonoidSystem& sys, std::size_t reach_budget = kDefaultReachBudget);

/// Odometer over the rho candidate lists.
class RhoAssignments {
 public:
  explicit RhoAssignments(const CompiledSystem& cs) : cs_(&cs) {}
  std::optional<RhoMap> next();

 private:
  const CompiledSystem* cs_;
  std::vector<std::size_t> idx_;
  bool done_ = false;
  bool started_ = false;
};

/// Evaluates a closed formula under an explicit assignment of words to
/// the variables (free-group semantics via free reduction).
bool eval_group_formula(const GroupTask& task, const GroupFormula& f,
                        const Solution& assignment);

}  // namespace wordeq

#endif  // WORDEQ_FRONTEND_HPP_
