// constraints.hpp -- the Boolean matrix monoid with block-swap-transpose
// involution, homomorphisms from constant letters into it, acceptance
// vector pairs, and the reachable-submonoid existence searches.

#ifndef WORDEQ_CONSTRAINTS_HPP_
#define WORDEQ_CONSTRAINTS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "wordeq/automata.hpp"
#include "wordeq/words.hpp"

namespace wordeq {

/// Square Boolean matrix; rows are machine-word bitsets (n <= 64).
class BoolMat {
 public:
  BoolMat() = default;
  explicit BoolMat(int n) : n_(n), rows_(static_cast<size_t>(n), 0) {
    if (n < 0 || n > 64) throw std::invalid_argument("BoolMat: dimension out of range");
  }

  static BoolMat identity(int n);

  int dim() const { return n_; }
  bool get(int i, int j) const { return (rows_[static_cast<size_t>(i)] >> j) & 1u; }
  void set(int i, int j, bool v) {
    if (v) rows_[static_cast<size_t>(i)] |= (1ull << j);
    else rows_[static_cast<size_t>(i)] &= ~(1ull << j);
  }
  std::uint64_t row(int i) const { return rows_[static_cast<size_t>(i)]; }

  BoolMat operator*(const BoolMat& o) const;
  BoolMat transposed() const;

  friend bool operator==(const BoolMat&, const BoolMat&) = default;
  friend auto operator<=>(const BoolMat&, const BoolMat&) = default;

  std::size_t hash() const noexcept;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> rows_;
};

/// Element of M = { diag(A,B) | A,B Boolean n x n }, with the involution
/// diag(A,B) |-> diag(B^T, A^T).
class MonElem {
 public:
  MonElem() = default;
  MonElem(BoolMat a, BoolMat b) : A_(std::move(a)), B_(std::move(b)) {}

  static MonElem identity(int n) { return {BoolMat::identity(n), BoolMat::identity(n)}; }

  int dim() const { return A_.dim(); }
  const BoolMat& blockA() const { return A_; }
  const BoolMat& blockB() const { return B_; }

  MonElem operator*(const MonElem& o) const { return {A_ * o.A_, B_ * o.B_}; }
  MonElem involuted() const { return {B_.transposed(), A_.transposed()}; }
  MonElem pow(std::uint64_t k) const;

  friend bool operator==(const MonElem&, const MonElem&) = default;
  friend auto operator<=>(const MonElem&, const MonElem&) = default;

  std::size_t hash() const noexcept;

 private:
  BoolMat A_, B_;
};

struct MonElemHash {
  std::size_t operator()(const MonElem& m) const noexcept { return m.hash(); }
};

/// Boolean vector of length 2n split into the two block halves.
struct BitVec2n {
  std::uint64_t upper = 0;  // indices 0..n-1
  std::uint64_t lower = 0;  // indices n..2n-1

  friend bool operator==(const BitVec2n&, const BitVec2n&) = default;
};

enum class Polarity : std::uint8_t { positive, negative };

/// Acceptance check "I^T h(sigma(X)) F = 1" (positive) or "= 0" (negative).
struct AcceptancePair {
  Letter var = kNoLetter;
  BitVec2n I, F;
  Polarity polarity = Polarity::positive;
};

/// h on the constant letters; h(a') = involute(h(a)) by construction.
class ConstraintHom {
 public:
  ConstraintHom() = default;
  explicit ConstraintHom(int n) : n_(n) {}

  int dim() const { return n_; }
  void set(Letter a, MonElem m) { map_[a] = std::move(m); }
  bool contains(Letter a) const { return map_.count(a) != 0; }
  const MonElem& at(Letter a) const;
  const std::map<Letter, MonElem>& entries() const { return map_; }

 private:
  int n_ = 0;
  std::map<Letter, MonElem> map_;
};

/// rho on variables; rho(X') = involute(rho(X)).
using RhoMap = std::map<Letter, MonElem>;

struct HomFromAutomata {
  ConstraintHom hom;
  std::vector<AcceptancePair> pairs;  // one per input automaton, polarity positive
  int n = 0;                          // total state count
};

/// Builds h over the union state space of the given eps-free automata and
/// one acceptance pair per automaton, such that w in L(A_j) iff
/// I_j^T h(w) F_j = 1.
HomFromAutomata hom_from_automata(const InvAlphabet& alph,
                                  const std::vector<Letter>& gamma,
                                  const std::vector<Nfa>& automata);

MonElem hom_image(const ConstraintHom& h, const Word& w);

/// I^T m F over the block-diagonal element.
bool acceptance_value(const BitVec2n& I, const MonElem& m, const BitVec2n& F);

bool check_acceptance(const AcceptancePair& p, const MonElem& m);

inline constexpr std::size_t kDefaultReachBudget = 1000000;

/// The submonoid generated by {h(a)} from the identity.  Witnesses are
/// stored as parent pointers and reconstructed on demand (shortest words,
/// breadth first).
class ReachSet {
 public:
  bool contains(const MonElem& m) const { return index_.count(m) != 0; }
  std::size_t size() const { return elems_.size(); }
  const std::vector<MonElem>& elements() const { return elems_; }

  /// Shortest witness with h(witness) = m; m must be contained.
  Word witness(const MonElem& m) const;

 private:
  friend ReachSet reachable_submonoid(const InvAlphabet&, const std::vector<Letter>&,
                                      const ConstraintHom&, std::size_t);
  std::unordered_map<MonElem, int, MonElemHash> index_;
  std::vector<MonElem> elems_;
  std::vector<int> parent_;
  std::vector<Letter> via_;
};

/// Throws ResourceError past the budget.
ReachSet reachable_submonoid(const InvAlphabet& alph, const std::vector<Letter>& gamma,
                             const ConstraintHom& h,
                             std::size_t budget = kDefaultReachBudget);

/// Shortest w with h(w) = target, if the target is generated.
std::optional<Word> exists_word_with_image(const InvAlphabet& alph,
                                           const std::vector<Letter>& gamma,
                                           const ConstraintHom& h, const MonElem& target,
                                           std::size_t budget = kDefaultReachBudget);

/// Witness w = u a involute(u) with w = involute(w) and h(w) = target,
/// where a is the empty word or an involution-fixed constant.
std::optional<Word> exists_selfinvolutive_word_with_image(
    const InvAlphabet& alph, const std::vector<Letter>& gamma, const ConstraintHom& h,
    const MonElem& target, std::size_t budget = kDefaultReachBudget);

/// The exponent c with s^c = s^{2c} for every s in M: max{3, n!}, except
/// that n = 2 returns 4 (the smallest even exponent at least 3; 3 fails
/// on permutation blocks of period two).  n beyond the desk-scale cap (8)
/// is rejected.
std::uint64_t idempotent_exponent(int n);

}  // namespace wordeq

#endif  // WORDEQ_CONSTRAINTS_HPP_
