// expressions.hpp -- exponential expressions: compressed words built from
// literals, concatenation and integer powers, with logarithmic size
// accounting for the exponents.

#ifndef WORDEQ_EXPRESSIONS_HPP_
#define WORDEQ_EXPRESSIONS_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "wordeq/words.hpp"

namespace wordeq {

class MonElem;
class ConstraintHom;

inline constexpr std::uint64_t kDefaultExpansionCap = 1ull << 20;

/// Immutable expression tree with cached size and evaluation length.
/// Sharing subtrees is fine; nodes are never mutated after construction.
class ExpExpr {
 public:
  enum class Tag : std::uint8_t { literal, concat, power };

  ExpExpr() : ExpExpr(literal(Word{})) {}

  static ExpExpr literal(Word w);
  static ExpExpr concat(const ExpExpr& a, const ExpExpr& b);
  static ExpExpr power(const ExpExpr& base, std::uint64_t k);
  /// Left-to-right concatenation of a whole sequence (empty -> empty literal).
  static ExpExpr concat_all(const std::vector<ExpExpr>& parts);

  Tag tag() const { return node_->tag; }
  const Word& lit() const { return node_->lit; }
  ExpExpr left() const { return ExpExpr(node_->a); }
  ExpExpr right() const { return ExpExpr(node_->b); }
  ExpExpr base() const { return ExpExpr(node_->a); }
  std::uint64_t exponent() const { return node_->k; }

  /// Size per the usual accounting: ||w|| = |w|, ||e e'|| = ||e||+||e'||,
  /// ||(e)^k|| = max{1, ceil(log2 k)} + ||e||.
  std::uint64_t size() const { return node_->size; }
  /// Length of eval(e), computed without expansion (saturating).
  std::uint64_t eval_length() const { return node_->eval_len; }

  friend bool operator==(const ExpExpr& a, const ExpExpr& b) { return a.node_ == b.node_; }

 private:
  struct Node {
    Tag tag;
    Word lit;                            // literal
    std::shared_ptr<const Node> a, b;    // concat children / power base
    std::uint64_t k = 0;
    std::uint64_t size = 0;
    std::uint64_t eval_len = 0;
    Node(Tag t, Word w) : tag(t), lit(std::move(w)) {}
    Node(Tag t, std::shared_ptr<const Node> x, std::shared_ptr<const Node> y)
        : tag(t), a(std::move(x)), b(std::move(y)) {}
    Node(Tag t, std::shared_ptr<const Node> x, std::uint64_t kk)
        : tag(t), a(std::move(x)), k(kk) {}
  };

  explicit ExpExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// max{1, ceil(log2 k)}; exponent size contribution of (e)^k.
std::uint64_t log_size(std::uint64_t k);

/// Full expansion.  Throws ResourceError if eval_length exceeds the cap.
Word eval(const ExpExpr& e, std::uint64_t cap = kDefaultExpansionCap);

/// eval(e) == eval(e') by expansion.  Both must fit in the cap.
bool eq_eval(const ExpExpr& a, const ExpExpr& b, std::uint64_t cap = kDefaultExpansionCap);

/// i-th letter of eval(e) by arithmetic descent, no expansion.
Letter letter_at(const ExpExpr& e, std::uint64_t i);

/// Expression for eval(e)[lo,hi] with lo <= hi (positive orientation;
/// negative intervals are handled by the caller via involute_expr).
/// The result size is at most size(e)^2.
ExpExpr factor_expr(const ExpExpr& e, std::uint64_t lo, std::uint64_t hi);

/// eval(result) = involute(eval(e)).
ExpExpr involute_expr(const InvAlphabet& alph, const ExpExpr& e);

/// Replaces letters by expressions (used by base changes and partial
/// solutions).  Letters absent from the map stay themselves.
ExpExpr subst_letters(const ExpExpr& e, const std::map<Letter, ExpExpr>& map);

/// All letters occurring syntactically in e (with multiplicity ignored).
std::vector<Letter> letters_of(const ExpExpr& e);

/// h(eval(e)), computed structurally with fast exponentiation; no length cap.
MonElem hom_of_expr(const ConstraintHom& h, const ExpExpr& e, int n);

}  // namespace wordeq

#endif  // WORDEQ_EXPRESSIONS_HPP_
