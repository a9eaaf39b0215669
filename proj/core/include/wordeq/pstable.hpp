// pstable.hpp -- p-stable normal forms of both kinds.

#ifndef WORDEQ_PSTABLE_HPP_
#define WORDEQ_PSTABLE_HPP_

#include <cstdint>
#include <vector>

#include "wordeq/words.hpp"

namespace wordeq {

/// Normal form isolating the maximal p-power runs of a word.  The first
/// kind applies when involute(p) is not a factor of p^2; exponents then
/// carry a sign.  Otherwise p = r s with involute(p) = s r, r and s fixed
/// by the involution, and the exponent entries stand for p^a r.
struct PStableNF {
  enum class Kind : std::uint8_t { first, second } kind = Kind::first;
  Word p;
  Word r, s;                    // second kind decomposition (r may be empty)
  std::vector<Word> pieces;     // u_0 .. u_k
  std::vector<std::int64_t> exps;  // k entries; signed for the first kind
};

bool is_primitive(const Word& p);

/// Chooses the kind, computes the decomposition p = r s by scanning, and
/// returns the shortest sequence satisfying the membership conditions.
/// p must be primitive and nonempty.
PStableNF p_stable_normal_form(const InvAlphabet& alph, const Word& w, const Word& p);

/// Expands the normal form back into the word.
Word reconstruct(const InvAlphabet& alph, const PStableNF& nf);

}  // namespace wordeq

#endif  // WORDEQ_PSTABLE_HPP_
