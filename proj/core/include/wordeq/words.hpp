// words.hpp -- involutive alphabets, words, free reduction, intervals.

#ifndef WORDEQ_WORDS_HPP_
#define WORDEQ_WORDS_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace wordeq {

using Letter = std::int32_t;
inline constexpr Letter kNoLetter = -1;

enum class LetterKind : std::uint8_t { constant, variable };

/// Raised when a configured resource budget (state blow-up, expansion
/// cap, reachable-set size, ...) is exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Alphabet with involution.  Letters are dense small integers; the bar
/// map is stored as a permutation.  Constants may be fixed points of the
/// involution, variables never are.  The table is append-only, so letter
/// ids stay valid while fresh letters are allocated.
class InvAlphabet {
 public:
  InvAlphabet() = default;

  /// Adds the pair {name, name'} and returns the unbarred letter.
  Letter add_pair(const std::string& name, LetterKind kind);

  /// Adds a single constant fixed by the involution.
  Letter add_involutive_constant(const std::string& name);

  /// Allocates a fresh pair with an auto-generated name ("<prefix><n>").
  Letter fresh_pair(LetterKind kind, const std::string& prefix = "q");

  /// Fresh involutive constant with an auto-generated name.
  Letter fresh_involutive_constant(const std::string& prefix = "q");

  Letter bar(Letter a) const { return bar_.at(static_cast<size_t>(a)); }
  LetterKind kind(Letter a) const { return kind_.at(static_cast<size_t>(a)); }
  bool is_variable(Letter a) const { return kind(a) == LetterKind::variable; }
  bool is_constant(Letter a) const { return kind(a) == LetterKind::constant; }
  bool is_self_bar(Letter a) const { return bar(a) == a; }
  const std::string& name(Letter a) const { return names_.at(static_cast<size_t>(a)); }

  /// Looks a letter up by its rendered token ("a" or "a'").
  std::optional<Letter> find(const std::string& token) const;

  std::size_t size() const { return names_.size(); }

 private:
  Letter push(const std::string& name, LetterKind kind, Letter bar);

  std::vector<std::string> names_;
  std::vector<Letter> bar_;
  std::vector<LetterKind> kind_;
  std::unordered_map<std::string, Letter> by_name_;
  int fresh_counter_ = 0;
};

/// A word over one InvAlphabet.  Plain value type; the alphabet is passed
/// explicitly to the operations that need the involution.
struct Word {
  std::vector<Letter> letters;

  Word() = default;
  explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  Letter operator[](std::size_t i) const { return letters[i]; }

  void push_back(Letter a) { letters.push_back(a); }
  void append(const Word& w) {
    letters.insert(letters.end(), w.letters.begin(), w.letters.end());
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (Letter a : w.letters) {
      h ^= static_cast<std::size_t>(a) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// An interval [lo, hi] of positions 0..m in a host word.  Orientation is
/// implied by the endpoint order; hi < lo denotes the involuted factor.
struct Interval {
  int lo = 0;
  int hi = 0;

  bool positive() const { return lo < hi; }
  Interval reversed() const { return {hi, lo}; }
  int length() const { return lo <= hi ? hi - lo : lo - hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
  friend auto operator<=>(const Interval&, const Interval&) = default;
};

/// Reverse-and-bar involution on words.
Word involute(const InvAlphabet& alph, const Word& w);

/// Unique normal form under the cancellation rewriting a a' -> 1.
/// All letters must be constants.
Word free_reduce(const InvAlphabet& alph, const Word& w);

/// The factor w[lo,hi]; the empty word for lo == hi and the involuted
/// factor for hi < lo.  Out-of-range positions are rejected.
Word factor(const InvAlphabet& alph, const Word& w, Interval iv);

bool is_freely_reduced(const InvAlphabet& alph, const Word& w);

/// Word made of a single letter.
inline Word word_of(Letter a) { return Word{{a}}; }

Word concat(const Word& u, const Word& v);

/// Renders a word as space-separated letter tokens; barred letters carry
/// a trailing apostrophe.  The empty word renders as "1".
std::string render_word(const InvAlphabet& alph, const Word& w);

/// Parses the token grammar used by all file formats.  Throws
/// std::invalid_argument on unknown tokens.
Word parse_word(const InvAlphabet& alph, const std::string& text);

}  // namespace wordeq

#endif  // WORDEQ_WORDS_HPP_
