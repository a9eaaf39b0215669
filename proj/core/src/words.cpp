#include "wordeq/words.hpp"

#include <algorithm>
#include <sstream>

namespace wordeq {

Letter InvAlphabet::push(const std::string& name, LetterKind kind, Letter bar) {
  if (by_name_.count(name)) {
    throw std::invalid_argument("duplicate letter name: " + name);
  }
  Letter id = static_cast<Letter>(names_.size());
  names_.push_back(name);
  kind_.push_back(kind);
  bar_.push_back(bar);
  by_name_.emplace(name, id);
  return id;
}

Letter InvAlphabet::add_pair(const std::string& name, LetterKind kind) {
  Letter a = push(name, kind, kNoLetter);
  Letter b = push(name + "'", kind, a);
  bar_[static_cast<size_t>(a)] = b;
  return a;
}

Letter InvAlphabet::add_involutive_constant(const std::string& name) {
  Letter a = push(name, LetterKind::constant, kNoLetter);
  bar_[static_cast<size_t>(a)] = a;
  return a;
}

Letter InvAlphabet::fresh_pair(LetterKind kind, const std::string& prefix) {
  for (;;) {
    std::string candidate = prefix + std::to_string(fresh_counter_++);
    if (!by_name_.count(candidate) && !by_name_.count(candidate + "'")) {
      return add_pair(candidate, kind);
    }
  }
}

Letter InvAlphabet::fresh_involutive_constant(const std::string& prefix) {
  for (;;) {
    std::string candidate = prefix + std::to_string(fresh_counter_++);
    if (!by_name_.count(candidate)) {
      return add_involutive_constant(candidate);
    }
  }
}

std::optional<Letter> InvAlphabet::find(const std::string& token) const {
  auto it = by_name_.find(token);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

Word involute(const InvAlphabet& alph, const Word& w) {
  Word out;
  out.letters.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    out.letters.push_back(alph.bar(*it));
  }
  return out;
}

Word free_reduce(const InvAlphabet& alph, const Word& w) {
  Word out;
  out.letters.reserve(w.size());
  for (Letter a : w.letters) {
    if (!alph.is_constant(a)) {
      throw std::invalid_argument("free_reduce: non-constant letter " + alph.name(a));
    }
    if (!out.empty() && out.letters.back() == alph.bar(a)) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(a);
    }
  }
  return out;
}

bool is_freely_reduced(const InvAlphabet& alph, const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == alph.bar(w[i - 1])) return false;
  }
  return true;
}

Word factor(const InvAlphabet& alph, const Word& w, Interval iv) {
  const int m = static_cast<int>(w.size());
  if (iv.lo < 0 || iv.lo > m || iv.hi < 0 || iv.hi > m) {
    throw std::out_of_range("factor: interval outside host word");
  }
  if (iv.lo <= iv.hi) {
    Word out;
    out.letters.assign(w.letters.begin() + iv.lo, w.letters.begin() + iv.hi);
    return out;
  }
  return involute(alph, factor(alph, w, iv.reversed()));
}

Word concat(const Word& u, const Word& v) {
  Word out = u;
  out.append(v);
  return out;
}

std::string render_word(const InvAlphabet& alph, const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << alph.name(w[i]);
  }
  return os.str();
}

Word parse_word(const InvAlphabet& alph, const std::string& text) {
  Word out;
  std::istringstream is(text);
  std::string token;
  while (is >> token) {
    if (token == "1") continue;  // unit element
    auto l = alph.find(token);
    if (!l) throw std::invalid_argument("unknown letter token: " + token);
    out.push_back(*l);
  }
  return out;
}

}  // namespace wordeq
