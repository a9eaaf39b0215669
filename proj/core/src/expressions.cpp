#include "wordeq/expressions.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "wordeq/constraints.hpp"

namespace wordeq {

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s < a ? UINT64_MAX : s;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > UINT64_MAX / b) return UINT64_MAX;
  return a * b;
}

}  // namespace

std::uint64_t log_size(std::uint64_t k) {
  if (k <= 2) return 1;
  std::uint64_t bits = static_cast<std::uint64_t>(64 - std::countl_zero(k - 1));
  return bits;  // ceil(log2 k) for k >= 2
}

ExpExpr ExpExpr::literal(Word w) {
  auto n = std::make_shared<Node>(Tag::literal, std::move(w));
  n->size = n->lit.size();
  n->eval_len = n->lit.size();
  return ExpExpr(std::move(n));
}

ExpExpr ExpExpr::concat(const ExpExpr& a, const ExpExpr& b) {
  auto n = std::make_shared<Node>(Tag::concat, a.node_, b.node_);
  n->size = sat_add(a.size(), b.size());
  n->eval_len = sat_add(a.eval_length(), b.eval_length());
  return ExpExpr(std::move(n));
}

ExpExpr ExpExpr::power(const ExpExpr& base, std::uint64_t k) {
  auto n = std::make_shared<Node>(Tag::power, base.node_, k);
  n->size = sat_add(log_size(k), base.size());
  n->eval_len = sat_mul(k, base.eval_length());
  return ExpExpr(std::move(n));
}

ExpExpr ExpExpr::concat_all(const std::vector<ExpExpr>& parts) {
  if (parts.empty()) return ExpExpr::literal(Word{});
  ExpExpr acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = concat(acc, parts[i]);
  return acc;
}

namespace {

void eval_into(const ExpExpr& e, Word& out) {
  switch (e.tag()) {
    case ExpExpr::Tag::literal:
      out.append(e.lit());
      break;
    case ExpExpr::Tag::concat:
      eval_into(e.left(), out);
      eval_into(e.right(), out);
      break;
    case ExpExpr::Tag::power: {
      if (e.exponent() == 0 || e.base().eval_length() == 0) return;
      std::size_t start = out.size();
      eval_into(e.base(), out);
      std::size_t period = out.size() - start;
      for (std::uint64_t i = 1; i < e.exponent(); ++i) {
        out.letters.insert(out.letters.end(), out.letters.begin() + start,
                           out.letters.begin() + start + period);
      }
      break;
    }
  }
}

}  // namespace

Word eval(const ExpExpr& e, std::uint64_t cap) {
  if (e.eval_length() > cap) {
    throw ResourceError("expression expansion exceeds the cap");
  }
  Word out;
  out.letters.reserve(e.eval_length());
  eval_into(e, out);
  return out;
}

bool eq_eval(const ExpExpr& a, const ExpExpr& b, std::uint64_t cap) {
  if (a.eval_length() != b.eval_length()) return false;
  return eval(a, cap) == eval(b, cap);
}

Letter letter_at(const ExpExpr& e, std::uint64_t i) {
  if (i >= e.eval_length()) throw std::out_of_range("letter_at: position beyond evaluation");
  switch (e.tag()) {
    case ExpExpr::Tag::literal:
      return e.lit()[static_cast<std::size_t>(i)];
    case ExpExpr::Tag::concat:
      if (i < e.left().eval_length()) return letter_at(e.left(), i);
      return letter_at(e.right(), i - e.left().eval_length());
    case ExpExpr::Tag::power:
      return letter_at(e.base(), i % e.base().eval_length());
  }
  throw std::logic_error("unreachable");
}

ExpExpr factor_expr(const ExpExpr& e, std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi || hi > e.eval_length()) {
    throw std::out_of_range("factor_expr: bad interval");
  }
  if (lo == hi) return ExpExpr::literal(Word{});
  if (lo == 0 && hi == e.eval_length()) return e;
  switch (e.tag()) {
    case ExpExpr::Tag::literal: {
      Word w;
      w.letters.assign(e.lit().letters.begin() + static_cast<long>(lo),
                       e.lit().letters.begin() + static_cast<long>(hi));
      return ExpExpr::literal(std::move(w));
    }
    case ExpExpr::Tag::concat: {
      std::uint64_t ll = e.left().eval_length();
      if (hi <= ll) return factor_expr(e.left(), lo, hi);
      if (lo >= ll) return factor_expr(e.right(), lo - ll, hi - ll);
      return ExpExpr::concat(factor_expr(e.left(), lo, ll),
                             factor_expr(e.right(), 0, hi - ll));
    }
    case ExpExpr::Tag::power: {
      std::uint64_t lb = e.base().eval_length();
      std::uint64_t first = lo / lb;       // copy containing position lo
      std::uint64_t off = lo - first * lb;
      if (hi - lo <= lb - off) {
        // fits inside one copy of the base
        return factor_expr(e.base(), off, off + (hi - lo));
      }
      std::vector<ExpExpr> parts;
      if (off > 0) {
        parts.push_back(factor_expr(e.base(), off, lb));
        ++first;
      }
      std::uint64_t last = hi / lb;  // first copy index not fully included
      if (last > first) {
        ExpExpr mid = ExpExpr::power(e.base(), last - first);
        parts.push_back(last - first == 1 ? e.base() : mid);
      }
      std::uint64_t rest = hi - last * lb;
      if (rest > 0) parts.push_back(factor_expr(e.base(), 0, rest));
      return ExpExpr::concat_all(parts);
    }
  }
  throw std::logic_error("unreachable");
}

ExpExpr involute_expr(const InvAlphabet& alph, const ExpExpr& e) {
  switch (e.tag()) {
    case ExpExpr::Tag::literal:
      return ExpExpr::literal(involute(alph, e.lit()));
    case ExpExpr::Tag::concat:
      return ExpExpr::concat(involute_expr(alph, e.right()), involute_expr(alph, e.left()));
    case ExpExpr::Tag::power:
      return ExpExpr::power(involute_expr(alph, e.base()), e.exponent());
  }
  throw std::logic_error("unreachable");
}

ExpExpr subst_letters(const ExpExpr& e, const std::map<Letter, ExpExpr>& map) {
  switch (e.tag()) {
    case ExpExpr::Tag::literal: {
      std::vector<ExpExpr> parts;
      Word run;
      auto flush = [&]() {
        if (!run.empty()) {
          parts.push_back(ExpExpr::literal(run));
          run = Word{};
        }
      };
      for (Letter a : e.lit().letters) {
        auto it = map.find(a);
        if (it == map.end()) {
          run.push_back(a);
        } else {
          flush();
          parts.push_back(it->second);
        }
      }
      flush();
      if (parts.size() == 1) return parts.front();
      return ExpExpr::concat_all(parts);
    }
    case ExpExpr::Tag::concat:
      return ExpExpr::concat(subst_letters(e.left(), map), subst_letters(e.right(), map));
    case ExpExpr::Tag::power:
      return ExpExpr::power(subst_letters(e.base(), map), e.exponent());
  }
  throw std::logic_error("unreachable");
}

namespace {

void collect_letters(const ExpExpr& e, std::set<Letter>& out) {
  switch (e.tag()) {
    case ExpExpr::Tag::literal:
      out.insert(e.lit().letters.begin(), e.lit().letters.end());
      break;
    case ExpExpr::Tag::concat:
      collect_letters(e.left(), out);
      collect_letters(e.right(), out);
      break;
    case ExpExpr::Tag::power:
      collect_letters(e.base(), out);
      break;
  }
}

}  // namespace

std::vector<Letter> letters_of(const ExpExpr& e) {
  std::set<Letter> s;
  collect_letters(e, s);
  return {s.begin(), s.end()};
}

MonElem hom_of_expr(const ConstraintHom& h, const ExpExpr& e, int n) {
  switch (e.tag()) {
    case ExpExpr::Tag::literal: {
      MonElem acc = MonElem::identity(n);
      for (Letter a : e.lit().letters) acc = acc * h.at(a);
      return acc;
    }
    case ExpExpr::Tag::concat:
      return hom_of_expr(h, e.left(), n) * hom_of_expr(h, e.right(), n);
    case ExpExpr::Tag::power:
      return hom_of_expr(h, e.base(), n).pow(e.exponent());
  }
  throw std::logic_error("unreachable");
}

}  // namespace wordeq
