#include <doctest.h>

#include "helpers.hpp"

using namespace weqtest;

TEST_SUITE_BEGIN("expressions");

namespace {

ExpExpr random_expr(const Fixture& fx, std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> kind(0, depth <= 0 ? 0 : 2);
  switch (kind(rng)) {
    case 0:
      return ExpExpr::literal(random_word(fx, rng, 4));
    case 1:
      return ExpExpr::concat(random_expr(fx, rng, depth - 1), random_expr(fx, rng, depth - 1));
    default: {
      std::uniform_int_distribution<int> exp(0, 5);
      return ExpExpr::power(random_expr(fx, rng, depth - 1),
                            static_cast<std::uint64_t>(exp(rng)));
    }
  }
}

std::uint64_t recompute_size(const ExpExpr& e) {
  switch (e.tag()) {
    case ExpExpr::Tag::literal:
      return e.lit().size();
    case ExpExpr::Tag::concat:
      return recompute_size(e.left()) + recompute_size(e.right());
    case ExpExpr::Tag::power:
      return log_size(e.exponent()) + recompute_size(e.base());
  }
  return 0;
}

}  // namespace

TEST_CASE("evaluation basics") {
  Fixture fx = abc_fixture();
  CHECK(eval(ExpExpr::literal(fx.w("a b"))) == fx.w("a b"));
  CHECK(eval(ExpExpr::power(ExpExpr::literal(fx.w("a b")), 3)) == fx.w("a b a b a b"));
  CHECK(eval(ExpExpr::concat(ExpExpr::power(ExpExpr::literal(fx.w("a")), 2),
                             ExpExpr::literal(fx.w("b")))) == fx.w("a a b"));
}

TEST_CASE("size accounting") {
  CHECK(log_size(1) == 1);
  CHECK(log_size(2) == 1);
  CHECK(log_size(3) == 2);
  CHECK(log_size(64) == 6);
  CHECK(log_size(65) == 7);

  Fixture fx = abc_fixture();
  ExpExpr e = ExpExpr::power(ExpExpr::literal(fx.w("a b")), 8);
  CHECK(e.size() == 3 + 2);

  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    ExpExpr r = random_expr(fx, rng, 4);
    CHECK(r.size() == recompute_size(r));
    if (r.eval_length() <= 4096) CHECK(r.eval_length() == eval(r).size());
  }
}

TEST_CASE("expansion cap is a resource error") {
  Fixture fx = abc_fixture();
  ExpExpr big = ExpExpr::power(ExpExpr::literal(fx.w("a b")), 1 << 20);
  CHECK_THROWS_AS(eval(big, 1024), ResourceError);
}

TEST_CASE("eq_eval") {
  Fixture fx = abc_fixture();
  ExpExpr ab3 = ExpExpr::power(ExpExpr::literal(fx.w("a b")), 3);
  CHECK(eq_eval(ab3, ExpExpr::literal(fx.w("a b a b a b"))));
  CHECK_FALSE(eq_eval(ab3, ExpExpr::power(ExpExpr::literal(fx.w("b a")), 3)));
  ExpExpr a23 = ExpExpr::power(ExpExpr::power(ExpExpr::literal(fx.w("a")), 2), 3);
  ExpExpr a32 = ExpExpr::power(ExpExpr::power(ExpExpr::literal(fx.w("a")), 3), 2);
  CHECK(eq_eval(a23, a32));
}

TEST_CASE("letter_at random access") {
  Fixture fx = abc_fixture();
  ExpExpr big = ExpExpr::power(ExpExpr::literal(fx.w("a b")), 1000);
  CHECK(letter_at(big, 1001) == fx.l("b"));
  CHECK(letter_at(ExpExpr::literal(fx.w("a b c")), 0) == fx.l("a"));
  CHECK_THROWS_AS(letter_at(ExpExpr::literal(fx.w("a")), 5), std::out_of_range);

  std::mt19937 rng(12);
  for (int i = 0; i < 100; ++i) {
    ExpExpr e = random_expr(fx, rng, 4);
    if (e.eval_length() == 0 || e.eval_length() > 200) continue;
    Word w = eval(e);
    for (std::uint64_t p = 0; p < w.size(); ++p) CHECK(letter_at(e, p) == w.letters[p]);
  }
}

TEST_CASE("factor_expr value and size bound") {
  Fixture fx = abc_fixture();
  ExpExpr abcd = ExpExpr::literal(fx.w("a b c c'"));
  CHECK(eval(factor_expr(abcd, 1, 3)) == fx.w("b c"));
  CHECK(eval(factor_expr(abcd, 0, 4)) == fx.w("a b c c'"));

  ExpExpr ab8 = ExpExpr::power(ExpExpr::literal(fx.w("a b")), 8);
  ExpExpr mid = factor_expr(ab8, 1, 6);  // "babab"
  CHECK(eval(mid) == fx.w("b a b a b"));
  CHECK(mid.size() <= ab8.size() * ab8.size());

  std::mt19937 rng(13);
  for (int i = 0; i < 1000; ++i) {
    ExpExpr e = random_expr(fx, rng, 4);
    if (e.eval_length() == 0 || e.eval_length() > 500) continue;
    Word w = eval(e);
    std::uniform_int_distribution<std::uint64_t> pos(0, e.eval_length());
    std::uint64_t x = pos(rng), y = pos(rng);
    if (x > y) std::swap(x, y);
    ExpExpr f = factor_expr(e, x, y);
    Word expect;
    expect.letters.assign(w.letters.begin() + static_cast<long>(x),
                          w.letters.begin() + static_cast<long>(y));
    CHECK(eval(f) == expect);
    CHECK(f.size() <= e.size() * e.size());
  }
}

TEST_CASE("involute_expr") {
  Fixture fx = abc_fixture();
  ExpExpr abk = ExpExpr::power(ExpExpr::literal(fx.w("a b")), 5);
  CHECK(eval(involute_expr(*fx.alph, abk)) ==
        eval(ExpExpr::power(ExpExpr::literal(fx.w("b' a'")), 5)));
  std::mt19937 rng(14);
  for (int i = 0; i < 200; ++i) {
    ExpExpr e = random_expr(fx, rng, 4);
    if (e.eval_length() > 2000) continue;
    CHECK(eval(involute_expr(*fx.alph, e)) == involute(*fx.alph, eval(e)));
    CHECK(eval(involute_expr(*fx.alph, involute_expr(*fx.alph, e))) == eval(e));
  }
}

TEST_CASE("hom_of_expr matches hom_image of the evaluation") {
  Fixture fx = abc_fixture();
  std::mt19937 rng(15);
  Nfa a = random_nfa(fx.gamma, rng, 2);
  auto compiled = hom_from_automata(*fx.alph, fx.gamma, {a});

  CHECK(hom_of_expr(compiled.hom, ExpExpr::power(ExpExpr::literal(fx.w("a")), 0), compiled.n) ==
        MonElem::identity(compiled.n));

  for (int i = 0; i < 200; ++i) {
    ExpExpr e = random_expr(fx, rng, 4);
    if (e.eval_length() > 500) continue;
    CHECK(hom_of_expr(compiled.hom, e, compiled.n) == hom_image(compiled.hom, eval(e)));
  }

  std::uint64_t c = idempotent_exponent(compiled.n);
  ExpExpr base = ExpExpr::literal(fx.w("a b c'"));
  CHECK(hom_of_expr(compiled.hom, ExpExpr::power(base, c), compiled.n) ==
        hom_of_expr(compiled.hom, ExpExpr::power(base, 2 * c), compiled.n));
}

TEST_CASE("substitution expands letters in place") {
  Fixture fx = abc_fixture();
  std::map<Letter, ExpExpr> map;
  map.emplace(fx.l("a"), ExpExpr::power(ExpExpr::literal(fx.w("b c")), 4));
  ExpExpr e = ExpExpr::literal(fx.w("a b a"));
  ExpExpr s = subst_letters(e, map);
  CHECK(eval(s) == fx.w("b c b c b c b c b b c b c b c b c"));
}

TEST_SUITE_END();
