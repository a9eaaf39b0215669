#include <doctest.h>

#include "wordeq/pstable.hpp"

#include "helpers.hpp"

using namespace weqtest;

TEST_SUITE_BEGIN("pstable");

namespace {

Word pow_word(const Word& p, int k) {
  Word out;
  for (int i = 0; i < k; ++i) out.append(p);
  return out;
}

}  // namespace

TEST_CASE("primitivity") {
  Fixture fx = abc_fixture();
  CHECK(is_primitive(fx.w("a")));
  CHECK(is_primitive(fx.w("a b")));
  CHECK(is_primitive(fx.w("a a b")));
  CHECK_FALSE(is_primitive(fx.w("a a")));
  CHECK_FALSE(is_primitive(fx.w("a b a b")));
  CHECK_FALSE(is_primitive(fx.w("")));
}

TEST_CASE("first kind worked example: p = a a' b a a'") {
  Fixture fx = abc_fixture();
  Word p = fx.w("a a' b a a'");
  Word pbar = involute(*fx.alph, p);
  CHECK(pbar == fx.w("a a' b' a a'"));

  // w = p^4 b'aa' p^-1 aa'b' p^-2
  Word w = pow_word(p, 4);
  w.append(fx.w("b' a a'"));
  w.append(pbar);
  w.append(fx.w("a a' b'"));
  w.append(pow_word(pbar, 2));
  REQUIRE(w.size() == 41);

  PStableNF nf = p_stable_normal_form(*fx.alph, w, p);
  CHECK(nf.kind == PStableNF::Kind::first);
  CHECK(reconstruct(*fx.alph, nf) == w);

  // The exponent sequence 2, -1, 0 and the bridging pieces match the
  // published normal form.  The published u_0 "a' a a' b" cannot end with
  // p (it is shorter than p) and makes the reconstruction one letter
  // short, so the leading piece is p itself.
  REQUIRE(nf.exps.size() == 3);
  CHECK(nf.exps[0] == 2);
  CHECK(nf.exps[1] == -1);
  CHECK(nf.exps[2] == 0);
  REQUIRE(nf.pieces.size() == 4);
  CHECK(nf.pieces[0] == fx.w("a a' b a a'"));
  CHECK(nf.pieces[1] == fx.w("a a' b a a' b' a a'"));
  CHECK(nf.pieces[2] == fx.w("a a' b' a a' b' a a'"));
  CHECK(nf.pieces[3] == fx.w("a a' b' a a'"));
}

TEST_CASE("second kind worked example: p = a a' e with e = e'") {
  auto alph = std::make_shared<InvAlphabet>();
  Letter a = alph->add_pair("a", LetterKind::constant);
  Letter b = alph->add_involutive_constant("b");
  Fixture fx;
  fx.alph = alph;
  fx.gamma = {a, alph->bar(a), b};

  Word p = fx.w("a a' b");
  PStableNF probe = p_stable_normal_form(*alph, p, p);
  CHECK(probe.kind == PStableNF::Kind::second);
  CHECK(probe.r == fx.w("a a'"));
  CHECK(probe.s == fx.w("b"));

  // w = a' p^4 a p^3 a
  Word w = fx.w("a'");
  w.append(pow_word(p, 4));
  w.append(fx.w("a"));
  w.append(pow_word(p, 3));
  w.append(fx.w("a"));
  REQUIRE(w.size() == 24);

  PStableNF nf = p_stable_normal_form(*alph, w, p);
  CHECK(nf.kind == PStableNF::Kind::second);
  CHECK(reconstruct(*alph, nf) == w);

  // Published sequence (a'baa'b, 2, baa'baaa'b, 0, baa'ba) does not
  // reconstruct w (28 letters instead of 24); the definitional normal
  // form keeps the published u_1, u_2 but has u_0 = a'aa'b and first
  // exponent 1.
  REQUIRE(nf.exps.size() == 2);
  CHECK(nf.exps[0] == 1);
  CHECK(nf.exps[1] == 0);
  REQUIRE(nf.pieces.size() == 3);
  CHECK(nf.pieces[0] == fx.w("a' a a' b"));
  CHECK(nf.pieces[1] == fx.w("b a a' b a a a' b"));
  CHECK(nf.pieces[2] == fx.w("b a a' b a"));
}

TEST_CASE("kind dispatch and the r s decomposition") {
  Fixture fx = abc_fixture();
  // p'bar not a factor of p^2: first kind
  CHECK(p_stable_normal_form(*fx.alph, fx.w("a"), fx.w("a")).kind == PStableNF::Kind::first);
  // p = p'bar via a self-involutive letter: second kind with r = 1
  auto alph = std::make_shared<InvAlphabet>();
  Letter e = alph->add_involutive_constant("e");
  Word pe{{e}};
  PStableNF nf = p_stable_normal_form(*alph, concat(pe, pe), pe);
  CHECK(nf.kind == PStableNF::Kind::second);
  CHECK(reconstruct(*alph, nf) == concat(pe, pe));
}

TEST_CASE("non-primitive periods are rejected") {
  Fixture fx = abc_fixture();
  CHECK_THROWS_AS(p_stable_normal_form(*fx.alph, fx.w("a a a"), fx.w("a a")),
                  std::invalid_argument);
  CHECK_THROWS_AS(p_stable_normal_form(*fx.alph, fx.w("a"), fx.w("")), std::invalid_argument);
}

TEST_CASE("roundtrip reconstruction on randomized pairs") {
  Fixture fx = abc_fixture();
  std::mt19937 rng(51);
  std::uniform_int_distribution<int> plen(1, 4);
  std::uniform_int_distribution<int> blocks(0, 5);
  std::uniform_int_distribution<int> exp(0, 6);
  std::uniform_int_distribution<int> fill(0, 3);

  int done = 0;
  while (done < 1000) {
    Word p = random_word(fx, rng, plen(rng));
    if (p.empty() || !is_primitive(p)) continue;
    Word pbar = involute(*fx.alph, p);
    // random word assembled from p powers, pbar powers and filler
    Word w;
    int nb = blocks(rng);
    for (int i = 0; i <= nb; ++i) {
      w.append(random_word(fx, rng, fill(rng)));
      const Word& unit = (rng() & 1) ? p : pbar;
      int k = exp(rng);
      for (int t = 0; t < k; ++t) w.append(unit);
    }
    if (w.size() > 60) continue;
    PStableNF nf = p_stable_normal_form(*fx.alph, w, p);
    CHECK(reconstruct(*fx.alph, nf) == w);
    ++done;
  }
}

TEST_CASE("involution rule for the normal form of the involuted word") {
  Fixture fx = abc_fixture();
  std::mt19937 rng(52);
  int done = 0;
  while (done < 150) {
    Word p = random_word(fx, rng, 3);
    if (p.empty() || !is_primitive(p)) continue;
    Word w = random_word(fx, rng, 6);
    for (int t = 0; t < 3; ++t) w.append(p);
    w.append(random_word(fx, rng, 4));
    PStableNF nf = p_stable_normal_form(*fx.alph, w, p);
    PStableNF nfbar = p_stable_normal_form(*fx.alph, involute(*fx.alph, w), p);
    if (nf.kind == PStableNF::Kind::first) {
      // (u_k-bar, -eps_k a_k, ..., -eps_1 a_1, u_0-bar)
      REQUIRE(nfbar.pieces.size() == nf.pieces.size());
      for (std::size_t i = 0; i < nf.pieces.size(); ++i) {
        CHECK(nfbar.pieces[i] ==
              involute(*fx.alph, nf.pieces[nf.pieces.size() - 1 - i]));
      }
      for (std::size_t i = 0; i < nf.exps.size(); ++i) {
        CHECK(nfbar.exps[i] == -nf.exps[nf.exps.size() - 1 - i]);
      }
    }
    ++done;
  }
}

TEST_SUITE_END();
