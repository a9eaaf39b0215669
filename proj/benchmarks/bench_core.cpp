#include <benchmark/benchmark.h>

#include <random>

#include "wordeq/engine.hpp"
#include "wordeq/solver.hpp"

namespace {

using namespace wordeq;

std::shared_ptr<InvAlphabet> bench_alphabet(std::vector<Letter>& gamma) {
  auto alph = std::make_shared<InvAlphabet>();
  for (const char* n : {"a", "b"}) {
    Letter x = alph->add_pair(n, LetterKind::constant);
    gamma.push_back(x);
    gamma.push_back(alph->bar(x));
  }
  return alph;
}

Word random_word(const std::vector<Letter>& gamma, std::mt19937& rng, int len) {
  std::uniform_int_distribution<std::size_t> pick(0, gamma.size() - 1);
  Word w;
  for (int i = 0; i < len; ++i) w.push_back(gamma[pick(rng)]);
  return w;
}

void BM_monelem_mul(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> bit(0, 1);
  BoolMat A(n), B(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      A.set(i, j, bit(rng));
      B.set(i, j, bit(rng));
    }
  MonElem m(A, B), acc = MonElem::identity(n);
  for (auto _ : state) {
    acc = acc * m;
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_monelem_mul)->Arg(4)->Arg(16)->Arg(64);

void BM_free_reduce(benchmark::State& state) {
  std::vector<Letter> gamma;
  auto alph = bench_alphabet(gamma);
  std::mt19937 rng(11);
  Word w = random_word(gamma, rng, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(free_reduce(*alph, w));
  }
}
BENCHMARK(BM_free_reduce)->Arg(64)->Arg(1024)->Arg(16384);

void BM_benois_saturate(benchmark::State& state) {
  std::vector<Letter> gamma;
  auto alph = bench_alphabet(gamma);
  std::mt19937 rng(13);
  std::uniform_int_distribution<std::size_t> pick(0, gamma.size() - 1);
  const int n = static_cast<int>(state.range(0));
  Nfa a(n, gamma);
  a.set_initial(0);
  a.set_final(n - 1);
  std::uniform_int_distribution<int> q(0, n - 1);
  for (int i = 0; i < 3 * n; ++i) a.add_transition(q(rng), gamma[pick(rng)], q(rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(benois_saturate(*alph, a));
  }
}
BENCHMARK(BM_benois_saturate)->Arg(4)->Arg(8)->Arg(12);

void BM_l_factorize(benchmark::State& state) {
  std::vector<Letter> gamma;
  auto alph = bench_alphabet(gamma);
  const int k = static_cast<int>(state.range(0));
  Word w0;
  for (int i = 0; i < k; ++i) {
    w0.push_back(gamma[0]);
    w0.push_back(gamma[2]);
  }
  std::set<int> cuts{0, 1, 2, 2 * k - 1, 2 * k};
  auto crit = critical_words(*alph, w0, 2, cuts);
  for (auto _ : state) {
    benchmark::DoNotOptimize(l_factorize(*alph, w0, 2, crit));
  }
}
BENCHMARK(BM_l_factorize)->Arg(64)->Arg(512)->Arg(4096);

void BM_exponent_of_periodicity(benchmark::State& state) {
  std::vector<Letter> gamma;
  auto alph = bench_alphabet(gamma);
  std::mt19937 rng(17);
  Word w = random_word(gamma, rng, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(exponent_of_periodicity(w));
  }
}
BENCHMARK(BM_exponent_of_periodicity)->Arg(32)->Arg(128)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
