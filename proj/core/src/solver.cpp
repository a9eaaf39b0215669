#include "wordeq/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_set>

namespace wordeq {

std::uint64_t SearchConfig::exp_ceiling(std::uint64_t d, int n) const {
  double nn = std::max(2, n);
  double bits = 2.0 * (static_cast<double>(d) + nn * std::ceil(std::log2(nn)));
  if (bits >= 63.0) return UINT64_MAX;
  return 1ull << static_cast<unsigned>(bits);
}

// ---------------------------------------------------------------------------
// Oracle: length assignment + positional unification.

namespace {

// Union-find with a parity bit: parity 1 means "letter is the bar of the
// root's letter".
struct ParityDsu {
  std::vector<int> parent;
  std::vector<std::uint8_t> parity;
  std::vector<std::uint8_t> self_barred;  // root flag: class equals its own bar

  explicit ParityDsu(int n) : parent(n), parity(n, 0), self_barred(n, 0) {
    for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
  }

  std::pair<int, int> find(int x) {
    int p = 0;
    while (parent[static_cast<size_t>(x)] != x) {
      p ^= parity[static_cast<size_t>(x)];
      x = parent[static_cast<size_t>(x)];
    }
    return {x, p};
  }

  void unite(int a, int b, int flip) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) {
      if ((pa ^ pb) != flip) self_barred[static_cast<size_t>(ra)] = 1;
      return;
    }
    parent[static_cast<size_t>(ra)] = rb;
    parity[static_cast<size_t>(ra)] = static_cast<std::uint8_t>(pa ^ pb ^ flip);
    self_barred[static_cast<size_t>(rb)] |= self_barred[static_cast<size_t>(ra)];
  }
};

struct OccurrencePlan {
  std::vector<Letter> syms;   // combined L then R
  int split = 0;              // |L| in symbols
};

}  // namespace

std::optional<Solution> oracle_solve(const EquationE& e, int maxlen, std::uint64_t cap,
                                     std::uint64_t tuple_budget, bool* budget_hit) {
  if (budget_hit) *budget_hit = false;
  const InvAlphabet& alph = *e.alph;
  Word L = eval(e.lhs, cap), R = eval(e.rhs, cap);
  OccurrencePlan plan;
  plan.syms = L.letters;
  plan.syms.insert(plan.syms.end(), R.letters.begin(), R.letters.end());
  plan.split = static_cast<int>(L.size());

  // Representatives occurring in the sides; absent pairs are independent
  // of the solution word and get their witnesses up front.
  std::vector<Letter> side_reps, absent_reps;
  for (Letter x : e.omega) {
    Letter rep = std::min(x, alph.bar(x));
    if (std::find(side_reps.begin(), side_reps.end(), rep) != side_reps.end()) continue;
    if (std::find(absent_reps.begin(), absent_reps.end(), rep) != absent_reps.end()) continue;
    bool occurs = std::find(plan.syms.begin(), plan.syms.end(), x) != plan.syms.end() ||
                  std::find(plan.syms.begin(), plan.syms.end(), alph.bar(x)) != plan.syms.end();
    (occurs ? side_reps : absent_reps).push_back(rep);
  }

  auto rep_of = [&](Letter x) { return std::min(x, alph.bar(x)); };
  auto rep_index = [&](Letter s) {
    auto it = std::find(side_reps.begin(), side_reps.end(), rep_of(s));
    return static_cast<std::size_t>(it - side_reps.begin());
  };

  auto pair_checks_pass = [&](Letter rep, const Word& w) {
    if (e.has_rho(rep) && hom_image(e.h, w) != e.rho.at(rep)) return false;
    Word wbar = involute(alph, w);
    if (e.has_rho(alph.bar(rep)) && hom_image(e.h, wbar) != e.rho.at(alph.bar(rep))) return false;
    for (const AcceptancePair& p : e.residual) {
      if (p.var == rep && !check_acceptance(p, hom_image(e.h, w))) return false;
      if (p.var == alph.bar(rep) && !check_acceptance(p, hom_image(e.h, wbar))) return false;
    }
    return true;
  };

  Solution absent_fill;
  for (Letter rep : absent_reps) {
    bool done = false;
    for (const Word& w : all_words_up_to(e.gamma, maxlen)) {
      if (pair_checks_pass(rep, w)) {
        absent_fill[rep] = w;
        absent_fill[alph.bar(rep)] = involute(alph, w);
        done = true;
        break;
      }
    }
    if (!done) return std::nullopt;
  }

  // length balance: sum over symbols of len(sym) must agree on both sides
  std::vector<long long> coef(side_reps.size(), 0);
  long long const_diff = 0;
  for (std::size_t i = 0; i < plan.syms.size(); ++i) {
    long long sign = static_cast<int>(i) < plan.split ? 1 : -1;
    Letter s = plan.syms[i];
    if (alph.is_constant(s)) {
      const_diff += sign;
    } else {
      coef[rep_index(s)] += sign;
    }
  }

  std::vector<int> lens(side_reps.size(), 0);
  std::optional<Solution> found;

  auto try_lengths = [&]() -> bool {
    auto len_of = [&](Letter s) -> int {
      if (alph.is_constant(s)) return 1;
      return lens[rep_index(s)];
    };
    long long lenL = 0;
    for (int i = 0; i < plan.split; ++i) lenL += len_of(plan.syms[static_cast<size_t>(i)]);
    const int m = static_cast<int>(lenL);

    ParityDsu dsu(std::max(m, 1));
    std::vector<std::optional<Letter>> forced(static_cast<size_t>(std::max(m, 1)));
    bool infeasible = false;
    auto force = [&](int slot, Letter letter, int flip) {
      auto [root, par] = dsu.find(slot);
      Letter want = (par ^ flip) ? alph.bar(letter) : letter;
      if (!forced[static_cast<size_t>(root)]) {
        forced[static_cast<size_t>(root)] = want;
      } else if (*forced[static_cast<size_t>(root)] != want) {
        infeasible = true;
      }
    };

    // first span seen per representative: (start, oriented letter)
    std::map<Letter, std::pair<int, Letter>> first_span;
    int pos = 0;
    for (std::size_t i = 0; i < plan.syms.size() && !infeasible; ++i) {
      if (static_cast<int>(i) == plan.split) pos = 0;
      Letter s = plan.syms[i];
      int len = len_of(s);
      if (alph.is_variable(s)) {
        Letter rep = rep_of(s);
        auto it = first_span.find(rep);
        if (it == first_span.end()) {
          first_span.emplace(rep, std::make_pair(pos, s));
        } else {
          auto [spos, soriented] = it->second;
          int flip = (s != soriented) ? 1 : 0;
          for (int t = 0; t < len; ++t) {
            int mine = pos + t;
            int theirs = flip ? spos + (len - 1 - t) : spos + t;
            dsu.unite(mine, theirs, flip);
          }
        }
      }
      pos += len;
    }
    pos = 0;
    for (std::size_t i = 0; i < plan.syms.size() && !infeasible; ++i) {
      if (static_cast<int>(i) == plan.split) pos = 0;
      Letter s = plan.syms[i];
      if (alph.is_constant(s)) force(pos, s, 0);
      pos += len_of(s);
    }
    if (infeasible) return false;

    std::vector<int> root_of(static_cast<size_t>(std::max(m, 1)));
    std::vector<int> parity_of(static_cast<size_t>(std::max(m, 1)));
    for (int slot = 0; slot < m; ++slot) {
      auto [root, par] = dsu.find(slot);
      root_of[static_cast<size_t>(slot)] = root;
      parity_of[static_cast<size_t>(slot)] = par;
    }

    std::vector<int> free_roots;
    std::vector<int> free_index(static_cast<size_t>(std::max(m, 1)), -1);
    for (int slot = 0; slot < m; ++slot) {
      int root = root_of[static_cast<size_t>(slot)];
      if (forced[static_cast<size_t>(root)]) {
        if (dsu.self_barred[static_cast<size_t>(root)] &&
            alph.bar(*forced[static_cast<size_t>(root)]) != *forced[static_cast<size_t>(root)]) {
          return false;
        }
        continue;
      }
      if (free_index[static_cast<size_t>(root)] < 0) {
        free_index[static_cast<size_t>(root)] = static_cast<int>(free_roots.size());
        free_roots.push_back(root);
      }
    }

    // per-class letter candidates
    std::vector<std::vector<Letter>> choices;
    for (int root : free_roots) {
      std::vector<Letter> cand;
      for (Letter a : e.gamma) {
        if (dsu.self_barred[static_cast<size_t>(root)] && alph.bar(a) != a) continue;
        cand.push_back(a);
      }
      if (cand.empty()) return false;
      choices.push_back(std::move(cand));
    }

    // a variable becomes checkable once the last free class in its span is
    // assigned; constrained variables then prune the class search early
    bool has_constraints = !e.rho.empty() || !e.residual.empty();
    std::map<Letter, int> ready_at;  // rep -> max free-class index in span (-1: none)
    if (has_constraints) {
      for (const auto& [rep, span] : first_span) {
        int len = len_of(rep);
        int last = -1;
        for (int t = 0; t < len; ++t) {
          int root = root_of[static_cast<size_t>(span.first + t)];
          if (free_index[static_cast<size_t>(root)] >= 0) {
            last = std::max(last, free_index[static_cast<size_t>(root)]);
          }
        }
        ready_at[rep] = last;
      }
    }

    std::vector<Letter> assigned(free_roots.size(), kNoLetter);
    auto letter_at_slot = [&](int slot) {
      int root = root_of[static_cast<size_t>(slot)];
      Letter base = forced[static_cast<size_t>(root)]
                        ? *forced[static_cast<size_t>(root)]
                        : assigned[static_cast<size_t>(free_index[static_cast<size_t>(root)])];
      return parity_of[static_cast<size_t>(slot)] ? alph.bar(base) : base;
    };
    auto word_of_rep = [&](Letter rep) {
      auto [spos, oriented] = first_span.at(rep);
      Word w;
      int len = len_of(rep);
      w.letters.reserve(static_cast<size_t>(len));
      for (int t = 0; t < len; ++t) w.push_back(letter_at_slot(spos + t));
      if (oriented != rep) w = involute(alph, w);
      return w;
    };

    auto vars_ok_at = [&](int k) {
      if (!has_constraints) return true;
      for (const auto& [rep, last] : ready_at) {
        if (last != k) continue;
        if (!pair_checks_pass(rep, word_of_rep(rep))) return false;
      }
      return true;
    };

    std::function<bool(std::size_t)> assign = [&](std::size_t k) -> bool {
      if (k == free_roots.size()) {
        Solution sigma = absent_fill;
        for (const auto& [rep, span] : first_span) {
          sigma[rep] = word_of_rep(rep);
          sigma[alph.bar(rep)] = involute(alph, sigma[rep]);
        }
        if (check_solution(e, sigma, cap)) {
          found = sigma;
          return true;
        }
        return false;
      }
      for (Letter cand : choices[k]) {
        assigned[k] = cand;
        if (!vars_ok_at(static_cast<int>(k))) continue;
        if (assign(k + 1)) return true;
      }
      assigned[k] = kNoLetter;
      return false;
    };

    // variables with no free classes are checkable immediately
    if (has_constraints && !vars_ok_at(-1)) return false;
    return assign(0);
  };

  // Length tuples by ascending total length, with suffix-feasibility
  // pruning on the balance equation sum coef_i len_i + const_diff = 0.
  std::vector<long long> suffix_min(side_reps.size() + 1, 0);
  std::vector<long long> suffix_max(side_reps.size() + 1, 0);
  for (std::size_t i = side_reps.size(); i-- > 0;) {
    long long lo = std::min<long long>(0, coef[i] * maxlen);
    long long hi = std::max<long long>(0, coef[i] * maxlen);
    suffix_min[i] = suffix_min[i + 1] + lo;
    suffix_max[i] = suffix_max[i + 1] + hi;
  }

  std::uint64_t tuples_left = tuple_budget;
  bool out_of_budget = false;
  std::function<bool(std::size_t, long long, int)> enumerate =
      [&](std::size_t i, long long partial, int sum_left) -> bool {
    if (out_of_budget) return false;
    if (partial + suffix_min[i] > 0 || partial + suffix_max[i] < 0) return false;
    if (sum_left > static_cast<int>(side_reps.size() - i) * maxlen) return false;
    if (i == side_reps.size()) {
      if (partial != 0 || sum_left != 0) return false;
      if (tuples_left == 0) {
        out_of_budget = true;
        return false;
      }
      --tuples_left;
      return try_lengths();
    }
    for (int len = 0; len <= std::min(maxlen, sum_left); ++len) {
      lens[i] = len;
      if (enumerate(i + 1, partial + coef[i] * len, sum_left - len)) return true;
      if (out_of_budget) return false;
    }
    lens[i] = 0;
    return false;
  };

  for (int total = 0; total <= maxlen * static_cast<int>(side_reps.size()); ++total) {
    if (enumerate(0, const_diff, total)) return found;
    if (out_of_budget) {
      if (budget_hit) *budget_hit = true;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Search over the move graph.

namespace {

std::string node_key(const EquationE& e, std::uint64_t cap) {
  std::string key;
  auto push_u64 = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) key.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  };
  auto push_word = [&](const Word& w) {
    push_u64(w.size());
    for (Letter a : w.letters) push_u64(static_cast<std::uint64_t>(a));
  };
  push_word(eval(e.lhs, cap));
  key.push_back('|');
  push_word(eval(e.rhs, cap));
  key.push_back('|');
  for (Letter a : e.gamma) {
    push_u64(static_cast<std::uint64_t>(a));
    push_u64(e.h.at(a).hash());
  }
  key.push_back('|');
  for (const auto& [x, m] : e.rho) {
    push_u64(static_cast<std::uint64_t>(x));
    push_u64(m.hash());
  }
  key.push_back('|');
  for (const AcceptancePair& p : e.residual) {
    push_u64(static_cast<std::uint64_t>(p.var));
    push_u64(p.I.upper);
    push_u64(p.I.lower);
    push_u64(p.F.upper);
    push_u64(p.F.lower);
    key.push_back(p.polarity == Polarity::positive ? '+' : '-');
  }
  return key;
}

struct SearchState {
  const SearchConfig* cfg;
  const EquationE* root;
  std::uint64_t budget_left;
  std::uint64_t nodes = 0;
  std::unordered_set<std::string> visited;
  std::vector<Arc> path;
  std::optional<Solution> solution;

  // reachable submonoid cache keyed by a hash of (gamma, h); nullopt
  // marks a budget overflow so it is not recomputed
  std::map<std::size_t, std::optional<ReachSet>> reach_cache;
  // letters already minted for fold patterns / projection witnesses
  std::map<Word, Letter> fold_letters;
  std::map<Word, Letter> proj_letters;

  const ReachSet* reach(const EquationE& e) {
    std::size_t key = 0xabcdef;
    for (Letter a : e.gamma) {
      key = key * 1315423911u + static_cast<std::size_t>(a);
      key ^= e.h.at(a).hash();
    }
    auto it = reach_cache.find(key);
    if (it == reach_cache.end()) {
      std::optional<ReachSet> r;
      try {
        r = reachable_submonoid(*e.alph, e.gamma, e.h, cfg->reach_budget);
      } catch (const ResourceError&) {
        r = std::nullopt;
      }
      it = reach_cache.emplace(key, std::move(r)).first;
    }
    return it->second ? &*it->second : nullptr;
  }
};

bool side_prefixes_clash(const EquationE& e, std::uint64_t cap) {
  Word L = eval(e.lhs, cap), R = eval(e.rhs, cap);
  const InvAlphabet& alph = *e.alph;
  std::size_t i = 0;
  while (i < L.size() && i < R.size() && alph.is_constant(L[i]) && alph.is_constant(R[i])) {
    if (L[i] != R[i]) return true;
    ++i;
  }
  std::size_t j = 0;
  while (j < L.size() && j < R.size()) {
    Letter a = L[L.size() - 1 - j], b = R[R.size() - 1 - j];
    if (!alph.is_constant(a) || !alph.is_constant(b)) break;
    if (a != b) return true;
    ++j;
  }
  auto min_len = [&](const Word& w) {
    std::size_t c = 0;
    for (Letter a : w.letters) c += alph.is_constant(a) ? 1 : 0;
    return c;
  };
  bool l_fixed = min_len(L) == L.size();
  bool r_fixed = min_len(R) == R.size();
  if (l_fixed && R.size() > 0 && min_len(R) > L.size()) return true;
  if (r_fixed && L.size() > 0 && min_len(L) > R.size()) return true;
  if (l_fixed && r_fixed && L.size() != R.size()) return true;
  return false;
}

std::vector<Arc> generate_moves(const EquationE& e, SearchState& st) {
  const InvAlphabet& alph = *e.alph;
  const SearchConfig& cfg = *st.cfg;
  std::vector<Arc> moves;

  auto add_delta_move = [&](const PartialSolution& delta, const std::string& note) {
    try {
      Arc arc;
      arc.source = e;
      arc.target = apply_partial_solution(delta, e);
      arc.delta = delta;
      arc.intermediate = arc.target;
      arc.note = note;
      moves.push_back(std::move(arc));
    } catch (const std::invalid_argument&) {
      // inconsistent guess; skip
    }
  };

  // Partial solutions first.
  const ReachSet* reach_ptr = e.rho.empty() ? nullptr : st.reach(e);
  std::vector<Letter> reps;
  for (Letter x : e.omega) {
    if (std::min(x, alph.bar(x)) == x) reps.push_back(x);
  }
  for (Letter x : reps) {
    // eliminate the pair entirely
    {
      PartialSolution d;
      PartialImage im;
      d.images.emplace(x, im);
      d.images.emplace(alph.bar(x), im);
      for (Letter y : e.omega) {
        if (y == x || y == alph.bar(x)) continue;
        if (e.has_rho(y)) d.rho_prime[y] = e.rho.at(y);
      }
      add_delta_move(d, "delta: " + alph.name(x) + " := 1");
    }
    // assign the full shortest witness for a constrained variable
    if (e.has_rho(x) && reach_ptr) {
      const ReachSet& reach = *reach_ptr;
      if (reach.contains(e.rho.at(x)) && !reach.witness(e.rho.at(x)).empty()) {
        Word wit = reach.witness(e.rho.at(x));
        PartialSolution d;
        PartialImage im, bim;
        im.prefix = ExpExpr::literal(wit);
        bim.prefix = ExpExpr::literal(involute(alph, wit));
        d.images.emplace(x, im);
        d.images.emplace(alph.bar(x), bim);
        for (Letter y : e.omega) {
          if (y == x || y == alph.bar(x)) continue;
          if (e.has_rho(y)) d.rho_prime[y] = e.rho.at(y);
        }
        add_delta_move(d, "delta: " + alph.name(x) + " := witness");
      }
    }
    // single-letter prefix guesses, for both orientations
    for (Letter v : {x, alph.bar(x)}) {
      for (Letter a : e.gamma) {
        std::vector<std::optional<MonElem>> rho_options;
        if (e.has_rho(v)) {
          if (!reach_ptr) continue;  // constrained move without a usable reach set
          const MonElem ha = e.h.at(a);
          std::size_t taken = 0;
          for (const MonElem& m : reach_ptr->elements()) {
            if (taken >= cfg.rho_candidates_per_move) break;
            if (ha * m == e.rho.at(v)) {
              rho_options.emplace_back(m);
              ++taken;
            }
          }
        } else {
          rho_options.emplace_back(std::nullopt);
        }
        for (const auto& opt_rho : rho_options) {
          PartialSolution d;
          PartialImage im, bim;
          im.keeps_var = true;
          im.prefix = ExpExpr::literal(word_of(a));
          im.suffix = ExpExpr::literal(Word{});
          bim.keeps_var = true;
          bim.prefix = ExpExpr::literal(Word{});
          bim.suffix = ExpExpr::literal(word_of(alph.bar(a)));
          d.images.emplace(v, im);
          d.images.emplace(alph.bar(v), bim);
          if (opt_rho) {
            d.rho_prime[v] = *opt_rho;
            d.rho_prime[alph.bar(v)] = opt_rho->involuted();
          }
          for (Letter y : e.omega) {
            if (y == v || y == alph.bar(v)) continue;
            if (e.has_rho(y)) d.rho_prime[y] = e.rho.at(y);
          }
          add_delta_move(d, "delta: " + alph.name(v) + " := " + alph.name(a) + " " + alph.name(v));
        }
      }
    }
  }

  // Base-change fold: most frequent constant digram.
  {
    Word L = eval(e.lhs, cfg.expansion_cap), R = eval(e.rhs, cfg.expansion_cap);
    std::map<std::pair<Letter, Letter>, int> digrams;
    for (const Word* side : {&L, &R}) {
      for (std::size_t i = 0; i + 1 < side->size(); ++i) {
        Letter a = (*side)[i], b = (*side)[i + 1];
        if (alph.is_constant(a) && alph.is_constant(b)) ++digrams[{a, b}];
      }
    }
    std::pair<Letter, Letter> best{kNoLetter, kNoLetter};
    int best_count = 1;
    for (const auto& [ab, cnt] : digrams) {
      if (cnt > best_count) {
        best = ab;
        best_count = cnt;
      }
    }
    if (best.first != kNoLetter) {
      InvAlphabet& mutalph = *e.alph;
      Word pattern{{best.first, best.second}};
      Letter d;
      auto cached = st.fold_letters.find(pattern);
      if (cached != st.fold_letters.end()) {
        d = cached->second;
      } else {
        d = mutalph.fresh_pair(LetterKind::constant, "f");
        st.fold_letters.emplace(pattern, d);
      }
      Word barpat = involute(mutalph, pattern);
      auto fold = [&](const Word& w) {
        Word out;
        std::size_t i = 0;
        while (i < w.size()) {
          if (i + 1 < w.size() && w[i] == pattern[0] && w[i + 1] == pattern[1]) {
            out.push_back(d);
            i += 2;
          } else if (i + 1 < w.size() && w[i] == barpat[0] && w[i + 1] == barpat[1]) {
            out.push_back(mutalph.bar(d));
            i += 2;
          } else {
            out.push_back(w[i]);
            ++i;
          }
        }
        return out;
      };
      Arc arc;
      arc.source = e;
      EquationE target = e;
      target.gamma.push_back(d);
      target.gamma.push_back(mutalph.bar(d));
      std::sort(target.gamma.begin(), target.gamma.end());
      target.h.set(d, e.h.at(best.first) * e.h.at(best.second));
      target.h.set(mutalph.bar(d), target.h.at(d).involuted());
      target.lhs = ExpExpr::literal(fold(L));
      target.rhs = ExpExpr::literal(fold(R));
      arc.target = target;
      arc.beta.emplace(d, ExpExpr::literal(pattern));
      arc.beta.emplace(mutalph.bar(d), ExpExpr::literal(barpat));
      arc.intermediate = apply_base_change(arc.beta, target, e.gamma, e.h);
      arc.note = std::string("beta: fold ") + mutalph.name(best.first) + " " +
                 mutalph.name(best.second);
      moves.push_back(std::move(arc));
    }
  }

  // Projection: reintroduce a letter for a constrained matrix that no
  // current letter provides.
  if (cfg.enable_projections) {
    for (const auto& [x, m] : e.rho) {
      bool covered = false;
      for (Letter a : e.gamma) {
        if (e.h.at(a) == m) covered = true;
      }
      if (covered) continue;
      const ReachSet* rp = st.reach(e);
      if (!rp || !rp->contains(m)) continue;
      Word wit = rp->witness(m);
      if (wit.size() < 2) continue;
      InvAlphabet& mutalph = *e.alph;
      Letter c;
      auto cached = st.proj_letters.find(wit);
      if (cached != st.proj_letters.end()) {
        c = cached->second;
        if (std::find(e.gamma.begin(), e.gamma.end(), c) != e.gamma.end()) continue;
      } else {
        c = mutalph.fresh_pair(LetterKind::constant, "p");
        st.proj_letters.emplace(wit, c);
      }
      Arc arc;
      arc.source = e;
      arc.pi.emplace(c, wit);
      arc.pi.emplace(mutalph.bar(c), involute(mutalph, wit));
      arc.target = apply_projection(arc.pi, e);
      arc.intermediate = arc.target;
      arc.note = "pi: introduce " + mutalph.name(c);
      moves.push_back(std::move(arc));
      break;  // one projection candidate per node
    }
  }
  return moves;
}

bool dfs(const EquationE& e, int depth_left, SearchState& st) {
  if (st.nodes >= st.cfg->node_budget) return false;
  ++st.nodes;

  if (e.omega.empty()) {
    if (eq_eval(e.lhs, e.rhs, st.cfg->expansion_cap)) {
      st.solution = Solution{};
      return true;
    }
    return false;
  }
  if (side_prefixes_clash(e, st.cfg->expansion_cap)) return false;
  if (depth_left <= 0) return false;

  if (st.cfg->dedup) {
    std::string key = node_key(e, st.cfg->expansion_cap);
    if (!st.visited.insert(key).second) return false;
  }

  for (Arc& arc : generate_moves(e, st)) {
    st.path.push_back(arc);
    std::size_t my_index = st.path.size() - 1;
    if (dfs(arc.target, depth_left - 1, st)) {
      st.solution = pull_back(st.path[my_index], *st.solution, st.cfg->expansion_cap);
      return true;
    }
    st.path.pop_back();
  }
  return false;
}

}  // namespace

SearchResult search_solve(const EquationE& e, const SearchConfig& cfg) {
  SearchResult res;
  for (int depth = 1; depth <= cfg.max_depth; ++depth) {
    SearchState st;
    st.cfg = &cfg;
    st.root = &e;
    st.budget_left = cfg.node_budget;
    if (dfs(e, depth, st)) {
      res.status = SolveStatus::solved;
      res.sigma = st.solution;
      CertPath path;
      path.root = e;
      path.arcs = st.path;
      for (const Arc& a : st.path) path.notes.push_back(a.note);
      res.certificate = std::move(path);
      res.nodes_visited += st.nodes;
      if (!check_solution(e, *res.sigma, cfg.expansion_cap)) {
        throw std::logic_error("search_solve: pulled-back solution fails verification");
      }
      return res;
    }
    res.nodes_visited += st.nodes;
    if (st.nodes >= cfg.node_budget) {
      res.status = SolveStatus::unknown_budget;
      return res;
    }
  }
  res.status = SolveStatus::unknown_exhausted;
  return res;
}

std::uint64_t cover_bound(const EquationE& e, std::size_t reach_budget) {
  if (e.omega.empty()) return 0;
  // (2 |reach|)^(2^input_size), saturating: astronomically large except
  // for trivial instances.
  std::uint64_t s = e.input_size();
  if (s >= 6) return UINT64_MAX;
  std::uint64_t reach_size;
  try {
    reach_size = reachable_submonoid(*e.alph, e.gamma, e.h, reach_budget).size();
  } catch (const ResourceError&) {
    return UINT64_MAX;
  }
  long double bound = 1.0;
  long double base = 2.0L * static_cast<long double>(reach_size);
  for (std::uint64_t i = 0; i < (1ull << s); ++i) {
    bound *= base;
    if (bound > 1e18L) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(bound);
}

GroupVerdict solve_group_formula(const GroupTask& task, const SearchConfig& cfg) {
  GroupVerdict verdict;
  GroupTask work = task;
  work.root = normalize(work.root);
  eliminate_group_inequalities(work);
  work.root = normalize(work.root);  // inequality rewriting introduces fresh conjunctions

  DisjunctChoices branches(work.root);
  int branch_no = 0;
  bool any_budget_trip = false;
  bool all_definitive = true;

  while (auto atoms = branches.next()) {
    if (++branch_no > cfg.branch_budget) {
      any_budget_trip = true;
      break;
    }
    std::string trace = "branch " + std::to_string(branch_no);
    try {
      TriangularBranch tri = triangulate(work, *atoms);
      MonoidSystem sys = transfer_to_monoid(work, tri);
      auto compiled = combine_to_single_equation(work, sys, cfg.pretest_reach_budget);
      if (!compiled) {
        verdict.branch_trace.push_back(trace + ": pretest unsat");
        continue;
      }

      // Oracle on the residual-mode equation.
      bool oracle_budget_hit = false;
      auto sigma = oracle_solve(compiled->equation, cfg.oracle_maxlen, cfg.expansion_cap,
                                cfg.oracle_tuple_budget, &oracle_budget_hit);
      if (oracle_budget_hit) {
        any_budget_trip = true;
        all_definitive = false;
      }
      std::string mode = "oracle";
      if (!sigma) {
        // rho-guessing search
        RhoAssignments rhos(*compiled);
        int guesses = 0;
        while (auto rho = rhos.next()) {
          if (++guesses > cfg.rho_assignments) {
            any_budget_trip = true;
            break;
          }
          EquationE guessed = compiled->equation;
          guessed.rho = *rho;
          guessed.residual.clear();
          SearchResult sr = search_solve(guessed, cfg);
          if (sr.status == SolveStatus::solved) {
            // the guessed instance is more constrained; re-check residually
            if (check_solution(compiled->equation, *sr.sigma, cfg.expansion_cap)) {
              sigma = sr.sigma;
              mode = "rho-search";
              break;
            }
          } else if (sr.status == SolveStatus::unknown_budget) {
            any_budget_trip = true;
          }
        }
      }
      if (!sigma) {
        if (cover_bound(compiled->equation, cfg.reach_budget) >
            static_cast<std::uint64_t>(cfg.oracle_maxlen)) {
          all_definitive = false;
        }
        verdict.branch_trace.push_back(trace + ": no solution within budget");
        continue;
      }

      // End-to-end re-verification against the original formula.
      for (const auto& [x, w] : compiled->cancelled) {
        if (!sigma->count(x)) (*sigma)[x] = w;
      }
      Solution group_assignment;
      for (Letter x : task.vars) {
        auto it = sigma->find(x);
        group_assignment[x] =
            it != sigma->end() ? free_reduce(*task.alph, it->second) : Word{};
      }
      GroupFormula original = normalize(task.root);
      if (!eval_group_formula(task, original, group_assignment)) {
        verdict.branch_trace.push_back(trace + ": witness failed re-verification");
        continue;
      }

      verdict.is_true = true;
      verdict.mode = mode;
      verdict.assignment = group_assignment;
      verdict.branch_trace.push_back(trace + ": satisfiable (" + mode + ")");
      try {
        verdict.certificate =
            build_certificate_path(compiled->equation, *sigma,
                                   {admissibility_budget(compiled->equation,
                                                         cfg.admissibility_constant),
                                    cfg.expansion_cap, true});
      } catch (const std::exception& ex) {
        verdict.branch_trace.push_back(std::string("certificate construction skipped: ") +
                                       ex.what());
      }
      return verdict;
    } catch (const ResourceError& ex) {
      any_budget_trip = true;
      all_definitive = false;
      verdict.branch_trace.push_back(trace + std::string(": resource: ") + ex.what());
    }
  }
  verdict.is_true = false;
  verdict.definitive = !any_budget_trip && all_definitive;
  return verdict;
}

}  // namespace wordeq
