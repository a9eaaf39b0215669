#include "wordeq/equation.hpp"

#include <algorithm>
#include <cmath>

namespace wordeq {

std::uint64_t EquationE::input_size() const {
  double total = static_cast<double>(gamma.size() + omega.size());
  std::uint64_t logpart = total <= 2 ? 1 : static_cast<std::uint64_t>(std::ceil(std::log2(total)));
  return static_cast<std::uint64_t>(n) + d() + logpart;
}

void EquationE::validate() const {
  auto in = [](const std::vector<Letter>& v, Letter x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  for (Letter a : gamma) {
    if (!alph->is_constant(a)) throw std::invalid_argument("gamma contains a variable");
    if (!in(gamma, alph->bar(a))) throw std::invalid_argument("gamma not closed under involution");
    if (!h.contains(a)) throw std::invalid_argument("constant without h image: " + alph->name(a));
  }
  for (Letter x : omega) {
    if (!alph->is_variable(x)) throw std::invalid_argument("omega contains a constant");
    if (!in(omega, alph->bar(x))) throw std::invalid_argument("omega not closed under involution");
  }
  for (const auto& [a, m] : h.entries()) {
    if (h.contains(alph->bar(a)) && h.at(alph->bar(a)) != m.involuted()) {
      throw std::invalid_argument("h not involution compatible at " + alph->name(a));
    }
  }
  for (const auto& [x, m] : rho) {
    auto it = rho.find(alph->bar(x));
    if (it != rho.end() && it->second != m.involuted()) {
      throw std::invalid_argument("rho not involution compatible at " + alph->name(x));
    }
  }
  for (const ExpExpr* side : {&lhs, &rhs}) {
    for (Letter a : letters_of(*side)) {
      if (alph->is_variable(a) ? !in(omega, a) : !in(gamma, a)) {
        throw std::invalid_argument("side letter not declared: " + alph->name(a));
      }
    }
  }
}

Word apply_solution(const EquationE& e, const ExpExpr& side, const Solution& sigma,
                    std::uint64_t cap) {
  std::map<Letter, ExpExpr> map;
  for (const auto& [x, w] : sigma) map.emplace(x, ExpExpr::literal(w));
  return eval(subst_letters(side, map), cap);
}

bool check_solution(const EquationE& e, const Solution& sigma, std::uint64_t cap) {
  for (Letter x : e.omega) {
    if (!sigma.count(x)) return false;
  }
  for (const auto& [x, w] : sigma) {
    auto it = sigma.find(e.alph->bar(x));
    if (it == sigma.end() || it->second != involute(*e.alph, w)) return false;
    for (Letter a : w.letters) {
      if (!e.alph->is_constant(a)) return false;
    }
  }
  for (const auto& [x, m] : e.rho) {
    auto it = sigma.find(x);
    if (it == sigma.end()) continue;  // unconstrained variables outside omega
    if (hom_image(e.h, it->second) != m) return false;
  }
  for (const AcceptancePair& p : e.residual) {
    auto it = sigma.find(p.var);
    if (it == sigma.end()) return false;
    if (!check_acceptance(p, hom_image(e.h, it->second))) return false;
  }
  return apply_solution(e, e.lhs, sigma, cap) == apply_solution(e, e.rhs, sigma, cap);
}

Solution close_under_involution(const InvAlphabet& alph, const std::vector<Letter>& omega,
                                const Solution& partial) {
  Solution out = partial;
  for (Letter x : omega) {
    if (out.count(x)) continue;
    auto it = out.find(alph.bar(x));
    if (it != out.end()) out.emplace(x, involute(alph, it->second));
  }
  return out;
}

std::uint64_t admissibility_budget(const EquationE& root, std::uint64_t constant) {
  std::uint64_t s = root.input_size();
  std::uint64_t p = 1;
  for (int i = 0; i < 4; ++i) {
    if (s != 0 && p > UINT64_MAX / s) return UINT64_MAX;
    p *= s;
  }
  return p > UINT64_MAX / constant ? UINT64_MAX : constant * p;
}

bool is_admissible(const EquationE& e, const EquationE& root, std::uint64_t budget) {
  if (e.lhs.size() + e.rhs.size() > budget) return false;
  std::size_t fresh = 0;
  for (Letter a : e.gamma) {
    if (std::find(root.gamma.begin(), root.gamma.end(), a) == root.gamma.end()) ++fresh;
  }
  if (fresh > budget) return false;
  for (Letter x : e.omega) {
    if (std::find(root.omega.begin(), root.omega.end(), x) == root.omega.end()) return false;
  }
  return true;
}

}  // namespace wordeq
