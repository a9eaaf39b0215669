// solver.hpp -- brute-force oracle, backtracking search over the move
// graph, and the end-to-end group pipeline.

#ifndef WORDEQ_SOLVER_HPP_
#define WORDEQ_SOLVER_HPP_

#include <optional>
#include <string>
#include <vector>

#include "wordeq/engine.hpp"
#include "wordeq/frontend.hpp"

namespace wordeq {

struct SearchConfig {
  int oracle_maxlen = 4;                 // max sigma length per variable
  std::uint64_t expansion_cap = kDefaultExpansionCap;
  std::size_t reach_budget = 200000;     // submonoid budget inside the search
  std::size_t pretest_reach_budget = 20000;  // Lemma-4 pretest / rho candidates
  std::uint64_t oracle_tuple_budget = 200000;  // length tuples per oracle call
  std::uint64_t admissibility_constant = 64;
  std::size_t node_budget = 50000;       // search nodes per call
  int max_depth = 24;                    // iterative deepening limit
  int rho_assignments = 128;             // rho guesses per branch
  int branch_budget = 256;               // disjunct branches per formula
  std::size_t rho_candidates_per_move = 4;
  bool dedup = true;                     // visited-node deduplication
  bool enable_projections = true;
  /// Ceiling on the exponent of periodicity used as a sanity default,
  /// rendered from 2^(2 (d + n log2 n)) with saturation.
  std::uint64_t exp_ceiling(std::uint64_t d, int n) const;
};

enum class SolveStatus : std::uint8_t { solved, unknown_budget, unknown_exhausted };

struct SearchResult {
  SolveStatus status = SolveStatus::unknown_exhausted;
  std::optional<Solution> sigma;
  std::optional<CertPath> certificate;
  std::uint64_t nodes_visited = 0;
};

/// Exhaustive enumeration of sigma with |sigma(X)| <= maxlen per
/// representative (bar partners forced), by ascending total length.
/// Internally prunes through length arithmetic and positional
/// unification; every candidate is accepted solely by check_solution.
/// Complete within the bound unless a tuple budget is supplied and hit,
/// which is reported through budget_hit.
std::optional<Solution> oracle_solve(const EquationE& e, int maxlen,
                                     std::uint64_t cap = kDefaultExpansionCap,
                                     std::uint64_t tuple_budget = UINT64_MAX,
                                     bool* budget_hit = nullptr);

/// Iterative-deepening backtracking over the move graph: partial-solution
/// guesses first, then base-change folds, then projections.  A positive
/// answer carries the pulled-back solution and the verified arc path.
SearchResult search_solve(const EquationE& e, const SearchConfig& cfg);

/// The doubly exponential search-space ceiling; saturates to UINT64_MAX
/// except on trivial instances, in which case a definitive "false" is
/// possible.
std::uint64_t cover_bound(const EquationE& e, std::size_t reach_budget);

struct GroupVerdict {
  bool is_true = false;
  bool definitive = false;     // false verdicts: search space provably covered
  Solution assignment;         // words over the group alphabet
  std::optional<CertPath> certificate;
  std::string mode;            // "oracle" or "rho-search"
  std::vector<std::string> branch_trace;
};

/// Runs the whole pipeline on a closed formula: normalization, inequality
/// elimination, branch enumeration, triangulation, constraint transfer,
/// combination, and per-branch solving (oracle first, then rho-guessing
/// search).  Positive verdicts re-verify end to end.
GroupVerdict solve_group_formula(const GroupTask& task, const SearchConfig& cfg);

}  // namespace wordeq

#endif  // WORDEQ_SOLVER_HPP_
