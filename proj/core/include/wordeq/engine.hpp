// engine.hpp -- the three search-graph moves and their verification,
// cut/free-interval analysis of a solution word, the critical-word
// machinery with l-factorizations and l-transformations, and the
// certificate-path construction that walks E_0 -> E_1 -> ... -> E_{m_0}.

#ifndef WORDEQ_ENGINE_HPP_
#define WORDEQ_ENGINE_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wordeq/equation.hpp"

namespace wordeq {

// ---------------------------------------------------------------------------
// Moves

/// beta: maps each letter of the target equation's alphabet to an
/// expression over the source constants; beta(a') = involute(beta(a)).
using BaseChange = std::map<Letter, ExpExpr>;

/// pi: maps letters of the enlarged alphabet to words over the smaller
/// one; identity entries for the original letters are implied.
using Projection = std::map<Letter, Word>;

struct PartialImage {
  ExpExpr prefix;   // word part before the kept variable, or the whole image
  bool keeps_var = false;
  ExpExpr suffix;   // only meaningful when keeps_var
};

/// delta: Omega -> Gamma* Omega' Gamma* | Gamma*, with the replacement
/// rho for the kept variables.
struct PartialSolution {
  std::map<Letter, PartialImage> images;
  RhoMap rho_prime;  // constraints installed on the kept variables
};

/// E = beta_*(E'): sides of E' rewritten letterwise through beta.
/// gamma/h describe the source alphabet the images live in.
EquationE apply_base_change(const BaseChange& beta, const EquationE& eprime,
                            const std::vector<Letter>& gamma, const ConstraintHom& h);

/// pi^*(E): alphabet enlarged, h replaced by h∘pi, sides unchanged.
EquationE apply_projection(const Projection& pi, const EquationE& e);

/// True iff a projection pi with pi^*(E) = E' exists: every h'(a) must be
/// generated, with a self-involutive witness when a = a'.
bool projection_exists(const EquationE& e, const EquationE& eprime,
                       std::size_t budget = kDefaultReachBudget);

/// Builds a witness projection when one exists (shortest witnesses).
std::optional<Projection> find_projection(const EquationE& e, const EquationE& eprime,
                                          std::size_t budget = kDefaultReachBudget);

/// delta_*(E): sides rewritten, Omega shrunk to the kept variables,
/// rho replaced by rho_prime.
EquationE apply_partial_solution(const PartialSolution& delta, const EquationE& e);

/// An arc E -> E' of the search graph together with its witness:
/// delta_*(pi^*(E)) == beta_*(E') where == is equality of the evaluated
/// sides, plus the rho bookkeeping.
struct Arc {
  EquationE source;
  EquationE target;
  BaseChange beta;
  Projection pi;
  PartialSolution delta;
  EquationE intermediate;  // beta_*(target) over the enlarged alphabet
  std::string note;        // diagnostic tag for certificates
};

struct ArcCheck {
  bool ok = false;
  std::string diagnostic;
};

ArcCheck verify_arc(const Arc& arc, std::uint64_t cap = kDefaultExpansionCap);

/// Pull a solution of the target back to the source: sigma = pi(beta sigma') delta.
Solution pull_back(const Arc& arc, const Solution& target_sigma,
                   std::uint64_t cap = kDefaultExpansionCap);

// ---------------------------------------------------------------------------
// Cuts and free intervals

struct CutData {
  const EquationE* eq = nullptr;
  Word w0;
  int m0 = 0;
  std::vector<Letter> symbols;  // x_1 .. x_d  (L then R)
  int g = 0;                    // |L|
  int d = 0;                    // |LR|
  std::vector<int> l, r;        // per occurrence, 0-based index i-1
  std::set<int> cuts;
};

/// Computes the solution word, the occurrence positions and the cut set.
/// Requires sigma to solve E and sigma(x_i) != 1 for all i.
CutData compute_cuts(const EquationE& e, const Solution& sigma);

/// Memoizing closure of the ~ relation on intervals of w0.
class IntervalClosure {
 public:
  explicit IntervalClosure(const CutData& cd);

  /// All intervals ~-equivalent to iv (including iv).
  const std::vector<Interval>& cls(Interval iv);

  /// Free: no equivalent copy strictly contains a cut.
  bool is_free(Interval iv);

  /// Implicit cuts of a positive non-free interval.
  std::vector<int> implicit_cuts(Interval iv);

 private:
  std::vector<Interval> neighbors(Interval iv) const;

  const CutData& cd_;
  // occurrence pairs (i, j) with x_i == x_j (same=true) or x_i == bar(x_j)
  struct Pair { int i, j; bool same; };
  std::vector<Pair> pairs_;
  std::map<Interval, std::vector<Interval>> memo_;
  std::map<Interval, std::size_t> class_of_;
  std::vector<std::vector<Interval>> classes_;
};

struct FreeFactorization {
  std::vector<int> alphas;          // 0 = a_0 < ... < a_k = m0
  std::vector<Letter> new_gamma;    // alphabet of E0' (closed under involution)
  Word w0_new;
  EquationE rebased;                // E0' with the restricted alphabet
  Solution sigma_new;
  Arc arc;                          // E0 -> E0'
  int fresh_letters = 0;            // newly allocated pairs (one per pair)
};

/// Factors w0 into maximal free intervals, turns them into letters and
/// rebases the equation so that all maximal free intervals have length one.
FreeFactorization maximal_free_factorization(const EquationE& e, const Solution& sigma);

// ---------------------------------------------------------------------------
// Critical words, blocks, l-factorizations

/// C_l = { w0[c-l, c+l], w0[c+l, c-l] | c cut, l <= c <= m0 - l };
/// closed under involution by construction.
std::set<Word> critical_words(const InvAlphabet& alph, const Word& w0, int ell,
                              const std::set<int>& cuts);

struct Block {
  Word u, w, v;  // |u|, |v| in {0, l}; w nonempty

  friend bool operator==(const Block&, const Block&) = default;
  friend auto operator<=>(const Block&, const Block&) = default;
};

Block involute_block(const InvAlphabet& alph, const Block& b);

struct LFactorization {
  int ell = 1;
  std::vector<Block> blocks;
  std::vector<int> splits;  // positions 0 = s_0 < ... < s_k = |w|
};

/// The unique l-factorization of a nonempty word: split at the centre of
/// every occurrence of a critical word, annotate with the length-l
/// contexts from the word itself.
LFactorization l_factorize(const InvAlphabet& alph, const Word& w, int ell,
                           const std::set<Word>& crit);

struct HeadBodyTail {
  Block head;
  std::vector<Block> body;
  Block tail;
  int head_len = 0;  // |head word|
  int tail_len = 0;
};

HeadBodyTail head_body_tail(const LFactorization& lf);

// ---------------------------------------------------------------------------
// l-transformation and certificates

struct VarLevelInfo {
  int occurrence = -1;       // some i with x_i = X
  int head_len = 0, tail_len = 0;
  int body_lo = 0, body_hi = 0;  // interval of w0 covered by the body
  bool in_omega = false;         // body nonempty
};

struct LevelData {
  int ell = 1;
  std::set<Word> crit;
  LFactorization fact;                    // F_l(w0)
  std::map<Block, Letter> letter_of;      // block letters (involution-closed)
  std::map<Letter, Block> block_of;
  std::map<Letter, Interval> occurrence;  // a representative interval per block letter
  std::vector<Letter> lsyms, rsyms;       // uncompressed L_l / R_l
  std::map<Letter, VarLevelInfo> vars;    // keyed by variable letter
  EquationE eq;                           // E_l, sides compressed
};

/// Size-bounded compression of a symbol sequence: maximal powers are
/// detected earliest-first (largest span, then largest exponent) and
/// factored recursively.  Exceeding the budget throws ResourceError
/// ("inadmissible").
ExpExpr compress_l_factor(const std::vector<Letter>& seq, std::uint64_t budget);

/// The l-transformation E_l of a preprocessed equation with solution.
/// Block letters are allocated in the shared alphabet.
LevelData l_transformation(const EquationE& e0, const Solution& sigma, int ell,
                           std::uint64_t budget);

struct CertPath {
  EquationE root;
  std::vector<Arc> arcs;
  std::vector<std::string> notes;
};

struct CertificateOptions {
  std::uint64_t budget = 0;       // 0: derive from the root equation
  std::uint64_t cap = kDefaultExpansionCap;
  bool verify_each_arc = true;
};

/// Constructs the verified arc sequence E_0 -> E_1 -> ... ending in a
/// variable-free equation, following the doubling schedule
/// l' = min(2 l, m0).  Every arc passes verify_arc; a failed construction
/// step aborts with a diagnostic naming the step.
CertPath build_certificate_path(const EquationE& e0, const Solution& sigma,
                                const CertificateOptions& opt = {});

/// Replays a certificate: re-verifies every arc and the trivial end node.
ArcCheck replay_certificate(const CertPath& path, std::uint64_t cap = kDefaultExpansionCap);

// ---------------------------------------------------------------------------
// Periodicity

/// exp(w): the largest a such that w = u p^a v for some nonempty p.
int exponent_of_periodicity(const Word& w);

}  // namespace wordeq

#endif  // WORDEQ_ENGINE_HPP_
