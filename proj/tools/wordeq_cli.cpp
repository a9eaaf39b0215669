// wordeq -- command line front end.
//
// Subcommands:
//   solve-group <formula-file>       decide a closed formula over a free group
//   solve-equation <equation-file>   decide a monoid equation system
//   oracle <equation-file>           brute-force search up to --maxlen
//   verify <certificate-file>        replay a certificate
//   factorize <word> --ell k         inspect the critical-word machinery
//
// Exit codes: 0 = true/verified, 1 = false or unknown (details on stdout),
// 2 = resource limit hit.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "wordeq/io.hpp"
#include "wordeq/solver.hpp"

namespace {

using namespace wordeq;

int run_solve_group(const std::string& file, const SearchConfig& cfg) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file);
  GroupTask task = parse_formula_file(in);
  GroupVerdict v = solve_group_formula(task, cfg);
  for (const std::string& t : v.branch_trace) std::cout << "# " << t << '\n';
  if (v.is_true) {
    std::cout << "true (" << v.mode << ")\n";
    for (const auto& [x, w] : v.assignment) {
      if (task.alph->bar(x) < x) continue;
      std::cout << task.alph->name(x) << " = " << render_word(*task.alph, w) << '\n';
    }
    return 0;
  }
  std::cout << (v.definitive ? "false\n" : "false-within-budget\n");
  return 1;
}

std::optional<CompiledSystem> compile_equation_file(const std::string& file, GroupTask& task,
                                                    const SearchConfig& cfg) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file);
  EquationFile ef = parse_equation_file(in);
  task = ef.task;
  std::vector<MonoidSystem> branches = eliminate_monoid_inequalities(task, ef.system);
  for (const MonoidSystem& sys : branches) {
    auto cs = combine_to_single_equation(task, sys, cfg.pretest_reach_budget);
    if (cs) return cs;
  }
  return std::nullopt;
}

int run_solve_equation(const std::string& file, const SearchConfig& cfg, bool oracle_only,
                       const std::string& cert_out) {
  GroupTask task;
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file);
  EquationFile ef = parse_equation_file(in);
  task = ef.task;

  for (const MonoidSystem& sys : eliminate_monoid_inequalities(task, ef.system)) {
    auto cs = combine_to_single_equation(task, sys, cfg.pretest_reach_budget);
    if (!cs) continue;
    std::optional<Solution> sigma;
    std::string mode;
    if (oracle_only) {
      sigma = oracle_solve(cs->equation, cfg.oracle_maxlen, cfg.expansion_cap);
      mode = "oracle";
    } else {
      sigma = oracle_solve(cs->equation, cfg.oracle_maxlen, cfg.expansion_cap,
                           cfg.oracle_tuple_budget);
      mode = "oracle";
      if (!sigma) {
        RhoAssignments rhos(*cs);
        int guesses = 0;
        while (auto rho = rhos.next()) {
          if (++guesses > cfg.rho_assignments) break;
          EquationE guessed = cs->equation;
          guessed.rho = *rho;
          guessed.residual.clear();
          SearchResult sr = search_solve(guessed, cfg);
          if (sr.status == SolveStatus::solved &&
              check_solution(cs->equation, *sr.sigma, cfg.expansion_cap)) {
            sigma = sr.sigma;
            mode = "rho-search";
            break;
          }
        }
      }
    }
    if (!sigma) continue;
    for (const auto& [x, w] : cs->cancelled) {
      if (!sigma->count(x)) (*sigma)[x] = w;
    }
    std::cout << "true (" << mode << ")\n";
    for (const auto& [x, w] : *sigma) {
      if (task.alph->bar(x) < x) continue;
      std::cout << task.alph->name(x) << " = " << render_word(*task.alph, w) << '\n';
    }
    if (!cert_out.empty()) {
      CertPath path = build_certificate_path(cs->equation, *sigma);
      std::ofstream co(cert_out);
      write_certificate(co, path);
      std::cout << "# certificate written to " << cert_out << '\n';
    }
    return 0;
  }
  std::cout << "false-within-budget\n";
  return 1;
}

int run_verify(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file);
  CertPath path = read_certificate(in);
  ArcCheck chk = replay_certificate(path);
  if (chk.ok) {
    std::cout << "certificate verified: " << path.arcs.size() << " arcs\n";
    return 0;
  }
  std::cout << "certificate rejected: " << chk.diagnostic << '\n';
  return 1;
}

int run_factorize(const std::string& word_text, int ell, const std::string& cuts_text,
                  const std::string& alphabet_text) {
  auto alph = std::make_shared<InvAlphabet>();
  std::vector<Letter> gamma;
  {
    std::istringstream ls(alphabet_text);
    std::string name;
    while (ls >> name) {
      Letter a = alph->add_pair(name, LetterKind::constant);
      gamma.push_back(a);
      gamma.push_back(alph->bar(a));
    }
  }
  Word w = parse_word(*alph, word_text);
  std::set<int> cuts;
  if (cuts_text.empty()) {
    for (int i = 0; i <= static_cast<int>(w.size()); ++i) cuts.insert(i);
  } else {
    std::istringstream cs(cuts_text);
    std::string tok;
    while (std::getline(cs, tok, ',')) cuts.insert(std::stoi(tok));
  }
  std::set<Word> crit = critical_words(*alph, w, ell, cuts);
  std::cout << "critical words (" << crit.size() << "):\n";
  for (const Word& c : crit) std::cout << "  " << render_word(*alph, c) << '\n';
  LFactorization lf = l_factorize(*alph, w, ell, crit);
  std::cout << ell << "-factorization (" << lf.blocks.size() << " blocks):\n";
  for (const Block& b : lf.blocks) {
    std::cout << "  (" << render_word(*alph, b.u) << " | " << render_word(*alph, b.w) << " | "
              << render_word(*alph, b.v) << ")\n";
  }
  HeadBodyTail hbt = head_body_tail(lf);
  std::cout << "head " << render_word(*alph, hbt.head.w) << ", body length "
            << hbt.body.size() << " blocks, tail " << render_word(*alph, hbt.tail.w) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"word equations with regular constraints in free monoids (and groups) with involution"};
  app.require_subcommand(1);

  wordeq::SearchConfig cfg;
  app.add_option("--maxlen", cfg.oracle_maxlen, "oracle bound per variable");
  app.add_option("--expansion-cap", cfg.expansion_cap, "expression expansion cap");
  app.add_option("--reach-budget", cfg.reach_budget, "reachable submonoid budget");
  app.add_option("--node-budget", cfg.node_budget, "search node budget");
  app.add_option("--max-depth", cfg.max_depth, "iterative deepening depth");
  app.add_option("--rho-assignments", cfg.rho_assignments, "rho guesses per branch");
  app.add_option("--branch-budget", cfg.branch_budget, "disjunct branches per formula");
  app.add_option("--admissibility-constant", cfg.admissibility_constant,
                 "constant of the admissibility polynomial");

  std::string file, cert_out, word_text, cuts_text, alphabet_text = "a b";
  int ell = 1;
  bool oracle_only = false;

  auto* sg = app.add_subcommand("solve-group", "decide a closed group formula");
  sg->add_option("formula-file", file)->required();

  auto* se = app.add_subcommand("solve-equation", "decide a monoid equation system");
  se->add_option("equation-file", file)->required();
  se->add_option("--certificate", cert_out, "write a certificate for a positive answer");

  auto* orc = app.add_subcommand("oracle", "brute-force search up to --maxlen");
  orc->add_option("equation-file", file)->required();

  auto* ver = app.add_subcommand("verify", "replay a certificate file");
  ver->add_option("certificate-file", file)->required();

  auto* fac = app.add_subcommand("factorize", "inspect the critical-word machinery");
  fac->add_option("word", word_text)->required();
  fac->add_option("--ell", ell, "factorization level")->required();
  fac->add_option("--cuts", cuts_text, "comma separated cut positions (default: all)");
  fac->add_option("--alphabet", alphabet_text, "space separated unbarred letters");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sg->parsed()) return run_solve_group(file, cfg);
    if (se->parsed()) return run_solve_equation(file, cfg, false, cert_out);
    if (orc->parsed()) return run_solve_equation(file, cfg, true, "");
    if (ver->parsed()) return run_verify(file);
    if (fac->parsed()) return run_factorize(word_text, ell, cuts_text, alphabet_text);
  } catch (const wordeq::ResourceError& ex) {
    std::cerr << "resource limit: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 1;
}
