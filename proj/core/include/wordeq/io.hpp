// io.hpp -- text formats: expressions, automata, equation files, formula
// files, certificate files.

#ifndef WORDEQ_IO_HPP_
#define WORDEQ_IO_HPP_

#include <iosfwd>
#include <string>

#include "wordeq/engine.hpp"
#include "wordeq/frontend.hpp"

namespace wordeq {

/// Expression text: literals as letter tokens, concatenation by
/// juxtaposition, powers as (expr)^k.  "1" denotes the empty literal.
std::string render_expr(const InvAlphabet& alph, const ExpExpr& e);
ExpExpr parse_expr(const InvAlphabet& alph, const std::string& text);

/// Automaton block:
///   states n
///   initial q ...
///   final q ...
///   p letter q        (one transition per line; label "eps" for epsilon)
/// terminated by "end" or end of input.
std::string render_automaton(const InvAlphabet& alph, const Nfa& a);
Nfa parse_automaton(const InvAlphabet& alph, const std::vector<Letter>& sigma,
                    std::istream& in);

/// Equation file: alphabet/selfbar/variables declarations, inline automaton
/// blocks, constraints, and one equation line.
struct EquationFile {
  std::shared_ptr<InvAlphabet> alph;
  GroupTask task;          // alphabet/vars/automata reused by formula mode
  MonoidSystem system;     // equations + memberships as written
};
EquationFile parse_equation_file(std::istream& in);

/// Formula file: declarations plus one (formula ...) s-expression.
GroupTask parse_formula_file(std::istream& in);

/// Certificate files carry the full letter table, the root equation and
/// one record per arc; `verify` replays them bit-exactly.
void write_certificate(std::ostream& out, const CertPath& path);
CertPath read_certificate(std::istream& in);

}  // namespace wordeq

#endif  // WORDEQ_IO_HPP_
