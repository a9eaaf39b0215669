#include "wordeq/io.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>

namespace wordeq {

// ---------------------------------------------------------------------------
// Expressions

namespace {

void render_expr_rec(const InvAlphabet& alph, const ExpExpr& e, std::ostream& os) {
  switch (e.tag()) {
    case ExpExpr::Tag::literal:
      os << render_word(alph, e.lit());
      return;
    case ExpExpr::Tag::concat:
      render_expr_rec(alph, e.left(), os);
      os << ' ';
      render_expr_rec(alph, e.right(), os);
      return;
    case ExpExpr::Tag::power:
      os << "( ";
      render_expr_rec(alph, e.base(), os);
      os << " )^" << e.exponent();
      return;
  }
}

struct ExprTokens {
  std::vector<std::string> toks;
  std::size_t pos = 0;

  bool eof() const { return pos >= toks.size(); }
  const std::string& peek() const { return toks[pos]; }
  std::string take() { return toks[pos++]; }
};

ExprTokens tokenize_expr(const std::string& text) {
  ExprTokens t;
  std::string cur;
  auto flush = [&]() {
    if (!cur.empty()) {
      t.toks.push_back(cur);
      cur.clear();
    }
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == '(' || c == ')') {
      flush();
      t.toks.push_back(std::string(1, c));
    } else if (c == '^') {
      flush();
      t.toks.push_back("^");
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return t;
}

ExpExpr parse_expr_seq(const InvAlphabet& alph, ExprTokens& t);

ExpExpr parse_expr_item(const InvAlphabet& alph, ExprTokens& t) {
  std::string tok = t.take();
  if (tok == "(") {
    ExpExpr inner = parse_expr_seq(alph, t);
    if (t.eof() || t.take() != ")") throw std::invalid_argument("expression: missing ')'");
    if (!t.eof() && t.peek() == "^") {
      t.take();
      if (t.eof()) throw std::invalid_argument("expression: missing exponent");
      std::uint64_t k = std::stoull(t.take());
      return ExpExpr::power(inner, k);
    }
    return inner;
  }
  if (tok == "1") return ExpExpr::literal(Word{});
  auto l = alph.find(tok);
  if (!l) throw std::invalid_argument("expression: unknown letter " + tok);
  return ExpExpr::literal(word_of(*l));
}

ExpExpr parse_expr_seq(const InvAlphabet& alph, ExprTokens& t) {
  std::vector<ExpExpr> parts;
  while (!t.eof() && t.peek() != ")") parts.push_back(parse_expr_item(alph, t));
  if (parts.empty()) return ExpExpr::literal(Word{});
  // merge adjacent single-letter literals into one literal
  std::vector<ExpExpr> merged;
  Word run;
  auto flush = [&]() {
    if (!run.empty()) {
      merged.push_back(ExpExpr::literal(run));
      run = Word{};
    }
  };
  for (const ExpExpr& p : parts) {
    if (p.tag() == ExpExpr::Tag::literal) {
      run.append(p.lit());
    } else {
      flush();
      merged.push_back(p);
    }
  }
  flush();
  return ExpExpr::concat_all(merged);
}

}  // namespace

std::string render_expr(const InvAlphabet& alph, const ExpExpr& e) {
  if (e.eval_length() == 0 && e.tag() == ExpExpr::Tag::literal) return "1";
  std::ostringstream os;
  render_expr_rec(alph, e, os);
  return os.str();
}

ExpExpr parse_expr(const InvAlphabet& alph, const std::string& text) {
  ExprTokens t = tokenize_expr(text);
  ExpExpr e = parse_expr_seq(alph, t);
  if (!t.eof()) throw std::invalid_argument("expression: trailing tokens");
  return e;
}

// ---------------------------------------------------------------------------
// Automata

std::string render_automaton(const InvAlphabet& alph, const Nfa& a) {
  std::ostringstream os;
  os << "states " << a.num_states() << '\n';
  os << "initial";
  for (int q : a.initial()) os << ' ' << q;
  os << '\n' << "final";
  for (int q : a.final()) os << ' ' << q;
  os << '\n';
  for (const auto& t : a.transitions()) {
    os << t.from << ' ' << (t.label == kNoLetter ? "eps" : alph.name(t.label)) << ' ' << t.to
       << '\n';
  }
  os << "end\n";
  return os.str();
}

Nfa parse_automaton(const InvAlphabet& alph, const std::vector<Letter>& sigma,
                    std::istream& in) {
  std::string line;
  int num_states = -1;
  Nfa out;
  bool have_header = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;
    if (head == "end") break;
    if (head == "states") {
      ls >> num_states;
      out = Nfa(num_states, sigma);
      have_header = true;
    } else if (head == "initial") {
      int q;
      while (ls >> q) out.set_initial(q);
    } else if (head == "final") {
      int q;
      while (ls >> q) out.set_final(q);
    } else {
      if (!have_header) throw std::invalid_argument("automaton: missing states header");
      int p = std::stoi(head), q;
      std::string label;
      ls >> label >> q;
      if (label == "eps") {
        out.add_epsilon(p, q);
      } else {
        auto l = alph.find(label);
        if (!l) throw std::invalid_argument("automaton: unknown letter " + label);
        out.add_transition(p, *l, q);
      }
    }
  }
  if (!have_header) throw std::invalid_argument("automaton: empty block");
  return out;
}

// ---------------------------------------------------------------------------
// Declarations shared by equation and formula files

namespace {

struct Declarations {
  std::shared_ptr<InvAlphabet> alph = std::make_shared<InvAlphabet>();
  std::vector<Letter> gamma;
  std::vector<Letter> vars;
  std::map<std::string, Nfa> automata;
};

void parse_alphabet_line(Declarations& d, std::istringstream& ls) {
  std::string name;
  while (ls >> name) {
    Letter a = d.alph->add_pair(name, LetterKind::constant);
    d.gamma.push_back(a);
    d.gamma.push_back(d.alph->bar(a));
  }
}

void parse_selfbar_line(Declarations& d, std::istringstream& ls) {
  std::string name;
  while (ls >> name) d.gamma.push_back(d.alph->add_involutive_constant(name));
}

void parse_variables_line(Declarations& d, std::istringstream& ls) {
  std::string name;
  while (ls >> name) {
    Letter x = d.alph->add_pair(name, LetterKind::variable);
    d.vars.push_back(x);
    d.vars.push_back(d.alph->bar(x));
  }
}

Word parse_tokens(const InvAlphabet& alph, std::istringstream& ls, const std::string& stop) {
  Word w;
  std::string tok;
  while (ls >> tok) {
    if (tok == stop) break;
    if (tok == "1") continue;
    auto l = alph.find(tok);
    if (!l) throw std::invalid_argument("unknown letter token: " + tok);
    w.push_back(*l);
  }
  return w;
}

}  // namespace

EquationFile parse_equation_file(std::istream& in) {
  Declarations d;
  MonoidSystem system;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;
    if (head == "alphabet") {
      parse_alphabet_line(d, ls);
    } else if (head == "selfbar") {
      parse_selfbar_line(d, ls);
    } else if (head == "variables") {
      parse_variables_line(d, ls);
    } else if (head == "automaton") {
      std::string name;
      ls >> name;
      d.automata.emplace(name, parse_automaton(*d.alph, d.gamma, in));
    } else if (head == "constraint") {
      std::string var, rel, aut;
      ls >> var >> rel >> aut;
      auto x = d.alph->find(var);
      if (!x) throw std::invalid_argument("constraint: unknown variable " + var);
      if (!d.automata.count(aut)) throw std::invalid_argument("constraint: unknown automaton " + aut);
      Polarity pol = rel == "in" ? Polarity::positive : Polarity::negative;
      if (rel != "in" && rel != "notin") throw std::invalid_argument("constraint: expected in/notin");
      system.memberships.push_back({*x, d.automata.at(aut), pol});
    } else if (head == "equation") {
      Word lhs = parse_tokens(*d.alph, ls, "=");
      Word rhs = parse_tokens(*d.alph, ls, "");
      system.equations.emplace_back(std::move(lhs), std::move(rhs));
    } else if (head == "inequation") {
      Word lhs = parse_tokens(*d.alph, ls, "!=");
      Word rhs = parse_tokens(*d.alph, ls, "");
      system.inequalities.emplace_back(std::move(lhs), std::move(rhs));
    } else {
      throw std::invalid_argument("equation file: unknown directive " + head);
    }
  }
  EquationFile out;
  out.alph = d.alph;
  out.task.alph = d.alph;
  out.task.gamma = d.gamma;
  out.task.vars = d.vars;
  out.task.automata = d.automata;
  out.system = std::move(system);
  return out;
}

// ---------------------------------------------------------------------------
// Formula files

namespace {

struct SExpr {
  std::string atom;
  std::vector<SExpr> items;
  bool is_atom() const { return items.empty() && !atom.empty(); }
};

SExpr parse_sexpr(ExprTokens& t) {
  if (t.eof()) throw std::invalid_argument("formula: unexpected end");
  std::string tok = t.take();
  if (tok != "(") {
    SExpr s;
    s.atom = tok;
    return s;
  }
  SExpr s;
  while (!t.eof() && t.peek() != ")") s.items.push_back(parse_sexpr(t));
  if (t.eof()) throw std::invalid_argument("formula: missing ')'");
  t.take();
  return s;
}

GroupFormula sexpr_to_formula(const Declarations& d, const SExpr& s) {
  if (s.items.empty()) throw std::invalid_argument("formula: bare atom");
  const std::string& op = s.items.front().atom;
  if (op == "eq") {
    Word w;
    for (std::size_t i = 1; i < s.items.size(); ++i) {
      const std::string& tok = s.items[i].atom;
      if (tok == "1") continue;
      auto l = d.alph->find(tok);
      if (!l) throw std::invalid_argument("formula: unknown letter " + tok);
      w.push_back(*l);
    }
    return GroupFormula::eq_atom(std::move(w));
  }
  if (op == "in") {
    if (s.items.size() != 3) throw std::invalid_argument("formula: (in X name)");
    auto x = d.alph->find(s.items[1].atom);
    if (!x) throw std::invalid_argument("formula: unknown variable " + s.items[1].atom);
    return GroupFormula::in_atom(*x, s.items[2].atom);
  }
  if (op == "not") {
    if (s.items.size() != 2) throw std::invalid_argument("formula: (not f)");
    return GroupFormula::neg(sexpr_to_formula(d, s.items[1]));
  }
  if (op == "and" || op == "or") {
    std::vector<GroupFormula> children;
    for (std::size_t i = 1; i < s.items.size(); ++i) {
      children.push_back(sexpr_to_formula(d, s.items[i]));
    }
    if (children.empty()) throw std::invalid_argument("formula: empty connective");
    return op == "and" ? GroupFormula::conj(std::move(children))
                       : GroupFormula::disj(std::move(children));
  }
  throw std::invalid_argument("formula: unknown operator " + op);
}

}  // namespace

GroupTask parse_formula_file(std::istream& in) {
  Declarations d;
  std::string line;
  std::string formula_text;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;
    if (head == "alphabet") {
      parse_alphabet_line(d, ls);
    } else if (head == "selfbar") {
      parse_selfbar_line(d, ls);
    } else if (head == "variables") {
      parse_variables_line(d, ls);
    } else if (head == "automaton") {
      std::string name;
      ls >> name;
      d.automata.emplace(name, parse_automaton(*d.alph, d.gamma, in));
    } else if (head == "formula") {
      std::string rest;
      std::getline(ls, rest);
      formula_text = rest;
      while (std::getline(in, line)) formula_text += "\n" + line;
    } else {
      throw std::invalid_argument("formula file: unknown directive " + head);
    }
  }
  if (formula_text.empty()) throw std::invalid_argument("formula file: missing formula");
  ExprTokens t = tokenize_expr(formula_text);
  SExpr s = parse_sexpr(t);

  GroupTask task;
  task.alph = d.alph;
  task.gamma = d.gamma;
  task.vars = d.vars;
  task.automata = d.automata;
  task.root = sexpr_to_formula(d, s);
  return task;
}

// ---------------------------------------------------------------------------
// Certificates

namespace {

std::string render_bits(std::uint64_t bits, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s.push_back(((bits >> i) & 1u) ? '1' : '0');
  return s;
}

std::uint64_t parse_bits(const std::string& s) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') out |= 1ull << i;
  }
  return out;
}

std::string render_mat(const MonElem& m) {
  std::ostringstream os;
  const int n = m.dim();
  for (int i = 0; i < n; ++i) os << (i ? "," : "") << render_bits(m.blockA().row(i), n);
  os << ' ';
  for (int i = 0; i < n; ++i) os << (i ? "," : "") << render_bits(m.blockB().row(i), n);
  return os.str();
}

MonElem parse_mat(const std::string& a_str, const std::string& b_str) {
  auto rows = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
      if (c == ',') {
        out.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    out.push_back(cur);
    return out;
  };
  auto ra = rows(a_str), rb = rows(b_str);
  const int n = static_cast<int>(ra.size());
  BoolMat A(n), B(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (ra[static_cast<size_t>(i)][static_cast<size_t>(j)] == '1') A.set(i, j, true);
      if (rb[static_cast<size_t>(i)][static_cast<size_t>(j)] == '1') B.set(i, j, true);
    }
  }
  return {A, B};
}

void write_equation_body(std::ostream& out, const EquationE& e) {
  const InvAlphabet& alph = *e.alph;
  out << "gamma";
  for (Letter a : e.gamma) out << ' ' << alph.name(a);
  out << "\nomega";
  for (Letter x : e.omega) out << ' ' << alph.name(x);
  out << '\n';
  for (const auto& [x, m] : e.rho) {
    out << "rho " << alph.name(x) << ' ' << render_mat(m) << '\n';
  }
  for (const AcceptancePair& p : e.residual) {
    out << "residual " << (p.polarity == Polarity::positive ? '+' : '-') << ' '
        << alph.name(p.var) << ' ' << render_bits(p.I.upper, e.n) << render_bits(p.I.lower, e.n)
        << ' ' << render_bits(p.F.upper, e.n) << render_bits(p.F.lower, e.n) << '\n';
  }
  out << "lhs " << render_expr(alph, e.lhs) << '\n';
  out << "rhs " << render_expr(alph, e.rhs) << '\n';
}

struct EquationBody {
  std::vector<Letter> gamma, omega;
  RhoMap rho;
  std::vector<AcceptancePair> residual;
  ExpExpr lhs, rhs;
  bool has_lhs = false, has_rhs = false;
};

EquationBody read_equation_body(const InvAlphabet& alph, int n, std::istream& in) {
  EquationBody b;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;
    if (head == "end") break;
    if (head == "gamma" || head == "omega") {
      std::string tok;
      auto& vec = head == "gamma" ? b.gamma : b.omega;
      while (ls >> tok) {
        auto l = alph.find(tok);
        if (!l) throw std::invalid_argument("certificate: unknown letter " + tok);
        vec.push_back(*l);
      }
    } else if (head == "rho") {
      std::string var, ma, mb;
      ls >> var >> ma >> mb;
      auto x = alph.find(var);
      if (!x) throw std::invalid_argument("certificate: unknown variable " + var);
      b.rho.emplace(*x, parse_mat(ma, mb));
    } else if (head == "residual") {
      std::string pol, var, is, fs;
      ls >> pol >> var >> is >> fs;
      AcceptancePair p;
      auto x = alph.find(var);
      if (!x) throw std::invalid_argument("certificate: unknown variable " + var);
      p.var = *x;
      p.polarity = pol == "+" ? Polarity::positive : Polarity::negative;
      p.I.upper = parse_bits(is.substr(0, static_cast<size_t>(n)));
      p.I.lower = parse_bits(is.substr(static_cast<size_t>(n)));
      p.F.upper = parse_bits(fs.substr(0, static_cast<size_t>(n)));
      p.F.lower = parse_bits(fs.substr(static_cast<size_t>(n)));
      b.residual.push_back(p);
    } else if (head == "lhs" || head == "rhs") {
      std::string rest;
      std::getline(ls, rest);
      (head == "lhs" ? b.lhs : b.rhs) = parse_expr(alph, rest);
      (head == "lhs" ? b.has_lhs : b.has_rhs) = true;
    } else {
      throw std::invalid_argument("certificate: unknown equation line " + head);
    }
  }
  if (!b.has_lhs || !b.has_rhs) throw std::invalid_argument("certificate: equation without sides");
  return b;
}

}  // namespace

void write_certificate(std::ostream& out, const CertPath& path) {
  const InvAlphabet& alph = *path.root.alph;
  out << "certificate\n";
  out << "n " << path.root.n << '\n';
  out << "letters\n";
  for (Letter a = 0; a < static_cast<Letter>(alph.size()); ++a) {
    out << alph.name(a) << ' '
        << (alph.is_variable(a) ? "variable" : "constant") << ' ' << alph.name(alph.bar(a))
        << '\n';
  }
  out << "end\n";
  out << "h\n";
  for (Letter a : path.root.gamma) {
    out << alph.name(a) << ' ' << render_mat(path.root.h.at(a)) << '\n';
  }
  out << "end\n";
  out << "root\n";
  write_equation_body(out, path.root);
  out << "end\n";
  for (const Arc& arc : path.arcs) {
    out << "arc\n";
    if (!arc.note.empty()) out << "note " << arc.note << '\n';
    for (const auto& [a, w] : arc.pi) {
      out << "pi " << alph.name(a) << " = " << render_word(alph, w) << '\n';
    }
    for (const auto& [a, e] : arc.beta) {
      out << "beta " << alph.name(a) << " = " << render_expr(alph, e) << '\n';
    }
    for (const auto& [x, im] : arc.delta.images) {
      out << "delta " << alph.name(x) << " = [ " << render_expr(alph, im.prefix) << " ]";
      if (im.keeps_var) {
        out << ' ' << alph.name(x) << " [ " << render_expr(alph, im.suffix) << " ]";
      }
      out << '\n';
    }
    if (arc.intermediate.alph) {
      out << "intermediate lhs " << render_expr(alph, arc.intermediate.lhs) << '\n';
      out << "intermediate rhs " << render_expr(alph, arc.intermediate.rhs) << '\n';
    }
    out << "target\n";
    write_equation_body(out, arc.target);
    out << "end\n";
    out << "end\n";
  }
  out << "end\n";
}

CertPath read_certificate(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "certificate") {
    throw std::invalid_argument("certificate: bad header");
  }
  auto alph = std::make_shared<InvAlphabet>();
  int n = 1;
  CertPath path;
  bool have_root = false;

  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;
    if (head == "end") break;
    if (head == "n") {
      ls >> n;
    } else if (head == "letters") {
      while (std::getline(in, line)) {
        std::istringstream ll(line);
        std::string name, kind, barname;
        if (!(ll >> name)) continue;
        if (name == "end") break;
        ll >> kind >> barname;
        if (alph->find(name)) continue;
        if (barname == name) {
          alph->add_involutive_constant(name);
        } else {
          alph->add_pair(name, kind == "variable" ? LetterKind::variable : LetterKind::constant);
        }
      }
    } else if (head == "h") {
      path.root.alph = alph;
      path.root.n = n;
      path.root.h = ConstraintHom(n);
      while (std::getline(in, line)) {
        std::istringstream ll(line);
        std::string name, ma, mb;
        if (!(ll >> name)) continue;
        if (name == "end") break;
        ll >> ma >> mb;
        auto l = alph->find(name);
        if (!l) throw std::invalid_argument("certificate: unknown h letter " + name);
        path.root.h.set(*l, parse_mat(ma, mb));
      }
    } else if (head == "root") {
      EquationBody b = read_equation_body(*alph, n, in);
      path.root.gamma = b.gamma;
      path.root.omega = b.omega;
      path.root.rho = b.rho;
      path.root.residual = b.residual;
      path.root.lhs = b.lhs;
      path.root.rhs = b.rhs;
      have_root = true;
    } else if (head == "arc") {
      if (!have_root) throw std::invalid_argument("certificate: arc before root");
      const EquationE& source = path.arcs.empty() ? path.root : path.arcs.back().target;
      Arc arc;
      arc.source = source;
      EquationBody target_body;
      bool have_target = false;
      std::string inter_lhs, inter_rhs;
      while (std::getline(in, line)) {
        std::istringstream ll(line);
        std::string h2;
        if (!(ll >> h2) || h2[0] == '#') continue;
        if (h2 == "end") break;
        if (h2 == "note") {
          std::string rest;
          std::getline(ll, rest);
          arc.note = rest.empty() ? "" : rest.substr(1);
        } else if (h2 == "pi") {
          std::string name, eq, rest;
          ll >> name >> eq;
          std::getline(ll, rest);
          auto l = alph->find(name);
          if (!l) throw std::invalid_argument("certificate: unknown pi letter " + name);
          arc.pi.emplace(*l, parse_word(*alph, rest));
        } else if (h2 == "beta") {
          std::string name, eq, rest;
          ll >> name >> eq;
          std::getline(ll, rest);
          auto l = alph->find(name);
          if (!l) throw std::invalid_argument("certificate: unknown beta letter " + name);
          arc.beta.emplace(*l, parse_expr(*alph, rest));
        } else if (h2 == "delta") {
          std::string name, eq, rest;
          ll >> name >> eq;
          std::getline(ll, rest);
          auto x = alph->find(name);
          if (!x) throw std::invalid_argument("certificate: unknown delta variable " + name);
          // [ prefix ] [X [ suffix ]]
          auto lb = rest.find('[');
          auto rb = rest.find(']');
          if (lb == std::string::npos || rb == std::string::npos) {
            throw std::invalid_argument("certificate: malformed delta line");
          }
          PartialImage im;
          im.prefix = parse_expr(*alph, rest.substr(lb + 1, rb - lb - 1));
          auto lb2 = rest.find('[', rb + 1);
          if (lb2 != std::string::npos) {
            auto rb2 = rest.find(']', lb2 + 1);
            im.keeps_var = true;
            im.suffix = parse_expr(*alph, rest.substr(lb2 + 1, rb2 - lb2 - 1));
          }
          arc.delta.images.emplace(*x, im);
        } else if (h2 == "intermediate") {
          std::string which, rest;
          ll >> which;
          std::getline(ll, rest);
          (which == "lhs" ? inter_lhs : inter_rhs) = rest;
        } else if (h2 == "target") {
          target_body = read_equation_body(*alph, n, in);
          have_target = true;
        } else {
          throw std::invalid_argument("certificate: unknown arc line " + h2);
        }
      }
      if (!have_target) throw std::invalid_argument("certificate: arc without target");

      EquationE projected = apply_projection(arc.pi, source);
      EquationE target;
      target.alph = alph;
      target.n = n;
      target.gamma = target_body.gamma;
      target.omega = target_body.omega;
      target.rho = target_body.rho;
      target.residual = target_body.residual;
      target.lhs = target_body.lhs;
      target.rhs = target_body.rhs;
      target.h = ConstraintHom(n);
      for (Letter a : target.gamma) {
        auto bit = arc.beta.find(a);
        if (bit != arc.beta.end()) {
          target.h.set(a, hom_of_expr(projected.h, bit->second, n));
        } else {
          target.h.set(a, projected.h.at(a));
        }
      }
      arc.target = target;
      for (Letter x : target.omega) {
        auto rit = target.rho.find(x);
        if (rit != target.rho.end()) arc.delta.rho_prime.emplace(x, rit->second);
      }
      arc.intermediate = apply_base_change(arc.beta, target, projected.gamma, projected.h);
      if (!inter_lhs.empty()) arc.intermediate.lhs = parse_expr(*alph, inter_lhs);
      if (!inter_rhs.empty()) arc.intermediate.rhs = parse_expr(*alph, inter_rhs);
      path.notes.push_back(arc.note);
      path.arcs.push_back(std::move(arc));
    } else {
      throw std::invalid_argument("certificate: unknown section " + head);
    }
  }
  if (!have_root) throw std::invalid_argument("certificate: missing root");
  return path;
}

}  // namespace wordeq
