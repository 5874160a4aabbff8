#include "zol/logic/formula.hpp"

#include <algorithm>
#include <cctype>

#include "zol/core/error.hpp"

namespace zol::logic {

namespace {
FormulaPtr node(Op op) {
  auto f = std::make_shared<Formula>();
  f->op = op;
  return f;
}
}  // namespace

FormulaPtr make_true() {
  static const FormulaPtr t = node(Op::True);
  return t;
}
FormulaPtr make_false() {
  static const FormulaPtr f = node(Op::False);
  return f;
}
FormulaPtr atom(int kind, std::vector<std::string> vars) {
  auto f = std::make_shared<Formula>();
  f->op = Op::Atom;
  f->kind = kind;
  f->vars = std::move(vars);
  return f;
}
FormulaPtr eq(std::string a, std::string b) {
  auto f = std::make_shared<Formula>();
  f->op = Op::Eq;
  f->vars = {std::move(a), std::move(b)};
  return f;
}
FormulaPtr neq(std::string a, std::string b) { return negate(eq(std::move(a), std::move(b))); }
FormulaPtr negate(FormulaPtr g) {
  auto f = std::make_shared<Formula>();
  f->op = Op::Not;
  f->kids = {std::move(g)};
  return f;
}
FormulaPtr conj(FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->op = Op::And;
  f->kids = {std::move(a), std::move(b)};
  return f;
}
FormulaPtr disj(FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->op = Op::Or;
  f->kids = {std::move(a), std::move(b)};
  return f;
}
FormulaPtr exists(std::string var, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->op = Op::Exists;
  f->vars = {std::move(var)};
  f->kids = {std::move(body)};
  return f;
}
FormulaPtr forall(std::string var, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->op = Op::Forall;
  f->vars = {std::move(var)};
  f->kids = {std::move(body)};
  return f;
}
FormulaPtr qapply(std::string scheme, std::vector<std::string> params) {
  auto f = std::make_shared<Formula>();
  f->op = Op::QApply;
  f->scheme = std::move(scheme);
  f->vars = std::move(params);
  return f;
}

FormulaPtr conj_all(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return make_true();
  FormulaPtr acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

FormulaPtr disj_all(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return make_false();
  FormulaPtr acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

bool equal(const Formula& a, const Formula& b) {
  if (a.op != b.op || a.kind != b.kind || a.vars != b.vars || a.scheme != b.scheme ||
      a.kids.size() != b.kids.size())
    return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!equal(*a.kids[i], *b.kids[i])) return false;
  return true;
}

namespace {
void collect_free(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
  auto note = [&](const std::string& v) {
    if (std::find(bound.begin(), bound.end(), v) != bound.end()) return;
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  switch (f.op) {
    case Op::Atom:
    case Op::Eq:
    case Op::QApply:
      for (const auto& v : f.vars) note(v);
      break;
    case Op::Exists:
    case Op::Forall:
      bound.push_back(f.vars[0]);
      collect_free(*f.kids[0], bound, out);
      bound.pop_back();
      break;
    default:
      for (const auto& k : f.kids) collect_free(*k, bound, out);
  }
}
}  // namespace

std::vector<std::string> free_vars(const Formula& f) {
  std::vector<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

bool mentions_var(const Formula& f, const std::string& v) {
  if (std::find(f.vars.begin(), f.vars.end(), v) != f.vars.end()) return true;
  return std::any_of(f.kids.begin(), f.kids.end(), [&](const FormulaPtr& k) { return mentions_var(*k, v); });
}

bool is_quantifier_free(const Formula& f) {
  if (f.op == Op::Exists || f.op == Op::Forall || f.op == Op::QApply) return false;
  return std::all_of(f.kids.begin(), f.kids.end(), [](const FormulaPtr& k) { return is_quantifier_free(*k); });
}

bool has_qapply(const Formula& f) {
  if (f.op == Op::QApply) return true;
  return std::any_of(f.kids.begin(), f.kids.end(), [](const FormulaPtr& k) { return has_qapply(*k); });
}

int quantifier_rank(const Formula& f) {
  int r = 0;
  for (const auto& k : f.kids) r = std::max(r, quantifier_rank(*k));
  if (f.op == Op::Exists || f.op == Op::Forall) ++r;
  return r;
}

FormulaPtr rename(const FormulaPtr& f, const std::map<std::string, std::string>& m) {
  auto sub = [&](const std::string& v) {
    auto it = m.find(v);
    return it == m.end() ? v : it->second;
  };
  switch (f->op) {
    case Op::True:
    case Op::False:
      return f;
    case Op::Atom:
    case Op::Eq:
    case Op::QApply: {
      auto g = std::make_shared<Formula>(*f);
      for (auto& v : g->vars) v = sub(v);
      return g;
    }
    case Op::Exists:
    case Op::Forall: {
      auto inner = m;
      inner.erase(f->vars[0]);
      auto g = std::make_shared<Formula>(*f);
      g->kids = {rename(f->kids[0], inner)};
      return g;
    }
    default: {
      auto g = std::make_shared<Formula>(*f);
      for (auto& k : g->kids) k = rename(k, m);
      return g;
    }
  }
}

namespace {
std::string kind_name(int kind) { return kind == 0 ? "R" : "R" + std::to_string(kind); }

std::string join(const std::vector<std::string>& vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + vs[i];
  return s;
}
}  // namespace

std::string to_string(const Formula& f) {
  switch (f.op) {
    case Op::True:
      return "true";
    case Op::False:
      return "false";
    case Op::Atom:
      return kind_name(f.kind) + "(" + join(f.vars) + ")";
    case Op::Eq:
      return f.vars[0] + " = " + f.vars[1];
    case Op::Not: {
      const Formula& k = *f.kids[0];
      if (k.op == Op::Eq) return k.vars[0] + " != " + k.vars[1];
      bool simple = k.op == Op::Atom || k.op == Op::True || k.op == Op::False || k.op == Op::QApply ||
                    k.op == Op::Not;
      return "not " + (simple ? to_string(k) : "(" + to_string(k) + ")");
    }
    case Op::And:
      return "(" + to_string(*f.kids[0]) + " and " + to_string(*f.kids[1]) + ")";
    case Op::Or:
      return "(" + to_string(*f.kids[0]) + " or " + to_string(*f.kids[1]) + ")";
    case Op::Exists:
      return "(exists " + f.vars[0] + ". " + to_string(*f.kids[0]) + ")";
    case Op::Forall:
      return "(forall " + f.vars[0] + ". " + to_string(*f.kids[0]) + ")";
    case Op::QApply:
      return "Q[" + f.scheme + "](" + join(f.vars) + ")";
  }
  return "";
}

// ---------------------------------------------------------------- parser

namespace {

enum class Tok { Ident, LParen, RParen, LBrack, RBrack, Comma, Dot, EqSign, NeqSign, Bang, Amp, Bar, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      while (i < s.size() && s[i] == '\'') ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    auto single = [&](Tok t) {
      out.push_back({t, std::string(1, c), start});
      ++i;
    };
    switch (c) {
      case '(': single(Tok::LParen); break;
      case ')': single(Tok::RParen); break;
      case '[': single(Tok::LBrack); break;
      case ']': single(Tok::RBrack); break;
      case ',': single(Tok::Comma); break;
      case '.': single(Tok::Dot); break;
      case '=': single(Tok::EqSign); break;
      case '&': single(Tok::Amp); break;
      case '|': single(Tok::Bar); break;
      case '!':
        if (i + 1 < s.size() && s[i + 1] == '=') {
          out.push_back({Tok::NeqSign, "!=", start});
          i += 2;
        } else {
          single(Tok::Bang);
        }
        break;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", start);
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

bool is_keyword(const std::string& s) {
  return s == "exists" || s == "forall" || s == "and" || s == "or" || s == "not" || s == "true" ||
         s == "false" || s == "Q";
}

/// R or R<digits>; returns the kind id or -1.
int kind_of(const std::string& s) {
  if (s.empty() || s[0] != 'R') return -1;
  if (s.size() == 1) return 0;
  int v = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return -1;
    v = v * 10 + (s[i] - '0');
    if (v > 1000000) return -1;
  }
  return v;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  FormulaPtr parse_all() {
    auto f = formula();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, peek().offset); }
  bool at_word(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }
  void expect(Tok t, const char* what) {
    if (peek().kind != t) fail(std::string("expected ") + what);
    ++pos_;
  }

  std::string variable() {
    if (peek().kind != Tok::Ident) fail("expected variable");
    const std::string& s = peek().text;
    if (is_keyword(s) || kind_of(s) >= 0) fail("'" + s + "' is not a variable name");
    return take().text;
  }

  FormulaPtr formula() {
    if (at_word("exists") || at_word("forall")) return quantified();
    return disjunction();
  }

  FormulaPtr quantified() {
    bool ex = take().text == "exists";
    std::vector<std::string> vs{variable()};
    while (peek().kind == Tok::Comma) {
      ++pos_;
      vs.push_back(variable());
    }
    expect(Tok::Dot, "'.' after quantified variables");
    FormulaPtr body = formula();
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = ex ? exists(*it, body) : forall(*it, body);
    return body;
  }

  FormulaPtr disjunction() {
    FormulaPtr f = conjunction();
    while (at_word("or") || peek().kind == Tok::Bar) {
      ++pos_;
      f = disj(f, conjunction());
    }
    return f;
  }

  FormulaPtr conjunction() {
    FormulaPtr f = unary();
    while (at_word("and") || peek().kind == Tok::Amp) {
      ++pos_;
      f = conj(f, unary());
    }
    return f;
  }

  FormulaPtr unary() {
    if (at_word("not") || peek().kind == Tok::Bang) {
      ++pos_;
      return negate(unary());
    }
    return primary();
  }

  std::vector<std::string> var_list() {
    expect(Tok::LParen, "'('");
    std::vector<std::string> vs;
    if (peek().kind != Tok::RParen) {
      vs.push_back(variable());
      while (peek().kind == Tok::Comma) {
        ++pos_;
        vs.push_back(variable());
      }
    }
    if (peek().kind != Tok::RParen) fail("expected ',' or ')'");
    ++pos_;
    return vs;
  }

  FormulaPtr primary() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      ++pos_;
      FormulaPtr f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind != Tok::Ident) fail("expected formula");
    if (t.text == "exists" || t.text == "forall") return quantified();
    if (t.text == "true") {
      ++pos_;
      return make_true();
    }
    if (t.text == "false") {
      ++pos_;
      return make_false();
    }
    if (t.text == "Q") {
      ++pos_;
      expect(Tok::LBrack, "'[' after Q");
      if (peek().kind != Tok::Ident) fail("expected scheme name");
      std::string name = take().text;
      expect(Tok::RBrack, "']'");
      return qapply(std::move(name), var_list());
    }
    if (int k = kind_of(t.text); k >= 0) {
      ++pos_;
      return atom(k, var_list());
    }
    std::string a = variable();
    if (peek().kind == Tok::EqSign) {
      ++pos_;
      return eq(a, variable());
    }
    if (peek().kind == Tok::NeqSign) {
      ++pos_;
      return neq(a, variable());
    }
    fail("expected '=' or '!=' after variable");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

FormulaPtr parse(std::string_view text) { return Parser(lex(text)).parse_all(); }

}  // namespace zol::logic
