#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace zol::logic {

enum class Op { True, False, Atom, Eq, Not, And, Or, Exists, Forall, QApply };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// AST node of L(Q). Atom: R_kind(vars). Eq: vars[0] = vars[1].
/// Exists/Forall: vars[0] bound in kids[0]. QApply: Q[scheme](vars).
struct Formula {
  Op op = Op::True;
  int kind = 0;
  std::vector<std::string> vars;
  std::string scheme;
  std::vector<FormulaPtr> kids;
};

FormulaPtr make_true();
FormulaPtr make_false();
FormulaPtr atom(int kind, std::vector<std::string> vars);
FormulaPtr eq(std::string a, std::string b);
FormulaPtr neq(std::string a, std::string b);
FormulaPtr negate(FormulaPtr f);
FormulaPtr conj(FormulaPtr a, FormulaPtr b);
FormulaPtr disj(FormulaPtr a, FormulaPtr b);
FormulaPtr exists(std::string var, FormulaPtr body);
FormulaPtr forall(std::string var, FormulaPtr body);
FormulaPtr qapply(std::string scheme, std::vector<std::string> params);

/// Left-nested conjunction/disjunction; `true`/`false` when empty.
FormulaPtr conj_all(const std::vector<FormulaPtr>& fs);
FormulaPtr disj_all(const std::vector<FormulaPtr>& fs);

bool equal(const Formula& a, const Formula& b);

/// Free variables in order of first occurrence.
std::vector<std::string> free_vars(const Formula& f);
bool mentions_var(const Formula& f, const std::string& v);
bool is_quantifier_free(const Formula& f);  // no binders, no QApply
bool has_qapply(const Formula& f);
int quantifier_rank(const Formula& f);

/// Renames free occurrences. Binders shadow the map.
FormulaPtr rename(const FormulaPtr& f, const std::map<std::string, std::string>& m);

std::string to_string(const Formula& f);
inline std::string to_string(const FormulaPtr& f) { return to_string(*f); }

/// Concrete syntax:
///   formula := ('exists'|'forall') var {',' var} '.' formula | disj
///   disj    := conj {('or'|'|') conj}
///   conj    := unary {('and'|'&') unary}
///   unary   := ('not'|'!') unary | primary
///   primary := '(' formula ')' | 'true' | 'false' | kind '(' [vars] ')'
///            | var ('='|'!=') var | 'Q' '[' name ']' '(' [vars] ')' | quantified
/// Kinds are written R (kind 0) or R<id>; variables are other identifiers,
/// optionally followed by primes (x').
FormulaPtr parse(std::string_view text);

}  // namespace zol::logic
