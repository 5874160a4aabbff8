#pragma once

#include <map>
#include <string>
#include <vector>

#include "zol/core/structure.hpp"
#include "zol/interp/scheme.hpp"
#include "zol/logic/formula.hpp"
#include "zol/quantifier/quantifier.hpp"

namespace zol::logic {

using Assignment = std::map<std::string, int>;

/// Replaces every Q[S] by the disjunction of Q over the complete reduced
/// members of S, which are added to `registry` under S's name plus
/// "__<k>". Throws TrivialScheme or DegenerateScheme.
FormulaPtr elaborate(const FormulaPtr& f, interp::SchemeRegistry& registry, const KindSequence& sig);

/// Evaluates formulas over one structure. Q[S](z) results are memoized per
/// scheme and parameter tuple. Without a quantifier class, Q[S] throws.
class Evaluator {
 public:
  Evaluator(const Structure& m, const interp::SchemeRegistry& registry, const quantifier::QuantifierClass* q);

  /// Throws EvaluationAborted when membership cannot be decided and
  /// InvalidArgument for unbound variables or unknown schemes.
  bool eval(const Formula& f, const Assignment& asg);
  /// {a : M |= f[x := a]} for the single free variable x of f.
  std::vector<int> defined_set(const Formula& f);

  std::size_t qapply_calls() const noexcept { return qapply_calls_; }

 private:
  bool go(const Formula& f, Assignment& asg);
  bool qapply(const Formula& f, Assignment& asg);

  const Structure& m_;
  const interp::SchemeRegistry& registry_;
  const quantifier::QuantifierClass* q_;
  std::map<std::string, interp::CompiledScheme> compiled_;
  std::map<std::pair<std::string, Tuple>, bool> memo_;
  std::size_t qapply_calls_ = 0;
};

bool evaluate(const Structure& m, const Formula& f, const Assignment& asg, const quantifier::QuantifierClass* q,
              const interp::SchemeRegistry& registry = interp::SchemeRegistry::with_builtins());

std::vector<int> defined_set(const Structure& m, const Formula& f, const quantifier::QuantifierClass* q,
                             const interp::SchemeRegistry& registry = interp::SchemeRegistry::with_builtins());

}  // namespace zol::logic
