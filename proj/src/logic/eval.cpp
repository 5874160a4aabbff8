#include "zol/logic/eval.hpp"

#include "zol/core/error.hpp"
#include "zol/interp/interpreted.hpp"
#include "zol/interp/taxonomy.hpp"

namespace zol::logic {

FormulaPtr elaborate(const FormulaPtr& f, interp::SchemeRegistry& registry, const KindSequence& sig) {
  switch (f->op) {
    case Op::QApply: {
      const interp::Scheme& s = registry.get(f->scheme);
      if (static_cast<int>(f->vars.size()) != s.param_count())
        throw ArityMismatch("Q[" + f->scheme + "] takes " + std::to_string(s.param_count()) + " parameters");
      if (interp::is_trivial(s)) throw TrivialScheme("scheme '" + s.name + "' is trivial");
      if (interp::is_degenerated(s, sig)) throw DegenerateScheme("scheme '" + s.name + "' is degenerated");
      auto members = interp::decompose_to_complete_reduced(s, sig);
      if (members.size() == 1 && members[0].name == s.name) return f;
      std::vector<FormulaPtr> parts;
      for (auto& m : members) {
        if (interp::is_trivial(m)) throw TrivialScheme("scheme '" + m.name + "' is trivial");
        parts.push_back(qapply(m.name, f->vars));
        registry.add(std::move(m));
      }
      return disj_all(parts);
    }
    case Op::Not:
    case Op::And:
    case Op::Or:
    case Op::Exists:
    case Op::Forall: {
      auto g = std::make_shared<Formula>(*f);
      for (auto& k : g->kids) k = elaborate(k, registry, sig);
      return g;
    }
    default:
      return f;
  }
}

Evaluator::Evaluator(const Structure& m, const interp::SchemeRegistry& registry, const quantifier::QuantifierClass* q)
    : m_(m), registry_(registry), q_(q) {}

bool Evaluator::eval(const Formula& f, const Assignment& asg) {
  Assignment a = asg;
  return go(f, a);
}

std::vector<int> Evaluator::defined_set(const Formula& f) {
  auto fv = free_vars(f);
  if (fv.size() != 1) throw InvalidArgument("defined_set needs exactly one free variable, got " + std::to_string(fv.size()));
  std::vector<int> out;
  Assignment a;
  for (int v = 1; v <= m_.size(); ++v) {
    a[fv[0]] = v;
    if (go(f, a)) out.push_back(v);
  }
  return out;
}

namespace {
int lookup(const Assignment& asg, const std::string& v) {
  auto it = asg.find(v);
  if (it == asg.end()) throw InvalidArgument("variable '" + v + "' is not bound");
  return it->second;
}
}  // namespace

bool Evaluator::go(const Formula& f, Assignment& asg) {
  switch (f.op) {
    case Op::True:
      return true;
    case Op::False:
      return false;
    case Op::Atom: {
      auto idx = m_.signature().index_of(f.kind);
      if (!idx) throw InvalidArgument("kind " + std::to_string(f.kind) + " is not in the signature");
      if (static_cast<int>(f.vars.size()) != m_.signature()[*idx].arity)
        throw ArityMismatch("kind " + std::to_string(f.kind) + " has arity " +
                            std::to_string(m_.signature()[*idx].arity));
      Tuple t;
      for (const auto& v : f.vars) t.push_back(lookup(asg, v));
      return m_.holds(*idx, t);
    }
    case Op::Eq:
      return lookup(asg, f.vars[0]) == lookup(asg, f.vars[1]);
    case Op::Not:
      return !go(*f.kids[0], asg);
    case Op::And:
      return go(*f.kids[0], asg) && go(*f.kids[1], asg);
    case Op::Or:
      return go(*f.kids[0], asg) || go(*f.kids[1], asg);
    case Op::Exists:
    case Op::Forall: {
      const std::string& v = f.vars[0];
      auto saved = asg.find(v);
      std::optional<int> old;
      if (saved != asg.end()) old = saved->second;
      const bool want = f.op == Op::Exists;
      bool result = !want;
      for (int a = 1; a <= m_.size(); ++a) {
        asg[v] = a;
        if (go(*f.kids[0], asg) == want) {
          result = want;
          break;
        }
      }
      if (old)
        asg[v] = *old;
      else
        asg.erase(v);
      return result;
    }
    case Op::QApply:
      return qapply(f, asg);
  }
  return false;
}

bool Evaluator::qapply(const Formula& f, Assignment& asg) {
  if (!q_) throw InvalidArgument("Q[" + f.scheme + "] needs a quantifier class");
  Tuple c;
  for (const auto& v : f.vars) c.push_back(lookup(asg, v));
  auto key = std::make_pair(f.scheme, c);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  auto cs = compiled_.find(f.scheme);
  if (cs == compiled_.end())
    cs = compiled_.emplace(f.scheme, interp::CompiledScheme(registry_.get(f.scheme), m_.signature())).first;
  ++qapply_calls_;
  bool result = false;
  if (repetition_free(c) && cs->second.params_ok(m_, c)) {
    auto h = interp::build_interpreted_graph(m_, cs->second, c);
    try {
      result = q_->member(h.graph);
    } catch (const BudgetExhausted& e) {
      throw EvaluationAborted(std::string("membership undecided: ") + e.what());
    }
  }
  memo_.emplace(std::move(key), result);
  return result;
}

bool evaluate(const Structure& m, const Formula& f, const Assignment& asg, const quantifier::QuantifierClass* q,
              const interp::SchemeRegistry& registry) {
  Evaluator e(m, registry, q);
  return e.eval(f, asg);
}

std::vector<int> defined_set(const Structure& m, const Formula& f, const quantifier::QuantifierClass* q,
                             const interp::SchemeRegistry& registry) {
  Evaluator e(m, registry, q);
  return e.defined_set(f);
}

}  // namespace zol::logic
