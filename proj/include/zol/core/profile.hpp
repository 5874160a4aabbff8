#pragma once

#include <functional>
#include <map>
#include <set>

#include "zol/core/growth.hpp"
#include "zol/core/kinds.hpp"

namespace zol {

/// Edge/tuple probabilities p_{t,n} per kind.
///  P0: constant q_t.
///  P1: arbitrary (t, n) -> p.
///  P2: q_t on kinds in I0, q_t / g(n) on kinds in I1.
class ProbabilityProfile {
 public:
  enum class Class { P0, P1, P2 };
  using Function = std::function<double(int kind_id, int n)>;

  static ProbabilityProfile p0(std::map<int, double> q);
  static ProbabilityProfile p1(Function f);
  static ProbabilityProfile p2(std::map<int, double> q, std::set<int> scaled, GrowthFunctions gf);

  Class profile_class() const noexcept { return class_; }
  double probability(int kind_id, int n) const;
  bool covers(const KindSequence& sig) const;

  /// The same probabilities viewed one class up (P0 -> P2 with I1 empty,
  /// anything -> P1).
  ProbabilityProfile as_p2() const;
  ProbabilityProfile as_p1() const;

  /// True when every covered probability lies strictly inside (0,1).
  bool strict() const;

 private:
  Class class_ = Class::P0;
  std::map<int, double> q_;
  std::set<int> scaled_;
  GrowthFunctions gf_;
  Function f_;
};

}  // namespace zol
