#include "zol/core/profile.hpp"

#include "zol/core/error.hpp"

namespace zol {

namespace {
void check_unit(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("probability outside [0,1]");
}
}  // namespace

ProbabilityProfile ProbabilityProfile::p0(std::map<int, double> q) {
  for (auto& [t, p] : q) check_unit(p);
  ProbabilityProfile pr;
  pr.class_ = Class::P0;
  pr.q_ = std::move(q);
  return pr;
}

ProbabilityProfile ProbabilityProfile::p1(Function f) {
  if (!f) throw InvalidArgument("empty probability function");
  ProbabilityProfile pr;
  pr.class_ = Class::P1;
  pr.f_ = std::move(f);
  return pr;
}

ProbabilityProfile ProbabilityProfile::p2(std::map<int, double> q, std::set<int> scaled,
                                          GrowthFunctions gf) {
  for (auto& [t, p] : q) check_unit(p);
  for (int t : scaled)
    if (!q.count(t)) throw InvalidArgument("scaled kind without base probability");
  ProbabilityProfile pr;
  pr.class_ = Class::P2;
  pr.q_ = std::move(q);
  pr.scaled_ = std::move(scaled);
  pr.gf_ = gf;
  return pr;
}

double ProbabilityProfile::probability(int kind_id, int n) const {
  if (class_ == Class::P1) {
    double p = f_(kind_id, n);
    check_unit(p);
    return p;
  }
  auto it = q_.find(kind_id);
  if (it == q_.end()) throw InvalidArgument("profile does not cover kind " + std::to_string(kind_id));
  if (class_ == Class::P2 && scaled_.count(kind_id))
    return it->second / gf_.g(static_cast<std::uint64_t>(n < 1 ? 1 : n));
  return it->second;
}

bool ProbabilityProfile::covers(const KindSequence& sig) const {
  if (class_ == Class::P1) return true;
  for (const auto& k : sig.kinds())
    if (!q_.count(k.id)) return false;
  return true;
}

ProbabilityProfile ProbabilityProfile::as_p2() const {
  if (class_ != Class::P0) return *this;
  return p2(q_, {}, GrowthFunctions::paper_default());
}

ProbabilityProfile ProbabilityProfile::as_p1() const {
  if (class_ == Class::P1) return *this;
  auto self = *this;
  return p1([self](int t, int n) { return self.probability(t, n); });
}

bool ProbabilityProfile::strict() const {
  for (auto& [t, p] : q_)
    if (!(p > 0.0 && p < 1.0)) return false;
  return true;
}

}  // namespace zol
