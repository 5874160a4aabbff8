#include "zol/core/draw.hpp"

#include "zol/core/error.hpp"

namespace zol {

double orbit_uniform(Seed seed, int kind_id, std::span<const int> representative) {
  Hasher h(seed);
  h.add(tag("orbit")).add(static_cast<std::uint64_t>(kind_id)).add(representative);
  return h.uniform();
}

Structure draw_structure(const KindSequence& sig, const ProbabilityProfile& profile, int n, Seed seed) {
  if (!profile.covers(sig)) throw InvalidArgument("profile does not cover every kind");
  if (n < 0) throw InvalidArgument("negative universe size");
  if (n == 0)
    for (const auto& k : sig.kinds())
      if (k.arity >= 1) throw EmptyUniverse();
  Structure m(sig, n);
  for (std::size_t i = 0; i < sig.size(); ++i) {
    const double p = profile.probability(sig[i].id, n);
    draw_kind_into(
        m, i, seed, [](const Tuple&) { return true; }, [p](const Tuple&) { return p; });
  }
  return m;
}

Structure draw_random_graph(int n, double q, Seed seed) {
  return draw_structure(KindSequence::graph(), ProbabilityProfile::p0({{0, q}}), n, seed);
}

}  // namespace zol
