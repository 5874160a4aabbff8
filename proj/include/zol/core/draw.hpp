#pragma once

#include "zol/core/profile.hpp"
#include "zol/core/rng.hpp"
#include "zol/core/structure.hpp"

namespace zol {

/// Uniform in [0,1) attached to one orbit of one kind; the same value is
/// seen by every sampler that shares `seed`.
double orbit_uniform(Seed seed, int kind_id, std::span<const int> representative);

/// M_{s,p,n}: one Bernoulli(p_{t,n}) draw per K_t-orbit of repetition-free
/// tuples, keyed by (seed, kind id, lexicographically minimal member).
Structure draw_structure(const KindSequence& sig, const ProbabilityProfile& profile, int n, Seed seed);

/// G_{n,q}, the graph-kind specialization.
Structure draw_random_graph(int n, double q, Seed seed);

/// Draws a single kind into an existing structure using probability p
/// for every orbit whose representative passes `eligible`.
template <class Eligible, class Prob>
void draw_kind_into(Structure& m, std::size_t kind_index, Seed seed, Eligible&& eligible, Prob&& prob) {
  const Kind& k = m.signature()[kind_index];
  for_each_injective_tuple(m.size(), k.arity, [&](const Tuple& t) {
    if (!is_orbit_minimum(t, k.group)) return;
    if (!eligible(t)) return;
    if (orbit_uniform(seed, k.id, t) < prob(t)) m.set_orbit(kind_index, t, true);
  });
}

}  // namespace zol
