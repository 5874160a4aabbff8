#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zol/core/rng.hpp"
#include "zol/interp/interpreted.hpp"
#include "zol/interp/scheme.hpp"

namespace zol::interp {

enum class Tri { False, True, Undetermined };
std::string to_string(Tri t);

/// Sampling plan for the checks that need random hosts: `trials` hosts
/// at every size, every tuple of every kind drawn with probability q.
struct MonteCarlo {
  std::vector<int> sizes{8, 12, 16};
  int trials = 20;
  double q = 0.5;
  Seed seed = 1;
  std::uint64_t type_budget = 50'000'000;
};

struct Verdict {
  Tri value = Tri::Undetermined;
  std::string clause;  // which clause decided it, or "none"
  Json evidence = Json::object();
};

bool is_trivial(const Scheme& s);

/// φ_2 ∧ "z̄ repetition-free" has no model.
bool is_degenerated(const Scheme& s, const KindSequence& sig);

/// Every guarded node formula has exactly one satisfying atomic type of
/// x̄_i⌢z̄ (active parameters only).
bool is_complete(const Scheme& s, const KindSequence& sig);

/// 1-weak: trivial, degenerated, or some block pair has a homogeneous
/// cross pattern (edge or non-edge throughout) over tuples that agree
/// with an anchor on a proper subset of positions.
Verdict is_one_weak(const Scheme& s, const KindSequence& sig, const MonteCarlo& mc = {});

/// 2-weak: trivial, degenerated, some block of length >= 2, or the cross
/// pattern between two length-1 blocks is homogeneous. When mc.trials > 0
/// the evidence also carries sampled edge/non-edge counts.
Verdict is_two_weak(const Scheme& s, const KindSequence& sig, const MonteCarlo& mc = {});

/// False when some active parameters can be made inert without changing
/// any interpreted graph (evidence "droppable"). True when sampling shows
/// every parameter changes some graph. Undetermined otherwise.
Verdict is_reduced(const Scheme& s, const KindSequence& sig, const MonteCarlo& mc = {});

/// Complete reduced schemes whose parameter formulas are mutually
/// exclusive and whose graphs cover those of `s`. Throws DegenerateInput
/// for degenerated schemes. Returns {s} when s is already complete and
/// has no droppable parameter.
std::vector<Scheme> decompose_to_complete_reduced(const Scheme& s, const KindSequence& sig);

struct IsoVerdict {
  Tri value = Tri::False;
  Perm blocks;  // π: block i of the first is block blocks[i] of the second
  Perm params;  // ϰ: parameter l of the first is parameter params[l] of the second
  Json evidence = Json::object();
};

IsoVerdict explicitly_isomorphic(const Scheme& a, const Scheme& b, const KindSequence& sig,
                                 const MonteCarlo& mc = {});

/// All parameter permutations ϰ under which s is explicitly isomorphic
/// to itself, identity first.
std::vector<Perm> scheme_symmetry_group(const Scheme& s, const KindSequence& sig);

/// Invariance, symmetry and anti-reflexivity of the formulas, checked
/// over all atomic types. Empty when the scheme is well formed.
std::vector<std::string> well_formedness_violations(const Scheme& s, const KindSequence& sig);

/// A random host in which every kind's tuples are drawn with probability q.
Structure sample_host(const KindSequence& sig, int n, double q, Seed seed);

/// A uniformly chosen parameter tuple accepted by the scheme, if any.
std::optional<Tuple> sample_params(const Structure& m, const CompiledScheme& cs, Seed seed);

}  // namespace zol::interp
