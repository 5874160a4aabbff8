#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace zol {

/// The slowly vanishing exponent h and the derived g(n) = n^h(n).
///
/// PaperDefault: h(n) = 1 for n <= 16 and 1/log2(log2 n) above. The
/// override modes exist because at the default every graph with at most
/// 16 nodes is trivially low, which leaves nothing to observe at desk
/// scale.
class GrowthFunctions {
 public:
  enum class Mode { PaperDefault, Constant, Table };

  static GrowthFunctions paper_default() { return GrowthFunctions{}; }
  static GrowthFunctions constant(double h);
  /// Step function: h(n) is the value at the largest key <= n, or 1 below
  /// the first key.
  static GrowthFunctions table(std::map<std::uint64_t, double> steps);

  Mode mode() const noexcept { return mode_; }
  double h(std::uint64_t n) const;
  double g(std::uint64_t n) const;
  std::pair<double, double> eval(std::uint64_t n) const { return {h(n), g(n)}; }

  /// |H|^h(|H|), the size bound in the lowness definitions.
  double threshold(std::uint64_t n) const { return g(n); }

  std::string describe() const;
  const std::map<std::uint64_t, double>& steps() const noexcept { return steps_; }
  double constant_value() const noexcept { return constant_; }

 private:
  Mode mode_ = Mode::PaperDefault;
  double constant_ = 1.0;
  std::map<std::uint64_t, double> steps_;
};

/// Integer reading of "|A| >= t": the ceiling of t, except that values
/// within 1e-9 of an integer count as that integer. Never below 1.
std::uint64_t required_size(double threshold);

}  // namespace zol
