#include "zol/core/growth.hpp"

#include <cmath>
#include <sstream>

#include "zol/core/error.hpp"

namespace zol {

GrowthFunctions GrowthFunctions::constant(double h) {
  if (!(h > 0.0 && h <= 1.0)) throw InvalidArgument("constant h must lie in (0,1]");
  GrowthFunctions gf;
  gf.mode_ = Mode::Constant;
  gf.constant_ = h;
  return gf;
}

GrowthFunctions GrowthFunctions::table(std::map<std::uint64_t, double> steps) {
  for (auto& [n, v] : steps)
    if (!(v > 0.0 && v <= 1.0)) throw InvalidArgument("table h values must lie in (0,1]");
  GrowthFunctions gf;
  gf.mode_ = Mode::Table;
  gf.steps_ = std::move(steps);
  return gf;
}

double GrowthFunctions::h(std::uint64_t n) const {
  switch (mode_) {
    case Mode::PaperDefault:
      if (n <= 16) return 1.0;
      return 1.0 / std::log2(std::log2(static_cast<double>(n)));
    case Mode::Constant:
      return constant_;
    case Mode::Table: {
      auto it = steps_.upper_bound(n);
      if (it == steps_.begin()) return 1.0;
      return std::prev(it)->second;
    }
  }
  return 1.0;
}

double GrowthFunctions::g(std::uint64_t n) const {
  return std::pow(static_cast<double>(n), h(n));
}

std::string GrowthFunctions::describe() const {
  std::ostringstream os;
  switch (mode_) {
    case Mode::PaperDefault:
      os << "default";
      break;
    case Mode::Constant:
      os << "constant(" << constant_ << ")";
      break;
    case Mode::Table:
      os << "table(";
      for (auto it = steps_.begin(); it != steps_.end(); ++it)
        os << (it == steps_.begin() ? "" : ",") << it->first << ":" << it->second;
      os << ")";
      break;
  }
  return os.str();
}

std::uint64_t required_size(double threshold) {
  double r = std::round(threshold);
  double s = std::fabs(threshold - r) < 1e-9 ? r : std::ceil(threshold);
  if (s < 1.0) return 1;
  return static_cast<std::uint64_t>(s);
}

}  // namespace zol
