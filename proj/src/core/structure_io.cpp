#include "zol/core/structure_io.hpp"

#include <cstdio>

#include "zol/core/error.hpp"

namespace zol::io {

Json kinds_to_json(const KindSequence& sig) {
  Json arr = Json::array();
  for (const auto& k : sig.kinds())
    arr.push_back({{"id", k.id}, {"arity", k.arity}, {"generators", k.generators}});
  return arr;
}

KindSequence kinds_from_json(const Json& j) {
  std::vector<Kind> kinds;
  for (const auto& e : j) {
    Kind k;
    k.id = e.at("id").get<int>();
    k.arity = e.at("arity").get<int>();
    if (e.contains("generators")) k.generators = e.at("generators").get<std::vector<Perm>>();
    kinds.push_back(std::move(k));
  }
  return KindSequence(std::move(kinds));
}

Json structure_to_json(const Structure& m) {
  Json rel = Json::object();
  for (std::size_t i = 0; i < m.signature().size(); ++i)
    rel[std::to_string(m.signature()[i].id)] = m.tuples(i);
  return {{"n", m.size()}, {"kinds", kinds_to_json(m.signature())}, {"relations", rel}};
}

Structure structure_from_json(const Json& j) {
  Structure m(kinds_from_json(j.at("kinds")), j.at("n").get<int>());
  if (j.contains("relations"))
    for (auto& [key, tuples] : j.at("relations").items()) {
      auto idx = m.signature().index_of(std::stoi(key));
      if (!idx) throw InvalidArgument("relations reference unknown kind " + key);
      for (const auto& t : tuples) m.set(*idx, t.get<Tuple>(), true);
    }
  return m;
}

Json growth_to_json(const GrowthFunctions& gf) {
  switch (gf.mode()) {
    case GrowthFunctions::Mode::PaperDefault:
      return {{"mode", "default"}};
    case GrowthFunctions::Mode::Constant:
      return {{"mode", "constant"}, {"h", gf.constant_value()}};
    case GrowthFunctions::Mode::Table: {
      Json steps = Json::array();
      for (auto& [n, h] : gf.steps()) steps.push_back({n, h});
      return {{"mode", "table"}, {"steps", steps}};
    }
  }
  return {};
}

GrowthFunctions growth_from_json(const Json& j) {
  const std::string mode = j.value("mode", "default");
  if (mode == "default") return GrowthFunctions::paper_default();
  if (mode == "constant") return GrowthFunctions::constant(j.at("h").get<double>());
  if (mode == "table") {
    std::map<std::uint64_t, double> steps;
    for (const auto& s : j.at("steps")) steps[s.at(0).get<std::uint64_t>()] = s.at(1).get<double>();
    return GrowthFunctions::table(std::move(steps));
  }
  throw InvalidArgument("unknown growth mode '" + mode + "'");
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace zol::io
