#include "zol/quantifier/quantifier.hpp"

#include <mutex>

#include "zol/core/error.hpp"

namespace zol::quantifier {

const char* to_string(ProbMode m) { return m == ProbMode::HOfSize ? "h" : "g-inverse"; }

ProbMode prob_mode_from_string(const std::string& s) {
  if (s == "h") return ProbMode::HOfSize;
  if (s == "g-inverse") return ProbMode::GInverse;
  throw InvalidArgument("unknown probability mode '" + s + "' (expected h or g-inverse)");
}

QuantifierClass::QuantifierClass(QuantifierConfig config) : config_(std::move(config)) {
  if (config_.iota != 1 && config_.iota != 2) throw InvalidArgument("iota must be 1 or 2");
}

double QuantifierClass::probability(std::uint64_t n) const {
  n = std::max<std::uint64_t>(n, 1);
  return config_.mode == ProbMode::HOfSize ? config_.gf.h(n) : 1.0 / config_.gf.g(n);
}

std::size_t QuantifierClass::cache_size() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

MembershipDetail QuantifierClass::compute(const Graph& h, CanonicalForm canon) const {
  MembershipDetail d;
  d.canon = std::move(canon);
  d.low = config_.iota == 1 ? !lowness::classify_low_1(h, config_.gf, config_.budget).high()
                            : !lowness::classify_low_2(h, config_.budget).high();
  if (d.low) return d;
  d.probability = probability(static_cast<std::uint64_t>(h.size()));
  Hasher hs(config_.seed);
  hs.add(tag("membership")).add(static_cast<std::uint64_t>(d.canon.n));
  // Pack the triangle into words so the hash sees every bit.
  std::uint64_t word = 0;
  int filled = 0;
  for (char c : d.canon.bits) {
    word = (word << 1) | (c == '1' ? 1u : 0u);
    if (++filled == 64) {
      hs.add(word);
      word = 0;
      filled = 0;
    }
  }
  hs.add(word).add(static_cast<std::uint64_t>(filled));
  d.draw = hs.uniform();
  d.member = d.draw < d.probability;
  return d;
}

MembershipDetail QuantifierClass::detail(const Graph& h) const {
  CanonicalForm canon = canonical_form(h);
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(canon);
    if (it != cache_.end()) return it->second;
  }
  MembershipDetail d = compute(h, std::move(canon));
  std::unique_lock lock(mutex_);
  cache_.emplace(d.canon, d);
  return d;
}

std::vector<PrefixEntry> sample_tbar_prefix(const QuantifierClass& q, std::size_t m_max) {
  std::vector<PrefixEntry> out;
  if (m_max == 0) return out;
  enumerate_graphs(kExactCap, [&](const CanonicalForm& c) {
    auto d = q.detail(c.to_graph());
    out.push_back({out.size(), c, d.low, d.member});
    return out.size() < m_max;
  });
  return out;
}

Json prefix_to_json(const std::vector<PrefixEntry>& prefix) {
  Json arr = Json::array();
  for (const auto& e : prefix)
    arr.push_back({{"m", e.m}, {"n_nodes", e.canon.n}, {"canon_hex", e.canon.hex()}, {"low", e.low}, {"t", e.t ? 1 : 0}});
  return arr;
}

}  // namespace zol::quantifier
