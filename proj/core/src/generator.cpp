#include "atasim/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <type_traits>

namespace atasim {

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

class Zipf {
 public:
  Zipf(std::uint64_t n, double s) : cdf_(n) {
    double sum = 0;
    for (std::uint64_t r = 0; r < n; ++r) {
      sum += std::pow(static_cast<double>(r + 1), -s);
      cdf_[r] = sum;
    }
  }
  std::uint64_t draw(std::mt19937_64& rng) const {
    const double u = uniform01(rng) * cdf_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return std::min<std::uint64_t>(static_cast<std::uint64_t>(it - cdf_.begin()), cdf_.size() - 1);
  }

 private:
  std::vector<double> cdf_;
};

}  // namespace

std::vector<std::string> gen_param_violations(const GenParams& p) {
  std::vector<std::string> v;
  if (p.cores == 0) v.push_back("cores must be positive");
  if (!(p.shared_prob >= 0.0 && p.shared_prob <= 1.0)) {
    v.push_back("shared_prob must lie in [0,1], got " + std::to_string(p.shared_prob));
  }
  if (!(p.store_prob >= 0.0 && p.store_prob <= 1.0)) {
    v.push_back("store_prob must lie in [0,1], got " + std::to_string(p.store_prob));
  }
  if (p.shared_prob > 0.0 && p.lines_shared == 0) {
    v.push_back("lines_shared is 0 but shared_prob is " + std::to_string(p.shared_prob));
  }
  if (p.shared_prob < 1.0 && p.lines_private == 0) {
    v.push_back("lines_private is 0 but the private region has probability " +
                std::to_string(1.0 - p.shared_prob));
  }
  if (!(p.zipf_s >= 0.0)) v.push_back("zipf_s must be non-negative");
  if (p.stride == 0) v.push_back("stride must be positive");
  if (p.line_size == 0 || p.sector_size == 0 || p.line_size % p.sector_size != 0) {
    v.push_back("line_size must be a positive multiple of sector_size");
  } else {
    if (p.lines_private * p.line_size > kPrivateSpan) {
      v.push_back("lines_private exceeds the per-core private span of " +
                  std::to_string(kPrivateSpan / p.line_size) + " lines");
    }
    if (p.lines_shared * p.line_size > kPrivateBase - kSharedBase) {
      v.push_back("lines_shared overlaps the private regions");
    }
  }
  if (p.cores > (~Address{0} - kPrivateBase) / kPrivateSpan) v.push_back("too many cores");
  return v;
}

std::vector<TraceRecord> generate(const GenParams& p) {
  if (auto v = gen_param_violations(p); !v.empty()) throw ConfigError(std::move(v));
  const std::uint32_t per_inst = p.line_size / p.sector_size;
  const std::uint64_t insts = (p.requests_per_core + per_inst - 1) / per_inst;
  const Zipf zipf(std::max<std::uint64_t>(p.lines_shared, 1), p.zipf_s);

  std::vector<std::vector<TraceRecord>> per_core(p.cores);
  for (std::uint32_t c = 0; c < p.cores; ++c) {
    std::seed_seq seq{static_cast<std::uint32_t>(p.seed), static_cast<std::uint32_t>(p.seed >> 32), c};
    std::mt19937_64 rng(seq);
    std::uint64_t cursor = 0;
    auto& out = per_core[c];
    out.reserve(p.requests_per_core);
    for (std::uint64_t k = 0; k < insts; ++k) {
      const bool shared = uniform01(rng) < p.shared_prob;
      const bool store = uniform01(rng) < p.store_prob;
      Address line_base;
      AccessKind kind = AccessKind::Load;
      if (shared) {
        line_base = kSharedBase + zipf.draw(rng) * p.line_size;
      } else {
        line_base = kPrivateBase + c * kPrivateSpan + cursor * p.line_size;
        cursor = (cursor + p.stride) % p.lines_private;
        if (store) kind = AccessKind::Store;
      }
      const std::uint64_t inst_id = std::uint64_t{c} * insts + k;
      for (std::uint32_t s = 0; s < per_inst && out.size() < p.requests_per_core; ++s) {
        out.push_back({out.size(), c, kind, line_base + std::uint64_t{s} * p.sector_size, inst_id});
      }
    }
  }

  std::vector<TraceRecord> trace;
  trace.reserve(std::uint64_t{p.cores} * p.requests_per_core);
  for (std::uint64_t i = 0; i < p.requests_per_core; ++i) {
    for (std::uint32_t c = 0; c < p.cores; ++c) trace.push_back(per_core[c][i]);
  }
  return trace;
}

bool is_gen_parameter(const std::string& name) {
  static const char* const kNames[] = {"cores",        "lines_private", "lines_shared",
                                       "shared_prob",  "requests_per_core", "zipf_s",
                                       "stride",       "seed",          "store_prob"};
  return std::find(std::begin(kNames), std::end(kNames), name) != std::end(kNames);
}

void set_gen_parameter(GenParams& p, const std::string& name, double value) {
  auto count = [&](auto& field) {
    if (value < 0 || value != std::floor(value)) {
      throw ConfigError({name + " must be a non-negative integer, got " + std::to_string(value)});
    }
    field = static_cast<std::remove_reference_t<decltype(field)>>(value);
  };
  if (name == "cores") count(p.cores);
  else if (name == "lines_private") count(p.lines_private);
  else if (name == "lines_shared") count(p.lines_shared);
  else if (name == "shared_prob") p.shared_prob = value;
  else if (name == "requests_per_core") count(p.requests_per_core);
  else if (name == "zipf_s") p.zipf_s = value;
  else if (name == "stride") count(p.stride);
  else if (name == "seed") count(p.seed);
  else if (name == "store_prob") p.store_prob = value;
  else throw ConfigError({"unknown generator parameter " + name});
}

}  // namespace atasim
