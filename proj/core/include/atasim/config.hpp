#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "atasim/geometry.hpp"

namespace atasim {

enum class Architecture : std::uint8_t { Private, RemoteSharing, DecoupledSharing, AtaCache };

inline constexpr Architecture kAllArchitectures[] = {
    Architecture::Private, Architecture::RemoteSharing, Architecture::DecoupledSharing,
    Architecture::AtaCache};

// Short names used on the command line and in config files: private|remote|decoupled|ata.
std::string_view to_string(Architecture arch);
std::optional<Architecture> parse_architecture(std::string_view name);

struct SimConfig {
  std::uint32_t num_cores = 30;
  std::uint32_t cores_per_cluster = 10;
  CacheGeometry l1_geometry{};
  std::uint32_t l2_partitions = 24;
  CacheGeometry l2_geometry{131072, 128, 32, 16, 1};
  std::uint32_t t_l1_local = 32;
  std::uint32_t t_tag = 8;
  std::uint32_t t_data = 24;
  std::uint32_t t_xbar_hop = 5;
  std::uint32_t t_l2 = 188;
  std::uint32_t t_mem = 300;
  std::uint32_t flit_bytes = 40;
  std::uint32_t max_outstanding_per_core = 64;
  std::uint32_t mshr_entries = 32;
  Architecture architecture = Architecture::Private;
  std::uint64_t seed = 1;

  std::uint32_t clusters() const { return num_cores / cores_per_cluster; }
  std::uint32_t cluster_of(std::uint32_t core) const { return core / cores_per_cluster; }
  std::uint32_t index_in_cluster(std::uint32_t core) const { return core % cores_per_cluster; }

  bool operator==(const SimConfig&) const = default;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

// Every violated invariant, each naming the field and the observed/expected values.
std::vector<std::string> config_violations(const SimConfig& config);

// Returns the config unchanged when valid; throws ConfigError listing all violations.
SimConfig validate_config(const SimConfig& config);

// JSON object with SimConfig's field names. Missing keys keep their defaults, unknown
// keys are rejected. Throws ConfigError.
SimConfig config_from_json(std::string_view text);
SimConfig load_config(const std::string& path);
std::string config_to_json(const SimConfig& config);

std::string_view library_version();

// Fields that can be set from a numeric string (used by the sweep runner).
bool is_config_parameter(std::string_view name);
void set_config_parameter(SimConfig& config, std::string_view name, double value);

}  // namespace atasim
