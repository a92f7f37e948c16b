#include "atasim/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace atasim {

using nlohmann::json;

std::string_view to_string(Architecture arch) {
  switch (arch) {
    case Architecture::Private: return "private";
    case Architecture::RemoteSharing: return "remote";
    case Architecture::DecoupledSharing: return "decoupled";
    case Architecture::AtaCache: return "ata";
  }
  return "unknown";
}

std::optional<Architecture> parse_architecture(std::string_view name) {
  for (Architecture a : kAllArchitectures) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += "; ";
    out += s;
  }
  return out;
}

void positive(std::vector<std::string>& out, const char* name, std::uint64_t v) {
  if (v == 0) out.push_back(std::string(name) + ": must be positive, got 0");
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error("invalid configuration: " + join(problems)),
      problems_(std::move(problems)) {}

std::vector<std::string> config_violations(const SimConfig& c) {
  std::vector<std::string> out;
  positive(out, "num_cores", c.num_cores);
  positive(out, "cores_per_cluster", c.cores_per_cluster);
  if (c.num_cores > 0 && c.cores_per_cluster > 0 && c.num_cores % c.cores_per_cluster != 0) {
    out.push_back("num_cores: " + std::to_string(c.num_cores) +
                  " not divisible by cores_per_cluster " + std::to_string(c.cores_per_cluster));
  }
  if (c.cores_per_cluster > 64) {
    out.push_back("cores_per_cluster: at most 64 supported, got " +
                  std::to_string(c.cores_per_cluster));
  }
  for (auto& v : c.l1_geometry.violations("l1_geometry")) out.push_back(std::move(v));
  for (auto& v : c.l2_geometry.violations("l2_geometry")) out.push_back(std::move(v));
  if (c.l1_geometry.line_size != c.l2_geometry.line_size ||
      c.l1_geometry.sector_size != c.l2_geometry.sector_size) {
    out.push_back("l2_geometry: line_size/sector_size (" + std::to_string(c.l2_geometry.line_size) +
                  "/" + std::to_string(c.l2_geometry.sector_size) + ") must match l1_geometry (" +
                  std::to_string(c.l1_geometry.line_size) + "/" +
                  std::to_string(c.l1_geometry.sector_size) + ")");
  }
  positive(out, "l2_partitions", c.l2_partitions);
  positive(out, "t_tag", c.t_tag);
  positive(out, "t_data", c.t_data);
  positive(out, "t_l2", c.t_l2);
  positive(out, "flit_bytes", c.flit_bytes);
  positive(out, "max_outstanding_per_core", c.max_outstanding_per_core);
  positive(out, "mshr_entries", c.mshr_entries);
  if (std::uint64_t{c.t_tag} + c.t_data != c.t_l1_local) {
    out.push_back("t_tag + t_data != t_l1_local: " + std::to_string(c.t_tag) + " + " +
                  std::to_string(c.t_data) + " = " + std::to_string(c.t_tag + c.t_data) +
                  ", expected " + std::to_string(c.t_l1_local));
  }
  return out;
}

SimConfig validate_config(const SimConfig& config) {
  auto problems = config_violations(config);
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return config;
}

namespace {

template <typename T>
void read_uint(const json& j, const char* key, T& field, std::vector<std::string>& errs,
               const std::string& prefix) {
  auto it = j.find(key);
  if (it == j.end()) return;
  if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<std::int64_t>() >= 0)) {
    errs.push_back(prefix + key + ": expected a non-negative integer");
    return;
  }
  field = it->get<T>();
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                std::vector<std::string>& errs, const std::string& prefix) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known) errs.push_back(prefix + it.key() + ": unknown key");
  }
}

void read_geometry(const json& j, const char* key, CacheGeometry& g,
                   std::vector<std::string>& errs) {
  auto it = j.find(key);
  if (it == j.end()) return;
  const std::string prefix = std::string(key) + ".";
  if (!it->is_object()) {
    errs.push_back(std::string(key) + ": expected an object");
    return;
  }
  check_keys(*it, {"capacity_bytes", "line_size", "sector_size", "ways", "data_banks"}, errs,
             prefix);
  read_uint(*it, "capacity_bytes", g.capacity_bytes, errs, prefix);
  read_uint(*it, "line_size", g.line_size, errs, prefix);
  read_uint(*it, "sector_size", g.sector_size, errs, prefix);
  read_uint(*it, "ways", g.ways, errs, prefix);
  read_uint(*it, "data_banks", g.data_banks, errs, prefix);
}

json geometry_json(const CacheGeometry& g) {
  return json{{"capacity_bytes", g.capacity_bytes},
              {"line_size", g.line_size},
              {"sector_size", g.sector_size},
              {"ways", g.ways},
              {"data_banks", g.data_banks}};
}

}  // namespace

SimConfig config_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("config is not valid JSON: ") + e.what()});
  }
  if (!j.is_object()) throw ConfigError({"config: expected a JSON object"});

  std::vector<std::string> errs;
  check_keys(j,
             {"num_cores", "cores_per_cluster", "l1_geometry", "l2_partitions", "l2_geometry",
              "t_l1_local", "t_tag", "t_data", "t_xbar_hop", "t_l2", "t_mem", "flit_bytes",
              "max_outstanding_per_core", "mshr_entries", "architecture", "seed"},
             errs, "");
  SimConfig c;
  read_uint(j, "num_cores", c.num_cores, errs, "");
  read_uint(j, "cores_per_cluster", c.cores_per_cluster, errs, "");
  read_geometry(j, "l1_geometry", c.l1_geometry, errs);
  read_uint(j, "l2_partitions", c.l2_partitions, errs, "");
  read_geometry(j, "l2_geometry", c.l2_geometry, errs);
  read_uint(j, "t_l1_local", c.t_l1_local, errs, "");
  read_uint(j, "t_tag", c.t_tag, errs, "");
  read_uint(j, "t_data", c.t_data, errs, "");
  read_uint(j, "t_xbar_hop", c.t_xbar_hop, errs, "");
  read_uint(j, "t_l2", c.t_l2, errs, "");
  read_uint(j, "t_mem", c.t_mem, errs, "");
  read_uint(j, "flit_bytes", c.flit_bytes, errs, "");
  read_uint(j, "max_outstanding_per_core", c.max_outstanding_per_core, errs, "");
  read_uint(j, "mshr_entries", c.mshr_entries, errs, "");
  read_uint(j, "seed", c.seed, errs, "");
  if (auto it = j.find("architecture"); it != j.end()) {
    auto arch = it->is_string() ? parse_architecture(it->get<std::string>()) : std::nullopt;
    if (arch) {
      c.architecture = *arch;
    } else {
      errs.push_back("architecture: expected one of private|remote|decoupled|ata");
    }
  }
  if (!errs.empty()) throw ConfigError(std::move(errs));
  return validate_config(c);
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file: " + path});
  std::stringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

std::string config_to_json(const SimConfig& c) {
  json j{{"num_cores", c.num_cores},
         {"cores_per_cluster", c.cores_per_cluster},
         {"l1_geometry", geometry_json(c.l1_geometry)},
         {"l2_partitions", c.l2_partitions},
         {"l2_geometry", geometry_json(c.l2_geometry)},
         {"t_l1_local", c.t_l1_local},
         {"t_tag", c.t_tag},
         {"t_data", c.t_data},
         {"t_xbar_hop", c.t_xbar_hop},
         {"t_l2", c.t_l2},
         {"t_mem", c.t_mem},
         {"flit_bytes", c.flit_bytes},
         {"max_outstanding_per_core", c.max_outstanding_per_core},
         {"mshr_entries", c.mshr_entries},
         {"architecture", std::string(to_string(c.architecture))},
         {"seed", c.seed}};
  return j.dump(2);
}

namespace {

struct NumericField {
  const char* name;
  std::uint32_t SimConfig::*member;
};

constexpr NumericField kNumericFields[] = {
    {"num_cores", &SimConfig::num_cores},
    {"cores_per_cluster", &SimConfig::cores_per_cluster},
    {"l2_partitions", &SimConfig::l2_partitions},
    {"t_l1_local", &SimConfig::t_l1_local},
    {"t_tag", &SimConfig::t_tag},
    {"t_data", &SimConfig::t_data},
    {"t_xbar_hop", &SimConfig::t_xbar_hop},
    {"t_l2", &SimConfig::t_l2},
    {"t_mem", &SimConfig::t_mem},
    {"flit_bytes", &SimConfig::flit_bytes},
    {"max_outstanding_per_core", &SimConfig::max_outstanding_per_core},
    {"mshr_entries", &SimConfig::mshr_entries},
};

}  // namespace

bool is_config_parameter(std::string_view name) {
  for (const auto& f : kNumericFields) {
    if (name == f.name) return true;
  }
  return name == "seed";
}

void set_config_parameter(SimConfig& config, std::string_view name, double value) {
  if (value < 0 || std::floor(value) != value) {
    throw ConfigError({std::string(name) + ": expected a non-negative integer, got " +
                       std::to_string(value)});
  }
  if (name == "seed") {
    config.seed = static_cast<std::uint64_t>(value);
    return;
  }
  for (const auto& f : kNumericFields) {
    if (name == f.name) {
      config.*(f.member) = static_cast<std::uint32_t>(value);
      return;
    }
  }
  throw ConfigError({"unknown parameter: " + std::string(name)});
}

std::string_view library_version() { return ATASIM_VERSION; }

}  // namespace atasim
