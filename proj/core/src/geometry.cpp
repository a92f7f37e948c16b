#include "atasim/geometry.hpp"

#include <bit>

namespace atasim {

std::vector<std::string> CacheGeometry::violations(const std::string& field) const {
  std::vector<std::string> out;
  auto bad = [&](const std::string& name, const std::string& what) {
    out.push_back(field + "." + name + ": " + what);
  };
  if (line_size == 0) bad("line_size", "must be positive");
  if (sector_size == 0) bad("sector_size", "must be positive");
  if (ways == 0) bad("ways", "must be positive");
  if (data_banks == 0) bad("data_banks", "must be positive");
  if (capacity_bytes == 0) bad("capacity_bytes", "must be positive");
  if (!out.empty()) return out;

  if (line_size % sector_size != 0) {
    bad("line_size", "line_size " + std::to_string(line_size) +
                         " not divisible by sector_size " + std::to_string(sector_size));
  } else if (sectors_per_line() > 64) {
    bad("sector_size", "at most 64 sectors per line supported, got " +
                           std::to_string(sectors_per_line()));
  }
  const std::uint64_t way_bytes = std::uint64_t{ways} * line_size;
  if (capacity_bytes % way_bytes != 0) {
    bad("capacity_bytes", "capacity " + std::to_string(capacity_bytes) +
                              " is not sets x ways x line_size (ways x line_size = " +
                              std::to_string(way_bytes) + ")");
  } else if (!std::has_single_bit(sets())) {
    bad("capacity_bytes", "set count " + std::to_string(sets()) + " is not a power of two");
  }
  return out;
}

AddressParts decode_address(Address address, const CacheGeometry& geometry) {
  AddressParts parts;
  const std::uint64_t sets = geometry.sets();
  parts.line_address = address / geometry.line_size;
  parts.byte_offset = static_cast<std::uint32_t>(address % geometry.line_size);
  parts.sector_index = parts.byte_offset / geometry.sector_size;
  parts.set_index = parts.line_address % sets;
  parts.tag = parts.line_address / sets;
  return parts;
}

Address recompose_address(const AddressParts& parts, const CacheGeometry& geometry) {
  const std::uint64_t line = parts.tag * geometry.sets() + parts.set_index;
  return line * geometry.line_size + parts.byte_offset;
}

}  // namespace atasim
