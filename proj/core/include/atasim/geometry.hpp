#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace atasim {

using Address = std::uint64_t;
using Cycle = std::uint64_t;

// Shape of one set-associative sector cache. All sizes in bytes.
struct CacheGeometry {
  std::uint64_t capacity_bytes = 65536;
  std::uint32_t line_size = 128;
  std::uint32_t sector_size = 32;
  std::uint32_t ways = 64;
  std::uint32_t data_banks = 4;

  std::uint64_t sets() const { return capacity_bytes / (std::uint64_t{ways} * line_size); }
  std::uint32_t sectors_per_line() const { return line_size / sector_size; }
  std::uint64_t lines() const { return capacity_bytes / line_size; }

  // Empty when the geometry is usable; otherwise one message per violated rule.
  // `field` prefixes the messages (e.g. "l1_geometry").
  std::vector<std::string> violations(const std::string& field) const;

  bool operator==(const CacheGeometry&) const = default;
};

// Address decomposition. The set index is a plain modulo of the line address.
struct AddressParts {
  std::uint64_t tag = 0;
  std::uint64_t set_index = 0;
  std::uint32_t sector_index = 0;
  std::uint64_t line_address = 0;
  std::uint32_t byte_offset = 0;

  bool operator==(const AddressParts&) const = default;
};

AddressParts decode_address(Address address, const CacheGeometry& geometry);

// Inverse of decode_address.
Address recompose_address(const AddressParts& parts, const CacheGeometry& geometry);

inline std::uint64_t line_of(Address address, const CacheGeometry& geometry) {
  return address / geometry.line_size;
}

}  // namespace atasim
