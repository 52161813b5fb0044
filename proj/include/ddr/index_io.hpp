#pragma once

#include <iosfwd>
#include <string>

#include "ddr/index.hpp"

namespace ddr {

// Versioned little-endian binary format, FNV-1a checksummed:
//   magic "DDRIX\x01" | u32 version | u64 text_bytes | text
//   | u64 sa_len | sa entries (u64) | u64 item_count | item_offsets (u64)
//   | per item: u32-length-prefixed fqn, kind, signature, doc
//     (absent optional field = length 0xFFFFFFFF)
//   | u64 FNV-1a of all preceding bytes
// The build timestamp is deliberately not part of the format, so identical
// item lists serialize byte-identically.
void save_index(const DependencyIndex& index, std::ostream& out);
DependencyIndex load_index(std::istream& in);

void save_index_file(const DependencyIndex& index, const std::string& path);
DependencyIndex load_index_file(const std::string& path);

}  // namespace ddr
