#include "ddr/index_io.hpp"

#include <chrono>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "ddr/errors.hpp"
#include "ddr/rng.hpp"

namespace ddr {

namespace {

constexpr char kMagic[6] = {'D', 'D', 'R', 'I', 'X', '\x01'};
constexpr std::uint32_t kFormatVersion = 1;
constexpr std::uint32_t kAbsentField = 0xFFFFFFFFu;

void append_u32(std::string& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void append_u64(std::string& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void append_field(std::string& buf, const std::optional<std::string>& f) {
  if (!f) {
    append_u32(buf, kAbsentField);
    return;
  }
  append_u32(buf, static_cast<std::uint32_t>(f->size()));
  buf += *f;
}

struct Cursor {
  const std::string& data;
  std::size_t pos = 0;

  void require(std::size_t n) const {
    if (n > data.size() - pos)
      raise(ErrorCode::TruncatedFile,
            "index file ends early: need " + std::to_string(n) + " bytes at offset " +
                std::to_string(pos));
  }
  std::uint32_t u32() {
    require(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data[pos + i])) << (8 * i);
    pos += 4;
    return v;
  }
  std::uint64_t u64() {
    require(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data[pos + i])) << (8 * i);
    pos += 8;
    return v;
  }
  std::string bytes(std::size_t n) {
    require(n);
    std::string s = data.substr(pos, n);
    pos += n;
    return s;
  }
};

std::optional<std::string> read_field(Cursor& c) {
  std::uint32_t len = c.u32();
  if (len == kAbsentField) return std::nullopt;
  return c.bytes(len);
}

std::int64_t now_unix_seconds() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

}  // namespace

void save_index(const DependencyIndex& index, std::ostream& out) {
  std::string buf;
  buf.reserve(index.text().size() + 8 * index.suffix_array().size() +
              8 * index.item_offsets().size() + 64);
  buf.append(kMagic, sizeof kMagic);
  append_u32(buf, kFormatVersion);
  append_u64(buf, index.text().size());
  buf += index.text();
  append_u64(buf, index.suffix_array().size());
  for (std::uint64_t v : index.suffix_array()) append_u64(buf, v);
  append_u64(buf, index.item_offsets().size());
  for (std::uint64_t v : index.item_offsets()) append_u64(buf, v);
  for (const auto& item : index.items()) {
    append_u32(buf, static_cast<std::uint32_t>(item.fqn.size()));
    buf += item.fqn;
    append_field(buf, item.kind);
    append_field(buf, item.signature);
    append_field(buf, item.doc);
  }
  append_u64(buf, fnv1a64(buf.data(), buf.size()));
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) raise(ErrorCode::IoError, "failed to write index file");
}

DependencyIndex load_index(std::istream& in) {
  std::string data;
  {
    std::ostringstream ss;
    ss << in.rdbuf();
    data = std::move(ss).str();
  }

  Cursor c{data};
  c.require(sizeof kMagic);
  if (std::memcmp(data.data(), kMagic, sizeof kMagic) != 0)
    raise(ErrorCode::BadMagic, "not an index file (bad magic)");
  c.pos = sizeof kMagic;

  std::uint32_t version = c.u32();
  if (version != kFormatVersion)
    raise(ErrorCode::UnsupportedVersion,
          "index format version " + std::to_string(version) + " not supported");

  DependencyIndex idx;
  std::uint64_t text_bytes = c.u64();
  idx.text_ = c.bytes(text_bytes);
  std::uint64_t sa_len = c.u64();
  // Guard the reserve: a corrupt length must not trigger a huge allocation.
  if (sa_len > (data.size() - c.pos) / 8)
    raise(ErrorCode::TruncatedFile, "suffix array length exceeds file size");
  idx.sa_.reserve(sa_len);
  for (std::uint64_t i = 0; i < sa_len; ++i) idx.sa_.push_back(c.u64());
  std::uint64_t item_count = c.u64();
  if (item_count > (data.size() - c.pos) / 8)
    raise(ErrorCode::TruncatedFile, "item count exceeds file size");
  idx.item_offsets_.reserve(item_count);
  for (std::uint64_t i = 0; i < item_count; ++i) idx.item_offsets_.push_back(c.u64());
  idx.items_.reserve(item_count);
  for (std::uint64_t i = 0; i < item_count; ++i) {
    LibraryItem item;
    std::uint32_t fqn_len = c.u32();
    if (fqn_len == kAbsentField)
      raise(ErrorCode::TruncatedFile, "item " + std::to_string(i) + " has no fqn");
    item.fqn = c.bytes(fqn_len);
    item.kind = read_field(c);
    item.signature = read_field(c);
    item.doc = read_field(c);
    idx.items_.push_back(std::move(item));
  }

  std::size_t payload_end = c.pos;
  std::uint64_t stored = c.u64();
  if (c.pos != data.size())
    raise(ErrorCode::TruncatedFile, "unexpected trailing bytes after checksum");
  if (stored != fnv1a64(data.data(), payload_end))
    raise(ErrorCode::ChecksumMismatch, "index file checksum mismatch");

  idx.built_at_ = now_unix_seconds();
  return idx;
}

void save_index_file(const DependencyIndex& index, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(ErrorCode::IoError, "cannot open for writing: " + path);
  save_index(index, out);
}

DependencyIndex load_index_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::IoError, "cannot open index file: " + path);
  return load_index(in);
}

}  // namespace ddr
