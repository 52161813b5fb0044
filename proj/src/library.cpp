#include "ddr/library.hpp"

#include <fstream>
#include <istream>
#include <json.hpp>

#include "ddr/errors.hpp"
#include "ddr/text.hpp"

namespace ddr {

void validate_fqn(const std::string& fqn) {
  if (fqn.empty()) raise(ErrorCode::InvalidIdentifier, "identifier is empty");
  if (!text::valid_utf8(fqn))
    raise(ErrorCode::InvalidIdentifier, "identifier is not valid UTF-8: " + fqn);
  if (fqn.find('\x01') != std::string::npos)
    raise(ErrorCode::InvalidIdentifier, "identifier contains the 0x01 delimiter byte");
  if (fqn.front() == '.' || fqn.back() == '.' || fqn.find("..") != std::string::npos)
    raise(ErrorCode::InvalidIdentifier, "identifier has an empty dot-component: " + fqn);
}

namespace {

std::optional<std::string> opt_field(const nlohmann::json& obj, const char* key,
                                     std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string())
    raise(ErrorCode::MalformedLine,
          "line " + std::to_string(line_no) + ": field '" + key + "' is not a string");
  return it->get<std::string>();
}

}  // namespace

std::vector<LibraryItem> load_library_jsonl(std::istream& in) {
  std::vector<LibraryItem> items;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object())
      raise(ErrorCode::MalformedLine,
            "line " + std::to_string(line_no) + ": not a JSON object");
    auto name = obj.find("name");
    if (name == obj.end() || !name->is_string())
      raise(ErrorCode::MalformedLine,
            "line " + std::to_string(line_no) + ": missing string field 'name'");
    LibraryItem item;
    item.fqn = name->get<std::string>();
    item.kind = opt_field(obj, "kind", line_no);
    item.signature = opt_field(obj, "signature", line_no);
    item.doc = opt_field(obj, "doc", line_no);
    items.push_back(std::move(item));
  }
  return items;
}

std::vector<LibraryItem> load_library_plain(std::istream& in) {
  std::vector<LibraryItem> items;
  std::string line;
  while (std::getline(in, line)) {
    std::string name(text::trim(line));
    if (name.empty()) continue;
    items.push_back(LibraryItem{std::move(name), {}, {}, {}});
  }
  return items;
}

std::vector<LibraryItem> load_library_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::IoError, "cannot open library file: " + path);
  bool jsonl = path.ends_with(".jsonl") || path.ends_with(".json");
  return jsonl ? load_library_jsonl(in) : load_library_plain(in);
}

}  // namespace ddr
