#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ktb/treeio.hpp"

namespace ktb::testing {

inline std::string data_path(std::string_view name) { return std::string(KTB_TEST_DATA_DIR) + "/" + std::string(name); }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ConstituentNode parse_or_throw(std::string_view text, const TagsetRegistry& registry,
                                      Tagset tagset = Tagset::kaist) {
  auto r = parse_tree(text, registry, {.tagset = tagset});
  if (!r.value) {
    std::string msg = "parse failed:";
    for (const auto& d : r.diagnostics) msg += " " + format_diagnostic(d);
    throw std::runtime_error(msg);
  }
  return std::move(*r.value);
}

inline Morpheme km(std::string form, std::string tag) { return Morpheme(std::move(form), FineTag{std::move(tag), Tagset::kaist}); }
inline Morpheme sm(std::string form, std::string tag) { return Morpheme(std::move(form), FineTag{std::move(tag), Tagset::sejong}); }

}  // namespace ktb::testing
