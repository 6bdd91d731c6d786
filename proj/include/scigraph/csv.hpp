#pragma once

#include <string>
#include <string_view>

namespace scigraph {

/// One CSV field: quoted (with doubled inner quotes) only when the value
/// contains a comma, quote, CR or LF; returned verbatim otherwise.
inline std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(value);
  }
  std::string quoted;
  quoted.reserve(value.size() + 2);
  quoted.push_back('"');
  for (char c : value) {
    if (c == '"') quoted.push_back('"');
    quoted.push_back(c);
  }
  quoted.push_back('"');
  return quoted;
}

}  // namespace scigraph
