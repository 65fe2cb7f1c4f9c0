#include "stylemark/format.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <cstdio>

namespace stylemark {

void append_json_string(std::string& out, std::string_view s) {
  bool plain = true;
  for (unsigned char c : s) {
    if (c < 0x20 || c == '"' || c == '\\' || c >= 0x80) {
      plain = false;
      break;
    }
  }
  if (plain) {
    out += '"';
    out += s;
    out += '"';
    return;
  }
  out += nlohmann::json(std::string(s)).dump();
}

void append_shortest(std::string& out, double x) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  out.append(buf.data(), ptr);
}

std::string shortest(double x) {
  std::string s;
  append_shortest(s, x);
  return s;
}

std::string fixed6(double x) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.6f", x);
  return buf.data();
}

std::string trimmed6(double x) {
  std::string s = fixed6(x);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

}  // namespace stylemark
