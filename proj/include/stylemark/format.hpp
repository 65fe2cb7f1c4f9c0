#pragma once

#include <string>
#include <string_view>

namespace stylemark {

// Appends s as a quoted JSON string literal.
void append_json_string(std::string& out, std::string_view s);

// Shortest decimal that parses back to exactly x.
void append_shortest(std::string& out, double x);
std::string shortest(double x);

// "%.6f"
std::string fixed6(double x);

// Rounded to 6 decimals with trailing zeros dropped: 0.76 -> "0.76", 1 -> "1".
std::string trimmed6(double x);

}  // namespace stylemark
