#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dtn {

/// Shortest decimal text that parses back to exactly the same double.
std::string formatDouble(double value);

/// Parses a full token as a double; throws std::invalid_argument otherwise.
double parseDouble(std::string_view text);
long long parseInt(std::string_view text);

std::vector<std::string_view> splitWhitespace(std::string_view line);
std::vector<std::string> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

std::string readFile(const std::string& path);
void writeFile(const std::string& path, std::string_view contents);

}  // namespace dtn
