#pragma once

#include <string>
#include <vector>

namespace tl {

std::vector<std::string> split_lines(const std::string& text);
std::vector<std::string> split_words(const std::string& line);
std::string strip_comment(const std::string& line);
std::string trim(const std::string& s);
int parse_int(const std::string& s, const char* what);

}  // namespace tl
