#pragma once

// Small helpers shared by the line-oriented file formats.

#include <cstddef>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tll/rational.hpp"

namespace tll {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg)
      : std::runtime_error(format(line, column, msg)),
        line_(line),
        column_(column),
        message_(msg) {}

  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }
  [[nodiscard]] const std::string& message() const { return message_; }

  // Same error, re-anchored to a file name.
  [[nodiscard]] std::string in_file(const std::string& path) const {
    return path + ":" + format(line_, column_, message_);
  }

 private:
  static std::string format(std::size_t line, std::size_t column,
                            const std::string& msg) {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + msg;
  }

  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

namespace text {

inline std::string_view strip_comment(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) {
    line = line.substr(0, hash);
  }
  return line;
}

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> split(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r') {
      ++i;
    }
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

inline Rat rational(const Token& tok, std::size_t line) {
  auto r = Rat::parse(tok.text);
  if (!r) {
    throw ParseError(line, tok.column, "expected rational, got '" + tok.text + "'");
  }
  return *r;
}

inline std::vector<std::string> lines(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

inline std::vector<std::string> lines(const std::string& content) {
  std::istringstream in(content);
  return lines(in);
}

}  // namespace text
}  // namespace tll
