#pragma once

#include "gsm/io/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace gsm::detail {

/// Line-oriented tokenizer shared by the text formats. Line numbers are 1-based.
class LineReader {
 public:
  LineReader(std::string_view text, std::string format) : text_(text), format_(std::move(format)) {}

  bool at_end() const { return pos_ >= text_.size(); }
  std::size_t line_number() const { return line_; }

  /// Next line without its terminator; throws TruncatedPayload at end of input.
  std::string_view next_line(const char* what) {
    if (at_end())
      throw TruncatedPayload(format_ + ": unexpected end of input at line " + std::to_string(line_ + 1) +
                             " (expected " + what + ")");
    const std::size_t nl = text_.find('\n', pos_);
    std::string_view line = text_.substr(pos_, nl == std::string_view::npos ? std::string_view::npos : nl - pos_);
    pos_ = nl == std::string_view::npos ? text_.size() : nl + 1;
    ++line_;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
  }

  std::vector<std::string_view> next_tokens(const char* what) { return split(next_line(what)); }

  void expect_end() const {
    if (!at_end())
      throw TrailingData(format_ + ": trailing data after line " + std::to_string(line_));
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(format_ + ": line " + std::to_string(line_) + ": " + msg);
  }

  /// Tokens of a "keyword value..." header line with exactly `values` values.
  std::vector<std::string_view> header(const char* keyword, std::size_t values) {
    auto tok = next_tokens(keyword);
    if (tok.empty() || tok[0] != keyword) fail(std::string("expected '") + keyword + "' header");
    if (tok.size() != values + 1)
      fail(std::string("'") + keyword + "' expects " + std::to_string(values) + " value(s)");
    return tok;
  }

  double to_double(std::string_view tok) const {
    double v = 0.0;
    const char* b = tok.data();
    const char* e = b + tok.size();
    if (!tok.empty() && *b == '+') ++b;
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec == std::errc::result_out_of_range)
      throw NonFiniteValue(format_ + ": line " + std::to_string(line_) + ": value out of range '" +
                           std::string(tok) + "'");
    if (ec != std::errc() || ptr != e) fail("bad number '" + std::string(tok) + "'");
    if (!std::isfinite(v))
      throw NonFiniteValue(format_ + ": line " + std::to_string(line_) + ": non-finite value '" +
                           std::string(tok) + "'");
    return v;
  }

  template <class Int>
  Int to_int(std::string_view tok) const {
    Int v{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) fail("bad integer '" + std::string(tok) + "'");
    return v;
  }

  static std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      const std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
      if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
  }

 private:
  std::string_view text_;
  std::string format_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

}  // namespace gsm::detail
