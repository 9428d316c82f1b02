#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tide::text {

// Lowercases ASCII letters in place-copy; multibyte sequences pass through.
std::string to_lower(std::string_view s);

std::string trim(std::string_view s);

// Collapses every run of ASCII whitespace to a single space and trims.
std::string collapse_whitespace(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

bool is_ascii_space(char c);
bool is_ascii_digit(char c);
// ASCII printable characters that are neither alphanumeric nor whitespace.
bool is_ascii_punct(char c);

// Character-offset view over a UTF-8 string. Spans throughout the engine
// are code-point offsets so splicing stays valid on multibyte text; this
// map converts them back to byte ranges when slicing.
class CharMap {
 public:
  explicit CharMap(std::string_view utf8);

  std::size_t char_count() const { return byte_of_.size() - 1; }
  // Byte offset of code point `i`; `i` may equal char_count() (end).
  std::size_t byte_at(std::size_t i) const { return byte_of_[i]; }
  // Slice by code-point range [begin, end).
  std::string_view slice(std::size_t begin, std::size_t end) const;
  // Code point at index `i` (as decoded uint32).
  uint32_t code_point(std::size_t i) const;
  // Index of the code point covering byte offset `b`.
  std::size_t char_at_byte(std::size_t b) const;

 private:
  std::string_view src_;
  std::vector<std::size_t> byte_of_;  // size = char_count + 1
};

}  // namespace tide::text
