#include "tide/common/text.hpp"

#include <algorithm>
#include <cctype>

namespace tide::text {

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

bool is_ascii_punct(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  if (u >= 0x80) return false;
  return std::ispunct(u) != 0;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_ascii_space(s[b])) ++b;
  while (e > b && is_ascii_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool in_space = true;  // swallow leading whitespace
  for (char c : s) {
    if (is_ascii_space(c)) {
      in_space = true;
    } else {
      if (in_space && !out.empty()) out.push_back(' ');
      out.push_back(c);
      in_space = false;
    }
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

CharMap::CharMap(std::string_view utf8) : src_(utf8) {
  byte_of_.reserve(utf8.size() + 1);
  std::size_t i = 0;
  while (i < utf8.size()) {
    byte_of_.push_back(i);
    unsigned char c = static_cast<unsigned char>(utf8[i]);
    std::size_t len = 1;
    if (c >= 0xF0)
      len = 4;
    else if (c >= 0xE0)
      len = 3;
    else if (c >= 0xC0)
      len = 2;
    i += len;
    if (i > utf8.size()) i = utf8.size();  // truncated trailing sequence
  }
  byte_of_.push_back(utf8.size());
}

std::string_view CharMap::slice(std::size_t begin, std::size_t end) const {
  std::size_t b = byte_at(begin);
  std::size_t e = byte_at(end);
  return src_.substr(b, e - b);
}

std::size_t CharMap::char_at_byte(std::size_t b) const {
  auto it = std::upper_bound(byte_of_.begin(), byte_of_.end(), b);
  return static_cast<std::size_t>(it - byte_of_.begin()) - 1;
}

uint32_t CharMap::code_point(std::size_t i) const {
  std::size_t b = byte_at(i);
  std::size_t e = byte_at(i + 1);
  unsigned char c0 = static_cast<unsigned char>(src_[b]);
  if (e - b == 1) return c0;
  uint32_t cp = 0;
  if (e - b == 2)
    cp = c0 & 0x1F;
  else if (e - b == 3)
    cp = c0 & 0x0F;
  else
    cp = c0 & 0x07;
  for (std::size_t k = b + 1; k < e; ++k)
    cp = (cp << 6) | (static_cast<unsigned char>(src_[k]) & 0x3F);
  return cp;
}

}  // namespace tide::text
