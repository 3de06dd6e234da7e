#include "obtk/format.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <system_error>

#include "obtk/errors.hpp"

namespace obtk {

std::string format_exact(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_csv(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view token) {
  const auto t = trim(token);
  if (t.empty()) throw ValidationError("empty number in spec string");
  // from_chars rejects a leading '+', which users do type.
  const auto body = t.front() == '+' ? t.substr(1) : t;
  double v = 0.0;
  const auto res = std::from_chars(body.data(), body.data() + body.size(), v);
  if (res.ec != std::errc() || res.ptr != body.data() + body.size()) {
    throw ValidationError("malformed number '" + std::string(t) + "'");
  }
  return v;
}

namespace {

bool is_exponent_sign(std::string_view s, std::size_t i) {
  if (i < 2 || i + 1 >= s.size()) return false;
  const char e = s[i - 1];
  const char before = s[i - 2];
  return (e == 'e' || e == 'E') &&
         (std::isdigit(static_cast<unsigned char>(before)) || before == '.') &&
         std::isdigit(static_cast<unsigned char>(s[i + 1]));
}

}  // namespace

std::vector<std::string> split_top_level(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(') {
      ++depth;
    } else if (c == ')') {
      if (--depth < 0) throw ValidationError("unbalanced ')' in '" + std::string(s) + "'");
    } else if (c == sep && depth == 0 && !(sep == '+' && is_exponent_sign(s, i))) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  if (depth != 0) throw ValidationError("unbalanced '(' in '" + std::string(s) + "'");
  out.emplace_back(s.substr(start));
  return out;
}

std::string_view strip_parens(std::string_view s) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') return s;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth == 0 && i + 1 < s.size()) return s;  // "(a)+(b)"
  }
  return trim(s.substr(1, s.size() - 2));
}

std::string quote_cell(const std::string& s, char sep) {
  if (s.find_first_of(std::string{sep, '"', '\n'}) == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace obtk
