#include "lathom/intmat.hpp"

#include <cctype>

namespace lathom {

namespace {

void skip_ws(const std::string& s, size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

void expect(const std::string& s, size_t& i, char c) {
  skip_ws(s, i);
  if (i >= s.size() || s[i] != c)
    throw std::invalid_argument("malformed matrix text, expected '" + std::string(1, c) + "' in " + s);
  ++i;
}

std::int64_t parse_int(const std::string& s, size_t& i) {
  skip_ws(s, i);
  size_t j = i;
  if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
  size_t k = j;
  while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
  if (k == j) throw std::invalid_argument("malformed integer in matrix text: " + s);
  std::int64_t v = std::stoll(s.substr(i, k - i));
  i = k;
  return v;
}

}  // namespace

IMat parse_int_matrix(const std::string& text) {
  size_t i = 0;
  expect(text, i, '[');
  std::vector<std::vector<std::int64_t>> rows;
  for (;;) {
    expect(text, i, '[');
    std::vector<std::int64_t> row;
    for (;;) {
      row.push_back(parse_int(text, i));
      skip_ws(text, i);
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      break;
    }
    expect(text, i, ']');
    rows.push_back(std::move(row));
    skip_ws(text, i);
    if (i < text.size() && text[i] == ',') {
      ++i;
      continue;
    }
    break;
  }
  expect(text, i, ']');
  skip_ws(text, i);
  if (i != text.size()) throw std::invalid_argument("trailing characters in matrix text: " + text);

  const int d = static_cast<int>(rows.size());
  if (d < 1 || d > 3) throw std::invalid_argument("matrix dimension must be 1..3");
  IMat m(d);
  for (int r = 0; r < d; ++r) {
    if (static_cast<int>(rows[static_cast<size_t>(r)].size()) != d)
      throw std::invalid_argument("matrix rows have unequal length: " + text);
    for (int c = 0; c < d; ++c) m(r, c) = rows[static_cast<size_t>(r)][static_cast<size_t>(c)];
  }
  return m;
}

std::string format_int_matrix(const IMat& m) {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < m.d; ++i) {
    os << '[';
    for (int j = 0; j < m.d; ++j) {
      os << m(i, j);
      if (j + 1 < m.d) os << ',';
    }
    os << ']';
    if (i + 1 < m.d) os << ',';
  }
  os << ']';
  return os.str();
}

}  // namespace lathom
