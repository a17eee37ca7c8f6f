#include "densemg/io.hpp"

#include <charconv>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <vector>

namespace densemg {
namespace {

std::vector<std::string> edge_list_lines(const AdjacencyMatrix& b) {
  std::vector<std::string> lines;
  const std::size_t n = b.size();
  lines.push_back(std::to_string(n) + " " + std::to_string(edge_counts(b).m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Count c = i == j ? b(i, i) / 2 : b(i, j);
      if (c == 0) continue;
      lines.push_back(std::to_string(i + 1) + " " + std::to_string(j + 1) + " " +
                      std::to_string(c));
    }
  }
  return lines;
}

std::uint64_t parse_uint(std::string_view tok, std::size_t line_no) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty()) {
    throw FormatError("line " + std::to_string(line_no) + ": expected a nonnegative integer, got '" +
                      std::string(tok) + "'");
  }
  return v;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    if (line[pos] == ' ') {
      ++pos;
      continue;
    }
    std::size_t end = line.find(' ', pos);
    if (end == std::string_view::npos) end = line.size();
    out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

AdjacencyMatrix parse_records(const std::vector<std::string_view>& lines) {
  if (lines.empty()) throw FormatError("missing header line");
  auto header = split_fields(lines[0]);
  if (header.size() != 2) throw FormatError("line 1: header must be 'n m'");
  const std::uint64_t n = parse_uint(header[0], 1);
  const std::uint64_t m = parse_uint(header[1], 1);
  AdjacencyBuilder builder(n);
  std::uint64_t total = 0;
  std::uint64_t prev_i = 0, prev_j = 0;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const std::size_t line_no = l + 1;
    auto f = split_fields(lines[l]);
    if (f.size() != 3) throw FormatError("line " + std::to_string(line_no) + ": expected 'i j c'");
    const std::uint64_t i = parse_uint(f[0], line_no);
    const std::uint64_t j = parse_uint(f[1], line_no);
    const std::uint64_t c = parse_uint(f[2], line_no);
    if (i < 1 || j < 1 || i > n || j > n)
      throw FormatError("line " + std::to_string(line_no) + ": vertex index outside [1, n]");
    if (i > j) throw FormatError("line " + std::to_string(line_no) + ": records need i <= j");
    if (c == 0) throw FormatError("line " + std::to_string(line_no) + ": zero multiplicity");
    if (l > 1 && (i < prev_i || (i == prev_i && j <= prev_j)))
      throw FormatError("line " + std::to_string(line_no) + ": records not sorted or duplicated");
    prev_i = i;
    prev_j = j;
    for (std::uint64_t r = 0; r < c; ++r) builder.add_edge(i - 1, j - 1);
    total += c;
  }
  if (total != m) {
    throw FormatError("header declares " + std::to_string(m) + " edges, body has " +
                      std::to_string(total));
  }
  return std::move(builder).build(Validate::yes);
}

}  // namespace

std::string to_edge_list(const AdjacencyMatrix& b) {
  std::string out;
  for (const auto& line : edge_list_lines(b)) {
    out += line;
    out += '\n';
  }
  return out;
}

void write_edge_list(std::ostream& os, const AdjacencyMatrix& b) { os << to_edge_list(b); }

AdjacencyMatrix parse_edge_list(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') throw FormatError("CRLF line endings are not allowed");
    if (!line.empty()) lines.push_back(line);
    pos = end + 1;
  }
  return parse_records(lines);
}

AdjacencyMatrix read_edge_list(std::istream& is) {
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return parse_edge_list(text);
}

std::string canonical_key(const AdjacencyMatrix& b) {
  std::string out;
  for (const auto& line : edge_list_lines(b)) {
    if (!out.empty()) out += ';';
    out += line;
  }
  return out;
}

AdjacencyMatrix parse_canonical_key(std::string_view key) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= key.size()) {
    std::size_t end = key.find(';', pos);
    if (end == std::string_view::npos) end = key.size();
    lines.push_back(key.substr(pos, end - pos));
    pos = end + 1;
  }
  return parse_records(lines);
}

std::string canonical_key(const UrnConfiguration& psi) {
  std::string out;
  for (Count c : psi.word()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(c + 1);
  }
  return out;
}

std::string canonical_key(const DegreeSequence& d) {
  std::string out;
  for (auto v : d.values()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(v);
  }
  return out;
}

}  // namespace densemg
