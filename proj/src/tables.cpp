#include "atomdec/tables.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>

#include "atomdec/core.hpp"

namespace atomdec {

std::string format_real(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc())
    throw std::runtime_error("format_real: conversion failed");
  return std::string(buf, ptr);
}

namespace {
std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}
} // namespace

double parse_real(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw InputError("not a number: '" + std::string(text) + "'");
  return value;
}

long parse_integer(std::string_view text) {
  text = trim(text);
  long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw InputError("not an integer: '" + std::string(text) + "'");
  return value;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    fields.emplace_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos)
      break;
    start = pos + 1;
  }
  return fields;
}

void emit_plotdata(std::ostream& out, const TidyTable& table) {
  if (table.empty())
    throw InputError("emit_plotdata: refusing to write an empty table");
  std::vector<TidyRow> rows = table.rows;
  std::stable_sort(rows.begin(), rows.end(), [](const TidyRow& a, const TidyRow& b) {
    if (a.series != b.series)
      return a.series < b.series;
    return a.x < b.x;
  });
  out << "series,x,y\n";
  for (const auto& r : rows)
    out << r.series << ',' << format_real(r.x) << ',' << format_real(r.y) << '\n';
}

} // namespace atomdec
