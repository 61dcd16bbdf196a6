#ifndef ATOMDEC_TABLES_HPP
#define ATOMDEC_TABLES_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace atomdec {

// Shortest round-trip decimal form of a double (std::to_chars).
std::string format_real(double x);
double parse_real(std::string_view text);
long parse_integer(std::string_view text);

std::vector<std::string> split_csv_line(std::string_view line);

// One observation per row, ready for any plotting tool.
struct TidyRow {
  std::string series;
  double x;
  double y;
};

struct TidyTable {
  std::vector<TidyRow> rows;
  void add(std::string series, double x, double y) { rows.push_back({std::move(series), x, y}); }
  bool empty() const { return rows.empty(); }
};

// Writes "series,x,y" rows sorted by (series, x). Throws InputError on an empty table.
void emit_plotdata(std::ostream& out, const TidyTable& table);

} // namespace atomdec

#endif
