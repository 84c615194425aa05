#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace maxdiv::cli {

/// One output value. monostate is written as an empty csv field / JSON null.
using Cell = std::variant<std::monostate, double, std::int64_t, std::uint64_t, bool, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Everything a command emits. The first table is the "results" table; any
/// further table is keyed by its name in JSON and follows a blank line in csv.
struct Document {
  std::vector<std::pair<std::string, Cell>> params;
  std::vector<Table> tables;
  std::vector<std::string> warnings;
};

enum class Format { csv, json };

struct OutputSpec {
  Format format = Format::csv;
  std::optional<std::string> destination;  // standard output when empty
  int precision = 10;                       // significant digits
};

/// Shortest decimal form of v rounded to `precision` significant digits,
/// independent of the C and C++ locales.
std::string format_number(double v, int precision);

void write_csv(const Document& doc, int precision, std::ostream& out);
void write_json(const Document& doc, int precision, std::ostream& out);

/// Runs the command line (without the program name). Returns the process exit
/// status: 0 on success, 1 when a computation fails or an oracle row does not
/// pass, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace maxdiv::cli
