// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

// Minimal RFC 4180 reader/writer with positioned diagnostics. Fields that
// contain a comma, quote or newline are quoted on output.

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mqx::csv {

struct Row {
  std::size_t line;  // 1-based line number in the source
  std::vector<std::string> fields;
};

struct Table {
  std::string source;
  std::vector<std::string> header;
  std::vector<Row> rows;

  /// Column index by name; throws Error(kSchema) naming the missing column.
  std::size_t column(std::string_view name) const;
  /// Throws Error(kSchema) unless every named column is present.
  void require(std::initializer_list<std::string_view> names) const;
};

/// Parses a whole document. The first non-empty line is the header; blank
/// lines are skipped. Throws Error(kSchema) for unterminated quotes and rows
/// whose field count differs from the header.
Table parse(std::istream& in, const std::string& source);
Table parse_string(std::string_view text, const std::string& source);

std::string quote(std::string_view field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

/// Field converters; throw Error(kSchema) with "source:line: column 'name' ..."
double to_double(const Table& t, const Row& r, std::size_t col);
std::uint64_t to_u64(const Table& t, const Row& r, std::size_t col);
bool to_bool(const Table& t, const Row& r, std::size_t col);

/// "source:line: column 'name' (n): " prefix used by every schema error.
std::string where(const Table& t, const Row& r, std::size_t col);

}  // namespace mqx::csv
