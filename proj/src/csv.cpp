// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

#include "mqx/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <system_error>

#include "mqx/error.hpp"

namespace mqx::csv {

namespace {

[[noreturn]] void schema_error(const std::string& msg) { throw Error(ErrorCode::kSchema, msg); }

}  // namespace

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  schema_error(source + ": missing column '" + std::string(name) + "'");
}

void Table::require(std::initializer_list<std::string_view> names) const {
  for (auto n : names) (void)column(n);
}

Table parse_string(std::string_view text, const std::string& source) {
  Table t;
  t.source = source;
  std::size_t line = 1;
  std::size_t i = 0;
  bool have_header = false;
  while (i < text.size()) {
    const std::size_t row_line = line;
    std::vector<std::string> fields;
    std::string cur;
    bool quoted_field = false;
    bool row_done = false;
    while (!row_done) {
      if (i >= text.size()) {
        fields.push_back(std::move(cur));
        break;
      }
      const char c = text[i];
      if (c == '"' && cur.empty() && !quoted_field) {
        quoted_field = true;
        ++i;
        for (;;) {
          if (i >= text.size()) {
            schema_error(source + ":" + std::to_string(row_line) + ": unterminated quoted field");
          }
          if (text[i] == '"') {
            if (i + 1 < text.size() && text[i + 1] == '"') {
              cur += '"';
              i += 2;
              continue;
            }
            ++i;
            break;
          }
          if (text[i] == '\n') ++line;
          cur += text[i++];
        }
        continue;
      }
      if (c == ',') {
        fields.push_back(std::move(cur));
        cur.clear();
        quoted_field = false;
        ++i;
      } else if (c == '\n' || c == '\r') {
        fields.push_back(std::move(cur));
        if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
        ++i;
        ++line;
        row_done = true;
      } else {
        cur += c;
        ++i;
      }
    }
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (!have_header) {
      t.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != t.header.size()) {
      schema_error(source + ":" + std::to_string(row_line) + ": expected " +
                   std::to_string(t.header.size()) + " fields, found " +
                   std::to_string(fields.size()));
    }
    t.rows.push_back({row_line, std::move(fields)});
  }
  if (!have_header) schema_error(source + ": empty file, expected a header row");
  return t;
}

Table parse(std::istream& in, const std::string& source) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIo, source + ": read failed");
  return parse_string(text, source);
}

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string s = "\"";
  for (char c : field) {
    if (c == '"') s += '"';
    s += c;
  }
  s += '"';
  return s;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << quote(fields[i]);
  }
  out << '\n';
}

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string where(const Table& t, const Row& r, std::size_t col) {
  return t.source + ":" + std::to_string(r.line) + ": column '" + t.header[col] + "' (" +
         std::to_string(col + 1) + "): ";
}

double to_double(const Table& t, const Row& r, std::size_t col) {
  const std::string& f = r.fields[col];
  double v = 0;
  const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
  if (f.empty() || res.ec != std::errc{} || res.ptr != f.data() + f.size() || !std::isfinite(v)) {
    schema_error(where(t, r, col) + "expected a finite number, found '" + f + "'");
  }
  return v;
}

std::uint64_t to_u64(const Table& t, const Row& r, std::size_t col) {
  const std::string& f = r.fields[col];
  std::uint64_t v = 0;
  int base = 10;
  const char* b = f.data();
  if (f.size() > 2 && f[0] == '0' && (f[1] == 'x' || f[1] == 'X')) {
    base = 16;
    b += 2;
  }
  const auto res = std::from_chars(b, f.data() + f.size(), v, base);
  if (f.empty() || res.ec != std::errc{} || res.ptr != f.data() + f.size()) {
    schema_error(where(t, r, col) + "expected a non-negative integer, found '" + f + "'");
  }
  return v;
}

bool to_bool(const Table& t, const Row& r, std::size_t col) {
  const std::string& f = r.fields[col];
  if (f == "1" || f == "true") return true;
  if (f == "0" || f == "false") return false;
  schema_error(where(t, r, col) + "expected 0 or 1, found '" + f + "'");
}

}  // namespace mqx::csv
