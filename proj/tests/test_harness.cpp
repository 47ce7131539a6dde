// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>
#include <string>

#include "mqx/csv.hpp"
#include "mqx/harness.hpp"

using namespace mqx;

namespace {

std::string schema_message(const std::string& text) {
  std::istringstream in(text);
  try {
    read_bench_csv(in, "bad.csv");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSchema);
    return e.what();
  }
  FAIL("expected a schema error");
  return {};
}

BenchRecord sample_record(std::mt19937_64& rng) {
  BenchRecord r;
  r.kernel = "ntt";
  r.size = 1024;
  r.backend = "mqx/mc/functional";
  r.mqx_mode = "functional";
  r.mqx_variant = "mc";
  r.algo = "karatsuba";
  r.subst = "none";
  r.modulus_bits = 124;
  r.timing_class = "functional-emulation";
  r.runs = 100;
  r.measured = 50;
  std::uniform_real_distribution<double> u(1e-3, 1e9);
  r.total_ns = u(rng);
  r.normalized_ns = r.total_ns / 5120;
  r.norm_unit = "butterfly";
  r.norm_divisor = 5120;
  r.seed = rng();
  r.checksum = rng();
  r.timestamp = "2026-01-01T00:00:00Z";
  r.host = "cpu=Some, \"quoted\" CPU;pinned=cpu0";
  return r;
}

}  // namespace

TEST_CASE("protocol defaults and overrides") {
  CHECK(default_protocol(KernelKind::kNtt) == Protocol{100, 50});
  for (auto k : {KernelKind::kVadd, KernelKind::kVsub, KernelKind::kVpmul, KernelKind::kAxpy}) {
    CHECK(default_protocol(k) == Protocol{1000, 500});
  }
  CHECK(kDefaultBlasLength == 1024);
  BenchSpec s;
  CHECK_FALSE(s.protocol_overridden());
  s.runs = 10;
  CHECK(s.protocol() == Protocol{10, 5});
  CHECK(s.protocol_overridden());
  s.measured = 11;
  CHECK_THROWS_AS(s.protocol(), Error);
}

TEST_CASE("normalization divisors are exact") {
  CHECK(normalization_divisor(KernelKind::kNtt, 1024) == 5120);
  CHECK(normalization_divisor(KernelKind::kNtt, 1u << 16) == 32768u * 16u);
  CHECK(normalization_divisor(KernelKind::kAxpy, 1024) == 1024);
  CHECK(normalization_unit(KernelKind::kNtt) == "butterfly");
  CHECK(normalization_unit(KernelKind::kVadd) == "element");
  CHECK_THROWS_AS(normalization_divisor(KernelKind::kNtt, 1000), Error);
}

TEST_CASE("size lists") {
  CHECK(parse_sizes("2^10..2^12") == std::vector<std::size_t>{1024, 2048, 4096});
  CHECK(parse_sizes("1024,4096") == std::vector<std::size_t>{1024, 4096});
  CHECK(parse_sizes("2^3") == std::vector<std::size_t>{8});
  CHECK_THROWS_AS(parse_sizes("2^12..2^10"), Error);
  CHECK_THROWS_AS(parse_sizes("lots"), Error);
  CHECK_THROWS_AS(parse_sizes(""), Error);
}

TEST_CASE("bench echoes the protocol and is deterministic in its data") {
  BenchSpec s;
  s.sizes = {1024};
  s.pin = false;
  const auto a = run_bench(s);
  REQUIRE(a.size() == 1);
  CHECK(a[0].runs == 100);
  CHECK(a[0].measured == 50);
  CHECK_FALSE(a[0].overridden);
  CHECK(a[0].norm_divisor == 5120);
  CHECK(a[0].normalized_ns > 0);
  CHECK(a[0].normalized_ns == doctest::Approx(a[0].total_ns / 5120));
  CHECK(a[0].seed == kDefaultSeed);
  CHECK(a[0].host.find("pinned=") != std::string::npos);
  const auto b = run_bench(s);
  CHECK(a[0].checksum == b[0].checksum);

  BenchSpec blas;
  blas.kernel = KernelKind::kAxpy;
  blas.runs = 20;
  blas.pin = false;
  const auto r = run_bench(blas);
  REQUIRE(r.size() == 1);
  CHECK(r[0].size == 1024);
  CHECK(r[0].runs == 20);
  CHECK(r[0].measured == 10);
  CHECK(r[0].overridden);
  std::ostringstream table;
  write_bench_table(table, r);
  CHECK(table.str().find("20/10*") != std::string::npos);

  blas.sizes = {1001};
  CHECK_THROWS_AS(run_bench(blas), Error);
}

TEST_CASE("CSV emit and parse") {
  std::ostringstream empty;
  write_bench_csv(empty, {});
  const std::string header = empty.str();
  CHECK(header.find("schema_version,kernel,size") == 0);
  CHECK(std::count(header.begin(), header.end(), '\n') == 1);
  std::istringstream ein(header);
  CHECK(read_bench_csv(ein, "empty.csv").empty());

  std::mt19937_64 rng(41);
  std::vector<BenchRecord> recs;
  for (int i = 0; i < 200; ++i) recs.push_back(sample_record(rng));
  std::ostringstream out;
  write_bench_csv(out, recs);
  std::istringstream in(out.str());
  CHECK(read_bench_csv(in, "rt.csv") == recs);

  std::ostringstream one;
  write_bench_csv(one, std::span(recs).first(1));
  const auto t = csv::parse_string(one.str(), "one.csv");
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].fields.size() == t.header.size());
  CHECK(t.header.size() == bench_csv_columns().size());
}

TEST_CASE("CSV diagnostics name the line and column") {
  std::mt19937_64 rng(42);
  const auto rec = sample_record(rng);
  std::ostringstream out;
  write_bench_csv(out, std::span(&rec, 1));
  const std::string good = out.str();
  const std::string head = good.substr(0, good.find('\n') + 1);
  std::string body = good.substr(head.size());

  std::string missing = head;
  missing.replace(missing.find(",normalized_ns"), 14, "");
  CHECK(schema_message(missing).find("missing column 'normalized_ns'") != std::string::npos);

  std::string bad_num = body;
  bad_num.replace(bad_num.find(",1024,"), 6, ",10x4,");
  const auto msg = schema_message(head + bad_num);
  CHECK(msg.find("bad.csv:2") != std::string::npos);
  CHECK(msg.find("'size'") != std::string::npos);

  CHECK(schema_message(head + "1,ntt\n").find("expected 22 fields, found 2") != std::string::npos);
  std::string v2 = body;
  v2[0] = '2';
  CHECK(schema_message(head + v2).find("schema version") != std::string::npos);
}

TEST_CASE("csv helpers") {
  CHECK(csv::quote("plain") == "plain");
  CHECK(csv::quote("a,b") == "\"a,b\"");
  CHECK(csv::quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
  const auto t = csv::parse_string("x,y\n\"1,5\",\"line\nbreak\"\n", "q.csv");
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].fields[0] == "1,5");
  CHECK(t.rows[0].fields[1] == "line\nbreak");
  CHECK_THROWS_AS(csv::parse_string("x\n\"open\n", "u.csv"), Error);
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.125}) {
    CHECK(std::stod(csv::format_double(v)) == v);
  }
}
