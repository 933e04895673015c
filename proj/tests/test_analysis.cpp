#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "bblab/analysis.hpp"

using namespace bblab;

TEST(FormatTruncated, TruncatesTowardZero) {
  EXPECT_EQ(format_truncated(Rational(20927, 160)), "130.7937");
  EXPECT_EQ(format_truncated(Rational(3)), "3.0");
  EXPECT_EQ(format_truncated(Rational(5, 4)), "1.25");
  EXPECT_EQ(format_truncated(Rational(2, 3)), "0.6666");
  EXPECT_EQ(format_truncated(Rational(-2, 3)), "-0.6666");
  EXPECT_EQ(format_truncated(Rational(1, 100000)), "0.0");
  EXPECT_EQ(format_truncated(Rational(10, 3), 2), "3.33");
}

TEST(FormatTruncated, Idempotent) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const Rational q(static_cast<long long>(rng() % 10000000),
                     static_cast<long long>(rng() % 9999 + 1));
    const std::string once = format_truncated(q);
    // Parse the decimal text back exactly.
    const auto dot = once.find('.');
    const std::string digits = once.substr(0, dot) + once.substr(dot + 1);
    BigInt scale = 1;
    for (std::size_t k = dot + 1; k < once.size(); ++k) scale *= 10;
    EXPECT_EQ(format_truncated(Rational(BigInt(digits), scale)), once);
  }
}

TEST(FormatLog10, FixedAndScientific) {
  EXPECT_EQ(format_log10(0), "1.0");
  EXPECT_EQ(format_log10(std::log10(7.0434)), "7.0434");
  EXPECT_EQ(format_log10(std::log10(5.4) + 1439), "5.4e+1439");
  EXPECT_EQ(format_log10(864 + std::log10(2.0)), "2e+864");
  EXPECT_EQ(format_log10(std::log10(9.53125) + 462), "9.5312e+462");
}

TEST(RatioRow, PublishedOwnRows) {
  auto r = ratio_row(BigInt(12), BigInt(106), 4);
  EXPECT_EQ(r.r1(), "8.8333");
  EXPECT_EQ(r.r2(), "3.0");
  EXPECT_EQ(r.r3(), "2.9444");
  r = ratio_row(BigInt(1), BigInt(1), 1);
  EXPECT_EQ(r.r1(), "1.0");
  EXPECT_EQ(r.r2(), "1.0");
  EXPECT_EQ(r.r3(), "1.0");
  r = ratio_row(BigInt(10), BigInt(63), 4);
  EXPECT_EQ(r.r1(), "6.3");
  EXPECT_EQ(r.r2(), "2.5");
  EXPECT_EQ(r.r3(), "2.52");
}

TEST(RatioRow, ExactIdentity) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const BigInt ones = rng() % 100000 + 1;
    const BigInt steps = ones + rng() % 1000000;
    const int states = static_cast<int>(rng() % 6 + 1);
    const auto r = ratio_row(ones, steps, states);
    EXPECT_EQ(*r.r3_exact, *r.r1_exact / *r.r2_exact);
    EXPECT_GE(*r.r1_exact, 1);
    EXPECT_NEAR(r.log10_r3, r.log10_r1 - r.log10_r2, 1e-12);
  }
}

TEST(RatioRow, MarxenBuntrockFiveState) {
  const auto r = ratio_row(BigInt(4097), BigInt(47176870), 5);
  EXPECT_EQ(r.r1(), "11514.9792");
  EXPECT_EQ(r.r2(), "819.4");
  EXPECT_EQ(r.r3(), "14.0529");
}

TEST(RatioRow, LogScale) {
  auto r = ratio_row_log(std::log10(1.2) + 865, std::log10(3.0) + 1730, 6);
  EXPECT_EQ(r.r1(), "2.5e+865");
  EXPECT_EQ(r.r2(), "2e+864");
  EXPECT_EQ(r.r3(), "12.5");
  r = ratio_row_log(3, 6, 5);
  EXPECT_EQ(r.r1(), "1000.0");
  EXPECT_EQ(r.r2(), "200.0");
  EXPECT_EQ(r.r3(), "5.0");
  r = ratio_row_log(100, 100, 3);
  EXPECT_EQ(r.r1(), "1.0");
  EXPECT_FALSE(r.r1_exact.has_value());
}

TEST(RatioRow, LogAndExactAgree) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const BigInt ones = rng() % 100000000 + 1;
    const BigInt steps = ones * (rng() % 1000 + 1) + rng() % 1000;
    const auto exact = ratio_row(ones, steps, 5);
    const auto logged = ratio_row(Quantity::of_log10(exact.ones.log10),
                                  Quantity::of_log10(exact.steps.log10), 5);
    const double r1 = exact.r1_exact->convert_to<double>();
    const double r3 = exact.r3_exact->convert_to<double>();
    EXPECT_NEAR(std::pow(10.0, logged.log10_r1) / r1, 1.0, 1e-10);
    EXPECT_NEAR(std::pow(10.0, logged.log10_r3) / r3, 1.0, 1e-10);
  }
}

TEST(RatioRow, Errors) {
  EXPECT_THROW(ratio_row(BigInt(0), BigInt(5), 2), Error);
  EXPECT_THROW(ratio_row(BigInt(1), BigInt(5), 0), Error);
}

TEST(Quantity, Parse) {
  auto q = Quantity::parse("47176870");
  ASSERT_TRUE(q.is_exact());
  EXPECT_EQ(*q.exact, 47176870);
  q = Quantity::parse("4.6e+1439");
  EXPECT_FALSE(q.is_exact());
  EXPECT_NEAR(q.log10, 1439 + std::log10(4.6), 1e-9);
  EXPECT_EQ(q.display(), "4.6e+1439");
  q = Quantity::parse("1234567890", 5);
  EXPECT_FALSE(q.is_exact());
  EXPECT_NEAR(q.log10, std::log10(1234567890.0), 1e-12);
  EXPECT_THROW(Quantity::parse("-5"), Error);
  EXPECT_THROW(Quantity::parse("12a"), Error);
  EXPECT_THROW(Quantity::parse("e5"), Error);
  EXPECT_THROW(Quantity::parse(""), Error);
}

TEST(Ingest, Records) {
  std::stringstream in(
      "label,ones,steps,states\n"
      "Schult,501,134467,5\n"
      "\"Marxen, Buntrock\",4097,47176870,5\n"
      "MB6,4.6e+1439,2.484e+2879,6\n");
  const auto records = ingest_records(in);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[1].label, "Marxen, Buntrock");
  auto r = ratio_row(records[0].ones, records[0].steps, records[0].states);
  EXPECT_EQ(r.r1(), "268.3972");
  EXPECT_EQ(r.r3(), "2.6786");
  r = ratio_row(records[2].ones, records[2].steps, records[2].states);
  EXPECT_EQ(r.r3(), "7.0434");
}

TEST(Ingest, EmptyAndMalformed) {
  std::stringstream header_only("label,ones,steps,states\n");
  EXPECT_TRUE(ingest_records(header_only).empty());
  std::stringstream bad("label,ones,steps,states\nA,1,1,1\nB,1,-4,2\n");
  try {
    ingest_records(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  std::stringstream no_header("A,1,1,1\n");
  EXPECT_THROW(ingest_records(no_header), Error);
  std::stringstream short_row("label,ones,steps,states\nA,1,1\n");
  EXPECT_THROW(ingest_records(short_row), Error);
  std::stringstream zero("label,ones,steps,states\nA,0,1,1\n");
  EXPECT_THROW(ingest_records(zero), Error);
}

TEST(Table, SortedWithQuotedSources) {
  PPEntry e;
  e.ones = 10;
  e.pp_value = 4;
  e.rules = 7;
  e.most_steps = Witness{decode_name("(1, 0, 4)"), 63};
  e.fewest_steps = e.most_steps;
  e.first_found = e.most_steps;
  PPEntry unknown;
  unknown.ones = 11;
  std::vector<PPEntry> entries = {e, unknown};
  std::stringstream in(
      "label,ones,steps,states\n"
      "\"T. and S. Ligocki\",4.6e+1439,2.484e+2879,6\n"
      "\"Marxen, Buntrock\",4097,47176870,5\n");
  const auto records = ingest_records(in);
  EXPECT_EQ(build_table(entries, records),
            "ones,r1,r2,r3,source\n"
            "10,6.3,2.5,2.52,own programs\n"
            "4097,11514.9792,819.4,14.0529,\"Marxen, Buntrock\"\n"
            "4.6e+1439,5.4e+1439,7.6666e+1438,7.0434,T. and S. Ligocki\n");
  std::vector<PPEntry> single = {e};
  EXPECT_EQ(build_table(single, {}), "ones,r1,r2,r3,source\n10,6.3,2.5,2.52,own programs\n");
}
