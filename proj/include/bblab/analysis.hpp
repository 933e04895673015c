#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bblab/catalog.hpp"

namespace bblab {

using Rational = boost::multiprecision::cpp_rational;

/// A non-negative count held exactly when small enough, otherwise as log10.
struct Quantity {
  std::optional<BigInt> exact;
  double log10 = 0;  // always set; -inf for zero

  static Quantity of(const BigInt& value);
  static Quantity of_log10(double log10_value);
  /// Decimal integer or scientific notation ("4.6e+1439"). Scientific input
  /// always becomes log-scale; integers with more than `exact_digit_limit`
  /// digits too. Throws Error on malformed or negative text.
  static Quantity parse(std::string_view text, int exact_digit_limit = 30);

  bool is_exact() const { return exact.has_value(); }
  /// Integer digits when exact, otherwise scientific.
  std::string display() const;
};

/// Ratios for one (ones, steps, states) triple:
/// r1 = steps/ones, r2 = ones/states, r3 = steps*states/ones^2.
struct RatioRow {
  Quantity ones;
  Quantity steps;
  int states = 0;
  std::string source;
  /// Exact quotients; present when ones and steps are exact.
  std::optional<Rational> r1_exact, r2_exact, r3_exact;
  double log10_r1 = 0, log10_r2 = 0, log10_r3 = 0;

  std::string r1() const;
  std::string r2() const;
  std::string r3() const;
};

/// Throws Error when ones is zero or states < 1.
RatioRow ratio_row(const BigInt& ones, const BigInt& steps, int states,
                   std::string source = {});
RatioRow ratio_row_log(double log10_ones, double log10_steps, int states,
                       std::string source = {});
RatioRow ratio_row(const Quantity& ones, const Quantity& steps, int states,
                   std::string source = {});

/// Truncates toward zero at `decimals` places, drops trailing zeros but keeps
/// one fractional digit: 130.79375 -> "130.7937", 3 -> "3.0".
std::string format_truncated(const Rational& value, int decimals = 4);
/// Fixed notation below 1e15, otherwise mantissa truncated to `decimals`
/// places: "5.4e+1439".
std::string format_log10(double log10_value, int decimals = 4);

struct ExternalRecord {
  std::string label;
  Quantity ones;
  Quantity steps;
  int states = 0;
};

/// CSV with header "label,ones,steps,states". Fields may be double-quoted.
/// Throws Error naming the line number of a malformed row.
std::vector<ExternalRecord> ingest_records(std::istream& in,
                                           int exact_digit_limit = 30);
std::vector<ExternalRecord> ingest_records(const std::filesystem::path& path,
                                           int exact_digit_limit = 30);

/// CSV "ones,r1,r2,r3,source" sorted by ones ascending. Own rows come from
/// the first-found witness of each known PP entry, sourced "own programs".
std::string build_table(std::span<const PPEntry> entries,
                        std::span<const ExternalRecord> records);
std::vector<RatioRow> table_rows(std::span<const PPEntry> entries,
                                 std::span<const ExternalRecord> records);

}  // namespace bblab
