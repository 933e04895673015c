#include "bblab/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <locale>
#include <fstream>
#include <limits>
#include <sstream>

namespace bblab {

namespace {

// Absorbs binary rounding of values that are exact in decimal (7.0434 stored
// as 7.04339999...) before truncating.
constexpr double kNudge = 1e-9;

double log10_of(const BigInt& v) {
  if (v == 0) return -std::numeric_limits<double>::infinity();
  const std::string digits = v.str();
  const std::size_t lead = std::min<std::size_t>(digits.size(), 17);
  const double mantissa = std::stod(digits.substr(0, lead));
  return std::log10(mantissa) + static_cast<double>(digits.size() - lead);
}

std::string strip_zeros(std::string fixed) {
  const auto dot = fixed.find('.');
  if (dot == std::string::npos) return fixed + ".0";
  while (fixed.size() > dot + 2 && fixed.back() == '0') fixed.pop_back();
  return fixed;
}

std::string format_double_truncated(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double t = std::floor(value * scale * (1 + kNudge));
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.setf(std::ios::fixed);
  os.precision(decimals);
  os << t / scale;
  return strip_zeros(os.str());
}

std::vector<std::string> split_csv(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) {
    throw Error("line " + std::to_string(line_no) + ": unterminated quote");
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

bool less_quantity(const Quantity& a, const Quantity& b) {
  if (a.exact && b.exact) return *a.exact < *b.exact;
  return a.log10 < b.log10;
}

}  // namespace

Quantity Quantity::of(const BigInt& value) {
  if (value < 0) throw Error("quantities must be non-negative");
  return Quantity{value, log10_of(value)};
}

Quantity Quantity::of_log10(double log10_value) {
  if (std::isnan(log10_value) || std::isinf(log10_value)) {
    throw Error("log-scale quantity must be finite");
  }
  return Quantity{std::nullopt, log10_value};
}

Quantity Quantity::parse(std::string_view text, int exact_digit_limit) {
  const std::string s = trim(text);
  auto bad = [&]() -> Error { return Error("bad number '" + s + "'"); };
  if (s.empty()) throw bad();
  if (s.front() == '-') throw Error("negative value '" + s + "'");
  if (s.find_first_not_of("0123456789") == std::string::npos) {
    if (static_cast<int>(s.size()) > exact_digit_limit) {
      return of_log10(log10_of(BigInt(s)));
    }
    return of(BigInt(s));
  }
  const auto e = s.find_first_of("eE");
  if (e == std::string::npos || e == 0) throw bad();
  const std::string mant = s.substr(0, e);
  std::string expo = s.substr(e + 1);
  if (!expo.empty() && expo.front() == '+') expo.erase(0, 1);
  if (mant.find_first_not_of("0123456789.") != std::string::npos ||
      std::count(mant.begin(), mant.end(), '.') > 1 || mant == "." ||
      expo.empty() ||
      expo.find_first_not_of("0123456789", expo.front() == '-' ? 1 : 0) !=
          std::string::npos) {
    throw bad();
  }
  const double m = std::stod(mant);
  if (m <= 0) throw bad();
  return of_log10(std::log10(m) + std::stod(expo));
}

std::string Quantity::display() const {
  if (exact) return exact->str();
  return format_log10(log10);
}

std::string format_truncated(const Rational& value, int decimals) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  const bool negative = value < 0;
  const BigInt num = boost::multiprecision::abs(numerator(value));
  const BigInt den = denominator(value);
  BigInt scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  const BigInt scaled = num * scale / den;
  const BigInt whole = scaled / scale;
  std::string frac = BigInt(scaled % scale).str();
  frac.insert(0, static_cast<std::size_t>(decimals) - frac.size(), '0');
  std::string out = (negative && scaled != 0 ? "-" : "") + whole.str();
  if (decimals > 0) out += "." + frac;
  return strip_zeros(out);
}

std::string format_log10(double log10_value, int decimals) {
  if (std::isinf(log10_value) && log10_value < 0) return "0.0";
  if (log10_value < 15) {
    return format_double_truncated(std::pow(10.0, log10_value), decimals);
  }
  double exponent = std::floor(log10_value);
  double mantissa = std::pow(10.0, log10_value - exponent);
  if (mantissa * (1 + kNudge) >= 10) {
    mantissa /= 10;
    exponent += 1;
  }
  std::string m = format_double_truncated(mantissa, decimals);
  if (m.size() > 2 && m.ends_with(".0")) m.resize(m.size() - 2);
  std::ostringstream os;
  os << m << "e+" << static_cast<long long>(exponent);
  return os.str();
}

RatioRow ratio_row(const Quantity& ones, const Quantity& steps, int states,
                   std::string source) {
  if (states < 1) throw Error("state count must be at least 1");
  if ((ones.exact && *ones.exact == 0) || std::isinf(ones.log10)) {
    throw Error("ones must be positive");
  }
  RatioRow r;
  r.ones = ones;
  r.steps = steps;
  r.states = states;
  r.source = std::move(source);
  const double ls = std::log10(static_cast<double>(states));
  if (ones.exact && steps.exact) {
    const Rational o(*ones.exact), s(*steps.exact);
    r.r1_exact = s / o;
    r.r2_exact = o / states;
    r.r3_exact = *r.r1_exact / *r.r2_exact;
  }
  r.log10_r1 = steps.log10 - ones.log10;
  r.log10_r2 = ones.log10 - ls;
  r.log10_r3 = r.log10_r1 - r.log10_r2;
  return r;
}

RatioRow ratio_row(const BigInt& ones, const BigInt& steps, int states,
                   std::string source) {
  if (ones == 0) throw Error("ones must be positive");
  return ratio_row(Quantity::of(ones), Quantity::of(steps), states,
                   std::move(source));
}

RatioRow ratio_row_log(double log10_ones, double log10_steps, int states,
                       std::string source) {
  return ratio_row(Quantity::of_log10(log10_ones), Quantity::of_log10(log10_steps),
                   states, std::move(source));
}

std::string RatioRow::r1() const {
  return r1_exact ? format_truncated(*r1_exact) : format_log10(log10_r1);
}
std::string RatioRow::r2() const {
  return r2_exact ? format_truncated(*r2_exact) : format_log10(log10_r2);
}
std::string RatioRow::r3() const {
  return r3_exact ? format_truncated(*r3_exact) : format_log10(log10_r3);
}

std::vector<ExternalRecord> ingest_records(std::istream& in,
                                           int exact_digit_limit) {
  std::vector<ExternalRecord> out;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split_csv(line, line_no);
    for (auto& f : fields) f = trim(f);
    if (!header) {
      if (fields != std::vector<std::string>{"label", "ones", "steps", "states"}) {
        throw Error("line " + std::to_string(line_no) +
                    ": expected header label,ones,steps,states");
      }
      header = true;
      continue;
    }
    auto fail = [&](const std::string& what) {
      return Error("line " + std::to_string(line_no) + ": " + what);
    };
    if (fields.size() != 4) throw fail("expected 4 fields");
    ExternalRecord r;
    r.label = fields[0];
    try {
      r.ones = Quantity::parse(fields[1], exact_digit_limit);
      r.steps = Quantity::parse(fields[2], exact_digit_limit);
    } catch (const Error& e) {
      throw fail(e.what());
    }
    if ((r.ones.exact && *r.ones.exact == 0) || std::isinf(r.ones.log10)) {
      throw fail("ones must be positive");
    }
    const std::string& st = fields[3];
    if (st.empty() || st.size() > 3 ||
        st.find_first_not_of("0123456789") != std::string::npos ||
        std::stoi(st) < 1) {
      throw fail("states must be a positive integer");
    }
    r.states = std::stoi(st);
    out.push_back(std::move(r));
  }
  if (!header && line_no > 0) throw Error("missing header");
  return out;
}

std::vector<ExternalRecord> ingest_records(const std::filesystem::path& path,
                                           int exact_digit_limit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return ingest_records(in, exact_digit_limit);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

std::vector<RatioRow> table_rows(std::span<const PPEntry> entries,
                                 std::span<const ExternalRecord> records) {
  std::vector<RatioRow> rows;
  for (const PPEntry& e : entries) {
    if (!e.pp_value || !e.first_found) continue;
    rows.push_back(ratio_row(BigInt(e.ones), BigInt(e.first_found->steps),
                             *e.pp_value, "own programs"));
  }
  for (const ExternalRecord& r : records) {
    rows.push_back(ratio_row(r.ones, r.steps, r.states, r.label));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const RatioRow& a, const RatioRow& b) {
                     return less_quantity(a.ones, b.ones);
                   });
  return rows;
}

std::string build_table(std::span<const PPEntry> entries,
                        std::span<const ExternalRecord> records) {
  std::ostringstream os;
  os << "ones,r1,r2,r3,source\n";
  for (const RatioRow& r : table_rows(entries, records)) {
    os << r.ones.display() << ',' << r.r1() << ',' << r.r2() << ',' << r.r3()
       << ',' << csv_field(r.source) << '\n';
  }
  return os.str();
}

}  // namespace bblab
