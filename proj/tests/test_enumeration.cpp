#include <gtest/gtest.h>

#include <set>

#include "bblab/enumeration.hpp"
#include "bblab/symmetry.hpp"

using namespace bblab;

namespace {

std::vector<Machine> collect(int n, Shard shard = {},
                             MachineEnumerator::Options opts = {}) {
  MachineEnumerator e(n, shard, opts);
  std::vector<Machine> out;
  Machine m = decode_name("(1, 0, 0)");
  while (e.next(m)) out.push_back(m);
  return out;
}

}  // namespace

TEST(Shard, Parse) {
  EXPECT_EQ(Shard::parse("3/8"), (Shard{3, 8}));
  EXPECT_THROW(Shard::parse("8/8"), Error);
  EXPECT_THROW(Shard::parse("1/0"), Error);
  EXPECT_THROW(Shard::parse("1"), Error);
  EXPECT_THROW(Shard::parse("a/2"), Error);
  EXPECT_THROW(Shard::parse("-1/2"), Error);
}

TEST(Enumerate, CountsMatchFormula) {
  EXPECT_EQ(BigInt(collect(1).size()), machine_space_size(1));
  EXPECT_EQ(BigInt(collect(2).size()), machine_space_size(2));
}

TEST(Enumerate, DistinctAndValid) {
  const auto all = collect(2);
  std::set<std::string> names;
  for (const Machine& m : all) {
    EXPECT_TRUE(validate(m).empty());
    EXPECT_LE(m.n_states(), 2);
    names.insert(encode_name(m));
  }
  EXPECT_EQ(names.size(), all.size());
}

TEST(Enumerate, OrderIsRuleCountThenSubsetThenAssignment) {
  const auto all = collect(1);
  ASSERT_EQ(all.size(), 48u);
  EXPECT_EQ(encode_name(all[0]), "(1, 0, 0)");
  EXPECT_EQ(encode_name(all[5]), "(1, 0, 5)");
  EXPECT_EQ(encode_name(all[6]), "(1, 1, 0)");
  EXPECT_EQ(encode_name(all[12]), "(2, 0, 0, 1, 0)");
  EXPECT_EQ(encode_name(all[13]), "(2, 0, 0, 1, 1)");
  EXPECT_EQ(encode_name(all[47]), "(2, 0, 5, 1, 5)");
  // Within a single from-subset the order coincides with name order.
  EXPECT_TRUE(std::is_sorted(all.begin() + 12, all.end()));
}

TEST(Enumerate, EnumerationLessFollowsTheStream) {
  for (int n : {1, 2}) {
    const auto all = collect(n);
    for (std::size_t i = 1; i < all.size(); ++i) {
      ASSERT_TRUE(enumeration_less(all[i - 1], all[i])) << encode_name(all[i]);
      ASSERT_FALSE(enumeration_less(all[i], all[i - 1]));
    }
  }
  // Independent of n: a 3-state stream keeps the 2-state machines in order.
  EXPECT_TRUE(enumeration_less(decode_name("(2, 0, 9, 2, 3)"),
                               decode_name("(2, 0, 3, 3, 3)")));
  EXPECT_TRUE(enumeration_less(decode_name("(2, 1, 0, 2, 0)"),
                               decode_name("(2, 1, 0, 4, 0)")));
  EXPECT_FALSE(enumeration_less(decode_name("(1, 0, 3)"), decode_name("(1, 0, 3)")));
}

TEST(Enumerate, OrdinalsAreSequential) {
  MachineEnumerator e(2);
  Machine m = decode_name("(1, 0, 0)");
  std::uint64_t expect = 0;
  while (e.next(m)) EXPECT_EQ(e.ordinal(), expect++);
}

TEST(Enumerate, ShardsPartitionTheStream) {
  for (int n : {1, 2}) {
    const auto whole = collect(n);
    for (std::uint64_t total : {1u, 2u, 3u, 5u, 7u}) {
      std::vector<std::optional<Machine>> merged(whole.size());
      std::size_t seen = 0;
      for (std::uint64_t s = 0; s < total; ++s) {
        MachineEnumerator e(n, Shard{s, total});
        Machine m = decode_name("(1, 0, 0)");
        while (e.next(m)) {
          EXPECT_EQ(e.ordinal() % total, s);
          ASSERT_LT(e.ordinal(), merged.size());
          EXPECT_FALSE(merged[e.ordinal()].has_value());
          merged[e.ordinal()] = m;
          ++seen;
        }
      }
      EXPECT_EQ(seen, whole.size());
      for (std::size_t i = 0; i < whole.size(); ++i) {
        ASSERT_TRUE(merged[i].has_value());
        EXPECT_EQ(*merged[i], whole[i]);
      }
    }
  }
}

TEST(Enumerate, Deterministic) {
  EXPECT_EQ(collect(2, Shard{1, 3}), collect(2, Shard{1, 3}));
}

TEST(Enumerate, SkipStartlessCountsSkippedMachines) {
  for (std::uint64_t total : {1u, 3u}) {
    for (std::uint64_t s = 0; s < total; ++s) {
      MachineEnumerator e(2, Shard{s, total}, {.canonical = false, .skip_startless = true});
      Machine m = decode_name("(1, 0, 0)");
      std::uint64_t yielded = 0;
      while (e.next(m)) {
        EXPECT_TRUE(m.rule(0, 0).has_value());
        ++yielded;
      }
      std::uint64_t expected_yield = 0, expected_skip = 0;
      for (const Machine& x : collect(2, Shard{s, total})) {
        (x.rule(0, 0) ? expected_yield : expected_skip)++;
      }
      EXPECT_EQ(yielded, expected_yield);
      EXPECT_EQ(e.skipped(), expected_skip);
    }
  }
}

TEST(Canonical, OrbitExpansionReproducesSpace) {
  for (int n : {1, 2}) {
    MachineEnumerator e(n, {}, {.canonical = true});
    Machine m = decode_name("(1, 0, 0)");
    std::set<std::string> expanded;
    std::uint64_t weighted = 0;
    while (e.next(m)) {
      EXPECT_EQ(canonical_form(m, n), m);
      const auto o = orbit(m, n);
      EXPECT_EQ(static_cast<std::size_t>(e.orbit_size()), o.size());
      weighted += o.size();
      for (const Machine& g : o) expanded.insert(encode_name(g));
    }
    EXPECT_EQ(BigInt(expanded.size()), machine_space_size(n));
    EXPECT_EQ(BigInt(weighted), machine_space_size(n));
  }
}

TEST(Canonical, SubsetOfFullStreamInSameOrder) {
  const auto full = collect(2);
  const auto canon = collect(2, {}, {.canonical = true});
  std::size_t j = 0;
  for (const Machine& m : full) {
    if (j < canon.size() && canon[j] == m) ++j;
  }
  EXPECT_EQ(j, canon.size());
  for (const Machine& m : canon) EXPECT_LE(m, mirror(m));
}

TEST(Canonical, ThreeStateWeightedCount) {
  MachineEnumerator e(3, {}, {.canonical = true, .skip_startless = true});
  Machine m = decode_name("(1, 0, 0)");
  std::uint64_t weighted = 0;
  while (e.next(m)) weighted += static_cast<std::uint64_t>(e.orbit_size());
  EXPECT_EQ(BigInt(weighted + e.skipped()), machine_space_size(3));
}

TEST(Canonical, ShardsPartitionCanonicalStream) {
  const auto whole = collect(2, {}, {.canonical = true});
  std::vector<Machine> merged;
  for (std::uint64_t s = 0; s < 4; ++s) {
    auto part = collect(2, Shard{s, 4}, {.canonical = true});
    merged.insert(merged.end(), part.begin(), part.end());
  }
  std::sort(merged.begin(), merged.end());
  auto sorted = whole;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(merged, sorted);
}

TEST(Enumerate, RejectsUnsupportedSizes) {
  EXPECT_THROW(MachineEnumerator(0), Error);
  EXPECT_THROW(MachineEnumerator(7), Error);
  EXPECT_THROW(MachineEnumerator(2, Shard{2, 2}), Error);
}

TEST(Estimate, PublishedFigures) {
  auto e4 = estimate_sweep(4, 33, 76);
  EXPECT_NEAR(e4.low_seconds / 86400, 58.28, 0.01);
  EXPECT_NEAR(e4.high_seconds / 86400, 134.22, 0.01);
  EXPECT_EQ(format_estimate(e4), "58..135 days");
  EXPECT_EQ(format_estimate(estimate_sweep(5, 530, 2200)), "13775..57179 years");
  auto e1 = estimate_sweep(1, 1, 1);
  EXPECT_NEAR(e1.low_seconds, 48e-6, 1e-12);
  EXPECT_EQ(format_estimate(e1), "48..48 us");
  EXPECT_THROW(estimate_sweep(4, 0, 1), Error);
  EXPECT_THROW(estimate_sweep(4, 1, -1), Error);
}
