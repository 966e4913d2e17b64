#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "gml/bounds.hpp"
#include "gml/config.hpp"
#include "gml/learner.hpp"
#include "gml/oracle.hpp"
#include "gml/synth.hpp"
#include "support.hpp"

using namespace gml;
using gml::test::error_of;
using gml::test::make_sample;

namespace {

Hypothesis H(const char* text) { return Hypothesis::parse(text); }
Rational R(const char* text) { return parse_rational(text); }

std::vector<LabeledExample> repeat(const char* x, int y, std::size_t count) {
  return std::vector<LabeledExample>(count, {BitString::parse(x), y ? Label::One : Label::Zero});
}

// 10^4 examples over the four depth-2 cells. Depth 2 fits exactly; the best
// depth-1 fit is wrong on 30% of the sample.
LabeledSample thirty_percent_sample() {
  std::vector<LabeledExample> all;
  for (auto part : {repeat("0000", 1, 3500), repeat("0100", 0, 1500), repeat("1000", 0, 3500),
                    repeat("1100", 1, 1500)}) {
    all.insert(all.end(), part.begin(), part.end());
  }
  return LabeledSample(std::move(all));
}

LabeledSample first_bit_sample(std::size_t m, std::uint64_t seed) {
  auto d = SyntheticDistribution::uniform(H("1:1"), 0, 6);
  return sample(d, m, seed);
}

LabeledSample random_sample(std::mt19937_64& rng, std::size_t m, std::size_t length) {
  std::vector<LabeledExample> out;
  for (std::size_t i = 0; i < m; ++i) {
    out.push_back({gml::test::random_bits(rng, length), (rng() & 1U) ? Label::One : Label::Zero});
  }
  return LabeledSample(std::move(out));
}

LabeledSample flipped(const LabeledSample& s) {
  std::vector<LabeledExample> out(s.examples().begin(), s.examples().end());
  for (auto& ex : out) ex.y = flip(ex.y);
  return LabeledSample(std::move(out));
}

}  // namespace

TEST_CASE("empirical risk") {
  auto s = make_sample({{"00", 1}, {"01", 1}, {"10", 0}, {"11", 1}});
  CHECK(empirical_risk(H("2:00,01,11"), s) == 0);
  CHECK(empirical_risk(H("2:10"), s) == 1);
  CHECK(empirical_risk(H("1:0"), s) == R("1/4"));
  CHECK(error_of([&] { (void)empirical_risk(H("3:000"), s); }) == ErrorCode::InstanceTooShort);
}

TEST_CASE("erm in class") {
  auto s = make_sample({{"00", 1}, {"01", 1}, {"00", 0}, {"11", 0}});
  auto r = erm_in_class(1, s);
  CHECK(r.hypothesis == H("1:0"));
  CHECK(r.risk == R("1/4"));
  CHECK(erm_bruteforce(1, s).risk == r.risk);

  auto zeros = make_sample({{"01", 0}, {"10", 0}});
  CHECK(erm_in_class(2, zeros).hypothesis == H("2:"));
  CHECK(erm_in_class(2, zeros).risk == 0);

  auto tie = make_sample({{"0", 1}, {"0", 0}, {"1", 1}});
  auto t = erm_in_class(1, tie);
  CHECK(t.hypothesis == H("1:1"));
  CHECK(t.risk == R("1/3"));

  ErmOptions ones{Label::One};
  CHECK(erm_in_class(2, zeros, ones).hypothesis == H("2:00,11"));
  CHECK(error_of([&] { (void)erm_in_class(3, zeros); }) == ErrorCode::InstanceTooShort);
  CHECK(error_of([&] { (void)erm_in_class(depth_cap() + 1, zeros); }) == ErrorCode::DepthCap);
}

TEST_CASE("brute-force erm") {
  auto one_per_cell = make_sample({{"00", 1}, {"01", 0}, {"10", 0}, {"11", 1}});
  CHECK(erm_bruteforce(2, one_per_cell).risk == 0);
  CHECK(erm_bruteforce(2, one_per_cell).hypothesis == H("2:00,11"));
  CHECK(error_of([] {
          (void)erm_bruteforce(4, make_sample({{"0000", 1}}));
        }) == ErrorCode::DepthCap);

  std::mt19937_64 rng(3);
  for (unsigned n = 1; n <= 3; ++n) {
    for (int i = 0; i < 50; ++i) {
      auto s = random_sample(rng, 1 + rng() % 50, 4);
      auto fast = erm_in_class(n, s);
      auto slow = erm_bruteforce(n, s);
      REQUIRE(fast.risk == slow.risk);
      REQUIRE(fast.risk == empirical_risk(fast.hypothesis, s));
      REQUIRE(fast.hypothesis.cell_count() == slow.hypothesis.cell_count());
    }
  }
}

TEST_CASE("label flip symmetry") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 300; ++i) {
    const unsigned n = 1 + static_cast<unsigned>(rng() % 4);
    auto s = random_sample(rng, 1 + rng() % 40, 5);
    auto a = erm_in_class(n, s);
    auto b = erm_in_class(n, flipped(s), ErmOptions{Label::One});
    // Tied cells go to 0 on both sides, so compare risks rather than cells.
    REQUIRE(a.risk == b.risk);
    REQUIRE(empirical_risk(complement(a.hypothesis), flipped(s)) == a.risk);
  }
}

TEST_CASE("default index range") {
  CHECK(default_index_range(1).n_max == 1);
  CHECK(default_index_range(2).n_max == 1);
  CHECK(default_index_range(1000).n_max == 9);
  CHECK(default_index_range(1024).n_max == 10);
  CHECK(default_index_range(std::uint64_t{1} << 40).n_max == depth_cap());
}

TEST_CASE("gml selection on a first-bit target") {
  auto s = first_bit_sample(1000, 8);
  auto r = gml_select(s, 0.1, WeightScheme::geometric(), {1, 4});
  CHECK(r.chosen_n == 1);
  CHECK(r.empirical_risk == 0);
  CHECK(r.chosen == H("1:1"));
  CHECK(r.penalty == doctest::Approx(0.05037447).epsilon(1e-6));
  CHECK(r.objective == doctest::Approx(r.penalty));
  REQUIRE(r.trace.size() == 4);
  for (const auto& t : r.trace) CHECK(t.best_empirical_risk == 0);
}

TEST_CASE("gml selection with all-zero labels") {
  auto s = make_sample({{"0110", 0}, {"1011", 0}, {"0001", 0}});
  auto r = gml_select(s, 0.1, WeightScheme::harmonic(), {2, 4});
  CHECK(r.chosen_n == 2);
  CHECK(r.chosen == H("2:"));
  CHECK(r.empirical_risk == 0);
}

TEST_CASE("gml selection prefers depth 2 when depth 1 misfits 30%") {
  auto s = thirty_percent_sample();
  auto r = gml_select(s, 0.1, WeightScheme::geometric(), {1, 3});
  REQUIRE(r.trace.size() == 3);
  CHECK(r.trace[0].best_empirical_risk == R("3/10"));
  CHECK(r.trace[1].best_empirical_risk == 0);
  CHECK(r.trace[2].best_empirical_risk == 0);
  CHECK(r.trace[1].objective == doctest::Approx(0.0189137719).epsilon(1e-8));
  CHECK(r.chosen_n == 2);
  CHECK(r.chosen == H("2:00,11"));

  auto u = unpenalized_union_erm(s, {1, 3});
  CHECK(u.empirical_risk <= r.empirical_risk);
  CHECK(u.chosen_n == 2);
}

TEST_CASE("selection result invariants") {
  std::mt19937_64 rng(77);
  auto d = SyntheticDistribution::uniform(H("3:001,010,100,111"), R("1/10"), 10);
  for (int i = 0; i < 40; ++i) {
    auto s = sample(d, 50 + rng() % 500, rng());
    const auto w = (i % 2) ? WeightScheme::geometric() : WeightScheme::harmonic();
    auto r = gml_select(s, 0.05, w, {1, 7});
    REQUIRE(r.trace.size() == 7);
    CHECK(std::abs(r.objective - (to_double(r.empirical_risk) + r.penalty)) <= 1e-12);
    CHECK(r.penalty == gml_penalty(r.chosen_n, s.size(), 0.05, w));
    CHECK(r.chosen.depth() == r.chosen_n);
    CHECK(empirical_risk(r.chosen, s) == r.empirical_risk);
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
      CHECK(r.trace[k].n == k + 1);
      CHECK(r.objective <= r.trace[k].objective);
      if (k > 0) {
        CHECK(r.trace[k].best_empirical_risk <= r.trace[k - 1].best_empirical_risk);
        CHECK(r.trace[k].penalty > r.trace[k - 1].penalty);
      }
    }
  }
}

TEST_CASE("single-index range degenerates to erm") {
  std::mt19937_64 rng(4);
  auto s = random_sample(rng, 60, 6);
  for (unsigned n = 1; n <= 5; ++n) {
    auto r = gml_select(s, 0.1, WeightScheme::geometric(), {n, n});
    auto e = erm_in_class(n, s);
    CHECK(r.chosen == e.hypothesis);
    CHECK(r.empirical_risk == e.risk);
    auto f = fixed_n_select(s, n);
    CHECK(f.chosen == e.hypothesis);
    CHECK(f.penalty == 0.0);
  }
}

TEST_CASE("selection range errors") {
  auto s = make_sample({{"0101", 1}});
  CHECK(error_of([&] { (void)gml_select(s, 0.1, WeightScheme::geometric(), {3, 2}); }) ==
        ErrorCode::InvalidArgument);
  CHECK(error_of([&] { (void)gml_select(s, 0.1, WeightScheme::geometric(), {0, 2}); }) ==
        ErrorCode::InvalidArgument);
  CHECK(error_of([&] { (void)gml_select(s, 0.1, WeightScheme::geometric(), {1, 5}); }) ==
        ErrorCode::InstanceTooShort);
  CHECK(error_of([&] { (void)gml_select(s, 1.5, WeightScheme::geometric(), {1, 2}); }) ==
        ErrorCode::Domain);
  auto zero_tail = WeightScheme::custom({0.5}, WeightScheme::Tail::Zero);
  CHECK(error_of([&] { (void)gml_select(s, 0.1, zero_tail, {1, 2}); }) == ErrorCode::ZeroWeight);
}

TEST_CASE("unpenalized union erm") {
  auto d = SyntheticDistribution::uniform(H("2:00,11"), R("1/5"), 12);
  auto s = sample(d, 100, 5);
  auto r = unpenalized_union_erm(s, {1, 10});
  CHECK(r.chosen_n >= 7);
  CHECK(r.empirical_risk < R("1/20"));
  CHECK(r.penalty == 0.0);

  auto clean = first_bit_sample(300, 1);
  auto c = unpenalized_union_erm(clean, {1, 5});
  CHECK(c.chosen_n == 1);
  CHECK(c.empirical_risk == 0);
}

TEST_CASE("holdout selection") {
  auto clean = first_bit_sample(1000, 2);
  auto r = holdout_select(clean, 0.8, {1, 4});
  CHECK(r.chosen_n == 1);
  CHECK(r.objective == 0.0);

  auto ten = first_bit_sample(10, 3);
  CHECK(holdout_select(ten, 0.8, {1, 2}).trace.size() == 2);
  CHECK(error_of([&] { (void)holdout_select(ten, 0.999, {1, 2}); }) == ErrorCode::Domain);
  CHECK(error_of([&] { (void)holdout_select(ten, 0.0, {1, 2}); }) == ErrorCode::Domain);
}

TEST_CASE("holdout trains on the first part only") {
  // 8 training examples say cell 0 -> 1; the 2 validation examples disagree.
  std::vector<LabeledExample> rows;
  for (auto part : {repeat("00", 1, 4), repeat("10", 0, 4), repeat("00", 0, 2)}) {
    rows.insert(rows.end(), part.begin(), part.end());
  }
  LabeledSample s(std::move(rows));
  auto r = holdout_select(s, 0.8, {1, 1});
  CHECK(r.chosen == H("1:0"));
  CHECK(r.objective == 1.0);
  CHECK(r.empirical_risk == 0);
}

TEST_CASE("sup deviation") {
  // A sample that matches its distribution exactly deviates by zero.
  auto d = SyntheticDistribution::uniform(H("1:1"), 0, 2);
  auto exact = make_sample({{"00", 0}, {"01", 0}, {"10", 1}, {"11", 1}});
  CHECK(sup_deviation(1, exact, d) == 0);
  CHECK(sup_deviation(2, exact, d) == 0);

  auto skewed = make_sample({{"00", 0}, {"00", 1}, {"10", 1}, {"11", 1}});
  CHECK(sup_deviation(1, skewed, d) == sup_deviation_bruteforce(1, skewed, d));

  std::mt19937_64 rng(21);
  auto noisy = SyntheticDistribution::uniform(H("2:01,10"), R("1/10"), 5);
  for (int i = 0; i < 50; ++i) {
    auto s = sample(noisy, 1 + rng() % 50, rng());
    REQUIRE(sup_deviation(3, s, noisy) == sup_deviation_bruteforce(3, s, noisy));
  }
}

TEST_CASE("oracle check sweep") {
  for (unsigned n = 1; n <= 3; ++n) {
    auto r = oracle_check(n, 100, 7);
    CHECK(r.total == 100);
    CHECK(r.passed == 100);
  }
  CHECK(error_of([] { (void)oracle_check(4, 1, 1); }) == ErrorCode::DepthCap);
}
