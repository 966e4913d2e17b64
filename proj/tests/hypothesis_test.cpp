#include <doctest.h>

#include <random>

#include "gml/config.hpp"
#include "gml/hypothesis.hpp"
#include "gml/measure.hpp"
#include "support.hpp"

using namespace gml;
using gml::test::error_of;
using gml::test::random_bits;
using gml::test::random_hypothesis;

namespace {

Hypothesis H(const char* text) { return Hypothesis::parse(text); }
BitString X(const char* text) { return BitString::parse(text); }

}  // namespace

TEST_CASE("bit strings parse and expose prefixes") {
  auto x = X("0110");
  CHECK(x.length() == 4);
  CHECK_FALSE(x.bit(0));
  CHECK(x.bit(1));
  CHECK(x.prefix(1) == 0);
  CHECK(x.prefix(2) == 1);
  CHECK(x.prefix(4) == 6);
  CHECK(x.to_string() == "0110");
  CHECK(error_of([&] { (void)x.prefix(5); }) == ErrorCode::InstanceTooShort);
  CHECK(error_of([] { (void)BitString::parse(""); }) == ErrorCode::Parse);
  CHECK(error_of([] { (void)BitString::parse("01a"); }) == ErrorCode::Parse);

  std::string long_text(130, '0');
  long_text[64] = '1';
  long_text[129] = '1';
  auto y = BitString::parse(long_text);
  CHECK(y.bit(64));
  CHECK(y.bit(129));
  CHECK_FALSE(y.bit(63));
  CHECK(y.to_string() == long_text);
}

TEST_CASE("hypothesis text encoding") {
  CHECK(H("2:00,11").to_string() == "2:00,11");
  CHECK(H("2:11,00") == H("2:00,11"));
  CHECK(H("2:").cell_count() == 0);
  CHECK(H("3:").depth() == 3);
  CHECK(error_of([] { (void)H("2:00,00"); }) == ErrorCode::Parse);
  CHECK(error_of([] { (void)H("2:001"); }) == ErrorCode::Parse);
  CHECK(error_of([] { (void)H("0:"); }) == ErrorCode::Parse);
  CHECK(error_of([] { (void)H("x:0"); }) == ErrorCode::Parse);
  CHECK(error_of([] { (void)H("2"); }) == ErrorCode::Parse);
  CHECK(error_of([] { (void)Hypothesis::from_cells(2, {4}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("evaluate") {
  CHECK(evaluate(H("2:00,11"), X("0010")) == Label::One);
  CHECK(evaluate(H("2:00,11"), X("0110")) == Label::Zero);
  CHECK(evaluate(H("1:"), X("1")) == Label::Zero);
  CHECK(evaluate(H("1:"), X("0")) == Label::Zero);
  CHECK(error_of([] { (void)evaluate(H("3:000"), X("00")); }) == ErrorCode::InstanceTooShort);
}

TEST_CASE("refine") {
  CHECK(refine(H("1:0"), 2) == H("2:00,01"));
  CHECK(refine(H("2:00,11"), 2) == H("2:00,11"));
  CHECK(refine(H("1:0,1"), 3) == Hypothesis::full(3));
  CHECK(refine(H("1:0,1"), 3).cell_count() == 8);
  CHECK(error_of([] { (void)refine(H("2:00"), 1); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([] { (void)refine(H("1:0"), depth_cap() + 1); }) == ErrorCode::DepthCap);
}

TEST_CASE("complement") {
  CHECK(complement(H("2:00,01,10")) == H("2:11"));
  CHECK(complement(H("1:")) == H("1:0,1"));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    auto h = random_hypothesis(rng, 1 + static_cast<unsigned>(rng() % 6));
    CHECK(complement(complement(h)) == h);
  }
}

TEST_CASE("combine") {
  CHECK(combine(H("1:1"), H("2:10"), SetOp::Intersection) == H("2:10"));
  CHECK(combine(H("1:0"), H("1:1"), SetOp::Union) == H("1:0,1"));
  CHECK(combine(H("2:00,01"), H("1:0"), SetOp::Difference) == H("2:"));
  CHECK(combine(H("1:0"), H("2:01"), SetOp::Difference) == H("2:00"));
}

TEST_CASE("intersections of odd-position cylinders match enumeration") {
  for (unsigned k = 1; k <= 4; ++k) {
    const unsigned depth = 2 * k - 1;
    Hypothesis acc = bit_is_one_cylinder(1);
    for (unsigned j = 2; j <= k; ++j) {
      acc = combine(acc, bit_is_one_cylinder(2 * j - 1), SetOp::Intersection);
    }
    std::vector<Cell> expected;
    for (Cell c = 0; c < (Cell{1} << depth); ++c) {
      bool ok = true;
      for (unsigned pos = 1; pos <= depth; pos += 2) {
        if (((c >> (depth - pos)) & 1U) == 0) ok = false;
      }
      if (ok) expected.push_back(c);
    }
    CHECK(acc.depth() == depth);
    CHECK(acc.cell_count() == (std::size_t{1} << (k - 1)));
    CHECK(acc == Hypothesis::from_cells(depth, expected));
  }
}

TEST_CASE("symmetric difference") {
  auto h = H("3:000,101,110");
  CHECK(symmetric_difference_cells(h, h) == Hypothesis::empty(3));
  CHECK(symmetric_difference_cells(H("1:0"), H("1:1")) == H("1:0,1"));
  CHECK(symmetric_difference_cells(H("2:00,11"), H("2:00,01")) == H("2:01,11"));
}

TEST_CASE("equivalence ignores depth") {
  CHECK(equivalent(H("2:00,01"), H("1:0")));
  CHECK_FALSE(H("2:00,01") == H("1:0"));
  CHECK_FALSE(equivalent(H("2:00"), H("1:0")));
  CHECK(is_subset(H("2:00"), H("1:0")));
  CHECK_FALSE(is_subset(H("1:0"), H("2:00")));
}

TEST_CASE("depth cap guards full materialization") {
  const unsigned saved = depth_cap();
  set_depth_cap(4);
  CHECK(error_of([] { (void)Hypothesis::full(5); }) == ErrorCode::DepthCap);
  CHECK(error_of([] { (void)complement(Hypothesis::empty(5)); }) == ErrorCode::DepthCap);
  CHECK(Hypothesis::full(4).cell_count() == 16);
  CHECK(error_of([] { set_depth_cap(0); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([] { set_depth_cap(64); }) == ErrorCode::InvalidArgument);
  set_depth_cap(saved);
}

TEST_CASE("labeled samples") {
  CHECK(error_of([] { LabeledSample s({}); }) == ErrorCode::InvalidArgument);
  auto s = gml::test::make_sample({{"0101", 1}, {"01", 0}});
  CHECK(s.size() == 2);
  CHECK(s.min_length() == 2);
  s.require_length(2);
  CHECK(error_of([&] { s.require_length(3); }) == ErrorCode::InstanceTooShort);
}

TEST_CASE("refinement and set operations preserve evaluation semantics") {
  std::mt19937_64 rng(20240501);
  for (int i = 0; i < 10000; ++i) {
    const unsigned d1 = 1 + static_cast<unsigned>(rng() % 6);
    const unsigned d2 = 1 + static_cast<unsigned>(rng() % 6);
    auto a = random_hypothesis(rng, d1);
    auto b = random_hypothesis(rng, d2);
    const unsigned deeper = std::max(d1, d2) + static_cast<unsigned>(rng() % 3);
    auto x = random_bits(rng, deeper + 2);

    const bool ea = evaluate(a, x) == Label::One;
    const bool eb = evaluate(b, x) == Label::One;
    auto ra = refine(a, deeper);
    REQUIRE(evaluate(ra, x) == evaluate(a, x));
    REQUIRE(ra.cell_count() == a.cell_count() << (deeper - d1));
    REQUIRE((evaluate(complement(a), x) == Label::One) == !ea);
    REQUIRE((evaluate(combine(a, b, SetOp::Union), x) == Label::One) == (ea || eb));
    REQUIRE((evaluate(combine(a, b, SetOp::Intersection), x) == Label::One) == (ea && eb));
    REQUIRE((evaluate(combine(a, b, SetOp::Difference), x) == Label::One) == (ea && !eb));
    REQUIRE((evaluate(symmetric_difference_cells(a, b), x) == Label::One) == (ea != eb));
  }
}

TEST_CASE("union and intersection laws at fixed depth") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const unsigned d = 1 + static_cast<unsigned>(rng() % 5);
    auto a = random_hypothesis(rng, d);
    auto b = random_hypothesis(rng, d);
    auto c = random_hypothesis(rng, d);
    for (auto op : {SetOp::Union, SetOp::Intersection}) {
      REQUIRE(combine(a, b, op) == combine(b, a, op));
      REQUIRE(combine(combine(a, b, op), c, op) == combine(a, combine(b, c, op), op));
      REQUIRE(combine(a, a, op) == a);
    }
  }
}
