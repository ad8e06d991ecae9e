#include <doctest.h>

#include <random>

#include "octopia/filter.hpp"
#include "oracles.hpp"

using namespace octopia;

TEST_CASE("parse and print") {
  const auto f = parse_filter("symbol = YHOO, price between 10 50, volume >= 1e3");
  REQUIRE(f.size() == 3);
  CHECK(f[0].attribute == "symbol");
  CHECK(std::get<std::string>(f[0].value) == "YHOO");
  CHECK(f[1].op == Op::Between);
  CHECK(std::get<double>(f[1].upper) == 50);
  CHECK(std::get<double>(f[2].value) == 1000);
  CHECK(parse_filter(to_string(f)) == f);

  const auto q = parse_filter("name = \"two words, one comma\"");
  CHECK(std::get<std::string>(q[0].value) == "two words, one comma");
  CHECK_THROWS_AS(parse_filter(""), FilterError);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_filter("price >"), FilterError);
  CHECK_THROWS_AS(parse_filter("price ~ 3"), FilterError);
  CHECK_THROWS_AS(parse_filter("price between 5 1"), FilterError);
  CHECK_THROWS_AS(parse_filter("symbol < abc"), FilterError);
  CHECK_THROWS_AS(parse_payload("price > 3"), FilterError);
  CHECK_THROWS_AS(make_predicate("x", Op::Lt, std::string("a")), FilterError);
}

TEST_CASE("matching is closed-world") {
  const auto f = parse_filter("symbol = A, price < 10");
  CHECK(matches(parse_payload("symbol = A, price = 5"), f));
  CHECK_FALSE(matches(parse_payload("symbol = A, price = 10"), f));
  CHECK_FALSE(matches(parse_payload("symbol = A"), f));
  CHECK_FALSE(matches(parse_payload("symbol = 3, price = 5"), f));
  CHECK(matches(parse_payload("symbol = A, price = 1, extra = 9"), f));
  CHECK(matches(parse_payload("x = 1"), Filter{}));
}

TEST_CASE("overlap examples") {
  CHECK(overlaps(parse_filter("x between 0 10"), parse_filter("x >= 5")));
  CHECK(overlaps(parse_filter("x between 0 10"), parse_filter("x >= 10")));
  CHECK_FALSE(overlaps(parse_filter("x between 0 10"), parse_filter("x > 10")));
  CHECK_FALSE(overlaps(parse_filter("x = 1"), parse_filter("x = 2")));
  CHECK(overlaps(parse_filter("x > 1"), parse_filter("x < 1.0001")));
  CHECK_FALSE(overlaps(parse_filter("x > 1, x < 1"), Filter{}));
  CHECK(overlaps(parse_filter("s = a"), parse_filter("s != b")));
  CHECK_FALSE(overlaps(parse_filter("s = a"), parse_filter("s != a")));
  CHECK(overlaps(parse_filter("s != a"), parse_filter("s != b")));
  CHECK(overlaps(parse_filter("x = 3"), parse_filter("y = 4")));
  CHECK_THROWS_AS(overlaps(parse_filter("x = 3"), parse_filter("x = three")), FilterError);
}

TEST_CASE("overlap agrees with grid satisfiability") {
  std::mt19937_64 rng(17);
  const Op ops[] = {Op::Eq, Op::Ne, Op::Lt, Op::Le, Op::Gt, Op::Ge, Op::Between};
  auto random_filter = [&] {
    Filter f;
    const auto n = 1 + rng() % 3;
    for (std::size_t i = 0; i < n; ++i) {
      const std::string attr = rng() % 2 ? "x" : "y";
      const auto op = ops[rng() % 7];
      const double lo = static_cast<double>(rng() % 6);
      const double hi = lo + static_cast<double>(rng() % 4);
      f.push_back(make_predicate(attr, op, lo, hi));
    }
    return f;
  };
  for (int trial = 0; trial < 3000; ++trial) {
    const auto a = random_filter();
    const auto b = random_filter();
    CAPTURE(to_string(a));
    CAPTURE(to_string(b));
    REQUIRE(overlaps(a, b) == oracle::overlaps(a, b));
  }
}

TEST_CASE("matching agrees with the reference evaluator") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto lo = static_cast<double>(rng() % 10);
    const Filter f{make_predicate("x", static_cast<Op>(rng() % 7), lo, lo + static_cast<double>(rng() % 3)),
                   make_predicate("s", rng() % 2 ? Op::Eq : Op::Ne, std::string(1, static_cast<char>('a' + rng() % 3)))};
    const Payload p{{"x", static_cast<double>(rng() % 12)}, {"s", std::string(1, static_cast<char>('a' + rng() % 3))}};
    REQUIRE(matches(p, f) == oracle::matches(p, f));
  }
}
