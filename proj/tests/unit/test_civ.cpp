#include <doctest.h>

#include <stdexcept>

#include "octopia/civ.hpp"

using namespace octopia;

TEST_CASE("bit strings are most significant cluster first") {
  auto c = civ_make(3, CivContext::Advertisement, 0);
  CHECK(c.str() == "000");
  c.set(0);
  CHECK(c.str() == "001");
  CHECK(civ_set_bit(c, 2).str() == "101");
  CHECK(c.with_bit(1).with_bit(2).str() == "111");
  CHECK(c.count() == 1);
  CHECK(c.context_bit());
}

TEST_CASE("host CIV updated by CIB_SET arithmetic") {
  // host in cluster 0, locally interested, then cluster 2 asks in
  auto c = civ_make(3, CivContext::Advertisement, 0).with_bit(0);
  c.set(2);
  CHECK(c.str() == "101");
  c.set(2);
  CHECK(c.str() == "101");
  c.set(1);
  CHECK(c.str() == "111");
  c.clear(2);
  CHECK(c.str() == "011");
  CHECK(c.set_bits() == std::vector<std::size_t>{0, 1});
}

TEST_CASE("value updates leave the original alone") {
  const auto c = civ_make(4, CivContext::Publication, 2);
  const auto d = c.with_bit(3);
  CHECK_FALSE(c.any());
  CHECK(d.raw() == 8);
  CHECK(d.without_bit(3) == c);
  CHECK(d.context() == CivContext::Publication);
  CHECK(d.cb_index() == 2);
}

TEST_CASE("range checks") {
  CHECK_THROWS_AS(civ_make(0, CivContext::Advertisement, 0), std::out_of_range);
  CHECK_THROWS_AS(civ_make(65, CivContext::Advertisement, 0), std::out_of_range);
  CHECK_THROWS_AS(civ_make(3, CivContext::Advertisement, 3), std::out_of_range);
  auto c = civ_make(3, CivContext::Subscription, 1);
  CHECK_THROWS_AS(c.set(3), std::out_of_range);
  CHECK_THROWS_AS(c.with_bit(7), std::out_of_range);
  CHECK_THROWS_AS(c.test(3), std::out_of_range);
  auto wide = civ_make(64, CivContext::Advertisement, 63);
  wide.set(63);
  CHECK(wide.context_bit());
  CHECK(wide.str().front() == '1');
}
