#include <doctest.h>

#include <stdexcept>

#include "octopia/lst.hpp"

using namespace octopia;

namespace {

LstEntry entry(std::uint64_t q_len, std::uint64_t q_in, std::uint64_t q_out) {
  LstEntry e;
  e.q_len = q_len;
  e.q_in = q_in;
  e.q_out = q_out;
  return e;
}

}  // namespace

TEST_CASE("congestion predicate") {
  CHECK_FALSE(is_congested(entry(0, 500, 0), 10));
  CHECK(congestion_element(entry(20, 30, 29)) == doctest::Approx(31.0 / 30.0));
  CHECK(is_congested(entry(20, 30, 29), 10));
  CHECK_FALSE(is_congested(entry(5, 0, 100), 10));
  // strict: exactly tau is not congested
  CHECK_FALSE(is_congested(entry(10, 0, 0), 10));
  CHECK_FALSE(is_congested(entry(5, 3, 1), 10));
  CHECK(is_congested(entry(11, 0, 0), 10));
}

TEST_CASE("queue accounting") {
  LinkStatusTable t(50 * kMillisecond);
  t.on_enqueue(7, 0);
  t.on_enqueue(7, 10);
  t.on_dequeue(7, 20);
  auto e = t.entry(7, 30);
  CHECK(e.q_len == 1);
  CHECK(e.q_in == 2);
  CHECK(e.q_out == 1);
  CHECK(t.q_len(7) == 1);
  CHECK(t.q_len(3) == 0);
  CHECK_THROWS(t.on_dequeue(3, 40));
}

TEST_CASE("windows tumble") {
  const SimTime w = 50 * kMillisecond;
  LinkStatusTable t(w);
  for (int i = 0; i < 12; ++i) t.on_enqueue(1, i);
  CHECK(t.congested(1, 100, 10));
  auto e = t.entry(1, w + 5);
  CHECK(e.q_in == 0);
  CHECK(e.q_out == 0);
  CHECK(e.q_len == 12);
  CHECK(e.window_start == w);
  // queue still long in the new window: CE = 1, 12 > 10
  CHECK(t.congested(1, w + 5, 10));
  t.on_dequeue(1, w + 6);
  t.on_dequeue(1, w + 7);
  CHECK_FALSE(t.congested(1, w + 8, 10));
  CHECK(t.entry(1, 3 * w + 1).window_start == 3 * w);
}
