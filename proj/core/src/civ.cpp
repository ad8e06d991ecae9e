#include "octopia/civ.hpp"

#include <bit>

#include <fmt/format.h>

namespace octopia {

std::string_view to_string(CivContext c) {
  switch (c) {
    case CivContext::Advertisement: return "A";
    case CivContext::Subscription: return "S";
    case CivContext::Publication: return "P";
  }
  return "?";
}

Civ::Civ(std::size_t width, CivContext context, std::size_t cb_index)
    : width_(width), context_(context), cb_(cb_index) {
  if (width == 0 || width > kMaxWidth) {
    throw std::out_of_range(fmt::format("CIV width {} outside 1..{}", width, kMaxWidth));
  }
  if (cb_index >= width) {
    throw std::out_of_range(fmt::format("context bit {} outside width {}", cb_index, width));
  }
}

void Civ::check(std::size_t i) const {
  if (i >= width_) throw std::out_of_range(fmt::format("CIV bit {} outside width {}", i, width_));
}

bool Civ::test(std::size_t i) const {
  check(i);
  return (bits_ >> i) & 1U;
}

std::size_t Civ::count() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<std::size_t> Civ::set_bits() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < width_; ++i) {
    if ((bits_ >> i) & 1U) out.push_back(i);
  }
  return out;
}

void Civ::set(std::size_t i) {
  check(i);
  bits_ |= std::uint64_t{1} << i;
}

void Civ::clear(std::size_t i) {
  check(i);
  bits_ &= ~(std::uint64_t{1} << i);
}

Civ Civ::with_bit(std::size_t i) const {
  Civ c = *this;
  c.set(i);
  return c;
}

Civ Civ::without_bit(std::size_t i) const {
  Civ c = *this;
  c.clear(i);
  return c;
}

std::string Civ::str() const {
  std::string out(width_, '0');
  for (std::size_t i = 0; i < width_; ++i) {
    if ((bits_ >> i) & 1U) out[width_ - 1 - i] = '1';
  }
  return out;
}

Civ civ_make(std::size_t width, CivContext context, std::size_t cb_index) {
  return Civ(width, context, cb_index);
}

Civ civ_set_bit(const Civ& c, std::size_t i) { return c.with_bit(i); }

}  // namespace octopia
