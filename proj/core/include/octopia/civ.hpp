#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace octopia {

enum class CivContext { Advertisement, Subscription, Publication };

std::string_view to_string(CivContext c);

/// Cluster Index Vector: one bit per cluster, indexed right to left from 0.
/// Width is fixed at construction (the cluster count, at most 64).
class Civ {
 public:
  static constexpr std::size_t kMaxWidth = 64;

  Civ() = default;
  /// Throws std::out_of_range for width 0, width > 64 or cb outside [0,width).
  Civ(std::size_t width, CivContext context, std::size_t cb_index);

  std::size_t width() const { return width_; }
  CivContext context() const { return context_; }
  std::size_t cb_index() const { return cb_; }

  bool test(std::size_t i) const;
  bool context_bit() const { return test(cb_); }
  bool any() const { return bits_ != 0; }
  std::size_t count() const;
  std::uint64_t raw() const { return bits_; }
  std::vector<std::size_t> set_bits() const;

  // Value-returning updates; both throw std::out_of_range for i >= width.
  Civ with_bit(std::size_t i) const;
  Civ without_bit(std::size_t i) const;

  void set(std::size_t i);
  void clear(std::size_t i);

  /// Bit string, most significant cluster first: width 3 with bit 0 set -> "001".
  std::string str() const;

  friend bool operator==(const Civ&, const Civ&) = default;

 private:
  void check(std::size_t i) const;

  std::size_t width_ = 0;
  CivContext context_ = CivContext::Advertisement;
  std::size_t cb_ = 0;
  std::uint64_t bits_ = 0;
};

Civ civ_make(std::size_t width, CivContext context, std::size_t cb_index);
Civ civ_set_bit(const Civ& c, std::size_t i);

}  // namespace octopia
