#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace octopia {

class FilterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Value = std::variant<double, std::string>;

enum class Op { Eq, Ne, Lt, Le, Gt, Ge, Between };

std::string_view to_string(Op op);

struct Predicate {
  std::string attribute;
  Op op = Op::Eq;
  Value value;
  Value upper;  // only for Between

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

/// Throws FilterError if `between` has lo > hi or a non-equality operator
/// gets a string.
Predicate make_predicate(std::string attribute, Op op, Value value, Value upper = 0.0);

/// Conjunction of predicates.
using Filter = std::vector<Predicate>;
using Payload = std::map<std::string, Value>;

/// Closed-world: an attribute missing from the payload fails its predicate,
/// and a value of the wrong type does not satisfy it.
bool matches(const Payload& payload, const Filter& filter);

/// True iff some payload satisfies both conjunctions. Attributes that only
/// one side mentions do not constrain. Numbers range over the reals, strings
/// over an unbounded alphabet. Throws FilterError when the same attribute is
/// compared with a number on one side and a string on the other.
bool overlaps(const Filter& a, const Filter& b);

/// "symbol = YHOO, price between 10 50, volume >= 1e3". Strings may be
/// double-quoted; a bare token that does not parse as a number is a string.
Filter parse_filter(std::string_view text);
/// "symbol = YHOO, price = 35" (equality pairs only).
Payload parse_payload(std::string_view text);

std::string to_string(const Value& v);
std::string to_string(const Predicate& p);
std::string to_string(const Filter& f);
std::string to_string(const Payload& p);

}  // namespace octopia
