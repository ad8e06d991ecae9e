#include "octopia/filter.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>

#include <fmt/format.h>

namespace octopia {

namespace {

bool is_numeric_op(Op op) { return op != Op::Eq && op != Op::Ne; }

bool satisfies(const Value& v, const Predicate& p) {
  if (v.index() != p.value.index()) return false;
  switch (p.op) {
    case Op::Eq: return v == p.value;
    case Op::Ne: return v != p.value;
    default: break;
  }
  const double x = std::get<double>(v);
  const double c = std::get<double>(p.value);
  switch (p.op) {
    case Op::Lt: return x < c;
    case Op::Le: return x <= c;
    case Op::Gt: return x > c;
    case Op::Ge: return x >= c;
    case Op::Between: return c <= x && x <= std::get<double>(p.upper);
    default: return false;
  }
}

// Feasible set of one numeric attribute: an interval with open/closed ends,
// optionally pinned to a point, minus finitely many excluded points.
struct NumericDomain {
  double lo = -INFINITY;
  bool lo_open = true;
  double hi = INFINITY;
  bool hi_open = true;
  std::optional<double> pinned;
  bool contradictory = false;
  std::vector<double> excluded;

  void lower(double v, bool open) {
    if (v > lo || (v == lo && open)) {
      lo = v;
      lo_open = open;
    }
  }
  void upper(double v, bool open) {
    if (v < hi || (v == hi && open)) {
      hi = v;
      hi_open = open;
    }
  }

  void add(const Predicate& p) {
    const double c = std::get<double>(p.value);
    switch (p.op) {
      case Op::Eq:
        if (pinned && *pinned != c) contradictory = true;
        pinned = c;
        break;
      case Op::Ne: excluded.push_back(c); break;
      case Op::Lt: upper(c, true); break;
      case Op::Le: upper(c, false); break;
      case Op::Gt: lower(c, true); break;
      case Op::Ge: lower(c, false); break;
      case Op::Between:
        lower(c, false);
        upper(std::get<double>(p.upper), false);
        break;
    }
  }

  bool in_interval(double x) const {
    const bool above = lo_open ? x > lo : x >= lo;
    const bool below = hi_open ? x < hi : x <= hi;
    return above && below;
  }

  bool satisfiable() const {
    if (contradictory) return false;
    auto is_excluded = [&](double x) {
      return std::find(excluded.begin(), excluded.end(), x) != excluded.end();
    };
    if (pinned) return in_interval(*pinned) && !is_excluded(*pinned);
    if (lo < hi) return true;  // uncountably many points, finitely many holes
    if (lo == hi && !lo_open && !hi_open) return !is_excluded(lo);
    return false;
  }
};

struct TextDomain {
  std::optional<std::string> pinned;
  bool contradictory = false;
  std::vector<std::string> excluded;

  void add(const Predicate& p) {
    const auto& s = std::get<std::string>(p.value);
    if (p.op == Op::Eq) {
      if (pinned && *pinned != s) contradictory = true;
      pinned = s;
    } else {
      excluded.push_back(s);
    }
  }

  bool satisfiable() const {
    if (contradictory) return false;
    if (!pinned) return true;
    return std::find(excluded.begin(), excluded.end(), *pinned) == excluded.end();
  }
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

// Splits on `sep` outside double quotes.
std::vector<std::string> split_outside_quotes(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char c : text) {
    if (c == '"') quoted = !quoted;
    if (c == sep && !quoted) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw FilterError(fmt::format("unterminated quote in '{}'", text));
  out.push_back(cur);
  return out;
}

std::vector<std::string> tokens(std::string_view clause) {
  std::vector<std::string> out;
  for (auto& t : split_outside_quotes(clause, ' ')) {
    if (auto s = trim(t); !s.empty()) out.push_back(s);
  }
  return out;
}

Value parse_value(const std::string& token) {
  if (token.size() >= 2 && token.front() == '"' && token.back() == '"') {
    return token.substr(1, token.size() - 2);
  }
  double d = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, d);
  if (ec == std::errc{} && ptr == end) return d;
  return token;
}

Op parse_op(const std::string& token) {
  if (token == "=" || token == "==") return Op::Eq;
  if (token == "!=") return Op::Ne;
  if (token == "<") return Op::Lt;
  if (token == "<=") return Op::Le;
  if (token == ">") return Op::Gt;
  if (token == ">=") return Op::Ge;
  if (token == "between") return Op::Between;
  throw FilterError(fmt::format("unknown operator '{}'", token));
}

}  // namespace

std::string_view to_string(Op op) {
  switch (op) {
    case Op::Eq: return "=";
    case Op::Ne: return "!=";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::Between: return "between";
  }
  return "?";
}

Predicate make_predicate(std::string attribute, Op op, Value value, Value upper) {
  if (attribute.empty()) throw FilterError("predicate without attribute");
  if (is_numeric_op(op) && !std::holds_alternative<double>(value)) {
    throw FilterError(fmt::format("operator '{}' on '{}' needs a number", to_string(op), attribute));
  }
  if (op == Op::Between) {
    if (!std::holds_alternative<double>(upper)) {
      throw FilterError(fmt::format("'between' on '{}' needs numbers", attribute));
    }
    if (std::get<double>(value) > std::get<double>(upper)) {
      throw FilterError(fmt::format("'between' on '{}' has lo > hi", attribute));
    }
  } else {
    upper = 0.0;
  }
  return Predicate{std::move(attribute), op, std::move(value), std::move(upper)};
}

bool matches(const Payload& payload, const Filter& filter) {
  return std::all_of(filter.begin(), filter.end(), [&](const Predicate& p) {
    const auto it = payload.find(p.attribute);
    return it != payload.end() && satisfies(it->second, p);
  });
}

bool overlaps(const Filter& a, const Filter& b) {
  std::map<std::string, std::vector<const Predicate*>> by_attribute;
  for (const auto* f : {&a, &b}) {
    for (const auto& p : *f) by_attribute[p.attribute].push_back(&p);
  }
  for (const auto& [attribute, preds] : by_attribute) {
    const bool numeric = std::holds_alternative<double>(preds.front()->value);
    for (const auto* p : preds) {
      if (std::holds_alternative<double>(p->value) != numeric) {
        throw FilterError(fmt::format("attribute '{}' compared as both number and string", attribute));
      }
    }
    if (numeric) {
      NumericDomain d;
      for (const auto* p : preds) d.add(*p);
      if (!d.satisfiable()) return false;
    } else {
      TextDomain d;
      for (const auto* p : preds) d.add(*p);
      if (!d.satisfiable()) return false;
    }
  }
  return true;
}

Filter parse_filter(std::string_view text) {
  Filter out;
  for (const auto& clause : split_outside_quotes(text, ',')) {
    const auto t = tokens(clause);
    if (t.empty()) continue;
    if (t.size() < 3) throw FilterError(fmt::format("incomplete predicate '{}'", trim(clause)));
    const Op op = parse_op(t[1]);
    const std::size_t want = op == Op::Between ? 4 : 3;
    if (t.size() != want) throw FilterError(fmt::format("malformed predicate '{}'", trim(clause)));
    out.push_back(make_predicate(t[0], op, parse_value(t[2]),
                                 op == Op::Between ? parse_value(t[3]) : Value{0.0}));
  }
  if (out.empty()) throw FilterError("empty filter");
  return out;
}

Payload parse_payload(std::string_view text) {
  Payload out;
  for (const auto& p : parse_filter(text)) {
    if (p.op != Op::Eq) throw FilterError(fmt::format("payload entry '{}' must use '='", p.attribute));
    if (!out.emplace(p.attribute, p.value).second) {
      throw FilterError(fmt::format("payload repeats attribute '{}'", p.attribute));
    }
  }
  return out;
}

std::string to_string(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return fmt::format("{}", *d);
  return fmt::format("\"{}\"", std::get<std::string>(v));
}

std::string to_string(const Predicate& p) {
  if (p.op == Op::Between) {
    return fmt::format("{} between {} {}", p.attribute, to_string(p.value), to_string(p.upper));
  }
  return fmt::format("{} {} {}", p.attribute, to_string(p.op), to_string(p.value));
}

std::string to_string(const Filter& f) {
  std::string out;
  for (const auto& p : f) {
    if (!out.empty()) out += ", ";
    out += to_string(p);
  }
  return out;
}

std::string to_string(const Payload& p) {
  std::string out;
  for (const auto& [k, v] : p) {
    if (!out.empty()) out += ", ";
    out += fmt::format("{} = {}", k, to_string(v));
  }
  return out;
}

}  // namespace octopia
