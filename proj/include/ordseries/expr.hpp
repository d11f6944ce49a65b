#pragma once

#include <charconv>
#include <cmath>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "arith.hpp"
#include "errors.hpp"
#include "series.hpp"

namespace ordseries {

// Result of a calc expression: a scalar or a table of the binding kind.
template <IndexKind K>
using calc_value = std::variant<double, series<K>, frame<K>>;

namespace detail {

struct expr_token {
  enum class kind { number, ident, op, lparen, rparen, end };
  kind k;
  double number = 0.0;
  std::string text;
};

inline std::vector<expr_token> tokenize_expr(std::string_view text) {
  std::vector<expr_token> out;
  std::size_t i = 0;
  auto two = [&](char a, char b) {
    return i + 1 < text.size() && text[i] == a && text[i + 1] == b;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    if ((c >= '0' && c <= '9') || c == '.') {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
      if (ec != std::errc{}) throw parse_error("invalid number in expression");
      out.push_back({expr_token::kind::number, v, {}});
      i = std::size_t(ptr - text.data());
      continue;
    }
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
      std::size_t j = i + 1;
      while (j < text.size() && ((text[j] >= 'a' && text[j] <= 'z') ||
                                 (text[j] >= 'A' && text[j] <= 'Z') ||
                                 (text[j] >= '0' && text[j] <= '9') || text[j] == '_')) {
        ++j;
      }
      out.push_back({expr_token::kind::ident, 0.0, std::string(text.substr(i, j - i))});
      i = j;
      continue;
    }
    if (c == '(') {
      out.push_back({expr_token::kind::lparen, 0.0, "("});
      ++i;
      continue;
    }
    if (c == ')') {
      out.push_back({expr_token::kind::rparen, 0.0, ")"});
      ++i;
      continue;
    }
    for (const char* op : {"<=", ">=", "==", "!="}) {
      if (two(op[0], op[1])) {
        out.push_back({expr_token::kind::op, 0.0, op});
        i += 2;
        goto next;
      }
    }
    if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^' || c == '<' || c == '>') {
      out.push_back({expr_token::kind::op, 0.0, std::string(1, c)});
      ++i;
      continue;
    }
    throw parse_error(std::string("unexpected character '") + c + "' in expression");
  next:;
  }
  out.push_back({expr_token::kind::end, 0.0, {}});
  return out;
}

template <IndexKind K>
calc_value<K> calc_bin(bin_op op, const calc_value<K>& a, const calc_value<K>& b) {
  return std::visit(
      [&](const auto& x, const auto& y) -> calc_value<K> {
        using X = std::remove_cvref_t<decltype(x)>;
        using Y = std::remove_cvref_t<decltype(y)>;
        if constexpr (std::is_same_v<X, double> && std::is_same_v<Y, double>) {
          return *apply_bin(op, cell{x}, cell{y});
        } else {
          return calc_value<K>(zip_op(x, y, op));
        }
      },
      a, b);
}

template <SeriesLike S, typename Fn>
S map_cells(const S& s, Fn fn) {
  auto cols = copy_columns(s);
  for (auto& col : cols) {
    for (cell& c : col) {
      if (c) c = fn(*c);
    }
  }
  return S::with(s, s.index(), std::move(cols), s.frequency());
}

template <IndexKind K>
calc_value<K> calc_unary_fn(const std::string& name, const calc_value<K>& v) {
  if (name == "diff") {
    return std::visit(
        [](const auto& x) -> calc_value<K> {
          using X = std::remove_cvref_t<decltype(x)>;
          if constexpr (std::is_same_v<X, double>) {
            throw domain_error("diff needs a series, not a scalar");
          } else {
            return calc_value<K>(diff_by(x, 1, 1, true));
          }
        },
        v);
  }
  double (*fn)(double) = nullptr;
  if (name == "log") {
    fn = [](double x) { return std::log(x); };
  } else if (name == "exp") {
    fn = [](double x) { return std::exp(x); };
  } else if (name == "sqrt") {
    fn = [](double x) { return std::sqrt(x); };
  } else if (name == "abs") {
    fn = [](double x) { return std::fabs(x); };
  } else {
    throw parse_error("unknown function '" + name + "'");
  }
  return std::visit(
      [&](const auto& x) -> calc_value<K> {
        using X = std::remove_cvref_t<decltype(x)>;
        if constexpr (std::is_same_v<X, double>) {
          return fn(x);
        } else {
          return calc_value<K>(map_cells(x, fn));
        }
      },
      v);
}

// Recursive descent over: compare > additive > term > unary > power > atom.
// ^ binds tighter than unary minus and associates right.
template <IndexKind K>
class expr_parser {
 public:
  expr_parser(std::vector<expr_token> tokens, const std::map<std::string, calc_value<K>>& bindings)
      : tokens_(std::move(tokens)), bindings_(bindings) {}

  calc_value<K> run() {
    auto v = parse_compare();
    if (peek().k != expr_token::kind::end) {
      throw parse_error("unexpected trailing input in expression");
    }
    return v;
  }

 private:
  const expr_token& peek() const { return tokens_[pos_]; }
  expr_token take() { return tokens_[pos_++]; }

  bool take_op(std::initializer_list<const char*> names) {
    if (peek().k != expr_token::kind::op) return false;
    for (const char* n : names) {
      if (peek().text == n) {
        ++pos_;
        pending_op_ = n;
        return true;
      }
    }
    return false;
  }

  calc_value<K> parse_compare() {
    auto v = parse_additive();
    while (take_op({"<", "<=", ">", ">=", "==", "!="})) {
      auto rhs = parse_additive();
      v = calc_bin(*bin_op_from_name(pending_op_), v, rhs);
    }
    return v;
  }

  calc_value<K> parse_additive() {
    auto v = parse_term();
    while (take_op({"+", "-"})) {
      auto op = *bin_op_from_name(pending_op_);
      auto rhs = parse_term();
      v = calc_bin(op, v, rhs);
    }
    return v;
  }

  calc_value<K> parse_term() {
    auto v = parse_unary();
    while (take_op({"*", "/"})) {
      auto op = *bin_op_from_name(pending_op_);
      auto rhs = parse_unary();
      v = calc_bin(op, v, rhs);
    }
    return v;
  }

  calc_value<K> parse_unary() {
    if (take_op({"-"})) {
      auto v = parse_unary();
      return calc_bin(bin_op::mul, calc_value<K>(-1.0), v);
    }
    if (take_op({"+"})) return parse_unary();
    return parse_power();
  }

  calc_value<K> parse_power() {
    auto v = parse_atom();
    if (take_op({"^"})) {
      auto rhs = parse_unary();
      return calc_bin(bin_op::pow, v, rhs);
    }
    return v;
  }

  calc_value<K> parse_atom() {
    const auto& t = peek();
    if (t.k == expr_token::kind::number) {
      return take().number;
    }
    if (t.k == expr_token::kind::lparen) {
      take();
      auto v = parse_compare();
      if (peek().k != expr_token::kind::rparen) throw parse_error("expected ')'");
      take();
      return v;
    }
    if (t.k == expr_token::kind::ident) {
      std::string name = take().text;
      if (peek().k == expr_token::kind::lparen) {
        take();
        auto arg = parse_compare();
        if (peek().k != expr_token::kind::rparen) throw parse_error("expected ')'");
        take();
        return calc_unary_fn(name, arg);
      }
      auto it = bindings_.find(name);
      if (it == bindings_.end()) throw parse_error("unknown name '" + name + "'");
      return it->second;
    }
    throw parse_error("expected a value in expression");
  }

  std::vector<expr_token> tokens_;
  const std::map<std::string, calc_value<K>>& bindings_;
  std::size_t pos_ = 0;
  std::string pending_op_;
};

}  // namespace detail

// Evaluate a calc expression over named bindings: identifiers, scalars,
// + - * / ^, comparisons, parentheses, unary minus, and the functions
// log, exp, sqrt, abs, diff. Tables align on index intersection; scalars
// broadcast.
template <IndexKind K>
calc_value<K> eval_expression(std::string_view text,
                              const std::map<std::string, calc_value<K>>& bindings) {
  detail::expr_parser<K> parser(detail::tokenize_expr(text), bindings);
  return parser.run();
}

}  // namespace ordseries
