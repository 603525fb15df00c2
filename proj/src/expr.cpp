#include "acpm/expr.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

#include "acpm/errors.hpp"

namespace acpm {

namespace {
enum class Kind {
  Number,
  Coord,
  Param,
  Neg,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Call
};
}  // namespace

struct Expr::Node {
  Kind kind;
  double number = 0.0;
  int slot = -1;      // coordinate or parameter index
  int exponent = 0;   // Pow
  UnaryFn fn = UnaryFn::Exp;
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<Expr::Node>;

struct Parser {
  std::string_view src;
  std::size_t pos = 0;
  const std::vector<std::string>& coords;
  const std::vector<std::string>& params;

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
      ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= src.size();
  }

  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  NodePtr make(Kind k) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = k;
    return n;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (consume('+')) {
        auto n = make(Kind::Add);
        n->a = lhs;
        n->b = parse_term();
        lhs = n;
      } else if (consume('-')) {
        auto n = make(Kind::Sub);
        n->a = lhs;
        n->b = parse_term();
        lhs = n;
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      if (consume('*')) {
        auto n = make(Kind::Mul);
        n->a = lhs;
        n->b = parse_factor();
        lhs = n;
      } else if (consume('/')) {
        auto n = make(Kind::Div);
        n->a = lhs;
        n->b = parse_factor();
        lhs = n;
      } else {
        return lhs;
      }
    }
  }

  // '^' binds tighter than unary minus: -x^2 is -(x^2).
  NodePtr parse_factor() {
    if (consume('-')) {
      auto n = make(Kind::Neg);
      n->a = parse_factor();
      return n;
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (consume('^')) {
      auto n = make(Kind::Pow);
      n->a = base;
      n->exponent = parse_int_exponent();
      return n;
    }
    return base;
  }

  int parse_int_exponent() {
    skip_ws();
    std::size_t start = pos;
    bool neg = false;
    if (pos < src.size() && (src[pos] == '-' || src[pos] == '+')) {
      neg = src[pos] == '-';
      ++pos;
    }
    std::size_t digits = pos;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
      ++pos;
    if (pos == digits)
      throw SyntaxError("expected integer exponent after '^'", start);
    if (pos < src.size() && src[pos] == '.')
      throw SyntaxError("exponent must be an integer", pos);
    int value = 0;
    auto res = std::from_chars(src.data() + digits, src.data() + pos, value);
    if (res.ec != std::errc())
      throw SyntaxError("exponent out of range", digits);
    return neg ? -value : value;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos >= src.size())
      throw SyntaxError("unexpected end of expression", pos);
    const char c = src[pos];
    if (c == '(') {
      ++pos;
      NodePtr inner = parse_expr();
      if (!consume(')'))
        throw SyntaxError("expected ')'", pos);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return parse_identifier();
    throw SyntaxError(std::string("expected operand, found '") + c + "'", pos);
  }

  NodePtr parse_number() {
    std::size_t start = pos;
    double value = 0.0;
    auto res = std::from_chars(src.data() + pos, src.data() + src.size(), value);
    if (res.ec != std::errc() || res.ptr == src.data() + pos)
      throw SyntaxError("malformed number", start);
    pos = static_cast<std::size_t>(res.ptr - src.data());
    auto n = make(Kind::Number);
    n->number = value;
    return n;
  }

  NodePtr parse_identifier() {
    std::size_t start = pos;
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
      ++pos;
    std::string name(src.substr(start, pos - start));
    if (peek() == '(') {
      ++pos;  // consume '('
      auto n = make(Kind::Call);
      n->fn = lookup_function(name, start);
      n->a = parse_expr();
      if (!consume(')'))
        throw SyntaxError("expected ')' after function argument", pos);
      return n;
    }
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (coords[i] == name) {
        auto n = make(Kind::Coord);
        n->slot = static_cast<int>(i);
        return n;
      }
    for (std::size_t i = 0; i < params.size(); ++i)
      if (params[i] == name) {
        auto n = make(Kind::Param);
        n->slot = static_cast<int>(i);
        return n;
      }
    throw UnknownIdentifier(name, start);
  }

  UnaryFn lookup_function(const std::string& name, std::size_t offset) {
    if (name == "exp") return UnaryFn::Exp;
    if (name == "log") return UnaryFn::Log;
    if (name == "sin") return UnaryFn::Sin;
    if (name == "cos") return UnaryFn::Cos;
    if (name == "sinh") return UnaryFn::Sinh;
    if (name == "cosh") return UnaryFn::Cosh;
    if (name == "sqrt") return UnaryFn::Sqrt;
    throw UnknownIdentifier(name, offset);
  }
};

Jet eval_node(const Expr::Node* n, std::span<const double> point,
              std::span<const double> params, int dim, int order) {
  switch (n->kind) {
    case Kind::Number:
      return Jet::constant(dim, order, n->number);
    case Kind::Coord:
      return Jet::variable(dim, order, n->slot, point[n->slot]);
    case Kind::Param:
      return Jet::constant(dim, order, params[n->slot]);
    case Kind::Neg:
      return -eval_node(n->a.get(), point, params, dim, order);
    case Kind::Add:
      return eval_node(n->a.get(), point, params, dim, order) +
             eval_node(n->b.get(), point, params, dim, order);
    case Kind::Sub:
      return eval_node(n->a.get(), point, params, dim, order) -
             eval_node(n->b.get(), point, params, dim, order);
    case Kind::Mul:
      return eval_node(n->a.get(), point, params, dim, order) *
             eval_node(n->b.get(), point, params, dim, order);
    case Kind::Div:
      return eval_node(n->a.get(), point, params, dim, order) /
             eval_node(n->b.get(), point, params, dim, order);
    case Kind::Pow:
      return pow_int(eval_node(n->a.get(), point, params, dim, order),
                     n->exponent);
    case Kind::Call: {
      Jet u = eval_node(n->a.get(), point, params, dim, order);
      switch (n->fn) {
        case UnaryFn::Exp: return exp(u);
        case UnaryFn::Log: return log(u);
        case UnaryFn::Sin: return sin(u);
        case UnaryFn::Cos: return cos(u);
        case UnaryFn::Sinh: return sinh(u);
        case UnaryFn::Cosh: return cosh(u);
        case UnaryFn::Sqrt: return sqrt(u);
      }
      break;
    }
  }
  throw std::logic_error("unreachable expression node");
}

}  // namespace

Expr Expr::parse(std::string_view source, const std::vector<std::string>& coords,
                 const std::vector<std::string>& params) {
  if (source.empty()) throw SyntaxError("empty expression", 0);
  Parser p{source, 0, coords, params};
  NodePtr root = p.parse_expr();
  if (!p.at_end())
    throw SyntaxError("unexpected trailing input", p.pos);
  Expr e;
  e.root_ = root;
  e.source_ = std::string(source);
  e.n_coords_ = static_cast<int>(coords.size());
  e.n_params_ = static_cast<int>(params.size());
  return e;
}

Jet Expr::eval(std::span<const double> point, std::span<const double> params,
               int order) const {
  if (!root_) throw std::logic_error("evaluating an empty expression");
  if (static_cast<int>(point.size()) != n_coords_)
    throw std::invalid_argument("point dimension does not match declared coords");
  if (static_cast<int>(params.size()) != n_params_)
    throw std::invalid_argument("parameter count does not match declaration");
  return eval_node(root_.get(), point, params, n_coords_, order);
}

double Expr::eval_value(std::span<const double> point,
                        std::span<const double> params) const {
  return eval(point, params, 0).value();
}

Jet eval_jet(const Expr& e, std::span<const double> point,
             const std::map<std::string, double>& param_values,
             const std::vector<std::string>& param_names, int order) {
  std::vector<double> bound;
  bound.reserve(param_names.size());
  for (const auto& name : param_names) {
    auto it = param_values.find(name);
    if (it == param_values.end())
      throw std::invalid_argument("parameter '" + name + "' not bound");
    bound.push_back(it->second);
  }
  return e.eval(point, bound, order);
}

}  // namespace acpm
