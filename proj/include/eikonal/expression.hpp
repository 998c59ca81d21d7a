#pragma once

#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "eikonal/common.hpp"

namespace eikonal {

/// Arithmetic expression over named variables, for weight fields supplied in
/// scenario files. Supports + - * / ^, unary minus, parentheses, the
/// constants pi and inf, and the functions abs, sqrt, log, exp, sin, cos,
/// tan, atan2, hypot, min, max, pow, floor.
class Expression {
 public:
  static Expression parse(const std::string& text) {
    Parser p{text, 0};
    Expression expr;
    expr.root_ = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size())
      throw ParseError("expression: unexpected character '" + std::string(1, text[p.pos]) +
                       "' at position " + std::to_string(p.pos));
    return expr;
  }

  double eval(const std::map<std::string, double>& vars) const { return root_->eval(vars); }

 private:
  struct Node {
    virtual ~Node() = default;
    virtual double eval(const std::map<std::string, double>& vars) const = 0;
  };
  using NodePtr = std::shared_ptr<const Node>;

  struct Num : Node {
    double v;
    explicit Num(double x) : v(x) {}
    double eval(const std::map<std::string, double>&) const override { return v; }
  };
  struct Var : Node {
    std::string name;
    explicit Var(std::string n) : name(std::move(n)) {}
    double eval(const std::map<std::string, double>& vars) const override {
      const auto it = vars.find(name);
      if (it == vars.end()) throw ParseError("expression: unknown variable '" + name + "'");
      return it->second;
    }
  };
  struct Unary : Node {
    char op;
    NodePtr a;
    Unary(char o, NodePtr x) : op(o), a(std::move(x)) {}
    double eval(const std::map<std::string, double>& vars) const override {
      const double x = a->eval(vars);
      return op == '-' ? -x : x;
    }
  };
  struct Binary : Node {
    char op;
    NodePtr a, b;
    Binary(char o, NodePtr x, NodePtr y) : op(o), a(std::move(x)), b(std::move(y)) {}
    double eval(const std::map<std::string, double>& vars) const override {
      const double x = a->eval(vars), y = b->eval(vars);
      switch (op) {
        case '+':
          return x + y;
        case '-':
          return x - y;
        case '*':
          return x * y;
        case '/':
          return x / y;
        case '^':
          return std::pow(x, y);
      }
      return 0.0;
    }
  };
  struct Call : Node {
    std::string name;
    std::vector<NodePtr> args;
    double eval(const std::map<std::string, double>& vars) const override {
      const auto arg = [&](std::size_t i) { return args[i]->eval(vars); };
      if (name == "abs") return std::abs(arg(0));
      if (name == "sqrt") return std::sqrt(arg(0));
      if (name == "log") return std::log(arg(0));
      if (name == "exp") return std::exp(arg(0));
      if (name == "sin") return std::sin(arg(0));
      if (name == "cos") return std::cos(arg(0));
      if (name == "tan") return std::tan(arg(0));
      if (name == "floor") return std::floor(arg(0));
      if (name == "atan2") return std::atan2(arg(0), arg(1));
      if (name == "hypot") return std::hypot(arg(0), arg(1));
      if (name == "min") return std::min(arg(0), arg(1));
      if (name == "max") return std::max(arg(0), arg(1));
      if (name == "pow") return std::pow(arg(0), arg(1));
      throw ParseError("expression: unknown function '" + name + "'");
    }
  };

  struct Parser {
    const std::string& s;
    std::size_t pos;

    void skip_ws() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
      skip_ws();
      if (pos < s.size() && s[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }

    NodePtr parse_expr() {
      NodePtr a = parse_term();
      for (;;) {
        skip_ws();
        if (eat('+'))
          a = std::make_shared<Binary>('+', a, parse_term());
        else if (eat('-'))
          a = std::make_shared<Binary>('-', a, parse_term());
        else
          return a;
      }
    }
    NodePtr parse_term() {
      NodePtr a = parse_factor();
      for (;;) {
        skip_ws();
        if (eat('*'))
          a = std::make_shared<Binary>('*', a, parse_factor());
        else if (eat('/'))
          a = std::make_shared<Binary>('/', a, parse_factor());
        else
          return a;
      }
    }
    // Unary minus binds looser than '^': -2^2 parses as -(2^2).
    NodePtr parse_factor() {
      skip_ws();
      if (eat('-')) return std::make_shared<Unary>('-', parse_factor());
      if (eat('+')) return parse_factor();
      NodePtr a = parse_primary();
      skip_ws();
      if (eat('^')) return std::make_shared<Binary>('^', a, parse_factor());
      return a;
    }
    NodePtr parse_primary() {
      skip_ws();
      if (pos >= s.size()) throw ParseError("expression: unexpected end of input");
      const char c = s[pos];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
      if (eat('(')) {
        NodePtr a = parse_expr();
        if (!eat(')'))
          throw ParseError("expression: missing ')' at position " + std::to_string(pos));
        return a;
      }
      throw ParseError("expression: unexpected character '" + std::string(1, c) +
                       "' at position " + std::to_string(pos));
    }
    NodePtr parse_number() {
      std::size_t end = pos;
      while (end < s.size() && (std::isdigit(static_cast<unsigned char>(s[end])) || s[end] == '.' ||
                                s[end] == 'e' || s[end] == 'E' ||
                                ((s[end] == '+' || s[end] == '-') && end > pos &&
                                 (s[end - 1] == 'e' || s[end - 1] == 'E'))))
        ++end;
      const std::string tok = s.substr(pos, end - pos);
      try {
        const double v = std::stod(tok);
        pos = end;
        return std::make_shared<Num>(v);
      } catch (const std::exception&) {
        throw ParseError("expression: bad number '" + tok + "' at position " + std::to_string(pos));
      }
    }
    NodePtr parse_ident() {
      std::size_t end = pos;
      while (end < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[end])) || s[end] == '_'))
        ++end;
      const std::string name = s.substr(pos, end - pos);
      pos = end;
      skip_ws();
      if (pos < s.size() && s[pos] == '(') {
        ++pos;
        auto call = std::make_shared<Call>();
        call->name = name;
        if (!eat(')')) {
          for (;;) {
            call->args.push_back(parse_expr());
            if (eat(')')) break;
            if (!eat(','))
              throw ParseError("expression: expected ',' or ')' at position " +
                               std::to_string(pos));
          }
        }
        return call;
      }
      if (name == "pi") return std::make_shared<Num>(M_PI);
      if (name == "inf") return std::make_shared<Num>(inf());
      return std::make_shared<Var>(name);
    }
  };

  NodePtr root_;
};

}  // namespace eikonal
