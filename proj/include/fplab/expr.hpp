#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "fplab/fset.hpp"

namespace fplab {

// Running tally of pairs/elements dropped by the zero conventions while
// evaluating an expression.
struct DropLog {
  u64 ratio_pairs = 0;
  u64 reciprocal_elems = 0;
};

using Bindings = std::map<std::string, FSet, std::less<>>;

// Set-valued expression over bound names: + - * / ^d, unary minus,
// scalar translate/dilate, scalar/set reciprocal-dilate, & intersection.
// Examples: "A*A + A", "(A-A)^2 + (A-A)^2", "A & (A+3)", "1/A + 1/(A+A)".
class SetExpr {
 public:
  static SetExpr parse(std::string_view text) {
    Parser p{text, 0};
    SetExpr e = p.parse_isect();
    p.skip_ws();
    if (p.pos != text.size()) throw usage_error("set expression: trailing input at '" +
                                                std::string(text.substr(p.pos)) + "'");
    return e;
  }

  FSet eval(const PrimeField& f, const Bindings& b, DropLog* drops = nullptr) const {
    Value v = node_->eval(f, b, drops);
    if (auto* s = std::get_if<FSet>(&v)) return *s;
    return FSet::of(f, {std::get<u64>(v) % f.modulus()});
  }

  std::string to_string() const { return node_->print(); }

 private:
  using Value = std::variant<u64, FSet>;

  struct Node {
    virtual ~Node() = default;
    virtual Value eval(const PrimeField&, const Bindings&, DropLog*) const = 0;
    virtual std::string print() const = 0;
  };
  using NodePtr = std::shared_ptr<const Node>;

  struct NameNode : Node {
    std::string name;
    explicit NameNode(std::string n) : name(std::move(n)) {}
    Value eval(const PrimeField& f, const Bindings& b, DropLog*) const override {
      auto it = b.find(name);
      if (it == b.end()) throw usage_error("unbound set name '" + name + "'");
      if (it->second.field() != f) throw usage_error("binding '" + name + "' has wrong modulus");
      return it->second;
    }
    std::string print() const override { return name; }
  };

  struct ScalarNode : Node {
    u64 v;
    explicit ScalarNode(u64 x) : v(x) {}
    Value eval(const PrimeField& f, const Bindings&, DropLog*) const override {
      return f.reduce(v);
    }
    std::string print() const override { return std::to_string(v); }
  };

  struct OpNode : Node {
    char op;  // one of + - * / ^ & and 'n' for unary minus
    NodePtr lhs, rhs;
    u64 exponent = 0;

    Value eval(const PrimeField& f, const Bindings& b, DropLog* d) const override {
      Value l = lhs->eval(f, b, d);
      if (op == 'n') return negate(f, l);
      if (op == '^') return power(f, l);
      Value r = rhs->eval(f, b, d);
      switch (op) {
        case '+': return add(f, l, r);
        case '-': return add(f, l, negate(f, r));
        case '*': return mul(f, l, r);
        case '/': return divide(f, l, r, d);
        case '&': return isect(f, l, r);
      }
      throw usage_error("set expression: unknown operator");
    }

    static Value negate(const PrimeField& f, const Value& v) {
      if (auto* s = std::get_if<u64>(&v)) return f.neg(*s);
      return dilate(std::get<FSet>(v), f.modulus() - 1);
    }
    Value power(const PrimeField& f, const Value& v) const {
      if (auto* s = std::get_if<u64>(&v)) return f.pow(*s, exponent);
      return power_set(std::get<FSet>(v), exponent);
    }
    static Value add(const PrimeField& f, const Value& l, const Value& r) {
      if (l.index() == 0 && r.index() == 0) return f.add(std::get<u64>(l), std::get<u64>(r));
      if (l.index() == 0) return translate(std::get<FSet>(r), std::get<u64>(l));
      if (r.index() == 0) return translate(std::get<FSet>(l), std::get<u64>(r));
      return sumset(std::get<FSet>(l), std::get<FSet>(r));
    }
    static Value mul(const PrimeField& f, const Value& l, const Value& r) {
      if (l.index() == 0 && r.index() == 0) return f.mul(std::get<u64>(l), std::get<u64>(r));
      if (l.index() == 0) {
        u64 s = std::get<u64>(l);
        const FSet& a = std::get<FSet>(r);
        return s == 0 ? (a.empty() ? a : FSet::of(f, {0})) : dilate(a, s);
      }
      if (r.index() == 0) return mul(f, r, l);
      return productset(std::get<FSet>(l), std::get<FSet>(r));
    }
    static Value divide(const PrimeField& f, const Value& l, const Value& r, DropLog* d) {
      if (r.index() == 0) {  // X / scalar
        u64 s = std::get<u64>(r);
        if (s == 0) throw std::domain_error("division by zero scalar");
        return mul(f, Value(f.inv(s)), l);
      }
      const FSet& den = std::get<FSet>(r);
      if (l.index() == 1) {
        u64 dropped = 0;
        FSet out = ratioset(std::get<FSet>(l), den, &dropped);
        if (d) d->ratio_pairs += dropped;
        return out;
      }
      // scalar / set
      u64 s = std::get<u64>(l);
      u64 dropped = 0;
      FSet rec = reciprocal_set(den, &dropped);
      if (d) d->reciprocal_elems += dropped;
      if (s == 0) return rec.empty() ? rec : FSet::of(f, {0});
      return s == 1 ? rec : dilate(rec, s);
    }
    static Value isect(const PrimeField&, const Value& l, const Value& r) {
      if (l.index() != 1 || r.index() != 1)
        throw usage_error("intersection requires set operands");
      return intersect(std::get<FSet>(l), std::get<FSet>(r));
    }

    std::string print() const override {
      if (op == 'n') return "-" + lhs->print();
      if (op == '^') return lhs->print() + "^" + std::to_string(exponent);
      return "(" + lhs->print() + " " + op + " " + rhs->print() + ")";
    }
  };

  struct Parser {
    std::string_view s;
    std::size_t pos;

    void skip_ws() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
      skip_ws();
      if (pos < s.size() && s[pos] == c) { ++pos; return true; }
      return false;
    }
    char peek() {
      skip_ws();
      return pos < s.size() ? s[pos] : '\0';
    }

    SetExpr parse_isect() {
      SetExpr e = parse_addsub();
      while (eat('&')) e = make_op('&', e, parse_addsub());
      return e;
    }
    SetExpr parse_addsub() {
      SetExpr e = parse_muldiv();
      for (;;) {
        if (eat('+')) e = make_op('+', e, parse_muldiv());
        else if (eat('-')) e = make_op('-', e, parse_muldiv());
        else return e;
      }
    }
    SetExpr parse_muldiv() {
      SetExpr e = parse_power();
      for (;;) {
        if (eat('*')) e = make_op('*', e, parse_power());
        else if (eat('/')) e = make_op('/', e, parse_power());
        else return e;
      }
    }
    SetExpr parse_power() {
      SetExpr e = parse_unary();
      if (eat('^')) {
        u64 d = parse_number();
        auto n = std::make_shared<OpNode>();
        n->op = '^';
        n->lhs = e.node_;
        n->exponent = d;
        e.node_ = n;
      }
      return e;
    }
    SetExpr parse_unary() {
      if (eat('-')) {
        auto n = std::make_shared<OpNode>();
        n->op = 'n';
        n->lhs = parse_unary().node_;
        SetExpr e;
        e.node_ = n;
        return e;
      }
      return parse_primary();
    }
    SetExpr parse_primary() {
      skip_ws();
      if (pos >= s.size()) throw usage_error("set expression: unexpected end of input");
      char c = s[pos];
      SetExpr e;
      if (c == '(') {
        ++pos;
        e = parse_isect();
        if (!eat(')')) throw usage_error("set expression: missing ')'");
        return e;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        e.node_ = std::make_shared<ScalarNode>(parse_number());
        return e;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
          ++pos;
        e.node_ = std::make_shared<NameNode>(std::string(s.substr(start, pos - start)));
        return e;
      }
      throw usage_error(std::string("set expression: unexpected character '") + c + "'");
    }
    u64 parse_number() {
      skip_ws();
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) throw usage_error("set expression: expected a number");
      return std::stoull(std::string(s.substr(start, pos - start)));
    }
    static SetExpr make_op(char op, SetExpr l, SetExpr r) {
      auto n = std::make_shared<OpNode>();
      n->op = op;
      n->lhs = l.node_;
      n->rhs = r.node_;
      SetExpr e;
      e.node_ = n;
      return e;
    }
  };

  SetExpr() = default;
  NodePtr node_;
};

inline FSet eval_expr(std::string_view text, const PrimeField& f, const Bindings& b,
                      DropLog* drops = nullptr) {
  return SetExpr::parse(text).eval(f, b, drops);
}

}  // namespace fplab
