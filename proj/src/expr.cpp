#include "podrbf/expr.hpp"

#include <cctype>
#include <cmath>
#include <vector>

#include "podrbf/errors.hpp"

namespace podrbf {

struct Expression::Node {
  enum Kind { Const, Time, State, Control, Neg, Add, Sub, Mul, Div, Pow, Call1, Call2 } kind = Const;
  double value = 0.0;
  std::size_t index = 0;
  double (*f1)(double) = nullptr;
  double (*f2)(double, double) = nullptr;
  std::unique_ptr<Node> a, b;

  double eval(double t, const Vector& y, const Vector& u) const {
    switch (kind) {
      case Const: return value;
      case Time: return t;
      case State: return y[static_cast<Eigen::Index>(index)];
      case Control: return u[static_cast<Eigen::Index>(index)];
      case Neg: return -a->eval(t, y, u);
      case Add: return a->eval(t, y, u) + b->eval(t, y, u);
      case Sub: return a->eval(t, y, u) - b->eval(t, y, u);
      case Mul: return a->eval(t, y, u) * b->eval(t, y, u);
      case Div: return a->eval(t, y, u) / b->eval(t, y, u);
      case Pow: return std::pow(a->eval(t, y, u), b->eval(t, y, u));
      case Call1: return f1(a->eval(t, y, u));
      case Call2: return f2(a->eval(t, y, u), b->eval(t, y, u));
    }
    return 0.0;
  }
};

namespace {

using Node = Expression::Node;
using NodePtr = std::unique_ptr<Node>;

double f_exp(double x) { return std::exp(x); }
double f_log(double x) { return std::log(x); }
double f_sqrt(double x) { return std::sqrt(x); }
double f_abs(double x) { return std::abs(x); }
double f_sin(double x) { return std::sin(x); }
double f_cos(double x) { return std::cos(x); }
double f_tanh(double x) { return std::tanh(x); }
double f_min(double a, double b) { return std::min(a, b); }
double f_max(double a, double b) { return std::max(a, b); }
double f_pow(double a, double b) { return std::pow(a, b); }

NodePtr make(Node::Kind kind, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_unique<Node>();
  n->kind = kind;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
 public:
  Parser(std::string_view text, std::size_t n_y, std::size_t n_u, const std::map<std::string, double>& constants)
      : s_(text), n_y_(n_y), n_u_(n_u), constants_(constants) {}

  NodePtr parse() {
    auto n = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("expression '" + std::string(s_) + "' at " + std::to_string(pos_) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr sum() {
    auto n = product();
    for (;;) {
      if (accept('+')) n = make(Node::Add, std::move(n), product());
      else if (accept('-')) n = make(Node::Sub, std::move(n), product());
      else return n;
    }
  }
  NodePtr product() {
    auto n = unary();
    for (;;) {
      if (accept('*')) n = make(Node::Mul, std::move(n), unary());
      else if (accept('/')) n = make(Node::Div, std::move(n), unary());
      else return n;
    }
  }
  NodePtr unary() {
    if (accept('-')) return make(Node::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }
  // Right associative; binds tighter than unary minus on its left.
  NodePtr power() {
    auto n = atom();
    if (accept('^')) return make(Node::Pow, std::move(n), unary());
    return n;
  }
  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (accept('(')) {
      auto n = sum();
      expect(')');
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
    fail("unexpected '" + std::string(1, c) + "'");
  }
  NodePtr number() {
    const char* begin = s_.data() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("bad number");
    pos_ += static_cast<std::size_t>(end - begin);
    auto n = make(Node::Const);
    n->value = v;
    return n;
  }
  NodePtr name() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    const std::string id(s_.substr(start, pos_ - start));
    skip();
    if (pos_ < s_.size() && s_[pos_] == '(') return call(id);
    if (auto it = constants_.find(id); it != constants_.end()) {
      auto n = make(Node::Const);
      n->value = it->second;
      return n;
    }
    if (id == "t") return make(Node::Time);
    if (id == "pi") {
      auto n = make(Node::Const);
      n->value = std::acos(-1.0);
      return n;
    }
    if ((id[0] == 'y' || id[0] == 'u') && id.size() > 1 &&
        id.find_first_not_of("0123456789", 1) == std::string::npos) {
      const std::size_t i = std::stoul(id.substr(1));
      const std::size_t limit = id[0] == 'y' ? n_y_ : n_u_;
      if (i < 1 || i > limit) fail("'" + id + "' out of range");
      auto n = make(id[0] == 'y' ? Node::State : Node::Control);
      n->index = i - 1;
      return n;
    }
    fail("unknown name '" + id + "'");
  }
  NodePtr call(const std::string& id) {
    static const std::map<std::string, double (*)(double)> unary_fns = {
        {"exp", f_exp}, {"log", f_log}, {"sqrt", f_sqrt}, {"abs", f_abs},
        {"sin", f_sin}, {"cos", f_cos}, {"tanh", f_tanh}};
    static const std::map<std::string, double (*)(double, double)> binary_fns = {
        {"min", f_min}, {"max", f_max}, {"pow", f_pow}};
    expect('(');
    if (auto it = unary_fns.find(id); it != unary_fns.end()) {
      auto n = make(Node::Call1, sum());
      n->f1 = it->second;
      expect(')');
      return n;
    }
    if (auto it = binary_fns.find(id); it != binary_fns.end()) {
      auto a = sum();
      expect(',');
      auto n = make(Node::Call2, std::move(a), sum());
      n->f2 = it->second;
      expect(')');
      return n;
    }
    fail("unknown function '" + id + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t n_y_, n_u_;
  const std::map<std::string, double>& constants_;
};

}  // namespace

Expression Expression::compile(std::string_view text, std::size_t n_y, std::size_t n_u,
                               const std::map<std::string, double>& constants) {
  Expression e;
  e.text_ = std::string(text);
  e.root_ = Parser(text, n_y, n_u, constants).parse();
  return e;
}

double Expression::operator()(double t, const Vector& y, const Vector& u) const { return root_->eval(t, y, u); }

}  // namespace podrbf
