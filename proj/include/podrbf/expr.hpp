#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "podrbf/types.hpp"

namespace podrbf {

/// Arithmetic expression over t, states y1..yN and controls u1..uM.
/// Supports + - * / ^, unary minus, parentheses, named constants and
/// exp log sqrt abs sin cos tanh min max pow.
class Expression {
 public:
  /// Throws ConfigError on syntax errors, unknown names or out-of-range
  /// state/control indices.
  static Expression compile(std::string_view text, std::size_t n_y, std::size_t n_u,
                            const std::map<std::string, double>& constants = {});

  double operator()(double t, const Vector& y, const Vector& u) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace podrbf
