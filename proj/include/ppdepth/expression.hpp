#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

// A minimal closed grammar for intensity functions of time:
// numbers, `t`, `pi`, + - * /, unary minus, sin/cos/exp, parentheses.
// Parsed once into a flat postfix program and evaluated with a small stack;
// no scripting runtime involved.

namespace ppdepth {

class ExpressionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Expression {
 public:
  static Expression parse(const std::string& text);

  double operator()(double t) const;

  // False when the expression never references t, i.e. it is constant.
  bool uses_time() const { return uses_time_; }

  const std::string& text() const { return text_; }

 private:
  enum class Op : unsigned char {
    kPushConst,
    kPushT,
    kAdd,
    kSub,
    kMul,
    kDiv,
    kNeg,
    kSin,
    kCos,
    kExp,
  };

  struct Step {
    Op op;
    double value;
  };

  Expression() = default;

  std::string text_;
  std::vector<Step> program_;
  bool uses_time_ = false;
  friend class ExpressionParser;
};

}  // namespace ppdepth
