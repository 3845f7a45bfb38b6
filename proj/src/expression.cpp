#include "ppdepth/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

namespace ppdepth {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

class ExpressionParser {
 public:
  explicit ExpressionParser(const std::string& text) : text_(text) {}

  Expression run() {
    Expression expr;
    expr.text_ = text_;
    out_ = &expr.program_;
    uses_time_ = false;
    pos_ = 0;
    parse_sum();
    skip_space();
    if (pos_ != text_.size()) {
      fail("unexpected trailing input");
    }
    expr.uses_time_ = uses_time_;
    // The evaluator runs on a fixed 64-slot stack.
    int depth = 0;
    int peak = 0;
    for (const auto& step : expr.program_) {
      if (step.op == Op::kPushConst || step.op == Op::kPushT) {
        peak = std::max(peak, ++depth);
      } else if (step.op == Op::kAdd || step.op == Op::kSub ||
                 step.op == Op::kMul || step.op == Op::kDiv) {
        --depth;
      }
    }
    if (peak > 64) fail("expression nested too deeply");
    return expr;
  }

 private:
  using Op = Expression::Op;

  void parse_sum() {
    if (++nesting_ > 200) fail("expression nested too deeply");
    parse_product();
    for (;;) {
      skip_space();
      if (consume('+')) {
        parse_product();
        emit(Op::kAdd);
      } else if (consume('-')) {
        parse_product();
        emit(Op::kSub);
      } else {
        --nesting_;
        return;
      }
    }
  }

  void parse_product() {
    parse_factor();
    for (;;) {
      skip_space();
      if (consume('*')) {
        parse_factor();
        emit(Op::kMul);
      } else if (consume('/')) {
        parse_factor();
        emit(Op::kDiv);
      } else {
        return;
      }
    }
  }

  void parse_factor() {
    skip_space();
    if (consume('-')) {
      parse_factor();
      emit(Op::kNeg);
      return;
    }
    if (consume('+')) {
      parse_factor();
      return;
    }
    parse_primary();
  }

  void parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      parse_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      parse_name();
      return;
    }
    if (consume('(')) {
      parse_sum();
      expect(')');
      return;
    }
    fail("unexpected character");
  }

  void parse_number() {
    const char* start = text_.c_str() + pos_;
    char* end = nullptr;
    const double value = std::strtod(start, &end);
    if (end == start) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - start);
    emit_const(value);
  }

  void parse_name() {
    std::size_t end = pos_;
    while (end < text_.size() &&
           std::isalpha(static_cast<unsigned char>(text_[end]))) {
      ++end;
    }
    const std::string name = text_.substr(pos_, end - pos_);
    pos_ = end;
    if (name == "t") {
      emit(Op::kPushT);
      uses_time_ = true;
    } else if (name == "pi") {
      emit_const(kPi);
    } else if (name == "sin" || name == "cos" || name == "exp") {
      expect('(');
      parse_sum();
      expect(')');
      emit(name == "sin" ? Op::kSin : name == "cos" ? Op::kCos : Op::kExp);
    } else {
      fail("unknown name '" + name + "'");
    }
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool consume(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_space();
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }

  void emit(Op op) { out_->push_back({op, 0.0}); }
  void emit_const(double v) { out_->push_back({Op::kPushConst, v}); }

  [[noreturn]] void fail(const std::string& what) {
    throw ExpressionError("expression error at position " +
                          std::to_string(pos_) + ": " + what);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  bool uses_time_ = false;
  int nesting_ = 0;
  std::vector<Expression::Step>* out_ = nullptr;
};

Expression Expression::parse(const std::string& text) {
  return ExpressionParser(text).run();
}

double Expression::operator()(double t) const {
  double stack[64];
  int top = -1;
  for (const Step& step : program_) {
    switch (step.op) {
      case Op::kPushConst:
        stack[++top] = step.value;
        break;
      case Op::kPushT:
        stack[++top] = t;
        break;
      case Op::kAdd:
        stack[top - 1] += stack[top];
        --top;
        break;
      case Op::kSub:
        stack[top - 1] -= stack[top];
        --top;
        break;
      case Op::kMul:
        stack[top - 1] *= stack[top];
        --top;
        break;
      case Op::kDiv:
        stack[top - 1] /= stack[top];
        --top;
        break;
      case Op::kNeg:
        stack[top] = -stack[top];
        break;
      case Op::kSin:
        stack[top] = std::sin(stack[top]);
        break;
      case Op::kCos:
        stack[top] = std::cos(stack[top]);
        break;
      case Op::kExp:
        stack[top] = std::exp(stack[top]);
        break;
    }
  }
  return stack[0];
}

}  // namespace ppdepth
