#include "geodesica/expression.hpp"

#include <cctype>
#include <charconv>
#include <numbers>

#include "geodesica/core.hpp"

namespace geodesica {

class ExpressionParser {
  public:
    ExpressionParser(std::string_view text, Expression& out) : text_(text), out_(out) {}

    int parse() {
        const int root = parse_sum();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character");
        return root;
    }

  private:
    using Kind = Expression::Kind;

    [[noreturn]] void fail(const std::string& why) const {
        throw Error(ErrorCode::ParseError,
                    why + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    int add(Kind kind, int lhs = -1, int rhs = -1, double value = 0.0) {
        Expression::Node node{kind, value, lhs, rhs, false};
        if (kind == Kind::Number) {
            node.constant = true;
        } else if (kind != Kind::Variable) {
            node.constant = out_.nodes_[static_cast<std::size_t>(lhs)].constant &&
                            (rhs < 0 || out_.nodes_[static_cast<std::size_t>(rhs)].constant);
        }
        out_.nodes_.push_back(node);
        return static_cast<int>(out_.nodes_.size()) - 1;
    }

    int parse_sum() {
        int lhs = parse_product();
        for (;;) {
            if (accept('+')) {
                lhs = add(Kind::Add, lhs, parse_product());
            } else if (accept('-')) {
                lhs = add(Kind::Sub, lhs, parse_product());
            } else {
                return lhs;
            }
        }
    }

    int parse_product() {
        int lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = add(Kind::Mul, lhs, parse_unary());
            } else if (accept('/')) {
                lhs = add(Kind::Div, lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    int parse_unary() {
        if (accept('-')) return add(Kind::Neg, parse_unary());
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    int parse_power() {
        const int base = parse_primary();
        if (accept('^')) return add(Kind::Pow, base, parse_unary());
        return base;
    }

    int parse_primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        if (accept('(')) {
            const int inner = parse_sum();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const std::string_view name = text_.substr(start, pos_ - start);
            if (name == "y") return add(Kind::Variable);
            if (name == "pi") return add(Kind::Number, -1, -1, std::numbers::pi);
            Kind fn;
            if (name == "sqrt") {
                fn = Kind::Sqrt;
            } else if (name == "sin") {
                fn = Kind::Sin;
            } else if (name == "cos") {
                fn = Kind::Cos;
            } else if (name == "exp") {
                fn = Kind::Exp;
            } else if (name == "log") {
                fn = Kind::Log;
            } else {
                pos_ = start;
                fail("unknown identifier '" + std::string(name) + "'");
            }
            if (!accept('(')) fail("expected '(' after function name");
            const int arg = parse_sum();
            if (!accept(')')) fail("expected ')'");
            return add(fn, arg);
        }
        fail("unexpected character");
    }

    int parse_number() {
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc()) fail("malformed number");
        pos_ += static_cast<std::size_t>(ptr - first);
        return add(Kind::Number, -1, -1, value);
    }

    std::string_view text_;
    Expression& out_;
    std::size_t pos_ = 0;
};

Expression Expression::parse(std::string_view text) {
    Expression expr;
    expr.text_ = std::string(text);
    ExpressionParser parser(expr.text_, expr);
    expr.root_ = parser.parse();
    return expr;
}

} // namespace geodesica
