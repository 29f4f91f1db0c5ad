#ifndef GEODESICA_EXPRESSION_HPP
#define GEODESICA_EXPRESSION_HPP

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/AutoDiff>

namespace geodesica {

/// A scalar expression in the single variable `y`.
///
/// Grammar: numbers, `y`, `pi`, the binary operators `+ - * / ^` (`^` is
/// right-associative and binds tighter than unary minus), parentheses and the
/// functions `sqrt sin cos exp log`. Evaluation is templated on the scalar so
/// the same tree yields derivatives through Eigen's forward-mode AutoDiffScalar.
class Expression {
  public:
    using Dual = Eigen::AutoDiffScalar<Eigen::Matrix<double, 1, 1>>;

    static Expression parse(std::string_view text);

    template <typename Scalar>
    Scalar evaluate(const Scalar& y) const {
        return eval_node<Scalar>(root_, y);
    }

    double operator()(double y) const { return evaluate<double>(y); }

    /// d/dy of the expression, exact up to rounding.
    double derivative(double y) const {
        Dual arg(y, Eigen::Matrix<double, 1, 1>::Constant(1.0));
        return evaluate<Dual>(arg).derivatives()(0);
    }

    const std::string& text() const { return text_; }

  private:
    enum class Kind { Number, Variable, Add, Sub, Mul, Div, Pow, Neg, Sqrt, Sin, Cos, Exp, Log };

    struct Node {
        Kind kind;
        double value = 0.0;
        int lhs = -1;
        int rhs = -1;
        bool constant = false; // subtree does not depend on y
    };

    friend class ExpressionParser;

    template <typename Scalar>
    Scalar eval_node(int index, const Scalar& y) const {
        using std::cos;
        using std::exp;
        using std::log;
        using std::pow;
        using std::sin;
        using std::sqrt;
        const Node& n = nodes_[static_cast<std::size_t>(index)];
        switch (n.kind) {
        case Kind::Number: return Scalar(n.value);
        case Kind::Variable: return y;
        case Kind::Add: return eval_node<Scalar>(n.lhs, y) + eval_node<Scalar>(n.rhs, y);
        case Kind::Sub: return eval_node<Scalar>(n.lhs, y) - eval_node<Scalar>(n.rhs, y);
        case Kind::Mul: return eval_node<Scalar>(n.lhs, y) * eval_node<Scalar>(n.rhs, y);
        case Kind::Div: return eval_node<Scalar>(n.lhs, y) / eval_node<Scalar>(n.rhs, y);
        case Kind::Pow: {
            const Scalar base = eval_node<Scalar>(n.lhs, y);
            if (nodes_[static_cast<std::size_t>(n.rhs)].constant) {
                // constant exponents keep negative bases with integer powers valid
                return pow(base, eval_node<double>(n.rhs, 0.0));
            }
            return exp(eval_node<Scalar>(n.rhs, y) * log(base));
        }
        case Kind::Neg: return -eval_node<Scalar>(n.lhs, y);
        case Kind::Sqrt: return sqrt(eval_node<Scalar>(n.lhs, y));
        case Kind::Sin: return sin(eval_node<Scalar>(n.lhs, y));
        case Kind::Cos: return cos(eval_node<Scalar>(n.lhs, y));
        case Kind::Exp: return exp(eval_node<Scalar>(n.lhs, y));
        case Kind::Log: return log(eval_node<Scalar>(n.lhs, y));
        }
        return Scalar(0.0);
    }

    std::string text_;
    std::vector<Node> nodes_;
    int root_ = -1;
};

} // namespace geodesica

#endif // GEODESICA_EXPRESSION_HPP
