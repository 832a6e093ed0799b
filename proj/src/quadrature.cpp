#include "heisen/quadrature.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "heisen/hermite.hpp"

namespace heis {

Eigen::VectorXd QuadratureRule::effectiveWeights() const {
    if (kind != RuleKind::GaussHermiteTensor) return weights;
    Eigen::VectorXd w = weights;
    for (int i = 0; i < count(); ++i) w[i] *= std::exp(nodes.row(i).squaredNorm());
    return w;
}

QuadratureRule gauss_hermite_rule(int m) {
    if (m < 1) throw std::invalid_argument("gauss_hermite_rule: m must be >= 1");

    // Jacobi matrix for the exp(-x^2) weight: zero diagonal, off-diagonal sqrt(k/2).
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
    for (int k = 1; k < m; ++k) {
        double b = std::sqrt(0.5 * k);
        J(k, k - 1) = b;
        J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("gauss_hermite_rule: eigensolver failed");

    QuadratureRule rule;
    rule.dim = 1;
    rule.kind = RuleKind::GaussHermiteTensor;
    rule.nodes.resize(m, 1);
    rule.weights.resize(m);
    for (int i = 0; i < m; ++i) rule.nodes(i, 0) = es.eigenvalues()[i];
    // symmetrize: exact rules are even in x, eigensolver noise is not
    for (int i = 0, j = m - 1; i < j; ++i, --j) {
        double x = 0.5 * (rule.nodes(j, 0) - rule.nodes(i, 0));
        rule.nodes(i, 0) = -x;
        rule.nodes(j, 0) = x;
    }
    if (m % 2 == 1) rule.nodes(m / 2, 0) = 0.0;
    // Weights from the derivative identity w_j e^{x_j^2} = 1 / (m h_{m-1}(x_j)^2)
    // with h_{m-1} the normalized Hermite function (Gaussian carried inside the
    // recurrence). Every factor is O(1), so each weight keeps full relative
    // accuracy. The textbook alternative mu0 * v0^2 from the Jacobi eigenvectors
    // holds only absolute accuracy: edge weights of size e^{-x^2} drown in
    // eigensolver noise, and the e^{+x^2} compensation applied when integrating
    // plain integrands amplifies that noise into the dominant error of any
    // integrand whose mass sits away from the origin.
    for (int i = 0; i < m; ++i) {
        double x = rule.nodes(i, 0);
        double h = hermite_1d(m - 1, x);
        rule.weights[i] = std::exp(-x * x) / (m * h * h);
    }
    return rule;
}

QuadratureRule tensor_rule(const QuadratureRule& rule1d, int dim) {
    if (rule1d.dim != 1) throw std::invalid_argument("tensor_rule: base rule must be 1-D");
    if (dim < 1) throw std::invalid_argument("tensor_rule: dim must be >= 1");
    const int m = rule1d.count();
    long total = 1;
    for (int d = 0; d < dim; ++d) {
        total *= m;
        if (total > 100'000'000L) throw std::invalid_argument("tensor_rule: node count too large");
    }
    QuadratureRule rule;
    rule.dim = dim;
    rule.kind = rule1d.kind;
    rule.nodes.resize(total, dim);
    rule.weights.resize(total);
    for (long idx = 0; idx < total; ++idx) {
        long rem = idx;
        double w = 1.0;
        for (int d = dim - 1; d >= 0; --d) {
            long i = rem % m;
            rem /= m;
            rule.nodes(idx, d) = rule1d.nodes(i, 0);
            w *= rule1d.weights[i];
        }
        rule.weights[idx] = w;
    }
    return rule;
}

QuadratureRule uniform_box_rule(double L, int pointsPerAxis, int dim) {
    if (!(L > 0)) throw std::invalid_argument("uniform_box_rule: L must be positive");
    if (pointsPerAxis < 2) throw std::invalid_argument("uniform_box_rule: need >= 2 points per axis");
    QuadratureRule axis;
    axis.dim = 1;
    axis.kind = RuleKind::UniformTruncated;
    axis.nodes.resize(pointsPerAxis, 1);
    axis.weights.resize(pointsPerAxis);
    const double h = 2.0 * L / (pointsPerAxis - 1);
    for (int i = 0; i < pointsPerAxis; ++i) {
        axis.nodes(i, 0) = -L + h * i;
        axis.weights[i] = (i == 0 || i == pointsPerAxis - 1) ? 0.5 * h : h;
    }
    return dim == 1 ? axis : tensor_rule(axis, dim);
}

Complex integrate(const std::function<Complex(const Eigen::VectorXd&)>& f,
                  const QuadratureRule& rule) {
    const bool compensate = rule.kind == RuleKind::GaussHermiteTensor;
    Complex acc(0.0, 0.0);
    Eigen::VectorXd x(rule.dim);
    for (int i = 0; i < rule.count(); ++i) {
        x = rule.nodes.row(i).transpose();
        Complex v = f(x);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            std::ostringstream os;
            os << "integrate: non-finite integrand at node " << i << " = (";
            for (int d = 0; d < rule.dim; ++d) os << (d ? ", " : "") << x[d];
            os << ")";
            throw EvaluationError(os.str());
        }
        double w = rule.weights[i];
        if (compensate) w *= std::exp(x.squaredNorm());
        acc += w * v;
    }
    return acc;
}

} // namespace heis
