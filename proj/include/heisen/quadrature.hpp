#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace heis {

using Complex = std::complex<double>;

struct EvaluationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RuleKind {
    GaussHermiteTensor, // weight exp(-|x|^2) folded into the stored weights
    UniformTruncated    // trapezoid box rule on [-L, L]^dim
};

/// Nodes are rows of `nodes` (count x dim). `weights` are the raw rule weights:
/// for Gauss-Hermite they integrate against exp(-|x|^2); integrate() removes that
/// weight internally so callers always pass the plain integrand.
struct QuadratureRule {
    int dim = 1;
    RuleKind kind = RuleKind::GaussHermiteTensor;
    Eigen::MatrixXd nodes;
    Eigen::VectorXd weights;

    int count() const { return static_cast<int>(nodes.rows()); }

    /// Weights usable against the plain integrand: raw weights for the uniform
    /// rule, exp(+|node|^2)-compensated weights for Gauss-Hermite.
    Eigen::VectorXd effectiveWeights() const;
};

/// m-point Gauss-Hermite rule for the weight exp(-x^2) on R, via the symmetric
/// Jacobi matrix eigenvalue method. Stable for m up to at least 100.
QuadratureRule gauss_hermite_rule(int m);

/// Tensor product of a 1-D rule with itself across `dim` axes.
QuadratureRule tensor_rule(const QuadratureRule& rule1d, int dim);

/// Trapezoid box rule on [-L, L]^dim with `pointsPerAxis` nodes per axis.
QuadratureRule uniform_box_rule(double L, int pointsPerAxis, int dim);

/// Integrate a plain integrand against the rule. Non-finite values at a node
/// raise EvaluationError naming the node.
Complex integrate(const std::function<Complex(const Eigen::VectorXd&)>& f,
                  const QuadratureRule& rule);

} // namespace heis
