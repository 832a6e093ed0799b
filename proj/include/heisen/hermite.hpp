#pragma once

#include "heisen/multi_index.hpp"
#include "heisen/quadrature.hpp"

namespace heis {

/// Normalized 1-D Hermite function h_k(x) = H_k(x) exp(-x^2/2) / sqrt(2^k k! sqrt(pi)),
/// evaluated by the weighted three-term recurrence
///   h_{k+1}(x) = x sqrt(2/(k+1)) h_k(x) - sqrt(k/(k+1)) h_{k-1}(x),
/// which carries the Gaussian inside and stays bounded for large k and |x|.
double hermite_1d(int k, double x);

/// h_0(x) .. h_{kmax}(x) in one sweep of the recurrence.
Eigen::VectorXd hermite_values(int kmax, double x);

/// Product basis Phi_alpha(x) = prod_j h_{alpha_j}(x_j) on R^n.
double phi_alpha(const MultiIndex& alpha, const Eigen::VectorXd& x);

/// Scaled basis Phi_alpha^lambda(x) = |lambda|^{n/4} Phi_alpha(|lambda|^{1/2} x).
/// lambda must be nonzero; the family is orthonormal in L^2(R^n) for every lambda.
double phi_alpha_scaled(const MultiIndex& alpha, double lambda, const Eigen::VectorXd& x);

/// Truncated scaled Hermite basis with a lambda-adapted Gauss-Hermite tensor rule
/// and cached basis values at the nodes. The internal rule substitutes
/// u = |lambda|^{1/2} x, so the Gram matrix of the cached basis is exact to
/// machine precision whenever pointsPerAxis > maxDegree.
class HermiteBasis {
public:
    HermiteBasis(int n, double lambda, TruncationScheme scheme, int pointsPerAxis = 60);

    int n() const { return n_; }
    double lambda() const { return lambda_; }
    int dim() const { return scheme_.dimension(); }
    const TruncationScheme& scheme() const { return scheme_; }
    int pointsPerAxis() const { return pointsPerAxis_; }

    /// Quadrature nodes in x-coordinates, one row per node (count x n).
    const Eigen::MatrixXd& nodes() const { return nodes_; }
    /// Plain-integrand weights for integration over R^n in x-coordinates.
    const Eigen::VectorXd& effectiveWeights() const { return effW_; }
    /// Cached values: entry (a, i) = Phi_{alpha_a}^lambda(node_i).
    const Eigen::MatrixXd& nodeValues() const { return values_; }

    /// Values of every basis function at an arbitrary point (length D).
    Eigen::VectorXd valuesAt(const Eigen::VectorXd& x) const;

    /// Coefficients <f, Phi_alpha^lambda> for all alpha in the scheme.
    Eigen::VectorXcd expand(const std::function<Complex(const Eigen::VectorXd&)>& f) const;

private:
    int n_;
    double lambda_;
    TruncationScheme scheme_;
    int pointsPerAxis_;
    Eigen::MatrixXd nodes_;
    Eigen::VectorXd effW_;
    Eigen::MatrixXd values_;
};

/// Coefficient vector of f in basis order; convenience wrapper over HermiteBasis::expand.
Eigen::VectorXcd expand_in_hermite(const std::function<Complex(const Eigen::VectorXd&)>& f,
                                   const HermiteBasis& basis);

} // namespace heis
