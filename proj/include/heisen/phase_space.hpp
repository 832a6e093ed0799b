#pragma once

#include <memory>
#include <vector>

#include "heisen/schrodinger.hpp"

namespace heis {

/// Function on C^n ~= R^{2n}, either directly evaluable or held as the
/// coefficient matrix A of the conjugated special-Hermite expansion
///   f(z) = sum_{a,b} A(a,b) conj(Phi_{alpha_a alpha_b}^lambda(z)).
/// The conjugated family is an orthonormal basis of L^2(C^n); the coefficient
/// form is the one all spectral operations act on, and it pins the convention
/// every product/transform constant below is derived against.
class PhaseSpaceFunction {
public:
    using Evaluator = std::function<Complex(const Eigen::VectorXcd&)>;

    static PhaseSpaceFunction fromClosure(int n, double lambda, Evaluator fn);
    static PhaseSpaceFunction fromCoefficients(std::shared_ptr<const HermiteBasis> basis,
                                               Eigen::MatrixXcd A);

    int n() const { return n_; }
    double lambda() const { return lambda_; }
    bool hasCoefficients() const { return basis_ != nullptr; }

    const Eigen::MatrixXcd& coefficients() const; // throws unless coefficient form
    const HermiteBasis& basis() const;            // throws unless coefficient form
    std::shared_ptr<const HermiteBasis> basisPtr() const { return basis_; }

    /// Value at z; coefficient form reconstructs through the point functions.
    Complex operator()(const Eigen::VectorXcd& z) const;

private:
    int n_ = 1;
    double lambda_ = 1.0;
    Evaluator fn_;
    std::shared_ptr<const HermiteBasis> basis_;
    Eigen::MatrixXcd A_;
};

/// Quadrature context over C^n: a uniform box rule with the special-Hermite
/// value matrices cached at every node. Node j has complex coordinates
/// z_k = nodes(j, k) + i nodes(j, n + k). The cache turns expansion, twisted
/// convolution, and operator-valued integrals into dense contractions.
class PhaseSpaceQuadrature {
public:
    explicit PhaseSpaceQuadrature(std::shared_ptr<const HermiteBasis> basis,
                                  double boxHalfWidth = 10.0, int pointsPerAxis = 61);

    const HermiteBasis& basis() const { return *basis_; }
    std::shared_ptr<const HermiteBasis> basisPtr() const { return basis_; }
    const QuadratureRule& rule() const { return rule_; }
    int count() const { return rule_.count(); }

    Eigen::VectorXcd nodeZ(int j) const;
    /// Entry (a, b) = Phi_{alpha_a alpha_b}^lambda(z_j).
    const Eigen::MatrixXcd& table(int j) const { return table_[static_cast<size_t>(j)]; }

    /// f evaluated at every node; coefficient form runs off the cached tables.
    Eigen::VectorXcd nodeValues(const PhaseSpaceFunction& f) const;

    /// Expansion coefficients A(a,b) = integral of f(z) Phi_{ab}^lambda(z) dz,
    /// the inverse of the conjugated reconstruction above.
    Eigen::MatrixXcd expand(const PhaseSpaceFunction& f) const;

    /// expand + repackage as a coefficient-form function over this basis.
    PhaseSpaceFunction project(const PhaseSpaceFunction& f) const;

private:
    std::shared_ptr<const HermiteBasis> basis_;
    QuadratureRule rule_;
    std::vector<Eigen::MatrixXcd> table_;
};

/// Special-Hermite value matrices along the shifted lattice {z - w_j}, one per
/// context node, for integrands that see both w and z - w.
std::vector<Eigen::MatrixXcd> shifted_point_table(const Eigen::VectorXcd& z,
                                                  const PhaseSpaceQuadrature& ctx);

/// f*(z) = conj(f(-z)), the involution the Weyl transform carries to the
/// operator adjoint. Coefficient form maps exactly: A* = adjoint(A), since
/// conj(Phi_{ab}(-z)) = Phi_{ba}(z).
PhaseSpaceFunction phase_space_involution(const PhaseSpaceFunction& f);

} // namespace heis
