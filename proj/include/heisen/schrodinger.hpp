#pragma once

#include "heisen/heisenberg_group.hpp"
#include "heisen/hermite.hpp"

namespace heis {

/// Dense operator on the truncated basis. Convention: columns index the input
/// basis vector, rows the output; entry (b, a) = <A Phi_alpha^lambda, Phi_beta^lambda>
/// with alpha at position a and beta at position b.
struct OperatorMatrix {
    Eigen::MatrixXcd entries;

    int rows() const { return static_cast<int>(entries.rows()); }
    int cols() const { return static_cast<int>(entries.cols()); }
    double hsNorm() const { return entries.norm(); }
    double operatorNorm() const; // largest singular value
};

using WaveFunction = std::function<Complex(const Eigen::VectorXd&)>;

/// pi_lambda(z, t) phi (xi) = e^{i lambda t} e^{i lambda (x.xi + x.y/2)} phi(xi + y),
/// z = x + iy. Returns the transformed wave function as a closure.
WaveFunction pi_action(double lambda, const GroupElement& g, WaveFunction phi);

/// Matrix of pi_lambda(z, 0) compressed to the basis: entry (b, a) =
/// <pi_lambda(z) Phi_alpha^lambda, Phi_beta^lambda>, by Gauss-Hermite quadrature
/// on the basis rule. Exactly unitary only in the untruncated limit; entries are
/// quadrature-accurate, and compressions to index blocks well below maxDegree
/// converge as maxDegree grows.
OperatorMatrix pi_matrix(double lambda, const Eigen::VectorXcd& z, const HermiteBasis& basis);

/// Matrix of all special Hermite function values at z: entry (a, b) =
/// Phi_{alpha beta}^lambda(z) = (2 pi)^{-n/2} |lambda|^{n/2}
///   (pi_lambda(z) Phi_alpha^lambda, Phi_beta^lambda).
/// The family is an orthonormal basis of L^2(C^n).
Eigen::MatrixXcd special_hermite_matrix(const Eigen::VectorXcd& z, const HermiteBasis& basis);

/// Single value Phi_{alpha beta}^lambda(z).
Complex special_hermite(double lambda, const MultiIndex& alpha, const MultiIndex& beta,
                        const Eigen::VectorXcd& z, const HermiteBasis& basis);

/// (2 pi)^{-n/2} |lambda|^{n/2}, the prefactor fixed by L^2(C^n) orthonormality.
double special_hermite_prefactor(int n, double lambda);

} // namespace heis
