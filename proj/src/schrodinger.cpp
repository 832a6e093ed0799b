#include "heisen/schrodinger.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace heis {

double OperatorMatrix::operatorNorm() const {
    if (entries.size() == 0) return 0.0;
    return Eigen::JacobiSVD<Eigen::MatrixXcd>(entries).singularValues()[0];
}

WaveFunction pi_action(double lambda, const GroupElement& g, WaveFunction phi) {
    if (lambda == 0.0) throw std::invalid_argument("pi_action: lambda must be nonzero");
    const Eigen::VectorXd x = g.z.real();
    const Eigen::VectorXd y = g.z.imag();
    const double central = lambda * g.t + 0.5 * lambda * x.dot(y);
    return [lambda, x, y, central, phi = std::move(phi)](const Eigen::VectorXd& xi) {
        const double phase = central + lambda * x.dot(xi);
        return std::polar(1.0, phase) * phi((xi + y).eval());
    };
}

OperatorMatrix pi_matrix(double lambda, const Eigen::VectorXcd& z, const HermiteBasis& basis) {
    if (lambda != basis.lambda())
        throw std::invalid_argument("pi_matrix: lambda disagrees with basis");
    if (z.size() != basis.n())
        throw std::invalid_argument("pi_matrix: point dimension mismatch");

    const Eigen::VectorXd x = z.real();
    const Eigen::VectorXd y = z.imag();
    const int count = static_cast<int>(basis.nodes().rows());
    const int D = basis.dim();
    const double halfXY = 0.5 * lambda * x.dot(y);

    // shifted basis values S(a, i) = Phi_a^lambda(xi_i + y)
    Eigen::MatrixXd S(D, count);
    Eigen::VectorXd pt(basis.n());
    for (int i = 0; i < count; ++i) {
        pt = basis.nodes().row(i).transpose() + y;
        S.col(i) = basis.valuesAt(pt);
    }

    Eigen::VectorXcd w(count);
    for (int i = 0; i < count; ++i) {
        const double phase = lambda * x.dot(basis.nodes().row(i).transpose()) + halfXY;
        w[i] = basis.effectiveWeights()[i] * std::polar(1.0, phase);
    }

    OperatorMatrix M;
    M.entries = basis.nodeValues().cast<Complex>() * w.asDiagonal() * S.transpose().cast<Complex>();
    return M;
}

double special_hermite_prefactor(int n, double lambda) {
    return std::pow(2.0 * M_PI, -0.5 * n) * std::pow(std::abs(lambda), 0.5 * n);
}

Eigen::MatrixXcd special_hermite_matrix(const Eigen::VectorXcd& z, const HermiteBasis& basis) {
    const double c = special_hermite_prefactor(basis.n(), basis.lambda());
    // value (a, b) pairs with entry (b, a) of the representation matrix
    return c * pi_matrix(basis.lambda(), z, basis).entries.transpose();
}

Complex special_hermite(double lambda, const MultiIndex& alpha, const MultiIndex& beta,
                        const Eigen::VectorXcd& z, const HermiteBasis& basis) {
    if (lambda != basis.lambda())
        throw std::invalid_argument("special_hermite: lambda disagrees with basis");
    const int a = basis.scheme().position(alpha);
    const int b = basis.scheme().position(beta);
    return special_hermite_matrix(z, basis)(a, b);
}

} // namespace heis
