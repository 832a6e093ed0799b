#include "heisen/phase_space.hpp"

namespace heis {

PhaseSpaceFunction PhaseSpaceFunction::fromClosure(int n, double lambda, Evaluator fn) {
    if (n < 1) throw std::invalid_argument("PhaseSpaceFunction: n must be >= 1");
    if (lambda == 0.0) throw std::invalid_argument("PhaseSpaceFunction: lambda must be nonzero");
    if (!fn) throw std::invalid_argument("PhaseSpaceFunction: empty closure");
    PhaseSpaceFunction f;
    f.n_ = n;
    f.lambda_ = lambda;
    f.fn_ = std::move(fn);
    return f;
}

PhaseSpaceFunction PhaseSpaceFunction::fromCoefficients(std::shared_ptr<const HermiteBasis> basis,
                                                        Eigen::MatrixXcd A) {
    if (!basis) throw std::invalid_argument("PhaseSpaceFunction: null basis");
    if (A.rows() != basis->dim() || A.cols() != basis->dim())
        throw std::invalid_argument("PhaseSpaceFunction: coefficient matrix must be D x D");
    PhaseSpaceFunction f;
    f.n_ = basis->n();
    f.lambda_ = basis->lambda();
    f.basis_ = std::move(basis);
    f.A_ = std::move(A);
    return f;
}

const Eigen::MatrixXcd& PhaseSpaceFunction::coefficients() const {
    if (!basis_) throw std::logic_error("PhaseSpaceFunction: no coefficients in closure form");
    return A_;
}

const HermiteBasis& PhaseSpaceFunction::basis() const {
    if (!basis_) throw std::logic_error("PhaseSpaceFunction: no basis in closure form");
    return *basis_;
}

Complex PhaseSpaceFunction::operator()(const Eigen::VectorXcd& z) const {
    if (z.size() != n_) throw std::invalid_argument("PhaseSpaceFunction: point dimension mismatch");
    if (!basis_) return fn_(z);
    Eigen::MatrixXcd SH = special_hermite_matrix(z, *basis_);
    return A_.cwiseProduct(SH.conjugate()).sum();
}

PhaseSpaceQuadrature::PhaseSpaceQuadrature(std::shared_ptr<const HermiteBasis> basis,
                                           double boxHalfWidth, int pointsPerAxis)
    : basis_(std::move(basis)) {
    if (!basis_) throw std::invalid_argument("PhaseSpaceQuadrature: null basis");
    rule_ = uniform_box_rule(boxHalfWidth, pointsPerAxis, 2 * basis_->n());
    table_.reserve(static_cast<size_t>(rule_.count()));
    for (int j = 0; j < rule_.count(); ++j)
        table_.push_back(special_hermite_matrix(nodeZ(j), *basis_));
}

Eigen::VectorXcd PhaseSpaceQuadrature::nodeZ(int j) const {
    const int n = basis_->n();
    Eigen::VectorXcd z(n);
    for (int k = 0; k < n; ++k) z[k] = Complex(rule_.nodes(j, k), rule_.nodes(j, n + k));
    return z;
}

Eigen::VectorXcd PhaseSpaceQuadrature::nodeValues(const PhaseSpaceFunction& f) const {
    if (f.n() != basis_->n() || f.lambda() != basis_->lambda())
        throw std::invalid_argument("PhaseSpaceQuadrature: function/context mismatch");
    Eigen::VectorXcd v(count());
    if (f.hasCoefficients()) {
        if (f.coefficients().rows() != basis_->dim())
            throw std::invalid_argument("PhaseSpaceQuadrature: coefficient dimension mismatch");
        const Eigen::MatrixXcd Ac = f.coefficients().conjugate();
        for (int j = 0; j < count(); ++j) v[j] = std::conj(Ac.cwiseProduct(table_[static_cast<size_t>(j)]).sum());
        return v;
    }
    for (int j = 0; j < count(); ++j) v[j] = f(nodeZ(j));
    return v;
}

Eigen::MatrixXcd PhaseSpaceQuadrature::expand(const PhaseSpaceFunction& f) const {
    Eigen::VectorXcd v = nodeValues(f);
    const int D = basis_->dim();
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(D, D);
    for (int j = 0; j < count(); ++j)
        A += (rule_.weights[j] * v[j]) * table_[static_cast<size_t>(j)];
    return A;
}

PhaseSpaceFunction PhaseSpaceQuadrature::project(const PhaseSpaceFunction& f) const {
    return PhaseSpaceFunction::fromCoefficients(basis_, expand(f));
}

std::vector<Eigen::MatrixXcd> shifted_point_table(const Eigen::VectorXcd& z,
                                                  const PhaseSpaceQuadrature& ctx) {
    std::vector<Eigen::MatrixXcd> out;
    out.reserve(static_cast<size_t>(ctx.count()));
    for (int j = 0; j < ctx.count(); ++j)
        out.push_back(special_hermite_matrix(z - ctx.nodeZ(j), ctx.basis()));
    return out;
}

PhaseSpaceFunction phase_space_involution(const PhaseSpaceFunction& f) {
    if (f.hasCoefficients())
        return PhaseSpaceFunction::fromCoefficients(f.basisPtr(), f.coefficients().adjoint());
    PhaseSpaceFunction inner = f;
    return PhaseSpaceFunction::fromClosure(f.n(), f.lambda(), [inner](const Eigen::VectorXcd& z) {
        return std::conj(inner((-z).eval()));
    });
}

} // namespace heis
