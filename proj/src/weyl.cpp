#include "heisen/weyl.hpp"

#include "heisen/twisted_convolution.hpp"

namespace heis {

OperatorMatrix weyl_quadrature(const PhaseSpaceFunction& g, const PhaseSpaceQuadrature& ctx) {
    if (g.n() != ctx.basis().n() || g.lambda() != ctx.basis().lambda())
        throw std::invalid_argument("weyl_quadrature: function/context mismatch");
    const int D = ctx.basis().dim();
    Eigen::VectorXcd gv = ctx.nodeValues(g);
    // pi_lambda(z_j) entries are the point table divided by its prefactor,
    // with rows/columns swapped (table holds (a,b) = prefactor * <pi Phi_a, Phi_b>).
    const double invPref = 1.0 / special_hermite_prefactor(ctx.basis().n(), ctx.basis().lambda());
    Eigen::MatrixXcd W = Eigen::MatrixXcd::Zero(D, D);
    for (int j = 0; j < ctx.count(); ++j) {
        Complex s = ctx.rule().weights[j] * gv[j];
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
            throw EvaluationError("weyl_quadrature: non-finite integrand at node " + std::to_string(j));
        W.noalias() += s * ctx.table(j).transpose();
    }
    OperatorMatrix out;
    out.entries = invPref * W;
    return out;
}

OperatorMatrix weyl_spectral(const PhaseSpaceFunction& f) {
    if (!f.hasCoefficients())
        throw std::invalid_argument("weyl_spectral: input needs coefficient form");
    OperatorMatrix out;
    out.entries = twisted_product_constant(f.n(), f.lambda()) * f.coefficients().transpose();
    return out;
}

} // namespace heis
