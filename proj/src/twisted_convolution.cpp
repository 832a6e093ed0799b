#include "heisen/twisted_convolution.hpp"

#include <cmath>

namespace heis {

double twisted_product_constant(int n, double lambda) {
    if (lambda == 0.0) throw std::invalid_argument("twisted_product_constant: lambda must be nonzero");
    return std::pow(2.0 * M_PI, 0.5 * n) * std::pow(std::abs(lambda), -0.5 * n);
}

namespace {

// e^{i(lambda/2) Im(z.conj(w_j))} for every context node
Eigen::VectorXcd twist_phases(const Eigen::VectorXcd& z, const PhaseSpaceQuadrature& ctx) {
    const double lambda = ctx.basis().lambda();
    Eigen::VectorXcd ph(ctx.count());
    for (int j = 0; j < ctx.count(); ++j)
        ph[j] = std::polar(1.0, 0.5 * lambda * symplectic_im(z, ctx.nodeZ(j)));
    return ph;
}

// f(z - w_j) for every node; uses the shifted point table for coefficient form
Eigen::VectorXcd shifted_values(const PhaseSpaceFunction& f, const Eigen::VectorXcd& z,
                                const PhaseSpaceQuadrature& ctx) {
    Eigen::VectorXcd v(ctx.count());
    if (f.hasCoefficients()) {
        const Eigen::MatrixXcd Ac = f.coefficients().conjugate();
        auto shifted = shifted_point_table(z, ctx);
        for (int j = 0; j < ctx.count(); ++j)
            v[j] = std::conj(Ac.cwiseProduct(shifted[static_cast<size_t>(j)]).sum());
        return v;
    }
    for (int j = 0; j < ctx.count(); ++j) v[j] = f(z - ctx.nodeZ(j));
    return v;
}

void require_compatible(const PhaseSpaceFunction& f, const PhaseSpaceQuadrature& ctx) {
    if (f.n() != ctx.basis().n() || f.lambda() != ctx.basis().lambda())
        throw std::invalid_argument("twisted convolution: function/context mismatch");
}

} // namespace

Complex twist_convolve_grid(const PhaseSpaceFunction& f, const PhaseSpaceFunction& g,
                            const Eigen::VectorXcd& z, const PhaseSpaceQuadrature& ctx) {
    require_compatible(f, ctx);
    require_compatible(g, ctx);
    Eigen::VectorXcd fv = shifted_values(f, z, ctx);
    Eigen::VectorXcd gv = ctx.nodeValues(g);
    Eigen::VectorXcd ph = twist_phases(z, ctx);
    Complex acc(0.0, 0.0);
    for (int j = 0; j < ctx.count(); ++j) {
        Complex term = fv[j] * gv[j] * ph[j];
        if (!std::isfinite(term.real()) || !std::isfinite(term.imag()))
            throw EvaluationError("twist_convolve_grid: non-finite integrand at node " + std::to_string(j));
        acc += ctx.rule().weights[j] * term;
    }
    return acc;
}

Eigen::MatrixXcd twisted_products_at(const Eigen::VectorXcd& z, const PhaseSpaceQuadrature& ctx) {
    const int D = ctx.basis().dim();
    auto shifted = shifted_point_table(z, ctx);
    Eigen::VectorXcd ph = twist_phases(z, ctx);

    Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(D * D, D * D);
    Eigen::VectorXcd fvec(D * D), gvec(D * D);
    for (int j = 0; j < ctx.count(); ++j) {
        const Eigen::MatrixXcd& S = shifted[static_cast<size_t>(j)]; // values at z - w_j
        const Eigen::MatrixXcd& T = ctx.table(j);                    // values at w_j
        for (int a = 0; a < D; ++a)
            for (int b = 0; b < D; ++b) {
                fvec[a * D + b] = std::conj(S(a, b));
                gvec[a * D + b] = std::conj(T(a, b));
            }
        R.noalias() += (ctx.rule().weights[j] * ph[j]) * fvec * gvec.transpose();
    }
    return R;
}

PhaseSpaceFunction twist_convolve_spectral(const PhaseSpaceFunction& f,
                                           const PhaseSpaceFunction& g) {
    if (!f.hasCoefficients() || !g.hasCoefficients())
        throw std::invalid_argument("twist_convolve_spectral: both inputs need coefficient form");
    if (f.n() != g.n() || f.lambda() != g.lambda() ||
        f.coefficients().rows() != g.coefficients().rows())
        throw std::invalid_argument("twist_convolve_spectral: incompatible coefficient functions");
    const double c = twisted_product_constant(f.n(), f.lambda());
    Eigen::MatrixXcd C = c * (g.coefficients() * f.coefficients());
    return PhaseSpaceFunction::fromCoefficients(f.basisPtr() ? f.basisPtr() : g.basisPtr(),
                                                std::move(C));
}

PhaseSpaceFunction twisted_translate(double lambda, const Eigen::VectorXcd& z0,
                                     const PhaseSpaceFunction& f) {
    if (z0.size() != f.n()) throw std::invalid_argument("twisted_translate: point dimension mismatch");
    Eigen::VectorXcd shift = z0;
    PhaseSpaceFunction inner = f; // copy keeps the closure/coefficients alive
    return PhaseSpaceFunction::fromClosure(
        f.n(), f.lambda(), [lambda, shift, inner](const Eigen::VectorXcd& w) {
            return inner((w - shift).eval()) *
                   std::polar(1.0, -0.5 * lambda * symplectic_im(w, shift));
        });
}

} // namespace heis
