#pragma once

#include "heisen/phase_space.hpp"

namespace heis {

/// (2 pi)^{n/2} |lambda|^{-n/2}: the constant in the closed product rule
///   conj Phi_{ab} *_lambda conj Phi_{mn} = C delta_{an} conj Phi_{mb},
/// forced by L^2(C^n) orthonormality of the point functions. The same constant
/// scales the rank-one Weyl images, which is what makes the transform
/// multiplicative (see weyl.hpp).
double twisted_product_constant(int n, double lambda);

/// (f *_lambda g)(z) = integral over w of f(z-w) g(w) e^{i(lambda/2) Im(z.conj(w))} dw,
/// by the context's box rule. Coefficient-form inputs evaluate off cached point
/// tables (a shifted table is built for f); closures are called directly.
Complex twist_convolve_grid(const PhaseSpaceFunction& f, const PhaseSpaceFunction& g,
                            const Eigen::VectorXcd& z, const PhaseSpaceQuadrature& ctx);

/// Every pairwise grid product (conj Phi_ab *_lambda conj Phi_mn)(z) at once:
/// entry (a*D + b, m*D + n) of the result. One shifted table serves all pairs,
/// so sweeping the full index range costs little more than a single product.
Eigen::MatrixXcd twisted_products_at(const Eigen::VectorXcd& z, const PhaseSpaceQuadrature& ctx);

/// Spectral product: if f has coefficients A and g has B, then f *_lambda g has
/// coefficients twisted_product_constant * (B * A). The reversed order is the
/// matrix-unit bookkeeping of the product rule: E_mn * E_ab = delta_na E_mb
/// picks out exactly the surviving index pair.
PhaseSpaceFunction twist_convolve_spectral(const PhaseSpaceFunction& f,
                                           const PhaseSpaceFunction& g);

/// Twisted translation tau_z0 f(w) = f(w - z0) e^{-i(lambda/2) Im(w.conj(z0))}.
/// lambda is explicit so the opposite-sign translation (which intertwines with
/// multiplication on the other side under the Weyl transform) is available.
PhaseSpaceFunction twisted_translate(double lambda, const Eigen::VectorXcd& z0,
                                     const PhaseSpaceFunction& f);

} // namespace heis
