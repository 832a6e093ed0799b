#pragma once

#include "heisen/phase_space.hpp"

namespace heis {

/// W_lambda(g) = integral of g(z) pi_lambda(z) dz over C^n, assembled entrywise
/// on the context's box rule from the cached point tables.
OperatorMatrix weyl_quadrature(const PhaseSpaceFunction& g, const PhaseSpaceQuadrature& ctx);

/// Spectral form: a coefficient function A maps to
///   W_lambda(f) = twisted_product_constant(n, lambda) * transpose(A),
/// because each conj Phi_{ab} transforms to that constant times the matrix
/// unit E_{ba}. Exact linear algebra; the quadrature path is its oracle.
OperatorMatrix weyl_spectral(const PhaseSpaceFunction& f);

} // namespace heis
