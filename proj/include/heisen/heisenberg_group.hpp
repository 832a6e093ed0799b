#pragma once

#include <Eigen/Dense>
#include <complex>

namespace heis {

/// Point of H^n = C^n x R with multiplication
///   (z, t)(w, s) = (z + w, t + s + (1/2) Im(z . conj(w))).
struct GroupElement {
    Eigen::VectorXcd z;
    double t = 0.0;
};

/// Im(z . conj(w)), the symplectic form pairing the two group factors.
double symplectic_im(const Eigen::VectorXcd& z, const Eigen::VectorXcd& w);

GroupElement group_identity(int n);
GroupElement group_mul(const GroupElement& a, const GroupElement& b);
GroupElement group_inverse(const GroupElement& a);

} // namespace heis
