#include "heisen/heisenberg_group.hpp"

#include <stdexcept>

namespace heis {

double symplectic_im(const Eigen::VectorXcd& z, const Eigen::VectorXcd& w) {
    if (z.size() != w.size())
        throw std::invalid_argument("symplectic_im: dimension mismatch");
    // Im sum_k z_k conj(w_k); Eigen's w.dot(z) = sum conj(w_k) z_k is exactly that sum
    return w.dot(z).imag();
}

GroupElement group_identity(int n) {
    return GroupElement{Eigen::VectorXcd::Zero(n), 0.0};
}

GroupElement group_mul(const GroupElement& a, const GroupElement& b) {
    if (a.z.size() != b.z.size())
        throw std::invalid_argument("group_mul: dimension mismatch");
    return GroupElement{a.z + b.z, a.t + b.t + 0.5 * symplectic_im(a.z, b.z)};
}

GroupElement group_inverse(const GroupElement& a) {
    return GroupElement{-a.z, -a.t};
}

} // namespace heis
