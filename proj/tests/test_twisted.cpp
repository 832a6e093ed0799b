#include "doctest.h"

#include <cmath>
#include <memory>
#include <random>

#include "heisen/twisted_convolution.hpp"

using namespace heis;

namespace {

std::shared_ptr<const HermiteBasis> make_basis(int n, double lambda, int N) {
    return std::make_shared<HermiteBasis>(n, lambda, TruncationScheme(n, N));
}

Eigen::MatrixXcd unit(int D, int a, int b) {
    Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(D, D);
    E(a, b) = 1.0;
    return E;
}

Eigen::MatrixXcd random_coeff(int D, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd A(D, D);
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) A(i, j) = Complex(gauss(rng), gauss(rng));
    return A;
}

Eigen::VectorXcd zpt(double re, double im) {
    Eigen::VectorXcd z(1);
    z << Complex(re, im);
    return z;
}

} // namespace

TEST_CASE("coefficient form reconstructs the closed-form point function") {
    auto basis = make_basis(1, 2.0, 4);
    auto f = PhaseSpaceFunction::fromCoefficients(basis, unit(basis->dim(), 0, 0));
    for (auto z : {zpt(0.0, 0.0), zpt(0.6, -0.4), zpt(-1.1, 0.3)}) {
        double want = std::pow(2.0 * M_PI, -0.5) * std::sqrt(2.0) *
                      std::exp(-2.0 * std::norm(z[0]) / 4.0);
        CHECK(std::abs(f(z) - want) < 1e-10);
    }
}

TEST_CASE("expansion round-trips coefficient functions") {
    auto basis = make_basis(1, 1.0, 4);
    PhaseSpaceQuadrature ctx(basis);
    std::mt19937_64 rng(11);
    Eigen::MatrixXcd A = random_coeff(basis->dim(), rng);
    auto f = PhaseSpaceFunction::fromCoefficients(basis, A);
    Eigen::MatrixXcd back = ctx.expand(f);
    CHECK((back - A).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("expanding the matched Gaussian hits the vacuum coefficient") {
    // e^{-|z|^2/4} = sqrt(2 pi) conj(Phi_00^1) exactly at lambda = 1, n = 1
    auto basis = make_basis(1, 1.0, 3);
    PhaseSpaceQuadrature ctx(basis);
    auto f = PhaseSpaceFunction::fromClosure(1, 1.0, [](const Eigen::VectorXcd& z) {
        return Complex(std::exp(-std::norm(z[0]) / 4.0), 0.0);
    });
    Eigen::MatrixXcd A = ctx.expand(f);
    CHECK(std::abs(A(0, 0) - std::sqrt(2.0 * M_PI)) < 1e-6);
    A(0, 0) = 0.0;
    CHECK(A.cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("grid products obey the selection rule at several twists") {
    for (double lambda : {1.0, -1.0, 2.0}) {
        auto basis = make_basis(1, lambda, 2);
        PhaseSpaceQuadrature ctx(basis);
        const int D = basis->dim();
        const double c = twisted_product_constant(1, lambda);
        for (auto z : {zpt(0.3, 0.0), zpt(-0.5, 0.4), zpt(0.8, -0.3)}) {
            Eigen::MatrixXcd R = twisted_products_at(z, ctx);
            Eigen::MatrixXcd SH = special_hermite_matrix(z, *basis);
            for (int a = 0; a < D; ++a)
                for (int b = 0; b < D; ++b)
                    for (int m = 0; m < D; ++m)
                        for (int nn = 0; nn < D; ++nn) {
                            Complex got = R(a * D + b, m * D + nn);
                            Complex want = (a == nn) ? c * std::conj(SH(m, b)) : Complex(0, 0);
                            CHECK(std::abs(got - want) < 1e-3 * c);
                        }
        }
    }
}

TEST_CASE("single grid convolution agrees with the bulk product table") {
    auto basis = make_basis(1, 1.0, 2);
    PhaseSpaceQuadrature ctx(basis);
    const int D = basis->dim();
    auto f = PhaseSpaceFunction::fromCoefficients(basis, unit(D, 0, 1));
    auto g = PhaseSpaceFunction::fromCoefficients(basis, unit(D, 1, 0));
    auto z = zpt(0.4, 0.2);
    Complex via_table = twisted_products_at(z, ctx)(0 * D + 1, 1 * D + 0);
    Complex via_grid = twist_convolve_grid(f, g, z, ctx);
    CHECK(std::abs(via_table - via_grid) < 1e-12);
}

TEST_CASE("spectral and grid convolutions agree on random functions") {
    auto basis = make_basis(1, 1.0, 4);
    PhaseSpaceQuadrature ctx(basis);
    std::mt19937_64 rng(23);
    auto f = PhaseSpaceFunction::fromCoefficients(basis, random_coeff(basis->dim(), rng));
    auto g = PhaseSpaceFunction::fromCoefficients(basis, random_coeff(basis->dim(), rng));
    auto prod = twist_convolve_spectral(f, g);
    double scale = prod.coefficients().norm();
    for (auto z : {zpt(0.0, 0.0), zpt(0.5, -0.2), zpt(-0.7, 0.6), zpt(0.9, 0.9)}) {
        Complex direct = twist_convolve_grid(f, g, z, ctx);
        CHECK(std::abs(direct - prod(z)) < 1e-3 * scale);
    }
}

TEST_CASE("the twist makes convolution noncommutative") {
    auto basis = make_basis(1, 1.0, 2);
    const int D = basis->dim();
    auto f = PhaseSpaceFunction::fromCoefficients(basis, unit(D, 0, 1));
    auto g = PhaseSpaceFunction::fromCoefficients(basis, unit(D, 1, 0));
    auto fg = twist_convolve_spectral(f, g);
    auto gf = twist_convolve_spectral(g, f);
    double diff = (fg.coefficients() - gf.coefficients()).norm();
    CHECK(diff > 0.1 * fg.coefficients().norm());
}

TEST_CASE("flipping the twist sign conjugates real convolutions") {
    auto mk = [](double lambda) {
        return PhaseSpaceFunction::fromClosure(1, lambda, [](const Eigen::VectorXcd& z) {
            double x = z[0].real(), y = z[0].imag();
            return Complex((1.0 + x - 0.5 * y) * std::exp(-std::norm(z[0]) / 2.0), 0.0);
        });
    };
    auto mk2 = [](double lambda) {
        return PhaseSpaceFunction::fromClosure(1, lambda, [](const Eigen::VectorXcd& z) {
            double x = z[0].real(), y = z[0].imag();
            return Complex((x * y + 0.3) * std::exp(-std::norm(z[0]) / 3.0), 0.0);
        });
    };
    auto basisP = make_basis(1, 1.3, 2);
    auto basisM = make_basis(1, -1.3, 2);
    PhaseSpaceQuadrature ctxP(basisP), ctxM(basisM);
    for (auto z : {zpt(0.4, 0.1), zpt(-0.3, 0.8)}) {
        Complex minus = twist_convolve_grid(mk(-1.3), mk2(-1.3), z, ctxM);
        Complex plus = twist_convolve_grid(mk(1.3), mk2(1.3), z, ctxP);
        CHECK(std::abs(minus - std::conj(plus)) < 1e-10);
    }
}

TEST_CASE("twisted translation is inverted by the opposite shift") {
    auto basis = make_basis(1, 1.0, 3);
    auto f = PhaseSpaceFunction::fromCoefficients(basis, unit(basis->dim(), 1, 2));
    auto z0 = zpt(0.7, -0.4);
    auto back = twisted_translate(1.0, (-z0).eval(), twisted_translate(1.0, z0, f));
    for (auto w : {zpt(0.0, 0.0), zpt(0.5, 0.5), zpt(-1.0, 0.2)})
        CHECK(std::abs(back(w) - f(w)) < 1e-12);

    // zero shift is the identity
    auto same = twisted_translate(1.0, zpt(0.0, 0.0), f);
    CHECK(std::abs(same(zpt(0.3, 0.3)) - f(zpt(0.3, 0.3))) < 1e-15);
}

TEST_CASE("involution conjugates coefficients exactly") {
    auto basis = make_basis(1, 1.0, 3);
    std::mt19937_64 rng(5);
    Eigen::MatrixXcd A = random_coeff(basis->dim(), rng);
    auto f = PhaseSpaceFunction::fromCoefficients(basis, A);
    auto fs = phase_space_involution(f);
    CHECK((fs.coefficients() - A.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    // pointwise agreement with the closure definition
    for (auto z : {zpt(0.2, -0.6), zpt(-0.4, 0.1)})
        CHECK(std::abs(fs(z) - std::conj(f((-z).eval()))) < 1e-12);
}

TEST_CASE("mismatched inputs are rejected") {
    auto b1 = make_basis(1, 1.0, 2);
    auto b2 = make_basis(1, 2.0, 2);
    auto f = PhaseSpaceFunction::fromCoefficients(b1, unit(b1->dim(), 0, 0));
    auto g = PhaseSpaceFunction::fromCoefficients(b2, unit(b2->dim(), 0, 0));
    CHECK_THROWS_AS(twist_convolve_spectral(f, g), std::invalid_argument);
    PhaseSpaceQuadrature ctx(b1);
    CHECK_THROWS_AS(twist_convolve_grid(f, g, zpt(0, 0), ctx), std::invalid_argument);
    CHECK_THROWS_AS(PhaseSpaceFunction::fromCoefficients(b1, Eigen::MatrixXcd::Zero(2, 5)),
                    std::invalid_argument);
}
