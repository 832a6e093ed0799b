#include "doctest.h"

#include <cmath>
#include <vector>

#include "heisen/hermite.hpp"

using namespace heis;

namespace {

// Independent oracle: physicists' Hermite polynomial H_k via the integer
// coefficient recurrence H_{k+1} = 2x H_k - 2k H_{k-1}, evaluated directly.
double hermite_poly(int k, double x) {
    double hm = 0.0, h = 1.0;
    for (int j = 0; j < k; ++j) {
        double next = 2.0 * x * h - 2.0 * j * hm;
        hm = h;
        h = next;
    }
    return h;
}

double normalized_oracle(int k, double x) {
    // H_k(x) e^{-x^2/2} / sqrt(2^k k! sqrt(pi))
    double logNorm = 0.5 * (k * std::log(2.0) + std::lgamma(k + 1.0) + 0.5 * std::log(M_PI));
    return hermite_poly(k, x) * std::exp(-0.5 * x * x - logNorm);
}

} // namespace

TEST_CASE("weighted recurrence agrees with the polynomial oracle") {
    for (int k = 0; k <= 12; ++k)
        for (double x : {-3.0, -1.3, 0.0, 0.4, 1.0, 2.7}) {
            double got = hermite_1d(k, x);
            double want = normalized_oracle(k, x);
            CHECK(std::abs(got - want) < 1e-12 * std::max(1.0, std::abs(want)));
        }
    CHECK(std::abs(hermite_1d(0, 0.0) - std::pow(M_PI, -0.25)) < 1e-15);
}

TEST_CASE("hermite_values matches single evaluations") {
    Eigen::VectorXd v = hermite_values(9, 1.7);
    REQUIRE(v.size() == 10);
    for (int k = 0; k <= 9; ++k) CHECK(v[k] == hermite_1d(k, 1.7));
}

TEST_CASE("hermite functions stay bounded at high order") {
    for (double x : {-8.0, -2.5, 0.0, 3.9, 12.0}) {
        double v = hermite_1d(60, x);
        CHECK(std::isfinite(v));
        CHECK(std::abs(v) < 1.0);
    }
}

TEST_CASE("hermite functions are orthonormal under Gauss-Hermite quadrature") {
    auto rule = gauss_hermite_rule(40);
    for (int j = 0; j <= 10; ++j)
        for (int k = j; k <= 10; ++k) {
            Complex v = integrate([&](const Eigen::VectorXd& x) {
                return Complex(hermite_1d(j, x[0]) * hermite_1d(k, x[0]), 0.0);
            }, rule);
            CHECK(std::abs(v.real() - (j == k ? 1.0 : 0.0)) < 1e-10);
        }
}

TEST_CASE("product basis factorizes across coordinates") {
    MultiIndex alpha({2, 5});
    Eigen::VectorXd x(2);
    x << 0.3, -1.1;
    CHECK(phi_alpha(alpha, x) == doctest::Approx(hermite_1d(2, 0.3) * hermite_1d(5, -1.1)).epsilon(1e-14));
}

TEST_CASE("scaled basis obeys the dilation identity") {
    MultiIndex alpha({3});
    Eigen::VectorXd x(1);
    x << 0.9;
    for (double lambda : {0.5, 1.0, 2.0, -3.0}) {
        double s = std::sqrt(std::abs(lambda));
        Eigen::VectorXd sx = s * x;
        double want = std::pow(std::abs(lambda), 0.25) * phi_alpha(alpha, sx);
        CHECK(std::abs(phi_alpha_scaled(alpha, lambda, x) - want) < 1e-14);
    }
}

TEST_CASE("basis Gram matrix is the identity for every lambda") {
    for (double lambda : {0.5, 1.0, 2.0, -1.5}) {
        HermiteBasis basis(1, lambda, TruncationScheme(1, 8), 40);
        const auto& V = basis.nodeValues();
        Eigen::MatrixXd gram = V * basis.effectiveWeights().asDiagonal() * V.transpose();
        CHECK((gram - Eigen::MatrixXd::Identity(basis.dim(), basis.dim())).cwiseAbs().maxCoeff() < 1e-12);
    }
    HermiteBasis basis2(2, 0.5, TruncationScheme(2, 4), 24);
    const auto& V2 = basis2.nodeValues();
    Eigen::MatrixXd gram2 = V2 * basis2.effectiveWeights().asDiagonal() * V2.transpose();
    CHECK((gram2 - Eigen::MatrixXd::Identity(basis2.dim(), basis2.dim())).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("expanding a basis function returns a unit coordinate vector") {
    HermiteBasis basis(2, 2.0, TruncationScheme(2, 5), 30);
    MultiIndex beta({1, 3});
    int b = basis.scheme().position(beta);
    Eigen::VectorXcd coeff = basis.expand([&](const Eigen::VectorXd& x) {
        return Complex(phi_alpha_scaled(beta, 2.0, x), 0.0);
    });
    REQUIRE(coeff.size() == basis.dim());
    for (int i = 0; i < coeff.size(); ++i)
        CHECK(std::abs(coeff[i] - (i == b ? 1.0 : 0.0)) < 1e-12);
}

TEST_CASE("shifted Gaussian expansion matches the closed-form coefficients") {
    // exp(-(x-a)^2/2) = pi^{1/4} e^{-a^2/4} sum_k (a/sqrt(2))^k / sqrt(k!) h_k(x)
    const double a = 0.7;
    HermiteBasis basis(1, 1.0, TruncationScheme(1, 10), 50);
    Eigen::VectorXcd coeff = basis.expand([&](const Eigen::VectorXd& x) {
        return Complex(std::exp(-0.5 * (x[0] - a) * (x[0] - a)), 0.0);
    });
    for (int k = 0; k <= 10; ++k) {
        double want = std::pow(M_PI, 0.25) * std::exp(-0.25 * a * a) *
                      std::pow(a / std::sqrt(2.0), k) / std::sqrt(std::exp(std::lgamma(k + 1.0)));
        CHECK(std::abs(coeff[k] - want) < 1e-10);
    }
}

TEST_CASE("basis construction rejects under-resolved rules") {
    CHECK_THROWS_AS(HermiteBasis(1, 1.0, TruncationScheme(1, 8), 8), std::invalid_argument);
}
