#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "heisen/heisenberg_group.hpp"
#include "heisen/multi_index.hpp"
#include "heisen/quadrature.hpp"

using namespace heis;

TEST_CASE("multi-index enumeration is graded-lex and complete") {
    auto idx = enumerate_indices(2, 2);
    REQUIRE(idx.size() == 6); // binomial(2 + 2, 2)
    std::vector<std::vector<int>> expected = {
        {0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}};
    for (size_t i = 0; i < expected.size(); ++i) CHECK(idx[i].entries == expected[i]);

    CHECK(std::is_sorted(idx.begin(), idx.end()));

    auto big = enumerate_indices(3, 5);
    CHECK(big.size() == 56); // binomial(5 + 3, 3)
    CHECK(std::is_sorted(big.begin(), big.end()));
}

TEST_CASE("truncation scheme positions round-trip and reject outsiders") {
    TruncationScheme scheme(3, 4);
    CHECK(scheme.dimension() == 35);
    for (int i = 0; i < scheme.dimension(); ++i)
        CHECK(scheme.position(scheme.at(i)) == i);

    MultiIndex outside({5, 0, 0});
    CHECK(!scheme.contains(outside));
    CHECK_THROWS_AS(scheme.position(outside), std::out_of_range);
    CHECK(scheme.contains(MultiIndex({4, 0, 0})));
}

TEST_CASE("two-point Gauss-Hermite rule matches the closed form") {
    auto rule = gauss_hermite_rule(2);
    const double node = 1.0 / std::sqrt(2.0);
    const double weight = std::sqrt(M_PI) / 2.0;
    CHECK(std::abs(rule.nodes(0, 0) + node) < 1e-14);
    CHECK(std::abs(rule.nodes(1, 0) - node) < 1e-14);
    CHECK(std::abs(rule.weights[0] - weight) < 1e-14);
    CHECK(std::abs(rule.weights[1] - weight) < 1e-14);
}

TEST_CASE("Gauss-Hermite moments reproduce the gamma function") {
    // integral of x^{2j} exp(-x^2) over R equals Gamma(j + 1/2); the m-point
    // rule is exact through degree 2m - 1.
    auto rule = gauss_hermite_rule(40);
    for (int j = 0; j <= 15; ++j) {
        double acc = 0.0;
        for (int i = 0; i < rule.count(); ++i)
            acc += rule.weights[i] * std::pow(rule.nodes(i, 0), 2 * j);
        const double exact = std::exp(std::lgamma(j + 0.5));
        // terms span ~30 orders of magnitude at j = 15; rounding accumulates
        CHECK(std::abs(acc - exact) < 5e-11 * exact);
    }
    // odd moments vanish by node symmetry
    for (int j = 0; j <= 7; ++j) {
        double acc = 0.0;
        for (int i = 0; i < rule.count(); ++i)
            acc += rule.weights[i] * std::pow(rule.nodes(i, 0), 2 * j + 1);
        CHECK(std::abs(acc) < 1e-12);
    }
}

TEST_CASE("effective Gauss-Hermite weights stay bounded at every order") {
    // The plain-integrand weights w_j e^{x_j^2} are O(1) for every node; a
    // rule whose edge weights blow up turns shifted integrands (mass away
    // from the origin) into noise. Guards the derivative-identity weight
    // construction against regressions toward the eigenvector-squared form.
    for (int m : {20, 60, 90, 120}) {
        auto rule = gauss_hermite_rule(m);
        Eigen::VectorXd effW = rule.effectiveWeights();
        CHECK(effW.minCoeff() > 0.0);
        CHECK(effW.maxCoeff() < 2.0);
        if (m < 60) continue;
        // a far-shifted unit Gaussian still integrates to sqrt(pi); measured
        // 1.3e-13 at m = 60 and below 1e-13 beyond
        const double shift = 0.6 * rule.nodes(m - 1, 0);
        double acc = 0.0;
        for (int i = 0; i < m; ++i) {
            double x = rule.nodes(i, 0);
            acc += effW[i] * std::exp(-(x - shift) * (x - shift));
        }
        CHECK(std::abs(acc - std::sqrt(M_PI)) < 1e-11 * std::sqrt(M_PI));
    }
}

TEST_CASE("tensor rule integrates polynomials over the plane") {
    auto rule = tensor_rule(gauss_hermite_rule(3), 2);
    REQUIRE(rule.count() == 9);
    double total = 0.0, quad = 0.0;
    for (int i = 0; i < rule.count(); ++i) {
        total += rule.weights[i];
        quad += rule.weights[i] * rule.nodes.row(i).squaredNorm();
    }
    CHECK(std::abs(total - M_PI) < 1e-13);  // integral of exp(-|x|^2)
    CHECK(std::abs(quad - M_PI) < 1e-13);   // integral of |x|^2 exp(-|x|^2)
}

TEST_CASE("uniform box rule integrates smooth decaying functions") {
    auto rule = uniform_box_rule(1.0, 201, 1);
    double acc = 0.0, total = 0.0;
    for (int i = 0; i < rule.count(); ++i) {
        acc += rule.weights[i] * rule.nodes(i, 0) * rule.nodes(i, 0);
        total += rule.weights[i];
    }
    CHECK(std::abs(total - 2.0) < 1e-12);
    CHECK(std::abs(acc - 2.0 / 3.0) < 1e-4);

    // 2-D Gaussian on a box wide enough that the truncated tail is negligible
    auto rule2 = uniform_box_rule(8.0, 81, 2);
    Complex g = integrate([](const Eigen::VectorXd& x) {
        return Complex(std::exp(-x.squaredNorm()), 0.0);
    }, rule2);
    CHECK(std::abs(g.real() - M_PI) < 1e-6);
    CHECK(std::abs(g.imag()) < 1e-15);
}

TEST_CASE("integrate compensates the Gauss-Hermite weight") {
    auto rule = gauss_hermite_rule(30);
    Complex v = integrate([](const Eigen::VectorXd& x) {
        return Complex(std::exp(-x[0] * x[0]), 0.0);
    }, rule);
    CHECK(std::abs(v.real() - std::sqrt(M_PI)) < 1e-12);

    Complex osc = integrate([](const Eigen::VectorXd& x) {
        return std::polar(1.0, 2.0 * x[0]) * std::exp(-x[0] * x[0]);
    }, rule);
    // integral of e^{2ix} e^{-x^2} = sqrt(pi) e^{-1}
    CHECK(std::abs(osc - Complex(std::sqrt(M_PI) * std::exp(-1.0), 0.0)) < 1e-12);
}

TEST_CASE("integrate raises on non-finite integrand values") {
    auto rule = gauss_hermite_rule(4);
    CHECK_THROWS_AS(integrate([](const Eigen::VectorXd& x) {
        return Complex(1.0 / (x[0] - x[0]), 0.0); // NaN everywhere
    }, rule), EvaluationError);
}

TEST_CASE("group law matches the worked product and its axioms") {
    GroupElement a{Eigen::VectorXcd(1), 0.0};
    GroupElement b{Eigen::VectorXcd(1), 0.0};
    a.z << Complex(1.0, 0.0);
    b.z << Complex(0.0, 1.0);
    auto ab = group_mul(a, b);
    CHECK(std::abs(ab.z[0] - Complex(1.0, 1.0)) < 1e-15);
    CHECK(std::abs(ab.t - (-0.5)) < 1e-15); // (1/2) Im(1 * conj(i)) = -1/2

    // swapping the factors flips the central correction
    auto ba = group_mul(b, a);
    CHECK(std::abs(ba.t - 0.5) < 1e-15);

    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto sample = [&](int n) {
        GroupElement g{Eigen::VectorXcd(n), gauss(rng)};
        for (int i = 0; i < n; ++i) g.z[i] = Complex(gauss(rng), gauss(rng));
        return g;
    };
    for (int trial = 0; trial < 5; ++trial) {
        auto x = sample(3), y = sample(3), w = sample(3);
        auto lhs = group_mul(group_mul(x, y), w);
        auto rhs = group_mul(x, group_mul(y, w));
        CHECK((lhs.z - rhs.z).norm() < 1e-13);
        CHECK(std::abs(lhs.t - rhs.t) < 1e-13);

        auto e = group_mul(x, group_inverse(x));
        CHECK(e.z.norm() < 1e-14);
        CHECK(std::abs(e.t) < 1e-13);
    }

    // central elements commute with everything
    GroupElement c = group_identity(3);
    c.t = 1.7;
    auto g = sample(3);
    auto gc = group_mul(g, c);
    auto cg = group_mul(c, g);
    CHECK((gc.z - cg.z).norm() == 0.0);
    CHECK(gc.t == cg.t);
}
