#include "heisen/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "heisen/factorizer.hpp"
#include "heisen/group_fourier.hpp"

namespace heis {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kReportVersion = "1.0.0";

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

CheckRecord finish(const Stopwatch& sw, std::string name, std::string property, double residual,
                   double tolerance) {
    CheckRecord rec;
    rec.name = std::move(name);
    rec.property = std::move(property);
    rec.residual = residual;
    rec.tolerance = tolerance;
    rec.passed = std::isfinite(residual) && residual <= tolerance;
    rec.seconds = sw.seconds();
    return rec;
}

double pick(const std::optional<double>& override_, double pinned) {
    return override_ ? *override_ : pinned;
}

/// Deterministic label for a lambda value usable inside record names:
/// 2 -> "2", -1 -> "m1", 1.3 -> "1p3".
std::string lambda_label(double lambda) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", lambda);
    std::string s(buf);
    for (char& ch : s) {
        if (ch == '-') ch = 'm';
        if (ch == '.') ch = 'p';
    }
    return s;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::shared_ptr<const HermiteBasis> make_basis(int n, double lambda, int maxDegree) {
    return std::make_shared<HermiteBasis>(n, lambda, TruncationScheme(n, maxDegree));
}

Eigen::VectorXcd zpt(double re, double im) {
    Eigen::VectorXcd z(1);
    z[0] = Complex(re, im);
    return z;
}

Eigen::MatrixXcd random_coefficients(int d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXcd A(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) A(r, c) = Complex(u(rng), u(rng));
    return A;
}

Eigen::MatrixXcd haar_like_unitary(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd G(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) G(r, c) = Complex(g(rng), g(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
    Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
    Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < d; ++k) {
        Complex r = R(k, k);
        if (std::abs(r) > 0) Q.col(k) *= r / std::abs(r);
    }
    return Q;
}

/// Positions in the scheme whose total degree is at most `degree`.
std::vector<int> window_positions(const TruncationScheme& scheme, int degree) {
    std::vector<int> idx;
    for (int a = 0; a < scheme.dimension(); ++a)
        if (scheme.at(a).degree() <= degree) idx.push_back(a);
    return idx;
}

Eigen::MatrixXcd window_block(const Eigen::MatrixXcd& M, const std::vector<int>& idx) {
    Eigen::MatrixXcd B(idx.size(), idx.size());
    for (size_t r = 0; r < idx.size(); ++r)
        for (size_t c = 0; c < idx.size(); ++c) B(r, c) = M(idx[r], idx[c]);
    return B;
}

/// Separable Gaussian test function exp(-|z|^2/2) exp(-t^2) with tight boxes.
HeisenbergFunction gaussian_primary() {
    return HeisenbergFunction::separable(
        1, [](const Eigen::VectorXcd& z) { return Complex(std::exp(-std::norm(z[0]) / 2.0), 0.0); },
        [](double t) { return Complex(std::exp(-t * t), 0.0); }, 6.0, 6.0);
}

/// A second separable function with polynomial structure in z.
HeisenbergFunction gaussian_secondary() {
    return HeisenbergFunction::separable(
        1,
        [](const Eigen::VectorXcd& z) {
            double x = z[0].real(), y = z[0].imag();
            return Complex((1.0 + 0.4 * x - 0.2 * y) * std::exp(-0.7 * std::norm(z[0])), 0.0);
        },
        [](double t) { return Complex(std::exp(-0.8 * t * t), 0.0); }, 6.0, 6.0);
}

/// Matched pair for the spectral-grid norm identity: the z-profile is the
/// ground-state Gaussian at every lambda scale simultaneously captured well
/// by a moderate truncation near |lambda| ~ 1.
HeisenbergFunction gaussian_matched() {
    return HeisenbergFunction::separable(
        1, [](const Eigen::VectorXcd& z) { return Complex(std::exp(-std::norm(z[0]) / 4.0), 0.0); },
        [](double t) { return Complex(std::exp(-t * t), 0.0); }, 6.0, 6.0);
}

// ---------------------------------------------------------------------------
// basis suite
// ---------------------------------------------------------------------------

void suite_basis(const RunConfig& cfg, std::vector<CheckRecord>& out) {
    {
        Stopwatch sw;
        const int K = std::max(8, cfg.maxDegree);
        HermiteBasis basis(cfg.n, cfg.lambdas.front(), TruncationScheme(cfg.n, K),
                           std::max(60, K + 21));
        const Eigen::MatrixXd& V = basis.nodeValues();
        Eigen::MatrixXd G = V * basis.effectiveWeights().asDiagonal() * V.transpose();
        G -= Eigen::MatrixXd::Identity(basis.dim(), basis.dim());
        out.push_back(finish(sw, "basis.hermite_gram",
                             "Orthonormality of the scaled Hermite family under its "
                             "Gauss-Hermite rule",
                             G.cwiseAbs().maxCoeff(), pick(cfg.tolBasis, 1e-12)));
    }
    for (double lambda : cfg.lambdas) {
        Stopwatch sw;
        const int deg = std::min(cfg.maxDegree, 4);
        auto basis = make_basis(cfg.n, lambda, deg);
        // The family at parameter lambda is the unit-parameter family dilated
        // by 1/sqrt|lambda|; scaling the box the same way makes the rule the
        // dilated unit rule, so the defect is uniform across parameters.
        PhaseSpaceQuadrature ctx(basis, cfg.boxHalfWidth / std::sqrt(std::abs(lambda)),
                                 cfg.quadPointsPerAxis);
        const int D = basis->dim();
        const int P = D * D;
        Eigen::MatrixXcd M(ctx.count(), P);
        for (int j = 0; j < ctx.count(); ++j) {
            const Eigen::MatrixXcd& T = ctx.table(j);
            for (int a = 0; a < D; ++a)
                for (int b = 0; b < D; ++b) M(j, a * D + b) = T(a, b);
        }
        Eigen::VectorXd w = ctx.rule().effectiveWeights();
        Eigen::MatrixXcd G = M.transpose() * w.asDiagonal() * M.conjugate();
        G -= Eigen::MatrixXcd::Identity(P, P);
        out.push_back(finish(sw, "basis.special_hermite_gram.lambda_" + lambda_label(lambda),
                             "Orthonormality of the special Hermite family over the "
                             "phase-space box rule",
                             G.cwiseAbs().maxCoeff(), pick(cfg.tolBasis, 1e-6)));
    }
}

// ---------------------------------------------------------------------------
// representation suite
// ---------------------------------------------------------------------------

void suite_representation(const RunConfig& cfg, std::vector<CheckRecord>& out) {
    const double lambda = cfg.lambdas.front();
    // The window defects shrink monotonically as the degree grows, so the
    // pinned tolerances stay valid for any degree at or above the floor the
    // pins were measured at.
    const int N = std::max(cfg.maxDegree, 6);
    auto basis = make_basis(cfg.n, lambda, N);
    const auto window = window_positions(basis->scheme(), 1);
    const auto points = standard_sample_points(cfg.n);
    const Eigen::MatrixXcd Iw =
        Eigen::MatrixXcd::Identity(static_cast<int>(window.size()), static_cast<int>(window.size()));

    {
        Stopwatch sw;
        double defect = 0.0;
        for (const auto& z : points) {
            Eigen::MatrixXcd U = pi_matrix(lambda, z, *basis).entries;
            Eigen::MatrixXcd W = window_block((U.adjoint() * U).eval(), window);
            defect = std::max(defect, (W - Iw).cwiseAbs().maxCoeff());
        }
        out.push_back(finish(sw, "representation.unitarity_window",
                             "Compressed representation matrices act unitarily on a fixed "
                             "low-degree window",
                             defect, pick(cfg.tolRepresentation, 1e-3)));
    }
    {
        Stopwatch sw;
        double defect = 0.0;
        for (size_t k = 0; k + 1 < points.size(); k += 2) {
            const auto& z1 = points[k];
            const auto& z2 = points[k + 1];
            Eigen::MatrixXcd P =
                pi_matrix(lambda, z1, *basis).entries * pi_matrix(lambda, z2, *basis).entries;
            Complex phase = std::polar(1.0, 0.5 * lambda * symplectic_im(z1, z2));
            Eigen::MatrixXcd R = phase * pi_matrix(lambda, (z1 + z2).eval(), *basis).entries;
            defect = std::max(defect,
                              window_block((P - R).eval(), window).cwiseAbs().maxCoeff());
        }
        out.push_back(finish(sw, "representation.group_law_window",
                             "Products of representation matrices compose through the "
                             "symplectic phase on a low-degree window",
                             defect, pick(cfg.tolRepresentation, 1e-3)));
    }
    {
        Stopwatch sw;
        const double t0 = 0.7;
        GroupElement g;
        g.z = Eigen::VectorXcd::Zero(cfg.n);
        g.t = t0;
        WaveFunction phi = [](const Eigen::VectorXd& x) {
            return Complex(std::exp(-0.5 * x.squaredNorm()), 0.0);
        };
        WaveFunction moved = pi_action(lambda, g, phi);
        Complex character = std::polar(1.0, lambda * t0);
        double defect = 0.0;
        for (double x0 : {-1.2, -0.4, 0.0, 0.5, 1.1}) {
            Eigen::VectorXd x = Eigen::VectorXd::Constant(cfg.n, x0);
            defect = std::max(defect, std::abs(moved(x) - character * phi(x)));
        }
        out.push_back(finish(sw, "representation.central_character",
                             "The central subgroup acts by the scalar character "
                             "exp(i lambda t)",
                             defect, pick(cfg.tolRepresentation, 1e-12)));
    }
    {
        Stopwatch sw;
        const double kappa = special_hermite_prefactor(cfg.n, lambda);
        double defect = 0.0;
        for (size_t k = 0; k < 3; ++k) {
            const auto& z = points[k];
            Eigen::MatrixXcd SH = special_hermite_matrix(z, *basis);
            Eigen::MatrixXcd PI = pi_matrix(lambda, z, *basis).entries;
            defect = std::max(defect,
                              (SH - kappa * PI.transpose()).cwiseAbs().maxCoeff());
        }
        out.push_back(finish(sw, "representation.special_hermite_match",
                             "Special Hermite values are the scaled transpose of the "
                             "representation matrix",
                             defect, pick(cfg.tolRepresentation, 1e-12)));
    }
}

// ---------------------------------------------------------------------------
// twisted suite
// ---------------------------------------------------------------------------

void suite_twisted(const RunConfig& cfg, std::vector<CheckRecord>& out) {
    const auto points = standard_sample_points(cfg.n);
    for (double lambda : cfg.lambdas) {
        Stopwatch sw;
        auto basis = make_basis(cfg.n, lambda, std::min(cfg.maxDegree, 2));
        PhaseSpaceQuadrature ctx(basis, cfg.boxHalfWidth, cfg.quadPointsPerAxis);
        const int D = basis->dim();
        const double c = twisted_product_constant(cfg.n, lambda);
        double onRule = 0.0, offRule = 0.0;
        for (const auto& z : points) {
            Eigen::MatrixXcd R = twisted_products_at(z, ctx);
            Eigen::MatrixXcd SH = special_hermite_matrix(z, *basis);
            for (int a = 0; a < D; ++a)
                for (int b = 0; b < D; ++b)
                    for (int m = 0; m < D; ++m)
                        for (int nn = 0; nn < D; ++nn) {
                            Complex got = R(a * D + b, m * D + nn);
                            if (a == nn)
                                onRule = std::max(onRule,
                                                  std::abs(got - c * std::conj(SH(m, b))) / c);
                            else
                                offRule = std::max(offRule, std::abs(got) / c);
                        }
        }
        double seconds = sw.seconds();
        std::string label = lambda_label(lambda);
        out.push_back(finish(sw, "twisted.product_rule.lambda_" + label,
                             "Twisted products of basis pairs collapse to the "
                             "index-contraction rule",
                             onRule, pick(cfg.tolTwisted, 1e-3)));
        out.back().seconds = seconds;
        out.push_back(finish(sw, "twisted.product_rule_null.lambda_" + label,
                             "Twisted products with mismatched contraction indices vanish",
                             offRule, pick(cfg.tolTwisted, 1e-5)));
        out.back().seconds = 0.0;
    }
    {
        Stopwatch sw;
        const double lambda = cfg.lambdas.front();
        auto basis = make_basis(cfg.n, lambda, std::min(cfg.maxDegree, 4));
        PhaseSpaceQuadrature ctx(basis, cfg.boxHalfWidth, cfg.quadPointsPerAxis);
        std::mt19937_64 rng(cfg.seed + 101);
        auto f = PhaseSpaceFunction::fromCoefficients(basis, random_coefficients(basis->dim(), rng));
        auto g = PhaseSpaceFunction::fromCoefficients(basis, random_coefficients(basis->dim(), rng));
        auto h = twist_convolve_spectral(f, g);
        double scale = h.coefficients().cwiseAbs().maxCoeff();
        double defect = 0.0;
        for (size_t k = 0; k < 4; ++k) {
            const auto& z = points[k];
            defect = std::max(defect, std::abs(twist_convolve_grid(f, g, z, ctx) - h(z)) / scale);
        }
        out.push_back(finish(sw, "twisted.spectral_grid_agreement",
                             "Grid quadrature and spectral coefficient products compute the "
                             "same twisted convolution",
                             defect, pick(cfg.tolTwisted, 1e-3)));
    }
    {
        Stopwatch sw;
        const double lambda = 1.3;
        auto mkA = [](double lam) {
            return PhaseSpaceFunction::fromClosure(1, lam, [](const Eigen::VectorXcd& z) {
                double x = z[0].real(), y = z[0].imag();
                return Complex((1.0 + x - 0.5 * y) * std::exp(-std::norm(z[0]) / 2.0), 0.0);
            });
        };
        auto mkB = [](double lam) {
            return PhaseSpaceFunction::fromClosure(1, lam, [](const Eigen::VectorXcd& z) {
                double x = z[0].real(), y = z[0].imag();
                return Complex((x * y + 0.3) * std::exp(-std::norm(z[0]) / 3.0), 0.0);
            });
        };
        auto basisP = make_basis(1, lambda, 2);
        auto basisM = make_basis(1, -lambda, 2);
        PhaseSpaceQuadrature ctxP(basisP, cfg.boxHalfWidth, cfg.quadPointsPerAxis);
        PhaseSpaceQuadrature ctxM(basisM, cfg.boxHalfWidth, cfg.quadPointsPerAxis);
        double defect = 0.0;
        for (auto z : {zpt(0.4, 0.1), zpt(-0.3, 0.8)}) {
            Complex minus = twist_convolve_grid(mkA(-lambda), mkB(-lambda), z, ctxM);
            Complex plus = twist_convolve_grid(mkA(lambda), mkB(lambda), z, ctxP);
            defect = std::max(defect, std::abs(minus - std::conj(plus)));
        }
        out.push_back(finish(sw, "twisted.sign_conjugation",
                             "Flipping the twist sign conjugates convolutions of real "
                             "functions",
                             defect, pick(cfg.tolTwisted, 1e-10)));
    }
    {
        Stopwatch sw;
        const double lambda = cfg.lambdas.front();
        auto basis = make_basis(cfg.n, lambda, std::min(cfg.maxDegree, 3));
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(basis->dim(), basis->dim());
        A(std::min(1, basis->dim() - 1), std::min(2, basis->dim() - 1)) = 1.0;
        auto f = PhaseSpaceFunction::fromCoefficients(basis, A);
        Eigen::VectorXcd z0 = points[0];
        auto back = twisted_translate(lambda, (-z0).eval(),
                                      twisted_translate(lambda, z0, f));
        double defect = 0.0;
        for (size_t k = 1; k < 4; ++k)
            defect = std::max(defect, std::abs(back(points[k]) - f(points[k])));
        out.push_back(finish(sw, "twisted.translation_inverse",
                             "Twisted translation is inverted by the opposite shift",
                             defect, pick(cfg.tolTwisted, 1e-12)));
    }
}

// ---------------------------------------------------------------------------
// weyl suite
// ---------------------------------------------------------------------------

void suite_weyl(const RunConfig& cfg, std::vector<CheckRecord>& out) {
    const double lambda = cfg.lambdas.front();
    auto basis = make_basis(cfg.n, lambda, std::min(cfg.maxDegree, 4));
    PhaseSpaceQuadrature ctx(basis, cfg.boxHalfWidth, cfg.quadPointsPerAxis);
    std::mt19937_64 rng(cfg.seed + 202);
    auto f = PhaseSpaceFunction::fromCoefficients(basis, random_coefficients(basis->dim(), rng));
    auto g = PhaseSpaceFunction::fromCoefficients(basis, random_coefficients(basis->dim(), rng));

    {
        Stopwatch sw;
        OperatorMatrix Wf = weyl_spectral(f);
        OperatorMatrix Wfs = weyl_spectral(phase_space_involution(f));
        double defect = (Wfs.entries - Wf.entries.adjoint()).norm() / Wf.entries.norm();
        out.push_back(finish(sw, "weyl.adjoint_spectral",
                             "Operator transform carries the involution to the adjoint "
                             "(coefficient path)",
                             defect, pick(cfg.tolWeyl, 1e-12)));
    }
    {
        Stopwatch sw;
        OperatorMatrix Wf = weyl_quadrature(f, ctx);
        OperatorMatrix Wfs = weyl_quadrature(phase_space_involution(f), ctx);
        double defect = (Wfs.entries - Wf.entries.adjoint()).norm() / Wf.entries.norm();
        out.push_back(finish(sw, "weyl.adjoint_quadrature",
                             "Operator transform carries the involution to the adjoint "
                             "(box-rule path)",
                             defect, pick(cfg.tolWeyl, 1e-3)));
    }
    {
        Stopwatch sw;
        OperatorMatrix lhs = weyl_spectral(twist_convolve_spectral(f, g));
        Eigen::MatrixXcd rhs = weyl_spectral(f).entries * weyl_spectral(g).entries;
        double defect = (lhs.entries - rhs).norm() / rhs.norm();
        out.push_back(finish(sw, "weyl.homomorphism_spectral",
                             "Operator transform carries twisted convolution to the "
                             "operator product (coefficient path)",
                             defect, pick(cfg.tolWeyl, 1e-12)));
    }
    {
        Stopwatch sw;
        OperatorMatrix lhs = weyl_quadrature(twist_convolve_spectral(f, g), ctx);
        Eigen::MatrixXcd rhs = weyl_quadrature(f, ctx).entries * weyl_quadrature(g, ctx).entries;
        double defect = (lhs.entries - rhs).norm() / rhs.norm();
        out.push_back(finish(sw, "weyl.homomorphism_quadrature",
                             "Operator transform carries twisted convolution to the "
                             "operator product (box-rule path)",
                             defect, pick(cfg.tolWeyl, 1e-3)));
    }
    {
        Stopwatch sw;
        const double cw = twisted_product_constant(cfg.n, lambda);
        auto vacuum = PhaseSpaceFunction::fromClosure(
            cfg.n, lambda, [lambda](const Eigen::VectorXcd& z) {
                return Complex(std::exp(-std::abs(lambda) * z.squaredNorm() / 4.0), 0.0);
            });
        OperatorMatrix W = weyl_quadrature(vacuum, ctx);
        Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(basis->dim(), basis->dim());
        expected(0, 0) = cw * cw;
        double defect = (W.entries - expected).norm() / (cw * cw);
        out.push_back(finish(sw, "weyl.vacuum_projector",
                             "The matched Gaussian transforms to the scaled ground-state "
                             "projector",
                             defect, pick(cfg.tolWeyl, 1e-5)));
    }
}

// ---------------------------------------------------------------------------
// fourier suite
// ---------------------------------------------------------------------------

void suite_fourier(const RunConfig& cfg, std::vector<CheckRecord>& out) {
    // Group-level quadratures run at one complex dimension regardless of n;
    // the closed-form test functions and their boxes are calibrated there.
    auto fA = gaussian_primary();
    auto fB = gaussian_secondary();
    const int N = std::min(cfg.maxDegree, 6);

    {
        Stopwatch sw;
        const double lambda = cfg.lambdas.front();
        auto basis = make_basis(1, lambda, std::min(cfg.maxDegree, 4));
        PhaseSpaceQuadrature ctx(basis, cfg.boxHalfWidth, cfg.quadPointsPerAxis);
        auto slice = convolution_slice(fA, fB, lambda, cfg.quadPointsPerAxis);
        auto sliceA = lambda_slice(fA, lambda);
        auto sliceB = lambda_slice(fB, lambda);
        double defect = 0.0, scale = 0.0;
        std::vector<Eigen::VectorXcd> pts = {zpt(0.3, 0.0), zpt(-0.5, 0.4), zpt(0.8, -0.3)};
        for (const auto& z : pts) {
            Complex direct = slice(z);
            Complex twisted = twist_convolve_grid(sliceA, sliceB, z, ctx);
            defect = std::max(defect, std::abs(direct - twisted));
            scale = std::max(scale, std::abs(direct));
        }
        out.push_back(finish(sw, "fourier.slice_exchange",
                             "The parameter slice of a group convolution is the twisted "
                             "convolution of the slices",
                             defect / scale, pick(cfg.tolFourier, 1e-3)));
    }
    for (double lambda : cfg.lambdas) {
        Stopwatch sw;
        auto basis = make_basis(1, lambda, N);
        PhaseSpaceQuadrature ctx(basis, cfg.boxHalfWidth, cfg.quadPointsPerAxis);
        OperatorMatrix FA = fourier_hat(fA, lambda, ctx);
        OperatorMatrix FB = fourier_hat(fB, lambda, ctx);
        auto slice = convolution_slice(fA, fB, lambda, cfg.quadPointsPerAxis);
        OperatorMatrix lhs = weyl_quadrature(slice, ctx);
        Eigen::MatrixXcd rhs = FA.entries * FB.entries;
        double defect = (lhs.entries - rhs).norm() / rhs.norm();
        out.push_back(finish(sw, "fourier.convolution_product.lambda_" + lambda_label(lambda),
                             "The transform of a group convolution is the product of the "
                             "transforms",
                             defect, pick(cfg.tolFourier, 1e-2)));
    }
    {
        Stopwatch sw;
        const double lambda = cfg.lambdas.front();
        auto basis = make_basis(1, lambda, N);
        PhaseSpaceQuadrature ctx(basis, cfg.boxHalfWidth, cfg.quadPointsPerAxis);
        OperatorMatrix F = fourier_hat(fB, lambda, ctx);
        OperatorMatrix Fs = fourier_hat(group_involution(fB), lambda, ctx);
        double defect = (Fs.entries - F.entries.adjoint()).norm() / F.entries.norm();
        out.push_back(finish(sw, "fourier.involution_adjoint",
                             "The transform of the group involution is the operator adjoint",
                             defect, pick(cfg.tolFourier, 1e-3)));
    }
    {
        const double lambda = cfg.lambdas.front();
        auto basis = make_basis(1, lambda, N);
        PhaseSpaceQuadrature ctx(basis, cfg.boxHalfWidth, cfg.quadPointsPerAxis);
        OperatorMatrix F = fourier_hat(fA, lambda, ctx);
        {
            Stopwatch sw;
            GroupElement g0;
            g0.z = zpt(0.6, 0.3);
            g0.t = 0.4;
            OperatorMatrix lhs = fourier_hat(right_translate(g0, fA), lambda, ctx);
            Eigen::MatrixXcd pig =
                std::polar(1.0, lambda * g0.t) * pi_matrix(lambda, g0.z, *basis).entries;
            double defect = (lhs.entries - F.entries * pig.adjoint()).norm() / F.entries.norm();
            out.push_back(finish(sw, "fourier.translation_covariance",
                                 "Right translation multiplies the transform by the adjoint "
                                 "representation factor",
                                 defect, pick(cfg.tolFourier, 5e-3)));
        }
        {
            Stopwatch sw;
            GroupElement gc;
            gc.z = zpt(0.0, 0.0);
            gc.t = 0.7;
            OperatorMatrix lhs = fourier_hat(right_translate(gc, fA), lambda, ctx);
            double defect =
                (lhs.entries - std::polar(1.0, -lambda * gc.t) * F.entries).norm() /
                F.entries.norm();
            out.push_back(finish(sw, "fourier.translation_central",
                                 "Central right translation scales the transform by the "
                                 "inverse character",
                                 defect, pick(cfg.tolFourier, 1e-8)));
        }
    }
    {
        Stopwatch sw;
        std::mt19937_64 rng(cfg.seed + 303);
        std::uniform_real_distribution<double> u(0.4, 1.2);
        double worst = 0.0;
        for (int trial = 0; trial < 3; ++trial) {
            double az = u(rng), at = u(rng), p = u(rng);
            auto f = HeisenbergFunction::separable(
                1,
                [az, p](const Eigen::VectorXcd& z) {
                    return Complex((1.0 + p * z[0].real()) * std::exp(-az * std::norm(z[0])), 0.0);
                },
                [at](double t) { return Complex(std::exp(-at * t * t), 0.0); }, 7.0, 7.0);
            double l1 = l1_norm(f);
            for (double lambda : {cfg.lambdas.front(), cfg.lambdas.back()}) {
                auto basis = make_basis(1, lambda, N);
                PhaseSpaceQuadrature ctx(basis, cfg.boxHalfWidth, cfg.quadPointsPerAxis);
                double op = fourier_hat(f, lambda, ctx).operatorNorm();
                worst = std::max(worst, op - l1);
            }
        }
        out.push_back(finish(sw, "fourier.operator_norm_bound",
                             "The operator norm of the transform never exceeds the "
                             "integral norm of the function",
                             std::max(worst, 0.0), pick(cfg.tolFourier, 1e-3)));
    }
    {
        Stopwatch sw;
        auto f = gaussian_matched();
        SpectralMeasure mu = spectral_measure_midpoint(8.0, 20, 1);
        double defect = plancherel_defect(f, mu, TruncationScheme(1, N), cfg.boxHalfWidth,
                                          cfg.quadPointsPerAxis);
        out.push_back(finish(sw, "fourier.plancherel_window",
                             "Squared transform norms integrate over the spectral grid to "
                             "the squared function norm",
                             defect, pick(cfg.tolFourier, 1e-3)));
    }
}

// ---------------------------------------------------------------------------
// factorizer suite
// ---------------------------------------------------------------------------

void suite_factorizer(const RunConfig& cfg, std::vector<CheckRecord>& out) {
    const double lambda = cfg.lambdas.front();
    const int N = std::min(cfg.maxDegree, 4);
    TruncationScheme scheme(cfg.n, N);
    const int D = scheme.dimension();

    {
        Stopwatch sw;
        double worst = 0.0;
        bool structural = true;
        const std::pair<int, int> shapes[] = {{1, 0}, {2, 1}, {3, 5}};
        for (auto [m, resid] : shapes) {
            for (std::uint64_t ds = 0; ds < 2; ++ds) {
                std::mt19937_64 rng(cfg.seed + 7 * m + ds);
                std::vector<Eigen::MatrixXcd> Us;
                for (int j = 0; j < m; ++j) Us.push_back(haar_like_unitary(D, rng));
                auto spec = synthesize_homomorphism(lambda, scheme, Us, resid,
                                                    cfg.seed + 11 * m + ds);
                Decomposition dec = factorize(spec);
                structural = structural && dec.blockCount() == m && dec.residualDim() == resid;
                worst = std::max({worst, dec.orthonormalityDefect, dec.intertwiningResidual,
                                  dec.residualActivation});
            }
        }
        out.push_back(finish(sw, "factorizer.roundtrip",
                             "Factorization recovers synthesized block counts and residual "
                             "dimensions with orthonormal intertwiners",
                             structural ? worst : 1.0, pick(cfg.tolFactorizer, 1e-9)));
    }

    std::mt19937_64 rng(cfg.seed + 404);
    std::vector<Eigen::MatrixXcd> Us = {haar_like_unitary(D, rng), haar_like_unitary(D, rng)};
    auto exactSpec = synthesize_homomorphism(lambda, scheme, Us, 1, cfg.seed + 405);
    {
        Stopwatch sw;
        RelationReport rep = check_relations(exactSpec, 1e-8 * exactSpec.generatorScale());
        out.push_back(finish(sw, "factorizer.relations_exact",
                             "Exactly synthesized generator families satisfy the product "
                             "and adjoint relations",
                             std::max(rep.productResidual, rep.adjointResidual) /
                                 exactSpec.generatorScale(),
                             pick(cfg.tolFactorizer, 1e-12)));
    }
    {
        Stopwatch sw;
        std::vector<Eigen::MatrixXcd> gens = exactSpec.generators();
        std::mt19937_64 prng(cfg.seed + 406);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const double eps = 1e-3;
        for (auto& G : gens)
            for (int r = 0; r < G.rows(); ++r)
                for (int c = 0; c < G.cols(); ++c) G(r, c) += eps * Complex(u(prng), u(prng));
        HomomorphismSpec noisy(exactSpec.basisPtr(), exactSpec.targetDim(), gens);
        RelationReport rep = check_relations(noisy, 1e-8 * noisy.generatorScale());
        double scaled = rep.productResidual / noisy.generatorScale();
        // Shortfall below the detection floor, plus a unit penalty if the gate
        // wrongly reports a pass: zero exactly when the perturbation is caught.
        double residual = std::max(0.0, 1e-4 - scaled) + (rep.pass() ? 1.0 : 0.0);
        out.push_back(finish(sw, "factorizer.relations_sensitivity",
                             "Entrywise perturbations of size 1e-3 are flagged by the "
                             "relation gate with residual at least 1e-4",
                             residual, pick(cfg.tolFactorizer, 1e-9)));
    }
    {
        std::mt19937_64 rng3(cfg.seed + 408);
        std::vector<Eigen::MatrixXcd> U3 = {haar_like_unitary(D, rng3), haar_like_unitary(D, rng3),
                                            haar_like_unitary(D, rng3)};
        auto spec3 = synthesize_homomorphism(lambda, scheme, U3, 2, cfg.seed + 409);
        Decomposition dec3 = factorize(spec3);
        Eigen::MatrixXcd probe = Eigen::MatrixXcd::Zero(D, D);
        probe(0, 0) = 1.0;
        {
            Stopwatch sw;
            FinitenessReport fin = finiteness_check(spec3, dec3, probe);
            out.push_back(finish(sw, "factorizer.finiteness_budget",
                                 "The norm budget through the homomorphism is the block "
                                 "count times the single-block budget",
                                 fin.relativeError, pick(cfg.tolFactorizer, 1e-8)));
            const double cw = twisted_product_constant(cfg.n, lambda);
            out.push_back(finish(sw, "factorizer.finiteness_block_value",
                                 "The single-block budget of the lowest basis pair equals "
                                 "the squared transform constant",
                                 std::abs(fin.blockSquaredNorm - cw * cw) / (cw * cw),
                                 pick(cfg.tolFactorizer, 1e-6)));
            out.back().seconds = 0.0;
        }
    }
    {
        // The group-level quadrature pipeline is exercised at one complex
        // dimension: its cost grows with the fourth power of the axis count.
        Stopwatch swReduce;
        auto basis = make_basis(1, lambda, std::min(cfg.maxDegree, 6));
        GroupEvaluator T = fourier_group_evaluator(basis, cfg.boxHalfWidth,
                                                   cfg.quadPointsPerAxis);
        HomomorphismSpec reduced =
            reduce_group_to_twisted(T, basis, unit_mass_gaussian(lambda));
        RelationReport rep = check_relations(reduced, 1e-3 * reduced.generatorScale());
        out.push_back(finish(swReduce, "factorizer.reduced_relations",
                             "Generators reduced from the group-level transform satisfy "
                             "the relations",
                             std::max(rep.productResidual, rep.adjointResidual) /
                                 reduced.generatorScale(),
                             pick(cfg.tolFactorizer, 1e-3)));
        Stopwatch swRig;
        Decomposition dec = factorize(reduced, 1e-4);
        auto pts1 = standard_sample_points(1);
        std::vector<Eigen::VectorXcd> zs(pts1.begin(), pts1.begin() + 5);
        double dev = rigidity_check(dec, lambda, zs, *basis);
        out.push_back(finish(swRig, "factorizer.rigidity_reduced",
                             "The factorization of the reduced transform reproduces the "
                             "representation matrices themselves",
                             dev, pick(cfg.tolFactorizer, 5e-3)));
    }
    {
        Stopwatch sw;
        Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(D, D);
        for (int a = 0; a < D; ++a) S(a, a) = (scheme.at(a).degree() % 2 == 0) ? 1.0 : -1.0;
        auto parity = synthesize_homomorphism(lambda, scheme, {S}, 0, cfg.seed + 410,
                                              /*conceal=*/false);
        Decomposition dec = factorize(parity);
        auto ptsn = standard_sample_points(cfg.n);
        std::vector<Eigen::VectorXcd> zs(ptsn.begin(), ptsn.begin() + 5);
        auto basis = make_basis(cfg.n, lambda, N);
        double dev = rigidity_check(dec, lambda, zs, *basis);
        // Shortfall below the required separation 0.1: zero exactly when the
        // sign-conjugated family is recognized as merely equivalent.
        out.push_back(finish(sw, "factorizer.rigidity_separation",
                             "A sign-conjugated family is unitarily equivalent but fails "
                             "literal rigidity by a wide margin",
                             std::max(0.0, 0.1 - dev), pick(cfg.tolFactorizer, 1e-9)));
    }
    {
        Stopwatch sw;
        namespace fs = std::filesystem;
        fs::path path = fs::temp_directory_path() /
                        ("heisen_report_archive_" + std::to_string(cfg.seed) + ".hspec");
        save_spec(exactSpec, path.string());
        HomomorphismSpec loaded = load_spec(path.string());
        double defect = 0.0;
        for (int a = 0; a < D; ++a)
            for (int b = 0; b < D; ++b)
                defect = std::max(defect, (loaded.generator(a, b) - exactSpec.generator(a, b))
                                              .cwiseAbs()
                                              .maxCoeff());
        fs::remove(path);
        out.push_back(finish(sw, "factorizer.archive_roundtrip",
                             "Spec archives round-trip through disk bit-exactly",
                             defect, pick(cfg.tolFactorizer, 1e-15)));
    }
}

using SuiteFn = void (*)(const RunConfig&, std::vector<CheckRecord>&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
    static const std::vector<std::pair<std::string, SuiteFn>> table = {
        {"basis", suite_basis},     {"representation", suite_representation},
        {"twisted", suite_twisted}, {"weyl", suite_weyl},
        {"fourier", suite_fourier}, {"factorizer", suite_factorizer},
    };
    return table;
}

ordered_json config_json(const RunConfig& cfg) {
    ordered_json j;
    j["suite"] = cfg.suite;
    j["n"] = cfg.n;
    j["lambdas"] = cfg.lambdas;
    j["max_degree"] = cfg.maxDegree;
    j["quad_points_per_axis"] = cfg.quadPointsPerAxis;
    j["box_half_width"] = cfg.boxHalfWidth;
    j["seed"] = cfg.seed;
    ordered_json tols = ordered_json::object();
    if (cfg.tolBasis) tols["basis"] = *cfg.tolBasis;
    if (cfg.tolRepresentation) tols["representation"] = *cfg.tolRepresentation;
    if (cfg.tolTwisted) tols["twisted"] = *cfg.tolTwisted;
    if (cfg.tolWeyl) tols["weyl"] = *cfg.tolWeyl;
    if (cfg.tolFourier) tols["fourier"] = *cfg.tolFourier;
    if (cfg.tolFactorizer) tols["factorizer"] = *cfg.tolFactorizer;
    j["tolerance_overrides"] = tols;
    return j;
}

ordered_json report_body(const RunConfig& cfg, const std::vector<CheckRecord>& records) {
    ordered_json j;
    j["report_version"] = kReportVersion;
    j["config"] = config_json(cfg);
    int passed = 0;
    for (const auto& r : records) passed += r.passed ? 1 : 0;
    j["summary"] = {{"checks", records.size()},
                    {"passed", passed},
                    {"failed", records.size() - static_cast<size_t>(passed)},
                    {"all_passed", passed == static_cast<int>(records.size())}};
    ordered_json arr = ordered_json::array();
    for (const auto& r : records) {
        ordered_json rec;
        rec["name"] = r.name;
        rec["property"] = r.property;
        rec["residual"] = r.residual;
        rec["tolerance"] = r.tolerance;
        rec["passed"] = r.passed;
        arr.push_back(std::move(rec));
    }
    j["records"] = std::move(arr);
    return j;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : suite_table()) v.push_back(name);
        return v;
    }();
    return names;
}

void validate_config(const RunConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("config: n must be at least 1");
    if (cfg.maxDegree < 0) throw std::invalid_argument("config: max degree must be nonnegative");
    if (cfg.quadPointsPerAxis < 2)
        throw std::invalid_argument("config: quadrature points per axis must be at least 2");
    if (!(cfg.boxHalfWidth > 0))
        throw std::invalid_argument("config: box half-width must be positive");
    if (cfg.lambdas.empty()) throw std::invalid_argument("config: lambda list must be nonempty");
    for (double lambda : cfg.lambdas)
        if (!(std::isfinite(lambda)) || lambda == 0.0)
            throw std::invalid_argument("config: lambda values must be finite and nonzero");
    for (const auto* tol : {&cfg.tolBasis, &cfg.tolRepresentation, &cfg.tolTwisted, &cfg.tolWeyl,
                            &cfg.tolFourier, &cfg.tolFactorizer})
        if (*tol && !(**tol > 0.0))
            throw std::invalid_argument("config: tolerance overrides must be positive");
    if (cfg.suite != "all") {
        const auto& names = suite_names();
        if (std::find(names.begin(), names.end(), cfg.suite) == names.end())
            throw std::invalid_argument("config: unknown suite '" + cfg.suite + "'");
    }
    // The phase-space contexts cache one D x D table per node, and the node
    // count is quadPointsPerAxis^(2n). Reject configurations whose cached
    // tables would not fit in memory instead of thrashing.
    const double D = static_cast<double>(TruncationScheme(cfg.n, std::min(cfg.maxDegree, 4))
                                             .dimension());
    const double nodes = std::pow(static_cast<double>(cfg.quadPointsPerAxis), 2.0 * cfg.n);
    if (nodes * D * D > 6.7e7)
        throw std::invalid_argument(
            "config: the cached phase-space tables would exceed the memory budget; "
            "reduce the quadrature points per axis, the degree, or n");
}

std::vector<CheckRecord> run_suite(const RunConfig& cfg) {
    validate_config(cfg);
    std::vector<CheckRecord> records;
    for (const auto& [name, fn] : suite_table())
        if (cfg.suite == "all" || cfg.suite == name) fn(cfg, records);
    return records;
}

bool all_passed(const std::vector<CheckRecord>& records) {
    for (const auto& r : records)
        if (!r.passed) return false;
    return true;
}

std::string report_json(const RunConfig& cfg, const std::vector<CheckRecord>& records) {
    return report_body(cfg, records).dump(2) + "\n";
}

std::string report_json_with_timing(const RunConfig& cfg,
                                    const std::vector<CheckRecord>& records) {
    ordered_json j = report_body(cfg, records);
    ordered_json seconds = ordered_json::object();
    double total = 0.0;
    for (const auto& r : records) {
        seconds[r.name] = r.seconds;
        total += r.seconds;
    }
    j["timing"] = {{"total_seconds", total}, {"seconds", std::move(seconds)}};
    return j.dump(2) + "\n";
}

std::string report_csv(const std::vector<CheckRecord>& records) {
    std::ostringstream os;
    os << "name,property,residual,tolerance,passed\n";
    for (const auto& r : records) {
        std::string prop = r.property;
        std::string quoted = "\"";
        for (char c : prop) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        quoted += '"';
        os << r.name << ',' << quoted << ',' << format_double(r.residual) << ','
           << format_double(r.tolerance) << ',' << (r.passed ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string report_text(const std::vector<CheckRecord>& records) {
    size_t width = 4;
    for (const auto& r : records) width = std::max(width, r.name.size());
    std::ostringstream os;
    int passed = 0;
    for (const auto& r : records) {
        char line[128];
        std::snprintf(line, sizeof(line), "  %-*s  %11.4e  <=  %9.2e   %s\n",
                      static_cast<int>(width), r.name.c_str(), r.residual, r.tolerance,
                      r.passed ? "PASS" : "FAIL");
        os << line;
        passed += r.passed ? 1 : 0;
    }
    os << (all_passed(records) ? "all checks passed" : "CHECKS FAILED") << " (" << passed << "/"
       << records.size() << ")\n";
    return os.str();
}

std::string convergence_csv(const RunConfig& cfg, const std::vector<int>& degrees) {
    validate_config(cfg);
    for (int N : degrees)
        if (N < 1) throw std::invalid_argument("convergence: degrees must be at least 1");
    std::ostringstream os;
    os << "N,unitarity_defect,plancherel_defect\n";
    const double lambda = cfg.lambdas.front();
    auto f = gaussian_matched();
    SpectralMeasure mu = spectral_measure_midpoint(8.0, 20, cfg.n);
    const auto points = standard_sample_points(cfg.n);
    for (int N : degrees) {
        auto basis = make_basis(cfg.n, lambda, N);
        const auto window = window_positions(basis->scheme(), std::min(1, N));
        const Eigen::MatrixXcd Iw = Eigen::MatrixXcd::Identity(
            static_cast<int>(window.size()), static_cast<int>(window.size()));
        double unit = 0.0;
        for (size_t k = 0; k < 5; ++k) {
            Eigen::MatrixXcd U = pi_matrix(lambda, points[k], *basis).entries;
            Eigen::MatrixXcd W = window_block((U.adjoint() * U).eval(), window);
            unit = std::max(unit, (W - Iw).cwiseAbs().maxCoeff());
        }
        double plan = plancherel_defect(f, mu, TruncationScheme(cfg.n, N), cfg.boxHalfWidth,
                                        cfg.quadPointsPerAxis);
        os << N << ',' << format_double(unit) << ',' << format_double(plan) << '\n';
    }
    return os.str();
}

std::vector<Eigen::VectorXcd> standard_sample_points(int n) {
    if (n < 1) throw std::invalid_argument("sample points: n must be at least 1");
    static const double base[9][2] = {{0.3, 0.0},   {-0.5, 0.4},  {0.8, -0.3},
                                      {0.0, 0.9},   {-0.7, -0.6}, {0.45, 0.55},
                                      {-0.2, -0.15}, {0.95, 0.1},  {-0.35, 0.75}};
    std::vector<Eigen::VectorXcd> points;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int j = 0; j < 9; ++j) {
        Eigen::VectorXcd z(n);
        for (int k = 0; k < n; ++k) {
            const double* p = base[(j + 2 * k) % 9];
            z[k] = scale * Complex(p[0], p[1]);
        }
        points.push_back(std::move(z));
    }
    return points;
}

}  // namespace heis
