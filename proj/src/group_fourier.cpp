#include "heisen/group_fourier.hpp"

#include <cmath>
#include <memory>

namespace heis {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

/// Cubic Lagrange interpolation on a uniform grid; queries outside the grid
/// are clamped to the edge stencil (the tables below cover every reachable
/// argument with room to spare, and their tails vanish).
struct UniformTable {
    double x0 = 0.0;
    double dx = 1.0;
    Eigen::VectorXcd y;

    Complex at(double x) const {
        const int m = static_cast<int>(y.size());
        const double u = (x - x0) / dx;
        int k = static_cast<int>(std::floor(u));
        if (k < 1) k = 1;
        if (k > m - 3) k = m - 3;
        const double s = u - k;
        const double w0 = -s * (s - 1.0) * (s - 2.0) / 6.0;
        const double w1 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
        const double w2 = -(s + 1.0) * s * (s - 2.0) / 2.0;
        const double w3 = (s + 1.0) * s * (s - 1.0) / 6.0;
        return w0 * y[k - 1] + w1 * y[k] + w2 * y[k + 1] + w3 * y[k + 2];
    }
};

} // namespace

HeisenbergFunction HeisenbergFunction::separable(int n, ZEval zPart, TEval tPart,
                                                 double zBox, double tBox) {
    require(n >= 1, "HeisenbergFunction: n must be >= 1");
    require(zBox > 0.0 && tBox > 0.0, "HeisenbergFunction: decay boxes must be positive");
    require(static_cast<bool>(zPart) && static_cast<bool>(tPart),
            "HeisenbergFunction: missing factor");
    HeisenbergFunction f;
    f.n_ = n;
    f.zBox_ = zBox;
    f.tBox_ = tBox;
    f.zPart_ = std::move(zPart);
    f.tPart_ = std::move(tPart);
    return f;
}

HeisenbergFunction HeisenbergFunction::general(int n, FullEval fn, double zBox, double tBox) {
    require(n >= 1, "HeisenbergFunction: n must be >= 1");
    require(zBox > 0.0 && tBox > 0.0, "HeisenbergFunction: decay boxes must be positive");
    require(static_cast<bool>(fn), "HeisenbergFunction: missing evaluator");
    HeisenbergFunction f;
    f.n_ = n;
    f.zBox_ = zBox;
    f.tBox_ = tBox;
    f.fn_ = std::move(fn);
    return f;
}

Complex HeisenbergFunction::operator()(const Eigen::VectorXcd& z, double t) const {
    require(static_cast<int>(z.size()) == n_, "HeisenbergFunction: point dimension mismatch");
    if (isSeparable()) return zPart_(z) * tPart_(t);
    return fn_(z, t);
}

const HeisenbergFunction::ZEval& HeisenbergFunction::zPart() const {
    require(isSeparable(), "HeisenbergFunction: not separable");
    return zPart_;
}

const HeisenbergFunction::TEval& HeisenbergFunction::tPart() const {
    require(isSeparable(), "HeisenbergFunction: not separable");
    return tPart_;
}

QuadratureRule central_rule(double T, int points) {
    return uniform_box_rule(T, points, 1);
}

PhaseSpaceFunction lambda_slice(const HeisenbergFunction& f, double lambda, int tPoints) {
    require(lambda != 0.0, "lambda_slice: lambda must be nonzero");
    QuadratureRule rule = central_rule(f.tBox(), tPoints);
    if (f.isSeparable()) {
        Complex ch(0.0, 0.0);
        for (int i = 0; i < rule.count(); ++i) {
            const double t = rule.nodes(i, 0);
            ch += rule.weights[i] * std::polar(1.0, lambda * t) * f.tPart()(t);
        }
        auto g = f.zPart();
        return PhaseSpaceFunction::fromClosure(
            f.n(), lambda, [g, ch](const Eigen::VectorXcd& z) { return ch * g(z); });
    }
    auto shared = std::make_shared<QuadratureRule>(std::move(rule));
    HeisenbergFunction fc = f;
    return PhaseSpaceFunction::fromClosure(
        f.n(), lambda, [fc, shared, lambda](const Eigen::VectorXcd& z) {
            Complex acc(0.0, 0.0);
            for (int i = 0; i < shared->count(); ++i) {
                const double t = shared->nodes(i, 0);
                acc += shared->weights[i] * std::polar(1.0, lambda * t) * fc(z, t);
            }
            return acc;
        });
}

Complex convolve_group(const HeisenbergFunction& f, const HeisenbergFunction& g,
                       const GroupElement& at, int zPointsPerAxis, int tPoints) {
    require(f.n() == g.n(), "convolve_group: dimension mismatch");
    require(static_cast<int>(at.z.size()) == f.n(), "convolve_group: point dimension mismatch");
    const int n = f.n();
    const QuadratureRule wRule = uniform_box_rule(g.zBox(), zPointsPerAxis, 2 * n);
    const QuadratureRule sRule = central_rule(g.tBox(), tPoints);
    GroupElement y;
    y.z.resize(n);
    Complex acc(0.0, 0.0);
    for (int j = 0; j < wRule.count(); ++j) {
        for (int k = 0; k < n; ++k) y.z[k] = Complex(wRule.nodes(j, k), wRule.nodes(j, n + k));
        Complex inner(0.0, 0.0);
        for (int i = 0; i < sRule.count(); ++i) {
            y.t = sRule.nodes(i, 0);
            inner += sRule.weights[i] * f(group_mul(at, group_inverse(y))) * g(y.z, y.t);
        }
        acc += wRule.weights[j] * inner;
    }
    return acc;
}

PhaseSpaceFunction convolution_slice(const HeisenbergFunction& f, const HeisenbergFunction& g,
                                     double lambda, int zPointsPerAxis, int tPoints,
                                     double zEvalHalfWidth) {
    require(lambda != 0.0, "convolution_slice: lambda must be nonzero");
    require(f.n() == g.n(), "convolution_slice: dimension mismatch");
    require(zEvalHalfWidth > 0.0, "convolution_slice: evaluation radius must be positive");
    const int n = f.n();

    if (!(f.isSeparable() && g.isSeparable())) {
        auto outer = std::make_shared<QuadratureRule>(
            central_rule(f.tBox() + g.tBox(), 2 * tPoints - 1));
        HeisenbergFunction fc = f, gc = g;
        return PhaseSpaceFunction::fromClosure(
            n, lambda, [fc, gc, outer, lambda, zPointsPerAxis, tPoints](const Eigen::VectorXcd& z) {
                Complex acc(0.0, 0.0);
                GroupElement at;
                at.z = z;
                for (int i = 0; i < outer->count(); ++i) {
                    at.t = outer->nodes(i, 0);
                    acc += outer->weights[i] * std::polar(1.0, lambda * at.t) *
                           convolve_group(fc, gc, at, zPointsPerAxis, tPoints);
                }
                return acc;
            });
    }

    // Separable pair: with f = fz h1 and g = gz h2,
    //   (f*g)^lambda(z) = sum_w ww fz(z-w) gz(w) K(phi),  phi = (1/2) Im(z . conj w)
    //   K(c) = sum_s ws h2(s) I(s + c)
    //   I(c) = sum_t wt e^{i lambda t} h1(t - c)
    // is the quadruple trapezoid sum reassociated, with the outer t-window
    // widened to the sum of the two t-boxes (convolution spreads the central
    // support). I and K are tabulated once; cubic interpolation on the
    // 0.02-spaced tables is the only approximation added to the rules.
    const double delta = 0.02;
    const double phiCap = n * zEvalHalfWidth * g.zBox() + 1.0;
    const QuadratureRule tRule = central_rule(f.tBox() + g.tBox(), 2 * tPoints - 1);
    const QuadratureRule sRule = central_rule(g.tBox(), tPoints);
    const auto h1 = f.tPart();
    const auto h2 = g.tPart();

    UniformTable I;
    {
        const double cmax = phiCap + g.tBox() + 2.0 * delta;
        const int half = static_cast<int>(std::ceil(cmax / delta));
        I.x0 = -delta * half;
        I.dx = delta;
        I.y.resize(2 * half + 1);
        for (int k = 0; k < I.y.size(); ++k) {
            const double c = I.x0 + delta * k;
            Complex acc(0.0, 0.0);
            for (int i = 0; i < tRule.count(); ++i) {
                const double t = tRule.nodes(i, 0);
                acc += tRule.weights[i] * std::polar(1.0, lambda * t) * h1(t - c);
            }
            I.y[k] = acc;
        }
    }
    auto K = std::make_shared<UniformTable>();
    {
        const double cmax = phiCap + 2.0 * delta;
        const int half = static_cast<int>(std::ceil(cmax / delta));
        K->x0 = -delta * half;
        K->dx = delta;
        K->y.resize(2 * half + 1);
        for (int k = 0; k < K->y.size(); ++k) {
            const double c = K->x0 + delta * k;
            Complex acc(0.0, 0.0);
            for (int i = 0; i < sRule.count(); ++i) {
                const double s = sRule.nodes(i, 0);
                acc += sRule.weights[i] * h2(s) * I.at(s + c);
            }
            K->y[k] = acc;
        }
    }

    auto wRule = std::make_shared<QuadratureRule>(uniform_box_rule(g.zBox(), zPointsPerAxis, 2 * n));
    const auto fz = f.zPart();
    const auto gz = g.zPart();
    return PhaseSpaceFunction::fromClosure(
        n, lambda, [n, wRule, K, fz, gz](const Eigen::VectorXcd& z) {
            Complex acc(0.0, 0.0);
            Eigen::VectorXcd w(n);
            for (int j = 0; j < wRule->count(); ++j) {
                for (int k = 0; k < n; ++k)
                    w[k] = Complex(wRule->nodes(j, k), wRule->nodes(j, n + k));
                const double phi = 0.5 * symplectic_im(z, w);
                acc += wRule->weights[j] * fz(z - w) * gz(w) * K->at(phi);
            }
            return acc;
        });
}

OperatorMatrix fourier_hat(const HeisenbergFunction& f, double lambda,
                           const PhaseSpaceQuadrature& ctx, int tPoints) {
    require(lambda != 0.0, "fourier_hat: lambda must be nonzero");
    require(ctx.basis().lambda() == lambda, "fourier_hat: context lambda mismatch");
    require(ctx.basis().n() == f.n(), "fourier_hat: dimension mismatch");
    return weyl_quadrature(lambda_slice(f, lambda, tPoints), ctx);
}

HeisenbergFunction right_translate(const GroupElement& g0, const HeisenbergFunction& f) {
    require(static_cast<int>(g0.z.size()) == f.n(), "right_translate: dimension mismatch");
    const int n = f.n();
    if (g0.z.isZero(0.0)) {
        const double t0 = g0.t;
        if (f.isSeparable()) {
            auto h = f.tPart();
            return HeisenbergFunction::separable(
                n, f.zPart(), [h, t0](double t) { return h(t + t0); }, f.zBox(),
                f.tBox() + std::abs(t0));
        }
        HeisenbergFunction fc = f;
        return HeisenbergFunction::general(
            n, [fc, t0](const Eigen::VectorXcd& z, double t) { return fc(z, t + t0); },
            f.zBox(), f.tBox() + std::abs(t0));
    }
    double coordMax = 0.0;
    double absSum = 0.0;
    for (int k = 0; k < n; ++k) {
        coordMax = std::max({coordMax, std::abs(g0.z[k].real()), std::abs(g0.z[k].imag())});
        absSum += std::abs(g0.z[k]);
    }
    const double zBox = f.zBox() + coordMax;
    // the twist shears the central support by up to (1/2)|w||z0| over the box
    const double tBox = f.tBox() + std::abs(g0.t) + 0.5 * std::sqrt(2.0) * zBox * absSum;
    HeisenbergFunction fc = f;
    GroupElement shift = g0;
    return HeisenbergFunction::general(
        n,
        [fc, shift](const Eigen::VectorXcd& z, double t) {
            GroupElement at;
            at.z = z;
            at.t = t;
            return fc(group_mul(at, shift));
        },
        zBox, tBox);
}

HeisenbergFunction group_involution(const HeisenbergFunction& f) {
    if (f.isSeparable()) {
        auto g = f.zPart();
        auto h = f.tPart();
        return HeisenbergFunction::separable(
            f.n(), [g](const Eigen::VectorXcd& z) { return std::conj(g((-z).eval())); },
            [h](double t) { return std::conj(h(-t)); }, f.zBox(), f.tBox());
    }
    HeisenbergFunction fc = f;
    return HeisenbergFunction::general(
        f.n(),
        [fc](const Eigen::VectorXcd& z, double t) { return std::conj(fc((-z).eval(), -t)); },
        f.zBox(), f.tBox());
}

namespace {

double norm_integral(const HeisenbergFunction& f, int zPointsPerAxis, int tPoints,
                     bool squared) {
    const int n = f.n();
    const QuadratureRule zRule = uniform_box_rule(f.zBox(), zPointsPerAxis, 2 * n);
    const QuadratureRule tRule = central_rule(f.tBox(), tPoints);
    auto weight = [squared](Complex v) { return squared ? std::norm(v) : std::abs(v); };
    Eigen::VectorXcd z(n);
    if (f.isSeparable()) {
        double zAcc = 0.0;
        for (int j = 0; j < zRule.count(); ++j) {
            for (int k = 0; k < n; ++k) z[k] = Complex(zRule.nodes(j, k), zRule.nodes(j, n + k));
            zAcc += zRule.weights[j] * weight(f.zPart()(z));
        }
        double tAcc = 0.0;
        for (int i = 0; i < tRule.count(); ++i)
            tAcc += tRule.weights[i] * weight(f.tPart()(tRule.nodes(i, 0)));
        return zAcc * tAcc;
    }
    double acc = 0.0;
    for (int j = 0; j < zRule.count(); ++j) {
        for (int k = 0; k < n; ++k) z[k] = Complex(zRule.nodes(j, k), zRule.nodes(j, n + k));
        double inner = 0.0;
        for (int i = 0; i < tRule.count(); ++i)
            inner += tRule.weights[i] * weight(f(z, tRule.nodes(i, 0)));
        acc += zRule.weights[j] * inner;
    }
    return acc;
}

} // namespace

double l1_norm(const HeisenbergFunction& f, int zPointsPerAxis, int tPoints) {
    return norm_integral(f, zPointsPerAxis, tPoints, false);
}

double l2_norm_squared(const HeisenbergFunction& f, int zPointsPerAxis, int tPoints) {
    return norm_integral(f, zPointsPerAxis, tPoints, true);
}

SpectralMeasure spectral_measure_trapezoid(const std::vector<double>& grid, int n) {
    require(n >= 1, "spectral_measure_trapezoid: n must be >= 1");
    require(grid.size() >= 2, "spectral_measure_trapezoid: need at least two grid points");
    for (size_t i = 0; i < grid.size(); ++i) {
        require(grid[i] != 0.0, "spectral_measure_trapezoid: grid points must be nonzero");
        if (i > 0)
            require(grid[i] > grid[i - 1], "spectral_measure_trapezoid: grid must increase strictly");
    }
    SpectralMeasure mu;
    mu.n = n;
    const int m = static_cast<int>(grid.size());
    mu.lambdas.resize(m);
    mu.weights.resize(m);
    const double dens = std::pow(2.0 * M_PI, -(n + 1));
    for (int i = 0; i < m; ++i) {
        mu.lambdas[i] = grid[i];
        double w = 0.0;
        if (i > 0) w += 0.5 * (grid[i] - grid[i - 1]);
        if (i + 1 < m) w += 0.5 * (grid[i + 1] - grid[i]);
        mu.weights[i] = w * dens * std::pow(std::abs(grid[i]), n);
    }
    return mu;
}

SpectralMeasure spectral_measure_midpoint(double L, int cells, int n) {
    require(n >= 1, "spectral_measure_midpoint: n must be >= 1");
    require(L > 0.0, "spectral_measure_midpoint: L must be positive");
    require(cells >= 2, "spectral_measure_midpoint: need at least two cells");
    const double h = 2.0 * L / cells;
    SpectralMeasure mu;
    mu.n = n;
    mu.lambdas.resize(cells);
    mu.weights.resize(cells);
    const double dens = std::pow(2.0 * M_PI, -(n + 1));
    for (int k = 0; k < cells; ++k) {
        const double lam = -L + (k + 0.5) * h;
        require(lam != 0.0, "spectral_measure_midpoint: grid hits zero; use an even cell count");
        mu.lambdas[k] = lam;
        mu.weights[k] = h * dens * std::pow(std::abs(lam), n);
    }
    return mu;
}

double plancherel_defect(const HeisenbergFunction& f, const SpectralMeasure& mu,
                         const TruncationScheme& scheme, double boxHalfWidth,
                         int pointsPerAxis, int tPoints) {
    require(mu.n == f.n(), "plancherel_defect: dimension mismatch");
    const double norm2 = l2_norm_squared(f, pointsPerAxis, tPoints);
    double spectral = 0.0;
    for (int j = 0; j < mu.lambdas.size(); ++j) {
        auto basis = std::make_shared<HermiteBasis>(f.n(), mu.lambdas[j], scheme);
        PhaseSpaceQuadrature ctx(basis, boxHalfWidth, pointsPerAxis);
        const OperatorMatrix F = fourier_hat(f, mu.lambdas[j], ctx, tPoints);
        spectral += mu.weights[j] * F.entries.squaredNorm();
    }
    const double denom = norm2 > 0.0 ? norm2 : 1.0;
    return std::abs(spectral - norm2) / denom;
}

} // namespace heis
