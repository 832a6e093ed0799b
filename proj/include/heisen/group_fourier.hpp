#pragma once

#include "heisen/heisenberg_group.hpp"
#include "heisen/twisted_convolution.hpp"
#include "heisen/weyl.hpp"

namespace heis {

/// Integrable function on H^n = C^n x R, either a separable product
/// g(z) h(t) or a general closure. The declared decay boxes size every
/// quadrature that consumes the function: the mass is assumed captured by
/// |Re z_k|, |Im z_k| <= zBox and |t| <= tBox.
class HeisenbergFunction {
public:
    using ZEval = std::function<Complex(const Eigen::VectorXcd&)>;
    using TEval = std::function<Complex(double)>;
    using FullEval = std::function<Complex(const Eigen::VectorXcd&, double)>;

    static HeisenbergFunction separable(int n, ZEval zPart, TEval tPart,
                                        double zBox = 10.0, double tBox = 8.0);
    static HeisenbergFunction general(int n, FullEval fn,
                                      double zBox = 10.0, double tBox = 8.0);

    int n() const { return n_; }
    bool isSeparable() const { return static_cast<bool>(zPart_); }
    double zBox() const { return zBox_; }
    double tBox() const { return tBox_; }

    Complex operator()(const Eigen::VectorXcd& z, double t) const;
    Complex operator()(const GroupElement& g) const { return (*this)(g.z, g.t); }

    const ZEval& zPart() const; // throws unless separable
    const TEval& tPart() const; // throws unless separable

private:
    int n_ = 1;
    double zBox_ = 10.0;
    double tBox_ = 8.0;
    ZEval zPart_;
    TEval tPart_;
    FullEval fn_;
};

/// Trapezoid rule on [-T, T] for the central variable.
QuadratureRule central_rule(double T = 8.0, int points = 161);

/// f^lambda(z) = integral of f(z, t) e^{i lambda t} dt over the central rule
/// sized by f's t-box. Separable inputs fold the t-integral into a single
/// scalar, so the returned closure costs one zPart call per evaluation.
PhaseSpaceFunction lambda_slice(const HeisenbergFunction& f, double lambda, int tPoints = 161);

/// (f * g)(at) = integral over (w, s) of f(at (w,s)^{-1}) g(w, s), the group
/// convolution evaluated at one point by nested box quadrature.
Complex convolve_group(const HeisenbergFunction& f, const HeisenbergFunction& g,
                       const GroupElement& at, int zPointsPerAxis = 61, int tPoints = 161);

/// The lambda-slice of f * g as a phase-space closure. For separable pairs
/// the quadruple quadrature is reorganized exactly into two tabulated
/// one-dimensional sums plus a w-sum per evaluation (cubic interpolation on
/// a 0.02-spaced table is the only approximation beyond the rules
/// themselves); general pairs fall back to the direct nested quadrature,
/// which is orders of magnitude slower. The closure is accurate for
/// evaluation points inside |Re z_k|, |Im z_k| <= zEvalHalfWidth.
PhaseSpaceFunction convolution_slice(const HeisenbergFunction& f, const HeisenbergFunction& g,
                                     double lambda, int zPointsPerAxis = 61, int tPoints = 161,
                                     double zEvalHalfWidth = 10.0);

/// hat f(lambda) = W_lambda(f^lambda), the operator-valued Fourier transform
/// at one representation parameter, on the context's basis. The context must
/// carry the same lambda and n.
OperatorMatrix fourier_hat(const HeisenbergFunction& f, double lambda,
                           const PhaseSpaceQuadrature& ctx, int tPoints = 161);

/// (R_{g0} f)(w, s) = f((w, s) g0). A central g0 = (0, t0) preserves the
/// separable form; otherwise the result is a general closure with boxes
/// widened to cover the shifted and sheared support.
HeisenbergFunction right_translate(const GroupElement& g0, const HeisenbergFunction& f);

/// f*(z, t) = conj f(-z, -t); the Fourier transform carries it to the
/// operator adjoint.
HeisenbergFunction group_involution(const HeisenbergFunction& f);

double l1_norm(const HeisenbergFunction& f, int zPointsPerAxis = 61, int tPoints = 161);
double l2_norm_squared(const HeisenbergFunction& f, int zPointsPerAxis = 61, int tPoints = 161);

/// Finite grid of nonzero representation parameters with weights that carry
/// the spectral density (2 pi)^{-n-1} |lambda|^n alongside the quadrature
/// weight, so sums against it are integrals against the measure.
struct SpectralMeasure {
    int n = 1;
    Eigen::VectorXd lambdas;
    Eigen::VectorXd weights;
};

/// Trapezoid weights on a strictly increasing, zero-free grid.
SpectralMeasure spectral_measure_trapezoid(const std::vector<double>& grid, int n);

/// Midpoints of `cells` equal cells on [-L, L]. Even cell counts keep the
/// grid zero-free; odd counts would place a point at 0 and are rejected.
SpectralMeasure spectral_measure_midpoint(double L, int cells, int n);

/// | integral of ||hat f(lambda)||_HS^2 dmu(lambda) - ||f||_2^2 | / ||f||_2^2.
/// One basis and quadrature context are built per grid point; the truncation
/// degree and the box rule govern how much of the spectral mass is captured.
double plancherel_defect(const HeisenbergFunction& f, const SpectralMeasure& mu,
                         const TruncationScheme& scheme, double boxHalfWidth = 10.0,
                         int pointsPerAxis = 61, int tPoints = 161);

} // namespace heis
