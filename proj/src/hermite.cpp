#include "heisen/hermite.hpp"

#include <cmath>

namespace heis {

namespace {
const double kPiQuarterInv = std::pow(M_PI, -0.25);

void require_lambda(double lambda) {
    if (lambda == 0.0 || !std::isfinite(lambda))
        throw std::invalid_argument("lambda must be finite and nonzero");
}
} // namespace

double hermite_1d(int k, double x) {
    if (k < 0) throw std::invalid_argument("hermite_1d: k must be >= 0");
    double hm = 0.0;                                // h_{-1}
    double h = kPiQuarterInv * std::exp(-0.5 * x * x); // h_0
    for (int j = 0; j < k; ++j) {
        double hn = x * std::sqrt(2.0 / (j + 1)) * h - std::sqrt(double(j) / (j + 1)) * hm;
        hm = h;
        h = hn;
    }
    return h;
}

Eigen::VectorXd hermite_values(int kmax, double x) {
    if (kmax < 0) throw std::invalid_argument("hermite_values: kmax must be >= 0");
    Eigen::VectorXd out(kmax + 1);
    out[0] = kPiQuarterInv * std::exp(-0.5 * x * x);
    if (kmax == 0) return out;
    out[1] = x * std::sqrt(2.0) * out[0];
    for (int j = 1; j < kmax; ++j)
        out[j + 1] = x * std::sqrt(2.0 / (j + 1)) * out[j] - std::sqrt(double(j) / (j + 1)) * out[j - 1];
    return out;
}

double phi_alpha(const MultiIndex& alpha, const Eigen::VectorXd& x) {
    if (alpha.dim() != x.size())
        throw std::invalid_argument("phi_alpha: index/point dimension mismatch");
    double v = 1.0;
    for (int j = 0; j < x.size(); ++j) v *= hermite_1d(alpha[j], x[j]);
    return v;
}

double phi_alpha_scaled(const MultiIndex& alpha, double lambda, const Eigen::VectorXd& x) {
    require_lambda(lambda);
    const double s = std::sqrt(std::abs(lambda));
    const int n = static_cast<int>(x.size());
    return std::pow(std::abs(lambda), 0.25 * n) * phi_alpha(alpha, (s * x).eval());
}

HermiteBasis::HermiteBasis(int n, double lambda, TruncationScheme scheme, int pointsPerAxis)
    : n_(n), lambda_(lambda), scheme_(std::move(scheme)), pointsPerAxis_(pointsPerAxis) {
    require_lambda(lambda);
    if (scheme_.n() != n) throw std::invalid_argument("HermiteBasis: scheme dimension mismatch");
    if (pointsPerAxis_ <= scheme_.maxDegree())
        throw std::invalid_argument("HermiteBasis: need more quadrature points than maxDegree");

    QuadratureRule base = gauss_hermite_rule(pointsPerAxis_);
    QuadratureRule rule = (n == 1) ? base : tensor_rule(base, n);
    const double s = std::sqrt(std::abs(lambda_));

    // substitute u = s*x: nodes shrink by 1/s, weights pick up the Jacobian s^{-n}
    nodes_ = rule.nodes / s;
    effW_ = rule.effectiveWeights() / std::pow(s, n);

    const int D = scheme_.dimension();
    const int count = rule.count();
    values_.resize(D, count);
    const double pref = std::pow(std::abs(lambda_), 0.25 * n);
    const int N = scheme_.maxDegree();
    Eigen::MatrixXd axis(N + 1, n); // per-axis h_k at one node, in u-coordinates
    for (int i = 0; i < count; ++i) {
        for (int d = 0; d < n; ++d) axis.col(d) = hermite_values(N, rule.nodes(i, d));
        for (int a = 0; a < D; ++a) {
            double v = pref;
            const MultiIndex& idx = scheme_.at(a);
            for (int d = 0; d < n; ++d) v *= axis(idx[d], d);
            values_(a, i) = v;
        }
    }
}

Eigen::VectorXd HermiteBasis::valuesAt(const Eigen::VectorXd& x) const {
    const int D = scheme_.dimension();
    const int N = scheme_.maxDegree();
    const double s = std::sqrt(std::abs(lambda_));
    Eigen::MatrixXd axis(N + 1, n_);
    for (int d = 0; d < n_; ++d) axis.col(d) = hermite_values(N, s * x[d]);
    Eigen::VectorXd out(D);
    const double pref = std::pow(std::abs(lambda_), 0.25 * n_);
    for (int a = 0; a < D; ++a) {
        double v = pref;
        const MultiIndex& idx = scheme_.at(a);
        for (int d = 0; d < n_; ++d) v *= axis(idx[d], d);
        out[a] = v;
    }
    return out;
}

Eigen::VectorXcd HermiteBasis::expand(const std::function<Complex(const Eigen::VectorXd&)>& f) const {
    const int count = static_cast<int>(nodes_.rows());
    Eigen::VectorXcd fv(count);
    Eigen::VectorXd x(n_);
    for (int i = 0; i < count; ++i) {
        x = nodes_.row(i).transpose();
        Complex v = f(x);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw EvaluationError("HermiteBasis::expand: non-finite integrand value");
        fv[i] = v * effW_[i];
    }
    return values_.cast<Complex>() * fv;
}

Eigen::VectorXcd expand_in_hermite(const std::function<Complex(const Eigen::VectorXd&)>& f,
                                   const HermiteBasis& basis) {
    return basis.expand(f);
}

} // namespace heis
