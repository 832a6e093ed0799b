#include "heisen/factorizer.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>

#include "json.hpp"

namespace heis {

namespace {

void require(bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(what);
}

Eigen::MatrixXcd haar_unitary(int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd Z(d, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) Z(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
    Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
    Eigen::MatrixXcd R = qr.matrixQR();
    // fix the column phases so the distribution is uniform, not QR-skewed
    for (int k = 0; k < d; ++k) {
        const Complex r = R(k, k);
        if (std::abs(r) > 0.0) Q.col(k) *= r / std::abs(r);
    }
    return Q;
}

/// Probe coefficient matrices for the diagnostics: every matrix unit with
/// both indices of degree <= 2, plus three seeded random dense matrices.
std::vector<Eigen::MatrixXcd> diagnostic_probes(const TruncationScheme& scheme) {
    const int D = scheme.dimension();
    std::vector<int> low;
    for (int i = 0; i < D; ++i)
        if (scheme.at(i).degree() <= 2) low.push_back(i);

    std::vector<Eigen::MatrixXcd> probes;
    for (int a : low)
        for (int b : low) {
            Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(D, D);
            E(a, b) = 1.0;
            probes.push_back(std::move(E));
        }
    std::mt19937_64 rng(20260817u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < 3; ++k) {
        Eigen::MatrixXcd A(D, D);
        for (int j = 0; j < D; ++j)
            for (int i = 0; i < D; ++i) A(i, j) = Complex(gauss(rng), gauss(rng));
        A /= A.norm(); // same scale as the matrix-unit probes
        probes.push_back(std::move(A));
    }
    return probes;
}

} // namespace

HomomorphismSpec::HomomorphismSpec(std::shared_ptr<const HermiteBasis> basis, int targetDim,
                                   std::vector<Eigen::MatrixXcd> generators)
    : basis_(std::move(basis)), d_(targetDim), Q_(std::move(generators)) {
    require(basis_ != nullptr, "generator family needs a basis");
    require(d_ >= 1, "target dimension must be positive");
    D_ = basis_->dim();
    require(static_cast<int>(Q_.size()) == D_ * D_,
            "generator family must hold one matrix per enumerated index pair");
    for (const auto& Q : Q_)
        require(Q.rows() == d_ && Q.cols() == d_, "generator dimensions must match the target");
}

const Eigen::MatrixXcd& HomomorphismSpec::generator(int a, int b) const {
    require(a >= 0 && a < D_ && b >= 0 && b < D_, "generator index out of range");
    return Q_[static_cast<size_t>(a * D_ + b)];
}

Eigen::MatrixXcd HomomorphismSpec::apply(const Eigen::MatrixXcd& A) const {
    require(A.rows() == D_ && A.cols() == D_, "coefficient matrix must match the scheme");
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(d_, d_);
    for (int a = 0; a < D_; ++a)
        for (int b = 0; b < D_; ++b)
            if (A(a, b) != Complex(0.0, 0.0)) T += A(a, b) * Q_[static_cast<size_t>(a * D_ + b)];
    return twisted_product_constant(n(), lambda()) * T;
}

Eigen::MatrixXcd HomomorphismSpec::apply(const PhaseSpaceFunction& f) const {
    require(f.hasCoefficients(), "evaluation needs the coefficient form");
    require(f.n() == n() && f.lambda() == lambda(),
            "coefficient function parameters must match the generator family");
    return apply(f.coefficients());
}

double HomomorphismSpec::generatorScale() const {
    double s = 0.0;
    for (const auto& Q : Q_) s = std::max(s, Q.norm());
    return s;
}

HomomorphismSpec synthesize_homomorphism(double lambda, const TruncationScheme& scheme,
                                         const std::vector<Eigen::MatrixXcd>& blockUnitaries,
                                         int residualDim, std::uint64_t seed, bool conceal) {
    require(!blockUnitaries.empty(), "a nonzero homomorphism needs at least one block");
    require(residualDim >= 0, "residual dimension must be nonnegative");
    const int D = scheme.dimension();
    const int m = static_cast<int>(blockUnitaries.size());
    for (const auto& U : blockUnitaries) {
        require(U.rows() == D && U.cols() == D, "block unitaries must act on the scheme space");
        const double defect = (U.adjoint() * U - Eigen::MatrixXcd::Identity(D, D))
                                  .cwiseAbs()
                                  .maxCoeff();
        require(defect <= 1e-12, "block matrices must be unitary");
    }

    const int d = m * D + residualDim;
    const Eigen::MatrixXcd G =
        conceal ? haar_unitary(d, seed) : Eigen::MatrixXcd::Identity(d, d);

    auto basis = std::make_shared<HermiteBasis>(scheme.n(), lambda, scheme);
    std::vector<Eigen::MatrixXcd> Qs;
    Qs.reserve(static_cast<size_t>(D) * static_cast<size_t>(D));
    for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b) {
            Eigen::MatrixXcd Q = Eigen::MatrixXcd::Zero(d, d);
            for (int j = 0; j < m; ++j) {
                const auto& U = blockUnitaries[static_cast<size_t>(j)];
                // U E_{ba} adjoint(U) = (U e_b)(U e_a)^adjoint, dropped into block j
                Q.block(j * D, j * D, D, D) = U.col(b) * U.col(a).adjoint();
            }
            Qs.push_back(G * Q * G.adjoint());
        }
    return HomomorphismSpec(std::move(basis), d, std::move(Qs));
}

RelationReport check_relations(const HomomorphismSpec& spec, double tol) {
    const int D = spec.generatorDim();
    RelationReport report;
    report.tolerance = tol;
    for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b) {
            const Eigen::MatrixXcd& Qab = spec.generator(a, b);
            report.adjointResidual =
                std::max(report.adjointResidual,
                         (Qab.adjoint() - spec.generator(b, a)).norm());
            for (int mu = 0; mu < D; ++mu)
                for (int nu = 0; nu < D; ++nu) {
                    Eigen::MatrixXcd R = Qab * spec.generator(mu, nu);
                    if (a == nu) R -= spec.generator(mu, b);
                    report.productResidual = std::max(report.productResidual, R.norm());
                }
        }
    for (int a = 0; a < D; ++a)
        if (spec.generator(a, a).norm() < tol) report.degenerateDiagonals.push_back(a);
    return report;
}

Decomposition factorize(const HomomorphismSpec& spec, double rankTol, std::uint64_t rangeSeed) {
    require(rankTol > 0.0, "rank tolerance must be positive");
    const int D = spec.generatorDim();
    const int d = spec.targetDim();

    const double scale = spec.generatorScale();
    require(scale > 0.0, "all generators vanish: the map is zero, not a homomorphism onto blocks");

    RelationReport rel = check_relations(spec, rankTol * scale);
    if (!rel.pass())
        throw RelationError(rel, "generator relations fail at the requested tolerance");

    const Eigen::MatrixXcd& Q00 = spec.generator(0, 0);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Q00, Eigen::ComputeFullU);
    const Eigen::VectorXd sigma = svd.singularValues();
    if (sigma.size() == 0 || sigma(0) <= rankTol * scale)
        throw std::invalid_argument(
            "the diagonal generator at the zero index vanishes, so the map is zero");

    int m = 0;
    while (m < sigma.size() && sigma(m) > rankTol * sigma(0)) ++m;
    if (m * D > d)
        throw std::invalid_argument(
            "recovered block count does not fit the target dimension; relations are inconsistent");

    Eigen::MatrixXcd U0 = svd.matrixU().leftCols(m);
    if (rangeSeed != 0) U0 = U0 * haar_unitary(m, rangeSeed);

    Decomposition dec;
    dec.relations = rel;
    Eigen::MatrixXcd all(d, m * D);
    for (int j = 0; j < m; ++j) {
        Eigen::MatrixXcd V(d, D);
        for (int b = 0; b < D; ++b) V.col(b) = spec.generator(0, b) * U0.col(j);
        all.middleCols(j * D, D) = V;
        dec.blocks.push_back(std::move(V));
    }

    const int resid = d - m * D;
    if (resid > 0) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> span(all, Eigen::ComputeFullU);
        dec.residualBasis = span.matrixU().rightCols(resid);
    } else {
        dec.residualBasis = Eigen::MatrixXcd::Zero(d, 0);
    }

    Eigen::MatrixXcd frame(d, m * D + resid);
    frame.leftCols(m * D) = all;
    if (resid > 0) frame.rightCols(resid) = dec.residualBasis;
    dec.orthonormalityDefect =
        (frame.adjoint() * frame -
         Eigen::MatrixXcd::Identity(frame.cols(), frame.cols()))
            .cwiseAbs()
            .maxCoeff();

    const double c = twisted_product_constant(spec.n(), spec.lambda());
    for (const Eigen::MatrixXcd& A : diagnostic_probes(spec.scheme())) {
        const Eigen::MatrixXcd T = spec.apply(A);
        const Eigen::MatrixXcd W = c * A.transpose();
        for (const auto& V : dec.blocks)
            dec.intertwiningResidual =
                std::max(dec.intertwiningResidual, (T * V - V * W).norm());
        if (resid > 0)
            dec.residualActivation =
                std::max(dec.residualActivation, (T * dec.residualBasis).norm());
    }
    return dec;
}

FinitenessReport finiteness_check(const HomomorphismSpec& spec, const Decomposition& dec,
                                  const Eigen::MatrixXcd& probeCoefficients) {
    FinitenessReport report;
    report.blockCount = dec.blockCount();
    require(report.blockCount >= 1, "finiteness needs at least one recovered block");
    report.totalSquaredNorm = spec.apply(probeCoefficients).squaredNorm();
    const PhaseSpaceFunction f =
        PhaseSpaceFunction::fromCoefficients(spec.basisPtr(), probeCoefficients);
    report.blockSquaredNorm = weyl_spectral(f).entries.squaredNorm();
    const double budget = report.blockCount * report.blockSquaredNorm;
    if (budget > 0.0)
        report.relativeError = std::abs(report.totalSquaredNorm - budget) / budget;
    else
        report.relativeError = report.totalSquaredNorm > 0.0
                                   ? std::numeric_limits<double>::infinity()
                                   : 0.0;
    return report;
}

GroupEvaluator fourier_group_evaluator(std::shared_ptr<const HermiteBasis> basis,
                                       double boxHalfWidth, int zPointsPerAxis, int tPoints) {
    require(basis != nullptr, "evaluator needs a basis");
    auto ctx = std::make_shared<PhaseSpaceQuadrature>(basis, boxHalfWidth, zPointsPerAxis);
    const double lambda = basis->lambda();
    GroupEvaluator ev;
    ev.targetDim = basis->dim();
    ev.apply = [ctx, lambda, tPoints](const HeisenbergFunction& f) {
        return fourier_hat(f, lambda, *ctx, tPoints).entries;
    };
    return ev;
}

std::function<Complex(double)> unit_mass_gaussian(double lambda) {
    const double amplitude = std::exp(lambda * lambda / 4.0) / std::sqrt(M_PI);
    return [amplitude](double t) { return Complex(amplitude * std::exp(-t * t), 0.0); };
}

HomomorphismSpec reduce_group_to_twisted(const GroupEvaluator& Tgroup,
                                         std::shared_ptr<const HermiteBasis> basis,
                                         const std::function<Complex(double)>& psi,
                                         double psiHalfWidth, double zBoxHalfWidth) {
    require(basis != nullptr, "reduction needs a basis");
    require(static_cast<bool>(Tgroup.apply) && Tgroup.targetDim >= 1,
            "reduction needs an evaluator with a positive target dimension");
    require(static_cast<bool>(psi), "reduction needs a central profile");
    require(psiHalfWidth > 0.0 && zBoxHalfWidth > 0.0, "declared boxes must be positive");

    const double lambda = basis->lambda();
    const QuadratureRule rule = central_rule(psiHalfWidth, 801);
    Complex mass(0.0, 0.0);
    for (int i = 0; i < rule.count(); ++i) {
        const double t = rule.nodes(i, 0);
        mass += rule.weights[i] * std::polar(1.0, lambda * t) * psi(t);
    }
    if (std::abs(mass - Complex(1.0, 0.0)) > 1e-10)
        throw std::invalid_argument(
            "central profile is not normalized: its modulated integral must equal 1");

    const int D = basis->dim();
    std::vector<Eigen::MatrixXcd> Qs;
    Qs.reserve(static_cast<size_t>(D) * static_cast<size_t>(D));
    const double prefactor = special_hermite_prefactor(basis->n(), lambda);
    for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b) {
            auto probe = HeisenbergFunction::separable(
                basis->n(),
                [basis, a, b](const Eigen::VectorXcd& z) {
                    return std::conj(special_hermite_matrix(z, *basis)(a, b));
                },
                psi, zBoxHalfWidth, psiHalfWidth);
            Eigen::MatrixXcd Q = Tgroup.apply(probe);
            require(Q.rows() == Tgroup.targetDim && Q.cols() == Tgroup.targetDim,
                    "evaluator output dimensions must match its declared target");
            Qs.push_back(prefactor * Q);
        }
    return HomomorphismSpec(basis, Tgroup.targetDim, std::move(Qs));
}

double rigidity_check(const Decomposition& dec, double lambda,
                      const std::vector<Eigen::VectorXcd>& zSamples, const HermiteBasis& basis) {
    require(dec.blockCount() == 1, "rigidity compares a single block against the representation");
    require(dec.residualDim() == 0, "rigidity needs a trivial residual space");
    const Eigen::MatrixXcd& V = dec.blocks.front();
    require(V.rows() == V.cols() && V.rows() == basis.dim(),
            "rigidity needs the homomorphism to act on the representation space itself");
    require(!zSamples.empty(), "rigidity needs at least one sample point");

    double dev = 0.0;
    for (const auto& z : zSamples) {
        const Eigen::MatrixXcd P = pi_matrix(lambda, z, basis).entries;
        dev = std::max(dev, (V * P * V.adjoint() - P).norm());
    }
    return dev;
}

void save_spec(const HomomorphismSpec& spec, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open archive for writing: " + path);
    nlohmann::json header = {{"n", spec.n()},
                             {"lambda", spec.lambda()},
                             {"maxDegree", spec.scheme().maxDegree()},
                             {"targetDim", spec.targetDim()}};
    out << "HSPEC1\n" << header.dump() << "\n";
    const int d = spec.targetDim();
    for (const auto& Q : spec.generators())
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const double re = Q(i, j).real();
                const double im = Q(i, j).imag();
                out.write(reinterpret_cast<const char*>(&re), sizeof(double));
                out.write(reinterpret_cast<const char*>(&im), sizeof(double));
            }
    if (!out) throw std::runtime_error("archive write failed: " + path);
}

HomomorphismSpec load_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open archive: " + path);
    std::string magic, headerLine;
    std::getline(in, magic);
    if (magic != "HSPEC1") throw std::runtime_error("not a generator archive: " + path);
    std::getline(in, headerLine);
    const nlohmann::json header = nlohmann::json::parse(headerLine);
    const int n = header.at("n").get<int>();
    const double lambda = header.at("lambda").get<double>();
    const int maxDegree = header.at("maxDegree").get<int>();
    const int d = header.at("targetDim").get<int>();

    auto basis = std::make_shared<HermiteBasis>(n, lambda, TruncationScheme(n, maxDegree));
    const int D = basis->dim();
    std::vector<Eigen::MatrixXcd> Qs;
    Qs.reserve(static_cast<size_t>(D) * static_cast<size_t>(D));
    for (int k = 0; k < D * D; ++k) {
        Eigen::MatrixXcd Q(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                double re = 0.0, im = 0.0;
                in.read(reinterpret_cast<char*>(&re), sizeof(double));
                in.read(reinterpret_cast<char*>(&im), sizeof(double));
                Q(i, j) = Complex(re, im);
            }
        Qs.push_back(std::move(Q));
    }
    if (!in) throw std::runtime_error("archive truncated: " + path);
    return HomomorphismSpec(std::move(basis), d, std::move(Qs));
}

} // namespace heis
