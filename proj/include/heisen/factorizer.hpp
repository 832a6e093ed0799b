#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "heisen/group_fourier.hpp"

namespace heis {

/// A finite *-homomorphism T from the twisted-convolution algebra into the
/// d x d matrices, presented through its generator family
///   Q_{ab} = prefactor * T(conj Phi_{ab}),
/// with prefactor = special_hermite_prefactor(n, lambda). That prefactor is
/// the unique normalization under which the product rule of the conjugated
/// point functions closes into exact matrix-unit relations:
///   Q_{ab} Q_{mn} = delta_{an} Q_{mb},     adjoint(Q_{ab}) = Q_{ba}.
/// Generators are stored flat in scheme order: index a * D + b holds Q_{ab}.
class HomomorphismSpec {
public:
    HomomorphismSpec(std::shared_ptr<const HermiteBasis> basis, int targetDim,
                     std::vector<Eigen::MatrixXcd> generators);

    int n() const { return basis_->n(); }
    double lambda() const { return basis_->lambda(); }
    const TruncationScheme& scheme() const { return basis_->scheme(); }
    std::shared_ptr<const HermiteBasis> basisPtr() const { return basis_; }

    /// Number of enumerated basis indices (the generator family is D x D).
    int generatorDim() const { return D_; }
    /// Dimension d of the target matrix algebra.
    int targetDim() const { return d_; }

    const Eigen::MatrixXcd& generator(int a, int b) const;
    const std::vector<Eigen::MatrixXcd>& generators() const { return Q_; }

    /// T(f) for a coefficient matrix A (f = sum A(a,b) conj Phi_{ab}):
    ///   T(f) = twisted_product_constant(n, lambda) * sum_{ab} A(a,b) Q_{ab},
    /// the inverse of the generator normalization.
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& coefficients) const;
    /// Same, reading the coefficients out of a coefficient-form function with
    /// matching n and lambda.
    Eigen::MatrixXcd apply(const PhaseSpaceFunction& f) const;

    /// Largest Hilbert-Schmidt norm among the generators; the natural scale
    /// for relative tolerances.
    double generatorScale() const;

private:
    std::shared_ptr<const HermiteBasis> basis_;
    int d_ = 0;
    int D_ = 0;
    std::vector<Eigen::MatrixXcd> Q_;
};

/// Residuals of the matrix-unit relations over every enumerated index tuple.
struct RelationReport {
    double productResidual = 0.0; // max ||Q_ab Q_mn - delta_an Q_mb||_HS
    double adjointResidual = 0.0; // max ||adjoint(Q_ab) - Q_ba||_HS
    std::vector<int> degenerateDiagonals; // flat indices a with ||Q_aa||_HS < tolerance
    double tolerance = 0.0;

    bool pass() const {
        return productResidual <= tolerance && adjointResidual <= tolerance &&
               degenerateDiagonals.empty();
    }
};

/// Thrown by factorize when the relation residuals exceed the gate; carries
/// the measured report so callers can inspect what failed.
class RelationError : public std::runtime_error {
public:
    RelationError(const RelationReport& r, const std::string& what)
        : std::runtime_error(what), report(r) {}
    RelationReport report;
};

/// Output of the constructive decomposition: isometry blocks V_j (d x D,
/// orthonormal columns, column b = image of basis index b), an orthonormal
/// basis of the common null space, and the measured diagnostics.
struct Decomposition {
    std::vector<Eigen::MatrixXcd> blocks;
    Eigen::MatrixXcd residualBasis;
    RelationReport relations;
    double orthonormalityDefect = 0.0; // max | <column_i, column_j> - delta_ij |
    double intertwiningResidual = 0.0; // max_f max_j ||T(f) V_j - V_j W(f)||_HS
    double residualActivation = 0.0;   // max_f ||T(f) residualBasis||_HS

    int blockCount() const { return static_cast<int>(blocks.size()); }
    int residualDim() const { return static_cast<int>(residualBasis.cols()); }
};

/// Ground-truth generator: realizes T(f) = directsum_j U_j W(f) adjoint(U_j)
/// directsum 0 on a target of dimension m * D + residualDim, i.e. generators
/// Q_{ab} = directsum_j U_j E_{ba} adjoint(U_j) directsum 0. With conceal set
/// the whole family is conjugated by a seeded Haar-random unitary so the
/// block structure is hidden from the factorizer; without it the generators
/// are the literal block matrices (identity conjugation).
HomomorphismSpec synthesize_homomorphism(double lambda, const TruncationScheme& scheme,
                                         const std::vector<Eigen::MatrixXcd>& blockUnitaries,
                                         int residualDim, std::uint64_t seed,
                                         bool conceal = true);

/// Measure the relation residuals of every 4-tuple and adjoint pair, and flag
/// diagonal generators smaller than tol in Hilbert-Schmidt norm (a vanishing
/// diagonal forces the whole map to vanish, so it marks a degenerate input).
RelationReport check_relations(const HomomorphismSpec& spec, double tol);

/// Constructive decomposition. Steps: gate on check_relations at
/// rankTol * generatorScale (throws RelationError on failure); SVD of Q_00;
/// block count m = number of singular values above rankTol * largest; range
/// vectors u_j = left singular vectors; block columns v_b^j = Q_{0b} u_j;
/// residual basis = orthonormal complement of all block columns. A zero Q_00
/// contradicts nonzero-ness of the homomorphism and throws invalid_argument.
/// A nonzero rangeSeed remixes the range basis by a seeded unitary before the
/// blocks are built; the block-span union and the residual space must not
/// depend on that choice (per-vector outputs may).
Decomposition factorize(const HomomorphismSpec& spec, double rankTol = 1e-8,
                        std::uint64_t rangeSeed = 0);

/// Hilbert-Schmidt budget of one probe: the squared norm through the
/// homomorphism must be the block count times the squared norm through the
/// operator transform, because each block contributes the same amount and the
/// residual space contributes nothing.
struct FinitenessReport {
    int blockCount = 0;
    double totalSquaredNorm = 0.0; // ||T(f)||_HS^2
    double blockSquaredNorm = 0.0; // ||W(f)||_HS^2
    double relativeError = 0.0;    // | total - m * block | / (m * block)
};

FinitenessReport finiteness_check(const HomomorphismSpec& spec, const Decomposition& dec,
                                  const Eigen::MatrixXcd& probeCoefficients);

/// A black-box linear map from integrable functions on the group into the
/// d x d matrices; the group-level input to the reduction.
struct GroupEvaluator {
    int targetDim = 0;
    std::function<Eigen::MatrixXcd(const HeisenbergFunction&)> apply;
};

/// The canonical evaluator: f maps to its operator transform at the basis
/// parameter, computed by quadrature on a fresh phase-space context.
GroupEvaluator fourier_group_evaluator(std::shared_ptr<const HermiteBasis> basis,
                                       double boxHalfWidth = 10.0, int zPointsPerAxis = 61,
                                       int tPoints = 161);

/// psi(t) = e^{lambda^2/4} / sqrt(pi) * e^{-t^2}: a central profile with
/// integral of psi(t) e^{i lambda t} dt equal to 1, for every lambda.
std::function<Complex(double)> unit_mass_gaussian(double lambda);

/// Reduce a group-level map to a twisted-level generator family: verify the
/// central normalization integral of psi(t) e^{i lambda t} dt = 1 (to 1e-10,
/// else reject), then probe with conj Phi_{ab} tensor psi and normalize:
///   Q_{ab} = prefactor * Tgroup(conj Phi_{ab} (z) * psi(t)).
HomomorphismSpec reduce_group_to_twisted(const GroupEvaluator& Tgroup,
                                         std::shared_ptr<const HermiteBasis> basis,
                                         const std::function<Complex(double)>& psi,
                                         double psiHalfWidth = 8.0, double zBoxHalfWidth = 10.0);

/// Rigidity deviation: how far the recovered block representation is from
/// being the representation itself, not merely unitarily equivalent to it.
/// Requires a decomposition whose single block is square (target dimension
/// equal to the basis dimension, no residual space) - the situation where the
/// target space is the representation space and the claim "the factorization
/// IS the operator transform" has literal content. Returns
///   max over z of || V P(z) adjoint(V) - P(z) ||_HS,
/// with P(z) the compressed representation matrix. The sandwich form is
/// insensitive to the global column phase the SVD leaves undetermined, and it
/// is zero exactly when V commutes with every P(z) - which for the compressed
/// irreducible family means V is a scalar phase.
double rigidity_check(const Decomposition& dec, double lambda,
                      const std::vector<Eigen::VectorXcd>& zSamples, const HermiteBasis& basis);

/// Self-describing archive: line "HSPEC1", one JSON header line
/// {n, lambda, maxDegree, targetDim}, then the generators in flat scheme
/// order as row-major little-endian 8-byte floats, real/imaginary
/// interleaved.
void save_spec(const HomomorphismSpec& spec, const std::string& path);
HomomorphismSpec load_spec(const std::string& path);

} // namespace heis
