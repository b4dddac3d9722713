#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "excl/events.hpp"
#include "excl/graphs.hpp"
#include "excl/numerics.hpp"

namespace excl {

/// Normalized state vector.
class Ket {
public:
    static constexpr double kNormTolerance = 1e-10;

    static Ket from_components(std::vector<complex> components) {
        ComplexVector v(std::move(components));
        if (std::abs(norm(v) - 1.0) > kNormTolerance)
            throw std::invalid_argument("Ket: vector is not unit norm");
        return Ket(std::move(v));
    }

    std::size_t dim() const { return amplitudes_.dim(); }
    const ComplexVector& amplitudes() const { return amplitudes_; }
    const complex& operator[](std::size_t i) const { return amplitudes_[i]; }

private:
    explicit Ket(ComplexVector v) : amplitudes_(std::move(v)) {}
    ComplexVector amplitudes_;
};

/// Dense square complex matrix; just enough linear algebra for projective
/// measurement simulation.
class ComplexMatrix {
public:
    ComplexMatrix(std::size_t dim, std::vector<complex> entries)
        : dim_(dim), entries_(std::move(entries)) {
        if (dim_ < 1 || entries_.size() != dim_ * dim_)
            throw std::invalid_argument("ComplexMatrix: bad shape");
    }

    static ComplexMatrix zero(std::size_t dim) {
        return ComplexMatrix(dim, std::vector<complex>(dim * dim, complex{0.0, 0.0}));
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m = zero(dim);
        for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
        return m;
    }

    /// Rank-1 outer product |u><u|.
    static ComplexMatrix outer(const ComplexVector& u) {
        ComplexMatrix m = zero(u.dim());
        for (std::size_t i = 0; i < u.dim(); ++i)
            for (std::size_t j = 0; j < u.dim(); ++j) m.at(i, j) = u[i] * std::conj(u[j]);
        return m;
    }

    static ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
        const std::size_t n = a.dim() * b.dim();
        ComplexMatrix m = zero(n);
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j)
                for (std::size_t k = 0; k < b.dim(); ++k)
                    for (std::size_t l = 0; l < b.dim(); ++l)
                        m.at(i * b.dim() + k, j * b.dim() + l) = a.at(i, j) * b.at(k, l);
        return m;
    }

    std::size_t dim() const { return dim_; }
    complex& at(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
    const complex& at(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

    ComplexVector apply(const ComplexVector& v) const {
        if (v.dim() != dim_) throw std::invalid_argument("ComplexMatrix: dimension mismatch");
        std::vector<complex> out(dim_, complex{0.0, 0.0});
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) out[i] += at(i, j) * v[j];
        return ComplexVector(std::move(out));
    }

    ComplexMatrix multiply(const ComplexMatrix& other) const {
        if (other.dim_ != dim_) throw std::invalid_argument("ComplexMatrix: dimension mismatch");
        ComplexMatrix m = zero(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t k = 0; k < dim_; ++k) {
                const complex aik = at(i, k);
                if (aik == complex{0.0, 0.0}) continue;
                for (std::size_t j = 0; j < dim_; ++j) m.at(i, j) += aik * other.at(k, j);
            }
        return m;
    }

    double hermiticity_defect() const {
        double d = 0.0;
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                d = std::max(d, std::abs(at(i, j) - std::conj(at(j, i))));
        return d;
    }

    double max_abs_diff(const ComplexMatrix& other) const {
        double d = 0.0;
        for (std::size_t k = 0; k < entries_.size(); ++k)
            d = std::max(d, std::abs(entries_[k] - other.entries_[k]));
        return d;
    }

    const std::vector<complex>& entries() const { return entries_; }

private:
    std::size_t dim_;
    std::vector<complex> entries_;
};

/// Rank-checked projection operator. Hermitian to 1e-12, idempotent to 1e-10.
class Projector {
public:
    static constexpr double kHermitianTolerance = 1e-12;
    static constexpr double kIdempotencyTolerance = 1e-10;

    static Projector from_matrix(ComplexMatrix m) {
        if (m.hermiticity_defect() > kHermitianTolerance)
            throw std::invalid_argument("Projector: matrix is not Hermitian");
        if (m.multiply(m).max_abs_diff(m) > kIdempotencyTolerance)
            throw std::invalid_argument("Projector: matrix is not idempotent");
        return Projector(std::move(m));
    }

    static Projector from_ket(const Ket& v) {
        return from_matrix(ComplexMatrix::outer(v.amplitudes()));
    }

    std::size_t dim() const { return matrix_.dim(); }
    const ComplexMatrix& matrix() const { return matrix_; }

    /// P |phi>  (outcome 1 effect).
    ComplexVector apply(const ComplexVector& phi) const { return matrix_.apply(phi); }

    /// (I - P) |phi>  (outcome 0 effect).
    ComplexVector apply_complement(const ComplexVector& phi) const {
        const ComplexVector p = matrix_.apply(phi);
        std::vector<complex> out(phi.dim());
        for (std::size_t i = 0; i < phi.dim(); ++i) out[i] = phi[i] - p[i];
        return ComplexVector(std::move(out));
    }

private:
    explicit Projector(ComplexMatrix m) : matrix_(std::move(m)) {}
    ComplexMatrix matrix_;
};

/// An ordered triple of distinct observables with target outcomes in {0,1}.
struct Context {
    std::array<int, 3> observables{};
    std::array<int, 3> outcomes{};

    static Context of(std::array<int, 3> observables, std::array<int, 3> outcomes) {
        if (observables[0] == observables[1] || observables[0] == observables[2] ||
            observables[1] == observables[2])
            throw std::invalid_argument("Context: observables must be distinct");
        for (int o : outcomes)
            if (o != 0 && o != 1)
                throw std::invalid_argument("Context: outcomes must be 0 or 1");
        return Context{observables, outcomes};
    }
};

/// Context i of the complementary experiment: observables {i, i+1, i+2}
/// mod 8, target outcomes (0, 0, 1).
inline Context paris_context(int i) {
    if (i < 0 || i > 7) throw std::invalid_argument("paris_context: index must be 0..7");
    return Context::of({i, (i + 1) % 8, (i + 2) % 8}, {0, 0, 1});
}

/// The five-dimensional state prepared in the complementary experiment.
inline Ket paris_state() {
    const double s2 = std::numbers::sqrt2;
    const double a = std::sqrt(1.0 - 1.0 / s2);
    const double b = std::sqrt(3.0 / s2 - 2.0);
    return Ket::from_components({a, a, a, b, 0.0});
}

/// The eight measurement vectors; observable i is the projector onto v_i.
/// Entries are unit norm as written (verified at construction, not rescaled).
inline std::vector<Ket> paris_vectors() {
    const double s2 = std::numbers::sqrt2;
    std::vector<std::vector<complex>> rows = {
        {1.0, 0.0, 0.0, 0.0, 0.0},
        {0.0, 1.0, 0.0, 0.0, 0.0},
        {0.0, 0.0, 1.0, 0.0, 0.0},
        {2.0 - s2, 0.0, 0.0, std::sqrt(s2 - 1.0), -std::sqrt(3.0 * s2 - 4.0)},
        {3.0 - 2.0 * s2, 2.0 - s2, 0.0, std::sqrt(2.0 * (5.0 * s2 - 7.0)),
         std::sqrt(6.0 * s2 - 8.0)},
        {2.0 - s2, 3.0 - 2.0 * s2, 2.0 - s2, -2.0 * std::sqrt(5.0 * s2 - 7.0), 0.0},
        {0.0, s2 - 2.0, 2.0 * s2 - 3.0, -std::sqrt(2.0 * (5.0 * s2 - 7.0)),
         std::sqrt(6.0 * s2 - 8.0)},
        {0.0, 0.0, s2 - 2.0, -std::sqrt(s2 - 1.0), -std::sqrt(3.0 * s2 - 4.0)},
    };
    std::vector<Ket> kets;
    kets.reserve(rows.size());
    for (auto& row : rows) kets.push_back(Ket::from_components(std::move(row)));
    return kets;
}

inline std::vector<Projector> paris_projectors() {
    std::vector<Projector> out;
    for (const Ket& v : paris_vectors()) out.push_back(Projector::from_ket(v));
    return out;
}

struct EdgeInnerProduct {
    int i = 0;
    int j = 0;
    double magnitude = 0.0;
};

/// Orthogonal-representation check: adjacent vertices must carry orthogonal
/// vectors. Also reports the Gram-matrix rank (singular values of the Gram
/// matrix thresholded at 1e-8).
struct OrthogonalityReport {
    std::vector<EdgeInnerProduct> edge_inner_products;
    double worst_edge_inner_product = 0.0;
    int gram_rank = 0;
    bool pass = false; // worst edge inner product <= 1e-9
};

namespace detail {

// Eigenvalues of a Hermitian matrix via the symmetric real embedding
// [[Re, -Im], [Im, Re]], whose spectrum is the Hermitian spectrum doubled.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
    const std::size_t k = h.dim();
    std::vector<double> s(4 * k * k, 0.0);
    const std::size_t m = 2 * k;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const complex e = h.at(i, j);
            s[i * m + j] = e.real();
            s[(i + k) * m + (j + k)] = e.real();
            s[i * m + (j + k)] = -e.imag();
            s[(i + k) * m + j] = e.imag();
        }
    const EigResult eig = eig_sym(RealSymMatrix(m, std::move(s)));
    std::vector<double> out;
    out.reserve(k);
    for (std::size_t i = 0; i < m; i += 2) out.push_back(eig.eigenvalues[i]);
    return out;
}

} // namespace detail

inline OrthogonalityReport verify_orthogonal_representation(const std::vector<Ket>& vectors,
                                                            const ExclusivityGraph& graph) {
    if (vectors.size() != graph.size())
        throw std::invalid_argument(
            "verify_orthogonal_representation: vector count must match vertex count");
    OrthogonalityReport report;
    for (const auto& [i, j] : graph.edges()) {
        const double mag =
            std::abs(inner(vectors[static_cast<std::size_t>(i)].amplitudes(),
                           vectors[static_cast<std::size_t>(j)].amplitudes()));
        report.edge_inner_products.push_back({i, j, mag});
        report.worst_edge_inner_product = std::max(report.worst_edge_inner_product, mag);
    }
    ComplexMatrix gram = ComplexMatrix::zero(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = 0; j < vectors.size(); ++j)
            gram.at(i, j) = inner(vectors[i].amplitudes(), vectors[j].amplitudes());
    // The Gram matrix is PSD, so its singular values are its eigenvalues.
    for (double lambda : detail::hermitian_eigenvalues(gram))
        if (lambda > 1e-8) ++report.gram_rank;
    report.pass = report.worst_edge_inner_product <= 1e-9;
    return report;
}

/// Sequential projective measurement with unnormalized-state chaining:
/// each step applies P (outcome 1) or I - P (outcome 0); the probability
/// is the squared norm of the final unnormalized state.
inline double sequential_probability(const Ket& state, const Context& ctx,
                                     const std::vector<Projector>& observables) {
    ComplexVector phi = state.amplitudes();
    for (std::size_t k = 0; k < 3; ++k) {
        const int idx = ctx.observables[k];
        if (idx < 0 || static_cast<std::size_t>(idx) >= observables.size())
            throw std::invalid_argument("sequential_probability: unknown observable index");
        const Projector& p = observables[static_cast<std::size_t>(idx)];
        if (p.dim() != phi.dim())
            throw std::invalid_argument("sequential_probability: dimension mismatch");
        phi = ctx.outcomes[k] == 1 ? p.apply(phi) : p.apply_complement(phi);
    }
    return inner(phi, phi).real();
}

/// Probabilities for all 6 orderings of the context, observables and
/// target outcomes permuted together. For compatible observables all six
/// values coincide.
inline std::array<double, 6> context_probabilities_all_orderings(
    const Ket& state, const Context& ctx, const std::vector<Projector>& observables) {
    static constexpr std::array<std::array<int, 3>, 6> kOrderings = {
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    std::array<double, 6> out{};
    for (std::size_t p = 0; p < 6; ++p) {
        const auto& ord = kOrderings[p];
        const Context permuted = Context::of(
            {ctx.observables[ord[0]], ctx.observables[ord[1]], ctx.observables[ord[2]]},
            {ctx.outcomes[ord[0]], ctx.outcomes[ord[1]], ctx.outcomes[ord[2]]});
        out[p] = sequential_probability(state, permuted, observables);
    }
    return out;
}

/// Sum over the eight contexts of p(0,0,1 | i, i+1, i+2) on the prepared state.
inline double paris_s_value() {
    const Ket state = paris_state();
    const std::vector<Projector> projectors = paris_projectors();
    double s = 0.0;
    for (int i = 0; i < 8; ++i) s += sequential_probability(state, paris_context(i), projectors);
    return s;
}

/// Canonical two-qubit CHSH realization at the quantum maximum:
/// maximally entangled state, first wing measured at angles {0, pi/2} and
/// second wing at {pi/4, -pi/4} in the X-Z plane. Every event of the
/// inequality then has probability (2 + sqrt 2)/8.
class LondonModel {
public:
    LondonModel()
        : state_(Ket::from_components(
              {1.0 / std::numbers::sqrt2, 0.0, 0.0, 1.0 / std::numbers::sqrt2})),
          family_(london_events()) {
        static constexpr double kWingUAngles[2] = {0.0, std::numbers::pi / 2};
        static constexpr double kWingVAngles[2] = {std::numbers::pi / 4, -std::numbers::pi / 4};
        for (int i = 0; i < 2; ++i) {
            wing_u_plus_.push_back(bloch_projector(kWingUAngles[i]));
            wing_v_plus_.push_back(bloch_projector(kWingVAngles[i]));
        }
        for (const Event& e : family_.events) {
            const auto& entries = e.assignment();
            const int i = entries[0].first.name;
            const int a = entries[0].second;
            const int j = entries[1].first.name;
            const int b = entries[1].second;
            probabilities_.push_back(probability(a, b, i, j));
        }
        for (double p : probabilities_) s_value_ += p;
    }

    /// Born-rule probability p(a, b | i, j) for a, b in {-1, +1}.
    double probability(int a, int b, int i, int j) const {
        if ((a != 1 && a != -1) || (b != 1 && b != -1))
            throw std::invalid_argument("LondonModel: outcomes must be -1 or +1");
        if (i < 0 || i > 1 || j < 0 || j > 1)
            throw std::invalid_argument("LondonModel: settings must be 0 or 1");
        const ComplexMatrix pu = outcome_effect(wing_u_plus_[static_cast<std::size_t>(i)], a);
        const ComplexMatrix pv = outcome_effect(wing_v_plus_[static_cast<std::size_t>(j)], b);
        const ComplexMatrix joint = ComplexMatrix::kron(pu, pv);
        const ComplexVector projected = joint.apply(state_.amplitudes());
        return inner(state_.amplitudes(), projected).real();
    }

    const Ket& state() const { return state_; }
    const EventFamily& events() const { return family_; }
    const std::vector<double>& event_probabilities() const { return probabilities_; }
    double s_value() const { return s_value_; }

private:
    // Projector onto the +1 eigenspace of cos(phi) Z + sin(phi) X.
    static ComplexMatrix bloch_projector(double phi) {
        ComplexMatrix m = ComplexMatrix::zero(2);
        const double c = std::cos(phi);
        const double s = std::sin(phi);
        m.at(0, 0) = (1.0 + c) / 2.0;
        m.at(0, 1) = s / 2.0;
        m.at(1, 0) = s / 2.0;
        m.at(1, 1) = (1.0 - c) / 2.0;
        return m;
    }

    static ComplexMatrix outcome_effect(const ComplexMatrix& plus, int outcome) {
        if (outcome == 1) return plus;
        ComplexMatrix m = ComplexMatrix::identity(plus.dim());
        for (std::size_t i = 0; i < plus.dim(); ++i)
            for (std::size_t j = 0; j < plus.dim(); ++j) m.at(i, j) -= plus.at(i, j);
        return m;
    }

    Ket state_;
    std::vector<ComplexMatrix> wing_u_plus_;
    std::vector<ComplexMatrix> wing_v_plus_;
    EventFamily family_;
    std::vector<double> probabilities_;
    double s_value_ = 0.0;
};

inline LondonModel london_model() { return LondonModel(); }

} // namespace excl
