#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "excl/graphs.hpp"
#include "excl/numerics.hpp"

namespace excl {

struct SdpSettings {
    double tolerance = 1e-8;
    std::size_t max_iterations = 200000;
    double step_parameter = 1.0;
};

/// Lovasz number estimate with the primal witness and solve diagnostics.
/// Invariants on the witness: PSD to 1e-7, unit trace to 1e-8, zero on
/// edges to 1e-7; value equals the sum of all witness entries.
struct ThetaResult {
    double value = 0.0;
    RealSymMatrix witness = RealSymMatrix::zero(1);
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    std::size_t iterations = 0;
};

/// Solves  max sum(B)  s.t.  B PSD, trace(B) = 1, B_ij = 0 on edges
/// by ADMM: alternating the affine projection (edge zeros + trace shift)
/// with the PSD-cone projection, scaled dual update in between.
/// Deterministic: fixed start B = I/n and fixed iteration order.
///
/// Residuals are max-norm: primal = splitting gap |X - Z|, dual = step
/// times the successive-iterate change. Iteration continues until both
/// sit two orders of magnitude below the requested tolerance, which in
/// practice puts the certified objective within tolerance of the optimum.
inline ThetaResult lovasz_theta(const ExclusivityGraph& g, const SdpSettings& settings = {}) {
    if (settings.tolerance <= 0.0)
        throw std::invalid_argument("lovasz_theta: tolerance must be positive");
    if (settings.max_iterations < 1)
        throw std::invalid_argument("lovasz_theta: max_iterations must be >= 1");
    if (settings.step_parameter <= 0.0)
        throw std::invalid_argument("lovasz_theta: step parameter must be positive");

    const std::size_t n = g.size();
    const double rho = settings.step_parameter;
    const double target = std::max(settings.tolerance * 1e-2, 1e-13);

    std::vector<double> z(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) z[i * n + i] = 1.0 / static_cast<double>(n);
    std::vector<double> u(n * n, 0.0);
    std::vector<double> x(n * n, 0.0);

    double primal = 0.0;
    double dual = 0.0;
    std::size_t iter = 0;
    bool converged = false;

    while (iter < settings.max_iterations) {
        ++iter;

        // Affine projection of Z - U + J/rho: zero the edge entries, then
        // shift the diagonal uniformly to restore unit trace.
        double trace_m = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double m = z[i * n + j] - u[i * n + j] + 1.0 / rho;
                x[i * n + j] =
                    (i != j && g.adjacent(static_cast<int>(i), static_cast<int>(j))) ? 0.0 : m;
                if (i == j) trace_m += m;
            }
        }
        const double shift = (1.0 - trace_m) / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) x[i * n + i] += shift;

        // PSD projection of X + U.
        std::vector<double> w(n * n);
        for (std::size_t k = 0; k < n * n; ++k) w[k] = x[k] + u[k];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double avg = 0.5 * (w[i * n + j] + w[j * n + i]);
                w[i * n + j] = avg;
                w[j * n + i] = avg;
            }
        const RealSymMatrix z_next = psd_project(RealSymMatrix(n, std::move(w)));

        primal = 0.0;
        dual = 0.0;
        for (std::size_t k = 0; k < n * n; ++k) {
            const double zn = z_next.entries()[k];
            u[k] += x[k] - zn;
            primal = std::max(primal, std::abs(x[k] - zn));
            dual = std::max(dual, rho * std::abs(zn - z[k]));
            z[k] = zn;
        }

        if (std::max(primal, dual) < target) {
            converged = true;
            break;
        }
    }

    if (!converged)
        throw ConvergenceError("lovasz_theta: no convergence within iteration cap", primal, dual);

    // Certify: renormalize the PSD iterate to unit trace and report its
    // objective, so the value always belongs to a feasible-to-tolerance matrix.
    double trace_z = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace_z += z[i * n + i];
    std::vector<double> witness(n * n);
    double value = 0.0;
    for (std::size_t k = 0; k < n * n; ++k) {
        witness[k] = z[k] / trace_z;
        value += witness[k];
    }

    ThetaResult result;
    result.value = value;
    result.witness = RealSymMatrix(n, std::move(witness));
    result.primal_residual = primal;
    result.dual_residual = dual;
    result.iterations = iter;
    return result;
}

struct CycleTheta {
    double value = 0.0;            // theta of the odd cycle C_n
    double complement_value = 0.0; // n / theta, valid for vertex-transitive graphs
};

/// Closed form for odd cycles: theta(C_n) = n cos(pi/n) / (1 + cos(pi/n)).
inline CycleTheta theta_cycle_closed_form(int n) {
    if (n < 5 || n % 2 == 0)
        throw std::invalid_argument("theta_cycle_closed_form: need odd n >= 5");
    const double c = std::cos(std::numbers::pi / n);
    CycleTheta result;
    result.value = n * c / (1.0 + c);
    result.complement_value = n / result.value;
    return result;
}

/// Independent re-check of a theta certificate against the constraint
/// families and the reported objective.
struct WitnessReport {
    double psd_violation = 0.0;   // max(0, -lambda_min)
    double trace_violation = 0.0; // |trace - 1|
    double edge_violation = 0.0;  // max |B_ij| over edges
    double value_mismatch = 0.0;  // |value - sum of entries|
    bool pass = false;
};

inline WitnessReport verify_witness(const ExclusivityGraph& g, const ThetaResult& r) {
    if (r.witness.size() != g.size())
        throw std::invalid_argument("verify_witness: witness dimension does not match graph");
    WitnessReport report;
    const RealSymMatrix& b = r.witness;
    const EigResult eig = eig_sym(b);
    report.psd_violation = std::max(0.0, -eig.eigenvalues.front());
    report.trace_violation = std::abs(b.trace() - 1.0);
    for (const auto& [i, j] : g.edges())
        report.edge_violation = std::max(report.edge_violation, std::abs(b(i, j)));
    double sum = 0.0;
    for (double e : b.entries()) sum += e;
    report.value_mismatch = std::abs(r.value - sum);
    report.pass = report.psd_violation <= 1e-7 && report.trace_violation <= 1e-8 &&
                  report.edge_violation <= 1e-7 && report.value_mismatch <= 1e-7;
    return report;
}

} // namespace excl
