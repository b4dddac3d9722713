#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace excl {

using complex = std::complex<double>;

/// Thrown when an iterative kernel fails to reach its convergence
/// threshold within the iteration cap. Carries the final residuals.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double primal, double dual = 0.0)
        : std::runtime_error(what), primal_(primal), dual_(dual) {}

    double primal_residual() const { return primal_; }
    double dual_residual() const { return dual_; }

private:
    double primal_;
    double dual_;
};

/// Dense real symmetric matrix, row-major. Symmetry and finiteness are
/// enforced at construction; values are immutable afterwards.
class RealSymMatrix {
public:
    static constexpr double kSymmetryTolerance = 1e-12;

    RealSymMatrix(std::size_t n, std::vector<double> entries)
        : n_(n), entries_(std::move(entries)) {
        if (n_ < 1) throw std::invalid_argument("RealSymMatrix: dimension must be >= 1");
        if (entries_.size() != n_ * n_)
            throw std::invalid_argument("RealSymMatrix: entry count does not match dimension");
        for (double x : entries_)
            if (!std::isfinite(x))
                throw std::invalid_argument("RealSymMatrix: non-finite entry");
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (std::abs(entries_[i * n_ + j] - entries_[j * n_ + i]) > kSymmetryTolerance)
                    throw std::invalid_argument("RealSymMatrix: asymmetric entries");
    }

    static RealSymMatrix zero(std::size_t n) {
        return RealSymMatrix(n, std::vector<double>(n * n, 0.0));
    }

    static RealSymMatrix identity(std::size_t n) {
        std::vector<double> e(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
        return RealSymMatrix(n, std::move(e));
    }

    static RealSymMatrix diagonal(const std::vector<double>& d) {
        std::vector<double> e(d.size() * d.size(), 0.0);
        for (std::size_t i = 0; i < d.size(); ++i) e[i * d.size() + i] = d[i];
        return RealSymMatrix(d.size(), std::move(e));
    }

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    const std::vector<double>& entries() const { return entries_; }

    double trace() const {
        double t = 0.0;
        for (std::size_t i = 0; i < n_; ++i) t += entries_[i * n_ + i];
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (double x : entries_) m = std::max(m, std::abs(x));
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (double x : entries_) s += x * x;
        return std::sqrt(s);
    }

    friend bool operator==(const RealSymMatrix& a, const RealSymMatrix& b) {
        return a.n_ == b.n_ && a.entries_ == b.entries_;
    }

private:
    std::size_t n_;
    std::vector<double> entries_;
};

/// Fixed-dimension complex vector; components validated finite.
class ComplexVector {
public:
    explicit ComplexVector(std::vector<complex> components)
        : components_(std::move(components)) {
        if (components_.empty())
            throw std::invalid_argument("ComplexVector: dimension must be >= 1");
        for (const complex& c : components_)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw std::invalid_argument("ComplexVector: non-finite component");
    }

    static ComplexVector zero(std::size_t dim) {
        return ComplexVector(std::vector<complex>(dim, complex{0.0, 0.0}));
    }

    std::size_t dim() const { return components_.size(); }
    const complex& operator[](std::size_t i) const { return components_[i]; }
    const std::vector<complex>& components() const { return components_; }

    friend bool operator==(const ComplexVector& a, const ComplexVector& b) {
        return a.components_ == b.components_;
    }

private:
    std::vector<complex> components_;
};

/// Hermitian inner product, conjugate-linear in the first argument.
inline complex inner(const ComplexVector& u, const ComplexVector& v) {
    if (u.dim() != v.dim())
        throw std::invalid_argument("inner: dimension mismatch");
    complex s{0.0, 0.0};
    for (std::size_t i = 0; i < u.dim(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

inline double norm(const ComplexVector& u) {
    return std::sqrt(inner(u, u).real());
}

struct EigResult {
    std::vector<double> eigenvalues;               // ascending
    std::vector<std::vector<double>> eigenvectors; // eigenvectors[k] pairs with eigenvalues[k]
    std::size_t sweeps = 0;
};

/// Eigendecomposition of a real symmetric matrix by cyclic Jacobi sweeps.
/// Converges when the off-diagonal Frobenius mass drops below
/// 1e-12 * ||m||_F. Eigenvalues are returned ascending with matching
/// orthonormal eigenvectors.
inline EigResult eig_sym(const RealSymMatrix& m) {
    const std::size_t n = m.size();
    std::vector<double> a = m.entries();
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    const double fro = m.frobenius_norm();
    const double threshold = 1e-12 * fro;
    constexpr std::size_t kMaxSweeps = 100;

    auto off_mass = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a[i * n + j] * a[i * n + j];
        return std::sqrt(s);
    };

    std::size_t sweep = 0;
    double off = off_mass();
    while (off > threshold) {
        if (sweep >= kMaxSweeps)
            throw ConvergenceError("eig_sym: Jacobi sweeps exhausted", off);
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double tau = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                a[p * n + p] -= t * apq;
                a[q * n + q] += t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[p * n + k] = a[k * n + p];
                    a[k * n + q] = s * akp + c * akq;
                    a[q * n + k] = a[k * n + q];
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k * n + p];
                    const double vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
        ++sweep;
        off = off_mass();
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });

    EigResult result;
    result.sweeps = sweep;
    result.eigenvalues.reserve(n);
    result.eigenvectors.reserve(n);
    for (std::size_t k : order) {
        result.eigenvalues.push_back(a[k * n + k]);
        std::vector<double> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = v[i * n + k];
        result.eigenvectors.push_back(std::move(col));
    }
    return result;
}

/// Frobenius-nearest positive semidefinite matrix: eigenvalues clipped at zero.
inline RealSymMatrix psd_project(const RealSymMatrix& m) {
    const std::size_t n = m.size();
    const EigResult eig = eig_sym(m);
    std::vector<double> out(n * n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double lambda = std::max(eig.eigenvalues[k], 0.0);
        if (lambda == 0.0) continue;
        const std::vector<double>& vec = eig.eigenvectors[k];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) out[i * n + j] += lambda * vec[i] * vec[j];
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) out[j * n + i] = out[i * n + j];
    return RealSymMatrix(n, std::move(out));
}

} // namespace excl
