#pragma once

#include <cmath>
#include <vector>

#include "sfq/errors.hpp"
#include "sfq/fourier.hpp"
#include "sfq/spaceform.hpp"
#include "sfq/threading.hpp"
#include "sfq/types.hpp"

namespace sfq {

/// Gaussian heat kernel on R^n at diffusion time t.
inline double rho_euclidean(const Vec& x, const Vec& x0, double t) {
    if (!(t > 0.0)) throw DomainError("rho_euclidean: t must be positive");
    if (x.size() != x0.size()) throw DimensionMismatchError("rho_euclidean: dim mismatch");
    const double n = static_cast<double>(x.size());
    return std::pow(kTwoPi * t, -0.5 * n) * std::exp(-(x - x0).squaredNorm() / (2.0 * t));
}

struct TruncationRadius {
    double radius = 0.0;
    bool capped = false;
};

/// Smallest shell radius R whose analytic tail bound
///   sum_{|K| > R} exp(imag_bound*|K| - |K|^2 t / 2) < tol * V
/// holds. The bound groups lattice points by integer sup-norm shells M:
/// every K with |K| > R has M >= floor(R / (sigma_max sqrt(n))) + 1, at most
/// (2M+1)^n - (2M-1)^n points live in shell M, and each term is bounded by
/// the summand evaluated at r = max(sigma_min M, R) (or at the mode of the
/// summand when that lies further out). The cap is the radius of the ball
/// holding ~cap_points lattice points; if it binds the result is flagged.
inline TruncationRadius truncation_radius(const ReciprocalLattice& recip, double t, double tol,
                                          double imag_bound = 0.0, double volume = 1.0,
                                          double cap_points = 1e6) {
    if (!(t > 0.0)) throw DomainError("truncation_radius: t must be positive");
    if (!(tol > 0.0)) throw DomainError("truncation_radius: tol must be positive");
    if (imag_bound < 0.0) throw DomainError("truncation_radius: imag_bound must be >= 0");
    const int n = recip.dim();
    const double y = imag_bound;
    const double s_min = recip.sigma_min(), s_max = recip.sigma_max();

    auto f = [&](double r) { return std::exp(y * r - 0.5 * r * r * t); };
    auto tail_bound = [&](double r_cut) {
        const long m0 = static_cast<long>(std::floor(r_cut / (s_max * std::sqrt(double(n))))) + 1;
        double sum = 0.0;
        for (long m = m0;; ++m) {
            const double count =
                std::pow(2.0 * m + 1.0, n) - std::pow(2.0 * m - 1.0, n);
            const double r = std::max(s_min * static_cast<double>(m), r_cut);
            const double g = (r >= y / t) ? f(r) : f(y / t);
            const double term = count * g;
            sum += term;
            if (term < 1e-18 * (sum + 1e-300) || term < 1e-280) break;
            if (m > m0 + 2000000) break;  // bail-out; caller's cap decides
        }
        return sum;
    };

    const double unit_ball = std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
    const double r_cap = std::pow(cap_points * recip.abs_det() / unit_ball, 1.0 / n);
    const double target = tol * volume;
    const double step = s_min / 8.0;
    for (double r = 0.0; r <= r_cap; r += step) {
        if (tail_bound(r) < target) return {r, false};
    }
    return {r_cap, true};
}

/// Heat kernel on a compact space form, rho_t(x, x0) = (1/V) sum_K
/// exp(i K.(x - x0) - |K|^2 t / 2) over the truncated Fourier lattice.
/// Caches the shell, so one instance amortizes over many evaluations; the
/// same series evaluated at complex x0 gives the analytic continuation.
class SpaceFormHeatKernel {
  public:
    SpaceFormHeatKernel(const SpaceFormSpec& spec, double t, double tol = 1e-12,
                        double imag_bound = 0.0, double cap_points = 1e6)
        : spec_(spec), t_(t), tol_(tol), imag_bound_(imag_bound) {
        if (!(t > 0.0)) throw DomainError("heat kernel: t must be positive");
        if (!(tol > 0.0)) throw DomainError("heat kernel: tol must be positive");
        ReciprocalLattice recip = spec.recip();
        auto rad = truncation_radius(recip, t, tol, imag_bound, spec.volume, cap_points);
        if (rad.capped)
            throw TruncationCapError(
                "heat kernel: truncation radius capped; t too small for the tolerance");
        radius_ = rad.radius;
        shell_ = enumerate_shell(recip, radius_);
        damp_.reserve(shell_.size());
        for (const auto& p : shell_) damp_.push_back(std::exp(-0.5 * p.norm2 * t));
    }

    double t() const { return t_; }
    double radius() const { return radius_; }
    const std::vector<LatticePoint>& shell() const { return shell_; }
    const SpaceFormSpec& spec() const { return spec_; }

    /// Real kernel value; the imaginary residue of the complex sum cancels
    /// by +-K pairing and is verified below 1e-12 before being dropped.
    double operator()(const Vec& x, const Vec& x0) const {
        Vec d = x - x0;
        cplx s = chunked_sum(shell_.size(), [&](std::size_t i) {
            return damp_[i] * std::exp(kI * shell_[i].vector.dot(d));
        });
        s /= spec_.volume;
        if (std::abs(s.imag()) > 1e-12 * std::max(1.0, std::abs(s.real())))
            throw Error("heat kernel: imaginary residue above bound");
        return s.real();
    }

    /// Analytic continuation in the base point: rho_t^z(x), entire in z.
    cplx analytic(const CVec& z, const Vec& x) const {
        if (z.imag().norm() > imag_bound_ + 1e-12)
            throw DomainError("heat kernel: |Im z| exceeds the truncation's imag_bound");
        CVec d = to_complex(x) - z;
        cplx s = chunked_sum(shell_.size(), [&](std::size_t i) {
            return damp_[i] * std::exp(kI * cdot(shell_[i].vector, d));
        });
        return s / spec_.volume;
    }

  private:
    SpaceFormSpec spec_;
    double t_, tol_, imag_bound_, radius_ = 0.0;
    std::vector<LatticePoint> shell_;
    std::vector<double> damp_;
};

inline double rho_spaceform(const SpaceFormSpec& spec, const Vec& x, const Vec& x0, double t,
                            double tol = 1e-12) {
    return SpaceFormHeatKernel(spec, t, tol)(x, x0);
}

inline cplx rho_analytic(const SpaceFormSpec& spec, const CVec& z, const Vec& x, double t,
                         double tol = 1e-12) {
    return SpaceFormHeatKernel(spec, t, tol, z.imag().norm()).analytic(z, x);
}

namespace detail {

/// Frequency cutoff with tail bound sum_{|k| > kmax} exp(y k - k^2 t/2)
/// < 0.5 * target, via the geometric majorant beyond the Gaussian mode.
inline int s1_mode_cutoff(double t, double y, double target) {
    for (int k = 1;; ++k) {
        const double kk = k + 1.0;
        if (kk * t <= y + 1e-12) continue;  // still on the growing side
        const double head = std::exp(y * kk - 0.5 * kk * kk * t);
        const double tail = head / (1.0 - std::exp(-(kk * t - y)));
        if (tail < 0.5 * target) return k;
        if (k > 100000) throw TruncationCapError("s1 kernel: cutoff runaway");
    }
}

}  // namespace detail

/// Heat kernel on the unit circle, (1/2pi) sum_k e^{i k (theta - theta0) -
/// k^2 t / 2}. Kept as an independent 1-D path (no lattice machinery).
/// The mode sum cancels heavily near the antipode at small t, so it is
/// accumulated in extended precision to keep ~1e-12 relative accuracy there.
inline double rho_s1(double theta, double theta0, double t, double tol = 1e-12) {
    if (!(t > 0.0)) throw DomainError("rho_s1: t must be positive");
    const int kmax = detail::s1_mode_cutoff(t, 0.0, tol * kTwoPi);
    const long double d = static_cast<long double>(theta) - static_cast<long double>(theta0);
    const long double th = static_cast<long double>(t);
    long double s = 1.0L;
    for (int k = 1; k <= kmax; ++k)
        s += 2.0L * std::cos(k * d) * std::exp(-0.5L * k * k * th);
    return static_cast<double>(s / (2.0L * 3.141592653589793238462643383279502884L));
}

/// Continuation of rho_s1 in the base angle: rho_t^{z0}(theta), entire in z0.
inline cplx rho_s1_analytic(double theta, cplx z0, double t, double tol = 1e-12) {
    if (!(t > 0.0)) throw DomainError("rho_s1_analytic: t must be positive");
    const double y = std::abs(z0.imag());
    const int kmax = detail::s1_mode_cutoff(t, y, tol * kTwoPi);
    cplx s = 1.0;
    for (int k = 1; k <= kmax; ++k) {
        const double damp = std::exp(-0.5 * k * k * t);
        const cplx arg = kI * (static_cast<double>(k) * (theta - z0));
        s += damp * (std::exp(arg) + std::exp(-arg));
    }
    return s / kTwoPi;
}

/// Heat kernel on the complexification Q_C = Q x R^n: product of the
/// space-form kernel in Re z and the R^n Gaussian in Im z.
inline double nu_complexified(const SpaceFormSpec& spec, const CVec& z, const CVec& z0, double t,
                              double tol = 1e-12) {
    if (!(t > 0.0)) throw DomainError("nu_complexified: t must be positive");
    SpaceFormHeatKernel rho(spec, t, tol);
    const double n = spec.dim;
    const double gauss = std::pow(kTwoPi * t, -0.5 * n) *
                         std::exp(-(z.imag() - z0.imag()).squaredNorm() / (2.0 * t));
    return rho(z.real(), z0.real()) * gauss;
}

/// Euclidean case: (2 pi t)^{-n} exp(-|z - z0|^2 / 2t) on C^n ~ R^{2n}.
inline double nu_euclidean(const CVec& z, const CVec& z0, double t) {
    if (!(t > 0.0)) throw DomainError("nu_euclidean: t must be positive");
    const double n = static_cast<double>(z.size());
    return std::pow(kTwoPi * t, -n) * std::exp(-(z - z0).squaredNorm() / (2.0 * t));
}

/// The truncated kernel as an explicit Fourier series centered at x0;
/// coefficients e^{-i K.x0 - |K|^2 t/2} / V. Feeds the invariance tests.
inline FourierFunction heat_kernel_fourier(const SpaceFormSpec& spec, double t, const Vec& x0,
                                           double tol = 1e-12) {
    SpaceFormHeatKernel ker(spec, t, tol);
    std::vector<std::pair<IVec, cplx>> terms;
    terms.reserve(ker.shell().size());
    for (const auto& p : ker.shell())
        terms.emplace_back(p.index, std::exp(-kI * p.vector.dot(x0) - 0.5 * p.norm2 * t) /
                                        spec.volume);
    return FourierFunction(spec.recip(), std::move(terms));
}

}  // namespace sfq
