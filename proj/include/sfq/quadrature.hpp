#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "sfq/errors.hpp"
#include "sfq/lattice.hpp"
#include "sfq/spaceform.hpp"
#include "sfq/types.hpp"

namespace sfq {

/// Nodes and weights for integration over the cell Q, over the Gaussian
/// factor of the complexified kernel, or over a tensor product of the two.
/// GaussianWeighted weights are normalized against their own Gaussian
/// density, so they sum to 1; PeriodicTrapezoid weights sum to the cell
/// volume (divided by the holonomy order for quotient rules).
struct QuadratureRule {
    enum class Kind { PeriodicTrapezoid, GaussianWeighted, Product };
    Kind kind = Kind::PeriodicTrapezoid;
    int dim = 0;
    std::vector<Vec> nodes;
    std::vector<double> weights;

    double weight_sum() const {
        double s = 0.0;
        for (double w : weights) s += w;
        return s;
    }
};

/// N^n equispaced nodes on the fundamental cell of `cell`, equal weights
/// V/N^n. Exact on e^{i K.x} for integer mode indices with |m_d| < N.
inline QuadratureRule periodic_trapezoid(const LatticeBasis& cell, int nodes_per_dim) {
    if (nodes_per_dim < 1) throw DomainError("periodic_trapezoid: N must be >= 1");
    const int n = cell.dim();
    const double w = cell_volume(cell) / std::pow(double(nodes_per_dim), n);
    QuadratureRule rule{QuadratureRule::Kind::PeriodicTrapezoid, n, {}, {}};
    IVec idx = IVec::Zero(n);
    while (true) {
        Vec frac(n);
        for (int d = 0; d < n; ++d) frac[d] = double(idx[d]) / nodes_per_dim - 0.5;
        rule.nodes.push_back(cell.columns() * frac);
        rule.weights.push_back(w);
        int d = 0;
        for (; d < n; ++d) {
            if (++idx[d] < nodes_per_dim) break;
            idx[d] = 0;
        }
        if (d == n) break;
    }
    return rule;
}

namespace detail {

/// Gauss-Hermite nodes/weights for int f(u) e^{-u^2} du / sqrt(pi) by the
/// Golub-Welsch eigenvalue method; weights returned already normalized.
inline void gauss_hermite(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    Mat jac = Mat::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = std::sqrt(0.5 * k);
        jac(k, k - 1) = b;
        jac(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(jac);
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        nodes[i] = es.eigenvalues()[i];
        const double v0 = es.eigenvectors()(0, i);
        weights[i] = v0 * v0;
    }
}

}  // namespace detail

/// Tensor Gauss rule exact for polynomials of degree <= 2N-1 per dimension
/// against the Gaussian factor e^{-|y|^2/t} / (pi t)^{n/2} of the
/// complexified kernel at time t/2. Weights sum to 1.
inline QuadratureRule gaussian_weighted(double t, int dim, int nodes_per_dim) {
    if (!(t > 0.0)) throw DomainError("gaussian_weighted: t must be positive");
    if (nodes_per_dim < 1) throw DomainError("gaussian_weighted: N must be >= 1");
    std::vector<double> u, w;
    detail::gauss_hermite(nodes_per_dim, u, w);
    const double scale = std::sqrt(t);
    QuadratureRule rule{QuadratureRule::Kind::GaussianWeighted, dim, {}, {}};
    IVec idx = IVec::Zero(dim);
    while (true) {
        Vec y(dim);
        double weight = 1.0;
        for (int d = 0; d < dim; ++d) {
            y[d] = scale * u[idx[d]];
            weight *= w[idx[d]];
        }
        rule.nodes.push_back(std::move(y));
        rule.weights.push_back(weight);
        int d = 0;
        for (; d < dim; ++d) {
            if (++idx[d] < nodes_per_dim) break;
            idx[d] = 0;
        }
        if (d == dim) break;
    }
    return rule;
}

/// Tensor product: concatenated nodes, multiplied weights.
inline QuadratureRule product_rule(const QuadratureRule& q1, const QuadratureRule& q2) {
    QuadratureRule rule{QuadratureRule::Kind::Product, q1.dim + q2.dim, {}, {}};
    rule.nodes.reserve(q1.nodes.size() * q2.nodes.size());
    for (std::size_t i = 0; i < q1.nodes.size(); ++i) {
        for (std::size_t j = 0; j < q2.nodes.size(); ++j) {
            Vec x(rule.dim);
            x.head(q1.dim) = q1.nodes[i];
            x.tail(q2.dim) = q2.nodes[j];
            rule.nodes.push_back(std::move(x));
            rule.weights.push_back(q1.weights[i] * q2.weights[j]);
        }
    }
    return rule;
}

template <typename F>
auto integrate(const QuadratureRule& rule, F&& f) {
    using R = decltype(f(rule.nodes[0]) * 1.0);
    R s{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s = s + rule.weights[i] * f(rule.nodes[i]);
    return s;
}

/// Rule for the quotient manifold: trapezoid on the translation cell with
/// weights divided by the holonomy order. Valid for Gamma-invariant (in
/// particular crystal-lattice-periodic) integrands, which is all the inner
/// products ever integrate.
inline QuadratureRule spaceform_cell_rule(const SpaceFormSpec& spec, int nodes_per_dim) {
    QuadratureRule rule = periodic_trapezoid(spec.translation_basis, nodes_per_dim);
    for (double& w : rule.weights) w /= spec.holonomy_order;
    return rule;
}

/// Same quotient integral computed on the finer crystal cell directly; the
/// cross-check partner of spaceform_cell_rule.
inline QuadratureRule crystal_cell_rule(const SpaceFormSpec& spec, int nodes_per_dim) {
    return periodic_trapezoid(spec.fourier_basis, nodes_per_dim);
}

}  // namespace sfq
