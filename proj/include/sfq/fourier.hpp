#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <variant>
#include <vector>

#include "sfq/lattice.hpp"
#include "sfq/types.hpp"

namespace sfq {

/// Finite complex Fourier series f(x) = sum_K c_K e^{i K.x} over points of a
/// reciprocal lattice. Doubles as an entire function of z through the same
/// series with complex argument.
class FourierFunction {
  public:
    FourierFunction(ReciprocalLattice lattice, std::vector<std::pair<IVec, cplx>> terms)
        : lattice_(std::move(lattice)) {
        // Canonical order + merge of repeated indices.
        std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
            return std::lexicographical_compare(a.first.data(), a.first.data() + a.first.size(),
                                                b.first.data(), b.first.data() + b.first.size());
        });
        for (auto& [m, c] : terms) {
            if (m.size() != lattice_.dim())
                throw DimensionMismatchError("fourier term index has wrong dimension");
            if (!indices_.empty() && indices_.back() == m) {
                coeffs_.back() += c;
            } else {
                indices_.push_back(m);
                coeffs_.push_back(c);
            }
        }
    }

    int dim() const { return lattice_.dim(); }
    const ReciprocalLattice& lattice() const { return lattice_; }
    std::size_t size() const { return indices_.size(); }
    const std::vector<IVec>& indices() const { return indices_; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }

    Vec k_vector(std::size_t i) const { return lattice_.k_vector(indices_[i]); }

    /// Coefficient at integer index m (0 if absent).
    cplx coeff(const IVec& m) const {
        auto it = std::lower_bound(
            indices_.begin(), indices_.end(), m, [](const IVec& a, const IVec& b) {
                return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                                    b.data() + b.size());
            });
        if (it == indices_.end() || *it != m) return 0.0;
        return coeffs_[static_cast<std::size_t>(it - indices_.begin())];
    }

    cplx operator()(const Vec& x) const {
        cplx s = 0.0;
        for (std::size_t i = 0; i < indices_.size(); ++i)
            s += coeffs_[i] * std::exp(kI * k_vector(i).dot(x));
        return s;
    }

    /// Entire continuation: same series at complex argument.
    cplx operator()(const CVec& z) const {
        cplx s = 0.0;
        for (std::size_t i = 0; i < indices_.size(); ++i)
            s += coeffs_[i] * std::exp(kI * cdot(k_vector(i), z));
        return s;
    }

    /// Largest |m_d| over the support, per coordinate d.
    IVec max_abs_index() const {
        IVec m = IVec::Zero(dim());
        for (const auto& idx : indices_)
            for (int d = 0; d < dim(); ++d) m[d] = std::max(m[d], std::abs(idx[d]));
        return m;
    }

    double max_k_norm() const {
        double r = 0.0;
        for (std::size_t i = 0; i < indices_.size(); ++i)
            r = std::max(r, k_vector(i).norm());
        return r;
    }

  private:
    ReciprocalLattice lattice_;
    std::vector<IVec> indices_;
    std::vector<cplx> coeffs_;
};

/// Element of the holomorphic Hilbert space. Either the entire continuation
/// of a lattice Fourier series (periodic in Re z) or, in the Euclidean
/// Segal-Bargmann case, a polynomial sum a_m z^m in one variable.
class HolomorphicFunction {
  public:
    explicit HolomorphicFunction(FourierFunction series) : rep_(std::move(series)) {}
    explicit HolomorphicFunction(std::vector<cplx> monomial_coeffs)
        : rep_(std::move(monomial_coeffs)) {}

    bool is_lattice() const { return std::holds_alternative<FourierFunction>(rep_); }
    const FourierFunction& series() const { return std::get<FourierFunction>(rep_); }
    const std::vector<cplx>& monomials() const { return std::get<std::vector<cplx>>(rep_); }

    cplx operator()(const CVec& z) const {
        if (is_lattice()) return series()(z);
        cplx s = 0.0, zp = 1.0;
        for (cplx a : monomials()) {
            s += a * zp;
            zp *= z[0];
        }
        return s;
    }

  private:
    std::variant<FourierFunction, std::vector<cplx>> rep_;
};

}  // namespace sfq
