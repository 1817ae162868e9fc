#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "sfq/errors.hpp"
#include "sfq/types.hpp"

namespace sfq {

/// Translation lattice spanned by the columns of an invertible n x n matrix.
class LatticeBasis {
  public:
    explicit LatticeBasis(Mat columns) : cols_(std::move(columns)) {
        if (cols_.rows() < 1 || cols_.rows() != cols_.cols())
            throw DimensionMismatchError("lattice basis must be a square matrix, n >= 1");
        Eigen::FullPivLU<Mat> lu(cols_);
        if (!lu.isInvertible())
            throw SingularBasisError("lattice basis columns are linearly dependent");
        det_ = lu.determinant();
    }

    int dim() const { return static_cast<int>(cols_.rows()); }
    const Mat& columns() const { return cols_; }
    double det() const { return det_; }

    /// Coordinates of x in the basis (inverse map).
    Vec fractional(const Vec& x) const { return cols_.fullPivLu().solve(x); }

  private:
    Mat cols_;
    double det_ = 0.0;
};

/// 2*pi-dual of a LatticeBasis; its integer combinations index the Fourier
/// modes compatible with the lattice periodicity.
class ReciprocalLattice {
  public:
    ReciprocalLattice(Mat columns, int dim) : cols_(std::move(columns)), dim_(dim) {
        Eigen::JacobiSVD<Mat> svd(cols_);
        sigma_min_ = svd.singularValues().minCoeff();
        sigma_max_ = svd.singularValues().maxCoeff();
        det_ = std::abs(cols_.determinant());
    }

    int dim() const { return dim_; }
    const Mat& columns() const { return cols_; }
    double abs_det() const { return det_; }
    double sigma_min() const { return sigma_min_; }
    double sigma_max() const { return sigma_max_; }

    /// K = B_r * m for an integer index vector m.
    Vec k_vector(const IVec& m) const { return cols_ * m.cast<double>(); }

    /// Integer index of a wave vector, if it lies on the lattice within tol.
    /// Returns false (and leaves m untouched) otherwise.
    bool index_of(const Vec& k, IVec& m, double tol = 1e-9) const {
        Vec frac = cols_.fullPivLu().solve(k);
        IVec rounded(frac.size());
        for (Eigen::Index i = 0; i < frac.size(); ++i) {
            rounded[i] = static_cast<int>(std::lround(frac[i]));
            if (std::abs(frac[i] - rounded[i]) > tol) return false;
        }
        m = rounded;
        return true;
    }

  private:
    Mat cols_;
    int dim_;
    double det_, sigma_min_, sigma_max_;
};

/// One reciprocal-lattice point: integer index m, wave vector K = B_r m,
/// and |K|^2.
struct LatticePoint {
    IVec index;
    Vec vector;
    double norm2 = 0.0;
};

/// Reciprocal lattice of `basis`: columns B_r with B_r^T B = 2*pi*I.
inline ReciprocalLattice reciprocal(const LatticeBasis& basis) {
    Mat br = kTwoPi * basis.columns().inverse().transpose();
    return ReciprocalLattice(std::move(br), basis.dim());
}

/// Volume of the fundamental parallelepiped, |det B|.
inline double cell_volume(const LatticeBasis& basis) { return std::abs(basis.det()); }

/// All K in the reciprocal lattice with |K| <= radius. Ties at the radius
/// (within 1e-12) are included. Complete by construction: |m_i| <= |m| <=
/// |K| / sigma_min bounds the integer search box.
inline std::vector<LatticePoint> enumerate_shell(const ReciprocalLattice& recip, double radius) {
    if (radius < 0.0) throw DomainError("enumerate_shell: radius must be >= 0");
    const int n = recip.dim();
    const double r_incl = radius + 1e-12 * std::max(1.0, radius);
    const long bound = static_cast<long>(std::floor(r_incl / recip.sigma_min()));
    if (bound > 400 && std::pow(2.0 * bound + 1.0, n) > 4e8)
        throw std::length_error("enumerate_shell: integer search box too large");

    std::vector<LatticePoint> shell;
    IVec m = IVec::Constant(n, static_cast<int>(-bound));
    const double r2 = r_incl * r_incl;
    while (true) {
        Vec k = recip.k_vector(m);
        double k2 = k.squaredNorm();
        if (k2 <= r2) shell.push_back({m, std::move(k), k2});
        int d = 0;
        for (; d < n; ++d) {
            if (m[d] < bound) {
                ++m[d];
                break;
            }
            m[d] = static_cast<int>(-bound);
        }
        if (d == n) break;
    }
    // Canonical order: by |K|^2, then lexicographic index. Deterministic
    // summation order downstream depends on it.
    std::sort(shell.begin(), shell.end(), [](const LatticePoint& a, const LatticePoint& b) {
        if (a.norm2 != b.norm2) return a.norm2 < b.norm2;
        return std::lexicographical_compare(a.index.data(), a.index.data() + a.index.size(),
                                            b.index.data(), b.index.data() + b.index.size());
    });
    return shell;
}

}  // namespace sfq
