#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "sfq/errors.hpp"
#include "sfq/fourier.hpp"
#include "sfq/lattice.hpp"
#include "sfq/types.hpp"

namespace sfq {

/// Rigid motion gamma = (A, a) of R^n, x -> A x + a, with A orthogonal.
struct EuclideanIsometry {
    Mat rotation;
    Vec translation;

    EuclideanIsometry(Mat A, Vec a) : rotation(std::move(A)), translation(std::move(a)) {
        if (rotation.rows() != rotation.cols() || rotation.rows() != translation.size())
            throw DimensionMismatchError("isometry: rotation/translation dimensions disagree");
        Mat res = rotation.transpose() * rotation - Mat::Identity(rotation.rows(), rotation.cols());
        if (res.cwiseAbs().maxCoeff() > 1e-12)
            throw DomainError("isometry: rotation part is not orthogonal");
    }

    int dim() const { return static_cast<int>(translation.size()); }

    static EuclideanIsometry identity(int n) {
        return EuclideanIsometry(Mat::Identity(n, n), Vec::Zero(n));
    }
    static EuclideanIsometry pure_translation(Vec a) {
        const auto n = a.size();
        return EuclideanIsometry(Mat::Identity(n, n), std::move(a));
    }
};

inline Vec apply(const EuclideanIsometry& g, const Vec& x) {
    if (x.size() != g.dim()) throw DimensionMismatchError("apply: point dimension mismatch");
    return g.rotation * x + g.translation;
}

/// (A1, a1) o (A2, a2) = (A1 A2, A1 a2 + a1); apply(compose(g1,g2), x) ==
/// apply(g1, apply(g2, x)).
inline EuclideanIsometry compose(const EuclideanIsometry& g1, const EuclideanIsometry& g2) {
    if (g1.dim() != g2.dim()) throw DimensionMismatchError("compose: dimension mismatch");
    return EuclideanIsometry(g1.rotation * g2.rotation,
                             g1.rotation * g2.translation + g1.translation);
}

inline EuclideanIsometry inverse(const EuclideanIsometry& g) {
    return EuclideanIsometry(g.rotation.transpose(), -(g.rotation.transpose() * g.translation));
}

enum class SpaceFormFamily { Torus, Circle, G1, G2, G3, G4, G5, G6 };

inline const char* family_name(SpaceFormFamily f) {
    switch (f) {
        case SpaceFormFamily::Torus: return "torus";
        case SpaceFormFamily::Circle: return "circle";
        case SpaceFormFamily::G1: return "g1";
        case SpaceFormFamily::G2: return "g2";
        case SpaceFormFamily::G3: return "g3";
        case SpaceFormFamily::G4: return "g4";
        case SpaceFormFamily::G5: return "g5";
        case SpaceFormFamily::G6: return "g6";
    }
    return "?";
}

/// Cell parameters for the 3-D families: edge lengths (a, b, c) and the
/// angle between the two in-plane edges. NaN angle means the family default.
struct CellParams {
    double a = 1.0, b = 1.0, c = 1.0;
    double plane_angle = std::numeric_limits<double>::quiet_NaN();
};

/// A compact Euclidean space form R^n / Gamma.
///
/// `translation_basis` spans the pure-translation lattice Lambda of Gamma.
/// `fourier_basis` spans the finer crystal lattice generated by Lambda
/// together with the translation parts of the holonomy generators; its
/// 2*pi-dual is the index set of all Fourier modes used by the kernels, and
/// its cell volume equals `volume` = |det Lambda| / holonomy_order.
struct SpaceFormSpec {
    SpaceFormFamily family;
    int dim;
    LatticeBasis translation_basis;
    LatticeBasis fourier_basis;
    std::vector<EuclideanIsometry> holonomy_generators;
    int holonomy_order = 1;
    double volume = 0.0;

    ReciprocalLattice recip() const { return reciprocal(fourier_basis); }
};

namespace detail {

inline Mat rot_z(double angle) {
    Mat r = Mat::Identity(3, 3);
    const double c = std::cos(angle), s = std::sin(angle);
    r(0, 0) = c;
    r(0, 1) = -s;
    r(1, 0) = s;
    r(1, 1) = c;
    return r;
}

/// True when A maps the lattice of `basis` onto itself: B^{-1} A B integer
/// with |det| = 1.
inline bool stabilizes_lattice(const Mat& A, const LatticeBasis& basis, double tol = 1e-10) {
    Mat m = basis.columns().fullPivLu().solve(A * basis.columns());
    double det = 1.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (std::abs(m(i, j) - std::round(m(i, j))) > tol) return false;
    det = std::abs(m.determinant());
    return std::abs(det - 1.0) < 1e-8;
}

/// Distance from gamma(x) to x on the quotient torus R^n / Lambda.
inline double quotient_displacement(const EuclideanIsometry& g, const LatticeBasis& lam,
                                    const Vec& x) {
    Vec v = apply(g, x) - x;
    Vec frac = lam.fractional(v);
    for (Eigen::Index i = 0; i < frac.size(); ++i) frac[i] -= std::round(frac[i]);
    return (lam.columns() * frac).norm();
}

/// Fixed-point obstruction for the whole coset {(A, a + lambda)}: such an
/// element has a fixed point iff a + lambda lies in Im(I - A), i.e. iff its
/// component along fix(A) vanishes. fix(A) = {0} always gives one; pure
/// translations never do (the identity coset is exempt).
inline bool coset_acts_freely(const EuclideanIsometry& g, const LatticeBasis& lam,
                              double tol = 1e-8) {
    const int n = g.dim();
    Eigen::FullPivLU<Mat> lu(g.rotation - Mat::Identity(n, n));
    lu.setThreshold(1e-10);
    const int f = static_cast<int>(lu.dimensionOfKernel());
    if (f == 0) return false;
    if (f == n) return true;
    Eigen::HouseholderQR<Mat> qr(Mat(lu.kernel()));
    Mat u = Mat(qr.householderQ()).leftCols(f);  // orthonormal basis of fix(A)
    IVec m = IVec::Constant(n, -4);
    while (true) {
        Vec shifted = g.translation + lam.columns() * m.cast<double>();
        if ((u.transpose() * shifted).norm() < tol) return false;
        int d = 0;
        for (; d < n; ++d) {
            if (m[d] < 4) {
                ++m[d];
                break;
            }
            m[d] = -4;
        }
        if (d == n) break;
    }
    return true;
}

inline void validate_spec(const SpaceFormSpec& spec) {
    const double v_expected = cell_volume(spec.translation_basis) / spec.holonomy_order;
    if (std::abs(spec.volume - v_expected) > 1e-10 * v_expected)
        throw DomainError("space form: volume != |det Lambda| / holonomy order");
    if (std::abs(cell_volume(spec.fourier_basis) - spec.volume) > 1e-10 * spec.volume)
        throw DomainError("space form: fourier cell volume inconsistent");
    // Deterministic sample points back the exact coset obstruction below.
    std::vector<Vec> samples;
    for (double s : {0.137, 0.411, 0.733}) {
        Vec frac = Vec::Zero(spec.dim);
        for (int d = 0; d < spec.dim; ++d) frac[d] = std::fmod(s * (d + 1), 1.0) - 0.5;
        samples.push_back(spec.translation_basis.columns() * frac);
    }
    for (const auto& g : spec.holonomy_generators) {
        if (!stabilizes_lattice(g.rotation, spec.translation_basis))
            throw DomainError("space form: generator rotation does not stabilize the lattice");
        if (!stabilizes_lattice(g.rotation, spec.fourier_basis))
            throw DomainError("space form: generator rotation does not stabilize the crystal lattice");
        if (!coset_acts_freely(g, spec.translation_basis))
            throw DomainError("space form: generator coset has a fixed point");
        for (const auto& x : samples)
            if (quotient_displacement(g, spec.translation_basis, x) < 1e-6)
                throw DomainError("space form: generator has a (sampled) fixed point");
    }
}

}  // namespace detail

inline SpaceFormSpec make_torus(Mat basis_columns) {
    LatticeBasis basis(std::move(basis_columns));
    SpaceFormSpec spec{SpaceFormFamily::Torus, basis.dim(), basis,          basis, {}, 1,
                       cell_volume(basis)};
    detail::validate_spec(spec);
    return spec;
}

/// Unit circle S^1 = R / 2*pi*Z; Fourier modes are the integers.
inline SpaceFormSpec make_circle() {
    Mat b(1, 1);
    b(0, 0) = kTwoPi;
    auto spec = make_torus(b);
    spec.family = SpaceFormFamily::Circle;
    return spec;
}

/// The six orientable compact 3-D families. G1 is the 3-torus; G2..G5 are
/// generated by the torus translations plus one screw motion alpha with
/// alpha^k = t3 for k = 2, 3, 4, 6; G6 (Hantzsche-Wendt) needs three screw
/// motions by pi. G3/G5 require the hexagonal in-plane lattice, G4 the
/// square one, G6 a rectangular cell.
inline SpaceFormSpec make_space_form(SpaceFormFamily family, const CellParams& params = {}) {
    using F = SpaceFormFamily;
    if (family == F::Circle) return make_circle();
    const double a = params.a, b = params.b, c = params.c;
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
        throw DomainError("space form: cell lengths must be positive");

    double gamma = params.plane_angle;
    const bool gamma_given = !std::isnan(gamma);
    auto require = [&](bool ok, const char* msg) {
        if (!ok) throw DomainError(std::string("space form: ") + msg);
    };

    int order = 1;
    double screw_angle = 0.0;
    switch (family) {
        case F::Torus:
        case F::G1:
            if (!gamma_given) gamma = kPi / 2.0;
            break;
        case F::G2:
            if (!gamma_given) gamma = kPi / 2.0;
            order = 2;
            screw_angle = kPi;
            break;
        case F::G3:
            if (!gamma_given) gamma = 2.0 * kPi / 3.0;
            require(std::abs(b - a) < 1e-9 && std::abs(gamma - 2.0 * kPi / 3.0) < 1e-9,
                    "G3 needs the hexagonal plane lattice (b = a, angle 2*pi/3)");
            order = 3;
            screw_angle = 2.0 * kPi / 3.0;
            break;
        case F::G4:
            if (!gamma_given) gamma = kPi / 2.0;
            require(std::abs(b - a) < 1e-9 && std::abs(gamma - kPi / 2.0) < 1e-9,
                    "G4 needs the square plane lattice (b = a, angle pi/2)");
            order = 4;
            screw_angle = kPi / 2.0;
            break;
        case F::G5:
            if (!gamma_given) gamma = 2.0 * kPi / 3.0;
            require(std::abs(b - a) < 1e-9 && std::abs(gamma - 2.0 * kPi / 3.0) < 1e-9,
                    "G5 needs the hexagonal plane lattice (b = a, angle 2*pi/3)");
            order = 6;
            screw_angle = kPi / 3.0;
            break;
        case F::G6:
            if (!gamma_given) gamma = kPi / 2.0;
            require(std::abs(gamma - kPi / 2.0) < 1e-9, "G6 needs a rectangular cell");
            order = 4;
            break;
        default:
            break;
    }
    require(std::sin(gamma) > 1e-9, "plane angle must lie in (0, pi)");

    Mat lam(3, 3);
    lam.col(0) << a, 0.0, 0.0;
    lam.col(1) << b * std::cos(gamma), b * std::sin(gamma), 0.0;
    lam.col(2) << 0.0, 0.0, c;
    LatticeBasis translation(lam);

    std::vector<EuclideanIsometry> gens;
    Mat crystal = lam;
    if (family == F::G2 || family == F::G3 || family == F::G4 || family == F::G5) {
        Vec screw = Vec::Zero(3);
        screw[2] = c / order;
        gens.emplace_back(detail::rot_z(screw_angle), screw);
        crystal.col(2) << 0.0, 0.0, c / order;  // Lambda + Z*(0,0,c/k)
    } else if (family == F::G6) {
        Vec t1(3), t2(3), t3(3);
        t1 << a / 2, b / 2, 0.0;
        t2 << 0.0, b / 2, c / 2;
        t3 << a / 2, 0.0, c / 2;
        gens.emplace_back(Mat(Eigen::Vector3d(1, -1, -1).asDiagonal()), t1);
        gens.emplace_back(Mat(Eigen::Vector3d(-1, 1, -1).asDiagonal()), t2);
        gens.emplace_back(Mat(Eigen::Vector3d(-1, -1, 1).asDiagonal()), t3);
        // Crystal lattice = face-centered sublattice of the half-step grid.
        crystal.col(0) = t1;
        crystal.col(1) = t2;
        crystal.col(2) << a, 0.0, 0.0;
    }

    LatticeBasis fourier(crystal);
    SpaceFormSpec spec{family,  3,     translation, fourier, std::move(gens), order,
                       std::abs(fourier.det())};

    // Defining relation alpha^order = t3 for the single-screw families.
    if (family == F::G2 || family == F::G3 || family == F::G4 || family == F::G5) {
        EuclideanIsometry pow = spec.holonomy_generators[0];
        for (int k = 1; k < order; ++k) pow = compose(spec.holonomy_generators[0], pow);
        Vec t3 = lam.col(2);
        if ((pow.rotation - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() > 1e-12 ||
            (pow.translation - t3).cwiseAbs().maxCoeff() > 1e-12)
            throw DomainError("space form: screw relation alpha^k = t3 failed");
    }
    if (family == F::G6) {
        for (const auto& g : spec.holonomy_generators) {
            EuclideanIsometry sq = compose(g, g);
            if ((sq.rotation - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() > 1e-12)
                throw DomainError("space form: G6 generator square is not a translation");
            Vec frac = translation.fractional(sq.translation);
            for (int i = 0; i < 3; ++i)
                if (std::abs(frac[i] - std::round(frac[i])) > 1e-12)
                    throw DomainError("space form: G6 generator square is not a lattice vector");
        }
    }

    detail::validate_spec(spec);
    return spec;
}

/// Exact coefficient test for f(gamma x) = f(x): the series is invariant iff
/// c_K e^{i K.a} = c_{A^T K} for every mode K. Authoritative mode.
inline bool is_invariant(const FourierFunction& f, const EuclideanIsometry& g, double tol) {
    const auto& recip = f.lattice();
    // Union of the support with its image under K -> A K, so one-sided
    // mismatches (mode present only on one side) are caught from either end.
    std::vector<IVec> probe = f.indices();
    for (std::size_t i = 0; i < f.size(); ++i) {
        IVec m(recip.dim());
        if (recip.index_of(g.rotation * f.k_vector(i), m)) probe.push_back(m);
    }
    for (const auto& m : probe) {
        Vec k = recip.k_vector(m);
        cplx lhs = f.coeff(m) * std::exp(kI * k.dot(g.translation));
        Vec k_img = g.rotation.transpose() * k;
        IVec m_img(recip.dim());
        cplx rhs = recip.index_of(k_img, m_img) ? f.coeff(m_img) : cplx(0.0);
        if (std::abs(lhs - rhs) > tol) return false;
    }
    return true;
}

/// Pointwise variant: max |f(gamma x) - f(x)| over a fixed sample grid.
inline bool is_invariant_sampled(const FourierFunction& f, const EuclideanIsometry& g, double tol,
                                 const LatticeBasis& cell, int grid_per_dim = 5) {
    const int n = f.dim();
    IVec idx = IVec::Zero(n);
    while (true) {
        Vec frac(n);
        for (int d = 0; d < n; ++d) frac[d] = (idx[d] + 0.371) / grid_per_dim - 0.5;
        Vec x = cell.columns() * frac;
        if (std::abs(f(apply(g, x)) - f(x)) > tol) return false;
        int d = 0;
        for (; d < n; ++d) {
            if (++idx[d] < grid_per_dim) break;
            idx[d] = 0;
        }
        if (d == n) break;
    }
    return true;
}

}  // namespace sfq
