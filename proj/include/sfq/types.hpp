#pragma once

#include <Eigen/Dense>
#include <complex>

namespace sfq {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using IVec = Eigen::VectorXi;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr cplx kI{0.0, 1.0};

/// Bilinear dot product (no conjugation) of a real and a complex vector.
inline cplx cdot(const Vec& a, const CVec& b) {
    cplx s = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Bilinear dot product (no conjugation) of two complex vectors.
inline cplx cdot(const CVec& a, const CVec& b) {
    cplx s = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline CVec to_complex(const Vec& x) { return x.cast<cplx>(); }

inline cplx scalar(const CVec& z) { return z[0]; }

inline CVec cvec1(cplx z) {
    CVec v(1);
    v[0] = z;
    return v;
}

inline Vec vec1(double x) {
    Vec v(1);
    v[0] = x;
    return v;
}

}  // namespace sfq
