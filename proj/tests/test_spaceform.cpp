#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "sfq/heatkernel.hpp"
#include "sfq/spaceform.hpp"

using namespace sfq;
using Catch::Matchers::WithinAbs;

namespace {

Vec v3(double x, double y, double z) {
    Vec v(3);
    v << x, y, z;
    return v;
}

EuclideanIsometry random_isometry(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Mat m(3, 3);
    for (int i = 0; i < 9; ++i) m.data()[i] = u(rng);
    Eigen::HouseholderQR<Mat> qr(m);
    Mat q = qr.householderQ();
    Vec a(3);
    for (int i = 0; i < 3; ++i) a[i] = u(rng);
    return EuclideanIsometry(q, a);
}

std::vector<SpaceFormSpec> sample_groups() {
    std::vector<SpaceFormSpec> specs;
    specs.push_back(make_space_form(SpaceFormFamily::G1, {1.1, 0.9, 1.3}));
    specs.push_back(make_space_form(SpaceFormFamily::G2, {1.0, 1.2, 1.0}));
    specs.push_back(make_space_form(SpaceFormFamily::G3, {1.0, 1.0, 1.4}));
    specs.push_back(make_space_form(SpaceFormFamily::G4, {1.0, 1.0, 0.8}));
    specs.push_back(make_space_form(SpaceFormFamily::G5, {1.0, 1.0, 1.1}));
    specs.push_back(make_space_form(SpaceFormFamily::G6, {1.0, 1.2, 1.4}));
    return specs;
}

}  // namespace

TEST_CASE("apply: pure translation and reflection-screw") {
    auto t = EuclideanIsometry::pure_translation(v3(0.3, -0.2, 0.5));
    REQUIRE_THAT((apply(t, v3(1, 2, 3)) - v3(1.3, 1.8, 3.5)).norm(), WithinAbs(0.0, 1e-15));

    EuclideanIsometry g(Mat(Eigen::Vector3d(-1, -1, 1).asDiagonal()), v3(0, 0, 0.5));
    REQUIRE_THAT((apply(g, v3(1, 0, 0)) - v3(-1, 0, 0.5)).norm(), WithinAbs(0.0, 1e-15));
}

TEST_CASE("G2 screw squared is the unit z-translation") {
    auto spec = make_space_form(SpaceFormFamily::G2, {1.0, 1.0, 1.0});
    const auto& alpha = spec.holonomy_generators.at(0);
    Vec x = v3(0.2, -0.7, 0.11);
    REQUIRE_THAT((apply(alpha, apply(alpha, x)) - (x + v3(0, 0, 1))).norm(),
                 WithinAbs(0.0, 1e-14));
}

TEST_CASE("compose: identity, translations, G4 quarter-screw order") {
    std::mt19937 rng(11);
    auto g = random_isometry(rng);
    auto composed = compose(g, EuclideanIsometry::identity(3));
    REQUIRE_THAT((composed.rotation - g.rotation).cwiseAbs().maxCoeff(), WithinAbs(0.0, 1e-15));
    REQUIRE_THAT((composed.translation - g.translation).norm(), WithinAbs(0.0, 1e-15));

    auto t1 = EuclideanIsometry::pure_translation(v3(1, 2, 3));
    auto t2 = EuclideanIsometry::pure_translation(v3(-0.5, 0.25, 1));
    auto sum = compose(t1, t2);
    REQUIRE_THAT((sum.translation - v3(0.5, 2.25, 4)).norm(), WithinAbs(0.0, 1e-15));
    REQUIRE_THAT((sum.rotation - Mat::Identity(3, 3)).cwiseAbs().maxCoeff(),
                 WithinAbs(0.0, 1e-15));

    auto g4 = make_space_form(SpaceFormFamily::G4, {1.0, 1.0, 1.0});
    EuclideanIsometry pow = g4.holonomy_generators[0];
    for (int k = 1; k < 4; ++k) pow = compose(g4.holonomy_generators[0], pow);
    REQUIRE_THAT((pow.rotation - Mat::Identity(3, 3)).cwiseAbs().maxCoeff(),
                 WithinAbs(0.0, 1e-12));
    REQUIRE_THAT((pow.translation - v3(0, 0, 1)).norm(), WithinAbs(0.0, 1e-12));
}

TEST_CASE("apply/compose associativity on random triples") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 25; ++rep) {
        auto g1 = random_isometry(rng), g2 = random_isometry(rng), g3 = random_isometry(rng);
        Vec x = v3(u(rng), u(rng), u(rng));
        Vec lhs = apply(compose(compose(g1, g2), g3), x);
        Vec rhs = apply(g1, apply(g2, apply(g3, x)));
        REQUIRE_THAT((lhs - rhs).norm(), WithinAbs(0.0, 1e-12));
        Vec rhs2 = apply(compose(g1, compose(g2, g3)), x);
        REQUIRE_THAT((lhs - rhs2).norm(), WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("torus and circle specs") {
    auto torus = make_torus(Mat::Identity(3, 3));
    REQUIRE(torus.holonomy_order == 1);
    REQUIRE_THAT(torus.volume, WithinAbs(1.0, 0.0));
    REQUIRE(torus.holonomy_generators.empty());

    auto circle = make_circle();
    REQUIRE(circle.dim == 1);
    REQUIRE_THAT(circle.volume, WithinAbs(kTwoPi, 1e-15));
}

TEST_CASE("all six 3-D families satisfy their defining relations") {
    for (const auto& spec : sample_groups()) {
        CAPTURE(family_name(spec.family));
        const double v_lam = cell_volume(spec.translation_basis);
        REQUIRE_THAT(spec.volume, WithinAbs(v_lam / spec.holonomy_order, 1e-12));
        for (const auto& g : spec.holonomy_generators) {
            Mat frac = spec.translation_basis.columns().fullPivLu().solve(
                g.rotation * spec.translation_basis.columns());
            for (int i = 0; i < 9; ++i)
                REQUIRE_THAT(frac.data()[i] - std::round(frac.data()[i]), WithinAbs(0.0, 1e-10));
        }
    }
    REQUIRE(make_space_form(SpaceFormFamily::G2, {1.0, 1.0, 1.0}).holonomy_order == 2);
    REQUIRE(make_space_form(SpaceFormFamily::G3, {1.0, 1.0, 1.0}).holonomy_order == 3);
    REQUIRE(make_space_form(SpaceFormFamily::G5, {1.0, 1.0, 1.0}).holonomy_order == 6);
}

TEST_CASE("G6 has three screw motions squaring to lattice translations") {
    auto g6 = make_space_form(SpaceFormFamily::G6, {1.0, 1.0, 1.0});
    REQUIRE(g6.holonomy_order == 4);
    REQUIRE(g6.holonomy_generators.size() == 3);
    for (const auto& g : g6.holonomy_generators) {
        auto sq = compose(g, g);
        REQUIRE_THAT((sq.rotation - Mat::Identity(3, 3)).cwiseAbs().maxCoeff(),
                     WithinAbs(0.0, 1e-14));
        Vec frac = g6.translation_basis.fractional(sq.translation);
        for (int i = 0; i < 3; ++i)
            REQUIRE_THAT(frac[i] - std::round(frac[i]), WithinAbs(0.0, 1e-14));
        REQUIRE(frac.cwiseAbs().maxCoeff() > 0.5);  // primitive, not the identity
    }
}

TEST_CASE("invalid cell parameters are rejected") {
    REQUIRE_THROWS_AS(make_space_form(SpaceFormFamily::G2, {-1.0, 1.0, 1.0}), DomainError);
    REQUIRE_THROWS_AS(make_space_form(SpaceFormFamily::G3, {1.0, 1.2, 1.0}), DomainError);
    CellParams skew{1.0, 1.0, 1.0, kPi / 2.0};
    REQUIRE_THROWS_AS(make_space_form(SpaceFormFamily::G5, skew), DomainError);
    CellParams shear_g6{1.0, 1.0, 1.0, kPi / 3.0};
    REQUIRE_THROWS_AS(make_space_form(SpaceFormFamily::G6, shear_g6), DomainError);
}

TEST_CASE("is_invariant: constant functions are invariant under anything") {
    auto g2 = make_space_form(SpaceFormFamily::G2, {1.0, 1.0, 1.0});
    FourierFunction c(g2.recip(), {{IVec::Zero(3), cplx(2.5, -1.0)}});
    std::mt19937 rng(3);
    for (int rep = 0; rep < 5; ++rep) REQUIRE(is_invariant(c, random_isometry(rng), 1e-12));
}

TEST_CASE("is_invariant: rotation-fixed mode with integral phase is invariant") {
    auto g2 = make_space_form(SpaceFormFamily::G2, {1.0, 1.0, 1.0});
    const auto& alpha = g2.holonomy_generators[0];
    // K along z in the crystal dual: A^T K = K and K.a in 2*pi*Z.
    IVec m = IVec::Zero(3);
    m[2] = 1;
    FourierFunction f(g2.recip(), {{m, cplx(1.0)}});
    REQUIRE(is_invariant(f, alpha, 1e-12));
    REQUIRE(is_invariant_sampled(f, alpha, 1e-10, g2.fourier_basis));

    // An in-plane mode maps to a different index: not invariant.
    IVec mx = IVec::Zero(3);
    mx[0] = 1;
    FourierFunction g(g2.recip(), {{mx, cplx(1.0)}});
    REQUIRE_FALSE(is_invariant(g, alpha, 1e-12));
    REQUIRE_FALSE(is_invariant_sampled(g, alpha, 1e-10, g2.fourier_basis));
}

TEST_CASE("heat kernel series passes is_invariant for every family generator") {
    auto specs = sample_groups();
    specs.push_back(make_torus(Mat::Identity(2, 2)));
    specs.push_back(make_circle());
    for (const auto& spec : specs) {
        CAPTURE(family_name(spec.family));
        FourierFunction rho = heat_kernel_fourier(spec, 0.7, Vec::Zero(spec.dim));
        for (const auto& g : spec.holonomy_generators) REQUIRE(is_invariant(rho, g, 1e-10));
        for (int d = 0; d < spec.dim; ++d) {
            auto tr =
                EuclideanIsometry::pure_translation(spec.translation_basis.columns().col(d));
            REQUIRE(is_invariant(rho, tr, 1e-10));
        }
    }
}

TEST_CASE("free action rules out fixed-point generators") {
    // A plain half-turn (no screw part) fixes the z-axis; the validator
    // must refuse it.
    Mat lam = Mat::Identity(3, 3);
    SpaceFormSpec bad{SpaceFormFamily::G2,
                      3,
                      LatticeBasis(lam),
                      LatticeBasis(lam),
                      {EuclideanIsometry(Mat(Eigen::Vector3d(-1, -1, 1).asDiagonal()),
                                         Vec::Zero(3))},
                      1,
                      1.0};
    REQUIRE_THROWS_AS(detail::validate_spec(bad), DomainError);
}
