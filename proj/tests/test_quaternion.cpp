#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cmclab/quaternion.hpp"
#include "cmclab/s3.hpp"

using namespace cmclab;

namespace {

constexpr double kPi = std::numbers::pi;

std::mt19937_64 rng(12001);

ImVector random_unit_vector() {
    std::normal_distribution<double> g;
    ImVector v{g(rng), g(rng), g(rng)};
    return v.normalized();
}

UnitQuaternion random_unit_quaternion() {
    std::normal_distribution<double> g;
    return UnitQuaternion(Quaternion{g(rng), g(rng), g(rng), g(rng)});
}

double qdist(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

}  // namespace

TEST_CASE("multiplication table") {
    const Quaternion i = im_i().quat(), j = im_j().quat(), k = im_k().quat();
    CHECK(qdist(i * j, k) == 0);
    CHECK(qdist(j * k, i) == 0);
    CHECK(qdist(k * i, j) == 0);
    CHECK(qdist(i * i, -Quaternion::one()) == 0);
    CHECK(qdist(j * j, -Quaternion::one()) == 0);
    CHECK(qdist(k * k, -Quaternion::one()) == 0);
}

TEST_CASE("unit inverse pair") {
    const double s = 1.0 / std::sqrt(2.0);
    const Quaternion p{s, s, 0, 0};
    const Quaternion q{s, -s, 0, 0};
    CHECK(qdist(p * q, Quaternion::one()) < 1e-15);
}

TEST_CASE("exp of imaginary quaternion") {
    CHECK(qdist(exp_im(im_k() * (kPi / 2)), im_k().quat()) < 1e-15);
    CHECK(qdist(exp_im({0, 0, 0}), Quaternion::one()) == 0);
}

TEST_CASE("norm is multiplicative") {
    for (int it = 0; it < 50; ++it) {
        std::normal_distribution<double> g;
        const Quaternion p{g(rng), g(rng), g(rng), g(rng)};
        const Quaternion q{g(rng), g(rng), g(rng), g(rng)};
        CHECK((p * q).norm() == doctest::Approx(p.norm() * q.norm()).epsilon(1e-13));
    }
}

TEST_CASE("associativity at random triples") {
    std::normal_distribution<double> g;
    for (int it = 0; it < 50; ++it) {
        const Quaternion p{g(rng), g(rng), g(rng), g(rng)};
        const Quaternion q{g(rng), g(rng), g(rng), g(rng)};
        const Quaternion r{g(rng), g(rng), g(rng), g(rng)};
        CHECK(qdist((p * q) * r, p * (q * r)) < 1e-12 * (p.norm() * q.norm() * r.norm()));
    }
}

TEST_CASE("unit quaternions stay unit through long product chains") {
    UnitQuaternion p = UnitQuaternion::one();
    for (int it = 0; it < 10000; ++it) p = p * random_unit_quaternion();
    CHECK(std::abs(p.q.norm() - 1.0) <= 1e-12);
}

TEST_CASE("hopf projection basics") {
    CHECK((hopf_project_k(UnitQuaternion::one()) - im_k()).norm() < 1e-15);

    // the fiber through 1 projects to the single point k
    for (double t : {0.3, 1.2, 2.9, 5.5}) {
        const UnitQuaternion p = UnitQuaternion::exp(im_k() * t);
        CHECK((hopf_project_k(p) - im_k()).norm() < 1e-14);
    }

    // Pi_k(exp(pi/4 i)) = -j by direct multiplication
    const UnitQuaternion p = UnitQuaternion::exp(im_i() * (kPi / 4));
    CHECK((hopf_project_k(p) - (-im_j())).norm() < 1e-14);

    CHECK_THROWS_AS(hopf_project(UnitQuaternion::one(), im_k() * 2.0), std::invalid_argument);
}

TEST_CASE("hopf projection is constant along fibers (variance check)") {
    // the fiber through p is p e^{t k}: tangents form the left-invariant
    // field r_k
    for (int it = 0; it < 20; ++it) {
        const UnitQuaternion p = random_unit_quaternion();
        const ImVector base = hopf_project_k(p);
        double worst = 0;
        for (int s = 0; s < 64; ++s) {
            const UnitQuaternion q = p * UnitQuaternion::exp(im_k() * (2 * kPi * s / 64.0));
            worst = std::max(worst, (hopf_project_k(q) - base).norm());
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("equivariance Pi_k(e^{tu} p) = e^{tu} Pi_k(p) e^{-tu}") {
    std::uniform_real_distribution<double> tdist(-3.0, 3.0);
    for (int it = 0; it < 50; ++it) {
        const UnitQuaternion p = random_unit_quaternion();
        const ImVector u = random_unit_vector();
        const double t = tdist(rng);
        const UnitQuaternion e = UnitQuaternion::exp(u * t);
        const ImVector lhs = hopf_project_k(e * p);
        const ImVector rhs = e.rotate(hopf_project_k(p));
        CHECK((lhs - rhs).norm() < 1e-10);
    }
}

TEST_CASE("killing field evaluation") {
    // rho_i(j) = -2 i x j = -2k
    const ImVector v = killing_eval(KillingField::rotation(im_i()), im_j());
    CHECK((v - im_k() * (-2.0)).norm() < 1e-15);

    // rho_u(p) = p u - u p exactly
    std::normal_distribution<double> g;
    for (int it = 0; it < 50; ++it) {
        const ImVector u = random_unit_vector();
        const ImVector p{g(rng), g(rng), g(rng)};
        const ImVector lhs = killing_eval(KillingField::rotation(u), p);
        const Quaternion rhs = p.quat() * u.quat() - u.quat() * p.quat();
        CHECK(qdist(lhs.quat(), rhs) < 1e-14);
    }

    // l_k(1) = r_k(1) = k
    CHECK(qdist(killing_eval(KillingField::left(im_k()), UnitQuaternion::one()),
                im_k().quat()) == 0);
    CHECK(qdist(killing_eval(KillingField::right(im_k()), UnitQuaternion::one()),
                im_k().quat()) == 0);

    // tau is constant
    CHECK((killing_eval(KillingField::translation(im_j()), ImVector{5, -2, 7}) - im_j()).norm() ==
          0);

    CHECK_THROWS_AS(killing_eval(KillingField::left(im_i()), ImVector{1, 0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(killing_eval(KillingField::translation(im_i()), UnitQuaternion::one()),
                    std::invalid_argument);
}

TEST_CASE("derivative of hopf projection along left translations") {
    // d_1 Pi_k(l_i) = 2 i x k = -2 j
    const ImVector v = d_hopf_k(UnitQuaternion::one(), KillingField::left(im_i()));
    CHECK((v - im_j() * (-2.0)).norm() < 1e-15);

    // field tangent to its own fibers
    const ImVector w = d_hopf_k(UnitQuaternion::one(), KillingField::left(im_k()));
    CHECK(w.norm() < 1e-15);

    CHECK_THROWS_AS(d_hopf_k(UnitQuaternion::one(), KillingField::rotation(im_i())),
                    std::invalid_argument);

    // finite-difference oracle at 100 random (p, u)
    const double h = 1e-5;
    for (int it = 0; it < 100; ++it) {
        const UnitQuaternion p = random_unit_quaternion();
        const ImVector u = random_unit_vector();
        const ImVector plus = hopf_project_k(UnitQuaternion::exp(u * h) * p);
        const ImVector minus = hopf_project_k(UnitQuaternion::exp(u * (-h)) * p);
        const ImVector fd = (plus - minus) / (2.0 * h);
        const ImVector an = d_hopf_k(p, KillingField::left(u));
        CHECK((fd - an).norm() < 1e-6);
    }
}

TEST_CASE("spherical distance") {
    CHECK(geodesic_distance_s2(im_k(), im_k()) == 0);
    CHECK(geodesic_distance_s2(im_k(), -im_k()) == doctest::Approx(kPi));
    CHECK(geodesic_distance_s2(im_i(), im_j()) == doctest::Approx(kPi / 2));
    CHECK_THROWS_AS(geodesic_distance_s2(im_i() * 0.5, im_j()), std::invalid_argument);

    // clamping keeps nearly-coincident inputs finite
    const ImVector v = random_unit_vector();
    CHECK(std::isfinite(geodesic_distance_s2(v, v)));
}
