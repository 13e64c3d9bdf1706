#include <doctest.h>

#include "scalpos/charts.hpp"
#include "scalpos/jetcalc.hpp"
#include "scalpos/rng.hpp"

using namespace scalpos;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd r(static_cast<int>(v.size()));
    int i = 0;
    for (double x : v) r[i++] = x;
    return r;
}

}  // namespace

TEST_CASE("jet arithmetic differentiates elementary composites exactly") {
    // f(x, y) = sin(x) * y^2 + exp(x * y) at (0.7, -0.4)
    const double x = 0.7, y = -0.4;
    Jet jx = Jet::variable(x, 0, 2), jy = Jet::variable(y, 1, 2);
    Jet f = sin(jx) * jy * jy + exp(jx * jy);

    const double e = std::exp(x * y);
    CHECK(f.v == doctest::Approx(std::sin(x) * y * y + e).epsilon(1e-14));
    CHECK(f.g[0] == doctest::Approx(std::cos(x) * y * y + y * e).epsilon(1e-14));
    CHECK(f.g[1] == doctest::Approx(2 * std::sin(x) * y + x * e).epsilon(1e-14));
    CHECK(f.h(0, 0) == doctest::Approx(-std::sin(x) * y * y + y * y * e).epsilon(1e-14));
    CHECK(f.h(0, 1) == doctest::Approx(2 * std::cos(x) * y + e + x * y * e).epsilon(1e-14));
    CHECK(f.h(1, 1) == doctest::Approx(2 * std::sin(x) + x * x * e).epsilon(1e-14));
    CHECK(f.h(0, 1) == f.h(1, 0));
}

TEST_CASE("radial helpers match direct formulas and are smooth at zero") {
    for (double t : {1e-12, 1e-3, 0.2, 0.3, 2.0, 9.0}) {
        Jet jt = Jet::variable(t, 0, 1);
        const double x = std::sqrt(t);
        CHECK(cos_sqrt(jt).v == doctest::Approx(std::cos(x)).epsilon(1e-14));
        CHECK(sinc_sqrt(jt).v == doctest::Approx(t > 0 ? std::sin(x) / x : 1.0).epsilon(1e-13));
        CHECK(vers_sqrt(jt).v == doctest::Approx((1 - std::cos(x)) / t).epsilon(1e-12));

        // first derivative vs central difference in t
        const double h = 1e-6 * (1 + t);
        auto fd = [&](auto fn) {
            return (fn(Jet(t + h)).v - fn(Jet(t - h)).v) / (2 * h);
        };
        if (t > 1e-6) {
            CHECK(cos_sqrt(jt).g[0] ==
                  doctest::Approx(fd([](Jet a) { return cos_sqrt(a); })).epsilon(1e-5));
            CHECK(sinc_sqrt(jt).g[0] ==
                  doctest::Approx(fd([](Jet a) { return sinc_sqrt(a); })).epsilon(1e-5));
            CHECK(vers_sqrt(jt).g[0] ==
                  doctest::Approx(fd([](Jet a) { return vers_sqrt(a); })).epsilon(1e-5));
        }
    }
}

TEST_CASE("evaluate_jet2: parabola (u, u^2) at u = 1") {
    auto eval = [](std::span<const Jet> u, std::span<Jet> out) {
        out[0] = u[0];
        out[1] = u[0] * u[0];
    };
    ImmersionChart chart(1, 2, Box::cube(1, -2, 2), eval, "parabola");
    Jet2 jet = evaluate_jet2(chart, vec({1.0}));

    CHECK(jet.value[0] == 1.0);
    CHECK(jet.value[1] == 1.0);
    CHECK(jet.jacobian(0, 0) == 1.0);
    CHECK(jet.jacobian(1, 0) == 2.0);
    CHECK(jet.hessian[0](0, 0) == 0.0);
    CHECK(jet.hessian[1](0, 0) == 2.0);
}

TEST_CASE("evaluate_jet2: circle at u = 0") {
    auto eval = [](std::span<const Jet> u, std::span<Jet> out) {
        out[0] = cos(u[0]);
        out[1] = sin(u[0]);
    };
    ImmersionChart chart(1, 2, Box::cube(1, -2, 2), eval, "circle");
    Jet2 jet = evaluate_jet2(chart, vec({0.0}));

    CHECK(jet.jacobian(0, 0) == doctest::Approx(0.0));
    CHECK(jet.jacobian(1, 0) == doctest::Approx(1.0));
    CHECK(jet.hessian[0](0, 0) == doctest::Approx(-1.0));
    CHECK(jet.hessian[1](0, 0) == doctest::Approx(0.0));
}

TEST_CASE("evaluate_jet2: rejects points outside the domain") {
    ImmersionChart chart = flat_plane_chart();
    CHECK_THROWS_AS(evaluate_jet2(chart, vec({5.0, 0.0})), DomainError);
}

TEST_CASE("finite differences agree with dual jets on random cubic maps") {
    // The dual scheme is exact on polynomials, so it is the oracle here.
    ImmersionChart chart = random_polynomial_chart(2, 4, 3, 17);
    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd u = rng.uniform_vector(chart.domain().lo, chart.domain().hi, 0.2);
        Jet2 exact = evaluate_jet2(chart, u, JetScheme::Dual);
        Jet2 fd = evaluate_jet2(chart, u, JetScheme::FiniteDifference);
        CHECK((fd.jacobian - exact.jacobian).cwiseAbs().maxCoeff() < 1e-6);
        for (int a = 0; a < 4; ++a)
            CHECK((fd.hessian[a] - exact.hessian[a]).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("frame_and_metric: identity inclusion R^2 in R^3") {
    Jet2 jet;
    jet.point = vec({0.0, 0.0});
    jet.value = vec({0.0, 0.0, 0.0});
    jet.jacobian.setZero(3, 2);
    jet.jacobian(0, 0) = 1.0;
    jet.jacobian(1, 1) = 1.0;
    jet.hessian.assign(3, Eigen::MatrixXd::Zero(2, 2));

    FrameData frame = frame_and_metric(jet);
    CHECK((frame.tangent_frame - jet.jacobian).norm() < 1e-14);
    Eigen::Vector3d e3(0, 0, 1);
    CHECK((frame.normal_projector * e3 - e3).norm() < 1e-14);
    CHECK((frame.normal_projector * jet.jacobian).norm() < 1e-14);
}

TEST_CASE("frame_and_metric: Gram-Schmidt on (2,0,0), (1,1,0)") {
    Jet2 jet;
    jet.point = vec({0.0, 0.0});
    jet.value = vec({0.0, 0.0, 0.0});
    jet.jacobian.resize(3, 2);
    jet.jacobian << 2, 1, 0, 1, 0, 0;
    jet.hessian.assign(3, Eigen::MatrixXd::Zero(2, 2));

    FrameData frame = frame_and_metric(jet);
    CHECK(frame.tangent_frame(0, 0) == doctest::Approx(1.0));
    CHECK(frame.tangent_frame(1, 0) == doctest::Approx(0.0));
    CHECK(frame.tangent_frame(1, 1) == doctest::Approx(1.0));
    CHECK(frame.tangent_frame(0, 1) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("frame_and_metric: radial vector is normal to the sphere") {
    ImmersionChart sphere = round_sphere_chart(2, 3);
    Rng rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::VectorXd u = rng.uniform_vector(sphere.domain().lo, sphere.domain().hi, 0.1);
        Jet2 jet = evaluate_jet2(sphere, u);
        FrameData frame = frame_and_metric(jet);
        CHECK((frame.normal_projector * jet.value - jet.value).norm() < 1e-10);
    }
}

TEST_CASE("frame_and_metric: rank deficiency raises ImmersionError") {
    Jet2 jet;
    jet.point = vec({0.0, 0.0});
    jet.value = vec({0.0, 0.0, 0.0});
    jet.jacobian.resize(3, 2);
    jet.jacobian << 1, 1, 1, 1, 0, 0;
    jet.hessian.assign(3, Eigen::MatrixXd::Zero(2, 2));
    CHECK_THROWS_AS(frame_and_metric(jet), ImmersionError);
}

TEST_CASE("curvature: unit round S^2 has scal = 2 and |H| = 2") {
    ImmersionChart sphere = round_sphere_chart(2, 3);
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXd u = rng.uniform_vector(sphere.domain().lo, sphere.domain().hi, 0.05);
        CurvatureSample c = curvature_at(sphere, u);
        CHECK(c.scal == doctest::Approx(2.0).epsilon(1e-10));
        CHECK(c.mean_norm == doctest::Approx(2.0).epsilon(1e-10));
        REQUIRE(c.xi.has_value());
        CHECK(c.xi->norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("curvature: flat plane is totally geodesic, xi flagged absent") {
    ImmersionChart plane = flat_plane_chart();
    CurvatureSample c = curvature_at(plane, vec({0.3, -0.7}));
    CHECK(c.scal == doctest::Approx(0.0));
    CHECK(c.sff_norm2 == doctest::Approx(0.0));
    CHECK(!c.xi.has_value());
}

TEST_CASE("curvature: Clifford torus is scalar flat") {
    ImmersionChart torus = clifford_torus_chart();
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXd u = rng.uniform_vector(torus.domain().lo, torus.domain().hi, 0.05);
        CurvatureSample c = curvature_at(torus, u);
        CHECK(std::abs(c.scal) < 1e-10);
    }
}

TEST_CASE("curvature: sff entries are normal to the tangent space") {
    ImmersionChart chart = perturbed_sphere_chart(3, 6, 0.05, 7);
    Rng rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::VectorXd u = rng.uniform_vector(chart.domain().lo, chart.domain().hi, 0.1);
        Jet2 jet = evaluate_jet2(chart, u);
        FrameData frame = frame_and_metric(jet);
        CurvatureSample c = second_fundamental_form(jet, frame);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                Eigen::VectorXd tang =
                    frame.tangent_frame.transpose() * c.alpha(i, j, 3);
                CHECK(tang.norm() < 1e-8);
            }
    }
}

TEST_CASE("intrinsic oracle: classical values") {
    CHECK(intrinsic_scalar_oracle(round_sphere_chart(2, 3), vec({0.2, -0.1})) ==
          doctest::Approx(2.0).epsilon(1e-3));
    CHECK(std::abs(intrinsic_scalar_oracle(flat_plane_chart(), vec({0.4, 0.9}))) < 1e-6);
}

TEST_CASE("intrinsic oracle agrees with the Gauss-equation pipeline") {
    Rng rng(43);
    for (std::uint64_t seed : {101u, 102u, 103u, 104u, 105u}) {
        ImmersionChart chart = perturbed_sphere_chart(2, 4, 0.08, seed);
        for (int trial = 0; trial < 10; ++trial) {
            Eigen::VectorXd u = rng.uniform_vector(chart.domain().lo, chart.domain().hi, 0.1);
            const double gauss = curvature_at(chart, u).scal;
            const double intrinsic = intrinsic_scalar_oracle(chart, u);
            CHECK(std::abs(gauss - intrinsic) <= 1e-3 * (1 + std::abs(intrinsic)));
        }
    }
}

TEST_CASE("intrinsic oracle converges at order 2 in the step") {
    ImmersionChart chart = perturbed_sphere_chart(2, 4, 0.08, 3);
    Eigen::VectorXd u = vec({0.25, -0.35});
    const double exact = curvature_at(chart, u).scal;
    const double e1 = std::abs(intrinsic_scalar_oracle(chart, u, 2e-2) - exact);
    const double e2 = std::abs(intrinsic_scalar_oracle(chart, u, 1e-2) - exact);
    CHECK(e1 / e2 > 3.0);  // order 2 gives ~4
}

TEST_CASE("scan: round S^4 min scal is n(n-1) = 12") {
    ImmersionChart sphere = round_sphere_chart(4, 5);
    ScanReport rep = scan_scalar_positivity(sphere, GridSpec::uniform(4, 5));
    CHECK(rep.samples == 625);
    CHECK(rep.min_scal == doctest::Approx(12.0).epsilon(1e-3));
    CHECK(rep.scalar_positive);
    CHECK(rep.immersion_ok);
}

TEST_CASE("scan: flat torus is not scalar positive") {
    ImmersionChart torus = clifford_torus_chart();
    ScanReport rep = scan_scalar_positivity(torus, GridSpec::uniform(2, 11));
    CHECK(std::abs(rep.min_scal) < 1e-6);
    CHECK(!rep.scalar_positive);
}

TEST_CASE("scan: thin tube around equatorial S^1 in S^4 is scalar positive") {
    // Dominant curvature term (k-1)(k-2)/r^2 = 200 at r = 0.1.
    ImmersionChart tube = tube_s1_in_s4_chart(0.1);
    ScanReport rep = scan_scalar_positivity(tube, GridSpec::uniform(3, 9));
    CHECK(rep.scalar_positive);
    CHECK(rep.min_scal > 150.0);
    CHECK(rep.min_scal < 250.0);
}

TEST_CASE("property: scal is invariant under affine reparametrization") {
    ImmersionChart chart = perturbed_sphere_chart(2, 4, 0.06, 12);
    Rng rng(77);
    Eigen::MatrixXd A(2, 2);
    A << 0.8, 0.3, -0.2, 1.1;
    Eigen::VectorXd b = vec({0.05, -0.1});

    Box small = Box::cube(2, -0.4, 0.4);
    ImmersionChart re = chart.precompose_affine(A, b, small);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXd w = rng.uniform_vector(small.lo, small.hi, 0.1);
        const double s1 = curvature_at(re, w).scal;
        const double s2 = curvature_at(chart, A * w + b).scal;
        CHECK(std::abs(s1 - s2) < 1e-6);
    }
}

TEST_CASE("property: ambient dilation by c scales scal by c^-2") {
    ImmersionChart chart = perturbed_sphere_chart(2, 4, 0.06, 21);
    ImmersionChart dilated = chart.scale_ambient(2.5);
    Rng rng(78);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXd u = rng.uniform_vector(chart.domain().lo, chart.domain().hi, 0.1);
        const double s = curvature_at(chart, u).scal;
        const double sd = curvature_at(dilated, u).scal;
        CHECK(std::abs(sd - s / (2.5 * 2.5)) < 1e-6 * (1 + std::abs(s)));
    }
}

TEST_CASE("property: scal is invariant under ambient rigid motions") {
    ImmersionChart chart = perturbed_sphere_chart(2, 4, 0.06, 33);
    Rng rng(79);
    Eigen::MatrixXd Q = rng.orthogonal(4);
    Eigen::VectorXd c = rng.normal_vector(4);
    ImmersionChart moved = chart.postcompose_isometry(Q, c);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXd u = rng.uniform_vector(chart.domain().lo, chart.domain().hi, 0.1);
        CHECK(std::abs(curvature_at(moved, u).scal - curvature_at(chart, u).scal) < 1e-9);
    }
}
