#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ssns/detail/rng.hpp"
#include "ssns/fit.hpp"
#include "ssns/norms.hpp"
#include "ssns/semigroup.hpp"

using namespace ssns;

namespace {

double sup_rel(const VectorXd& got, const VectorXd& want) {
    return (got - want).cwiseAbs().maxCoeff() / want.cwiseAbs().maxCoeff();
}

double sup_rel(const MatrixXd& got, const MatrixXd& want) {
    return (got - want).cwiseAbs().maxCoeff() / want.cwiseAbs().maxCoeff();
}

RadialField<double> gaussian_field(std::shared_ptr<const RadialGrid> grid) {
    RadialField<double> f(grid);
    f.values = (-grid->rho().array().square() / 4.0).exp();
    return f;
}

}  // namespace

TEST_CASE("drift semigroup decays its Gaussian eigenfunction at every horizon") {
    auto grid = make_radial_grid(3);
    RadialField<double> f = gaussian_field(grid);
    // L_{1/2} G = -G in three dimensions, across both evolution branches
    for (double s : {0.004, 0.5, 3.0, 10.0, 25.0}) {
        RadialField<double> out = semigroup_L(f, s);
        VectorXd want = std::exp(-s) * f.values;
        INFO("s = " << s);
        CHECK(sup_rel(out.values, want) < 5e-9);
    }
}

TEST_CASE("scaling weight shifts the decay rate additively") {
    auto grid = make_radial_grid(3);
    RadialField<double> f = gaussian_field(grid);
    const double s = 2.0;
    // L_c G = (c - 3/2) G
    RadialField<double> heavy = semigroup_L(f, s, 0, 1.0);
    CHECK(sup_rel(heavy.values, VectorXd(std::exp(-0.5 * s) * f.values)) < 5e-9);
    RadialField<double> plain = semigroup_L(f, s, 0, 0.0);
    CHECK(sup_rel(plain.values, VectorXd(std::exp(-1.5 * s) * f.values)) < 5e-9);
}

TEST_CASE("odd-sector Gaussian mode decays at rate 3/2") {
    auto grid = make_radial_grid(3);
    RadialField<double> f(grid, Parity::odd);
    f.values = grid->rho().array() * (-grid->rho().array().square() / 4.0).exp();
    for (double s : {1.0, 6.0}) {
        RadialField<double> out = semigroup_L(f, s, 1);
        CHECK(sup_rel(out.values, VectorXd(std::exp(-1.5 * s) * f.values)) < 5e-9);
    }
}

TEST_CASE("semigroup composition law on a random seed") {
    auto grid = make_radial_grid(3);
    RadialField<double> f = detail::random_radial_field(grid, 23u);
    RadialField<double> two_step = semigroup_L(semigroup_L(f, 0.7), 1.6);
    RadialField<double> one_step = semigroup_L(f, 2.3);
    CHECK(sup_rel(two_step.values, one_step.values) < 1e-7);
    CHECK(semigroup_L(f, 0.0).values == f.values);
}

TEST_CASE("X-norm of evolved random seeds decays at least at rate 1/4") {
    auto grid = make_radial_grid(3);
    for (unsigned seed = 0; seed < 20; ++seed) {
        RadialField<double> f = detail::random_radial_field(grid, 100u + seed);
        double base = x_norm(f);
        for (double s : {2.0, 10.0}) {
            double decayed = x_norm(semigroup_L(f, s));
            INFO("seed " << seed << " s " << s);
            CHECK(decayed * std::exp(0.25 * s) <= base);
        }
    }
}

TEST_CASE("axisymmetric semigroup decays the Gaussian eigenfield componentwise") {
    auto g = make_meridional_grid();
    MatrixXd gauss(g->nr(), g->nz());
    for (int i = 0; i < g->nr(); ++i)
        for (int j = 0; j < g->nz(); ++j)
            gauss(i, j) = std::exp(-(g->r.rho[i] * g->r.rho[i] + g->z.z[j] * g->z.z[j]) / 4.0);
    MatrixXd omega = g->r.rho.asDiagonal() * gauss;   // drift eigenvalue -1
    MatrixXd gamma = g->r.rho.cwiseProduct(g->r.rho).asDiagonal() * gauss;  // -3/2
    AxiField<double> f = field_from_vorticity(g, omega, gamma);

    for (double s : {0.005, 0.8, 4.0}) {
        AxiField<double> out = semigroup_L(f, s);
        INFO("s = " << s);
        CHECK(sup_rel(out.gamma, MatrixXd(std::exp(-1.5 * s) * gamma)) < 2e-7);
        CHECK(sup_rel(out.omega, MatrixXd(std::exp(-s) * omega)) < 2e-7);
        // the stream solve amplifies the stepper's vorticity error ~15x,
        // so the short-horizon (stepper-branch) psi tolerance is looser
        double psi_tol = s < 0.01 ? 1e-5 : 2e-7;
        CHECK(sup_rel(out.psi, MatrixXd(std::exp(-s) * f.psi)) < psi_tol);
    }
}

TEST_CASE("axisymmetric kernel and stepper branches both match a closed form") {
    // Superpositions of r exp(-a r^2 - b (z - zc)^2) evolve in closed form:
    // the meridional heat flow sends each term to
    //   r (1+4at)^{-2} exp(-a r^2/(1+4at)) (1+4bt)^{-1/2} exp(-b (z-zc)^2/(1+4bt)),
    // and the drift semigroup samples that flow at stretched coordinates. Both
    // dispatch branches are checked against the same exact answer, so this
    // catches an error in either one rather than only their disagreement.
    auto g = make_meridional_grid();
    struct Term {
        double amp, a, b, zc;
    };
    const std::vector<Term> swirl_terms = {{0.8, 0.35, 0.2, -0.8}, {-0.5, 0.6, 0.45, 1.3}};
    const std::vector<Term> vort_terms = {{1.0, 0.3, 0.5, 1.0}, {0.6, 0.55, 0.25, -0.6}};

    auto sample = [&](const std::vector<Term>& terms, double t, double stretch) {
        MatrixXd vals = MatrixXd::Zero(g->nr(), g->nz());
        for (const Term& term : terms) {
            double ca = 1.0 + 4.0 * term.a * t;
            double cb = 1.0 + 4.0 * term.b * t;
            for (int i = 0; i < g->nr(); ++i) {
                double r = stretch * g->r.rho[i];
                double radial = term.amp * r * std::exp(-term.a * r * r / ca) / (ca * ca);
                for (int j = 0; j < g->nz(); ++j) {
                    double dz = stretch * g->z.z[j] - term.zc;
                    vals(i, j) += radial * std::exp(-term.b * dz * dz / cb) / std::sqrt(cb);
                }
            }
        }
        return vals;
    };

    MatrixXd swirl0 = sample(swirl_terms, 0.0, 1.0);
    MatrixXd omega0 = sample(vort_terms, 0.0, 1.0);
    AxiField<double> f = field_from_vorticity(g, omega0, MatrixXd(g->r.rho.asDiagonal() * swirl0));

    const double s = std::log1p(0.3);  // heat time 0.3, near the dispatch threshold
    const double stretch = std::exp(0.5 * s);
    MatrixXd swirl_exact = std::exp(0.5 * s) * sample(swirl_terms, 0.3, stretch);
    MatrixXd gamma_exact = g->r.rho.asDiagonal() * swirl_exact;
    MatrixXd omega_exact = std::exp(s) * sample(vort_terms, 0.3, stretch);

    HeatOptions force_kernel;
    force_kernel.merid_kernel_min_time = 0.1;
    HeatOptions force_stepper;
    force_stepper.merid_kernel_min_time = 1.0;

    AxiField<double> via_kernel = semigroup_L(f, s, force_kernel);
    AxiField<double> via_stepper = semigroup_L(f, s, force_stepper);
    CHECK(sup_rel(via_kernel.gamma, gamma_exact) < 2e-6);
    CHECK(sup_rel(via_kernel.omega, omega_exact) < 2e-6);
    CHECK(sup_rel(via_stepper.gamma, gamma_exact) < 2e-6);
    CHECK(sup_rel(via_stepper.omega, omega_exact) < 2e-6);
    CHECK(sup_rel(via_stepper.psi, via_kernel.psi) < 1e-4);
}

TEST_CASE("axisymmetric evolution preserves solenoidality and symmetry") {
    auto g = make_meridional_grid();
    AxiField<double> f = detail::random_axi_field(g, 9u, 3, 3.0, true);
    AxiField<double> out = semigroup_L(f, 1.0);
    double scale = velocities(out).uz.cwiseAbs().maxCoeff();
    CHECK(divergence(out).cwiseAbs().maxCoeff() < 1e-10 * scale);
    CHECK(is_equatorial(out, 1e-9));
}

TEST_CASE("propagator spec validation") {
    PropagatorSpec spec;
    CHECK_NOTHROW(spec.validate());
    spec.time_step = 0.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.time_step = 0.01;
    spec.scheme_order = 3;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("exponent fits recover planted rates") {
    std::vector<std::pair<double, double>> series;
    for (int k = 0; k < 40; ++k) {
        double t = 1.0 + 0.25 * k;
        series.emplace_back(t, std::exp(-0.25 * t));
    }
    FitResult fit = decay_fit(series, 1.0, 11.0, Regressor::time);
    CHECK(fit.exponent == Catch::Approx(-0.25).margin(1e-10));
    CHECK(fit.r_squared > 1.0 - 1e-12);

    series.clear();
    for (int k = 0; k < 40; ++k) {
        double t = 1.0 + 0.25 * k;
        series.emplace_back(t, 2.0 * std::pow(t, -0.375));
    }
    fit = decay_fit(series, 1.0, 11.0, Regressor::log_time);
    CHECK(fit.exponent == Catch::Approx(-0.375).margin(1e-12));

    // noisy exponential still lands near the planted rate
    series.clear();
    for (int k = 0; k < 60; ++k) {
        double t = 1.0 + 0.2 * k;
        series.emplace_back(t, std::exp(-0.25 * t) * (1.0 + 0.01 * std::sin(3.0 * t)));
    }
    fit = decay_fit(series, 1.0, 13.0, Regressor::time);
    CHECK(fit.exponent == Catch::Approx(-0.25).margin(0.01));

    CHECK_THROWS_AS(decay_fit(series, 5.0, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(decay_fit(series, 1.0, 1.3), std::invalid_argument);  // < 8 samples
    series[3].second = -1.0;
    CHECK_THROWS_AS(decay_fit(series, 1.0, 13.0), std::invalid_argument);
}
