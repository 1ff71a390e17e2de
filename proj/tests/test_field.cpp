/// Field containers, velocities, divergence, and norm oracles.
///
/// PURPOSE: validates the (stream, swirl, vorticity) representation and the
/// norm layer against closed-form Gaussian values, and pins the structural
/// guarantees the solvers rely on (exact discrete solenoidality, equatorial
/// projection, axis regularity).
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "ssns/detail/rng.hpp"
#include "ssns/field.hpp"
#include "ssns/norms.hpp"

using namespace ssns;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

RadialField<double> gaussian_quarter(std::shared_ptr<const RadialGrid> grid) {
    Eigen::VectorXd v(grid->size());
    for (int j = 0; j < grid->size(); ++j)
        v[j] = std::exp(-0.25 * grid->rho()[j] * grid->rho()[j]);
    return RadialField<double>(std::move(grid), std::move(v));
}

}  // namespace

TEST_CASE("x_norm of the reference Gaussian matches its closed form", "[field][norms]") {
    auto f = gaussian_quarter(make_radial_grid(3));
    double l2_exact = std::pow(2.0 * kPi, 0.75);
    double l4_exact = std::pow(kPi, 0.375);
    REQUIRE_THAT(l2_norm(f), WithinRel(l2_exact, 1e-8));
    REQUIRE_THAT(l4_norm(f), WithinRel(l4_exact, 1e-8));
    REQUIRE_THAT(x_norm(f), WithinRel(l2_exact + l4_exact, 1e-8));
}

TEST_CASE("general p norms match Gaussian closed forms", "[field][norms]") {
    auto f = gaussian_quarter(make_radial_grid(3));
    // ||exp(-|y|^2/4)||_p = (4 pi / p)^(3/(2p))
    for (double p : {1.2, 2.0, 3.0, 4.0, 6.0}) {
        INFO("p = " << p);
        REQUIRE_THAT(lp_norm(f, p), WithinRel(std::pow(4.0 * kPi / p, 1.5 / p), 1e-8));
    }
}

TEST_CASE("radial gradient norm matches the Gaussian closed form", "[field][norms]") {
    auto f = gaussian_quarter(make_radial_grid(3));
    // |grad f| = (rho/2) exp(-rho^2/4); its L2 integral is (3/2) (2 pi)^(3/2) / 2
    double exact = std::sqrt(1.5 * 0.5 * std::pow(2.0 * kPi, 1.5));
    REQUIRE_THAT(grad_lp_norm(f, 2.0), WithinRel(exact, 1e-8));
}

TEST_CASE("swirl-only field norms match closed forms", "[field][norms]") {
    auto grid = make_meridional_grid();
    const auto& rho = grid->r.rho;
    const auto& zz = grid->z.z;
    Eigen::MatrixXd gamma(grid->nr(), grid->nz());
    for (int i = 0; i < grid->nr(); ++i)
        for (int j = 0; j < grid->nz(); ++j)
            gamma(i, j) = rho[i] * rho[i] *
                          std::exp(-0.25 * (rho[i] * rho[i] + zz[j] * zz[j]));
    Eigen::MatrixXd psi = Eigen::MatrixXd::Zero(grid->nr(), grid->nz());
    AxiField<double> f = field_from_stream(grid, psi, gamma);
    // u = (0, r exp(-|y|^2/4), 0): ||u||_L2^2 = 2 (2 pi)^(3/2)
    REQUIRE_THAT(l2_norm(f), WithinRel(std::sqrt(2.0 * std::pow(2.0 * kPi, 1.5)), 1e-8));
    // ||u||_L4^4 = integral r^4 exp(-|y|^2) = (8/3) pi^(3/2) ... moments of x^2+y^2
    REQUIRE_THAT(l4_norm(f), WithinRel(std::pow(2.0 * std::pow(kPi, 1.5), 0.25), 1e-8));
}

TEST_CASE("discrete divergence of stream-derived fields vanishes", "[field]") {
    auto grid = make_meridional_grid(33, 49);
    auto f = detail::random_axi_field(grid, 17);
    double scale = linf_norm(f);
    REQUIRE(scale > 0.0);
    REQUIRE(divergence(f).cwiseAbs().maxCoeff() < 1e-10 * scale);
}

TEST_CASE("velocities stay finite near the axis", "[field]") {
    auto f = detail::random_axi_field(make_meridional_grid(33, 49), 3);
    auto v = velocities(f);
    REQUIRE(v.ur.allFinite());
    REQUIRE(v.ut.allFinite());
    REQUIRE(v.uz.allFinite());
}

TEST_CASE("stream-to-vorticity matches the analytic elliptic image", "[field]") {
    // psi = r^2 g(q), q = r^2 + z^2, g = exp(-q/4): E^2 psi = r^2 g (q - 10)/4,
    // omega = -E^2 psi / r = r g (10 - q)/4
    auto fill = [](const MeridionalGrid& g, Eigen::MatrixXd& psi, Eigen::MatrixXd& wex) {
        psi.resize(g.nr(), g.nz());
        wex.resize(g.nr(), g.nz());
        for (int i = 0; i < g.nr(); ++i)
            for (int j = 0; j < g.nz(); ++j) {
                double r = g.r.rho[i], z = g.z.z[j];
                double q = r * r + z * z;
                double gg = std::exp(-0.25 * q);
                psi(i, j) = r * r * gg;
                wex(i, j) = 0.25 * r * gg * (10.0 - q);
            }
    };
    Eigen::MatrixXd psi, wex;
    auto coarse = make_meridional_grid();
    fill(*coarse, psi, wex);
    REQUIRE((vorticity_of_stream(*coarse, psi) - wex).cwiseAbs().maxCoeff() < 2e-4);

    auto fine = make_meridional_grid(72, 81);
    fill(*fine, psi, wex);
    REQUIRE((vorticity_of_stream(*fine, psi) - wex).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("equatorial projection is idempotent and detected", "[field]") {
    auto grid = make_meridional_grid(25, 33);
    auto f = detail::random_axi_field(grid, 11);
    symmetrize_equatorial(f);
    REQUIRE(is_equatorial(f));
    AxiField<double> g = f;
    symmetrize_equatorial(g);
    REQUIRE((g.gamma - f.gamma).cwiseAbs().maxCoeff() < 1e-14);
    REQUIRE((g.psi - f.psi).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("seeded field generators are reproducible", "[field]") {
    auto grid = make_radial_grid(3, 64, 4.0, 40.0);
    auto a = detail::random_radial_field(grid, 123);
    auto b = detail::random_radial_field(grid, 123);
    auto c = detail::random_radial_field(grid, 124);
    REQUIRE((a.values - b.values).isZero(0.0));
    REQUIRE((a.values - c.values).cwiseAbs().maxCoeff() > 1e-6);
}

TEST_CASE("compactly supported fields vanish beyond their radius", "[field]") {
    auto grid = make_radial_grid(3, 96, 4.0, 40.0);
    auto f = detail::random_compact_radial_field(grid, 7, 5.0);
    for (int j = 0; j < grid->size(); ++j)
        if (grid->rho()[j] >= 5.0) REQUIRE(f.values[j] == 0.0);
    REQUIRE(linf_norm(f) > 0.0);
}

TEST_CASE("real_part rejects large imaginary residue", "[field]") {
    REQUIRE(real_part(Complex(2.0, 1e-15)) == 2.0);
    REQUIRE_THROWS(real_part(Complex(2.0, 1e-3)));
}

TEST_CASE("complex rotation preserves norms", "[field][norms]") {
    auto f = gaussian_quarter(make_radial_grid(3, 96, 4.0, 40.0));
    auto fc = to_complex(f);
    for (auto& v : fc.values) v *= Complex(0.0, 1.0);
    REQUIRE_THAT(l2_norm(fc), WithinRel(l2_norm(f), 1e-13));
    REQUIRE_THAT(l4_norm(fc), WithinRel(l4_norm(f), 1e-13));
}

TEST_CASE("weighted decay norm is finite and dominates the sup", "[field][norms]") {
    auto f = gaussian_quarter(make_radial_grid(3, 96, 4.0, 40.0));
    double yn = y_norm(f);
    REQUIRE(std::isfinite(yn));
    REQUIRE(yn >= linf_norm(f));
}
