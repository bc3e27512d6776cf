#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "bnkit/coherent.hpp"
#include "bnkit/numerics.hpp"

using namespace bnkit;

namespace {

CoherentAmplitude random_amplitude(const GridPtr& grid, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> n(0.0, scale);
    CoherentAmplitude f(grid);
    for (std::size_t node = 0; node < grid->n_nodes(); ++node)
        for (int lambda = 0; lambda < 2; ++lambda) f.at(node, lambda) = {n(rng), n(rng)};
    return f;
}

}  // namespace

TEST_SUITE_BEGIN("coherent");

TEST_CASE("bn amplitude vanishes at zero velocity") {
    auto grid = MomentumGrid::build(1e-2, 1.0, 16, 8, 16);
    CoherentAmplitude f = bn_amplitude({0, 0, 0}, grid, 1.0 / 137.0);
    for (std::size_t node = 0; node < grid->n_nodes(); ++node) {
        CHECK(f.at(node, 0) == Complex{0.0, 0.0});
        CHECK(f.at(node, 1) == Complex{0.0, 0.0});
    }
    CHECK_THROWS_AS(bn_amplitude({1.0, 0, 0}, grid, 1.0), std::invalid_argument);
}

TEST_CASE("bn amplitude norm matches the 1D angular oracle") {
    const double alpha = 1.0 / 137.0;
    const Vec3 v{0.3, 0, 0};
    auto grid = MomentumGrid::build(1e-3, 1.0, 64, 32, 64);
    const double n2 = norm2(bn_amplitude(v, grid, alpha));
    const double oracle = alpha * std::log(1.0 / 1e-3) * bn_angular_factor(0.3);
    CHECK(std::abs(n2 - oracle) <= 1e-6 * oracle);
}

TEST_CASE("bn amplitude equals the defining formula at grid nodes") {
    const double alpha = 1.0 / 137.0;
    const Vec3 v{0.21, -0.1, 0.05};
    auto grid = MomentumGrid::build(1e-2, 1.0, 16, 8, 16);
    CoherentAmplitude f = bn_amplitude(v, grid, alpha);
    // every 17th node, ~100 spot checks
    for (std::size_t node = 0; node < grid->n_nodes(); node += 17) {
        const auto& basis = grid->angular(node).basis;
        const double r = grid->radius(node);
        const double delta = 1.0 - v.dot(basis.khat);
        for (int lambda = 0; lambda < 2; ++lambda) {
            const Complex expected =
                std::sqrt(alpha) / (r * std::sqrt(r) * delta) * v.dot(basis.eps(lambda));
            CHECK(f.at(node, lambda) == expected);
        }
    }
}

TEST_CASE("overlap identities") {
    auto grid = MomentumGrid::build(0.1, 1.0, 8, 8, 8);
    std::mt19937_64 rng(12345);
    CoherentAmplitude f = random_amplitude(grid, rng, 0.4);
    CoherentAmplitude zero(grid);

    CHECK(coherent_overlap(f, f) == Complex{1.0, 0.0});
    const Complex vac = coherent_overlap(f, zero);
    CHECK(std::abs(vac - std::exp(Complex{-0.5 * norm2(f), 0.0})) <= 1e-14);

    for (int i = 0; i < 20; ++i) {
        CoherentAmplitude a = random_amplitude(grid, rng, 0.5);
        CoherentAmplitude b = random_amplitude(grid, rng, 0.5);
        const double lhs = std::norm(coherent_overlap(a, b));
        const double rhs = std::exp(-norm2(a - b));
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
    }
}

TEST_CASE("weyl composition factor") {
    auto grid = MomentumGrid::build(0.1, 1.0, 8, 8, 8);
    std::mt19937_64 rng(99);
    CoherentAmplitude g = random_amplitude(grid, rng, 0.3);
    CHECK(weyl_compose_phase(g, g) == Complex{1.0, 0.0});

    const Complex ig_phase = weyl_compose_phase(g, g * Complex{0.0, 1.0});
    const Complex expected = std::exp(Complex{0.0, -norm2(g)});
    CHECK(std::abs(ig_phase - expected) <= 1e-13);

    for (int i = 0; i < 25; ++i) {
        CoherentAmplitude a = random_amplitude(grid, rng);
        CoherentAmplitude b = random_amplitude(grid, rng);
        CHECK(std::abs(std::abs(weyl_compose_phase(a, b)) - 1.0) < 1e-14);
    }
}

TEST_CASE("displacement satisfies the Weyl group law") {
    auto grid = MomentumGrid::build(0.1, 1.0, 8, 8, 8);
    std::mt19937_64 rng(7);
    CoherentState vac = CoherentState::vacuum(grid);

    CoherentAmplitude g = random_amplitude(grid, rng, 0.3);
    const Complex ov = state_overlap(vac, displace(vac, g));
    CHECK(std::abs(ov - std::exp(Complex{-0.5 * norm2(g), 0.0})) <= 1e-13);

    // identity displacement
    CoherentAmplitude zero(grid);
    CoherentState s{random_amplitude(grid, rng, 0.3), 0.37};
    CoherentState s_id = displace(s, zero);
    CHECK(s_id.global_phase == s.global_phase);
    CHECK(norm2(s_id.amplitude - s.amplitude) == 0.0);

    // group law: W(G') W(G) |s> = e^{-rho(G',G)/2} W(G'+G) |s>, compared as
    // full state overlaps against a random probe.
    for (int i = 0; i < 10; ++i) {
        CoherentAmplitude g1 = random_amplitude(grid, rng, 0.4);
        CoherentAmplitude g2 = random_amplitude(grid, rng, 0.4);
        CoherentState lhs = displace(displace(s, g1), g2);
        CoherentState rhs = displace(s, g1 + g2);
        const Complex probe_phase = weyl_compose_phase(g2, g1);
        CoherentState probe{random_amplitude(grid, rng, 0.3), -0.8};
        const Complex a = state_overlap(probe, lhs);
        const Complex b = probe_phase * state_overlap(probe, rhs);
        CHECK(std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("photon number of BN clouds diverges logarithmically") {
    const double alpha = 1.0 / 137.0;
    const Vec3 v{0.3, 0, 0};
    const double kappa = 1.0;

    auto number_at = [&](double sigma) {
        auto grid = MomentumGrid::build(sigma, kappa, 64, 32, 64);
        return photon_number({bn_amplitude(v, grid, alpha), 0.0});
    };

    CHECK(photon_number(CoherentState::vacuum(MomentumGrid::build(0.1, 1, 8, 8, 8))) == 0.0);

    // N(sigma) - N(sigma/2) = alpha A(0.3) ln 2
    const double diff = number_at(1e-3) - number_at(2e-3);
    const double oracle = alpha * bn_angular_factor(0.3) * std::log(2.0);
    CHECK(std::abs(diff - oracle) <= 1e-6 * oracle);

    // linearity in ln(1/sigma)
    std::vector<double> x, y;
    for (double sigma : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        x.push_back(std::log(1.0 / sigma));
        y.push_back(number_at(sigma));
    }
    LineFit fit = fit_line(x, y);
    CHECK(fit.r2 > 0.9999);
    const double slope_oracle = alpha * bn_angular_factor(0.3);
    CHECK(std::abs(fit.slope - slope_oracle) <= 0.005 * slope_oracle);
}

TEST_CASE("representation distance diagnostics") {
    const double alpha = 1.0 / 137.0;
    const Vec3 v1{0.3, 0, 0}, v2{0.2, 0, 0};

    CHECK(representation_distance(v1, v1, 1e-4, 1.0, alpha) == 0.0);

    const double kappa = 1.0, sigma = 1e-4;
    const double d1 = representation_distance(v1, v2, sigma, kappa, alpha);
    const double d2 = representation_distance(v1, v2, sigma / 10.0, kappa, alpha);
    const double expected_ratio =
        (std::log(kappa / sigma) + std::log(10.0)) / std::log(kappa / sigma);
    CHECK(std::abs(d2 / d1 - expected_ratio) <= 1e-3 * expected_ratio);

    const double d21 = representation_distance(v2, v1, sigma, kappa, alpha);
    CHECK(std::abs(d1 - d21) <= 1e-14 * d1);

    // distance to the vacuum representation equals the cloud photon number
    auto grid = MomentumGrid::build(sigma, kappa, 64, 32, 64);
    const double n = photon_number({bn_amplitude(v1, grid, alpha), 0.0});
    const double d_vac = representation_distance(v1, {0, 0, 0}, sigma, kappa, alpha);
    CHECK(std::abs(d_vac - n) <= 1e-12 * n);
}

TEST_CASE("amplitude csv export carries every node and polarization") {
    auto grid = MomentumGrid::build(0.1, 1.0, 4, 2, 4);
    CoherentAmplitude f = bn_amplitude({0.2, 0, 0}, grid, 1.0 / 137.0);
    const std::string csv = amplitude_to_csv(f);
    CHECK(csv.rfind("k,cos_theta,phi,lambda,re,im,weight\n", 0) == 0);
    const std::size_t rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(rows == 1 + 2 * grid->n_nodes());
}

TEST_CASE("lsz cloud is the bn cloud truncated at kappa") {
    auto grid = MomentumGrid::build(1e-2, 1.0, 32, 8, 8);
    const Vec3 v{0.25, 0.1, 0};
    const double kappa = 0.5;
    CoherentAmplitude full = bn_amplitude(v, grid, 1.0 / 137.0);
    CoherentAmplitude cloud = lsz_cloud_amplitude(v, grid, 1.0 / 137.0, kappa);
    for (std::size_t node = 0; node < grid->n_nodes(); ++node)
        for (int lambda = 0; lambda < 2; ++lambda) {
            if (grid->radius(node) > kappa)
                CHECK(cloud.at(node, lambda) == Complex{0.0, 0.0});
            else
                CHECK(cloud.at(node, lambda) == full.at(node, lambda));
        }
}

TEST_SUITE_END();
