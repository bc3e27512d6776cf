// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria run against the same library code paths the CLI uses;
// thresholds are fixed here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "bnkit/classical.hpp"
#include "bnkit/coherent.hpp"
#include "bnkit/config.hpp"
#include "bnkit/experiments.hpp"
#include "bnkit/io.hpp"
#include "bnkit/numerics.hpp"
#include "bnkit/partition.hpp"
#include "bnkit/runner.hpp"
#include "bnkit/softphoton.hpp"

using namespace bnkit;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    int id;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

CoherentAmplitude random_amplitude(const GridPtr& grid, std::mt19937_64& rng,
                                   double scale = 0.4) {
    std::normal_distribution<double> n(0.0, scale);
    CoherentAmplitude f(grid);
    for (std::size_t node = 0; node < grid->n_nodes(); ++node)
        for (int lambda = 0; lambda < 2; ++lambda) f.at(node, lambda) = {n(rng), n(rng)};
    return f;
}

Criterion criterion_1() {
    Timer timer;
    Criterion c{1, "coherent Weyl algebra"};
    auto grid = MomentumGrid::build(0.1, 1.0, 8, 8, 8);
    std::mt19937_64 rng(12345);
    double worst_group = 0.0, worst_overlap = 0.0;
    for (int i = 0; i < 30; ++i) {
        CoherentAmplitude g1 = random_amplitude(grid, rng);
        CoherentAmplitude g2 = random_amplitude(grid, rng);
        CoherentAmplitude hs = random_amplitude(grid, rng);
        CoherentState s{hs, 0.21};
        CoherentState lhs = displace(displace(s, g1), g2);
        CoherentState rhs = displace(s, g1 + g2);
        CoherentState probe{random_amplitude(grid, rng, 0.3), -0.4};
        const Complex a = state_overlap(probe, lhs);
        const Complex b = weyl_compose_phase(g2, g1) * state_overlap(probe, rhs);
        worst_group = std::max(worst_group, std::abs(a - b));

        const double ov = std::norm(coherent_overlap(g1, g2));
        worst_overlap = std::max(worst_overlap, std::abs(ov - std::exp(-norm2(g1 - g2))));
    }
    c.pass = worst_group < 1e-13 && worst_overlap < 1e-12;
    c.seconds = timer.seconds();
    c.detail = fmt("group law err %.2e (<1e-13), overlap err %.2e (<1e-12)", worst_group,
                   worst_overlap);
    return c;
}

Criterion criterion_2(const Config& cfg) {
    Timer timer;
    Criterion c{2, "BN infrared divergence"};
    RunResult r = run_cloud(cfg);
    const double r2 = r.summary["results"]["r2"];
    const double rel = r.summary["results"]["slope_rel_err"];
    c.pass = r2 > 0.9999 && rel < 0.005;
    c.seconds = timer.seconds();
    c.detail = fmt("R^2 %.6f (>0.9999), slope err %.3e (<5e-3)", r2, rel);
    return c;
}

Criterion criterion_3(const Config& cfg) {
    Timer timer;
    Criterion c{3, "asymptotic Weyl expectation"};
    RunResult r = run_overlap(cfg);
    const auto& soft = r.summary["results"]["soft"];
    const auto& hard = r.summary["results"]["hard"];
    const double dual = soft["method_rel_diff"];
    const double mod_int = soft["modulus_rel_err"];
    const double re_rho = soft["max_re_rho"];
    const double modulus = std::max(mod_int, re_rho);
    const double fock = hard["fock_value_rel_err"];
    c.pass = dual < 1e-9 && modulus < 1e-10 && fock < 1e-10;
    c.seconds = timer.seconds();
    c.detail = fmt("dual %.2e (<1e-9), modulus %.2e (<1e-10), fock %.2e (<1e-10)", dual,
                   modulus, fock);
    return c;
}

Criterion criterion_4(const Config& cfg) {
    Timer timer;
    Criterion c{4, "oscillatory shell decay"};
    RunResult r = run_decay(cfg);
    const double global_slope = r.summary["results"]["global"]["slope"];
    const double window_slope = r.summary["results"]["window"]["slope"];
    const double ctrl = r.summary["results"]["control"]["slope"];
    const double growth = r.summary["results"]["prefactor_growth_exponent"];
    const double theta = r.summary["results"]["theta"];
    c.pass = std::abs(global_slope + 1.0) <= 0.1 && std::abs(window_slope + 2.0) <= 0.15 &&
             growth <= theta + 0.1 && std::abs(ctrl + 1.0) <= 0.2;
    c.seconds = timer.seconds();
    c.detail = fmt("global %.3f (-1+-0.1), window %.3f (-2+-0.15), prefactor %.3f",
                   global_slope, window_slope, growth) +
               fmt(" (<=%.2f), control %.3f (-1+-0.2)", theta + 0.1, ctrl);
    return c;
}

Criterion criterion_5(const Config& cfg) {
    Timer timer;
    Criterion c{5, "infrared tail bounds"};
    RunResult r = run_tail(cfg);
    const double stability = r.summary["results"]["c_stability"];
    const double slope = r.summary["results"]["derivative_slope"];
    const double theta = r.summary["results"]["theta"];
    const bool frozen_zero = r.summary["results"]["beyond_freeze_is_zero"];
    c.pass = stability <= 2.5 && slope <= -(1.0 + theta) + 0.1 && frozen_zero;
    c.seconds = timer.seconds();
    c.detail = fmt("C stability %.2f (<=2.5), d/ds slope %.3f (<=%.2f)", stability, slope,
                   -(1.0 + theta) + 0.1) +
               (frozen_zero ? ", frozen tail exactly 0" : ", frozen tail NOT zero");
    return c;
}

Criterion criterion_6(const Config& cfg) {
    Timer timer;
    Criterion c{6, "dressing-phase estimates"};
    RunResult r = run_gamma(cfg);
    const double spread = r.summary["results"]["lipschitz_spread"];
    const double shift = r.summary["results"]["cutoff_shift_max_ratio"];
    c.pass = spread <= 2.0 && shift <= 1.0;
    c.seconds = timer.seconds();
    c.detail = fmt("Lipschitz spread %.3f (<=2), cutoff-shift ratio %.3f (<=1)", spread, shift);
    return c;
}

Criterion criterion_7() {
    Timer timer;
    Criterion c{7, "mu-ODE dual solution"};
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double cc = 3.0 * u(rng);
        const double a0 = 2.0 * u(rng) - 1.0, a1 = 2.0 * u(rng) - 1.0, a2 = u(rng);
        const double b0 = 2.0 * u(rng) - 1.0, b1 = u(rng);
        auto rf = [=](double m) { return Complex{a0 + a1 * m + a2 * m * m, b0 + b1 * m}; };
        MuOdeSolution s = mu_ode_solve(cc, rf, Complex{u(rng), u(rng)}, 0.5 + 1.5 * u(rng));
        worst = std::max(worst, std::abs(s.rk4 - s.closed_form));
    }
    c.pass = worst < 1e-8;
    c.seconds = timer.seconds();
    c.detail = fmt("max |RK4 - closed form| %.2e (<1e-8) over 50 instances", worst);
    return c;
}

Criterion criterion_8(const Config& cfg) {
    Timer timer;
    Criterion c{8, "off-diagonal suppression"};
    RunResult r = run_offdiag(cfg);
    const double rel = r.summary["results"]["exponent_rel_err"];
    const double diag = r.summary["results"]["max_diagonal_rel_err"];
    c.pass = rel < 0.02 && diag < 1e-8;
    c.seconds = timer.seconds();
    c.detail = fmt("exponent err %.3e (<0.02), diagonal err %.2e (<1e-8)", rel, diag);
    return c;
}

Criterion criterion_9(const Config& cfg) {
    Timer timer;
    Criterion c{9, "refinement diagonal bound"};
    RunResult r = run_refine(cfg);
    const bool monotone = r.summary["results"]["monotone_decreasing"];
    const double eta = r.summary["results"]["eta_prime"];
    c.pass = monotone && eta > 0.0;
    c.seconds = timer.seconds();
    c.detail = fmt("eta' %.3f (>0)", eta) + (monotone ? ", strictly decreasing" : ", NOT monotone");
    return c;
}

Criterion criterion_10(const Config& cfg) {
    Timer timer;
    Criterion c{10, "classical radiation picture"};
    RunResult r = run_classical(cfg);
    const auto& res = r.summary["results"];
    const double uniform = res["uniform_consistency"];
    const double gauss = res["maxwell_gauss"];
    const double ampere = res["maxwell_ampere"];
    const bool interior_zero = res["interior_eventually_zero"];
    const double interior_slope = res["interior_slope"];
    const double pulse = res["pulse_slope"];
    const double a_slope = res["a_as_slope"];
    const double a_div = res["a_as_divergence"];
    const bool interior_ok = interior_zero || interior_slope <= -1.8;
    c.pass = uniform < 1e-12 && gauss < 1e-6 && ampere < 1e-6 && interior_ok &&
             std::abs(pulse + 1.0) <= 0.05 && std::abs(a_slope + 1.0) <= 0.05 && a_div < 1e-6;
    c.seconds = timer.seconds();
    c.detail = fmt("uniform %.1e, maxwell %.1e/%.1e", uniform, gauss, ampere) +
               (interior_zero ? ", interior tail exactly 0" : fmt(", interior slope %.2f",
                                                                  interior_slope)) +
               fmt(", pulse %.3f, A_as slope %.3f, div %.1e", pulse, a_slope, a_div);
    return c;
}

Criterion criterion_11() {
    Timer timer;
    Criterion c{11, "byte-identical reruns"};
    const fs::path base = fs::temp_directory_path() / "bnkit_acceptance";
    fs::remove_all(base);
    const fs::path out1 = base / "run1", out2 = base / "run2";
    Config cfg1;
    cfg1.set("run.out=" + out1.string());
    Config cfg2;
    cfg2.set("run.out=" + out2.string());
    RunResult r1 = run_all(cfg1);
    RunResult r2 = run_all(cfg2);
    std::size_t compared = 0;
    bool identical = true;
    for (const auto& entry : fs::directory_iterator(out1)) {
        if (entry.path().extension() != ".csv") continue;
        ++compared;
        const fs::path other = out2 / entry.path().filename();
        if (!fs::exists(other) || read_file(entry.path()) != read_file(other)) {
            identical = false;
            break;
        }
    }
    c.pass = identical && compared >= 8;
    c.seconds = timer.seconds();
    c.detail = fmt("%g CSV artifacts compared", static_cast<double>(compared)) +
               (identical ? ", all byte-identical" : ", MISMATCH");
    return c;
}

}  // namespace

int main() {
    // Acceptance always runs against the built-in defaults, with artifacts
    // under a scratch directory.
    Config cfg;
    cfg.set("run.out=" + (fs::temp_directory_path() / "bnkit_acceptance" / "work").string());

    std::vector<Criterion> criteria;
    criteria.push_back(criterion_1());
    criteria.push_back(criterion_2(cfg));
    criteria.push_back(criterion_3(cfg));
    criteria.push_back(criterion_4(cfg));
    criteria.push_back(criterion_5(cfg));
    criteria.push_back(criterion_6(cfg));
    criteria.push_back(criterion_7());
    criteria.push_back(criterion_8(cfg));
    criteria.push_back(criterion_9(cfg));
    criteria.push_back(criterion_10(cfg));
    criteria.push_back(criterion_11());

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (!c.pass) ++failures;
        std::printf("[%s] criterion %2d (%6.1f s): %s -- %s\n", c.pass ? "PASS" : "FAIL", c.id,
                    c.seconds, c.name.c_str(), c.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures;
}
