#include "bnkit/coherent.hpp"

#include <cmath>
#include <stdexcept>

#include "bnkit/io.hpp"
#include "bnkit/numerics.hpp"

namespace bnkit {

namespace {

void require_same_grid(const CoherentAmplitude& f, const CoherentAmplitude& g) {
    if (f.grid() != g.grid())
        throw std::invalid_argument("coherent: amplitudes live on different grids");
}

}  // namespace

CoherentAmplitude& CoherentAmplitude::operator+=(const CoherentAmplitude& o) {
    require_same_grid(*this, o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
}

CoherentAmplitude& CoherentAmplitude::operator-=(const CoherentAmplitude& o) {
    require_same_grid(*this, o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
}

CoherentAmplitude& CoherentAmplitude::operator*=(Complex s) {
    for (auto& v : values_) v *= s;
    return *this;
}

CoherentAmplitude CoherentAmplitude::operator+(const CoherentAmplitude& o) const {
    CoherentAmplitude r = *this;
    r += o;
    return r;
}

CoherentAmplitude CoherentAmplitude::operator-(const CoherentAmplitude& o) const {
    CoherentAmplitude r = *this;
    r -= o;
    return r;
}

CoherentAmplitude CoherentAmplitude::operator*(Complex s) const {
    CoherentAmplitude r = *this;
    r *= s;
    return r;
}

Complex inner_product(const CoherentAmplitude& f, const CoherentAmplitude& g) {
    require_same_grid(f, g);
    const MomentumGrid& grid = *f.grid();
    const std::size_t n = grid.n_nodes();
    std::vector<double> re(2 * n), im(2 * n);
    for (std::size_t node = 0; node < n; ++node) {
        const double w = grid.weight(node);
        for (int lambda = 0; lambda < 2; ++lambda) {
            // conj(f) g first: the self-pairing stays exactly real.
            const Complex term = w * (std::conj(f.at(node, lambda)) * g.at(node, lambda));
            re[2 * node + lambda] = term.real();
            im[2 * node + lambda] = term.imag();
        }
    }
    return {pairwise_sum(re), pairwise_sum(im)};
}

double norm2(const CoherentAmplitude& f) { return inner_product(f, f).real(); }

CoherentAmplitude bn_amplitude(const Vec3& v, const GridPtr& grid, double alpha) {
    if (v.norm() >= 1.0) throw std::invalid_argument("bn_amplitude: |v| must be < 1");
    CoherentAmplitude f(grid);
    const double root_alpha = std::sqrt(alpha);
    const std::size_t n = grid->n_nodes();
    for (std::size_t node = 0; node < n; ++node) {
        const auto& ang = grid->angular(node);
        const double r = grid->radius(node);
        const double delta = 1.0 - v.dot(ang.basis.khat);
        const double common = root_alpha / (r * std::sqrt(r) * delta);
        f.at(node, 0) = common * v.dot(ang.basis.eps1);
        f.at(node, 1) = common * v.dot(ang.basis.eps2);
    }
    return f;
}

CoherentAmplitude lsz_cloud_amplitude(const Vec3& v, const GridPtr& grid, double alpha,
                                      double kappa) {
    CoherentAmplitude f = bn_amplitude(v, grid, alpha);
    const std::size_t n = grid->n_nodes();
    for (std::size_t node = 0; node < n; ++node) {
        if (grid->radius(node) > kappa) {
            f.at(node, 0) = 0.0;
            f.at(node, 1) = 0.0;
        }
    }
    return f;
}

Complex coherent_overlap(const CoherentAmplitude& f, const CoherentAmplitude& g) {
    require_same_grid(f, g);
    const Complex fg = inner_product(f, g);
    return std::exp(Complex{-0.5 * norm2(f) - 0.5 * norm2(g), 0.0} + fg);
}

Complex state_overlap(const CoherentState& a, const CoherentState& b) {
    return std::exp(Complex{0.0, b.global_phase - a.global_phase}) *
           coherent_overlap(a.amplitude, b.amplitude);
}

Complex weyl_compose_phase(const CoherentAmplitude& g, const CoherentAmplitude& gp) {
    const double im = inner_product(g, gp).imag();
    return std::exp(Complex{0.0, -im});
}

CoherentState displace(const CoherentState& state, const CoherentAmplitude& g) {
    require_same_grid(state.amplitude, g);
    CoherentState out{state.amplitude + g,
                      state.global_phase - inner_product(g, state.amplitude).imag()};
    return out;
}

double photon_number(const CoherentState& state) { return norm2(state.amplitude); }

double representation_distance(const Vec3& v1, const Vec3& v2, double sigma, double kappa,
                               double alpha, int n_radial, int n_polar, int n_azimuth) {
    if (v1.norm() >= 1.0 || v2.norm() >= 1.0)
        throw std::invalid_argument("representation_distance: |v| must be < 1");
    GridPtr grid = MomentumGrid::build(sigma, kappa, n_radial, n_polar, n_azimuth);
    return norm2(bn_amplitude(v1, grid, alpha) - bn_amplitude(v2, grid, alpha));
}

double bn_angular_factor(double u, int n_quad) {
    if (u == 0.0) return 0.0;
    GaussRule rule = gauss_legendre(n_quad, -1.0, 1.0);
    std::vector<double> terms(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double c = rule.nodes[i];
        const double d = 1.0 - u * c;
        terms[i] = rule.weights[i] * u * u * (1.0 - c * c) / (d * d);
    }
    return 2.0 * kPi * pairwise_sum(terms);
}

std::string amplitude_to_csv(const CoherentAmplitude& f) {
    const MomentumGrid& grid = *f.grid();
    CsvWriter csv({"k", "cos_theta", "phi", "lambda", "re", "im", "weight"});
    for (std::size_t node = 0; node < grid.n_nodes(); ++node) {
        const auto& ang = grid.angular(node);
        for (int lambda = 0; lambda < 2; ++lambda) {
            csv.cell(grid.radius(node)).cell(ang.cos_theta).cell(ang.phi).cell(lambda + 1)
                .cell(f.at(node, lambda).real()).cell(f.at(node, lambda).imag())
                .cell(grid.weight(node));
            csv.end_row();
        }
    }
    return csv.str();
}

}  // namespace bnkit
