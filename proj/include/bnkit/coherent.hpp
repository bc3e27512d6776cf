#ifndef BNKIT_COHERENT_HPP
#define BNKIT_COHERENT_HPP

#include <vector>

#include "bnkit/grid.hpp"
#include "bnkit/vec3.hpp"

namespace bnkit {

/// Complex photon amplitude f(k, lambda) sampled on a MomentumGrid.
/// Storage is node-major with the two polarizations interleaved.
class CoherentAmplitude {
public:
    explicit CoherentAmplitude(GridPtr grid)
        : grid_(std::move(grid)), values_(2 * grid_->n_nodes(), Complex{0.0, 0.0}) {}

    const GridPtr& grid() const { return grid_; }
    std::size_t n_values() const { return values_.size(); }

    Complex& at(std::size_t node, int lambda) { return values_[2 * node + lambda]; }
    const Complex& at(std::size_t node, int lambda) const { return values_[2 * node + lambda]; }

    CoherentAmplitude& operator+=(const CoherentAmplitude& o);
    CoherentAmplitude& operator-=(const CoherentAmplitude& o);
    CoherentAmplitude& operator*=(Complex s);
    CoherentAmplitude operator+(const CoherentAmplitude& o) const;
    CoherentAmplitude operator-(const CoherentAmplitude& o) const;
    CoherentAmplitude operator*(Complex s) const;

private:
    GridPtr grid_;
    std::vector<Complex> values_;
};

/// L2 pairing sum_lambda int conj(f) g d^3k over the grid.
/// Deterministic: node-index order, pairwise reduction.
Complex inner_product(const CoherentAmplitude& f, const CoherentAmplitude& g);
double norm2(const CoherentAmplitude& f);

/// Bloch-Nordsieck cloud of a charge moving at velocity v:
/// f_lambda(k) = sqrt(alpha) v.eps_lambda / (|k|^{3/2} (1 - v.khat)).
/// Real in the fixed polarization gauge.
CoherentAmplitude bn_amplitude(const Vec3& v, const GridPtr& grid, double alpha);

/// BN cloud truncated to |k| <= kappa: the soft-photon content created by the
/// LSZ Weyl operator (the modeled asymptotic cloud); zero above the threshold.
CoherentAmplitude lsz_cloud_amplitude(const Vec3& v, const GridPtr& grid, double alpha,
                                      double kappa);

/// Coherent state = displaced vacuum W(amplitude)|0>, tracked with an overall
/// phase so Weyl composition is exact.
struct CoherentState {
    CoherentAmplitude amplitude;
    double global_phase = 0.0;  // radians

    static CoherentState vacuum(const GridPtr& grid) { return {CoherentAmplitude(grid), 0.0}; }
};

/// <coh(f), coh(g)> = exp(-|f|^2/2 - |g|^2/2 + <f,g>).
Complex coherent_overlap(const CoherentAmplitude& f, const CoherentAmplitude& g);

/// Full state overlap including the tracked global phases.
Complex state_overlap(const CoherentState& a, const CoherentState& b);

/// Weyl composition factor e^{-rho(G,G')/2} with rho = 2i Im<G,G'>.
Complex weyl_compose_phase(const CoherentAmplitude& g, const CoherentAmplitude& gp);

/// Action of W(G) on a coherent state: amplitude shifts by G, the global
/// phase picks up -Im<G, old amplitude>; composes per the Weyl group law.
CoherentState displace(const CoherentState& state, const CoherentAmplitude& g);

/// Expected photon number of a coherent state: |amplitude|^2.
double photon_number(const CoherentState& state);

/// |f_v1 - f_v2|^2 on the (sigma, kappa) shell. Grows like ln(1/sigma) for
/// v1 != v2 -- the velocity-superselection diagnostic.
double representation_distance(const Vec3& v1, const Vec3& v2, double sigma, double kappa,
                               double alpha, int n_radial = 64, int n_polar = 32,
                               int n_azimuth = 64);

/// 1D angular oracle A(u) = 2 pi int_{-1}^{1} u^2 (1-c^2) / (1 - u c)^2 dc,
/// so that |bn_amplitude|^2 = alpha ln(kappa/sigma) A(|v|).
double bn_angular_factor(double u, int n_quad = 200);

/// CSV dump, one row per (node, polarization):
/// |k|, cos_theta, phi, lambda, re, im, weight.
std::string amplitude_to_csv(const CoherentAmplitude& f);

}  // namespace bnkit

#endif
