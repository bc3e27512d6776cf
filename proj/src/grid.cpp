#include "bnkit/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "bnkit/numerics.hpp"

namespace bnkit {

PolarizationBasis polarization_basis(const Vec3& khat) {
    const double n = khat.norm();
    if (n == 0.0) throw std::invalid_argument("polarization_basis: zero direction");
    if (std::abs(n - 1.0) > 1e-12)
        throw std::invalid_argument("polarization_basis: direction not unit length");
    PolarizationBasis basis;
    basis.khat = khat;
    const Vec3 seed = (std::abs(khat.z) > 0.9) ? Vec3{1, 0, 0} : Vec3{0, 0, 1};
    basis.eps1 = seed.cross(khat).normalized();
    basis.eps2 = khat.cross(basis.eps1);
    return basis;
}

std::shared_ptr<const MomentumGrid> MomentumGrid::build(double sigma_lo, double sigma_hi,
                                                        int n_radial, int n_polar,
                                                        int n_azimuth, RadialSpacing spacing) {
    if (!(sigma_lo > 0.0) || !(sigma_lo < sigma_hi))
        throw std::invalid_argument("MomentumGrid: need 0 < sigma_lo < sigma_hi");
    if (n_radial < 2 || n_polar < 2 || n_azimuth < 2)
        throw std::invalid_argument("MomentumGrid: node counts must be >= 2");

    auto grid = std::shared_ptr<MomentumGrid>(new MomentumGrid());
    grid->sigma_lo_ = sigma_lo;
    grid->sigma_hi_ = sigma_hi;

    // Radial rule: split the interval into segments (log- or linearly spaced
    // boundaries) and lay a Gauss-Legendre rule on each. Four nodes per
    // segment unless the request is smaller or not divisible.
    const int n_segments = (n_radial + 3) / 4;
    std::vector<double> edges(n_segments + 1);
    if (spacing == RadialSpacing::Log) {
        const double la = std::log(sigma_lo), lb = std::log(sigma_hi);
        for (int s = 0; s <= n_segments; ++s)
            edges[s] = std::exp(la + (lb - la) * s / n_segments);
        edges.front() = sigma_lo;
        edges.back() = sigma_hi;
    } else {
        for (int s = 0; s <= n_segments; ++s)
            edges[s] = sigma_lo + (sigma_hi - sigma_lo) * s / n_segments;
    }
    const int base = n_radial / n_segments;
    const int extra = n_radial % n_segments;
    for (int s = 0; s < n_segments; ++s) {
        const int order = base + (s < extra ? 1 : 0);
        GaussRule rule = gauss_legendre(order, edges[s], edges[s + 1]);
        grid->radial_nodes_.insert(grid->radial_nodes_.end(), rule.nodes.begin(),
                                   rule.nodes.end());
        grid->radial_weights_.insert(grid->radial_weights_.end(), rule.weights.begin(),
                                     rule.weights.end());
    }

    // Angular rule: Gauss-Legendre in cos(theta) x uniform in phi. The phi
    // offset keeps nodes clear of the gauge seam at khat.z = +-1.
    GaussRule polar = gauss_legendre(n_polar, -1.0, 1.0);
    const double dphi = 2.0 * kPi / n_azimuth;
    grid->angular_nodes_.reserve(static_cast<std::size_t>(n_polar) * n_azimuth);
    for (int ip = 0; ip < n_polar; ++ip) {
        const double c = polar.nodes[ip];
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        for (int ja = 0; ja < n_azimuth; ++ja) {
            const double phi = dphi * (ja + 0.5);
            AngularNode node;
            node.cos_theta = c;
            node.phi = phi;
            node.weight = polar.weights[ip] * dphi;
            node.basis = polarization_basis({s * std::cos(phi), s * std::sin(phi), c});
            grid->angular_nodes_.push_back(node);
        }
    }
    return grid;
}

double MomentumGrid::weight_sum() const {
    std::vector<double> w(n_nodes());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = weight(i);
    return pairwise_sum(w);
}

}  // namespace bnkit
