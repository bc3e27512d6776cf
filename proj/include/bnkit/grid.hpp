#ifndef BNKIT_GRID_HPP
#define BNKIT_GRID_HPP

#include <memory>
#include <vector>

#include "bnkit/vec3.hpp"

namespace bnkit {

/// Coulomb-gauge transverse pair for a photon direction.
/// Gauge fixed deterministically: eps1 = normalize(a x khat) with a = z-hat,
/// or a = x-hat when |khat.z| > 0.9; eps2 = khat x eps1.
struct PolarizationBasis {
    Vec3 khat;
    Vec3 eps1;
    Vec3 eps2;

    const Vec3& eps(int lambda) const { return lambda == 0 ? eps1 : eps2; }
};

PolarizationBasis polarization_basis(const Vec3& khat);

enum class RadialSpacing { Log, Linear };

/// Discretized momentum shell B_hi \ B_lo with product quadrature:
/// per-segment Gauss-Legendre in |k|, Gauss-Legendre in cos(theta),
/// uniform (trapezoid) in phi. Node weights carry the full d^3k measure.
/// Immutable after construction; shared freely between threads.
class MomentumGrid {
public:
    struct AngularNode {
        double cos_theta;
        double phi;
        double weight;  // dOmega weight
        PolarizationBasis basis;
    };

    static std::shared_ptr<const MomentumGrid> build(double sigma_lo, double sigma_hi,
                                                     int n_radial, int n_polar, int n_azimuth,
                                                     RadialSpacing spacing = RadialSpacing::Log);

    double sigma_lo() const { return sigma_lo_; }
    double sigma_hi() const { return sigma_hi_; }

    const std::vector<double>& radial_nodes() const { return radial_nodes_; }
    const std::vector<double>& radial_weights() const { return radial_weights_; }
    const std::vector<AngularNode>& angular_nodes() const { return angular_nodes_; }

    std::size_t n_nodes() const { return radial_nodes_.size() * angular_nodes_.size(); }

    /// Flattened node index: radial-major, then angular.
    std::size_t node_index(std::size_t ir, std::size_t ia) const {
        return ir * angular_nodes_.size() + ia;
    }
    double radius(std::size_t node) const { return radial_nodes_[node / angular_nodes_.size()]; }
    const AngularNode& angular(std::size_t node) const {
        return angular_nodes_[node % angular_nodes_.size()];
    }
    /// d^3k weight of a flattened node.
    double weight(std::size_t node) const {
        const std::size_t ir = node / angular_nodes_.size();
        const std::size_t ia = node % angular_nodes_.size();
        const double r = radial_nodes_[ir];
        return radial_weights_[ir] * r * r * angular_nodes_[ia].weight;
    }
    Vec3 momentum(std::size_t node) const {
        const AngularNode& a = angular(node);
        return a.basis.khat * radius(node);
    }

    double weight_sum() const;

private:
    MomentumGrid() = default;

    double sigma_lo_ = 0.0, sigma_hi_ = 0.0;
    std::vector<double> radial_nodes_;
    std::vector<double> radial_weights_;
    std::vector<AngularNode> angular_nodes_;
};

using GridPtr = std::shared_ptr<const MomentumGrid>;

}  // namespace bnkit

#endif
