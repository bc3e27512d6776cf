#ifndef BNKIT_DISPERSION_HPP
#define BNKIT_DISPERSION_HPP

#include <vector>

#include "bnkit/vec3.hpp"

namespace bnkit {

/// Total-momentum ball |P| < 1/3 on which the one-electron theory lives.
inline constexpr double kMomentumBallRadius = 1.0 / 3.0;

/// Analytic stand-in for the one-electron energy E_P^sigma and its gradient.
/// Two model kinds behind one interface; everything downstream consumes only
/// E and grad E. The optional sigma dependence multiplies the energy by
/// (1 + sigma_c sqrt(sigma)) so cutoff-shift estimates have real content.
struct DispersionModel {
    enum class Kind { Free, RenormalizedMass };

    Kind kind = Kind::Free;
    double m_ren = 1.1;       // used by RenormalizedMass; >= 1
    double sigma_c = 0.0;     // 0 disables sigma dependence
    double nu_min = 0.1;
    double nu_max = 1.0 / 3.0;

    double r_alpha() const { return 0.5 * nu_min; }

    double energy(const Vec3& p, double sigma = 0.0) const;
    Vec3 grad_energy(const Vec3& p, double sigma = 0.0) const;

    static DispersionModel free_model() { return {}; }
    static DispersionModel renormalized(double m = 1.1) {
        DispersionModel d;
        d.kind = Kind::RenormalizedMass;
        d.m_ren = m;
        return d;
    }
};

/// 1 - grad E . khat, the Doppler-type denominator; strictly positive for
/// sub-luminal velocities.
double velocity_delta(const Vec3& grad_e, const Vec3& khat);

struct Box {
    Vec3 lo, hi;
    bool contains(const Vec3& p) const {
        return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y && p.z >= lo.z &&
               p.z <= hi.z;
    }
};

/// C^1 electron wave packet: a polynomial bump supported on an axis-aligned
/// cube inside the shell r_alpha < |P| < 1/3. Value and gradient vanish on
/// the boundary.
class WavePacket {
public:
    explicit WavePacket(Box support);

    double value(const Vec3& p) const;
    Vec3 gradient(const Vec3& p) const;
    const Box& support() const { return support_; }
    /// Side length of the (cubic) support; the partition's L.
    double side() const { return support_.hi.x - support_.lo.x; }
    double norm2() const { return norm2_; }

    /// |h|^2 integral over an arbitrary sub-box by Gauss quadrature.
    double mass_in_box(const Box& box, int order_per_axis = 5) const;

private:
    Box support_;
    double norm2_ = 0.0;
};

/// Default packet: cube [0.08, 0.18]^3; corner radii keep the support inside
/// the shell and the model velocities inside [nu_min, nu_max].
WavePacket default_wavepacket(double r_alpha = 0.05);

}  // namespace bnkit

#endif
