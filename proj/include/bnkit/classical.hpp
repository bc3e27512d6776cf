#ifndef BNKIT_CLASSICAL_HPP
#define BNKIT_CLASSICAL_HPP

#include <array>

#include "bnkit/softphoton.hpp"
#include "bnkit/vec3.hpp"

namespace bnkit {

/// Charge in natural units, q = 2 (2 pi)^3 sqrt(alpha).
double natural_charge(double alpha);

/// Antisymmetric field tensor stored as (E, B); F^{i0} = E_i,
/// F^{ij} = -eps_{ijk} B_k.
struct FieldTensor {
    Vec3 E, B;

    std::array<std::array<double, 4>, 4> matrix() const;
    /// sqrt(|E|^2 + |B|^2), the magnitude used in field maps and fits.
    double magnitude() const { return std::sqrt(E.norm2() + B.norm2()); }

    FieldTensor operator-(const FieldTensor& o) const { return {E - o.E, B - o.B}; }
    FieldTensor operator+(const FieldTensor& o) const { return {E + o.E, B + o.B}; }
};

/// Worldline with uniform in/out velocities and a C^1 smoothstep ramp on
/// [0, t_bar]; x(t) = v_in t for t <= 0, x(t) = x_star + v_out t after.
class Trajectory {
public:
    Trajectory(const Vec3& v_in, const Vec3& v_out, double t_bar);

    Vec3 position(double t) const;
    Vec3 velocity(double t) const;
    Vec3 acceleration(double t) const;

    const Vec3& v_in() const { return v_in_; }
    const Vec3& v_out() const { return v_out_; }
    double t_bar() const { return t_bar_; }
    Vec3 x_star() const { return (v_in_ - v_out_) * (0.5 * t_bar_); }
    double v_max() const;

private:
    Vec3 v_in_, v_out_;
    double t_bar_;
};

/// Exact boosted-Coulomb field of a charge moving uniformly along
/// x0 + v t, evaluated at (t, y). Heaviside-Lorentz units.
FieldTensor lw_uniform(double q, const Vec3& x0, const Vec3& v, double t, const Vec3& y);

/// Retarded time: the unique solution of |y - x(t_r)| = t - t_r.
double retarded_time(const Trajectory& traj, double t, const Vec3& y, double tol = 0.0);

/// Full Lienard-Wiechert field (velocity + acceleration terms) of the
/// trajectory at (t, y), evaluated at the retarded time.
FieldTensor lw_retarded(double q, const Trajectory& traj, double t, const Vec3& y,
                        double tol = 0.0);

/// phi_in = F_ret - F_uniform(0, v_in), defined for t < 0 (identically zero
/// for the retarded realization); phi_out = F_ret - F_uniform(x_star, v_out),
/// defined for t > t_bar (the emitted radiation shell). Throws on branch
/// mismatch.
FieldTensor radiation_in(double q, const Trajectory& traj, double t, const Vec3& y);
FieldTensor radiation_out(double q, const Trajectory& traj, double t, const Vec3& y);

/// Asymptotic Coulomb-gauge vector potential difference
///   A_as(t, y) = sqrt(alpha) [ S(v_as) - S(v_lw) ],
///   S(v) = int_{|k| < Lambda} Sigma_v(k) cos(k.y - |k| t) d^3k,
/// the leading large-|y| free field separating the two uniform asymptotics.
Vec3 a_as_potential(const Vec3& v_as, const Vec3& v_lw, double t, const Vec3& y, double Lambda,
                    double alpha, const AngularRes& res = {});

/// Discrete Maxwell residual of the retarded field at (t, y), 4th-order
/// central differences with spacing h: returns (|div E|, |curl B - dE/dt|)
/// normalized by the largest derivative magnitude entering the stencils.
struct MaxwellResidual {
    double gauss = 0.0;    // relative |div E|
    double ampere = 0.0;   // relative |curl B - dE/dt|
    double scale = 0.0;    // normalization used
};

/// Residual of an arbitrary field evaluator (used for the source-free checks
/// on the radiation discrepancies).
MaxwellResidual maxwell_residual_of(const std::function<FieldTensor(double, const Vec3&)>& field,
                                    double t, const Vec3& y, double h = 1e-3);

MaxwellResidual maxwell_residual(double q, const Trajectory& traj, double t, const Vec3& y,
                                 double h = 1e-3);

/// CSV field map of the retarded field over a deterministic spatial grid at
/// fixed times: t, y1, y2, y3, Ex, Ey, Ez, Bx, By, Bz, absF.
std::string field_map_to_csv(double q, const Trajectory& traj, const std::vector<double>& times,
                             double extent, int points_per_axis);

}  // namespace bnkit

#endif
