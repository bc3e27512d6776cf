#ifndef BNKIT_SOFTPHOTON_HPP
#define BNKIT_SOFTPHOTON_HPP

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "bnkit/numerics.hpp"
#include "bnkit/vec3.hpp"

namespace bnkit {

/// Infrared cutoff schedules: fast sigma_t = t^-beta, slow sigma_s^S = s^-theta,
/// cell-refinement exponent epsilon, photon threshold kappa <= Lambda.
struct CutoffSchedule {
    double beta = 1.25;
    double theta = 0.8;
    double epsilon = 0.2;
    double kappa = 0.5;
    double Lambda = 1.0;

    CutoffSchedule() = default;
    CutoffSchedule(double beta_, double theta_, double epsilon_, double kappa_, double Lambda_);

    double sigma_t(double t) const { return std::pow(t, -beta); }
    double sigma_slow(double s) const { return std::pow(s, -theta); }
    /// Time at which the dressing phase freezes: sigma_t^{-1/theta}.
    double freeze_time(double t) const { return std::pow(sigma_t(t), -1.0 / theta); }
};

/// Transverse radiation kernel Sigma_v(k) =
///   2 (v - khat (khat.v)) / (|k|^2 (1 - khat.v));  k.Sigma_v(k) = 0.
Vec3 sigma_field(const Vec3& v, const Vec3& k);

/// |k|^2 Sigma_v(k): the purely angular part.
Vec3 sigma_field_angular(const Vec3& v, const Vec3& khat);

/// Angular resolution for the oscillatory shell integrals.
struct AngularRes {
    int panels = 16;    // Chebyshev panels in cos(theta)
    int order = 8;      // Chebyshev order per panel
    int n_phi = 32;     // azimuthal trapezoid points
    int gl_order = 8;   // Gauss-Legendre order per oscillation panel
};

/// Oscillatory integrals of Sigma_v(k) cos(k.x - |k|s) over momentum shells,
/// for a fixed kernel velocity v and a fixed direction of x.
///
/// The radial integral is done in closed form per angular ray (the integrand
/// is cos(|k| u) with u = khat.x - s after the 1/|k|^2 of Sigma cancels the
/// measure), leaving a 1D integral in cos(theta) of a smooth phi-averaged
/// profile times a sine-difference factor. The profile is interpolated once;
/// the c-integral uses composite Gauss panels sized to the oscillation count,
/// so cost grows only linearly in hi*|x| and accuracy is resolution-driven.
class ShellOscillator {
public:
    ShellOscillator(const Vec3& v, const Vec3& axis, const AngularRes& res = {});

    /// integral over lo < |k| < hi of Sigma_v(k) cos(k.x - |k|s) d^3k with
    /// x = X * axis, X >= 0. lo may be zero.
    Vec3 integrate(double X, double s, double lo, double hi) const;

    /// Same integral contracted with a fixed vector g (used by the phase).
    double integrate_dot(const Vec3& g, double X, double s, double lo, double hi) const;

    const Vec3& v() const { return v_; }

private:
    Vec3 v_;
    Frame frame_;
    AngularRes res_;
    std::unique_ptr<PiecewiseChebyshev> profile_;  // phi-averaged angular kernel
};

/// One-shot convenience wrapper around ShellOscillator.
Vec3 shell_cosine_integral(const Vec3& v, const Vec3& x, double s, double lo, double hi,
                           const AngularRes& res = {});

/// Arguments of the dressing phase gamma_{sigma_t}(v_j, grad E, s).
struct PhaseSpec {
    Vec3 v_j;       // cell velocity entering Sigma
    Vec3 grad_e;    // electron velocity entering the cosine and the prefactor
    double t = 1.0; // schedule time fixing sigma_t
    CutoffSchedule schedule;
    double alpha = 1.0 / 137.0;
};

/// Dressing phase
///   gamma = -alpha int_1^{min(s, sigma_t^{-1/theta})} grad_e . I(tau) dtau,
///   I(tau) = int_{sigma_t < |k| < tau^-theta} Sigma_{v_j}(k)
///            cos(k . grad_e tau - |k| tau) d^3k,
/// outer integral by adaptive Gauss-Kronrod (abs tol 1e-9); freezes exactly
/// for s beyond sigma_t^{-1/theta}. Throws QuadratureToleranceError when the
/// subdivision budget is exhausted.
double gamma_phase(const PhaseSpec& spec, double s, const AngularRes& res = {});

/// Same value with the tau-integral done in closed form (sine-integral
/// differences after swapping the k and tau integrations). Orders of
/// magnitude faster at late freeze times; cross-checked against gamma_phase.
double gamma_phase_fast(const PhaseSpec& spec, double s, const AngularRes& res = {});

/// |gamma(v_j) - gamma(v_l)| / |v_j - v_l| at the frozen time, both phases
/// sharing grad_e: the velocity-Lipschitz ratio of the dressing phase.
double gamma_velocity_lipschitz(const PhaseSpec& base, const Vec3& v_j, const Vec3& v_l);

struct CutoffShiftRecord {
    double difference = 0.0;  // |gamma_{sigma_t2}(.., t1) - gamma_{sigma_t1}(.., t1)|
    double bound = 0.0;       // pinned constant * (sigma_t1^{(1-delta)/2} t1^{1-theta} + t1 sigma_t1)
    double ratio = 0.0;
};

/// Cutoff-shift estimate (A-2): the phase with cutoff sigma_t2 and dispersion
/// grad E^{sigma_t2} against the one at sigma_t1, both at time t1. The
/// dispersion factors are supplied by the caller via the two grad_e vectors.
CutoffShiftRecord gamma_cutoff_shift(const PhaseSpec& base, double t1, double t2,
                                     const Vec3& grad_e_sigma1, const Vec3& grad_e_sigma2,
                                     double delta = 0.05);

/// Infrared tail: the slow-shell integral over B_{sigma_s^S} \ B_{sigma_t} of
/// Sigma_v(k) cos(k . grad_e s - |k| s); exactly zero on the empty-shell
/// branch s^-theta < sigma_t.
Vec3 infrared_tail(const Vec3& v, const Vec3& grad_e, double s, const CutoffSchedule& schedule,
                   double t, const AngularRes& res = {});

/// Sup over the deterministic x-sample of |shell integral| per s, with the
/// log-log decay fit. Degenerate when the kernel vanishes.
struct DecayFitResult {
    std::vector<double> s_values;
    std::vector<double> sup_values;
    LineFit fit;
    bool degenerate = true;
};

/// Fast-cutoff shell (sigma_t, kappa), sup over |x| in [0, 2s]
/// (64 radii x 16 directions, cone-refined).
DecayFitResult decay_fit_global(const Vec3& v, const CutoffSchedule& schedule, double t,
                            const std::vector<double>& s_values, const AngularRes& res = {},
                            int threads = 1);

/// Slow-cutoff shell (t^-theta, kappa), sup over |x|/s in the velocity window.
DecayFitResult decay_fit_windowed(const Vec3& v, const CutoffSchedule& schedule, double t,
                            const std::vector<double>& s_values, double window_lo,
                            double window_hi, const AngularRes& res = {}, int threads = 1);

/// dM/dmu = -mu C M + r(mu), M(0) = M0. Returns both the Runge-Kutta solution
/// (with step-doubling control) and the closed form
/// e^{-C mu^2/2} M0 + int_0^mu r(m) e^{-C(mu^2 - m^2)/2} dm.
struct MuOdeSolution {
    Complex rk4;
    Complex closed_form;
    int steps = 0;
};

MuOdeSolution mu_ode_solve(double c_coeff, const std::function<Complex(double)>& r, Complex m0,
                           double mu_end, double tol = 1e-10);

}  // namespace bnkit

#endif
