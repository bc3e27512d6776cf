#include "bnkit/softphoton.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bnkit {

CutoffSchedule::CutoffSchedule(double beta_, double theta_, double epsilon_, double kappa_,
                               double Lambda_)
    : beta(beta_), theta(theta_), epsilon(epsilon_), kappa(kappa_), Lambda(Lambda_) {
    if (!(beta > 1.0) || !(theta > 0.0 && theta < 1.0) || !(epsilon > 0.0))
        throw std::invalid_argument("CutoffSchedule: need beta > 1 > theta > 0, epsilon > 0");
    if (!(kappa > 0.0 && kappa <= Lambda))
        throw std::invalid_argument("CutoffSchedule: need 0 < kappa <= Lambda");
}

Vec3 sigma_field(const Vec3& v, const Vec3& k) {
    const double r2 = k.norm2();
    if (r2 == 0.0) throw std::invalid_argument("sigma_field: k = 0");
    if (v.norm() >= 1.0) throw std::invalid_argument("sigma_field: |v| must be < 1");
    return sigma_field_angular(v, k / std::sqrt(r2)) / r2;
}

Vec3 sigma_field_angular(const Vec3& v, const Vec3& khat) {
    const double kv = khat.dot(v);
    return (v - khat * kv) * (2.0 / (1.0 - kv));
}

namespace {

// sin(z)/z, series fallback near the origin.
double sinc(double z) {
    const double az = std::abs(z);
    if (az < 1e-4) {
        const double z2 = z * z;
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sin(z) / z;
}

// int_lo^hi cos(r u) dr = hi sinc(hi u) - lo sinc(lo u); entire in u.
double radial_cosine(double lo, double hi, double u) {
    return hi * sinc(hi * u) - lo * sinc(lo * u);
}

}  // namespace

ShellOscillator::ShellOscillator(const Vec3& v, const Vec3& axis, const AngularRes& res)
    : v_(v), res_(res) {
    if (v.norm() >= 1.0) throw std::invalid_argument("ShellOscillator: |v| must be < 1");
    frame_ = Frame::around(axis.norm() > 0.0 ? axis : Vec3{0, 0, 1});
    const double dphi = 2.0 * kPi / res_.n_phi;
    auto sample = [&](double c, double* out) {
        Vec3 acc{0, 0, 0};
        for (int m = 0; m < res_.n_phi; ++m) {
            const double phi = dphi * (m + 0.5);
            acc += sigma_field_angular(v_, frame_.direction(std::clamp(c, -1.0, 1.0), phi));
        }
        acc *= dphi;
        out[0] = acc.x;
        out[1] = acc.y;
        out[2] = acc.z;
    };
    profile_ = std::make_unique<PiecewiseChebyshev>(sample, -1.0, 1.0, res_.panels, res_.order, 3);
}

Vec3 ShellOscillator::integrate(double X, double s, double lo, double hi) const {
    if (!(hi > lo) || hi <= 0.0) return {0, 0, 0};
    lo = std::max(lo, 0.0);
    if (v_.norm2() == 0.0) return {0, 0, 0};
    // Panels sized to the phase speed hi * X across c in [-1, 1].
    const double periods = hi * X / kPi;
    const int n_panels =
        std::max(res_.panels, static_cast<int>(std::ceil(periods)) + 1);
    GaussRule gl = gauss_legendre(res_.gl_order);
    const double width = 2.0 / n_panels;
    std::vector<double> tx, ty, tz;
    const std::size_t n_terms = static_cast<std::size_t>(n_panels) * res_.gl_order;
    tx.resize(n_terms);
    ty.resize(n_terms);
    tz.resize(n_terms);
    double g3[3];
    for (int p = 0; p < n_panels; ++p) {
        const double c0 = -1.0 + p * width;
        for (int q = 0; q < res_.gl_order; ++q) {
            const double c = c0 + 0.5 * width * (gl.nodes[q] + 1.0);
            const double w = 0.5 * width * gl.weights[q];
            profile_->eval(c, g3);
            const double rad = radial_cosine(lo, hi, X * c - s);
            const std::size_t idx = static_cast<std::size_t>(p) * res_.gl_order + q;
            tx[idx] = w * g3[0] * rad;
            ty[idx] = w * g3[1] * rad;
            tz[idx] = w * g3[2] * rad;
        }
    }
    return {pairwise_sum(tx), pairwise_sum(ty), pairwise_sum(tz)};
}

double ShellOscillator::integrate_dot(const Vec3& g, double X, double s, double lo,
                                      double hi) const {
    return g.dot(integrate(X, s, lo, hi));
}

Vec3 shell_cosine_integral(const Vec3& v, const Vec3& x, double s, double lo, double hi,
                           const AngularRes& res) {
    if (!(lo >= 0.0) || !(hi > lo)) throw std::invalid_argument("shell_cosine_integral: bad shell");
    if (!(s > 0.0)) throw std::invalid_argument("shell_cosine_integral: need s > 0");
    const double X = x.norm();
    ShellOscillator osc(v, X > 0.0 ? x : Vec3{0, 0, 1}, res);
    return osc.integrate(X, s, lo, hi);
}

double gamma_phase(const PhaseSpec& spec, double s, const AngularRes& res) {
    const double sigma_t = spec.schedule.sigma_t(spec.t);
    const double freeze = spec.schedule.freeze_time(spec.t);
    const double s_end = std::min(s, freeze);
    if (s_end <= 1.0) return 0.0;
    if (spec.v_j.norm2() == 0.0 || spec.grad_e.norm2() == 0.0) return 0.0;
    const double g_mag = spec.grad_e.norm();
    ShellOscillator osc(spec.v_j, spec.grad_e, res);
    auto integrand = [&](double tau) {
        const double hi = spec.schedule.sigma_slow(tau);
        if (hi <= sigma_t) return 0.0;
        return osc.integrate_dot(spec.grad_e, g_mag * tau, tau, sigma_t, hi);
    };
    return -spec.alpha * adaptive_gauss_kronrod(integrand, 1.0, s_end, 1e-9, 2000);
}

double gamma_phase_fast(const PhaseSpec& spec, double s, const AngularRes& res) {
    const double theta = spec.schedule.theta;
    const double sigma_t = spec.schedule.sigma_t(spec.t);
    const double freeze = spec.schedule.freeze_time(spec.t);
    const double s_end = std::min(s, freeze);
    if (s_end <= 1.0) return 0.0;
    if (spec.v_j.norm2() == 0.0 || spec.grad_e.norm2() == 0.0) return 0.0;

    // Swap the tau and k integrations. With u = khat.grad_e - 1 < 0,
    //   int_1^{min(S, r^{-1/theta})} cos(r u tau) dtau
    // is elementary, and the remaining radial integral reduces to
    // sine-integral differences; the tau-cap changes branch at r* = S^-theta.
    const double S = s_end;
    const double r_star = std::pow(S, -theta);
    const double p = (theta - 1.0) / theta;
    const double s_pow = std::pow(S, 1.0 - theta);  // r*^p
    const double g_mag = spec.grad_e.norm();

    auto radial_factor = [&](double u) {
        double acc = 0.0;
        if (r_star > sigma_t) {
            acc += (sine_integral(u * S * r_star) - sine_integral(u * S * sigma_t)) / u;
            acc -= (sine_integral(u * r_star) - sine_integral(u * sigma_t)) / u;
        }
        const double lo_b = std::max(r_star, sigma_t);
        if (1.0 > lo_b) {
            const double lo_pow = (lo_b == r_star) ? s_pow : std::pow(lo_b, p);
            acc += (sine_integral(u) - sine_integral(u * lo_pow)) / (u * p);
            acc -= (sine_integral(u) - sine_integral(u * lo_b)) / u;
        }
        return acc;
    };

    // phi-averaged grad_e . Sigma_angular in the grad_e-aligned frame, so the
    // sine-integral arguments depend only on c = khat.grad_e / |grad_e|.
    const double dphi = 2.0 * kPi / res.n_phi;
    Frame frame = Frame::around(spec.grad_e);
    auto scalar_sample = [&](double c, double* out) {
        double acc = 0.0;
        for (int m = 0; m < res.n_phi; ++m) {
            const double phi = dphi * (m + 0.5);
            acc += spec.grad_e.dot(
                sigma_field_angular(spec.v_j, frame.direction(std::clamp(c, -1.0, 1.0), phi)));
        }
        out[0] = acc * dphi;
    };
    PiecewiseChebyshev scalar_profile(scalar_sample, -1.0, 1.0, res.panels, res.order, 1);

    // c-integral with panels sized to the fastest sine-integral argument.
    const double max_freq = g_mag * std::max(S * sigma_t, s_pow);
    const int n_panels = std::max(res.panels, static_cast<int>(std::ceil(max_freq / kPi)) + 1);
    GaussRule gl = gauss_legendre(res.gl_order);
    const double width = 2.0 / n_panels;
    std::vector<double> terms(static_cast<std::size_t>(n_panels) * res.gl_order);
    for (int pn = 0; pn < n_panels; ++pn) {
        const double c0 = -1.0 + pn * width;
        for (int q = 0; q < res.gl_order; ++q) {
            const double c = c0 + 0.5 * width * (gl.nodes[q] + 1.0);
            const double w = 0.5 * width * gl.weights[q];
            const double u = g_mag * c - 1.0;
            terms[static_cast<std::size_t>(pn) * res.gl_order + q] =
                w * scalar_profile.eval1(c) * radial_factor(u);
        }
    }
    return -spec.alpha * pairwise_sum(terms);
}

double gamma_velocity_lipschitz(const PhaseSpec& base, const Vec3& v_j, const Vec3& v_l) {
    const double dv = (v_j - v_l).norm();
    if (dv == 0.0) return 0.0;
    const double freeze = base.schedule.freeze_time(base.t);
    PhaseSpec spec_j = base;
    spec_j.v_j = v_j;
    PhaseSpec spec_l = base;
    spec_l.v_j = v_l;
    const double dgamma =
        std::abs(gamma_phase_fast(spec_j, freeze) - gamma_phase_fast(spec_l, freeze));
    return dgamma / dv;
}

CutoffShiftRecord gamma_cutoff_shift(const PhaseSpec& base, double t1, double t2,
                                     const Vec3& grad_e_sigma1, const Vec3& grad_e_sigma2,
                                     double delta) {
    if (!(t2 >= t1) || !(t1 > 1.0))
        throw std::invalid_argument("gamma_cutoff_shift: need t2 >= t1 > 1");
    CutoffShiftRecord rec;
    PhaseSpec spec2 = base;
    spec2.t = t2;
    spec2.grad_e = grad_e_sigma2;
    PhaseSpec spec1 = base;
    spec1.t = t1;
    spec1.grad_e = grad_e_sigma1;
    rec.difference = std::abs(gamma_phase(spec2, t1) - gamma_phase(spec1, t1));
    const double sigma_t1 = base.schedule.sigma_t(t1);
    const double nu = base.v_j.norm();
    // Pinned implied constant: alpha * int dOmega sup |Sigma_angular| =
    // alpha * 8 pi nu / (1 - nu).
    const double c0 = base.alpha * 8.0 * kPi * nu / (1.0 - nu);
    rec.bound = c0 * (std::pow(sigma_t1, 0.5 * (1.0 - delta)) *
                          std::pow(t1, 1.0 - base.schedule.theta) +
                      t1 * sigma_t1);
    rec.ratio = rec.bound > 0.0 ? rec.difference / rec.bound : 0.0;
    return rec;
}

Vec3 infrared_tail(const Vec3& v, const Vec3& grad_e, double s, const CutoffSchedule& schedule,
                   double t, const AngularRes& res) {
    const double sigma_t = schedule.sigma_t(t);
    const double hi = schedule.sigma_slow(s);
    if (hi < sigma_t) return {0, 0, 0};
    ShellOscillator osc(v, grad_e.norm2() > 0.0 ? grad_e : Vec3{0, 0, 1}, res);
    return osc.integrate(grad_e.norm() * s, s, sigma_t, hi);
}

namespace {

std::vector<Vec3> decay_directions(const Vec3& v) {
    // 4 Gauss nodes in cos(angle to v) x 4 azimuths: deterministic 16-point set.
    Frame frame = Frame::around(v.norm2() > 0.0 ? v : Vec3{0, 0, 1});
    GaussRule gl = gauss_legendre(4, -1.0, 1.0);
    std::vector<Vec3> dirs;
    dirs.reserve(16);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            dirs.push_back(frame.direction(gl.nodes[i], 2.0 * kPi * (j + 0.5) / 4.0));
    return dirs;
}

DecayFitResult decay_fit_impl(const Vec3& v, double lo, double hi,
                              const std::vector<double>& s_values,
                              const std::function<std::vector<double>(double)>& radii_for_s,
                              const AngularRes& res, int threads) {
    DecayFitResult result;
    result.s_values = s_values;
    result.sup_values.assign(s_values.size(), 0.0);
    if (result.s_values.size() < 4)
        throw std::invalid_argument("decay fit: need at least 4 s-values");
    if (v.norm2() == 0.0) {
        result.degenerate = true;
        return result;
    }
    const auto dirs = decay_directions(v);
    std::vector<ShellOscillator> oscs;
    oscs.reserve(dirs.size());
    for (const auto& d : dirs) oscs.emplace_back(v, d, res);
    // sup per (s, direction) slot, max-reduced in fixed order afterward.
    const std::size_t nd = oscs.size();
    std::vector<double> slot(s_values.size() * nd, 0.0);
    parallel_for(s_values.size() * nd, threads, [&](std::size_t task) {
        const std::size_t is = task / nd;
        const std::size_t id = task % nd;
        const double s = s_values[is];
        const std::vector<double> radii = radii_for_s(s);
        double sup = 0.0;
        for (double r : radii) sup = std::max(sup, oscs[id].integrate(r, s, lo, hi).norm());
        slot[task] = sup;
    });
    for (std::size_t is = 0; is < s_values.size(); ++is) {
        double sup = 0.0;
        for (std::size_t id = 0; id < nd; ++id) sup = std::max(sup, slot[is * nd + id]);
        result.sup_values[is] = sup;
    }
    result.fit = fit_loglog(result.s_values, result.sup_values);
    result.degenerate = result.fit.degenerate;
    return result;
}

}  // namespace

DecayFitResult decay_fit_global(const Vec3& v, const CutoffSchedule& schedule, double t,
                            const std::vector<double>& s_values, const AngularRes& res,
                            int threads) {
    const double sigma_t = schedule.sigma_t(t);
    auto radii = [](double s) {
        std::vector<double> r;
        r.reserve(64);
        for (int i = 0; i < 48; ++i) r.push_back(2.0 * s * (i + 0.5) / 48.0);
        // Refinement near the light cone |x| ~ s where the sup is attained.
        static const double deltas[16] = {0.0,     -1e-4,  1e-4,  -4e-4, 4e-4, -1.6e-3,
                                          1.6e-3,  -6.4e-3, 6.4e-3, -2.5e-2, 2.5e-2, -0.05,
                                          0.05,    -0.1,   0.1,   0.2};
        for (double d : deltas) r.push_back(s * (1.0 + d));
        return r;
    };
    return decay_fit_impl(v, sigma_t, schedule.kappa, s_values, radii, res, threads);
}

DecayFitResult decay_fit_windowed(const Vec3& v, const CutoffSchedule& schedule, double t,
                            const std::vector<double>& s_values, double window_lo,
                            double window_hi, const AngularRes& res, int threads) {
    if (!(window_lo > 0.0 && window_lo < window_hi && window_hi < 1.0))
        throw std::invalid_argument("decay_fit_windowed: window must lie inside (0, 1)");
    const double slow = schedule.sigma_slow(t);
    auto radii = [window_lo, window_hi](double s) {
        std::vector<double> r;
        r.reserve(64);
        for (int i = 0; i < 64; ++i)
            r.push_back(s * (window_lo + (window_hi - window_lo) * (i + 0.5) / 64.0));
        return r;
    };
    return decay_fit_impl(v, slow, schedule.kappa, s_values, radii, res, threads);
}

MuOdeSolution mu_ode_solve(double c_coeff, const std::function<Complex(double)>& r, Complex m0,
                           double mu_end, double tol) {
    if (c_coeff < 0.0) throw std::invalid_argument("mu_ode_solve: C must be >= 0");
    MuOdeSolution sol;
    auto rhs = [&](double mu, Complex m) { return -mu * c_coeff * m + r(mu); };
    auto integrate = [&](int steps) {
        const double h = mu_end / steps;
        Complex m = m0;
        for (int i = 0; i < steps; ++i) {
            const double mu = i * h;
            const Complex k1 = rhs(mu, m);
            const Complex k2 = rhs(mu + 0.5 * h, m + 0.5 * h * k1);
            const Complex k3 = rhs(mu + 0.5 * h, m + 0.5 * h * k2);
            const Complex k4 = rhs(mu + h, m + h * k3);
            m += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        return m;
    };
    int steps = 64;
    Complex prev = integrate(steps);
    for (;;) {
        steps *= 2;
        const Complex cur = integrate(steps);
        if (std::abs(cur - prev) < tol) {
            sol.rk4 = cur;
            sol.steps = steps;
            break;
        }
        prev = cur;
        if (steps > (1 << 22))
            throw std::runtime_error("mu_ode_solve: step control failed to converge");
    }
    // Closed form of the linear ODE.
    auto re_part = [&](double m) {
        return (r(m) * std::exp(Complex{-0.5 * c_coeff * (mu_end * mu_end - m * m), 0.0})).real();
    };
    auto im_part = [&](double m) {
        return (r(m) * std::exp(Complex{-0.5 * c_coeff * (mu_end * mu_end - m * m), 0.0})).imag();
    };
    const double ire = adaptive_gauss_kronrod(re_part, 0.0, mu_end, 1e-12, 2000);
    const double iim = adaptive_gauss_kronrod(im_part, 0.0, mu_end, 1e-12, 2000);
    sol.closed_form =
        std::exp(Complex{-0.5 * c_coeff * mu_end * mu_end, 0.0}) * m0 + Complex{ire, iim};
    return sol;
}

}  // namespace bnkit
