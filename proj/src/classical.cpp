#include "bnkit/classical.hpp"

#include <cmath>
#include <stdexcept>

#include "bnkit/io.hpp"
#include "bnkit/numerics.hpp"

namespace bnkit {

double natural_charge(double alpha) {
    const double two_pi = 2.0 * kPi;
    return 2.0 * two_pi * two_pi * two_pi * std::sqrt(alpha);
}

std::array<std::array<double, 4>, 4> FieldTensor::matrix() const {
    std::array<std::array<double, 4>, 4> f{};
    const double e[3] = {E.x, E.y, E.z};
    for (int i = 0; i < 3; ++i) {
        f[i + 1][0] = e[i];
        f[0][i + 1] = -e[i];
    }
    f[1][2] = -B.z;
    f[2][1] = B.z;
    f[2][3] = -B.x;
    f[3][2] = B.x;
    f[3][1] = -B.y;
    f[1][3] = B.y;
    return f;
}

namespace {

// C^1 smoothstep: s(0)=0, s(1)=1, s'(0)=s'(1)=0.
double smoothstep(double u) { return u * u * (3.0 - 2.0 * u); }
double smoothstep_deriv(double u) { return 6.0 * u * (1.0 - u); }
// int_0^u s = u^3 - u^4/2
double smoothstep_integral(double u) { return u * u * u * (1.0 - 0.5 * u); }

}  // namespace

Trajectory::Trajectory(const Vec3& v_in, const Vec3& v_out, double t_bar)
    : v_in_(v_in), v_out_(v_out), t_bar_(t_bar) {
    if (v_in.norm() >= 1.0 || v_out.norm() >= 1.0)
        throw std::invalid_argument("Trajectory: speeds must be < 1");
    if (!(t_bar > 0.0)) throw std::invalid_argument("Trajectory: t_bar must be > 0");
}

Vec3 Trajectory::position(double t) const {
    if (t <= 0.0) return v_in_ * t;
    if (t >= t_bar_) return x_star() + v_out_ * t;
    const double u = t / t_bar_;
    return v_in_ * t + (v_out_ - v_in_) * (t_bar_ * smoothstep_integral(u));
}

Vec3 Trajectory::velocity(double t) const {
    if (t <= 0.0) return v_in_;
    if (t >= t_bar_) return v_out_;
    return v_in_ + (v_out_ - v_in_) * smoothstep(t / t_bar_);
}

Vec3 Trajectory::acceleration(double t) const {
    if (t <= 0.0 || t >= t_bar_) return {0, 0, 0};
    return (v_out_ - v_in_) * (smoothstep_deriv(t / t_bar_) / t_bar_);
}

double Trajectory::v_max() const {
    // Velocity interpolates linearly between the endpoints along a fixed
    // segment, so the max speed is attained at an endpoint or on the segment.
    double m = std::max(v_in_.norm(), v_out_.norm());
    for (int i = 1; i < 32; ++i) m = std::max(m, velocity(t_bar_ * i / 32.0).norm());
    return m;
}

FieldTensor lw_uniform(double q, const Vec3& x0, const Vec3& v, double t, const Vec3& y) {
    if (v.norm() >= 1.0) throw std::invalid_argument("lw_uniform: |v| must be < 1");
    const Vec3 r = y - (x0 + v * t);  // present-position separation
    const double r2 = r.norm2();
    if (r2 == 0.0) throw std::invalid_argument("lw_uniform: evaluation on the worldline");
    const Vec3 rxv = r.cross(v);
    const double denom = std::pow(r2 - rxv.norm2(), 1.5);
    FieldTensor f;
    f.E = r * (q * (1.0 - v.norm2()) / (4.0 * kPi * denom));
    f.B = v.cross(f.E);
    return f;
}

double retarded_time(const Trajectory& traj, double t, const Vec3& y, double tol) {
    if (tol <= 0.0) tol = 1e-12 * (1.0 + std::abs(t));
    auto f = [&](double tr) { return t - tr - (y - traj.position(tr)).norm(); };
    // f is strictly decreasing (|v| < 1); bracket below, then bisect + Newton.
    double hi = t;
    const double f_hi = f(hi);
    if (f_hi == 0.0) throw std::invalid_argument("retarded_time: point on the worldline");
    double step = std::max(1.0, (y - traj.position(t)).norm() / (1.0 - traj.v_max()));
    double lo = t - step;
    int guard = 0;
    while (f(lo) <= 0.0) {
        step *= 2.0;
        lo = t - step;
        if (++guard > 200) throw std::runtime_error("retarded_time: bracketing failed");
    }
    for (int i = 0; i < 200 && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    // Newton polish.
    double tr = 0.5 * (lo + hi);
    for (int i = 0; i < 8; ++i) {
        const Vec3 r = y - traj.position(tr);
        const double rn = r.norm();
        if (rn == 0.0) break;
        const double val = t - tr - rn;
        const double deriv = -1.0 + r.dot(traj.velocity(tr)) / rn;
        const double dt = val / deriv;
        tr -= dt;
        if (std::abs(dt) < 0.25 * tol) break;
    }
    return tr;
}

FieldTensor lw_retarded(double q, const Trajectory& traj, double t, const Vec3& y, double tol) {
    const double tr = retarded_time(traj, t, y, tol);
    const Vec3 r = y - traj.position(tr);
    const double rn = r.norm();
    if (rn == 0.0) throw std::invalid_argument("lw_retarded: evaluation on the worldline");
    const Vec3 n = r / rn;
    const Vec3 beta = traj.velocity(tr);
    const Vec3 acc = traj.acceleration(tr);
    const double one_nb = 1.0 - n.dot(beta);
    const double denom = 4.0 * kPi * one_nb * one_nb * one_nb;
    FieldTensor f;
    const Vec3 n_minus_b = n - beta;
    f.E = n_minus_b * (q * (1.0 - beta.norm2()) / (denom * rn * rn)) +
          n.cross(n_minus_b.cross(acc)) * (q / (denom * rn));
    f.B = n.cross(f.E);
    return f;
}

FieldTensor radiation_in(double q, const Trajectory& traj, double t, const Vec3& y) {
    if (!(t < 0.0)) throw std::invalid_argument("radiation_in: defined for t < 0");
    return lw_retarded(q, traj, t, y) - lw_uniform(q, {0, 0, 0}, traj.v_in(), t, y);
}

FieldTensor radiation_out(double q, const Trajectory& traj, double t, const Vec3& y) {
    if (!(t > traj.t_bar())) throw std::invalid_argument("radiation_out: defined for t > t_bar");
    return lw_retarded(q, traj, t, y) - lw_uniform(q, traj.x_star(), traj.v_out(), t, y);
}

Vec3 a_as_potential(const Vec3& v_as, const Vec3& v_lw, double t, const Vec3& y, double Lambda,
                    double alpha, const AngularRes& res) {
    if (v_as.norm() >= 1.0 || v_lw.norm() >= 1.0)
        throw std::invalid_argument("a_as_potential: |v| must be < 1");
    const double root_alpha = std::sqrt(alpha);
    const Vec3 axis = y.norm2() > 0.0 ? y : Vec3{0, 0, 1};
    Vec3 acc{0, 0, 0};
    if (v_as.norm2() > 0.0) {
        ShellOscillator osc_as(v_as, axis, res);
        acc += osc_as.integrate(y.norm(), t, 0.0, Lambda);
    }
    if (v_lw.norm2() > 0.0) {
        ShellOscillator osc_lw(v_lw, axis, res);
        acc -= osc_lw.integrate(y.norm(), t, 0.0, Lambda);
    }
    return acc * root_alpha;
}

namespace {

// Five-point 4th-order first derivative along a coordinate.
template <typename F>
double deriv4(const F& f, double h) {
    return (-f(2) + 8.0 * f(1) - 8.0 * f(-1) + f(-2)) / (12.0 * h);
}

}  // namespace

MaxwellResidual maxwell_residual_of(const std::function<FieldTensor(double, const Vec3&)>& f,
                                    double t, const Vec3& y, double h) {
    auto field = [&](double dt, const Vec3& dy) { return f(t + dt, y + dy); };

    const Vec3 ex{1, 0, 0}, ey{0, 1, 0}, ez{0, 0, 1};
    auto d_space = [&](auto comp, const Vec3& dir) {
        return deriv4([&](int m) { return comp(field(0.0, dir * (m * h))); }, h);
    };
    auto d_time = [&](auto comp) {
        return deriv4([&](int m) { return comp(field(m * h, {0, 0, 0})); }, h);
    };

    const double dEx_dx = d_space([](const FieldTensor& f) { return f.E.x; }, ex);
    const double dEy_dy = d_space([](const FieldTensor& f) { return f.E.y; }, ey);
    const double dEz_dz = d_space([](const FieldTensor& f) { return f.E.z; }, ez);

    const double dBz_dy = d_space([](const FieldTensor& f) { return f.B.z; }, ey);
    const double dBy_dz = d_space([](const FieldTensor& f) { return f.B.y; }, ez);
    const double dBx_dz = d_space([](const FieldTensor& f) { return f.B.x; }, ez);
    const double dBz_dx = d_space([](const FieldTensor& f) { return f.B.z; }, ex);
    const double dBy_dx = d_space([](const FieldTensor& f) { return f.B.y; }, ex);
    const double dBx_dy = d_space([](const FieldTensor& f) { return f.B.x; }, ey);

    const double dEx_dt = d_time([](const FieldTensor& f) { return f.E.x; });
    const double dEy_dt = d_time([](const FieldTensor& f) { return f.E.y; });
    const double dEz_dt = d_time([](const FieldTensor& f) { return f.E.z; });

    const Vec3 curl_b{dBz_dy - dBy_dz, dBx_dz - dBz_dx, dBy_dx - dBx_dy};
    const Vec3 ampere = curl_b - Vec3{dEx_dt, dEy_dt, dEz_dt};
    const double gauss = dEx_dx + dEy_dy + dEz_dz;

    MaxwellResidual res;
    double scale = 0.0;
    for (double d : {dEx_dx, dEy_dy, dEz_dz, dBz_dy, dBy_dz, dBx_dz, dBz_dx, dBy_dx, dBx_dy,
                     dEx_dt, dEy_dt, dEz_dt})
        scale = std::max(scale, std::abs(d));
    res.scale = scale;
    if (scale > 0.0) {
        res.gauss = std::abs(gauss) / scale;
        res.ampere = ampere.norm() / scale;
    }
    return res;
}

MaxwellResidual maxwell_residual(double q, const Trajectory& traj, double t, const Vec3& y,
                                 double h) {
    return maxwell_residual_of(
        [&](double tt, const Vec3& yy) { return lw_retarded(q, traj, tt, yy); }, t, y, h);
}

std::string field_map_to_csv(double q, const Trajectory& traj, const std::vector<double>& times,
                             double extent, int points_per_axis) {
    CsvWriter csv({"t", "y1", "y2", "y3", "Ex", "Ey", "Ez", "Bx", "By", "Bz", "absF"});
    const int n = points_per_axis;
    for (double t : times)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const Vec3 y{-extent + 2.0 * extent * (i + 0.5) / n,
                                 -extent + 2.0 * extent * (j + 0.5) / n,
                                 -extent + 2.0 * extent * (k + 0.5) / n};
                    if ((y - traj.position(t)).norm() < 1e-3) continue;  // skip the worldline
                    const FieldTensor f = lw_retarded(q, traj, t, y);
                    csv.cell(t).cell(y.x).cell(y.y).cell(y.z).cell(f.E.x).cell(f.E.y)
                        .cell(f.E.z).cell(f.B.x).cell(f.B.y).cell(f.B.z).cell(f.magnitude());
                    csv.end_row();
                }
    return csv.str();
}

}  // namespace bnkit
