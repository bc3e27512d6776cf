#include "bnkit/dispersion.hpp"

#include <cmath>
#include <stdexcept>

#include "bnkit/numerics.hpp"

namespace bnkit {

namespace {

void require_in_ball(const Vec3& p) {
    if (p.norm() >= kMomentumBallRadius)
        throw std::invalid_argument("dispersion: momentum outside |P| < 1/3");
}

double sigma_factor(double sigma_c, double sigma) {
    return sigma_c > 0.0 && sigma > 0.0 ? 1.0 + sigma_c * std::sqrt(sigma) : 1.0;
}

// Per-axis bump profile on [0,1]: q(u) = (4 u (1-u))^2, C^1 with q = q' = 0
// at both ends.
double bump(double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    const double w = 4.0 * u * (1.0 - u);
    return w * w;
}

double bump_deriv(double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    const double w = 4.0 * u * (1.0 - u);
    return 2.0 * w * 4.0 * (1.0 - 2.0 * u);
}

}  // namespace

double DispersionModel::energy(const Vec3& p, double sigma) const {
    require_in_ball(p);
    const double mass = kind == Kind::Free ? 1.0 : m_ren;
    return sigma_factor(sigma_c, sigma) * p.norm2() / (2.0 * mass);
}

Vec3 DispersionModel::grad_energy(const Vec3& p, double sigma) const {
    require_in_ball(p);
    const double mass = kind == Kind::Free ? 1.0 : m_ren;
    return p * (sigma_factor(sigma_c, sigma) / mass);
}

double velocity_delta(const Vec3& grad_e, const Vec3& khat) {
    return 1.0 - grad_e.dot(khat);
}

WavePacket::WavePacket(Box support) : support_(support) {
    const Vec3 ext = support.hi - support.lo;
    if (!(ext.x > 0.0 && ext.y > 0.0 && ext.z > 0.0))
        throw std::invalid_argument("WavePacket: empty support box");
    norm2_ = mass_in_box(support_);
}

double WavePacket::value(const Vec3& p) const {
    const Vec3 ext = support_.hi - support_.lo;
    return bump((p.x - support_.lo.x) / ext.x) * bump((p.y - support_.lo.y) / ext.y) *
           bump((p.z - support_.lo.z) / ext.z);
}

Vec3 WavePacket::gradient(const Vec3& p) const {
    const Vec3 ext = support_.hi - support_.lo;
    const double ux = (p.x - support_.lo.x) / ext.x;
    const double uy = (p.y - support_.lo.y) / ext.y;
    const double uz = (p.z - support_.lo.z) / ext.z;
    const double bx = bump(ux), by = bump(uy), bz = bump(uz);
    return {bump_deriv(ux) / ext.x * by * bz, bx * bump_deriv(uy) / ext.y * bz,
            bx * by * bump_deriv(uz) / ext.z};
}

double WavePacket::mass_in_box(const Box& box, int order_per_axis) const {
    // Clip to the support; |h|^2 is degree 8 per axis, so order 5 is exact on
    // boxes aligned with the support.
    Box b{{std::max(box.lo.x, support_.lo.x), std::max(box.lo.y, support_.lo.y),
           std::max(box.lo.z, support_.lo.z)},
          {std::min(box.hi.x, support_.hi.x), std::min(box.hi.y, support_.hi.y),
           std::min(box.hi.z, support_.hi.z)}};
    if (b.lo.x >= b.hi.x || b.lo.y >= b.hi.y || b.lo.z >= b.hi.z) return 0.0;
    GaussRule gx = gauss_legendre(order_per_axis, b.lo.x, b.hi.x);
    GaussRule gy = gauss_legendre(order_per_axis, b.lo.y, b.hi.y);
    GaussRule gz = gauss_legendre(order_per_axis, b.lo.z, b.hi.z);
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(order_per_axis) * order_per_axis * order_per_axis);
    for (int i = 0; i < order_per_axis; ++i)
        for (int j = 0; j < order_per_axis; ++j)
            for (int k = 0; k < order_per_axis; ++k) {
                const Vec3 p{gx.nodes[i], gy.nodes[j], gz.nodes[k]};
                const double h = value(p);
                terms.push_back(gx.weights[i] * gy.weights[j] * gz.weights[k] * h * h);
            }
    return pairwise_sum(terms);
}

WavePacket default_wavepacket(double r_alpha) {
    const Box cube{{0.08, 0.08, 0.08}, {0.18, 0.18, 0.18}};
    const double inner = cube.lo.norm();
    const double outer = cube.hi.norm();
    if (inner <= r_alpha || outer >= kMomentumBallRadius)
        throw std::invalid_argument("default_wavepacket: support does not fit the shell");
    return WavePacket(cube);
}

}  // namespace bnkit
