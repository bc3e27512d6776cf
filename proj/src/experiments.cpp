#include "bnkit/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "bnkit/numerics.hpp"

namespace bnkit {

Vec3 eta_difference(const Vec3& v_j, const Vec3& v_l, const Vec3& k, double alpha) {
    const double r = k.norm();
    if (r == 0.0) throw std::invalid_argument("eta_difference: k = 0");
    const Vec3 khat = k / r;
    const double scale = std::sqrt(alpha) / (r * std::sqrt(r));
    return (v_j / (1.0 - khat.dot(v_j)) - v_l / (1.0 - khat.dot(v_l))) * scale;
}

double pair_angular_factor(const Vec3& v_j, const Vec3& v_l, bool projected, int n_polar,
                           int n_azimuth) {
    GaussRule polar = gauss_legendre(n_polar, -1.0, 1.0);
    const double dphi = 2.0 * kPi / n_azimuth;
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(n_polar) * n_azimuth);
    for (int ip = 0; ip < n_polar; ++ip) {
        const double c = polar.nodes[ip];
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        for (int ia = 0; ia < n_azimuth; ++ia) {
            const double phi = dphi * (ia + 0.5);
            const Vec3 khat{s * std::cos(phi), s * std::sin(phi), c};
            const Vec3 w = v_j / (1.0 - khat.dot(v_j)) - v_l / (1.0 - khat.dot(v_l));
            double val = w.norm2();
            if (projected) {
                const double wk = w.dot(khat);
                val -= wk * wk;
            }
            terms.push_back(polar.weights[ip] * dphi * val);
        }
    }
    return pairwise_sum(terms);
}

double c_suppression(const Vec3& v_j, const Vec3& v_l, double sigma, double kappa, double alpha,
                     bool projected) {
    if (!(sigma > 0.0 && sigma < kappa))
        throw std::invalid_argument("c_suppression: need 0 < sigma < kappa");
    if ((v_j - v_l).norm2() == 0.0) return 0.0;
    return alpha * std::log(kappa / sigma) * pair_angular_factor(v_j, v_l, projected);
}

OverlapMatrix::OverlapMatrix(const CellPartition& partition, const CutoffSchedule& schedule,
                             const DispersionModel& dispersion, double alpha, double rho_elec) {
    if (rho_elec < 0.0 || rho_elec > 1.0)
        throw std::invalid_argument("OverlapMatrix: rho_elec must lie in [0, 1]");
    n_ = partition.size();
    t_ = partition.t();
    entries_.assign(n_ * n_, Complex{0.0, 0.0});
    const double sigma_t = partition.sigma();
    const auto& cells = partition.cells();

    std::vector<double> gamma(n_, 0.0);
    if (rho_elec > 0.0) {
        for (std::size_t j = 0; j < n_; ++j) {
            PhaseSpec spec;
            spec.v_j = cells[j].velocity;
            spec.grad_e = dispersion.grad_energy(cells[j].center, sigma_t);
            spec.t = t_;
            spec.schedule = schedule;
            spec.alpha = alpha;
            gamma[j] = gamma_phase_fast(spec, t_);
        }
    }

    for (std::size_t l = 0; l < n_; ++l) {
        entries_[l * n_ + l] = cells[l].mass;
        for (std::size_t j = l + 1; j < n_; ++j) {
            Complex entry{0.0, 0.0};
            if (rho_elec > 0.0) {
                const double c_lj =
                    c_suppression(cells[j].velocity, cells[l].velocity, sigma_t, schedule.kappa,
                                  alpha, true);
                const double mag =
                    rho_elec * std::min(cells[l].mass, cells[j].mass) * std::exp(-0.5 * c_lj);
                entry = mag * std::exp(Complex{0.0, gamma[l] - gamma[j]});
            }
            entries_[l * n_ + j] = entry;
            entries_[j * n_ + l] = std::conj(entry);
        }
    }
}

double OverlapMatrix::diagonal_sum() const {
    std::vector<double> d(n_);
    for (std::size_t i = 0; i < n_; ++i) d[i] = entries_[i * n_ + i].real();
    return pairwise_sum(d);
}

double OverlapMatrix::max_offdiag_modulus() const {
    double m = 0.0;
    for (std::size_t l = 0; l < n_; ++l)
        for (std::size_t j = 0; j < n_; ++j)
            if (l != j) m = std::max(m, std::abs(entries_[l * n_ + j]));
    return m;
}

RefinementBoundResult refinement_diagonal_bound(const WavePacket& h, double t1, double t2,
                                                const CutoffSchedule& schedule,
                                                const DispersionModel& dispersion, double alpha,
                                                int threads) {
    if (!(t2 > t1) || !(t1 >= 2.0))
        throw std::invalid_argument("refinement_diagonal_bound: need t2 > t1 >= 2");
    RefinementBoundResult result;
    result.t1 = t1;
    result.t2 = t2;
    Refinement ref = refine(h, t1, t2, schedule, dispersion);
    const double sigma_t2 = schedule.sigma_t(t2);
    const double freeze = schedule.freeze_time(t2);

    // 3x3x3 deterministic sample per parent cell.
    const double fracs[3] = {1.0 / 6.0, 0.5, 5.0 / 6.0};

    result.pairs.resize(ref.child.size());
    parallel_for(ref.child.size(), threads, [&](std::size_t c) {
        const Cell& child = ref.child.cells()[c];
        const Cell& parent = ref.parent.cells()[ref.parent_of[c]];
        RefinementPair pair;
        pair.parent = ref.parent_of[c];
        pair.child = c;
        pair.child_mass = child.mass;
        pair.c_value = c_suppression(parent.velocity, child.velocity, sigma_t2, schedule.kappa,
                                     alpha, true);
        const double e_factor = std::exp(-0.5 * pair.c_value);
        double d_sup = 0.0, dg_max = 0.0;
        const Vec3 lo = parent.bounds.lo;
        const Vec3 ext = parent.bounds.hi - parent.bounds.lo;
        for (double fx : fracs)
            for (double fy : fracs)
                for (double fz : fracs) {
                    const Vec3 p{lo.x + fx * ext.x, lo.y + fy * ext.y, lo.z + fz * ext.z};
                    PhaseSpec spec;
                    spec.grad_e = dispersion.grad_energy(p, sigma_t2);
                    spec.t = t2;
                    spec.schedule = schedule;
                    spec.alpha = alpha;
                    spec.v_j = child.velocity;
                    const double g_child = gamma_phase_fast(spec, freeze);
                    spec.v_j = parent.velocity;
                    const double g_parent = gamma_phase_fast(spec, freeze);
                    const double dgamma = g_child - g_parent;
                    dg_max = std::max(dg_max, std::abs(dgamma));
                    d_sup = std::max(d_sup,
                                     std::abs(2.0 - 2.0 * std::cos(dgamma) * e_factor));
                }
        pair.d_sup = d_sup;
        pair.dgamma_max = dg_max;
        result.pairs[c] = pair;
    });
    std::vector<double> weighted(result.pairs.size());
    for (std::size_t c = 0; c < result.pairs.size(); ++c)
        weighted[c] = result.pairs[c].child_mass * result.pairs[c].d_sup;
    result.weighted_sum = pairwise_sum(weighted);
    return result;
}

namespace {

struct PQuadrature {
    std::vector<Vec3> points;
    std::vector<double> weights;  // carry |h(P)|^2 d^3P
};

PQuadrature wavepacket_quadrature(const WavePacket& h, int order) {
    const Box& box = h.support();
    GaussRule gx = gauss_legendre(order, box.lo.x, box.hi.x);
    GaussRule gy = gauss_legendre(order, box.lo.y, box.hi.y);
    GaussRule gz = gauss_legendre(order, box.lo.z, box.hi.z);
    PQuadrature q;
    q.points.reserve(static_cast<std::size_t>(order) * order * order);
    q.weights.reserve(q.points.capacity());
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j)
            for (int k = 0; k < order; ++k) {
                const Vec3 p{gx.nodes[i], gy.nodes[j], gz.nodes[k]};
                const double hv = h.value(p);
                q.points.push_back(p);
                q.weights.push_back(gx.weights[i] * gy.weights[j] * gz.weights[k] * hv * hv);
            }
    return q;
}

}  // namespace

AsymptoticExpectation asymptotic_expectation(const CoherentAmplitude& g_amp, const WavePacket& h,
                                             double kappa, const DispersionModel& dispersion,
                                             double alpha, ExpectationMethod method,
                                             int p_quad_order, int threads) {
    const GridPtr& grid = g_amp.grid();
    AsymptoticExpectation result;
    result.c_g = norm2(g_amp);

    PQuadrature pq = wavepacket_quadrature(h, p_quad_order);
    const std::size_t np = pq.points.size();
    std::vector<double> re(np), im(np), mod(np), wsum(np), re_rho(np);

    if (method == ExpectationMethod::ClosedForm) {
        const double fock = std::exp(-0.5 * result.c_g);
        parallel_for(np, threads, [&](std::size_t i) {
            const Vec3 u = dispersion.grad_energy(pq.points[i]);
            CoherentAmplitude cloud = lsz_cloud_amplitude(u, grid, alpha, kappa);
            // rho_u(G) = 2i Re <f_u^kappa, G>, purely imaginary.
            const Complex rho{0.0, 2.0 * inner_product(cloud, g_amp).real()};
            const Complex val = fock * std::exp(rho);
            re[i] = pq.weights[i] * val.real();
            im[i] = pq.weights[i] * val.imag();
            mod[i] = pq.weights[i] * std::abs(val);
            re_rho[i] = std::abs(rho.real());
            wsum[i] = pq.weights[i];
        });
    } else {
        parallel_for(np, threads, [&](std::size_t i) {
            const Vec3 u = dispersion.grad_energy(pq.points[i]);
            CoherentState state{lsz_cloud_amplitude(u, grid, alpha, kappa), 0.0};
            const CoherentState displaced = displace(state, g_amp * Complex{0.0, 1.0});
            const Complex val = state_overlap(state, displaced);
            re[i] = pq.weights[i] * val.real();
            im[i] = pq.weights[i] * val.imag();
            mod[i] = pq.weights[i] * std::abs(val);
            re_rho[i] = std::abs(std::log(std::abs(val)) + 0.5 * result.c_g);
            wsum[i] = pq.weights[i];
        });
    }
    for (double r : re_rho) result.max_re_rho = std::max(result.max_re_rho, r);
    result.value = {pairwise_sum(re), pairwise_sum(im)};
    result.integrand_modulus_integral = pairwise_sum(mod);
    result.modulus_prediction = std::exp(-0.5 * result.c_g) * pairwise_sum(wsum);
    return result;
}

}  // namespace bnkit
