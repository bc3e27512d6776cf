#ifndef BNKIT_EXPERIMENTS_HPP
#define BNKIT_EXPERIMENTS_HPP

#include <complex>
#include <vector>

#include "bnkit/coherent.hpp"
#include "bnkit/dispersion.hpp"
#include "bnkit/partition.hpp"
#include "bnkit/softphoton.hpp"

namespace bnkit {

/// eta_{l,j}(k) = sqrt(alpha) [ v_j / (|k|^{3/2}(1 - khat.v_j))
///                            - v_l / (|k|^{3/2}(1 - khat.v_l)) ];
/// antisymmetric under (j, l) swap.
Vec3 eta_difference(const Vec3& v_j, const Vec3& v_l, const Vec3& k, double alpha);

/// Angular factor A(v_j, v_l) with C_{l,j,sigma} = alpha ln(kappa/sigma) A.
/// projected = true pairs eta with the transverse polarizations
/// (sum_lambda |eta.eps|^2); false integrates the plain |eta|^2.
double pair_angular_factor(const Vec3& v_j, const Vec3& v_l, bool projected = true,
                           int n_polar = 64, int n_azimuth = 64);

/// C_{l,j,sigma} = int_{sigma<|k|<kappa} of the (projected) |eta|^2 measure.
double c_suppression(const Vec3& v_j, const Vec3& v_l, double sigma, double kappa, double alpha,
                     bool projected = true);

/// Cell-pair overlap matrix at time t. Diagonal entries are the cell masses;
/// off-diagonal entries model coherent suppression exp(-C_{l,j,sigma_t}/2),
/// the relative dressing phase exp(i(gamma_l - gamma_j)), and a synthetic
/// electron cross-overlap rho_elec (the true electron overlap vanishes by
/// momentum-support disjointness; rho_elec > 0 makes the photon suppression
/// observable).
class OverlapMatrix {
public:
    OverlapMatrix(const CellPartition& partition, const CutoffSchedule& schedule,
                  const DispersionModel& dispersion, double alpha, double rho_elec);

    std::size_t size() const { return n_; }
    double t() const { return t_; }
    Complex at(std::size_t l, std::size_t j) const { return entries_[l * n_ + j]; }
    double diagonal_sum() const;
    double max_offdiag_modulus() const;

private:
    std::size_t n_ = 0;
    double t_ = 0.0;
    std::vector<Complex> entries_;
};

/// One (parent j, child l(j)) record of the refinement diagonal bound.
struct RefinementPair {
    std::size_t parent = 0;
    std::size_t child = 0;
    double d_sup = 0.0;       // sup over cell samples of |2 - 2 cos(dgamma) e^{-C/2}|
    double child_mass = 0.0;
    double c_value = 0.0;     // C_{l(j),j,sigma_t2}
    double dgamma_max = 0.0;
};

struct RefinementBoundResult {
    double t1 = 0.0, t2 = 0.0;
    std::vector<RefinementPair> pairs;
    double weighted_sum = 0.0;  // sum over pairs of child_mass * d_sup
};

/// Diagonal bound across a refinement step: Delta gamma evaluated at the
/// frozen time sigma_{t2}^{-1/theta}, C at cutoff sigma_{t2}; sup over a
/// 3x3x3 deterministic sample per parent cell.
RefinementBoundResult refinement_diagonal_bound(const WavePacket& h, double t1, double t2,
                                                const CutoffSchedule& schedule,
                                                const DispersionModel& dispersion, double alpha,
                                                int threads = 1);

enum class ExpectationMethod { ClosedForm, Direct };

struct AsymptoticExpectation {
    Complex value{0.0, 0.0};
    double c_g = 0.0;                        // |G|^2 over the full grid
    double modulus_prediction = 0.0;         // e^{-C_G/2} |h|_2^2
    double integrand_modulus_integral = 0.0; // int |e^{-C_G/2} e^{rho(P)}| |h|^2 d^3P
    double max_re_rho = 0.0;                 // sup_P |Re rho(P)|; 0 when purely imaginary
};

/// <psi_h, W(G) psi_h> in the coherent model:
/// ClosedForm evaluates int e^{-|G|^2/2} e^{rho_{grad E_P}(G)} |h(P)|^2 d^3P
/// with rho_u(G) = 2i Re <f_u^kappa, G>; Direct builds the per-P coherent
/// states, applies the Weyl displacement, and integrates the raw overlaps.
AsymptoticExpectation asymptotic_expectation(const CoherentAmplitude& g_amp, const WavePacket& h,
                                             double kappa, const DispersionModel& dispersion,
                                             double alpha, ExpectationMethod method,
                                             int p_quad_order = 8, int threads = 1);

}  // namespace bnkit

#endif
