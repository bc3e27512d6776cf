#ifndef BNKIT_NUMERICS_HPP
#define BNKIT_NUMERICS_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace bnkit {

inline constexpr double kPi = 3.14159265358979323846;

/// Gauss-Legendre rule on [-1, 1]; nodes ascending.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes/weights by Newton iteration on the Legendre polynomial.
GaussRule gauss_legendre(int n);

/// Map a [-1,1] rule onto [a, b].
GaussRule gauss_legendre(int n, double a, double b);

/// Deterministic pairwise summation, order fixed by index.
double pairwise_sum(std::span<const double> v);

/// Sine integral Si(x) = int_0^x sin(t)/t dt.
/// Power series for small |x|, complex continued fraction otherwise.
double sine_integral(double x);

/// Thrown when an adaptive quadrature cannot reach its tolerance; carries the
/// best estimate so callers can decide what to do with it.
class QuadratureToleranceError : public std::runtime_error {
public:
    QuadratureToleranceError(const std::string& what, double value, double achieved)
        : std::runtime_error(what), value_(value), achieved_(achieved) {}
    double value() const { return value_; }
    double achieved_error() const { return achieved_; }

private:
    double value_;
    double achieved_;
};

/// Adaptive Gauss-Kronrod 7/15 with absolute tolerance.
/// Throws QuadratureToleranceError if max_subdivisions is exhausted.
double adaptive_gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, int max_subdivisions = 2000);

/// Piecewise Chebyshev interpolant of a smooth function on [a, b]:
/// uniform panels, Chebyshev-Lobatto nodes of fixed order per panel.
/// `dim` values are interpolated simultaneously (vector-valued samples).
class PiecewiseChebyshev {
public:
    /// sample(x, out) must fill out[0..dim).
    PiecewiseChebyshev(const std::function<void(double, double*)>& sample, double a, double b,
                       int n_panels, int order, int dim);

    void eval(double x, double* out) const;
    double eval1(double x) const;

    double a() const { return a_; }
    double b() const { return b_; }
    int panels() const { return n_panels_; }
    int dim() const { return dim_; }

private:
    double a_, b_, panel_width_;
    int n_panels_, order_, dim_;
    std::vector<double> coeff_;  // [panel][k][dim]
};

/// Least-squares line fit y = slope*x + intercept with R^2.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::size_t n = 0;
    bool degenerate = true;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// log-log fit of y vs x; non-positive points are skipped. Degenerate when
/// fewer than min_points survive.
LineFit fit_loglog(std::span<const double> x, std::span<const double> y,
                   std::size_t min_points = 4);

/// Static block-partitioned parallel loop. Results must be written to
/// per-index slots so the outcome is identical for any thread count.
void parallel_for(std::size_t n, int n_threads, const std::function<void(std::size_t)>& body);

}  // namespace bnkit

#endif
