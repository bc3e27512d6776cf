#include "bnkit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <thread>

namespace bnkit {

GaussRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chapman guess, then Newton on P_n.
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

GaussRule gauss_legendre(int n, double a, double b) {
    GaussRule rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = mid + half * rule.nodes[i];
        rule.weights[i] *= half;
    }
    return rule;
}

double pairwise_sum(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

double sine_integral(double x) {
    const double ax = std::abs(x);
    double si;
    if (ax <= 2.0) {
        // Alternating power series, converges quickly on this range.
        double term = ax;  // n = 0 term: x
        double sum = 0.0;
        const double x2 = ax * ax;
        for (int n = 0; n < 40; ++n) {
            sum += term / (2.0 * n + 1.0);
            term *= -x2 / ((2.0 * n + 2.0) * (2.0 * n + 3.0));
            if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
        }
        si = sum;
    } else {
        // Ci + i*Si via the modified Lentz continued fraction for E1(ix).
        const std::complex<double> one(1.0, 0.0);
        std::complex<double> b(1.0, ax);
        std::complex<double> c(1.0 / 1e-300, 0.0);
        std::complex<double> d = one / b;
        std::complex<double> h = d;
        for (int i = 2; i <= 200; ++i) {
            const double a = -(i - 1.0) * (i - 1.0);
            b += 2.0;
            d = one / (a * d + b);
            c = b + a / c;
            const std::complex<double> del = c * d;
            h *= del;
            if (std::abs(del - one) < 1e-16) break;
        }
        h *= std::complex<double>(std::cos(ax), -std::sin(ax));
        si = 0.5 * kPi + h.imag();
    }
    return x < 0.0 ? -si : si;
}

namespace {

// Gauss-Kronrod 7/15 nodes and weights (positive half, node 0 included).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GkEstimate {
    double value;
    double error;
};

GkEstimate gk15(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const double f0 = f(mid);
    double res_g = f0 * kWg[3];
    double res_k = f0 * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(mid - dx);
        const double f2 = f(mid + dx);
        res_k += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) res_g += kWg[j / 2] * (f1 + f2);
    }
    res_g *= half;
    res_k *= half;
    return {res_k, std::abs(res_k - res_g)};
}

}  // namespace

double adaptive_gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, int max_subdivisions) {
    struct Interval {
        double a, b, value, error;
    };
    GkEstimate whole = gk15(f, a, b);
    std::vector<Interval> heap{{a, b, whole.value, whole.error}};
    int splits = 0;
    auto total_error = [&] {
        double e = 0.0;
        for (const auto& iv : heap) e += iv.error;
        return e;
    };
    while (total_error() > abs_tol) {
        if (++splits > max_subdivisions) {
            double v = 0.0;
            for (const auto& iv : heap) v += iv.value;
            throw QuadratureToleranceError(
                "adaptive_gauss_kronrod: tolerance not reached within max subdivisions", v,
                total_error());
        }
        auto worst = std::max_element(heap.begin(), heap.end(),
                                      [](const Interval& u, const Interval& v) {
                                          return u.error < v.error;
                                      });
        const Interval iv = *worst;
        heap.erase(worst);
        const double mid = 0.5 * (iv.a + iv.b);
        GkEstimate left = gk15(f, iv.a, mid);
        GkEstimate right = gk15(f, mid, iv.b);
        heap.push_back({iv.a, mid, left.value, left.error});
        heap.push_back({mid, iv.b, right.value, right.error});
    }
    std::vector<double> parts;
    parts.reserve(heap.size());
    std::sort(heap.begin(), heap.end(),
              [](const Interval& u, const Interval& v) { return u.a < v.a; });
    for (const auto& iv : heap) parts.push_back(iv.value);
    return pairwise_sum(parts);
}

PiecewiseChebyshev::PiecewiseChebyshev(const std::function<void(double, double*)>& sample,
                                       double a, double b, int n_panels, int order, int dim)
    : a_(a), b_(b), n_panels_(n_panels), order_(order), dim_(dim) {
    if (n_panels < 1 || order < 2 || dim < 1)
        throw std::invalid_argument("PiecewiseChebyshev: bad shape");
    panel_width_ = (b - a) / n_panels;
    const int p = order;
    coeff_.assign(static_cast<std::size_t>(n_panels) * (p + 1) * dim, 0.0);
    std::vector<double> values(static_cast<std::size_t>(p + 1) * dim);
    std::vector<double> cosj(p + 1);
    for (int panel = 0; panel < n_panels; ++panel) {
        const double lo = a + panel * panel_width_;
        const double mid = lo + 0.5 * panel_width_;
        const double half = 0.5 * panel_width_;
        for (int j = 0; j <= p; ++j) {
            cosj[j] = std::cos(kPi * j / p);
            sample(mid + half * cosj[j], &values[static_cast<std::size_t>(j) * dim]);
        }
        // Chebyshev-Lobatto transform (direct sums; order is small).
        for (int k = 0; k <= p; ++k) {
            double* ck = &coeff_[(static_cast<std::size_t>(panel) * (p + 1) + k) * dim];
            for (int d = 0; d < dim; ++d) ck[d] = 0.0;
            for (int j = 0; j <= p; ++j) {
                const double w = (j == 0 || j == p) ? 0.5 : 1.0;
                const double ct = std::cos(kPi * j * k / p);
                const double* vj = &values[static_cast<std::size_t>(j) * dim];
                for (int d = 0; d < dim; ++d) ck[d] += w * ct * vj[d];
            }
            const double scale = (k == 0 || k == p) ? 1.0 / p : 2.0 / p;
            for (int d = 0; d < dim; ++d) ck[d] *= scale;
        }
    }
}

void PiecewiseChebyshev::eval(double x, double* out) const {
    int panel = static_cast<int>((x - a_) / panel_width_);
    panel = std::clamp(panel, 0, n_panels_ - 1);
    const double lo = a_ + panel * panel_width_;
    const double t = 2.0 * (x - lo) / panel_width_ - 1.0;
    const int p = order_;
    const double* c = &coeff_[static_cast<std::size_t>(panel) * (p + 1) * dim_];
    // Clenshaw recurrence per component.
    for (int d = 0; d < dim_; ++d) {
        double b1 = 0.0, b2 = 0.0;
        for (int k = p; k >= 1; --k) {
            const double b0 = 2.0 * t * b1 - b2 + c[static_cast<std::size_t>(k) * dim_ + d];
            b2 = b1;
            b1 = b0;
        }
        out[d] = t * b1 - b2 + c[d];
    }
}

double PiecewiseChebyshev::eval1(double x) const {
    double v;
    eval(x, &v);
    return v;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    LineFit fit;
    fit.n = x.size();
    if (x.size() != y.size() || x.size() < 2) return fit;
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-300) return fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    const double ss_tot = syy - sy * sy / n;
    double ss_res = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ss_res += r * r;
    }
    fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.degenerate = false;
    return fit;
}

void parallel_for(std::size_t n, int n_threads, const std::function<void(std::size_t)>& body) {
    if (n == 0) return;
    if (n_threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(n_threads, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr error;
    std::mutex error_mutex;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

LineFit fit_loglog(std::span<const double> x, std::span<const double> y,
                   std::size_t min_points) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (x[i] > 0.0 && y[i] > 0.0) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    if (lx.size() < min_points) {
        LineFit fit;
        fit.n = lx.size();
        return fit;
    }
    return fit_line(lx, ly);
}

}  // namespace bnkit
