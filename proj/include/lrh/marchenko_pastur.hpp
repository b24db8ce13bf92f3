// Marchenko-Pastur law with aspect ratio beta in (0, 1]: density, CDF, and
// median of the limiting squared-singular-value distribution.
//
// Convention: for an m-by-n matrix with i.i.d. unit-variance entries and
// beta = m/n <= 1, the eigenvalues of (1/n) Z Z^T follow the law supported
// on [(1 - sqrt(beta))^2, (1 + sqrt(beta))^2].
#ifndef LRH_MARCHENKO_PASTUR_HPP
#define LRH_MARCHENKO_PASTUR_HPP

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace lrh
{

namespace detail
{

// Integrand of the MP density after the substitution
// t(phi) = a cos^2(phi) + b sin^2(phi), which removes the inverse-sqrt
// singularities at both support edges. For beta = 1 (a = 0) the removable
// 0/0 at phi = 0 is cancelled analytically.
inline double mp_substituted_density(double phi, double a, double b, double beta)
{
    const double s = std::sin(phi);
    const double s2 = s * s;
    const double span = b - a;
    double ratio; // 4 sin^2 cos^2 / t(phi)
    if (a == 0.0)
        ratio = 4.0 * (1.0 - s2) / span;
    else
        ratio = 4.0 * s2 * (1.0 - s2) / (a + span * s2);
    return span * span * ratio / (4.0 * M_PI * beta);
}

template <typename F>
double adaptive_simpson_rec(const F& f, double lo, double hi, double f_lo, double f_mid,
                            double f_hi, double whole, double tol, int depth)
{
    const double mid = 0.5 * (lo + hi);
    const double lmid = 0.5 * (lo + mid);
    const double rmid = 0.5 * (mid + hi);
    const double f_lmid = f(lmid);
    const double f_rmid = f(rmid);
    const double left = (mid - lo) / 6.0 * (f_lo + 4.0 * f_lmid + f_mid);
    const double right = (hi - mid) / 6.0 * (f_mid + 4.0 * f_rmid + f_hi);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, lo, mid, f_lo, f_lmid, f_mid, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, mid, hi, f_mid, f_rmid, f_hi, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double lo, double hi, double tol)
{
    if (!(hi > lo))
        return 0.0;
    const double mid = 0.5 * (lo + hi);
    const double f_lo = f(lo);
    const double f_mid = f(mid);
    const double f_hi = f(hi);
    const double whole = (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
    return adaptive_simpson_rec(f, lo, hi, f_lo, f_mid, f_hi, whole, tol, 48);
}

} // namespace detail

inline double mp_support_lower(double beta) { return std::pow(1.0 - std::sqrt(beta), 2); }
inline double mp_support_upper(double beta) { return std::pow(1.0 + std::sqrt(beta), 2); }

/// CDF of the MP law at t, by adaptive quadrature of the substituted density.
inline double mp_cdf(double t, double beta)
{
    if (!(beta > 0.0 && beta <= 1.0))
        throw std::invalid_argument("mp_cdf: beta must lie in (0, 1]");
    const double a = mp_support_lower(beta);
    const double b = mp_support_upper(beta);
    if (t <= a)
        return 0.0;
    if (t >= b)
        return 1.0;
    const double phi_t = std::asin(std::sqrt((t - a) / (b - a)));
    auto g = [a, b, beta](double phi) { return detail::mp_substituted_density(phi, a, b, beta); };
    return detail::adaptive_simpson(g, 0.0, phi_t, 1e-13);
}

/// Median of the MP law: the unique t with CDF(t) = 1/2, bisected to an
/// absolute tolerance of 1e-10. Results are cached per beta; the cache is
/// safe for concurrent use.
inline double mp_median(double beta)
{
    if (!(beta > 0.0 && beta <= 1.0))
        throw std::invalid_argument("mp_median: beta must lie in (0, 1]");

    static std::mutex cache_mutex;
    static std::map<double, double> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(beta);
        if (it != cache.end())
            return it->second;
    }

    double lo = mp_support_lower(beta);
    double hi = mp_support_upper(beta);
    while (hi - lo > 1e-10)
    {
        const double mid = 0.5 * (lo + hi);
        if (mp_cdf(mid, beta) < 0.5)
            lo = mid;
        else
            hi = mid;
    }
    const double median = 0.5 * (lo + hi);

    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(beta, median);
    return median;
}

} // namespace lrh

#endif // LRH_MARCHENKO_PASTUR_HPP
