#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace fols {

/// Error type thrown by all modules on contract violations.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

inline void require(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
}

constexpr double kPi = 3.141592653589793238462643383279502884;

/// Format a double with full round-trip precision (shortest form that
/// parses back to the same bits is overkill; %.17g is always sufficient).
std::string fmt_full(double v);

/// Fixed short format used in SVG output so files are byte-deterministic.
std::string fmt_short(double v);

/// Gauss-Legendre nodes and weights on [0,1]. Cached per n.
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const Quadrature& gauss_legendre_01(int n);

/// Integrate f over [a,b] with an n-point Gauss-Legendre rule.
double integrate(const std::function<double(double)>& f, double a, double b, int n = 64);

/// Least-squares exponential fit y ~ c * exp(-rate * t) using entries with
/// y > floor. Returns rate (positive = decay), the linear-fit rms residual in
/// log space, and the number of samples used.
struct ExpFit {
    double rate = 0.0;
    double residual = 0.0;
    int samples = 0;
    bool valid = false;
};
ExpFit fit_exponential_decay(const std::vector<double>& t, const std::vector<double>& y,
                             double floor = 0.0);

/// C^2 cubic spline through tabulated samples (x strictly increasing).
/// left_slope clamps the derivative at the first knot (pass 0 for even radial
/// profiles); NaN selects a natural end. The right end is natural. C^2
/// smoothness matters because interpolated profiles get second-differenced.
class CubicTable {
public:
    CubicTable() = default;
    CubicTable(std::vector<double> x, std::vector<double> y,
               double left_slope = std::numeric_limits<double>::quiet_NaN());
    double operator()(double x) const;
    bool empty() const { return x_.empty(); }

private:
    std::vector<double> x_, y_, m_; // m_: second derivatives at knots
};

/// Run fn(i) for i in [0, n) on a small worker pool. The pool size is capped
/// by the FOLSCHWARZ_THREADS environment variable. Results must be written to
/// disjoint slots; scheduling is deterministic in the sense that no output
/// depends on thread interleaving.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// FNV-1a, used to key eigenpair cache files.
std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t seed = 1469598103934665603ull);

} // namespace fols
