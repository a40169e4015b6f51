#include "fols/util.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <mutex>
#include <thread>

namespace fols {

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    if (v == 0.0) v = 0.0; // normalize -0
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

namespace {

Quadrature make_gauss_legendre(int n) {
    // Nodes via Newton iteration on P_n, standard recurrence.
    Quadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5)); // Tricomi initial guess
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        // map from [-1,1] to [0,1]
        q.nodes[i] = 0.5 * (1.0 - x); // reversed order, harmless
        q.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return q;
}

} // namespace

const Quadrature& gauss_legendre_01(int n) {
    static std::mutex mu;
    static std::map<int, Quadrature> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
    return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b, int n) {
    const Quadrature& q = gauss_legendre_01(n);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += q.weights[i] * f(a + (b - a) * q.nodes[i]);
    return s * (b - a);
}

ExpFit fit_exponential_decay(const std::vector<double>& t, const std::vector<double>& y,
                             double floor) {
    require(t.size() == y.size(), "fit_exponential_decay: size mismatch");
    ExpFit out;
    std::vector<double> ts, ls;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (y[i] > floor && std::isfinite(y[i])) {
            ts.push_back(t[i]);
            ls.push_back(std::log(y[i]));
        }
    }
    out.samples = static_cast<int>(ts.size());
    if (out.samples < 2) return out;
    double n = static_cast<double>(ts.size());
    double st = 0, sl = 0, stt = 0, stl = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        st += ts[i];
        sl += ls[i];
        stt += ts[i] * ts[i];
        stl += ts[i] * ls[i];
    }
    double denom = n * stt - st * st;
    if (denom == 0.0) return out;
    double slope = (n * stl - st * sl) / denom;
    double icept = (sl - slope * st) / n;
    double rss = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        double r = ls[i] - (icept + slope * ts[i]);
        rss += r * r;
    }
    out.rate = -slope;
    out.residual = std::sqrt(rss / n);
    out.valid = true;
    return out;
}

CubicTable::CubicTable(std::vector<double> x, std::vector<double> y, double left_slope)
    : x_(std::move(x)), y_(std::move(y)) {
    require(x_.size() == y_.size() && x_.size() >= 3, "CubicTable: need >= 3 samples");
    for (std::size_t i = 1; i < x_.size(); ++i)
        require(x_[i] > x_[i - 1], "CubicTable: x must be strictly increasing");

    // Solve the standard tridiagonal system for knot second derivatives.
    const std::size_t n = x_.size();
    std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
    const bool clamped = !std::isnan(left_slope);
    if (clamped) {
        double h0 = x_[1] - x_[0];
        b[0] = 2.0 * h0;
        c[0] = h0;
        d[0] = 6.0 * ((y_[1] - y_[0]) / h0 - left_slope);
    } else {
        b[0] = 1.0; // natural: m_0 = 0
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double hl = x_[i] - x_[i - 1];
        double hr = x_[i + 1] - x_[i];
        a[i] = hl;
        b[i] = 2.0 * (hl + hr);
        c[i] = hr;
        d[i] = 6.0 * ((y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl);
    }
    b[n - 1] = 1.0; // natural right end: m_{n-1} = 0

    // Thomas sweep (the system is diagonally dominant).
    for (std::size_t i = 1; i < n; ++i) {
        double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        d[i] -= w * d[i - 1];
    }
    m_.assign(n, 0.0);
    m_[n - 1] = d[n - 1] / b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) m_[i] = (d[i] - c[i] * m_[i + 1]) / b[i];
}

double CubicTable::operator()(double x) const {
    const std::size_t n = x_.size();
    if (x <= x_.front()) x = x_.front();
    if (x >= x_.back()) x = x_.back();
    std::size_t k = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin());
    if (k == 0) k = 1;
    if (k >= n) k = n - 1;
    std::size_t i = k - 1;
    double h = x_[i + 1] - x_[i];
    double A = (x_[i + 1] - x) / h;
    double B = (x - x_[i]) / h;
    return A * y_[i] + B * y_[i + 1] +
           ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
}

namespace {

int pool_size() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("FOLSCHWARZ_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
    }
    return static_cast<int>(std::min(hw, 16u));
}

} // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const int workers = pool_size();
    if (workers <= 1 || n < 32) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t seed) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace fols
