#include <cmath>
#include <cstdio>

#include "gamma1lab/testfn.hpp"

namespace g1lab::testfn {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 2) throw OutOfRange("gauss_legendre: n >= 2");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) {
                // one more polish step and stop
                p0 = 1.0;
                p1 = x;
                for (int j = 2; j <= n; ++j) {
                    double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                pp = n * (x * p1 - p0) / (x * x - 1.0);
                x -= p1 / pp;
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

TestFunctionPair::TestFunctionPair(Kind kind, double delta) : kind_(kind), delta_(delta) {
    if (!(delta > 0.0)) throw OutOfRange("test pair: delta > 0");
    std::vector<double> x, w;
    gauss_legendre(512, x, w);
    nodes_.resize(x.size());
    weights_.resize(w.size());
    for (size_t i = 0; i < x.size(); ++i) {
        nodes_[i] = 0.5 * delta * (x[i] + 1.0);
        weights_[i] = 0.5 * delta * w[i];
    }
}

TestFunctionPair TestFunctionPair::fejer(double delta) { return {Kind::fejer, delta}; }
TestFunctionPair TestFunctionPair::bump(double delta) { return {Kind::bump, delta}; }

std::string TestFunctionPair::id() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s(%g)", kind_ == Kind::fejer ? "fejer" : "bump",
                  delta_);
    return buf;
}

double TestFunctionPair::phi_hat(double u) const {
    const double a = std::fabs(u) / delta_;
    if (a >= 1.0) return 0.0;
    if (kind_ == Kind::fejer) return 1.0 - a;
    return M_E * std::exp(-1.0 / (1.0 - a * a));
}

double TestFunctionPair::phi(double x) const {
    if (kind_ == Kind::fejer) {
        const double t = M_PI * delta_ * x;
        if (t == 0.0) return delta_;
        const double s = std::sin(t) / t;
        return delta_ * s * s;
    }
    double acc = 0.0;
    for (size_t i = 0; i < nodes_.size(); ++i)
        acc += weights_[i] * phi_hat(nodes_[i]) * std::cos(2.0 * M_PI * nodes_[i] * x);
    return 2.0 * acc;
}

double TestFunctionPair::phi_quadrature(double x, int n_nodes) const {
    std::vector<double> xs, ws;
    gauss_legendre(n_nodes, xs, ws);
    double acc = 0.0;
    for (int i = 0; i < n_nodes; ++i) {
        double u = 0.5 * delta_ * (xs[i] + 1.0);
        acc += 0.5 * delta_ * ws[i] * phi_hat(u) * std::cos(2.0 * M_PI * u * x);
    }
    return 2.0 * acc;
}

double pair_selfcheck(const TestFunctionPair& pair, const std::vector<double>& xs) {
    double worst = 0.0;
    for (double x : xs) {
        double a = pair.phi(x);
        double b = pair.phi_quadrature(x, 1024);
        worst = std::max(worst, std::fabs(a - b));
    }
    return worst;
}

}  // namespace g1lab::testfn
