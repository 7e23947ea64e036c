#pragma once

#include <string>
#include <vector>

#include "gamma1lab/errors.hpp"

namespace g1lab::testfn {

// An even Schwartz-class test pair (phi, phi_hat) with phi_hat supported in
// [-delta, delta], normalized so integral phi = phi_hat(0) = 1.
//
//   fejer: phi_hat(u) = max(0, 1 - |u|/delta),
//          phi(x)     = delta (sin(pi delta x) / (pi delta x))^2
//   bump:  phi_hat(u) = e * exp(-1/(1 - (u/delta)^2)) on |u| < delta,
//          phi(x)     = 2 int_0^delta phi_hat(u) cos(2 pi u x) du
//
// phi for the bump pair (and the cross-check for fejer) is evaluated by
// Gauss-Legendre quadrature with cached nodes.

class TestFunctionPair {
  public:
    enum class Kind { fejer, bump };

    static TestFunctionPair fejer(double delta);
    static TestFunctionPair bump(double delta);

    Kind kind() const { return kind_; }
    double delta() const { return delta_; }
    std::string id() const;

    double phi_hat(double u) const;
    double phi(double x) const;
    // phi by quadrature with an explicit node count (cross-check path).
    double phi_quadrature(double x, int n_nodes) const;
    double integral_phi() const { return 1.0; }  // = phi_hat(0) by design

  private:
    TestFunctionPair(Kind kind, double delta);
    Kind kind_;
    double delta_;
    std::vector<double> nodes_, weights_;  // Gauss-Legendre on [0, delta]
};

// Max over the grid of |phi(closed form or finer grid) - phi(quadrature)|.
double pair_selfcheck(const TestFunctionPair& pair, const std::vector<double>& xs);

// Gauss-Legendre nodes/weights on [-1, 1] (Newton on the Legendre
// recurrence); exposed for reuse.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace g1lab::testfn
