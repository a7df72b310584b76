#pragma once

#include <stdexcept>
#include <string>

namespace mirrorphase {

// A numerical route failed (integrator blow-up, quadrature non-convergence,
// overflow despite rescaling). Carries the offending phi when known.
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what)
        : std::runtime_error(what) {}
    NumericalFailure(const std::string& what, double phi)
        : std::runtime_error(what + " at phi = " + std::to_string(phi)),
          phi_(phi), has_phi_(true) {}

    bool has_phi() const { return has_phi_; }
    double phi() const { return phi_; }

private:
    double phi_ = 0.0;
    bool has_phi_ = false;
};

// Eigenvalue crossing of the density matrix along a trajectory, where the
// eigenvector branch is undefined without a continuity hint.
class DegeneracyError : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

}  // namespace mirrorphase
