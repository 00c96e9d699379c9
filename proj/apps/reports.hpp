#pragma once

#include "config.hpp"

namespace sovxxz::app {

struct Report {
    json body;
    bool pass = false;
};

// Operator, SoV and identity residual suites: {check: {residual, tolerance, pass}}.
Report run_validate(const RunConfig& c);
// One entry per transfer-matrix eigenvalue.
Report run_spectrum(const RunConfig& c);
// Scalar products, orthogonality, product identity, generic-mu elements and form factors.
Report run_observables(const RunConfig& c);

}  // namespace sovxxz::app
