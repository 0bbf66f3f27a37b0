#pragma once

// Central tolerance table. Every numerical bound used by the library, the
// command line driver and the test suites is pinned here so that a check in
// one module cannot drift away from the same check in another.

namespace spinlab::tol {

inline constexpr double identity = 1e-12;     // pointwise algebraic identities
inline constexpr double imag_leak = 1e-13;    // imaginary residue on real quantities
inline constexpr double discrete = 1e-10;     // band-limited discrete identities
inline constexpr double kernel_rel = 1e-8;    // kernel cut relative to spectral radius
inline constexpr double fd_cross = 1e-8;      // dual-path finite difference comparisons
inline constexpr double derivative = 1e-6;    // eigenvalue derivative cross-checks
inline constexpr double quadrature = 1e-3;    // compactified integral targets
inline constexpr double current_floor = 1e-3; // injectivity floor for sphere scans
inline constexpr double noise_floor = 1e-4;   // residual plateau for corrupted fields
inline constexpr double order_min = 3.8;      // observed order bound, 4th order stencils

} // namespace spinlab::tol
