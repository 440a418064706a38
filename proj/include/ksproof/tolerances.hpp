#pragma once

namespace ksproof::tol {

// Every numeric threshold used by the library lives here.

/// |<r|r> - 1| allowed for a stored ray.
inline constexpr double norm = 1e-10;
/// Two rays are the same ray when |<a|b>| >= 1 - ray.
inline constexpr double ray = 1e-9;
/// |<a|b>| below this counts as orthogonal.
inline constexpr double orth = 1e-9;
/// Overlaps within this distance of a threshold delta_n count as <= delta_n.
inline constexpr double tie = 1e-9;
/// Margin required for M < lambda_min to be a strict FKRS verdict.
inline constexpr double spec = 1e-9;
/// Allowed asymmetry of a Hermitian matrix.
inline constexpr double hermitian = 1e-12;
/// Jacobi stops once the off-diagonal Frobenius norm falls below this.
inline constexpr double jacobi_off = 1e-12;
/// Cross products shorter than this are treated as parallel inputs.
inline constexpr double degenerate = 1e-9;
/// Operator identities (C = 2n I, G = sum P + R I) are checked elementwise to this.
inline constexpr double identity = 1e-8;
/// Chain overlaps |<e_k+|e_k->| must hit delta_{k-1} to this.
inline constexpr double chain = 1e-8;

} // namespace ksproof::tol
