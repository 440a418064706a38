#pragma once

#include "ksproof/proof.hpp"

#include <span>
#include <string>

namespace ksproof {

/// Undirected DOT graph of an assembled proof. FKRS rays are double circles, auxiliary
/// rays plain circles; each hyper-edge is a cluster holding one sub-cluster per basis.
std::string to_dot(const ProofSet & proof);

/// Plain orthogonality graph of a ray set (pairs with |<a|b>| <= tol::orth).
std::string to_dot(std::span<const Ray> rays);

} // namespace ksproof
