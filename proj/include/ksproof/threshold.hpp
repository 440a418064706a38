#pragma once

#include "ksproof/graph.hpp"
#include "ksproof/rational.hpp"
#include "ksproof/ray.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ksproof {

/// delta_n = n / (n + 2), exact.
Rational delta(int n);
double delta_value(int n);

/// Smallest order m with c <= delta_m (ties within tol::tie go to the lower order).
/// Throws RangeError for c >= 1 or c < 0.
int order_of(double c);

/// Gamma_ij = 1 iff |<psi_i|psi_j>| > delta_n + tol::tie.
struct ThresholdGraph {
    int order = 0;
    Graph adjacency;
    RealMatrix moduli;
};

/// Throws DuplicateRayError on projectively equal rays and InputError for fewer than two rays.
ThresholdGraph build_threshold_graph(std::span<const Ray> rays, int order);
/// Same, from a precomputed Gram matrix of moduli.
ThresholdGraph build_threshold_graph(const RealMatrix & moduli, int order);

struct FkrsVerdict {
    int order = 0;
    std::size_t clique_number = 0; // M
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    bool is_fkrs = false;
    /// Non-deterministic in general: any maximum clique is a valid witness.
    std::vector<std::size_t> witness_clique;
    std::vector<std::string> warnings;
};

/// Order used by "auto": the order of the largest off-diagonal Gram modulus.
int auto_order(std::span<const Ray> rays);

/// is_fkrs iff M < lambda_min - tol::spec. An empty `order` selects auto_order.
FkrsVerdict fkrs_check(std::span<const Ray> rays, std::optional<int> order = std::nullopt);

} // namespace ksproof
