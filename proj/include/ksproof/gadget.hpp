#pragma once

#include "ksproof/ray.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace ksproof {

enum class Branch { plus, minus };

inline char branch_sign(Branch b) { return b == Branch::plus ? '+' : '-'; }

using Edge = std::pair<std::size_t, std::size_t>;
using Triple = std::array<std::size_t, 3>;

struct BasisTag {
    int level = 0;
    Branch branch = Branch::plus;
};

/// Orthogonality structure of the (2 + 6n)-ray gadget linking one ray pair.
///
/// Local vertex layout: 0 is psi (= e_{n+1,+}), 1 is phi (= e_{n+1,-}); level k
/// (k = n..1) occupies the six slots starting at 2 + 6(n - k):
///   e_{k,+}, e_{k,-}, x_{k,+,+}, x_{k,+,-}, x_{k,-,+}, x_{k,-,-}
/// where x_{k,t,s} sits in the basis of e_{k,t} and is orthogonal to e_{k+1,s}.
/// Each level contributes two bases {e_{k,t}, x_{k,t,+}, x_{k,t,-}}; level 1 adds
/// the edge e_{1,+} -- e_{1,-}.
struct GadgetTopology {
    int order = 0;
    std::vector<std::string> roles;
    std::vector<Triple> bases;
    std::vector<BasisTag> basis_tags;
    std::vector<Edge> edges;

    std::size_t vertex_count() const noexcept { return roles.size(); }
};

GadgetTopology gadget_topology(int n);
/// Local index of e_{level, b}; level n + 1 addresses psi / phi.
std::size_t chain_index(int n, int level, Branch b);
std::size_t completion_index(int n, int level, Branch basis, Branch target);

struct OrthoBasis {
    std::array<Ray, 3> rays;
    BasisTag tag;
};

struct PairModel {
    int order = 0;
    /// |<psi|phi>|
    double overlap = 0.0;
    double theta = 0.0;
    /// v with <psi|phi> = overlap * e^{-iv}, principal branch.
    double phase_v = 0.0;
    GadgetTopology topology;
    /// Laid out per GadgetTopology.
    std::vector<Ray> rays;
    /// Pairs of local indices that are projectively equal.
    std::vector<Edge> coincidences;
    std::vector<std::string> warnings;

    const Ray & psi() const { return rays.at(0); }
    const Ray & phi() const { return rays.at(1); }
    std::vector<OrthoBasis> bases() const;
};

/// Builds the gadget top-down: at each level k the pair (e_{k+1,+}, e_{k+1,-}) is split
/// into e_{k,+-} with |<e_{k,+}|e_{k,-}>| = delta_{k-1}, and the two bases of level k
/// are completed by conjugate cross products.
///
/// Requires D = 3 and |<psi|phi>| <= delta_n (+ tol::tie). Throws OrderTooLowError,
/// DegenerateError, DimensionError, or InvalidModelError if the result fails validation.
PairModel build_pair_model(const Ray & psi, const Ray & phi, int n, double theta = 0.0);

/// Throws InvalidModelError naming the first violated invariant.
void validate_pair_model(const PairModel & model);

/// C = sum_V P_i - sum_E P_i P_j - P_psi - P_phi; equals 2n I for a valid model.
HermitianMatrix pair_operator_C(const PairModel & model);

struct PairBounds {
    int classical = 0;
    double quantum_max = 0.0;
};

/// classical = 2n + 1; quantum_max = largest eigenvalue of P_psi + P_phi + C.
PairBounds pair_inequality_bounds(const PairModel & model);

/// Largest |<psi|phi>| compatible with inner rays of overlap delta: (1 + delta) / (3 - delta).
double max_overlap_bound(double delta);

} // namespace ksproof
