#pragma once

#include "ksproof/gadget.hpp"
#include "ksproof/threshold.hpp"

#include <chrono>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ksproof {

/// Unordered FKRS pairs (i < j) grouped by the order of their overlap.
struct PairPartition {
    int order = 0;
    /// classes[m] = alpha_m for m = 0..order; alpha_0 holds the orthogonal pairs.
    std::map<int, std::vector<Edge>> classes;
    /// Pairs above delta_n: joined in the threshold graph, no gadget.
    std::vector<Edge> excluded;
};

/// Pairs exactly on a delta boundary go to the lower class.
PairPartition partition_pairs(std::span<const Ray> rays, int order);

/// One gadget attached to an FKRS pair. psi is fkrs[i], phi is fkrs[j].
struct HyperEdge {
    std::size_t i = 0;
    std::size_t j = 0;
    int weight = 0; // m: the gadget uses 2m bases
    double overlap = 0.0;
    PairModel model;
    /// Global vertex index of each local gadget vertex.
    std::vector<std::size_t> vertices;
    /// Indices into ProofSet::aux_bases.
    std::vector<std::size_t> bases;

    int basis_count() const noexcept { return 2 * weight; }
};

struct AuxBasis {
    Triple rays; // global indices
    std::size_t hyperedge = 0;
    BasisTag tag;
};

/// FKRS rays (global indices 0..|I|-1) completed by auxiliary bases (global indices
/// |I|.. in hyper-edge order).
struct ProofSet {
    int order = 0;
    double theta = 0.0;
    std::vector<Ray> fkrs;
    std::vector<Ray> aux;
    std::vector<AuxBasis> aux_bases;
    std::vector<HyperEdge> hyperedges;
    /// Orthogonal FKRS pairs: a rule-I edge, no bases.
    std::vector<Edge> direct_edges;
    /// Every declared orthogonality over I u J (gadget edges and direct edges), global indices.
    std::vector<Edge> edges;
    PairPartition partition;
    std::size_t basis_total = 0; // R
    FkrsVerdict verdict;
    bool deduplicated = false;
    /// merge_map[v] is the representative of global vertex v (identity without dedup).
    std::vector<std::size_t> merge_map;
    std::vector<std::string> warnings;

    std::size_t vertex_count() const noexcept { return fkrs.size() + aux.size(); }
    const Ray & ray(std::size_t global) const;
    /// All rays in global order.
    std::vector<Ray> all_rays() const;
    /// Auxiliary rays that represent themselves after deduplication.
    std::vector<Ray> distinct_aux_rays() const;
};

struct AssembleOptions {
    bool dedup = false;
    /// Assemble even when the set is not an FKRS at this order.
    bool force = false;
    double theta = 0.0;
};

/// Attaches a weight-m gadget to every pair in alpha_m (m >= 1). Throws HypothesisError
/// if the rays are not an FKRS at `order` and options.force is false.
ProofSet assemble(std::span<const Ray> rays, int order, const AssembleOptions & options = {});

/// G = sum_I P_i + sum over hyper-edges of C; equals sum_I P_i + R I.
/// Throws UnsupportedAfterDedupError for deduplicated proofs.
HermitianMatrix observable_G(const ProofSet & proof);

struct ProofBounds {
    std::int64_t classical = 0;    // M + R
    double quantum_min_value = 0.0; // R + lambda_min
    bool violated() const noexcept { return quantum_min_value > static_cast<double>(classical); }
};

ProofBounds bounds(const ProofSet & proof);

struct Budget {
    int N = 0;
    std::size_t ray_count = 0;
    std::size_t max_bases = 0; // ray_count (ray_count - 1) N
    double max_overlap = 0.0;
    double lambda_min = 0.0;

    bool covers(const ProofSet & proof) const noexcept { return proof.basis_total <= max_bases; }
};

/// Basis budget for completing `rays` at the order of their largest overlap.
/// Throws HypothesisError unless sum_i |psi_i><psi_i| > 1 (lambda_min > 1).
Budget basis_budget(std::span<const Ray> rays);

enum class AuxStatus { pass, warning, inconclusive };

std::string to_string(AuxStatus s);

struct AuxCheck {
    AuxStatus status = AuxStatus::pass;
    std::size_t ray_count = 0;
    std::size_t basis_count = 0;
    double lambda_min = 0.0;
    /// Value of an assignment (rules I/II on the set's own orthogonality structure) that
    /// reaches lambda_min; empty unless the check passed.
    std::optional<Rational> classical_max;
    std::string detail;
};

/// Does a ray set witness contextuality on its own? Searches its own orthogonality graph
/// and complete bases for an assignment whose value reaches lambda_min of the projector sum.
/// A warning means none exists: the set violates its own noncontextual bound.
/// Repeated rays count with their multiplicity.
AuxCheck aux_independence_check(std::span<const Ray> rays, std::chrono::milliseconds timeout = std::chrono::seconds(60));
AuxCheck aux_independence_check(const ProofSet & proof, std::chrono::milliseconds timeout = std::chrono::seconds(60));

} // namespace ksproof
