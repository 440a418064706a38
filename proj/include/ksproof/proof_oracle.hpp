#pragma once

#include "ksproof/oracle.hpp"
#include "ksproof/proof.hpp"

namespace ksproof {

enum class Objective {
    fkrs_sum,   // sum_{i in I} v_i
    observable, // G = sum_I v_i + sum of C terms
};

/// The proof's combinatorial structure. Vertices follow global proof order, except that
/// after deduplication only representatives remain (renumbered in order).
AssignmentProblem problem_from_proof(const ProofSet & proof, Objective objective);

/// Drops a hyper-edge group: its internal vertices, their edges, bases and terms.
/// Remaining vertices keep their relative order.
AssignmentProblem remove_hyperedge(const AssignmentProblem & problem, std::size_t group);

struct SimultaneityResult {
    OracleResult oracle;
    std::size_t expected = 0; // M
    /// max == M, exhausted.
    bool holds = false;
};

/// Maximum number of FKRS rays simultaneously assignable 1 over the full proof structure.
SimultaneityResult fkrs_simultaneity_check(const ProofSet & proof, const OracleOptions & options = {});

enum class BoundVerdict { verified, violated, inconclusive };

std::string to_string(BoundVerdict v);

struct GBoundResult {
    BoundVerdict verdict = BoundVerdict::inconclusive;
    OracleResult oracle;
    std::int64_t expected = 0; // M + R

    bool verified() const noexcept { return verdict == BoundVerdict::verified; }
};

/// Classical maximum of G equals M + R exactly. A timeout is inconclusive, never verified.
/// Throws UnsupportedAfterDedupError for deduplicated proofs.
GBoundResult verify_G_bound(const ProofSet & proof, const OracleOptions & options = {});

} // namespace ksproof
