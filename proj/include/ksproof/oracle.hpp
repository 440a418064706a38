#pragma once

#include "ksproof/gadget.hpp"
#include "ksproof/rational.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ksproof {

struct VertexTerm {
    std::size_t vertex = 0;
    Rational weight;
};

struct PairTerm {
    std::size_t u = 0;
    std::size_t v = 0;
    Rational weight;
};

/// A weighted link between two hypergraph vertices: the bases of one pair gadget.
/// The objective terms it owns are listed by index so the structure can be cut apart.
struct HyperEdgeGroup {
    std::size_t u = 0;
    std::size_t v = 0;
    int weight = 0;
    std::vector<std::size_t> members;      // gadget-internal vertices
    std::vector<std::size_t> vertex_terms; // indices into AssignmentProblem::vertex_terms
    std::vector<std::size_t> pair_terms;   // indices into AssignmentProblem::pair_terms
};

/// Purely combinatorial value-assignment problem: no geometry enters the oracle.
struct AssignmentProblem {
    std::vector<std::string> labels; // one per vertex
    std::vector<Edge> edges;         // orthogonality (rule I)
    std::vector<std::vector<std::size_t>> bases; // complete bases (rule II)
    std::vector<VertexTerm> vertex_terms;
    std::vector<PairTerm> pair_terms;
    /// Optional hypergraph view (FKRS vertices and their hyper-edges).
    std::vector<std::size_t> hyper_vertices;
    std::vector<HyperEdgeGroup> hyperedges;

    std::size_t vertex_count() const noexcept { return labels.size(); }
    /// Throws InputError for dangling indices, repeated basis members, or basis members
    /// that are not pairwise joined by edges.
    void validate() const;
    Rational evaluate(std::span<const std::uint8_t> assignment) const;
    /// Rules I and II.
    bool satisfies_rules(std::span<const std::uint8_t> assignment) const;
};

enum class Rules {
    kochen_specker, // rule I on edges, rule II on bases
    unconstrained,  // any 0/1 assignment
};

struct OracleOptions {
    std::chrono::milliseconds timeout{60'000};
    Rules rules = Rules::kochen_specker;
    /// Decision mode: stop at the first assignment worth at least `target` and prune every
    /// branch that cannot reach it. max_value is then a witness, not the maximum.
    std::optional<Rational> target;
};

struct OracleResult {
    /// False when no assignment obeys the rules (the structure is itself KS-uncolourable).
    bool feasible = false;
    Rational max_value;
    std::vector<std::uint8_t> argmax;
    std::uint64_t explored = 0;
    /// True only when the search space was covered; max_value is then exact. Otherwise
    /// max_value is the best lower bound found before the timeout.
    bool exhausted = false;
    /// Decision mode only: an assignment worth at least the target was found.
    bool reached_target = false;
};

/// Exact maximum of the objective over rule-abiding 0/1 assignments. Branches over the
/// vertices outside every basis first, then basis by basis, with unit propagation of
/// rules I and II and an additive upper bound for pruning.
OracleResult classical_max(const AssignmentProblem & problem, const OracleOptions & options = {});

enum class FixtureKind { u2, u3, v3, clifton, model6n2 };

FixtureKind parse_fixture_kind(const std::string & name);
std::string to_string(FixtureKind kind);

/// Abstract gadget structures with objective sum_V P + sum_E C:
///   u2 [n] / model6n2 [n]: p, q joined by one weight-n gadget (B_n);
///   clifton []: u2 with n = 1;
///   u3 [n1, n2]: p -n1- q -n2- r;
///   v3 [n1, n2, n3]: triangle p -n1- q -n2- r -n3- p.
AssignmentProblem build_fixture(FixtureKind kind, std::span<const int> weights);

/// Adds a weight-n gadget between existing vertices u and v, with the G-objective terms
/// of C(u, v). Returns the index of the new hyper-edge group.
std::size_t add_gadget(AssignmentProblem & problem, std::size_t u, std::size_t v, int n, const std::string & prefix);

/// Objective of the structure with hypergraph vertex `removed`, its vertex term and all
/// its hyper-edges deleted.
Rational evaluate_without(const AssignmentProblem & problem, std::size_t removed,
                          std::span<const std::uint8_t> assignment);

/// Checks (|V| - 2) G = sum_i G_i - sum_i P_i on the given assignment, exactly.
bool subgraph_decomposition_check(const AssignmentProblem & problem, std::span<const std::uint8_t> assignment);

} // namespace ksproof
