#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace ksproof {

/// Fixed-size bitset over vertex indices.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    std::size_t capacity() const noexcept { return n_; }
    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    bool empty() const;
    std::size_t count() const;
    /// Index of the lowest set bit, or capacity() if none.
    std::size_t first() const;
    VertexSet & operator&=(const VertexSet & o);
    friend VertexSet operator&(VertexSet a, const VertexSet & b) { return a &= b; }
    /// this \ o
    VertexSet minus(const VertexSet & o) const;
    std::vector<std::size_t> members() const;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Simple undirected graph, no loops.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n);

    std::size_t size() const noexcept { return adj_.size(); }
    void add_edge(std::size_t i, std::size_t j);
    bool adjacent(std::size_t i, std::size_t j) const { return adj_[i].test(j); }
    const VertexSet & neighbours(std::size_t i) const { return adj_[i]; }
    std::size_t edge_count() const;
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;
    bool is_clique(const std::vector<std::size_t> & vs) const;

private:
    std::vector<VertexSet> adj_;
};

struct CliqueResult {
    std::size_t size = 0;
    /// One maximum clique, ascending. Any maximum clique is valid.
    std::vector<std::size_t> witness;
};

/// Exact maximum clique: Bron-Kerbosch with Tomita pivoting, pruned by a greedy
/// colouring bound.
CliqueResult max_clique(const Graph & g);

} // namespace ksproof
