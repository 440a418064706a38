#include "ksproof/graph.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace ksproof {

bool VertexSet::empty() const
{
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t VertexSet::count() const
{
    std::size_t c = 0;
    for (auto w : words_)
        c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::size_t VertexSet::first() const
{
    for (std::size_t k = 0; k < words_.size(); ++k)
        if (words_[k] != 0)
            return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
    return n_;
}

VertexSet & VertexSet::operator&=(const VertexSet & o)
{
    for (std::size_t k = 0; k < words_.size(); ++k)
        words_[k] &= o.words_[k];
    return *this;
}

VertexSet VertexSet::minus(const VertexSet & o) const
{
    VertexSet r = *this;
    for (std::size_t k = 0; k < r.words_.size(); ++k)
        r.words_[k] &= ~o.words_[k];
    return r;
}

std::vector<std::size_t> VertexSet::members() const
{
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < words_.size(); ++k) {
        auto w = words_[k];
        while (w != 0) {
            out.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
            w &= w - 1;
        }
    }
    return out;
}

Graph::Graph(std::size_t n) : adj_(n, VertexSet(n)) {}

void Graph::add_edge(std::size_t i, std::size_t j)
{
    if (i >= size() || j >= size())
        throw std::out_of_range("Graph::add_edge: vertex out of range");
    if (i == j)
        throw std::invalid_argument("Graph::add_edge: loops are not allowed");
    adj_[i].set(j);
    adj_[j].set(i);
}

std::size_t Graph::edge_count() const
{
    std::size_t c = 0;
    for (const auto & a : adj_)
        c += a.count();
    return c / 2;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i)
        for (auto j : adj_[i].members())
            if (j > i)
                out.emplace_back(i, j);
    return out;
}

bool Graph::is_clique(const std::vector<std::size_t> & vs) const
{
    for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b)
            if (vs[a] == vs[b] || !adjacent(vs[a], vs[b]))
                return false;
    return true;
}

namespace {

class CliqueSearch {
public:
    explicit CliqueSearch(const Graph & g) : g_(g) {}

    CliqueResult run()
    {
        VertexSet all(g_.size());
        for (std::size_t v = 0; v < g_.size(); ++v)
            all.set(v);
        std::vector<std::size_t> current;
        expand(current, all);
        std::sort(best_.begin(), best_.end());
        return {best_.size(), best_};
    }

private:
    // Greedy sequential colouring; the number of colours bounds the clique size in p.
    std::size_t colour_bound(const VertexSet & p) const
    {
        VertexSet uncoloured = p;
        std::size_t colours = 0;
        while (!uncoloured.empty()) {
            ++colours;
            VertexSet candidates = uncoloured;
            while (!candidates.empty()) {
                auto v = candidates.first();
                candidates.reset(v);
                uncoloured.reset(v);
                candidates = candidates.minus(g_.neighbours(v));
            }
        }
        return colours;
    }

    void expand(std::vector<std::size_t> & current, VertexSet p)
    {
        if (p.empty()) {
            if (current.size() > best_.size())
                best_ = current;
            return;
        }
        if (current.size() + colour_bound(p) <= best_.size())
            return;

        // Tomita pivot: the vertex of p covering most of p. Only vertices of p are
        // candidates since the excluded set X is irrelevant for a maximum search.
        std::size_t pivot = p.first(), pivot_cover = 0;
        for (auto u : p.members()) {
            auto cover = (p & g_.neighbours(u)).count();
            if (cover > pivot_cover || (cover == pivot_cover && u < pivot)) {
                pivot = u;
                pivot_cover = cover;
            }
        }
        for (auto v : p.minus(g_.neighbours(pivot)).members()) {
            current.push_back(v);
            expand(current, p & g_.neighbours(v));
            current.pop_back();
            p.reset(v);
            if (current.size() + p.count() <= best_.size())
                return;
        }
    }

    const Graph & g_;
    std::vector<std::size_t> best_;
};

} // namespace

CliqueResult max_clique(const Graph & g)
{
    return CliqueSearch(g).run();
}

} // namespace ksproof
