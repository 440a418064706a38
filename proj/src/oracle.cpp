#include "ksproof/oracle.hpp"

#include "ksproof/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ksproof {

void AssignmentProblem::validate() const
{
    const auto n = vertex_count();
    auto check = [n](std::size_t v, const char * what) {
        if (v >= n)
            throw InputError(std::string(what) + " references vertex " + std::to_string(v) + " of " +
                             std::to_string(n));
    };
    std::set<Edge> edge_set;
    for (const auto & [a, b] : edges) {
        check(a, "edge");
        check(b, "edge");
        if (a == b)
            throw InputError("edge joins vertex " + std::to_string(a) + " to itself");
        edge_set.emplace(std::min(a, b), std::max(a, b));
    }
    for (const auto & basis : bases) {
        if (basis.empty())
            throw InputError("empty basis");
        for (std::size_t i = 0; i < basis.size(); ++i) {
            check(basis[i], "basis");
            for (std::size_t j = i + 1; j < basis.size(); ++j) {
                if (basis[i] == basis[j])
                    throw InputError("basis repeats vertex " + std::to_string(basis[i]));
                if (!edge_set.contains({std::min(basis[i], basis[j]), std::max(basis[i], basis[j])}))
                    throw InputError("basis members " + std::to_string(basis[i]) + " and " +
                                     std::to_string(basis[j]) + " are not joined by an edge");
            }
        }
    }
    for (const auto & t : vertex_terms)
        check(t.vertex, "vertex term");
    for (const auto & t : pair_terms) {
        check(t.u, "pair term");
        check(t.v, "pair term");
    }
    for (auto v : hyper_vertices)
        check(v, "hypergraph vertex");
    for (const auto & h : hyperedges) {
        check(h.u, "hyper-edge");
        check(h.v, "hyper-edge");
        for (auto m : h.members)
            check(m, "hyper-edge member");
        for (auto t : h.vertex_terms)
            if (t >= vertex_terms.size())
                throw InputError("hyper-edge references a missing vertex term");
        for (auto t : h.pair_terms)
            if (t >= pair_terms.size())
                throw InputError("hyper-edge references a missing pair term");
    }
}

Rational AssignmentProblem::evaluate(std::span<const std::uint8_t> a) const
{
    if (a.size() != vertex_count())
        throw InputError("assignment length does not match vertex count");
    Rational s;
    for (const auto & t : vertex_terms)
        if (a[t.vertex])
            s += t.weight;
    for (const auto & t : pair_terms)
        if (a[t.u] && a[t.v])
            s += t.weight;
    return s;
}

bool AssignmentProblem::satisfies_rules(std::span<const std::uint8_t> a) const
{
    if (a.size() != vertex_count())
        return false;
    for (const auto & [u, v] : edges)
        if (a[u] && a[v])
            return false;
    for (const auto & basis : bases) {
        std::size_t ones = 0;
        for (auto v : basis)
            ones += a[v] ? 1 : 0;
        if (ones != 1)
            return false;
    }
    return true;
}

namespace {

class AssignmentSearch {
public:
    AssignmentSearch(const AssignmentProblem & p, const OracleOptions & o)
        : p_(p), ks_(o.rules == Rules::kochen_specker), n_(p.vertex_count()), adj_(n_), member_of_(n_),
          linear_(n_), ones_(p.bases.size(), 0), zeros_(p.bases.size(), 0), value_(n_, -1),
          deadline_(std::chrono::steady_clock::now() + o.timeout)
    {
        for (const auto & [u, v] : p_.edges) {
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        for (std::size_t b = 0; b < p_.bases.size(); ++b)
            for (auto v : p_.bases[b])
                member_of_[v].push_back(b);
        for (const auto & t : p_.vertex_terms)
            linear_[t.vertex] += t.weight;

        for (std::size_t v = 0; v < n_; ++v)
            if (!ks_ || member_of_[v].empty())
                free_order_.push_back(v);
        std::stable_sort(free_order_.begin(), free_order_.end(),
                         [&](std::size_t a, std::size_t b) { return linear_[a] > linear_[b]; });
        group_best_.resize(p_.bases.size());
        group_seen_.resize(p_.bases.size(), 0);

        share_.resize(n_, 0.0);
        for (std::size_t v = 0; v < n_; ++v)
            if (!member_of_[v].empty())
                share_[v] = linear_[v].to_double() / static_cast<double>(member_of_[v].size());
        // objective values are multiples of 1 / grain when every denominator divides it
        std::int64_t grain = 1;
        auto fold = [&](const Rational & w) {
            if (grain == 0)
                return;
            const auto d = w.den();
            const auto g = std::gcd(grain, d);
            if (grain / g > (std::int64_t{1} << 40) / d)
                grain = 0;
            else
                grain = grain / g * d;
        };
        for (const auto & t : p_.vertex_terms)
            fold(t.weight);
        for (const auto & t : p_.pair_terms)
            fold(t.weight);
        step_ = grain == 0 ? 0.0 : 1.0 / static_cast<double>(grain);
        target_ = o.target;
    }

    OracleResult run()
    {
        bool ok = true;
        if (ks_)
            for (std::size_t b = 0; b < p_.bases.size() && ok; ++b)
                if (p_.bases[b].size() == 1)
                    ok = assign(p_.bases[b][0], 1);
        if (ok && propagate())
            search();
        result_.exhausted = !timed_out_;
        return result_;
    }

private:
    bool assign(std::size_t v, std::int8_t x)
    {
        if (value_[v] == x)
            return true;
        if (value_[v] != -1)
            return false;
        value_[v] = x;
        trail_.push_back(v);
        bool ok = true;
        for (auto b : member_of_[v]) {
            if (x == 1)
                ++ones_[b];
            else
                ++zeros_[b];
            if (ks_ && (ones_[b] > 1 || zeros_[b] == p_.bases[b].size()))
                ok = false;
        }
        queue_.push_back(v);
        return ok;
    }

    bool propagate()
    {
        if (!ks_) {
            queue_.clear();
            return true;
        }
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            const auto v = queue_[head];
            bool ok = true;
            if (value_[v] == 1) {
                for (auto u : adj_[v])
                    ok = ok && assign(u, 0);
                for (auto b : member_of_[v])
                    for (auto u : p_.bases[b])
                        if (u != v)
                            ok = ok && assign(u, 0);
            }
            else {
                for (auto b : member_of_[v])
                    if (ones_[b] == 0 && zeros_[b] + 1 == p_.bases[b].size())
                        for (auto u : p_.bases[b])
                            if (value_[u] == -1)
                                ok = ok && assign(u, 1);
            }
            if (!ok) {
                queue_.clear();
                return false;
            }
        }
        queue_.clear();
        return true;
    }

    void undo(std::size_t mark)
    {
        while (trail_.size() > mark) {
            const auto v = trail_.back();
            trail_.pop_back();
            for (auto b : member_of_[v]) {
                if (value_[v] == 1)
                    --ones_[b];
                else
                    --zeros_[b];
            }
            value_[v] = -1;
        }
    }

    // Value of the decided part plus the most each undecided term could still add.
    // Under rule II at most one undecided member of a basis becomes 1, so undecided
    // basis members are grouped by their first basis and contribute one maximum.
    Rational upper_bound()
    {
        Rational bound;
        const Rational zero;
        for (std::size_t v = 0; v < n_; ++v) {
            if (value_[v] == 1)
                bound += linear_[v];
            else if (value_[v] == -1) {
                const Rational gain = std::max(zero, linear_[v]);
                if (ks_ && !member_of_[v].empty()) {
                    const auto g = member_of_[v].front();
                    if (!group_seen_[g]) {
                        group_seen_[g] = 1;
                        group_best_[g] = gain;
                        touched_.push_back(g);
                    }
                    else
                        group_best_[g] = std::max(group_best_[g], gain);
                }
                else
                    bound += gain;
            }
        }
        for (auto g : touched_) {
            bound += group_best_[g];
            group_seen_[g] = 0;
        }
        touched_.clear();
        for (const auto & t : p_.pair_terms) {
            const auto a = value_[t.u], b = value_[t.v];
            if (a == 0 || b == 0)
                continue;
            if (a == 1 && b == 1)
                bound += t.weight;
            else
                bound += std::max(zero, t.weight);
        }
        return bound;
    }

    // Second bound under rule II: each basis vertex spreads its weight evenly over its
    // bases, and every basis holds exactly one 1. Pair terms are added as above.
    double split_bound() const
    {
        double bound = 0.0;
        for (std::size_t v = 0; v < n_; ++v)
            if (member_of_[v].empty()) {
                if (value_[v] == 1)
                    bound += linear_[v].to_double();
                else if (value_[v] == -1)
                    bound += std::max(0.0, linear_[v].to_double());
            }
        for (std::size_t b = 0; b < p_.bases.size(); ++b) {
            double best = -1e300;
            for (auto v : p_.bases[b])
                if (value_[v] == 1 || (ones_[b] == 0 && value_[v] == -1))
                    best = std::max(best, share_[v]);
            bound += best;
        }
        for (const auto & t : p_.pair_terms) {
            const auto a = value_[t.u], b = value_[t.v];
            if (a == 0 || b == 0)
                continue;
            bound += a == 1 && b == 1 ? t.weight.to_double() : std::max(0.0, t.weight.to_double());
        }
        return bound;
    }

    // True when no completion can beat `floor` (strictly, or reach it when `reach`).
    bool cannot_exceed(const Rational & floor, bool reach)
    {
        const auto exact = upper_bound();
        if (reach ? exact < floor : exact <= floor)
            return true;
        if (!ks_ || p_.bases.empty())
            return false;
        const double split = split_bound();
        const double f = floor.to_double();
        constexpr double slack = 1e-7;
        if (reach)
            return split < f - slack;
        // a better value is at least floor + step
        return step_ > 0.0 ? split < f + step_ - slack : split < f - slack;
    }

    bool out_of_time()
    {
        if (timed_out_ || result_.reached_target)
            return true;
        if ((result_.explored & 1023U) == 1 && std::chrono::steady_clock::now() >= deadline_)
            timed_out_ = true;
        return timed_out_;
    }

    void record_leaf()
    {
        std::vector<std::uint8_t> a(n_);
        for (std::size_t v = 0; v < n_; ++v)
            a[v] = value_[v] == 1 ? 1 : 0;
        auto val = p_.evaluate(a);
        if (!result_.feasible || val > result_.max_value) {
            result_.feasible = true;
            result_.max_value = val;
            result_.argmax = std::move(a);
        }
        if (target_ && result_.max_value >= *target_)
            result_.reached_target = true;
    }

    bool try_branch(std::size_t v, std::int8_t x)
    {
        const auto mark = trail_.size();
        if (assign(v, x) && propagate())
            search();
        else
            queue_.clear();
        undo(mark);
        return !timed_out_ && !result_.reached_target;
    }

    void search()
    {
        ++result_.explored;
        if (out_of_time())
            return;
        if (target_ && cannot_exceed(*target_, true))
            return;
        if (result_.feasible && cannot_exceed(result_.max_value, false))
            return;

        for (auto v : free_order_) {
            if (value_[v] != -1)
                continue;
            const std::int8_t first = linear_[v] >= Rational() ? 1 : 0;
            if (try_branch(v, first))
                try_branch(v, static_cast<std::int8_t>(1 - first));
            return;
        }

        if (ks_) {
            std::size_t best_basis = p_.bases.size(), best_open = SIZE_MAX;
            for (std::size_t b = 0; b < p_.bases.size(); ++b) {
                if (ones_[b] != 0)
                    continue;
                const auto open = p_.bases[b].size() - zeros_[b];
                if (open < best_open) {
                    best_open = open;
                    best_basis = b;
                }
            }
            if (best_basis != p_.bases.size()) {
                std::vector<std::size_t> candidates;
                for (auto v : p_.bases[best_basis])
                    if (value_[v] == -1)
                        candidates.push_back(v);
                std::stable_sort(candidates.begin(), candidates.end(),
                                 [&](std::size_t a, std::size_t b) { return linear_[a] > linear_[b]; });
                for (auto v : candidates)
                    if (!try_branch(v, 1))
                        return;
                return;
            }
        }
        record_leaf();
    }

    const AssignmentProblem & p_;
    const bool ks_;
    const std::size_t n_;
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::vector<std::size_t>> member_of_;
    std::vector<Rational> linear_;
    std::vector<std::size_t> ones_, zeros_;
    std::vector<std::int8_t> value_;
    std::vector<std::size_t> trail_, queue_, free_order_;
    std::vector<Rational> group_best_;
    std::vector<std::uint8_t> group_seen_;
    std::vector<std::size_t> touched_;
    std::vector<double> share_;
    double step_ = 0.0;
    std::optional<Rational> target_;
    std::chrono::steady_clock::time_point deadline_;
    bool timed_out_ = false;
    OracleResult result_;
};

} // namespace

OracleResult classical_max(const AssignmentProblem & problem, const OracleOptions & options)
{
    problem.validate();
    return AssignmentSearch(problem, options).run();
}

FixtureKind parse_fixture_kind(const std::string & name)
{
    if (name == "U2" || name == "u2")
        return FixtureKind::u2;
    if (name == "U3" || name == "u3")
        return FixtureKind::u3;
    if (name == "V3" || name == "v3")
        return FixtureKind::v3;
    if (name == "Clifton" || name == "clifton")
        return FixtureKind::clifton;
    if (name == "Model6n2" || name == "model6n2")
        return FixtureKind::model6n2;
    throw FixtureError("unknown fixture kind '" + name + "'");
}

std::string to_string(FixtureKind kind)
{
    switch (kind) {
    case FixtureKind::u2: return "U2";
    case FixtureKind::u3: return "U3";
    case FixtureKind::v3: return "V3";
    case FixtureKind::clifton: return "Clifton";
    case FixtureKind::model6n2: return "Model6n2";
    }
    return "?";
}

std::size_t add_gadget(AssignmentProblem & problem, std::size_t u, std::size_t v, int n, const std::string & prefix)
{
    const auto topo = gadget_topology(n);
    std::vector<std::size_t> global(topo.vertex_count());
    global[0] = u;
    global[1] = v;
    HyperEdgeGroup group{u, v, n, {}, {}, {}};
    for (std::size_t local = 2; local < topo.vertex_count(); ++local) {
        global[local] = problem.labels.size();
        problem.labels.push_back(prefix + "." + topo.roles[local]);
        group.members.push_back(global[local]);
        group.vertex_terms.push_back(problem.vertex_terms.size());
        problem.vertex_terms.push_back({global[local], Rational(1)});
    }
    for (const auto & [a, b] : topo.edges) {
        problem.edges.emplace_back(global[a], global[b]);
        group.pair_terms.push_back(problem.pair_terms.size());
        problem.pair_terms.push_back({global[a], global[b], Rational(-1)});
    }
    for (const auto & basis : topo.bases)
        problem.bases.push_back({global[basis[0]], global[basis[1]], global[basis[2]]});
    problem.hyperedges.push_back(std::move(group));
    return problem.hyperedges.size() - 1;
}

namespace {

std::size_t add_hyper_vertex(AssignmentProblem & p, const std::string & label)
{
    const auto v = p.labels.size();
    p.labels.push_back(label);
    p.hyper_vertices.push_back(v);
    p.vertex_terms.push_back({v, Rational(1)});
    return v;
}

void require_weights(FixtureKind kind, std::span<const int> weights, std::size_t count)
{
    if (weights.size() != count)
        throw FixtureError(to_string(kind) + " takes " + std::to_string(count) + " weight(s), got " +
                           std::to_string(weights.size()));
    for (int w : weights)
        if (w < 1)
            throw FixtureError(to_string(kind) + " weights must be positive, got " + std::to_string(w));
}

} // namespace

AssignmentProblem build_fixture(FixtureKind kind, std::span<const int> weights)
{
    AssignmentProblem p;
    switch (kind) {
    case FixtureKind::clifton: {
        require_weights(kind, weights, 0);
        auto a = add_hyper_vertex(p, "p"), b = add_hyper_vertex(p, "q");
        add_gadget(p, a, b, 1, "pq");
        break;
    }
    case FixtureKind::u2:
    case FixtureKind::model6n2: {
        require_weights(kind, weights, 1);
        auto a = add_hyper_vertex(p, "p"), b = add_hyper_vertex(p, "q");
        add_gadget(p, a, b, weights[0], "pq");
        break;
    }
    case FixtureKind::u3: {
        require_weights(kind, weights, 2);
        auto a = add_hyper_vertex(p, "p"), b = add_hyper_vertex(p, "q"), c = add_hyper_vertex(p, "r");
        add_gadget(p, a, b, weights[0], "pq");
        add_gadget(p, b, c, weights[1], "qr");
        break;
    }
    case FixtureKind::v3: {
        require_weights(kind, weights, 3);
        auto a = add_hyper_vertex(p, "p"), b = add_hyper_vertex(p, "q"), c = add_hyper_vertex(p, "r");
        add_gadget(p, a, b, weights[0], "pq");
        add_gadget(p, b, c, weights[1], "qr");
        add_gadget(p, c, a, weights[2], "rp");
        break;
    }
    }
    p.validate();
    return p;
}

Rational evaluate_without(const AssignmentProblem & p, std::size_t removed, std::span<const std::uint8_t> a)
{
    if (a.size() != p.vertex_count())
        throw InputError("assignment length does not match vertex count");
    std::vector<std::uint8_t> drop_vt(p.vertex_terms.size(), 0), drop_pt(p.pair_terms.size(), 0);
    for (const auto & h : p.hyperedges) {
        if (h.u != removed && h.v != removed)
            continue;
        for (auto t : h.vertex_terms)
            drop_vt[t] = 1;
        for (auto t : h.pair_terms)
            drop_pt[t] = 1;
    }
    Rational s;
    for (std::size_t t = 0; t < p.vertex_terms.size(); ++t) {
        const auto & term = p.vertex_terms[t];
        if (!drop_vt[t] && term.vertex != removed && a[term.vertex])
            s += term.weight;
    }
    for (std::size_t t = 0; t < p.pair_terms.size(); ++t) {
        const auto & term = p.pair_terms[t];
        if (!drop_pt[t] && term.u != removed && term.v != removed && a[term.u] && a[term.v])
            s += term.weight;
    }
    return s;
}

bool subgraph_decomposition_check(const AssignmentProblem & p, std::span<const std::uint8_t> a)
{
    const auto total = p.evaluate(a);
    const auto size = static_cast<std::int64_t>(p.hyper_vertices.size());
    Rational lhs = Rational(size - 2) * total;
    Rational rhs;
    std::vector<std::uint8_t> owned(p.vertex_terms.size(), 0);
    for (const auto & h : p.hyperedges)
        for (auto t : h.vertex_terms)
            owned[t] = 1;
    for (auto i : p.hyper_vertices) {
        rhs += evaluate_without(p, i, a);
        for (std::size_t t = 0; t < p.vertex_terms.size(); ++t)
            if (!owned[t] && p.vertex_terms[t].vertex == i && a[i])
                rhs -= p.vertex_terms[t].weight;
    }
    return lhs == rhs;
}

} // namespace ksproof
