#include "ksproof/threshold.hpp"

#include "ksproof/errors.hpp"
#include "ksproof/tolerances.hpp"

#include <cmath>
#include <sstream>

namespace ksproof {

Rational delta(int n)
{
    if (n < 0)
        throw RangeError("delta: negative order " + std::to_string(n));
    return Rational(n, static_cast<std::int64_t>(n) + 2);
}

double delta_value(int n)
{
    return delta(n).to_double();
}

int order_of(double c)
{
    if (!(c >= 0.0) || std::isnan(c))
        throw RangeError("order_of: overlap must be non-negative");
    if (c >= 1.0)
        throw RangeError("order_of: overlap " + std::to_string(c) + " >= 1 has no finite order");
    if (c <= tol::tie)
        return 0;
    // Candidate from the closed form, then settle boundary cases against the exact sequence.
    double guess = std::ceil(2.0 * c / (1.0 - c));
    if (guess > 1e9)
        throw RangeError("order_of: overlap too close to 1");
    int m = static_cast<int>(guess);
    while (m > 0 && c <= delta_value(m - 1) + tol::tie)
        --m;
    while (c > delta_value(m) + tol::tie)
        ++m;
    return m;
}

ThresholdGraph build_threshold_graph(const RealMatrix & moduli, int order)
{
    if (order < 0)
        throw RangeError("threshold graph order must be non-negative");
    const double threshold = delta_value(order) + tol::tie;
    ThresholdGraph tg{order, Graph(moduli.size), moduli};
    for (std::size_t i = 0; i < moduli.size; ++i)
        for (std::size_t j = i + 1; j < moduli.size; ++j)
            if (moduli(i, j) > threshold)
                tg.adjacency.add_edge(i, j);
    return tg;
}

namespace {

void reject_duplicates(std::span<const Ray> rays, const RealMatrix & g)
{
    for (std::size_t i = 0; i < g.size; ++i)
        for (std::size_t j = i + 1; j < g.size; ++j)
            if (g(i, j) >= 1.0 - tol::ray)
                throw DuplicateRayError("rays " + std::to_string(i) + " ('" + rays[i].label() + "') and " +
                                            std::to_string(j) + " ('" + rays[j].label() + "') are the same ray",
                                        i, j);
}

} // namespace

ThresholdGraph build_threshold_graph(std::span<const Ray> rays, int order)
{
    if (rays.size() < 2)
        throw InputError("threshold graph needs at least two rays");
    auto g = gram(rays);
    reject_duplicates(rays, g);
    return build_threshold_graph(g, order);
}

int auto_order(std::span<const Ray> rays)
{
    auto g = gram(rays);
    reject_duplicates(rays, g);
    return order_of(max_off_diagonal(g));
}

FkrsVerdict fkrs_check(std::span<const Ray> rays, std::optional<int> order)
{
    if (rays.empty())
        throw InputError("fkrs_check needs a non-empty ray set");
    auto g = gram(rays);
    reject_duplicates(rays, g);

    FkrsVerdict v;
    v.order = order ? *order : order_of(max_off_diagonal(g));
    auto tg = build_threshold_graph(g, v.order);
    auto clique = max_clique(tg.adjacency);
    auto spectrum = projector_sum_spectrum(rays);

    v.clique_number = clique.size;
    v.witness_clique = std::move(clique.witness);
    v.lambda_min = spectrum.lambda_min;
    v.lambda_max = spectrum.lambda_max;
    const double m = static_cast<double>(v.clique_number);
    v.is_fkrs = m < v.lambda_min - tol::spec;
    if (std::abs(v.lambda_min - m) <= tol::spec) {
        std::ostringstream os;
        os.precision(17);
        os << "boundary: lambda_min = " << v.lambda_min << " is within " << tol::spec << " of M = "
           << v.clique_number << "; reported as not FKRS";
        v.warnings.push_back(os.str());
    }
    return v;
}

} // namespace ksproof
