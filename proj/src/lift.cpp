#include "ksproof/lift.hpp"

#include "ksproof/errors.hpp"
#include "ksproof/threshold.hpp"
#include "ksproof/tolerances.hpp"

namespace ksproof {

std::string Provenance::str() const
{
    return std::string(copy == Copy::plus ? "+" : "-") + (from_basis ? "b" : "s") + std::to_string(index);
}

namespace {

Ray pad(const Ray & r, std::size_t leading, std::size_t trailing, const Provenance & tag)
{
    CVector v(leading, Complex{});
    v.insert(v.end(), r.components().begin(), r.components().end());
    v.resize(v.size() + trailing, Complex{});
    const auto name = r.label().empty() ? tag.str() : tag.str() + ":" + r.label();
    return Ray(std::move(v), name);
}

} // namespace

LiftedSet lift(std::span<const Ray> source, int m, std::optional<std::vector<CVector>> basis)
{
    if (source.empty())
        throw InputError("cannot lift an empty ray set");
    const auto d = common_dimension(source);
    if (m < 1 || static_cast<std::size_t>(m) > d)
        throw RangeError("lift needs 1 <= m <= " + std::to_string(d) + ", got " + std::to_string(m));
    const auto mm = static_cast<std::size_t>(m);

    std::vector<CVector> pad_basis(mm, CVector(mm, Complex{}));
    if (basis) {
        if (basis->size() != mm)
            throw InputError("padding basis needs " + std::to_string(m) + " vectors");
        for (std::size_t i = 0; i < mm; ++i) {
            if ((*basis)[i].size() != mm)
                throw DimensionError("padding basis vectors must have dimension " + std::to_string(m));
            for (std::size_t j = i; j < mm; ++j) {
                const auto want = i == j ? 1.0 : 0.0;
                if (std::abs(std::abs(inner((*basis)[i], (*basis)[j])) - want) > tol::orth)
                    throw InputError("padding basis is not orthonormal");
            }
        }
        pad_basis = *basis;
    }
    else {
        for (std::size_t i = 0; i < mm; ++i)
            pad_basis[i][i] = 1.0;
    }

    LiftedSet out;
    out.dimension = d + mm;
    // only the minus copy is matched, and only against the plus copy
    std::size_t plus_count = 0;
    auto push = [&](Ray r, const Provenance & tag) {
        for (std::size_t k = 0; tag.copy == Copy::minus && k < plus_count; ++k)
            if (same_ray(out.rays[k], r)) {
                out.merges.push_back({k, tag});
                return;
            }
        out.rays.push_back(std::move(r));
        out.provenance.push_back(tag);
    };
    auto pad_basis_vector = [&](std::size_t i, std::size_t leading, const Provenance & tag) {
        CVector v(out.dimension, Complex{});
        const auto & b = pad_basis[i];
        for (std::size_t k = 0; k < mm; ++k)
            v[leading + k] = b[k];
        return Ray(std::move(v), tag.str());
    };

    for (std::size_t i = 0; i < source.size(); ++i) {
        const Provenance tag{Copy::plus, false, i};
        push(pad(source[i], 0, mm, tag), tag);
    }
    for (std::size_t i = 0; i < mm; ++i) {
        const Provenance tag{Copy::plus, true, i};
        push(pad_basis_vector(i, d, tag), tag);
    }
    plus_count = out.rays.size();
    for (std::size_t i = 0; i < source.size(); ++i) {
        const Provenance tag{Copy::minus, false, i};
        push(pad(source[i], mm, 0, tag), tag);
    }
    for (std::size_t i = 0; i < mm; ++i) {
        const Provenance tag{Copy::minus, true, i};
        push(pad_basis_vector(i, 0, tag), tag);
    }
    return out;
}

LiftedSpectrum lifted_spectrum_check(const LiftedSet & lifted)
{
    LiftedSpectrum s;
    const auto spectrum = projector_sum_spectrum(lifted.rays);
    s.lambda_min = spectrum.lambda_min;
    s.lambda_max = spectrum.lambda_max;
    s.eigenvalues = spectrum.eigenvalues;
    if (lifted.rays.size() >= 2) {
        const auto verdict = fkrs_check(lifted.rays);
        s.order = verdict.order;
        s.clique_number = verdict.clique_number;
    }
    else {
        s.clique_number = lifted.rays.size();
    }
    s.exceeds_clique = s.lambda_min > static_cast<double>(s.clique_number) + tol::spec;
    return s;
}

} // namespace ksproof
