#pragma once

#include "ksproof/ray.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ksproof {

enum class Copy { plus, minus };

struct Provenance {
    Copy copy = Copy::plus;
    bool from_basis = false; // false: source ray, true: padding basis vector
    std::size_t index = 0;

    std::string str() const;
};

struct LiftMerge {
    std::size_t kept = 0; // index into LiftedSet::rays
    Provenance dropped;
};

struct LiftedSet {
    std::size_t dimension = 0;
    std::vector<Ray> rays;
    std::vector<Provenance> provenance; // parallel to rays
    std::vector<LiftMerge> merges;
};

/// Embeds `source` (dimension d) into dimension d + m twice: trailing zeros plus the padding
/// basis in the new coordinates, and leading zeros plus the padding basis in the first m
/// coordinates. A minus-copy ray projectively equal to a plus-copy ray is merged into it;
/// repeats inside one copy are kept.
/// `basis` defaults to the standard basis of C^m. Throws RangeError unless 1 <= m <= d.
LiftedSet lift(std::span<const Ray> source, int m, std::optional<std::vector<CVector>> basis = std::nullopt);

struct LiftedSpectrum {
    int order = 0;
    std::size_t clique_number = 0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    std::vector<double> eigenvalues;
    /// lambda_min > M. Evidence only: nothing here certifies the lifted set.
    bool exceeds_clique = false;
};

LiftedSpectrum lifted_spectrum_check(const LiftedSet & lifted);

} // namespace ksproof
