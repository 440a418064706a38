#pragma once

#include "ksproof/oracle.hpp"
#include "ksproof/ray.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace ksproof {

/// {"dimension": D, "rays": [{"label": s, "components": [[re, im], ...]}, ...]}
struct RaySet {
    std::size_t dimension = 0;
    std::vector<Ray> rays;
};

/// Rays are normalized on load. Throws InputError on malformed documents, non-finite
/// components or a component count that differs from `dimension`.
RaySet parse_rayset(const std::string & text);
std::string dump_rayset(const RaySet & set);

RaySet load_rayset(const std::filesystem::path & path);
void save_rayset(const std::filesystem::path & path, const RaySet & set);

std::string read_text(const std::filesystem::path & path);
void write_text(const std::filesystem::path & path, const std::string & text);

/// Lower-case hex SHA-256 of the compact ray-set document for `rays`.
std::string input_hash(std::span<const Ray> rays);

/// Weights are written as integers when integral, else as "p/q" strings; both are accepted.
std::string dump_problem(const AssignmentProblem & problem);
AssignmentProblem parse_problem(const std::string & text);

std::string dump_oracle_result(const OracleResult & result, const AssignmentProblem & problem);

} // namespace ksproof
