#pragma once

#include "ksproof/proof.hpp"
#include "ksproof/proof_oracle.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace ksproof {

struct OracleSummary {
    BoundVerdict verdict = BoundVerdict::inconclusive; // G bound; inconclusive when skipped
    bool g_checked = false;                           // false after dedup
    Rational max_value;                                // classical max of G (or of sum_I v when !g_checked)
    std::uint64_t explored = 0;
    bool exhausted = false;
    bool simultaneity_holds = false;
    Rational simultaneity_max;

    /// Every oracle check exhausted and confirmed.
    bool verified() const noexcept
    {
        return exhausted && simultaneity_holds && (!g_checked || verdict == BoundVerdict::verified);
    }
};

/// Everything needed to replay a proof: the input rays, the auxiliary rays, the bases and
/// declared orthogonalities, and the claimed bounds.
struct Certificate {
    std::string input_hash;
    ProofSet proof;
    std::int64_t classical_bound = 0; // M + R
    double quantum_value = 0.0;       // R + lambda_min
    double violation_margin = 0.0;    // quantum_value - classical_bound
    std::optional<OracleSummary> oracle;
    AuxStatus aux_status = AuxStatus::pass;
    std::string aux_detail;
};

OracleSummary run_oracle(const ProofSet & proof, const OracleOptions & options);

Certificate certify(ProofSet proof, std::optional<OracleSummary> oracle, const AuxCheck & aux);

/// Keys in a fixed order; floats in shortest round-trip form. No timestamps.
std::string dump_certificate(const Certificate & cert);
/// Throws InputError on malformed documents. Gadget models are rebuilt from the
/// serialized rays, not re-derived.
Certificate parse_certificate(const std::string & text);

struct VerifyReport {
    std::vector<std::string> failures;
    std::vector<std::string> notes;
    std::optional<OracleSummary> oracle;
    bool inconclusive = false;

    bool ok() const noexcept { return failures.empty() && !inconclusive; }
};

/// Replays hash, orthogonalities, bases, partition, spectrum and declared bounds.
/// With `run_oracle_checks`, also the exhaustive classical checks.
VerifyReport verify_certificate(const Certificate & cert, bool run_oracle_checks,
                                std::chrono::milliseconds timeout = std::chrono::seconds(60));

std::string dump_verify_report(const VerifyReport & report);

} // namespace ksproof
