#include "ksproof/cli.hpp"

#include "ksproof/certificate.hpp"
#include "ksproof/errors.hpp"
#include "ksproof/export.hpp"
#include "ksproof/io.hpp"
#include "ksproof/lift.hpp"
#include "ksproof/proof_oracle.hpp"
#include "json_codec.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>

namespace ksproof::cli {

using detail::json;

namespace {

struct Options {
    std::string input;
    std::string order = "auto";
    std::string out;
    bool dedup = false;
    bool force = false;
    bool no_oracle = false;
    bool oracle = false;
    bool dot = false;
    bool as_json = false;
    bool unconstrained = false;
    double theta = 0.0;
    double timeout = 60.0;
    int m = 1;
    std::string problem;
    std::string fixture;
    std::vector<int> weights;
};

std::optional<int> parse_order(const std::string & text)
{
    if (text == "auto")
        return std::nullopt;
    try {
        std::size_t used = 0;
        const int n = std::stoi(text, &used);
        if (used == text.size() && n >= 0)
            return n;
    }
    catch (const std::logic_error &) {
    }
    throw InputError("--order takes 'auto' or a non-negative integer, got '" + text + "'");
}

std::chrono::milliseconds timeout_of(double seconds)
{
    if (!(seconds > 0.0) || !std::isfinite(seconds))
        throw InputError("--timeout must be a positive number of seconds");
    return std::chrono::milliseconds(static_cast<std::int64_t>(std::ceil(seconds * 1000.0)));
}

void emit(const Options & o, const std::string & text, std::ostream & out)
{
    if (o.out.empty())
        out << text;
    else
        write_text(o.out, text);
}

json verdict_json(const FkrsVerdict & v)
{
    return {{"order", v.order},
            {"M", v.clique_number},
            {"lambda_min", v.lambda_min},
            {"lambda_max", v.lambda_max},
            {"is_fkrs", v.is_fkrs},
            {"witness_clique", v.witness_clique},
            {"warnings", v.warnings}};
}

int cmd_check(const Options & o, std::ostream & out)
{
    const auto set = load_rayset(o.input);
    const auto verdict = fkrs_check(set.rays, parse_order(o.order));
    out << verdict_json(verdict).dump(2) << "\n";
    return verdict.is_fkrs ? ok : negative_verdict;
}

int cmd_build(const Options & o, std::ostream & out, std::ostream & err)
{
    const auto set = load_rayset(o.input);
    const auto requested = parse_order(o.order);
    const int order = requested ? *requested : auto_order(set.rays);
    auto proof = assemble(set.rays, order, {o.dedup, o.force, o.theta});

    std::optional<OracleSummary> summary;
    AuxCheck aux;
    if (o.no_oracle) {
        aux.status = AuxStatus::inconclusive;
        aux.detail = "skipped";
    }
    else {
        const auto limit = timeout_of(o.timeout);
        summary = run_oracle(proof, {limit, Rules::kochen_specker, std::nullopt});
        aux = aux_independence_check(proof, limit);
    }
    const auto cert = certify(std::move(proof), summary, aux);
    emit(o, dump_certificate(cert), out);

    for (const auto & w : cert.proof.warnings)
        err << "warning: " << w << "\n";
    if (cert.aux_status == AuxStatus::warning)
        err << "warning: auxiliary rays violate their own noncontextual bound (" << cert.aux_detail << ")\n";
    if (!o.out.empty())
        out << json{{"certificate", o.out},
                    {"order_n", cert.proof.order},
                    {"M", cert.proof.verdict.clique_number},
                    {"R", cert.proof.basis_total},
                    {"classical_bound", cert.classical_bound},
                    {"quantum_value", cert.quantum_value},
                    {"oracle_verified", summary ? summary->verified() : false}}
                   .dump()
            << "\n";
    if (summary && summary->exhausted && !summary->verified()) {
        err << "oracle refuted the assembled proof\n";
        return verification_failure;
    }
    return ok;
}

int cmd_verify(const Options & o, std::ostream & out)
{
    const auto cert = parse_certificate(read_text(o.input));
    const auto report = verify_certificate(cert, o.oracle, timeout_of(o.timeout));
    out << dump_verify_report(report);
    if (!report.failures.empty())
        return verification_failure;
    if (report.inconclusive)
        return inconclusive;
    return ok;
}

int cmd_lift(const Options & o, std::ostream & out)
{
    const auto set = load_rayset(o.input);
    const auto lifted = lift(set.rays, o.m);
    emit(o, dump_rayset({lifted.dimension, lifted.rays}), out);
    if (!o.out.empty()) {
        const auto s = lifted_spectrum_check(lifted);
        json merges = json::array();
        for (const auto & mg : lifted.merges)
            merges.push_back({{"kept", mg.kept}, {"dropped", mg.dropped.str()}});
        out << json{{"dimension", lifted.dimension},
                    {"rays", lifted.rays.size()},
                    {"merges", merges},
                    {"order", s.order},
                    {"M", s.clique_number},
                    {"lambda_min", s.lambda_min},
                    {"lambda_max", s.lambda_max},
                    {"exceeds_clique", s.exceeds_clique},
                    {"certified", false}}
                   .dump(2)
            << "\n";
    }
    return ok;
}

bool looks_like_certificate(const std::string & text)
{
    const auto doc = detail::parse_json(text);
    return doc.is_object() && doc.contains("input_hash");
}

int cmd_export(const Options & o, std::ostream & out)
{
    const auto text = read_text(o.input);
    std::optional<ProofSet> proof;
    std::vector<Ray> rays;
    if (looks_like_certificate(text)) {
        proof = parse_certificate(text).proof;
    }
    else {
        auto set = parse_rayset(text);
        if (set.dimension == 3 && set.rays.size() >= 2) {
            const auto requested = parse_order(o.order);
            const int order = requested ? *requested : auto_order(set.rays);
            proof = assemble(set.rays, order, {false, true, o.theta});
        }
        else {
            rays = std::move(set.rays);
        }
    }
    if (o.as_json) {
        if (!proof)
            throw InputError("JSON export needs a C^3 ray set or a certificate");
        emit(o, dump_problem(problem_from_proof(*proof, proof->deduplicated ? Objective::fkrs_sum : Objective::observable)),
             out);
    }
    else {
        emit(o, proof ? to_dot(*proof) : to_dot(rays), out);
    }
    return ok;
}

int cmd_solve(const Options & o, std::ostream & out)
{
    AssignmentProblem problem;
    if (!o.problem.empty())
        problem = parse_problem(read_text(o.problem));
    else if (!o.fixture.empty())
        problem = build_fixture(parse_fixture_kind(o.fixture), o.weights);
    else
        throw InputError("solve needs --problem FILE or --fixture KIND");
    const auto result =
        classical_max(problem, {timeout_of(o.timeout), o.unconstrained ? Rules::unconstrained : Rules::kochen_specker, std::nullopt});
    out << dump_oracle_result(result, problem);
    return result.exhausted ? ok : inconclusive;
}

int cmd_budget(const Options & o, std::ostream & out)
{
    const auto set = load_rayset(o.input);
    const auto budget = basis_budget(set.rays);
    json doc{{"N", budget.N},
             {"ray_count", budget.ray_count},
             {"max_overlap", budget.max_overlap},
             {"lambda_min", budget.lambda_min},
             {"max_bases", budget.max_bases}};
    int code = ok;
    try {
        const auto proof = assemble(set.rays, budget.N);
        doc["R"] = proof.basis_total;
        doc["covered"] = budget.covers(proof);
        if (!budget.covers(proof))
            code = verification_failure;
    }
    catch (const HypothesisError & e) {
        doc["R"] = nullptr;
        doc["note"] = e.what();
        code = negative_verdict;
    }
    out << doc.dump(2) << "\n";
    return code;
}

} // namespace

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"Builds and checks state-independent contextuality proofs from fundamental KS ray sets", "ksproof"};
    app.require_subcommand(1);
    Options o;

    auto * check = app.add_subcommand("check", "Decide whether a ray set is an FKRS");
    check->add_option("input", o.input, "Ray-set JSON")->required();
    check->add_option("--order", o.order, "Threshold order or 'auto'");

    auto * build = app.add_subcommand("build", "Assemble a proof and write its certificate");
    build->add_option("input", o.input, "Ray-set JSON")->required();
    build->add_option("--order", o.order, "Threshold order or 'auto'");
    build->add_flag("--dedup", o.dedup, "Merge projectively equal auxiliary rays");
    build->add_flag("--force", o.force, "Assemble even when the set is not an FKRS");
    build->add_option("--theta", o.theta, "Phase of the gadget splitting vectors");
    build->add_option("--out", o.out, "Certificate path (default stdout)");
    build->add_flag("--no-oracle", o.no_oracle, "Skip the exhaustive classical checks");
    build->add_option("--timeout", o.timeout, "Oracle timeout in seconds");

    auto * verify = app.add_subcommand("verify", "Replay a certificate");
    verify->add_option("certificate", o.input, "Certificate JSON")->required();
    verify->add_flag("--oracle", o.oracle, "Also run the exhaustive classical checks");
    verify->add_option("--timeout", o.timeout, "Oracle timeout in seconds");

    auto * lift_cmd = app.add_subcommand("lift", "Embed a ray set into a higher dimension");
    lift_cmd->add_option("input", o.input, "Ray-set JSON")->required();
    lift_cmd->add_option("--m", o.m, "Added dimensions")->required();
    lift_cmd->add_option("--out", o.out, "Output path (default stdout)");

    auto * exp = app.add_subcommand("export", "Write the orthogonality structure");
    exp->add_option("input", o.input, "Ray-set or certificate JSON")->required();
    auto * dot = exp->add_flag("--dot", o.dot, "Graphviz DOT (default)");
    exp->add_flag("--json", o.as_json, "Assignment-problem JSON")->excludes(dot);
    exp->add_option("--order", o.order, "Threshold order or 'auto' for ray sets");
    exp->add_option("--theta", o.theta, "Phase of the gadget splitting vectors");
    exp->add_option("--out", o.out, "Output path (default stdout)");

    auto * solve = app.add_subcommand("solve", "Exact classical maximum of an assignment problem");
    solve->add_option("--problem", o.problem, "Assignment-problem JSON");
    solve->add_option("--fixture", o.fixture, "u2, u3, v3, clifton or model6n2");
    solve->add_option("--weights", o.weights, "Hyper-edge weights")->delimiter(',');
    solve->add_flag("--unconstrained", o.unconstrained, "Drop rules I and II");
    solve->add_option("--timeout", o.timeout, "Timeout in seconds");

    auto * budget = app.add_subcommand("budget", "Basis budget for completing a ray set");
    budget->add_option("input", o.input, "Ray-set JSON")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    }
    catch (const CLI::ParseError & e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : input_error;
    }

    try {
        if (check->parsed())
            return cmd_check(o, out);
        if (build->parsed())
            return cmd_build(o, out, err);
        if (verify->parsed())
            return cmd_verify(o, out);
        if (lift_cmd->parsed())
            return cmd_lift(o, out);
        if (exp->parsed())
            return cmd_export(o, out);
        if (solve->parsed())
            return cmd_solve(o, out);
        if (budget->parsed())
            return cmd_budget(o, out);
    }
    catch (const HypothesisError & e) {
        err << "error: " << e.what() << "\n";
        return negative_verdict;
    }
    catch (const InvalidModelError & e) {
        err << "error: " << e.what() << "\n";
        return verification_failure;
    }
    catch (const DegenerateError & e) {
        err << "error: " << e.what() << "\n";
        return verification_failure;
    }
    catch (const Error & e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    }
    catch (const json::exception & e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    }
    catch (const std::exception & e) {
        err << "internal error: " << e.what() << "\n";
        return internal_error;
    }
    return input_error;
}

} // namespace ksproof::cli
