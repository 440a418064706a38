#include "ksproof/io.hpp"

#include "json_codec.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace ksproof {

using detail::json;

RaySet parse_rayset(const std::string & text)
{
    const auto doc = detail::parse_json(text);
    RaySet set;
    const auto dim = detail::field<long long>(doc, "dimension");
    if (dim < 2)
        throw InputError("dimension must be at least 2");
    set.dimension = static_cast<std::size_t>(dim);
    if (!doc.contains("rays") || !doc.at("rays").is_array())
        throw InputError("rays must be an array");
    for (const auto & r : doc.at("rays"))
        set.rays.push_back(detail::decode_ray(r, set.dimension));
    return set;
}

std::string dump_rayset(const RaySet & set)
{
    json rays = json::array();
    for (const auto & r : set.rays)
        rays.push_back(detail::encode(r));
    json doc{{"dimension", set.dimension}, {"rays", rays}};
    return doc.dump(2) + "\n";
}

std::string read_text(const std::filesystem::path & path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text(const std::filesystem::path & path, const std::string & text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text))
        throw InputError("cannot write " + path.string());
}

RaySet load_rayset(const std::filesystem::path & path) { return parse_rayset(read_text(path)); }

void save_rayset(const std::filesystem::path & path, const RaySet & set) { write_text(path, dump_rayset(set)); }

std::string input_hash(std::span<const Ray> rays)
{
    json arr = json::array();
    for (const auto & r : rays)
        arr.push_back(detail::encode(r));
    const json doc{{"dimension", rays.empty() ? 0 : rays.front().dimension()}, {"rays", arr}};
    const auto text = doc.dump();

    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 failed");
    std::ostringstream os;
    os << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i)
        os << std::setw(2) << static_cast<int>(digest[i]);
    return os.str();
}

namespace {

json encode_indices(const std::vector<std::size_t> & v) { return json(v); }

std::vector<std::size_t> decode_indices(const json & j, const char * what)
{
    if (!j.is_array())
        throw InputError(std::string(what) + " must be an array of indices");
    std::vector<std::size_t> out;
    for (const auto & x : j) {
        if (!x.is_number_unsigned() && !(x.is_number_integer() && x.get<long long>() >= 0))
            throw InputError(std::string(what) + " holds a non-index value");
        out.push_back(x.get<std::size_t>());
    }
    return out;
}

} // namespace

std::string dump_problem(const AssignmentProblem & p)
{
    json edges = json::array();
    for (const auto & [a, b] : p.edges)
        edges.push_back({a, b});
    json vt = json::array();
    for (const auto & t : p.vertex_terms)
        vt.push_back({{"vertex", t.vertex}, {"weight", detail::encode(t.weight)}});
    json pt = json::array();
    for (const auto & t : p.pair_terms)
        pt.push_back({{"u", t.u}, {"v", t.v}, {"weight", detail::encode(t.weight)}});
    json hyper = json::array();
    for (const auto & h : p.hyperedges)
        hyper.push_back({{"u", h.u},
                         {"v", h.v},
                         {"weight", h.weight},
                         {"members", encode_indices(h.members)},
                         {"vertex_terms", encode_indices(h.vertex_terms)},
                         {"pair_terms", encode_indices(h.pair_terms)}});
    json doc{{"labels", p.labels},
             {"edges", edges},
             {"bases", p.bases},
             {"vertex_terms", vt},
             {"pair_terms", pt},
             {"hyper_vertices", p.hyper_vertices},
             {"hyperedges", hyper}};
    return doc.dump(2) + "\n";
}

AssignmentProblem parse_problem(const std::string & text)
{
    const auto doc = detail::parse_json(text);
    AssignmentProblem p;
    p.labels = detail::field<std::vector<std::string>>(doc, "labels");
    if (doc.contains("edges"))
        for (const auto & e : doc.at("edges")) {
            const auto ab = decode_indices(e, "edge");
            if (ab.size() != 2)
                throw InputError("edges are index pairs");
            p.edges.emplace_back(ab[0], ab[1]);
        }
    if (doc.contains("bases"))
        for (const auto & b : doc.at("bases"))
            p.bases.push_back(decode_indices(b, "basis"));
    if (doc.contains("vertex_terms"))
        for (const auto & t : doc.at("vertex_terms"))
            p.vertex_terms.push_back({detail::field<std::size_t>(t, "vertex"), detail::decode_rational(t.at("weight"))});
    if (doc.contains("pair_terms"))
        for (const auto & t : doc.at("pair_terms"))
            p.pair_terms.push_back({detail::field<std::size_t>(t, "u"), detail::field<std::size_t>(t, "v"),
                                    detail::decode_rational(t.at("weight"))});
    if (doc.contains("hyper_vertices"))
        p.hyper_vertices = decode_indices(doc.at("hyper_vertices"), "hyper_vertices");
    if (doc.contains("hyperedges"))
        for (const auto & h : doc.at("hyperedges")) {
            HyperEdgeGroup g;
            g.u = detail::field<std::size_t>(h, "u");
            g.v = detail::field<std::size_t>(h, "v");
            g.weight = detail::field<int>(h, "weight");
            if (h.contains("members"))
                g.members = decode_indices(h.at("members"), "members");
            if (h.contains("vertex_terms"))
                g.vertex_terms = decode_indices(h.at("vertex_terms"), "vertex_terms");
            if (h.contains("pair_terms"))
                g.pair_terms = decode_indices(h.at("pair_terms"), "pair_terms");
            p.hyperedges.push_back(std::move(g));
        }
    p.validate();
    return p;
}

std::string dump_oracle_result(const OracleResult & r, const AssignmentProblem & problem)
{
    json ones = json::array();
    for (std::size_t v = 0; v < r.argmax.size(); ++v)
        if (r.argmax[v])
            ones.push_back(problem.labels.at(v));
    json doc{{"feasible", r.feasible},
             {"max_value", detail::encode(r.max_value)},
             {"exhausted", r.exhausted},
             {"explored", r.explored},
             {"argmax_ones", ones}};
    return doc.dump(2) + "\n";
}

} // namespace ksproof
