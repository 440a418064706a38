#include "ksproof/export.hpp"

#include <sstream>

namespace ksproof {

namespace {

std::string quoted(const std::string & s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string node_label(const Ray & r, std::size_t v)
{
    return r.label().empty() ? "r" + std::to_string(v) : r.label();
}

} // namespace

std::string to_dot(const ProofSet & proof)
{
    std::ostringstream os;
    os << "graph proof {\n";
    os << "  node [shape=circle, fontsize=9];\n";
    for (std::size_t v = 0; v < proof.fkrs.size(); ++v)
        os << "  v" << v << " [shape=doublecircle, style=filled, fillcolor=lightgrey, label="
           << quoted(node_label(proof.fkrs[v], v)) << "];\n";

    std::vector<std::uint8_t> placed(proof.vertex_count(), 0);
    for (std::size_t k = 0; k < proof.hyperedges.size(); ++k) {
        const auto & h = proof.hyperedges[k];
        os << "  subgraph cluster_h" << k << " {\n";
        os << "    label=" << quoted("h" + std::to_string(k) + " (" + std::to_string(h.i) + "," +
                                     std::to_string(h.j) + ") m=" + std::to_string(h.weight))
           << ";\n";
        for (auto b : h.bases) {
            const auto & basis = proof.aux_bases[b];
            os << "    subgraph cluster_b" << b << " {\n";
            os << "      label=" << quoted("B" + std::to_string(b)) << "; style=dashed;\n";
            for (auto v : basis.rays) {
                if (placed[v] || v < proof.fkrs.size())
                    continue;
                placed[v] = 1;
                os << "      v" << v << " [label=" << quoted(node_label(proof.ray(v), v)) << "];\n";
            }
            os << "    }\n";
        }
        os << "  }\n";
    }
    for (const auto & [a, b] : proof.edges)
        os << "  v" << a << " -- v" << b << ";\n";
    os << "}\n";
    return os.str();
}

std::string to_dot(std::span<const Ray> rays)
{
    std::ostringstream os;
    os << "graph rays {\n";
    os << "  node [shape=doublecircle, fontsize=9];\n";
    for (std::size_t v = 0; v < rays.size(); ++v)
        os << "  v" << v << " [label=" << quoted(node_label(rays[v], v)) << "];\n";
    for (std::size_t a = 0; a < rays.size(); ++a)
        for (std::size_t b = a + 1; b < rays.size(); ++b)
            if (orthogonal(rays[a], rays[b]))
                os << "  v" << a << " -- v" << b << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace ksproof
