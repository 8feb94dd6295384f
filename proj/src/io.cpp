#include "diminimal/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "diminimal/error.hpp"

namespace diminimal {

namespace {

using nlohmann::json;

Rational rational_field(const json& value, const std::string& what) {
    if (!value.is_string()) throw InvalidInput(what + " must be a \"p/q\" string");
    try {
        return Rational::parse(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw InvalidInput(what + ": " + e.what());
    }
}

const json& field(const json& doc, const char* name) {
    if (!doc.is_object() || !doc.contains(name)) throw InvalidInput(std::string("missing field '") + name + "'");
    return doc.at(name);
}

int int_field(const json& doc, const char* name) {
    const json& v = field(doc, name);
    if (!v.is_number_integer()) throw InvalidInput(std::string("field '") + name + "' must be an integer");
    return v.get<int>();
}

}  // namespace

json tree_to_json(const RootedTree& tree) {
    json edges = json::array();
    for (const Edge& e : tree.edges()) edges.push_back({e.u, e.v});
    return {{"n", tree.size()}, {"root", tree.root()}, {"edges", edges}};
}

RootedTree tree_from_json(const json& doc) {
    const int n = int_field(doc, "n");
    const int root = int_field(doc, "root");
    const json& raw = field(doc, "edges");
    if (!raw.is_array()) throw InvalidInput("'edges' must be an array");
    std::vector<Edge> edges;
    for (const json& e : raw) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
            throw InvalidInput("each edge must be a pair of integers");
        }
        edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    if (n < 1 || static_cast<std::size_t>(n) != edges.size() + 1) {
        throw InvalidInput("a tree on " + std::to_string(n) + " vertices needs " + std::to_string(n - 1) + " edges");
    }
    return build_tree(edges, root);
}

CertificateRecord record_of(const RealizationCertificate& cert) {
    return {family_name(cert.family), variant_name(cert.variant), cert.alpha, cert.beta,
            cert.parameter,           cert.diameter,              cert.dspec};
}

json matrix_to_json(const WeightedTreeMatrix& m, const std::optional<CertificateRecord>& cert) {
    json diag = json::array();
    for (const Rational& d : m.diag()) diag.push_back(d.fraction_str());
    json sq = json::array();
    for (std::size_t i = 0; i < m.sq_edge().size(); ++i) {
        const Edge& e = m.tree().edges()[i];
        sq.push_back({{"u", e.u}, {"v", e.v}, {"w2", m.sq_edge()[i].fraction_str()}});
    }
    json doc = {{"tree", tree_to_json(m.tree())}, {"diag", diag}, {"sq_edge", sq}};
    if (cert) {
        json dspec = json::array();
        for (const SpectrumEntry& e : cert->dspec) {
            dspec.push_back({{"value", e.value.fraction_str()}, {"multiplicity", e.multiplicity}});
        }
        json c = {{"family", cert->family},      {"variant", cert->variant},   {"alpha", cert->alpha.fraction_str()},
                  {"beta", cert->beta.fraction_str()}, {"diameter", cert->diameter}, {"dspec", dspec}};
        if (cert->parameter) c["parameter"] = cert->parameter->fraction_str();
        doc["certificate"] = c;
    }
    return doc;
}

MatrixDocument matrix_from_json(const json& doc) {
    RootedTree tree = tree_from_json(field(doc, "tree"));
    const json& raw_diag = field(doc, "diag");
    if (!raw_diag.is_array()) throw InvalidInput("'diag' must be an array");
    std::vector<Rational> diag;
    for (const json& d : raw_diag) diag.push_back(rational_field(d, "diagonal entry"));

    const json& raw_sq = field(doc, "sq_edge");
    if (!raw_sq.is_array()) throw InvalidInput("'sq_edge' must be an array");
    std::vector<std::optional<Rational>> slots(tree.edges().size());
    for (const json& entry : raw_sq) {
        const Edge e = Edge::canonical(int_field(entry, "u"), int_field(entry, "v"));
        const auto it = std::lower_bound(tree.edges().begin(), tree.edges().end(), e);
        if (it == tree.edges().end() || *it != e) {
            throw InvalidInput("squared weight given for non-edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "}");
        }
        auto& slot = slots[static_cast<std::size_t>(it - tree.edges().begin())];
        if (slot) throw InvalidInput("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} weighted twice");
        slot = rational_field(field(entry, "w2"), "squared weight");
    }
    std::vector<Rational> sq;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (!slots[i]) {
            const Edge& e = tree.edges()[i];
            throw InvalidInput("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} has no squared weight");
        }
        sq.push_back(*slots[i]);
    }

    MatrixDocument out{WeightedTreeMatrix(std::move(tree), std::move(diag), std::move(sq)), std::nullopt};
    if (doc.contains("certificate")) {
        const json& c = doc.at("certificate");
        CertificateRecord rec;
        const json& family = field(c, "family");
        const json& variant = field(c, "variant");
        if (!family.is_string() || !variant.is_string()) throw InvalidInput("certificate family/variant must be strings");
        rec.family = family.get<std::string>();
        rec.variant = variant.get<std::string>();
        rec.alpha = rational_field(field(c, "alpha"), "certificate alpha");
        rec.beta = rational_field(field(c, "beta"), "certificate beta");
        if (c.contains("parameter")) rec.parameter = rational_field(c.at("parameter"), "certificate parameter");
        rec.diameter = int_field(c, "diameter");
        const json& dspec = field(c, "dspec");
        if (!dspec.is_array()) throw InvalidInput("'dspec' must be an array");
        for (const json& e : dspec) {
            rec.dspec.push_back({rational_field(field(e, "value"), "dspec value"), int_field(e, "multiplicity")});
        }
        out.certificate = std::move(rec);
    }
    return out;
}

std::string tree_to_dot(const RootedTree& tree) {
    std::ostringstream os;
    os << "graph T {\n  node [shape=circle];\n";
    for (std::size_t v = 0; v < tree.size(); ++v) {
        os << "  " << v;
        if (static_cast<Vertex>(v) == tree.root()) os << " [shape=box]";
        os << ";\n";
    }
    for (const Edge& e : tree.edges()) os << "  " << e.u << " -- " << e.v << ";\n";
    os << "}\n";
    return os.str();
}

std::string matrix_to_dot(const WeightedTreeMatrix& m) {
    std::ostringstream os;
    os << "graph M {\n  node [shape=circle];\n";
    for (std::size_t v = 0; v < m.size(); ++v) {
        os << "  " << v << " [label=\"" << m.diag()[v].str() << "\"";
        if (static_cast<Vertex>(v) == m.tree().root()) os << ", shape=box";
        os << "];\n";
    }
    for (std::size_t i = 0; i < m.sq_edge().size(); ++i) {
        const Edge& e = m.tree().edges()[i];
        os << "  " << e.u << " -- " << e.v << " [label=\"" << m.sq_edge()[i].str() << "\"];  // sqrt ~ "
           << std::sqrt(m.sq_edge()[i].to_double()) << "\n";
    }
    os << "}\n";
    return os.str();
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidInput("malformed JSON in " + path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path);
    out << text;
}

}  // namespace diminimal
