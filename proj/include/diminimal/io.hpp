#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "diminimal/matrix.hpp"
#include "diminimal/realization.hpp"
#include "diminimal/tree.hpp"

namespace diminimal {

/// {"n": int, "root": int, "edges": [[u, v], ...]}
nlohmann::json tree_to_json(const RootedTree& tree);
RootedTree tree_from_json(const nlohmann::json& doc);

/// Claim stored next to a constructed matrix.
struct CertificateRecord {
    std::string family;
    std::string variant;
    Rational alpha;
    Rational beta;
    std::optional<Rational> parameter;
    int diameter = 0;
    std::vector<SpectrumEntry> dspec;
};

CertificateRecord record_of(const RealizationCertificate& cert);

struct MatrixDocument {
    WeightedTreeMatrix matrix;
    std::optional<CertificateRecord> certificate;
};

/// {"tree": ..., "diag": ["p/q", ...], "sq_edge": [{"u", "v", "w2"}, ...],
///  "certificate": {...}}; the certificate is optional.
nlohmann::json matrix_to_json(const WeightedTreeMatrix& m, const std::optional<CertificateRecord>& cert = std::nullopt);
MatrixDocument matrix_from_json(const nlohmann::json& doc);

std::string tree_to_dot(const RootedTree& tree);
/// Vertices labelled with their diagonal entry, edges with the squared weight.
std::string matrix_to_dot(const WeightedTreeMatrix& m);

/// File helpers; parse errors and unreadable files raise InvalidInput.
nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace diminimal
