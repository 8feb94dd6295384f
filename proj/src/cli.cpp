#include "diminimal/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>

#include "diminimal/error.hpp"
#include "diminimal/io.hpp"
#include "diminimal/locate.hpp"
#include "diminimal/oracle.hpp"
#include "diminimal/realization.hpp"

namespace diminimal {

namespace {

Rational parse_rational_flag(const std::string& flag, const std::string& text) {
    try {
        return Rational::parse(text);
    } catch (const std::invalid_argument& e) {
        throw InvalidInput(flag + ": " + e.what());
    }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
    } else {
        write_text_file(path, text);
    }
}

void print_spectrum(const std::vector<SpectrumEntry>& dspec, std::ostream& out) {
    for (const SpectrumEntry& e : dspec) out << "  " << e.value << " [" << e.multiplicity << "]\n";
}

std::string piece_kind(PieceKind kind) { return kind == PieceKind::tstar ? "tstar" : "sprime"; }

struct Args {
    std::string family;
    int diameter = 0;
    std::string tree;
    std::string matrix;
    std::string out;
    int vertex = 0;
    int branch = 0;
    int copies = 1;
    std::string alpha;
    std::string beta;
    std::string beta_override;
    bool integral = false;
    std::string point;
    std::string width = "1/1000000";
    bool cross_check = false;
    std::string format = "json";
};

int cmd_seed(const Args& a, std::ostream& out) {
    emit(tree_to_json(seed(parse_family(a.family), a.diameter)).dump(2) + "\n", a.out, out);
    return 0;
}

int cmd_unfold(const Args& a, std::ostream& out) {
    const RootedTree tree = tree_from_json(read_json_file(a.tree));
    emit(tree_to_json(cbd(tree, a.vertex, a.branch, a.copies)).dump(2) + "\n", a.out, out);
    return 0;
}

int cmd_recognize(const Args& a, std::ostream& out) {
    const FamilyCertificate cert = recognize_family(tree_from_json(read_json_file(a.tree)));
    out << "family: " << family_name(cert.tag.family) << "\n";
    out << "diameter: " << cert.tag.diameter << "\n";
    out << "main roots:";
    for (Vertex v : cert.main_roots) out << ' ' << v;
    out << "\n";
    for (const FamilyPiece& p : cert.pieces) {
        out << "piece: root " << p.ref.root << " height " << p.ref.height << " " << piece_kind(p.kind) << "\n";
    }
    for (const JoinStep& s : cert.steps) {
        out << "join: (" << s.root << ", " << s.height << ") = (" << s.root << ", " << s.height - 1 << ") with";
        for (Vertex v : s.part_roots) out << ' ' << v;
        out << "\n";
    }
    return 0;
}

int cmd_construct(const Args& a, std::ostream& out) {
    const RootedTree tree = tree_from_json(read_json_file(a.tree));
    const Rational alpha = parse_rational_flag("--alpha", a.alpha);
    RealizationCertificate cert;
    if (a.integral) {
        std::optional<Rational> beta;
        if (!a.beta_override.empty()) {
            beta = parse_rational_flag("--beta-override", a.beta_override);
        } else if (!a.beta.empty()) {
            beta = parse_rational_flag("--beta", a.beta);
        }
        cert = realize_integral(tree, alpha, beta);
    } else {
        if (a.beta.empty()) throw InvalidInput("--beta is required unless --integral is given");
        if (!a.beta_override.empty()) throw InvalidInput("--beta-override only applies with --integral");
        cert = realize_family(tree, alpha, parse_rational_flag("--beta", a.beta));
    }
    const std::string json = matrix_to_json(cert.matrix, record_of(cert)).dump(2) + "\n";
    if (a.out.empty()) {
        out << json;
        return 0;
    }
    write_text_file(a.out, json);
    out << "family: " << family_name(cert.family) << "\n";
    out << "diameter: " << cert.diameter << "\n";
    out << "distinct eigenvalues: " << cert.dspec.size() << "\n";
    print_spectrum(cert.dspec, out);
    return 0;
}

int cmd_locate(const Args& a, std::ostream& out) {
    const MatrixDocument doc = matrix_from_json(read_json_file(a.matrix));
    const Counts c = counts_at(doc.matrix, parse_rational_flag("--point", a.point));
    out << "below: " << c.below << "\nequal: " << c.equal << "\nabove: " << c.above << "\n";
    return 0;
}

int cmd_isolate(const Args& a, std::ostream& out) {
    const MatrixDocument doc = matrix_from_json(read_json_file(a.matrix));
    for (const IsolatingInterval& iv : isolate_eigenvalues(doc.matrix, parse_rational_flag("--width", a.width))) {
        if (iv.lo == iv.hi) {
            out << "[" << iv.lo << "] " << iv.multiplicity << "\n";
        } else {
            out << "(" << iv.lo << ", " << iv.hi << ") " << iv.multiplicity << "  ~" << iv.lo.to_double() << "\n";
        }
    }
    return 0;
}

/// Checks every claim of the stored certificate against the matrix alone.
void verify_claims(const WeightedTreeMatrix& m, const CertificateRecord& rec, std::ostream& out) {
    const int d = diameter(m.tree());
    if (rec.diameter != d) {
        throw VerificationError("claimed diameter " + std::to_string(rec.diameter) + ", tree has " + std::to_string(d));
    }
    const FamilyTag tag = recognize_family(m.tree()).tag;
    if (family_name(tag.family) != rec.family) {
        throw VerificationError("claimed family " + rec.family + ", tree is " + family_name(tag.family));
    }
    if (!std::is_sorted(rec.dspec.begin(), rec.dspec.end(),
                        [](const SpectrumEntry& x, const SpectrumEntry& y) { return x.value < y.value; })) {
        throw VerificationError("claimed spectrum is not ascending");
    }
    verify_spectrum(m, rec.dspec);
    out << "spectrum: ok (" << rec.dspec.size() << " distinct values on " << m.size() << " vertices)\n";
    if (static_cast<int>(rec.dspec.size()) != d + 1) {
        throw VerificationError(std::to_string(rec.dspec.size()) + " distinct eigenvalues, minimum is " +
                                std::to_string(d + 1));
    }
    out << "minimality: ok (diameter + 1 = " << d + 1 << ")\n";
    if (rec.dspec.front().multiplicity != 1 || rec.dspec.back().multiplicity != 1) {
        throw VerificationError("an extreme eigenvalue is not simple");
    }
    Rational weighted;
    for (const SpectrumEntry& e : rec.dspec) weighted += e.value * Rational(e.multiplicity);
    if (weighted != trace(m)) throw VerificationError("spectrum does not sum to the trace");
    out << "trace: ok (" << trace(m) << ")\n";
    for (const SpectrumEntry& e : rec.dspec) {
        if (e.multiplicity < 2) continue;
        const ParterVertex p = find_parter_vertex(m, e.value);
        out << "parter: " << e.value << " at vertex " << p.vertex << "\n";
    }
}

void cross_check(const WeightedTreeMatrix& m, const std::vector<Rational>& points, std::ostream& out) {
    int inconclusive = 0;
    for (const Rational& p : points) {
        const CountComparison cmp = compare_counts(m, p);
        if (cmp.agreement == Agreement::disagree) {
            throw VerificationError("oracle disagrees at " + p.str() + ": exact (" + std::to_string(cmp.exact.below) +
                                    "," + std::to_string(cmp.exact.equal) + "," + std::to_string(cmp.exact.above) +
                                    ") float (" + std::to_string(cmp.floating.below) + "," +
                                    std::to_string(cmp.floating.equal) + "," + std::to_string(cmp.floating.above) + ")");
        }
        if (cmp.agreement == Agreement::inconclusive) ++inconclusive;
    }
    out << "cross-check: " << points.size() - static_cast<std::size_t>(inconclusive) << " points agree, "
        << inconclusive << " inconclusive\n";
}

int cmd_verify(const Args& a, std::ostream& out) {
    const MatrixDocument doc = matrix_from_json(read_json_file(a.matrix));
    const WeightedTreeMatrix& m = doc.matrix;
    std::vector<Rational> points;
    if (doc.certificate) {
        verify_claims(m, *doc.certificate, out);
        print_spectrum(doc.certificate->dspec, out);
        const auto& dspec = doc.certificate->dspec;
        for (std::size_t i = 0; i < dspec.size(); ++i) {
            points.push_back(dspec[i].value);
            if (i + 1 < dspec.size()) points.push_back((dspec[i].value + dspec[i + 1].value) / Rational(2));
        }
    } else {
        const auto intervals = isolate_eigenvalues(m, Rational(1, 1'000'000));
        out << "no certificate; " << intervals.size() << " isolating intervals, diameter " << diameter(m.tree()) << "\n";
        // exact point intervals, and the gaps between intervals; an interval's
        // midpoint is too close to its eigenvalue for the float comparison
        for (std::size_t i = 0; i < intervals.size(); ++i) {
            if (intervals[i].lo == intervals[i].hi) points.push_back(intervals[i].lo);
            if (i + 1 < intervals.size()) points.push_back((intervals[i].hi + intervals[i + 1].lo) / Rational(2));
        }
    }
    if (a.cross_check) cross_check(m, points, out);
    out << "verified\n";
    return 0;
}

int cmd_export(const Args& a, std::ostream& out) {
    if (a.format != "dot" && a.format != "json") throw InvalidInput("--format must be dot or json");
    if (!a.matrix.empty()) {
        const MatrixDocument doc = matrix_from_json(read_json_file(a.matrix));
        emit(a.format == "dot" ? matrix_to_dot(doc.matrix) : matrix_to_json(doc.matrix, doc.certificate).dump(2) + "\n",
             a.out, out);
        return 0;
    }
    if (a.tree.empty()) throw InvalidInput("export needs --matrix or --tree");
    const RootedTree tree = tree_from_json(read_json_file(a.tree));
    emit(a.format == "dot" ? tree_to_dot(tree) : tree_to_json(tree).dump(2) + "\n", a.out, out);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact eigenvalue location and minimal-spectrum realizations for trees", "diminimal"};
    app.require_subcommand(1);
    Args a;

    auto* seed_cmd = app.add_subcommand("seed", "Write a seed tree");
    seed_cmd->add_option("--family", a.family, "S, Sp or Spp")->required();
    seed_cmd->add_option("--diameter", a.diameter)->required()->check(CLI::NonNegativeNumber);
    seed_cmd->add_option("--out", a.out);

    auto* unfold_cmd = app.add_subcommand("unfold", "Duplicate a branch (CBD)");
    unfold_cmd->add_option("--tree", a.tree)->required();
    unfold_cmd->add_option("--vertex", a.vertex)->required();
    unfold_cmd->add_option("--branch", a.branch, "neighbour of --vertex rooting the branch")->required();
    unfold_cmd->add_option("--copies", a.copies)->check(CLI::PositiveNumber);
    unfold_cmd->add_option("--out", a.out);

    auto* recognize_cmd = app.add_subcommand("recognize", "Classify a tree");
    recognize_cmd->add_option("--tree", a.tree)->required();

    auto* construct_cmd = app.add_subcommand("construct", "Build a matrix with diameter + 1 distinct eigenvalues");
    construct_cmd->add_option("--tree", a.tree)->required();
    construct_cmd->add_option("--alpha", a.alpha)->required();
    construct_cmd->add_option("--beta", a.beta);
    construct_cmd->add_flag("--integral", a.integral);
    construct_cmd->add_option("--beta-override", a.beta_override);
    construct_cmd->add_option("--out", a.out);

    auto* locate_cmd = app.add_subcommand("locate", "Eigenvalue counts below / at / above a point");
    locate_cmd->add_option("--matrix", a.matrix)->required();
    locate_cmd->add_option("--point", a.point)->required();

    auto* isolate_cmd = app.add_subcommand("isolate", "Isolating intervals by bisection");
    isolate_cmd->add_option("--matrix", a.matrix)->required();
    isolate_cmd->add_option("--width", a.width);

    auto* verify_cmd = app.add_subcommand("verify", "Re-check a matrix and its certificate");
    verify_cmd->add_option("--matrix", a.matrix)->required();
    verify_cmd->add_flag("--cross-check", a.cross_check);

    auto* export_cmd = app.add_subcommand("export", "Convert a matrix or tree to dot or json");
    export_cmd->add_option("--matrix", a.matrix);
    export_cmd->add_option("--tree", a.tree);
    export_cmd->add_option("--format", a.format);
    export_cmd->add_option("--out", a.out);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (seed_cmd->parsed()) return cmd_seed(a, out);
        if (unfold_cmd->parsed()) return cmd_unfold(a, out);
        if (recognize_cmd->parsed()) return cmd_recognize(a, out);
        if (construct_cmd->parsed()) return cmd_construct(a, out);
        if (locate_cmd->parsed()) return cmd_locate(a, out);
        if (isolate_cmd->parsed()) return cmd_isolate(a, out);
        if (verify_cmd->parsed()) return cmd_verify(a, out);
        if (export_cmd->parsed()) return cmd_export(a, out);
    } catch (const VerificationError& e) {
        err << "verification failed: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace diminimal
