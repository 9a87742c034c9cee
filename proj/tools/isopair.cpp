// isopair: generate, analyze, classify and compare isometric pairs.
//
// Exit codes: 0 pass, 1 mathematical check failed, 2 input error,
// 3 not equivalent.

#include "isopair/classify.hpp"
#include "isopair/error.hpp"
#include "isopair/io.hpp"
#include "isopair/izuchi.hpp"
#include "isopair/spectral.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

using namespace isopair;
using io::json;

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;
constexpr int kNotEquivalent = 3;

// "1", "-0.5", "i", "-i", "0.5+2i", "1e-3-4.5e-1i", or "re,im".
cx parse_complex(std::string s) {
    std::erase(s, ' ');
    auto number = [&](const std::string& t) -> double {
        if (t.empty() || t == "+") {
            return 1.0;
        }
        if (t == "-") {
            return -1.0;
        }
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != t.size()) {
            throw InputError("cannot parse complex number '" + s + "'");
        }
        return v;
    };
    if (s.empty()) {
        throw InputError("empty complex number");
    }
    if (const auto comma = s.find(','); comma != std::string::npos) {
        return {number(s.substr(0, comma)), number(s.substr(comma + 1))};
    }
    if (s.back() != 'i') {
        return {number(s), 0.0};
    }
    const std::string body = s.substr(0, s.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) {
        return {0.0, number(body)};
    }
    return {number(body.substr(0, split)), number(body.substr(split))};
}

std::string fmt(cx z) {
    std::ostringstream o;
    o.precision(10);
    o << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return o.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        io::write_text(out_path, text);
    }
}

struct Tolerances {
    std::optional<double> rank_tol;
    double cluster_tol = linalg::kDefaultClusterTol;
    double band_tol = 1e-6;
    double tol = 1e-8;
    double match_tol = 1e-6;

    classify::Tolerances classify_tol() const { return {tol, cluster_tol, band_tol, match_tol}; }
};

void add_tolerances(CLI::App* app, Tolerances& t) {
    app->add_option("--rank-tol", t.rank_tol, "Relative singular-value cut-off for ranks")
        ->envname("ISOPAIR_RANK_TOL")
        ->check(CLI::PositiveNumber);
    app->add_option("--cluster-tol", t.cluster_tol, "Eigenvalue clustering tolerance")
        ->envname("ISOPAIR_CLUSTER_TOL")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--band-tol", t.band_tol, "|alpha| band tolerance for block kinds")
        ->envname("ISOPAIR_BAND_TOL")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--tol", t.tol, "Normality / containment / commutation tolerance")
        ->envname("ISOPAIR_TOL")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--match-tol", t.match_tol, "Multiset matching tolerance for equiv")
        ->envname("ISOPAIR_MATCH_TOL")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

// --- gen -----------------------------------------------------------------

struct GenConfig {
    std::string kind;
    std::size_t n = 4;
    std::size_t rankP = 2;
    std::uint64_t seed = 0;
    std::size_t N = 8;
    std::optional<std::size_t> J;
    std::optional<std::size_t> K;
    double r = 0.5;
    std::string gamma = "1";
    std::string alpha = "1";
    std::vector<std::string> inputs;
    std::string out;
};

int run_gen(const GenConfig& c) {
    json doc;
    if (c.kind == "random-triple") {
        if (c.n == 0 || c.rankP > c.n) {
            throw InputError("random-triple: need n >= 1 and rankP <= n");
        }
        doc = io::to_json(bcl::random_triple(c.n, c.rankP, c.seed));
    } else if (c.kind == "bishift") {
        doc = io::to_json(models::bishift_truncated(c.N));
    } else if (c.kind == "twisted") {
        doc = io::to_json(models::twisted_shift(parse_complex(c.alpha), c.N));
    } else if (c.kind == "izuchi") {
        const std::size_t K = c.K.value_or(izuchi::minimal_K(c.r));
        doc = io::to_json(izuchi::build_izuchi_model(c.r, parse_complex(c.gamma), c.N, c.J.value_or(c.N), K).pair);
    } else if (c.kind == "direct-sum" || c.kind == "scramble") {
        if (c.inputs.empty()) {
            throw InputError(c.kind + ": needs --input");
        }
        std::vector<classify::PairInput> parts;
        for (const auto& path : c.inputs) {
            parts.push_back(io::input_from_json(io::read_json(path)));
        }
        const bool triples = std::holds_alternative<bcl::BCLTriple>(parts.front());
        for (const auto& p : parts) {
            if (std::holds_alternative<bcl::BCLTriple>(p) != triples) {
                throw InputError("direct-sum: cannot mix triples and structured pairs");
            }
        }
        if (c.kind == "scramble") {
            if (parts.size() != 1 || triples) {
                throw InputError("scramble: needs exactly one structured-pair input");
            }
            doc = io::to_json(models::scramble(std::get<models::StructuredPair>(parts.front()), c.seed));
        } else if (triples) {
            std::vector<bcl::BCLTriple> ts;
            for (auto& p : parts) {
                ts.push_back(std::get<bcl::BCLTriple>(std::move(p)));
            }
            doc = io::to_json(bcl::direct_sum(ts));
        } else {
            std::vector<models::StructuredPair> ps;
            for (auto& p : parts) {
                ps.push_back(std::get<models::StructuredPair>(std::move(p)));
            }
            doc = io::to_json(models::direct_sum(ps));
        }
    } else {
        throw InputError("gen: unknown kind '" + c.kind + "'");
    }
    emit(io::dump(doc), c.out);
    return kPass;
}

// --- analyze -------------------------------------------------------------

struct AnalyzeConfig {
    std::string input;
    std::size_t trials = 0;
    std::size_t max_n = 16;
    std::uint64_t seed = 1;
    std::string format = "text";
    std::string out;
};

struct Operators {
    ComplexMatrix defect;
    ComplexMatrix cross;
    std::string description;
};

Operators operators_of(const classify::PairInput& in) {
    if (const auto* t = std::get_if<bcl::BCLTriple>(&in)) {
        bcl::require_valid(*t);
        auto w = bcl::wandering_projections(*t);
        return {std::move(w.defect), std::move(w.cross), "bcl-triple, n = " + std::to_string(t->n)};
    }
    const auto& p = std::get<models::StructuredPair>(in);
    return {models::interior_defect(p), models::interior_cross(p),
            "structured-pair (" + std::string(models::to_string(p.provenance)) + "), dim " + std::to_string(p.dim) +
                ", interior " + std::to_string(p.interior.size())};
}

const char* cluster_label(double v, double ct) {
    if (v >= 1.0 - ct) {
        return "E1";
    }
    if (v <= -1.0 + ct) {
        return "E-1";
    }
    if (std::abs(v) <= ct) {
        return "kernel";
    }
    return v > 0.0 ? "interior+" : "interior-";
}

json analysis_json(const Operators& ops, const Tolerances& t, bool& pass) {
    const auto profile = spectral::spectral_profile(ops.defect, t.cluster_tol);
    const auto rf = spectral::rank_formula(ops.defect, ops.cross, t.rank_tol, t.cluster_tol);
    json spectrum = json::array();
    for (double v : profile.eigenvalues) {
        if (std::abs(v) > t.cluster_tol) {
            spectrum.push_back({{"value", v}, {"cluster", cluster_label(v, t.cluster_tol)}});
        }
    }
    pass = rf.both_identities_hold && rf.symmetric;
    return {{"input", ops.description},
            {"defect_nonzero_spectrum", std::move(spectrum)},
            {"kernel_dim", profile.kernel_dim},
            {"rank_defect", rf.rankC},
            {"rank_cross", rf.rankX},
            {"dim_E1", rf.dimE1},
            {"dim_E-1", rf.dimEminus1},
            {"dim_K+", rf.dimKplus},
            {"normality_residual", linalg::normality_residual(ops.cross)},
            {"identity_index", rf.index_identity},
            {"identity_rank", rf.rank_identity},
            {"eigenvalue_symmetry", rf.symmetric},
            {"unpaired", profile.unpaired},
            {"pass", pass}};
}

std::string analysis_text(const json& a) {
    std::ostringstream o;
    o.precision(10);
    o << "input: " << a["input"].get<std::string>() << "\n";
    o << "defect nonzero spectrum:";
    for (const auto& e : a["defect_nonzero_spectrum"]) {
        o << " " << e["value"].get<double>() << " (" << e["cluster"].get<std::string>() << ")";
    }
    o << "\nkernel dim " << a["kernel_dim"] << "\n";
    o << "rank C = " << a["rank_defect"] << ", rank X = " << a["rank_cross"] << ", dim E1 = " << a["dim_E1"]
      << ", dim E-1 = " << a["dim_E-1"] << ", dim K+ = " << a["dim_K+"] << "\n";
    o << "normality residual ||XX* - X*X||_F = " << a["normality_residual"].get<double>() << "\n";
    auto pf = [](const json& b) { return b.get<bool>() ? "pass" : "FAIL"; };
    o << "rankC = rankX + dimE1 + dimK+           : " << pf(a["identity_index"]) << "\n";
    o << "rankC = 2 rankX + dimE1 - dimE-1        : " << pf(a["identity_rank"]) << "\n";
    o << "interior eigenvalues symmetric about 0  : " << pf(a["eigenvalue_symmetry"]) << "\n";
    return o.str();
}

int run_analyze(const AnalyzeConfig& c, const Tolerances& t) {
    if (c.format != "text" && c.format != "json" && c.format != "csv") {
        throw InputError("analyze: --format must be text, json or csv");
    }
    if (c.trials > 0) {
        if (c.max_n < 2) {
            throw InputError("analyze: --max-n must be at least 2");
        }
        json rows = json::array();
        std::ostringstream text;
        bool all = true;
        for (std::size_t i = 0; i < c.trials; ++i) {
            const std::uint64_t seed = c.seed + i;
            const std::size_t n = 2 + static_cast<std::size_t>(seed % (c.max_n - 1));
            const std::size_t k = static_cast<std::size_t>((seed * 7) % (n + 1));
            const auto tr = bcl::random_triple(n, k, seed);
            bool pass = false;
            json a = analysis_json(operators_of(tr), t, pass);
            all = all && pass;
            text << "trial " << i << " seed " << seed << " n " << n << " rankP " << k << " rankC " << a["rank_defect"]
                 << " rankX " << a["rank_cross"] << " : " << (pass ? "pass" : "FAIL") << "\n";
            a["trial"] = i;
            a["seed"] = seed;
            rows.push_back(std::move(a));
        }
        text << (all ? "all trials pass\n" : "some trials FAILED\n");
        emit(c.format == "json" ? io::dump({{"trials", std::move(rows)}, {"pass", all}}) : text.str(), c.out);
        return all ? kPass : kCheckFailed;
    }
    if (c.input.empty()) {
        throw InputError("analyze: needs an input file or --trials");
    }
    const auto ops = operators_of(io::input_from_json(io::read_json(c.input)));
    bool pass = false;
    const json a = analysis_json(ops, t, pass);
    if (c.format == "csv") {
        emit(io::spectrum_csv(spectral::spectral_profile(ops.defect, t.cluster_tol), t.cluster_tol), c.out);
    } else {
        emit(c.format == "json" ? io::dump(a) : analysis_text(a), c.out);
    }
    return pass ? kPass : kCheckFailed;
}

// --- classify / equiv ----------------------------------------------------

std::string classification_text(const classify::ClassificationResult& r) {
    std::ostringstream o;
    o.precision(10);
    o << "k = " << r.k << "\n";
    o << "fundamental sequence:";
    for (const auto& b : r.blocks) {
        o << " " << fmt(b.alpha) << ";";
    }
    o << "\nblocks:\n";
    for (const auto& b : r.blocks) {
        o << "  " << classify::to_string(b.kind) << " alpha = " << fmt(b.alpha);
        if (b.kind == classify::BlockKind::ThreeFinite) {
            o << " (lambda = " << b.lambda << ", gamma = " << fmt(b.gamma) << ")";
        }
        o << "\n";
    }
    o << "shift-unitary part: " << r.shift_unitary.eigs_on_P.size() << " eigenvalue(s) on ran P, "
      << r.shift_unitary.eigs_on_Pperp.size() << " on ran P-perp\n";
    for (const cx& z : r.shift_unitary.eigs_on_P) {
        o << "  P      : " << fmt(z) << "\n";
    }
    for (const cx& z : r.shift_unitary.eigs_on_Pperp) {
        o << "  P-perp : " << fmt(z) << "\n";
    }
    return o.str();
}

struct ClassifyConfig {
    std::string input;
    std::string format = "text";
    std::string out;
};

int run_classify(const ClassifyConfig& c, const Tolerances& t) {
    if (c.format != "text" && c.format != "json") {
        throw InputError("classify: --format must be text or json");
    }
    const auto in = io::input_from_json(io::read_json(c.input));
    const auto nr = classify::check_compact_normal(in, t.tol);
    if (!nr.ok) {
        std::cerr << "isopair: input is not a compact normal pair: " << nr.message << "\n";
        return kCheckFailed;
    }
    const auto r = classify::classify(in, t.classify_tol());
    if (c.format == "json") {
        emit(io::dump(io::to_json(r)), c.out);
    } else {
        if (!c.out.empty()) {
            io::write_text(c.out, io::dump(io::to_json(r)));
        }
        std::cout << classification_text(r);
    }
    return kPass;
}

struct EquivConfig {
    std::string a;
    std::string b;
};

int run_equiv(const EquivConfig& c, const Tolerances& t) {
    const auto a = io::input_from_json(io::read_json(c.a));
    const auto b = io::input_from_json(io::read_json(c.b));
    for (const auto* in : {&a, &b}) {
        const auto nr = classify::check_compact_normal(*in, t.tol);
        if (!nr.ok) {
            std::cerr << "isopair: input is not a compact normal pair: " << nr.message << "\n";
            return kCheckFailed;
        }
    }
    const auto v = classify::decide_equivalence(a, b, t.classify_tol());
    std::cout << (v.equivalent ? "equivalent" : "not-equivalent") << "\n";
    for (const auto& line : v.report) {
        std::cout << "  " << line << "\n";
    }
    if (v.matching) {
        std::cout << "  matching:";
        for (std::size_t i = 0; i < v.matching->size(); ++i) {
            std::cout << " " << i << "->" << (*v.matching)[i];
        }
        std::cout << "\n";
    }
    return v.equivalent ? kPass : kNotEquivalent;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compact normal isometric pairs: generate, analyze, classify, compare"};
    app.require_subcommand(1);
    Tolerances tol;

    GenConfig gen;
    auto* g = app.add_subcommand("gen", "Generate a triple or structured pair as JSON");
    g->add_option("kind", gen.kind, "random-triple | bishift | twisted | izuchi | direct-sum | scramble")
        ->required()
        ->check(CLI::IsMember({"random-triple", "bishift", "twisted", "izuchi", "direct-sum", "scramble"}));
    g->add_option("--n", gen.n, "Wandering dimension (random-triple)");
    g->add_option("--rankP", gen.rankP, "Rank of P (random-triple)");
    g->add_option("--seed", gen.seed, "RNG seed (random-triple, scramble)");
    g->add_option("--N", gen.N, "Degree cap (bishift, twisted, izuchi)");
    g->add_option("--J", gen.J, "Number of g-vectors (izuchi, default N)");
    g->add_option("--K", gen.K, "Geometric-series length (izuchi, default the minimum for r)");
    g->add_option("--r", gen.r, "Izuchi parameter, 0 < |r| < 1");
    g->add_option("--gamma", gen.gamma, "Unimodular twist, e.g. 1, i, 0.6+0.8i");
    g->add_option("--alpha", gen.alpha, "Unimodular twist of the twisted shift");
    g->add_option("--input", gen.inputs, "Input JSON files (direct-sum, scramble)");
    g->add_option("-o,--output", gen.out, "Output file (default stdout)");

    AnalyzeConfig an;
    auto* a = app.add_subcommand("analyze", "Defect spectrum, ranks and rank-formula identities");
    a->add_option("input", an.input, "Input JSON file");
    a->add_option("--trials", an.trials, "Run T random triples instead of reading a file");
    a->add_option("--max-n", an.max_n, "Largest n for --trials")->capture_default_str();
    a->add_option("--seed", an.seed, "First seed for --trials")->capture_default_str();
    a->add_option("--format", an.format, "text | json | csv")->capture_default_str();
    a->add_option("-o,--output", an.out, "Output file (default stdout)");
    add_tolerances(a, tol);

    ClassifyConfig cl;
    auto* c = app.add_subcommand("classify", "Fundamental sequence, blocks and shift-unitary invariant");
    c->add_option("input", cl.input, "Input JSON file")->required();
    c->add_option("--format", cl.format, "text | json")->capture_default_str();
    c->add_option("-o,--output", cl.out, "Also write the JSON result here");
    add_tolerances(c, tol);

    EquivConfig eq;
    auto* e = app.add_subcommand("equiv", "Decide joint unitary equivalence of two inputs");
    e->add_option("a", eq.a, "First input")->required();
    e->add_option("b", eq.b, "Second input")->required();
    add_tolerances(e, tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& s) {
        return app.exit(s);
    } catch (const CLI::ParseError& err) {
        std::cerr << "isopair: " << err.what() << "\n";
        return kInputError;
    }

    try {
        if (*g) {
            return run_gen(gen);
        }
        if (*a) {
            return run_analyze(an, tol);
        }
        if (*c) {
            return run_classify(cl, tol);
        }
        return run_equiv(eq, tol);
    } catch (const InputError& err) {
        std::cerr << "isopair: " << err.what() << "\n";
        return kInputError;
    } catch (const CheckFailure& err) {
        std::cerr << "isopair: check failed: " << err.what() << "\n";
        return kCheckFailed;
    } catch (const json::exception& err) {
        std::cerr << "isopair: malformed input: " << err.what() << "\n";
        return kInputError;
    }
}
