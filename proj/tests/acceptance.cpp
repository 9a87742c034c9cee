// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Usage: isopair_acceptance [path-to-isopair-cli]

#include "isopair/bcl.hpp"
#include "isopair/classify.hpp"
#include "isopair/io.hpp"
#include "isopair/izuchi.hpp"
#include "isopair/linalg.hpp"
#include "isopair/models.hpp"
#include "isopair/spectral.hpp"
#include "isopair/toeplitz.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#ifndef ISOPAIR_CLI_PATH
#define ISOPAIR_CLI_PATH "isopair"
#endif

using namespace isopair;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct TripleSpec {
    std::uint64_t seed;
    std::size_t n;
    std::size_t rankP;
};

// Same corpus as `isopair analyze --trials 500 --seed 1`.
std::vector<TripleSpec> rank_corpus() {
    std::vector<TripleSpec> out;
    for (std::uint64_t i = 0; i < 500; ++i) {
        const std::uint64_t seed = 1 + i;
        const std::size_t n = 2 + static_cast<std::size_t>(seed % 15);
        out.push_back({seed, n, static_cast<std::size_t>((seed * 7) % (n + 1))});
    }
    return out;
}

Outcome criterion1() {
    const auto t0 = Clock::now();
    std::size_t failures = 0;
    for (const auto& s : rank_corpus()) {
        failures += spectral::check_rank_formula(bcl::random_triple(s.n, s.rankP, s.seed)).both_identities_hold ? 0 : 1;
    }
    const double dt = seconds_since(t0);
    std::ostringstream d;
    d << "500 triples, n in 2..16: " << failures << " identity failures, " << dt << " s (limit 10 s)";
    return {failures == 0 && dt <= 10.0, d.str()};
}

Outcome criterion2() {
    std::size_t violations = 0;
    std::size_t clusters = 0;
    for (const auto& s : rank_corpus()) {
        const auto w = bcl::wandering_projections(bcl::random_triple(s.n, s.rankP, s.seed));
        const auto p = spectral::spectral_profile(w.defect);
        violations += p.unpaired.size();
        clusters += p.interior_pairs.size();
        for (const auto& ip : p.interior_pairs) {
            violations += ip.mult_pos == ip.mult_neg ? 0 : 1;
        }
    }
    std::ostringstream d;
    d << clusters << " interior clusters, " << violations << " symmetry violations";
    return {violations == 0, d.str()};
}

Outcome criterion3() {
    double worst_c = 0.0;
    double worst_x = 0.0;
    double worst_leak = 0.0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const std::size_t n = 1 + static_cast<std::size_t>(seed % 12);
        const auto t = bcl::random_triple(n, static_cast<std::size_t>((seed * 3) % (n + 1)), 10'000 + seed);
        const auto w = bcl::wandering_projections(t);
        const auto o = toeplitz::oracle_cross_and_defect(toeplitz::build_truncated_pair(t, toeplitz::kDefaultDegreeCap));
        worst_c = std::max(worst_c, distance(o.C_deg0, w.defect));
        worst_x = std::max(worst_x, distance(o.X_deg0, w.cross));
        worst_leak = std::max({worst_leak, o.C_leak, o.X_leak});
    }
    std::ostringstream d;
    d << "200 triples: max |C - C_deg0| " << worst_c << ", max |X - X_deg0| " << worst_x << ", max leak "
      << worst_leak;
    return {worst_c <= 1e-12 && worst_x <= 1e-12 && worst_leak <= 1e-12, d.str()};
}

Outcome criterion4() {
    std::mt19937_64 rng(2024);
    double worst_proj = 0.0;
    double worst_diff = 0.0;
    std::size_t rank_failures = 0;
    std::size_t max_k = 0;
    for (int i = 0; i < 100; ++i) {
        const auto f = spectral::random_canonical_form(8, rng);
        const auto d = spectral::build_difference_projections(f);
        worst_proj = std::max({worst_proj, linalg::projection_residual(d.P), linalg::projection_residual(d.Q)});
        worst_diff = std::max(worst_diff, distance(d.A, d.P - d.Q));
        const std::size_t k = f.D.rows();
        max_k = std::max(max_k, k);
        std::vector<std::size_t> g(d.generic_dim);
        for (std::size_t j = 0; j < g.size(); ++j) {
            g[j] = d.generic_offset + j;
        }
        if (linalg::numerical_rank(d.P.submatrix(g, g)) != k || linalg::numerical_rank(d.Q.submatrix(g, g)) != k) {
            ++rank_failures;
        }
    }
    std::ostringstream d;
    d << "100 forms (dim K <= " << max_k << "): projection residual " << worst_proj << ", |A - (P - Q)| "
      << worst_diff << ", " << rank_failures << " generic-rank failures";
    return {worst_proj <= 1e-10 && worst_diff <= 1e-10 && rank_failures == 0, d.str()};
}

Outcome criterion5() {
    bool ok = true;
    std::ostringstream d;
    const auto t0 = Clock::now();
    for (const cx gamma : {cx{1.0}, cx{0.0, 1.0}}) {
        const auto m = izuchi::build_izuchi_model(0.5, gamma, 50, 50, 50);
        const auto rep = izuchi::verify_izuchi_invariants(m, 1e-8);
        ok = ok && rep.ok;
        d << "gamma " << gamma.real() << "+" << gamma.imag() << "i: rankX " << rep.rankX << ", eig err "
          << rep.cross_eigenvalue_error << ", spectrum err " << rep.defect_spectrum_error << ", E1 " << rep.dimE1
          << ", E-1 " << rep.dimEminus1 << (rep.ok ? "" : " [" + rep.failures.front() + "]") << "; ";
    }
    const double dt = seconds_since(t0);
    d << dt << " s (limit 30 s); ";
    ok = ok && dt <= 30.0;
    double worst = 0.0;
    for (int t = 1; t <= 9; ++t) {
        const double r = 0.1 * t;
        const std::size_t K = izuchi::minimal_K(r);
        const auto b = izuchi::canonical_basis_3finite(izuchi::build_izuchi_model(r, 1.0, 10, 10, K));
        const double err = std::abs(std::abs(b.beta) - b.lambda);
        const double bound = std::max(1e-8, std::pow(r, K / 2.0));
        worst = std::max(worst, err / bound);
        ok = ok && err <= bound;
    }
    d << "r sweep: worst |beta| - lambda at " << worst << " of its bound";
    return {ok, d.str()};
}

std::vector<classify::BlockKind> sorted_kinds(const classify::ClassificationResult& r) {
    std::vector<classify::BlockKind> k;
    for (const auto& b : r.blocks) {
        k.push_back(b.kind);
    }
    std::ranges::sort(k);
    return k;
}

Outcome criterion6() {
    using classify::BlockKind;
    const std::vector<BlockKind> want_kinds{BlockKind::OneFinite, BlockKind::TwoFinite, BlockKind::TwoFinite,
                                            BlockKind::ThreeFinite};
    std::vector<models::StructuredPair> parts{models::bishift_truncated(6)};
    CVector want{0.0};
    for (const double theta : {0.0, std::numbers::pi / 3}) {
        parts.push_back(models::twisted_shift(std::polar(1.0, theta), 6));
        want.push_back(std::polar(1.0, -theta));
    }
    parts.push_back(izuchi::build_izuchi_model(0.5, cx{0, 1}, 10, 10, 47).pair);
    want.push_back(cx{0, 0.5});
    const auto sum = models::direct_sum(parts);

    const auto t0 = Clock::now();
    std::size_t failures = 0;
    for (std::uint64_t seed = 0; seed <= 50; ++seed) {
        const auto r = classify::classify(classify::PairInput{models::scramble(sum, seed)});
        if (!classify::match_multisets(r.fundamental_sequence(), want, 1e-6) || sorted_kinds(r) != want_kinds) {
            ++failures;
        }
    }
    std::ostringstream d;
    d << "plain sum + 50 scrambles: " << failures << " mismatches, " << seconds_since(t0) << " s";
    return {failures == 0, d.str()};
}

int run_cli(const std::string& cli, const std::string& args) {
    const std::string cmd = "\"" + cli + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome criterion7(const std::string& cli) {
    std::ostringstream d;
    std::size_t wrong = 0;
    std::size_t decisions = 0;

    const std::vector<cx> gammas{1.0, cx{0, 1}, -1.0, std::polar(1.0, std::numbers::pi / 4), std::polar(1.0, 2.0)};
    std::vector<std::pair<std::size_t, classify::ClassificationResult>> iz;
    for (std::size_t g = 0; g < gammas.size(); ++g) {
        for (const std::size_t N : {8, 11}) {
            iz.emplace_back(g, classify::classify(
                                   classify::PairInput{izuchi::build_izuchi_model(0.5, gammas[g], N, N, 47).pair}));
        }
    }
    for (const auto& [ga, ra] : iz) {
        for (const auto& [gb, rb] : iz) {
            ++decisions;
            wrong += classify::decide_equivalence(ra, rb).equivalent == (ga == gb) ? 0 : 1;
        }
    }

    const std::vector<cx> alphas{1.0, cx{0, 1}, std::polar(1.0, 0.3), std::polar(1.0, 0.3 + 1e-3)};
    std::vector<std::pair<std::size_t, classify::ClassificationResult>> tw;
    for (std::size_t a = 0; a < alphas.size(); ++a) {
        for (const std::size_t N : {5, 9}) {
            tw.emplace_back(a, classify::classify(classify::PairInput{models::twisted_shift(alphas[a], N)}));
        }
    }
    for (const auto& [aa, ra] : tw) {
        for (const auto& [ab, rb] : tw) {
            ++decisions;
            wrong += classify::decide_equivalence(ra, rb).equivalent == (aa == ab) ? 0 : 1;
        }
    }
    d << decisions << " decisions, " << wrong << " wrong; ";

    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("isopair_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto file = [&](const char* name) { return "\"" + (dir / name).string() + "\""; };
    io::write_text(dir / "iz_1.json", io::dump(io::to_json(izuchi::build_izuchi_model(0.5, 1.0, 8, 8, 47).pair)));
    io::write_text(dir / "iz_1b.json", io::dump(io::to_json(izuchi::build_izuchi_model(0.5, 1.0, 11, 11, 47).pair)));
    io::write_text(dir / "iz_i.json", io::dump(io::to_json(izuchi::build_izuchi_model(0.5, cx{0, 1}, 8, 8, 47).pair)));
    io::write_text(dir / "rt.json", io::dump(io::to_json(bcl::random_triple(6, 3, 5))));
    io::write_text(dir / "bad.json", "{\"type\": \"bcl-triple\"");

    struct Expect {
        std::string args;
        int code;
    };
    const std::vector<Expect> expects{
        {"equiv " + file("iz_1.json") + " " + file("iz_1b.json"), 0},
        {"equiv " + file("iz_1.json") + " " + file("iz_i.json"), 3},
        {"classify " + file("rt.json"), 1},
        {"classify " + file("bad.json"), 2},
        {"classify " + file("missing.json"), 2},
        {"gen bishift --N -1", 2},
    };
    std::size_t code_failures = 0;
    for (const auto& e : expects) {
        const int got = run_cli(cli, e.args);
        if (got != e.code) {
            ++code_failures;
            d << "[" << e.args.substr(0, e.args.find(' ')) << " exited " << got << ", expected " << e.code << "] ";
        }
    }
    fs::remove_all(dir);
    d << expects.size() << " CLI exit codes, " << code_failures << " wrong";
    return {wrong == 0 && code_failures == 0, d.str()};
}

Outcome criterion8() {
    std::size_t kept = 0;
    std::size_t failures = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const std::size_t n = 2 + static_cast<std::size_t>(seed % 11);
        // Half the corpus sits at rank P = floor(n/2), the only place a full-rank defect can occur.
        const std::size_t rankP = seed % 2 == 0 ? n / 2 : static_cast<std::size_t>((seed * 5) % (n + 1));
        const auto t = bcl::random_triple(n, rankP, 40'000 + seed);
        if (linalg::numerical_rank(bcl::wandering_projections(t).defect) != n) {
            continue;
        }
        ++kept;
        const std::size_t rp = linalg::numerical_rank(t.P);
        failures += (rp == n - rp && n % 2 == 0) ? 0 : 1;
    }
    std::ostringstream d;
    d << "50 triples, " << kept << " with full-rank defect, " << failures << " with rank P != n - rank P";
    return {kept > 0 && failures == 0, d.str()};
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : ISOPAIR_CLI_PATH;
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"rank formula", criterion1},
        {"eigenvalue symmetry", criterion2},
        {"oracle equivalence", criterion3},
        {"difference-of-projections canonical form", criterion4},
        {"Izuchi model invariants", criterion5},
        {"classification round-trip", criterion6},
        {"equivalence decisions", [&] { return criterion7(cli); }},
        {"even dimension", criterion8},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
                  << o.detail << std::endl;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
