#include "qrs/cli.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "qrs/qexterior.hpp"
#include "qrs/qlinalg.hpp"
#include "qrs/suite.hpp"

namespace qrs {

namespace {

nlohmann::ordered_json ncpoly_to_json(const NCPoly& p) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& [w, c] : p.terms()) {
        nlohmann::ordered_json t;
        t["coeff"] = c.to_string();
        nlohmann::ordered_json word = nlohmann::ordered_json::array();
        for (const auto& triple : word_triples(w))
            word.push_back({triple[0], triple[1], triple[2]});
        t["word"] = word;
        terms.push_back(std::move(t));
    }
    return terms;
}

nlohmann::ordered_json report_json(const Report& r) {
    return nlohmann::ordered_json{{"identity", r.identity},
                                  {"size", r.size},
                                  {"regime", r.regime},
                                  {"holds", r.holds},
                                  {"residual_terms", r.residual_terms},
                                  {"elapsed_ms", r.elapsed_ms}};
}

struct ComputeArgs {
    std::string what = "rdet";
    int size = 2;
    std::string regime = "generic";
    std::string num_r = "1", num_s = "1";
    std::string format = "text";
    bool allow_large = false;
};

int cmd_compute(const ComputeArgs& a, std::ostream& out) {
    Regime regime = regime_from_name(a.regime);
    const bool even_only = a.what == "pf" || a.what == "pf_prime" || a.what == "hf" ||
                           a.what == "b" || a.what == "bprime";
    const int cap = a.allow_large ? (even_only ? 14 : 15) : (even_only ? 6 : 4);
    if (a.size < 1 || a.size > cap || (even_only && a.size % 2 != 0))
        throw std::invalid_argument("compute: unsupported size " + std::to_string(a.size) +
                                    " for '" + a.what + "'" +
                                    (a.size <= 15 && !a.allow_large ? " (see --allow-large)" : ""));
    VerifyOptions opt;
    opt.numeric_r = a.num_r;
    opt.numeric_s = a.num_s;
    Algebra alg = make_algebra(a.size, regime, opt);

    if (a.what == "b" || a.what == "bprime") {
        GenMatrix M = a.what == "b" ? build_B(alg) : build_Bprime(alg);
        if (a.format == "json") {
            nlohmann::ordered_json j;
            j["what"] = a.what;
            j["size"] = a.size;
            j["regime"] = a.regime;
            nlohmann::ordered_json entries = nlohmann::ordered_json::array();
            for (int i = 1; i <= M.rows(); ++i) {
                nlohmann::ordered_json rowj = nlohmann::ordered_json::array();
                for (int jj = 1; jj <= M.cols(); ++jj)
                    rowj.push_back(M.at(i, jj).to_string());
                entries.push_back(std::move(rowj));
            }
            j["entries"] = entries;
            out << j.dump() << "\n";
        } else {
            const char* base = a.what == "b" ? "b" : "b'";
            for (int i = 1; i <= M.rows(); ++i)
                for (int jj = 1; jj <= M.cols(); ++jj)
                    out << base << "[" << i << "," << jj << "] = "
                        << M.at(i, jj).to_string() << "\n";
        }
        return 0;
    }

    NCPoly value;
    if (a.what == "rdet") value = rdet(alg, generator_matrix(alg));
    else if (a.what == "cdet") value = cdet(alg, generator_matrix(alg));
    else if (a.what == "per") value = per_q(alg, generator_matrix(alg));
    else if (a.what == "pf") value = pf_full(alg, build_B(alg), alg.r());
    else if (a.what == "pf_prime") value = pf_full(alg, build_Bprime(alg), alg.s().reciprocal());
    else if (a.what == "hf") value = hf_full(alg, build_Bprime(alg), alg.r());
    else throw std::invalid_argument("compute: unknown invariant '" + a.what + "'");

    if (a.format == "json") {
        nlohmann::ordered_json j;
        j["what"] = a.what;
        j["size"] = a.size;
        j["regime"] = a.regime;
        j["value"] = value.to_string();
        j["terms"] = ncpoly_to_json(value);
        out << j.dump() << "\n";
    } else {
        out << value.to_string() << "\n";
    }
    return 0;
}

struct VerifyArgs {
    std::string identity;
    int size = 2;
    std::string regime = "generic";
    std::string num_r = "1", num_s = "1";
    std::string format = "text";
    bool allow_large = false;
    bool no_timing = false;
    bool corrupt = false;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    VerifyOptions opt;
    opt.numeric_r = a.num_r;
    opt.numeric_s = a.num_s;
    opt.allow_large = a.allow_large;
    opt.corrupt_engine = a.corrupt;
    Report rep = verify_identity(a.identity, a.size, regime_from_name(a.regime), opt);
    if (a.no_timing) rep.elapsed_ms = 0;
    if (a.format == "json") out << report_to_json(rep) << "\n";
    else out << report_to_text(rep) << "\n";
    return rep.holds ? 0 : 1;
}

struct SuiteArgs {
    double budget = 3600.0;
    std::vector<std::string> skip;
    std::uint64_t seed = 20240001;
    std::string format = "text";
    std::string only;
    unsigned jobs = 1;
    bool no_timing = false;
    bool corrupt = false;
};

const char* status_name(RowStatus st) {
    switch (st) {
        case RowStatus::pass: return "PASS";
        case RowStatus::fail: return "FAIL";
        default: return "SKIP";
    }
}

int cmd_suite(const SuiteArgs& a, std::ostream& out) {
    SuiteConfig cfg;
    cfg.budget_seconds = a.budget;
    cfg.seed = a.seed;
    cfg.no_timing = a.no_timing;
    cfg.corrupt_engine = a.corrupt;
    cfg.only = a.only;
    cfg.jobs = a.jobs;
    for (const auto& s : a.skip) {
        if (s == "2n6") cfg.skip_2n6 = true;
        else throw std::invalid_argument("suite: unknown --skip value '" + s + "'");
    }

    SuiteResult result = run_suite(cfg);

    int passed = 0, failed = 0, skipped = 0;
    for (const auto& rr : result.rows) {
        if (rr.status == RowStatus::pass) ++passed;
        else if (rr.status == RowStatus::fail) ++failed;
        else ++skipped;
    }

    if (a.format == "json") {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& rr : result.rows) {
            nlohmann::ordered_json j;
            j["criterion"] = rr.row.criterion;
            j["check"] = rr.row.check;
            j["size"] = rr.row.size;
            j["regime"] = regime_name(rr.row.regime);
            j["expected_holds"] = rr.row.expected_holds;
            j["status"] = status_name(rr.status);
            if (rr.status != RowStatus::skipped) j["report"] = report_json(rr.report);
            rows.push_back(std::move(j));
        }
        nlohmann::ordered_json j;
        j["rows"] = rows;
        j["passed"] = passed;
        j["failed"] = failed;
        j["skipped"] = skipped;
        j["budget_exceeded"] = result.budget_exceeded;
        j["ok"] = result.all_passed;
        out << j.dump() << "\n";
    } else {
        std::size_t i = 0;
        for (const auto& rr : result.rows) {
            ++i;
            std::ostringstream line;
            line << "[" << std::setw(2) << i << "/" << result.rows.size() << "] "
                 << status_name(rr.status) << "  " << rr.row.check << " size="
                 << rr.row.size << " regime=" << regime_name(rr.row.regime)
                 << " expected=" << (rr.row.expected_holds ? "holds" : "fails");
            if (rr.status != RowStatus::skipped)
                line << " observed=" << (rr.report.holds ? "holds" : "fails")
                     << " residual_terms=" << rr.report.residual_terms
                     << " elapsed_ms=" << rr.report.elapsed_ms;
            out << line.str() << "\n";
        }
        out << "suite: " << passed << " passed, " << failed << " failed, "
            << skipped << " skipped";
        if (result.budget_exceeded) out << " (time budget exceeded)";
        out << "\n";
    }
    return result.all_passed ? 0 : 1;
}

struct BenchArgs {
    std::string workload = "normalize";
    int size = 3;
    int degree = 5;
    int count = 100;
    std::uint64_t seed = 1;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
    using clock = std::chrono::steady_clock;
    if (a.workload == "normalize") {
        Algebra alg(make_spec(a.size, Regime::generic));
        std::mt19937_64 rng(a.seed);
        std::uniform_int_distribution<int> idx(1, alg.n()), coefd(-3, 3);
        std::vector<NCPoly> inputs;
        for (int k = 0; k < a.count; ++k) {
            NCPoly p = alg.zero();
            for (int t = 0; t < 3; ++t) {
                Word w;
                for (int i = 0; i < a.degree; ++i)
                    w.push_back(make_letter(idx(rng), idx(rng)));
                int c = coefd(rng);
                p.add_term(w, alg.scalar(c ? c : 1));
            }
            inputs.push_back(std::move(p));
        }
        auto t0 = clock::now();
        std::size_t total_terms = 0;
        for (const auto& p : inputs) total_terms += alg.normalize(p).term_count();
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0);
        auto stats = alg.cache_stats();
        out << "normalize: n=" << a.size << " degree=" << a.degree
            << " count=" << a.count << " total_ms=" << ms.count()
            << " output_terms=" << total_terms << " cache_entries=" << stats.entries
            << " cache_hits=" << stats.hits << " cache_misses=" << stats.misses << "\n";
    } else if (a.workload == "pfaffian") {
        if (a.size % 2 != 0)
            throw std::invalid_argument("bench: pfaffian workload needs an even size");
        auto t0 = clock::now();
        Report rep = verify_identity("pf_rdet", a.size, Regime::generic);
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0);
        out << "pfaffian: size=" << a.size << " holds=" << (rep.holds ? "true" : "false")
            << " total_ms=" << ms.count() << "\n";
    } else {
        throw std::invalid_argument("bench: unknown workload '" + a.workload + "'");
    }
    return 0;
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact quantum determinant/Pfaffian/Hafnian calculator"};
    app.name("qrs");
    app.require_subcommand(1);

    ComputeArgs ca;
    auto* compute = app.add_subcommand("compute", "print an invariant's canonical form");
    compute->add_option("--what", ca.what,
                        "rdet|cdet|per|pf|pf_prime|hf|b|bprime")->capture_default_str();
    compute->add_option("--n,--size", ca.size, "matrix size (2n for Pfaffian forms)")
        ->capture_default_str();
    compute->add_option("--regime", ca.regime, "generic|q-inverse|q-negative|numeric")
        ->capture_default_str();
    compute->add_option("--r", ca.num_r, "numeric regime: rational value of r");
    compute->add_option("--s", ca.num_s, "numeric regime: rational value of s");
    compute->add_option("--format", ca.format, "text|json")->capture_default_str();
    compute->add_flag("--allow-large", ca.allow_large, "lift the desk-scale size caps");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "verify one identity, print a report");
    verify->add_option("--identity", va.identity, "identity name")->required();
    verify->add_option("--size", va.size, "n (or 2n for Pfaffian identities)")
        ->capture_default_str();
    verify->add_option("--regime", va.regime, "generic|q-inverse|q-negative|numeric")
        ->capture_default_str();
    verify->add_option("--r", va.num_r, "numeric regime: rational value of r");
    verify->add_option("--s", va.num_s, "numeric regime: rational value of s");
    verify->add_option("--format", va.format, "text|json")->capture_default_str();
    verify->add_flag("--allow-large", va.allow_large, "lift the desk-scale size caps");
    verify->add_flag("--no-timing", va.no_timing, "zero elapsed_ms for diffable output");
    verify->add_flag("--corrupt-engine", va.corrupt)->group("");   // test hook, hidden

    SuiteArgs sa;
    auto* suite = app.add_subcommand("suite", "run the full verification matrix");
    suite->add_option("--budget", sa.budget, "time budget in seconds")->capture_default_str();
    suite->add_option("--skip", sa.skip, "skip row groups (supported: 2n6)");
    suite->add_option("--seed", sa.seed, "seed for randomized rows")->capture_default_str();
    suite->add_option("--format", sa.format, "text|json")->capture_default_str();
    suite->add_option("--only", sa.only, "run only rows with this check name");
    suite->add_option("--jobs", sa.jobs, "worker threads (0 = auto)")->capture_default_str();
    suite->add_flag("--no-timing", sa.no_timing, "zero elapsed_ms for diffable output");
    suite->add_flag("--corrupt-engine", sa.corrupt)->group("");    // test hook, hidden

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "time normalization workloads");
    bench->add_option("--workload", ba.workload, "normalize|pfaffian")->capture_default_str();
    bench->add_option("--n,--size", ba.size, "algebra size")->capture_default_str();
    bench->add_option("--degree", ba.degree, "word length for normalize")->capture_default_str();
    bench->add_option("--count", ba.count, "number of random inputs")->capture_default_str();
    bench->add_option("--seed", ba.seed, "random seed")->capture_default_str();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (compute->parsed()) return cmd_compute(ca, out);
        if (verify->parsed()) return cmd_verify(va, out);
        if (suite->parsed()) return cmd_suite(sa, out);
        if (bench->parsed()) return cmd_bench(ba, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\nrun 'qrs --help' for usage\n";
        return 2;
    }
    err << app.help();
    return 2;
}

} // namespace qrs
