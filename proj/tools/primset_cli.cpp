// Batch CLI over the primset library: exact sigma_j tables, primitive-set
// construction reports, block-family experiments, and primitivity checks on
// arbitrary integer files. Deterministic: the same config always produces
// byte-identical output.
//
// Exit codes: 0 success, 1 verification/invariant failure, 2 invalid input.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "primset/primset.hpp"

namespace {

using namespace primset;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitBadInput = 2;

void write_output(const ExperimentConfig& cfg, const std::string& path,
                  const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output path: " + path);
    out << content;
    if (!out) throw std::invalid_argument("write failed: " + path);
    (void)cfg;
}

json config_json(const ExperimentConfig& cfg) {
    json j;
    for (const auto& [k, v] : config_kv(cfg)) j[k] = v;
    return j;
}

SieveOptions sieve_options(const ExperimentConfig& cfg) {
    SieveOptions opts;
    opts.segment_size = cfg.segment_size;
    opts.threads = cfg.threads;
    return opts;
}

u64 parse_x(double raw, double minimum) {
    if (!(raw >= minimum) || raw > 9.2e18 || raw != std::floor(raw))
        throw std::invalid_argument("--x must be an integer >= " + sig12(minimum));
    return static_cast<u64>(raw);
}

std::vector<u64> parse_prime_list(const std::string& csv) {
    std::vector<u64> primes;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) primes.push_back(std::stoull(item));
    return primes;
}

PrimeSequence sequence_from_config(const ExperimentConfig& cfg) {
    if (!cfg.primes_override.empty())
        return PrimeSequence::from_primes(parse_prime_list(cfg.primes_override));
    BuildBudget budget;
    budget.max_k0 = cfg.budget_k0;
    return build_sequence(lspec_from_config(cfg), cfg.terms, budget);
}

int run_sigma(const ExperimentConfig& cfg) {
    std::vector<SigmaRow> rows = sigma_table(cfg.x, cfg.jmax, sieve_options(cfg));
    std::ostringstream body;
    if (cfg.format == "json") {
        json j;
        j["config"] = config_json(cfg);
        j["rows"] = json::array();
        for (const SigmaRow& r : rows)
            j["rows"].push_back({{"j", r.j},
                                 {"x", r.x},
                                 {"sigma_exact", r.sigma_exact},
                                 {"h_main_term", r.h_main_term},
                                 {"ratio", r.ratio}});
        body << j.dump(2) << '\n';
    } else {
        body << serialize_config(cfg, "# ");
        write_sigma_csv(body, rows);
    }
    write_output(cfg, cfg.out, body.str());
    return kExitOk;
}

int run_construct(const ExperimentConfig& cfg) {
    PrimeSequence seq = sequence_from_config(cfg);
    SieveOptions opts = sieve_options(cfg);
    CountReport rep = count_report(cfg.x, seq, opts);

    std::vector<u64> members = enumerate_members(cfg.x, seq, opts);
    if (cfg.inject_composite != 0) members.push_back(cfg.inject_composite);
    PrimitivityResult prim = is_primitive_dense(members, std::max(cfg.x, cfg.inject_composite));
    if (!prim.primitive) {
        std::cerr << "primitivity violated: " << prim.witness->first << " divides "
                  << prim.witness->second << '\n';
        return kExitVerificationFailure;
    }

    if (cfg.format == "json") {
        json j;
        j["config"] = config_json(cfg);
        j["summary"] = {{"x", rep.x},
                        {"S", rep.total},
                        {"predicted", rep.predicted},
                        {"window_low", rep.window_low},
                        {"window_high", rep.window_high},
                        {"B", rep.b},
                        {"Bprime", rep.b_prime}};
        j["per_k"] = json::array();
        for (const auto& [k, count] : rep.per_k) {
            json row = {{"k", k}, {"S_k", count}};
            if (auto it = rep.ratio_diagnostics.find(k); it != rep.ratio_diagnostics.end())
                row["lemma23_ratio"] = it->second;
            j["per_k"].push_back(row);
        }
        j["primitivity"] = "verified";
        j["sequence"] = {{"k0", seq.k0},
                         {"y0", seq.y0},
                         {"prefix_reciprocal_sum", seq.prefix_reciprocal_sum},
                         {"tail_bound", seq.tail_bound}};
        if (members.size() <= 10000) j["members"] = members;
        write_output(cfg, cfg.out, j.dump(2) + "\n");
        return kExitOk;
    }

    std::ostringstream summary;
    summary << serialize_config(cfg, "# ");
    summary << "# primitivity=verified members=" << members.size() << '\n';
    write_count_summary_csv(summary, rep);

    std::ostringstream perk;
    perk << serialize_config(cfg, "# ");
    write_count_perk_csv(perk, rep);

    if (cfg.out == "-") {
        write_output(cfg, "-", summary.str() + perk.str());
    } else {
        write_output(cfg, cfg.out, summary.str());
        write_output(cfg, cfg.out + ".perk.csv", perk.str());
    }
    return kExitOk;
}

int run_theorem2(const ExperimentConfig& cfg) {
    int given = (cfg.blocks > 0) + !cfg.extract.empty() + (cfg.sample_verify > 0);
    if (given != 1)
        throw std::invalid_argument(
            "theorem2: give exactly one of --blocks, --extract, --sample-verify");

    std::ostringstream body;
    json j;
    j["config"] = config_json(cfg);

    if (cfg.blocks > 0) {
        if (cfg.blocks > 6)
            throw std::invalid_argument("theorem2: --blocks supports j <= 6");
        std::vector<ABlock> rows;
        for (int b = 1; b <= cfg.blocks; ++b) rows.push_back(block_reciprocal_sum(b));
        if (cfg.format == "json") {
            j["blocks"] = json::array();
            for (const ABlock& blk : rows)
                j["blocks"].push_back({{"j", blk.j},
                                       {"lo", pow2_decimal(blk.lo_exp2)},
                                       {"hi", pow2_decimal(blk.hi_exp2)},
                                       {"count", to_string_u128(blk.count)},
                                       {"reciprocal_sum", blk.reciprocal_sum},
                                       {"error_bound", blk.error_bound},
                                       {"method", to_string(blk.method)}});
            body << j.dump(2) << '\n';
        } else {
            body << serialize_config(cfg, "# ");
            body << "j,lo,hi,count,reciprocal_sum,method\n";
            for (const ABlock& blk : rows)
                body << blk.j << ',' << pow2_decimal(blk.lo_exp2) << ','
                     << pow2_decimal(blk.hi_exp2) << ',' << to_string_u128(blk.count) << ','
                     << sig12(blk.reciprocal_sum) << ',' << to_string(blk.method) << '\n';
        }
        write_output(cfg, cfg.out, body.str());
        return kExitOk;
    }

    if (!cfg.extract.empty()) {
        ExtractStrategy strategy;
        if (cfg.extract == "greedy" || cfg.extract == "greedy-ascending")
            strategy = ExtractStrategy::greedy_ascending;
        else if (cfg.extract == "dyadic" || cfg.extract == "dyadic-block")
            strategy = ExtractStrategy::dyadic_block;
        else
            throw std::invalid_argument("theorem2: unknown strategy " + cfg.extract);
        if (cfg.x < 16) throw std::invalid_argument("theorem2: --extract needs --x >= 16");

        ExtractionResult res = extract_primitive_subset(cfg.x, strategy);
        if (!res.members.empty()) {
            PrimitivityResult prim = is_primitive(res.members);
            if (!prim.primitive) {
                std::cerr << "extraction produced a non-primitive subset: witness ("
                          << prim.witness->first << ", " << prim.witness->second << ")\n";
                return kExitVerificationFailure;
            }
        }
        if (cfg.format == "json") {
            j["extraction"] = {{"x", res.x},
                               {"strategy", to_string(res.strategy)},
                               {"subset_size", res.size},
                               {"reciprocal_sum", res.reciprocal_sum}};
            body << j.dump(2) << '\n';
        } else {
            body << serialize_config(cfg, "# ");
            body << "x,strategy,subset_size,reciprocal_sum\n";
            body << res.x << ',' << to_string(res.strategy) << ',' << res.size << ','
                 << sig12(res.reciprocal_sum) << '\n';
        }
        write_output(cfg, cfg.out, body.str());
        return kExitOk;
    }

    // --sample-verify: random primitive subsets through the odd-part checks
    if (cfg.x < 64) throw std::invalid_argument("theorem2: --sample-verify needs --x >= 64");
    std::mt19937_64 rng(cfg.seed);
    u64 failures = 0;
    for (u64 i = 0; i < cfg.sample_verify; ++i) {
        std::vector<u64> subset = (i % 2 == 0) ? random_dyadic_subset(rng, cfg.x, 64)
                                               : random_repaired_subset(rng, cfg.x, 64);
        try {
            verify_odd_part_antichain(subset);
        } catch (const invariant_violation&) {
            ++failures;
        }
    }
    if (cfg.format == "json") {
        j["sample_verify"] = {{"x", cfg.x}, {"samples", cfg.sample_verify}, {"failures", failures}};
        body << j.dump(2) << '\n';
    } else {
        body << serialize_config(cfg, "# ");
        body << "x,samples,failures\n";
        body << cfg.x << ',' << cfg.sample_verify << ',' << failures << '\n';
    }
    write_output(cfg, cfg.out, body.str());
    return failures == 0 ? kExitOk : kExitVerificationFailure;
}

int run_verify(const ExperimentConfig& cfg) {
    std::vector<u64> values = load_integer_file(cfg.input_file);
    for (u64 v : values)
        if (v < 1) throw std::invalid_argument("verify: elements must be >= 1");
    PrimitivityResult res = is_primitive(values);
    double sum = erdos_sum(values);

    std::ostringstream body;
    if (cfg.format == "json") {
        json j;
        j["config"] = config_json(cfg);
        j["primitive"] = res.primitive;
        if (res.witness) j["witness"] = {res.witness->first, res.witness->second};
        j["erdos_sum"] = sum;
        j["size"] = values.size();
        body << j.dump(2) << '\n';
    } else {
        body << serialize_config(cfg, "# ");
        body << "primitive,witness_m,witness_n,erdos_sum\n";
        body << (res.primitive ? "true" : "false") << ',';
        if (res.witness) body << res.witness->first << ',' << res.witness->second << ',';
        else body << ",,";
        body << sig12(sum) << '\n';
    }
    write_output(cfg, cfg.out, body.str());
    if (res.witness) {
        std::cerr << "not primitive: " << res.witness->first << " divides "
                  << res.witness->second << '\n';
        return kExitVerificationFailure;
    }
    return kExitOk;
}

int run_primeseq(const ExperimentConfig& cfg) {
    PrimeSequence seq = sequence_from_config(cfg);
    std::ostringstream body;
    if (cfg.format == "json") {
        json j;
        j["config"] = config_json(cfg);
        j["y0"] = seq.y0;
        j["k0"] = seq.k0;
        j["prefix_reciprocal_sum"] = seq.prefix_reciprocal_sum;
        j["tail_bound"] = seq.tail_bound;
        j["primes"] = seq.primes;
        body << j.dump(2) << '\n';
    } else {
        body << serialize_config(cfg, "# ");
        write_sequence_csv(body, seq);
    }
    write_output(cfg, cfg.out, body.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"primitive sets: construction, exact counting, verification"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    double x_raw = 0.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        sub->add_option("--out,-o", cfg.out, "output path, - for stdout")
            ->capture_default_str();
        sub->add_option("--threads", cfg.threads, "worker threads for segment sieving")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--segment-size", cfg.segment_size, "sieve segment entries")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--seed", cfg.seed, "seed for randomized runs")
            ->capture_default_str();
    };
    auto add_lspec = [&](CLI::App* sub) {
        sub->add_option("--L", cfg.l_kind, "L kind")
            ->check(CLI::IsMember({"power-of-log", "iterated-log-product", "custom-table"}))
            ->capture_default_str();
        sub->add_option("--ell", cfg.l_ell, "ell for iterated-log-product")
            ->check(CLI::Range(3, 64))
            ->capture_default_str();
        sub->add_option("--epsilon", cfg.l_epsilon, "epsilon exponent")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--table", cfg.l_table_path, "x,L CSV for custom-table");
        sub->add_option("--K", cfg.terms, "computed sequence terms")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--budget-k0", cfg.budget_k0, "largest k0 tried for the certificate")
            ->capture_default_str();
        sub->add_option("--primes", cfg.primes_override,
                        "comma-separated prime prefix (testing; bypasses the certificate)");
    };

    CLI::App* sigma = app.add_subcommand(
        "sigma", "exact counts of n <= x with Omega(n) = j vs the Sathe-Selberg main term");
    sigma->add_option("--x", x_raw, "count limit")->required()->check(CLI::Range(16.0, 9.2e18));
    sigma->add_option("--jmax", cfg.jmax, "largest j")->required()->check(CLI::PositiveNumber);
    add_common(sigma);

    CLI::App* construct = app.add_subcommand(
        "construct", "build the primitive set S over [1, x], count and verify it");
    construct->add_option("--x", x_raw, "count limit")
        ->required()
        ->check(CLI::Range(16.0, 9.2e18));
    add_lspec(construct);
    add_common(construct);
    construct->add_option("--inject-composite", cfg.inject_composite, "")->group("");

    CLI::App* theorem2 = app.add_subcommand(
        "theorem2", "block family A_j: reciprocal sums, primitive-subset extraction");
    theorem2->add_option("--blocks", cfg.blocks, "emit blocks j = 1..N")->check(CLI::PositiveNumber);
    theorem2->add_option("--extract", cfg.extract, "greedy-ascending | dyadic-block");
    theorem2->add_option("--sample-verify", cfg.sample_verify,
                         "random primitive subsets through the odd-part checks");
    theorem2->add_option("--x", x_raw, "limit for extraction/sampling")
        ->check(CLI::Range(1.0, 9.2e18));
    add_common(theorem2);

    CLI::App* verify = app.add_subcommand(
        "verify", "primitivity and Erdos sum of a newline-delimited integer file");
    verify->add_option("file", cfg.input_file, "input set file")->required();
    add_common(verify);

    CLI::App* primeseq = app.add_subcommand(
        "primeseq", "build the certified prime sequence for an L spec");
    add_lspec(primeseq);
    add_common(primeseq);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (sigma->parsed()) {
            cfg.subcommand = "sigma";
            cfg.x = parse_x(x_raw, 16);
            return run_sigma(cfg);
        }
        if (construct->parsed()) {
            cfg.subcommand = "construct";
            cfg.x = parse_x(x_raw, 16);
            return run_construct(cfg);
        }
        if (theorem2->parsed()) {
            cfg.subcommand = "theorem2";
            if (x_raw != 0.0) cfg.x = parse_x(x_raw, 1);
            return run_theorem2(cfg);
        }
        if (verify->parsed()) {
            cfg.subcommand = "verify";
            return run_verify(cfg);
        }
        cfg.subcommand = "primeseq";
        return run_primeseq(cfg);
    } catch (const invariant_violation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kExitVerificationFailure;
    } catch (const certificate_error& e) {
        std::cerr << "certificate failure: " << e.what() << '\n';
        return kExitVerificationFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    }
}
