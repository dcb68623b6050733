// Command-line front end: group setup, set commitment, membership proofs,
// verification, batch verification, benchmarking and crossover analysis over
// the documented file formats.
//
// Exit codes: 0 success / accept, 1 verification reject, 2 usage or I/O error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zkset/zkset.hpp"

namespace {

using nlohmann::json;
using namespace zkset;

constexpr const char* kVersion = "zkset 1.0.0 (file formats v1)";

Bytes read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail(ErrorKind::io, "cannot open " + path);
    Bytes data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return data;
}

void write_file(const std::string& path, BytesView data) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(ErrorKind::io, "cannot open " + path + " for writing");
    f.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
    if (!f) fail(ErrorKind::io, "failed writing " + path);
}

std::unique_ptr<RandomSource> make_rng(const std::optional<uint64_t>& seed) {
    if (seed) return std::make_unique<SeededRandom>(*seed);
    return std::make_unique<SystemRandom>();
}

struct BackendArg {
    std::string name = "ed25519";
};

std::pair<Group, std::optional<SetupSecret>> create_backend(const std::string& name,
                                                            RandomSource& rng) {
    if (name.rfind("rsa-", 0) == 0) {
        unsigned bits = static_cast<unsigned>(std::stoul(name.substr(4)));
        auto [g, s] = make_rsa_group(bits, rng);
        return {g, s};
    }
    if (name == "toy") return {make_toy_group(23, 5), std::nullopt};
    return {make_ec_group(name), std::nullopt};
}

// elements file: newline-delimited UTF-8 identifiers (hashed to scalars), or
// hex scalars with --raw-scalars
std::vector<Scalar> load_elements(const Group& g, const std::string& path, bool raw_scalars,
                                  const std::optional<BigInt>& prover_modulus) {
    std::ifstream f(path);
    if (!f) fail(ErrorKind::io, "cannot open " + path);
    std::vector<Scalar> out;
    std::string line;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (raw_scalars) {
            out.push_back(make_scalar(g, from_be_bytes(from_hex(line)), prover_modulus));
        } else {
            out.push_back(hash_to_scalar(g, BytesView(to_bytes(line)), prover_modulus));
        }
    }
    return out;
}

json report_to_json(const bench::CrossoverReport& r) {
    json j;
    if (r.measured_constant_bytes) j["measured_constant_bytes"] = *r.measured_constant_bytes;
    if (r.measured_size_crossover)
        j["measured_size_crossover_n"] = *r.measured_size_crossover;
    else
        j["measured_size_crossover_n"] = nullptr;
    j["patricia_reference_crossover_n"] = r.patricia_reference_crossover;
    if (r.batch_time_crossover)
        j["batch_time_crossover_m"] = *r.batch_time_crossover;
    else
        j["batch_time_crossover_m"] = nullptr;
    if (r.batch_speedup_at_max) j["batch_speedup_at_max"] = *r.batch_speedup_at_max;
    return j;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<bench::BenchRecord> parse_csv_records(const std::string& text) {
    std::vector<bench::BenchRecord> out;
    std::stringstream ss(text);
    std::string line;
    bool header = true;
    while (std::getline(ss, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> cols;
        std::stringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cols.push_back(c);
        cols.resize(8);
        bench::BenchRecord r;
        r.method = cols[0];
        r.backend = cols[1];
        if (!cols[2].empty()) r.n = std::stoull(cols[2]);
        if (!cols[3].empty()) r.gen_s = std::stod(cols[3]);
        if (!cols[4].empty()) r.verify_s = std::stod(cols[4]);
        if (!cols[5].empty()) r.proof_bytes = std::stod(cols[5]);
        if (!cols[6].empty()) r.reps = std::stoull(cols[6]);
        r.source = cols[7];
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zero-knowledge set membership toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::optional<uint64_t> seed;
    app.add_option("--seed", seed, "fix all randomness for reproducible output")
        ->expected(1);

    // ---- setup ----
    auto* cmd_setup = app.add_subcommand("setup", "generate group parameters");
    std::string backend = "ed25519", params_out, secret_out;
    cmd_setup->add_option("--backend", backend,
                          "ed25519 | secp256r1 | secp384r1 | secp521r1 | bls12-381-g1 | "
                          "rsa-<bits> | toy");
    cmd_setup->add_option("--out", params_out, "parameters file")->required();
    cmd_setup->add_option("--secret-out", secret_out, "setup-secret file (rsa only)");

    // ---- commit ----
    auto* cmd_commit = app.add_subcommand("commit", "commit to a set of elements");
    std::string c_params, c_elements, c_out, c_key_out, c_secret;
    bool c_raw = false, c_no_list = false;
    unsigned c_parallel = 1;
    cmd_commit->add_option("--params", c_params, "parameters file")->required();
    cmd_commit->add_option("--elements", c_elements, "newline-delimited elements file")
        ->required();
    cmd_commit->add_flag("--raw-scalars", c_raw, "elements file holds hex scalars");
    cmd_commit->add_option("--out", c_out, "commitment file")->required();
    cmd_commit->add_option("--key-out", c_key_out, "prover key file")->required();
    cmd_commit->add_option("--secret", c_secret, "setup-secret file (rsa only)");
    cmd_commit->add_flag("--no-element-list", c_no_list,
                         "write an aggregate-only commitment file");
    cmd_commit->add_option("--parallel", c_parallel, "worker threads for setup");

    // ---- prove ----
    auto* cmd_prove = app.add_subcommand("prove", "prove membership of an element");
    std::string p_com, p_key, p_mode = "aggregate", p_element, p_element_hex, p_out;
    std::optional<uint64_t> p_index;
    cmd_prove->add_option("--commitment", p_com, "commitment file")->required();
    cmd_prove->add_option("--key", p_key, "prover key file")->required();
    cmd_prove->add_option("--mode", p_mode, "aggregate | or")->required();
    cmd_prove->add_option("--element", p_element, "member identifier (hashed)");
    cmd_prove->add_option("--element-hex", p_element_hex, "member scalar as hex");
    cmd_prove->add_option("--index", p_index, "member index in the prover key (or mode)");
    cmd_prove->add_option("--out", p_out, "proof file")->required();

    // ---- verify ----
    auto* cmd_verify = app.add_subcommand("verify", "verify a membership proof");
    std::string v_com, v_proof;
    bool v_json = false;
    cmd_verify->add_option("--commitment", v_com, "commitment file")->required();
    cmd_verify->add_option("--proof", v_proof, "proof file")->required();
    cmd_verify->add_flag("--json", v_json, "machine-readable result");

    // ---- batch-verify ----
    auto* cmd_batch = app.add_subcommand("batch-verify", "verify many proofs at once");
    std::string b_com;
    std::vector<std::string> b_proofs;
    bool b_json = false;
    unsigned b_parallel = 1;
    cmd_batch->add_option("--commitment", b_com, "commitment file")->required();
    cmd_batch->add_option("proofs", b_proofs, "proof files")->required();
    cmd_batch->add_flag("--json", b_json, "machine-readable result");
    cmd_batch->add_option("--parallel", b_parallel, "worker threads");

    // ---- bench ----
    auto* cmd_bench = app.add_subcommand("bench", "run the measurement suite");
    std::string bench_backends = "ed25519,secp256r1,rsa-1024";
    std::string bench_methods = "aggregate,merkle";
    std::string bench_sizes = "10,100,1000";
    std::string bench_batches;
    std::string bench_out;
    uint64_t bench_reps = 100;
    unsigned bench_parallel = 1;
    bool bench_ref = false, bench_json = false;
    cmd_bench->add_option("--backends", bench_backends, "comma-separated backend list");
    cmd_bench->add_option("--methods", bench_methods,
                          "comma-separated: aggregate,or,merkle,batch");
    cmd_bench->add_option("--sizes", bench_sizes, "comma-separated set sizes");
    cmd_bench->add_option("--batch-sizes", bench_batches, "comma-separated batch sizes");
    cmd_bench->add_option("--reps", bench_reps, "repetitions per measurement");
    cmd_bench->add_option("--parallel", bench_parallel, "worker threads for setup phases");
    cmd_bench->add_flag("--include-reference", bench_ref,
                        "append the published reference tables");
    cmd_bench->add_option("--out", bench_out, "CSV output path")->required();
    cmd_bench->add_flag("--json", bench_json, "also print records as JSON");

    // ---- crossover ----
    auto* cmd_cross = app.add_subcommand("crossover", "crossover analysis of bench records");
    std::string x_records;
    bool x_json = false;
    cmd_cross->add_option("--records", x_records, "bench CSV file")->required();
    cmd_cross->add_flag("--json", x_json, "machine-readable report");

    CLI11_PARSE(app, argc, argv);

    try {
        auto rng = make_rng(seed);

        if (*cmd_setup) {
            auto [group, secret] = create_backend(backend, *rng);
            write_file(params_out, BytesView(write_group_header(group)));
            if (secret) {
                if (secret_out.empty())
                    fail(ErrorKind::parameter, "rsa setup requires --secret-out");
                write_file(secret_out, BytesView(serialize_setup_secret(*secret)));
            }
            std::cerr << "wrote " << group.name() << " parameters to " << params_out << "\n";
            return 0;
        }

        if (*cmd_commit) {
            Group group = read_group_header(BytesView(read_file(c_params)));
            std::optional<SetupSecret> secret;
            if (!c_secret.empty()) secret = parse_setup_secret(BytesView(read_file(c_secret)));
            if (group.kind() == GroupKind::rsa && !secret)
                fail(ErrorKind::missing_setup_secret, "rsa commit requires --secret");
            std::optional<BigInt> pm;
            if (secret) pm = secret->phi;
            auto elements = load_elements(group, c_elements, c_raw, pm);
            auto [com, key] =
                setmember::setup(group, elements, secret ? &*secret : nullptr, c_parallel);
            write_file(c_out, BytesView(setmember::serialize_commitment(com, !c_no_list)));
            write_file(c_key_out, BytesView(setmember::serialize_prover_key(group, key)));
            std::cerr << "committed " << com.n << " elements\n";
            return 0;
        }

        if (*cmd_prove) {
            auto com = setmember::parse_commitment(BytesView(read_file(p_com)));
            auto [group, key] = setmember::parse_prover_key(BytesView(read_file(p_key)));
            if (!same_group(group, com.group))
                fail(ErrorKind::params_mismatch, "key and commitment use different groups");
            std::optional<BigInt> pm;
            if (key.rsa_mode) pm = key.exponent_modulus;

            setmember::MembershipProof proof{setmember::ProofMode::aggregate,
                                             setmember::ChallengeKind::fiat_shamir, com.group,
                                             sigma::Transcript{}};
            if (p_mode == "aggregate") {
                proof = setmember::prove_aggregate(com, key, *rng);
            } else if (p_mode == "or") {
                size_t index;
                if (p_index) {
                    index = *p_index;
                } else {
                    Scalar x;
                    if (!p_element_hex.empty())
                        x = make_scalar(com.group, from_be_bytes(from_hex(p_element_hex)), pm);
                    else if (!p_element.empty())
                        x = hash_to_scalar(com.group, BytesView(to_bytes(p_element)), pm);
                    else
                        fail(ErrorKind::parameter,
                             "or mode needs --element, --element-hex or --index");
                    auto it = std::find_if(key.elements.begin(), key.elements.end(),
                                           [&](const Scalar& e) { return e == x; });
                    if (it == key.elements.end())
                        fail(ErrorKind::element_membership,
                             "element not present in the prover key");
                    index = static_cast<size_t>(it - key.elements.begin());
                }
                if (index >= key.elements.size())
                    fail(ErrorKind::parameter, "member index out of range");
                proof = setmember::prove_or(com, index, key.elements[index], *rng,
                                            setmember::ChallengeKind::fiat_shamir, pm);
            } else {
                fail(ErrorKind::parameter, "mode must be aggregate or or");
            }
            write_file(p_out, BytesView(setmember::serialize_proof(proof)));
            std::cerr << "wrote proof (" << setmember::serialize_proof(proof).size()
                      << " bytes)\n";
            return 0;
        }

        if (*cmd_verify) {
            auto com = setmember::parse_commitment(BytesView(read_file(v_com)));
            auto proof = setmember::parse_proof(BytesView(read_file(v_proof)));
            bool ok = setmember::verify(com, proof);
            if (v_json) {
                json j{{"result", ok ? "accept" : "reject"}};
                std::cout << j.dump() << "\n";
            } else {
                std::cout << (ok ? "ACCEPT" : "REJECT") << "\n";
            }
            return ok ? 0 : 1;
        }

        if (*cmd_batch) {
            auto com = setmember::parse_commitment(BytesView(read_file(b_com)));
            std::vector<setmember::MembershipProof> proofs;
            proofs.reserve(b_proofs.size());
            for (const auto& path : b_proofs)
                proofs.push_back(setmember::parse_proof(BytesView(read_file(path))));
            setmember::BatchJob job;
            for (const auto& p : proofs) job.entries.push_back({&com, &p});
            bool ok = setmember::batch_verify(job, *rng, b_parallel);
            if (b_json) {
                json j{{"result", ok ? "accept" : "reject"}, {"proofs", proofs.size()}};
                std::cout << j.dump() << "\n";
            } else {
                std::cout << (ok ? "ACCEPT" : "REJECT") << "\n";
            }
            return ok ? 0 : 1;
        }

        if (*cmd_bench) {
            bench::BenchConfig config;
            config.backends = split(bench_backends, ',');
            config.methods = split(bench_methods, ',');
            config.set_sizes.clear();
            for (const auto& s : split(bench_sizes, ','))
                config.set_sizes.push_back(std::stoull(s));
            config.batch_sizes.clear();
            for (const auto& s : split(bench_batches, ','))
                config.batch_sizes.push_back(std::stoull(s));
            config.repetitions = bench_reps;
            config.parallelism = bench_parallel;
            config.seed = seed;
            config.include_reference = bench_ref;
            auto records = bench::run_suite(config);
            bench::export_csv(records, bench_out);
            if (bench_json) {
                json arr = json::array();
                for (const auto& r : records) {
                    json j{{"method", r.method}, {"backend", r.backend}, {"source", r.source}};
                    if (r.n) j["n"] = *r.n;
                    if (r.gen_s) j["gen_s"] = *r.gen_s;
                    if (r.verify_s) j["verify_s"] = *r.verify_s;
                    if (r.proof_bytes) j["proof_bytes"] = *r.proof_bytes;
                    if (r.reps) j["reps"] = *r.reps;
                    arr.push_back(std::move(j));
                }
                std::cout << arr.dump() << "\n";
            }
            std::cerr << "wrote " << records.size() << " records to " << bench_out << "\n";
            return 0;
        }

        if (*cmd_cross) {
            std::string text;
            {
                Bytes raw = read_file(x_records);
                text.assign(raw.begin(), raw.end());
            }
            auto records = parse_csv_records(text);
            auto report = bench::crossover_analysis(records);
            if (x_json) {
                std::cout << report_to_json(report).dump() << "\n";
            } else {
                std::cout << "measured constant proof bytes: "
                          << (report.measured_constant_bytes
                                  ? std::to_string(*report.measured_constant_bytes)
                                  : "n/a")
                          << "\n";
                std::cout << "measured merkle size crossover n*: "
                          << (report.measured_size_crossover
                                  ? std::to_string(*report.measured_size_crossover)
                                  : "none")
                          << "\n";
                std::cout << "patricia reference crossover vs 160 B: "
                          << report.patricia_reference_crossover << "\n";
                if (report.batch_time_crossover)
                    std::cout << "batch time crossover m*: " << *report.batch_time_crossover
                              << "\n";
                if (report.batch_speedup_at_max)
                    std::cout << "batch speedup at largest m: " << *report.batch_speedup_at_max
                              << "\n";
            }
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
