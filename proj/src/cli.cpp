#include "motrng/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "motrng/bitstream.hpp"
#include "motrng/config.hpp"
#include "motrng/crypto.hpp"
#include "motrng/dipole_sim.hpp"
#include "motrng/dp.hpp"
#include "motrng/nist.hpp"
#include "motrng/nlfsr.hpp"
#include "motrng/noise_analysis.hpp"
#include "motrng/pnm.hpp"
#include "motrng/presets.hpp"
#include "motrng/signal_chain.hpp"
#include "motrng/trace_io.hpp"

namespace motrng {

namespace {

namespace fs = std::filesystem;

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "preset",
        "sim.n_dipoles", "sim.prefactor_a", "sim.barrier_e", "sim.temperature_t",
        "sim.bias_v", "sim.r0", "sim.length_l", "sim.p_low", "sim.p_high",
        "sim.dt", "sim.n_steps", "sim.seed", "sim.coupling_mode", "sim.j0",
        "sim.beta", "sim.rho_floor", "sim.rho_init", "sim.eps_init", "sim.pf_area",
        "chain.gain_g", "chain.cutoff_fc", "chain.threshold_theta",
        "chain.hysteresis_h", "chain.sample_decimation",
        "tl.window", "tl.grid_size", "tl.alpha",
        "nist.block_m", "nist.template", "nist.serial_m", "nist.apen_m",
        "nist.significance",
        "nlfsr.width", "nlfsr.anf", "nlfsr.include_zero", "nlfsr.reseed_interval",
        "dp.epsilon", "dp.sensitivity_delta", "dp.clip",
    };
    return keys;
}

struct GlobalOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::string format = "csv";
    std::vector<std::string> sets; // key=value overrides
    std::uint64_t seed = 0;
    bool seed_given = false;
};

Config resolve_config(const GlobalOpts& g) {
    Config cfg;
    if (!g.config_path.empty()) cfg = Config::from_file(g.config_path);
    for (const auto& kv : g.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (g.seed_given) cfg.set("sim.seed", std::to_string(g.seed));
    cfg.require_known_keys(known_keys());
    return cfg;
}

Preset resolve_preset(const Config& cfg) {
    Preset p = preset(cfg.get_string("preset", "paper-power"));
    Config layered;
    p.sim.to_config(layered);
    p.chain.to_config(layered);
    layered.merge_overrides(cfg);
    p.sim = SimParams::from_config(layered);
    p.chain = ChainConfig::from_config(layered);
    return p;
}

class Manifest {
public:
    Manifest(std::string command, const Config& cfg, const GlobalOpts& g)
        : start_(std::chrono::steady_clock::now()) {
        fs::create_directories(g.out_dir);
        doc_["command"] = std::move(command);
        doc_["out_dir"] = g.out_dir;
        for (const auto& [k, v] : cfg.entries()) doc_["config"][k] = v;
        if (!g.config_path.empty())
            doc_["inputs"][g.config_path] = sha256_file(g.config_path);
    }
    void add_input(const std::string& path) { doc_["inputs"][path] = sha256_file(path); }
    void add_output(const std::string& path) { doc_["outputs"][path] = sha256_file(path); }
    void write(const std::string& path) {
        doc_["wall_s"] = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start_)
                             .count();
        std::ofstream f(path);
        f << doc_.dump(2) << '\n';
    }

private:
    nlohmann::json doc_;
    std::chrono::steady_clock::time_point start_;
};

std::string out_path(const GlobalOpts& g, const std::string& name) {
    fs::create_directories(g.out_dir);
    return (fs::path(g.out_dir) / name).string();
}

CurrentTrace load_trace(const std::string& path) {
    const SeriesCsv csv = read_series_csv(path);
    if (csv.values.size() < 1)
        throw std::invalid_argument("trace file has no samples: " + path);
    CurrentTrace trace;
    trace.dt = csv.dt > 0 ? csv.dt : 1.0;
    trace.samples = csv.values;
    return trace;
}

std::string hex_encode(const std::vector<std::uint8_t>& bytes) {
    static const char* hex = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        s.push_back(hex[b >> 4]);
        s.push_back(hex[b & 0xf]);
    }
    return s;
}

std::vector<std::uint8_t> hex_decode(const std::string& s) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw std::invalid_argument("bad hex digit");
    };
    if (s.size() % 2) throw std::invalid_argument("odd-length hex string");
    std::vector<std::uint8_t> out(s.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>(nibble(s[2 * i]) << 4 | nibble(s[2 * i + 1]));
    return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open " + path);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    const auto parent = fs::path(path).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

// --- subcommands ---------------------------------------------------------

// manifests carry the fully resolved parameter set, not just the overrides
Config resolved_entries(const Config& cfg, const Preset& p) {
    Config full;
    p.sim.to_config(full);
    p.chain.to_config(full);
    full.merge_overrides(cfg);
    return full;
}

int cmd_simulate(const GlobalOpts& g) {
    const Config cfg = resolve_config(g);
    const Preset p = resolve_preset(cfg);
    Manifest manifest("simulate", resolved_entries(cfg, p), g);

    const CurrentTrace trace = simulate(p.sim);
    const std::string path = out_path(g, "trace.csv");
    write_series_csv(path, "t_s,i_A", trace.dt, trace.samples);
    manifest.add_output(path);
    manifest.write(out_path(g, "simulate.manifest.json"));

    double mean = 0.0;
    for (double v : trace.samples) mean += v;
    mean /= static_cast<double>(trace.samples.size());
    std::printf("simulate: %lld samples -> %s (mean %.4g A, mean power %.4g W)\n",
                static_cast<long long>(p.sim.n_steps), path.c_str(), mean,
                mean * p.sim.bias_V);
    return 0;
}

int cmd_extract(const GlobalOpts& g, const std::string& trace_path, bool ascii) {
    const Config cfg = resolve_config(g);
    const Preset p = resolve_preset(cfg);
    Manifest manifest("extract", resolved_entries(cfg, p), g);
    manifest.add_input(trace_path);

    const CurrentTrace trace = load_trace(trace_path);
    const ChainOutput ports = run_chain(trace, p.chain);

    const std::string p1 = out_path(g, "port1.csv");
    const std::string p2 = out_path(g, "port2.csv");
    const std::string p3 = out_path(g, "port3.bits");
    write_series_csv(p1, "t_s,v_V", ports.converted.dt, ports.converted.samples);
    write_series_csv(p2, "t_s,v_V", ports.filtered.dt, ports.filtered.samples);
    write_bitstream(p3, ports.bits, sha256_file(trace_path));
    manifest.add_output(p1);
    manifest.add_output(p2);
    manifest.add_output(p3);
    if (ascii) {
        const std::string pa = out_path(g, "port3.txt");
        write_bitstream_ascii(pa, ports.bits);
        manifest.add_output(pa);
    }
    manifest.write(out_path(g, "extract.manifest.json"));

    const BitBalance bal = bit_balance(ports.bits);
    std::printf("extract: %zu bits -> %s (ones %.4f)\n", ports.bits.size(), p3.c_str(),
                bal.ones_fraction);
    return 0;
}

int cmd_analyze(const GlobalOpts& g, const std::string& trace_path,
                const std::string& bits_path) {
    const Config cfg = resolve_config(g);
    Manifest manifest("analyze", cfg, g);

    if (trace_path.empty() == bits_path.empty())
        throw std::invalid_argument("analyze: pass exactly one of --trace or --bits");

    if (!trace_path.empty()) {
        manifest.add_input(trace_path);
        const CurrentTrace trace = load_trace(trace_path);

        const SlopeSeries slopes = slope_series(trace.samples, trace.dt);
        const Histogram hist = histogram(slopes.values);
        const GaussianFit fit = gaussian_fit(hist);
        const std::string fit_path = out_path(g, "slope_fit.json");
        write_histogram_fit(fit_path, hist, fit);
        manifest.add_output(fit_path);

        const double window = cfg.get_double("tl.window", trace.dt);
        const auto grid_size =
            static_cast<std::size_t>(cfg.get_int("tl.grid_size", 256));
        const double alpha = cfg.get_double("tl.alpha", 0.0);
        const ChargeTrace charge = integrate_charge(trace, window);
        const TLGrid grid = time_lag(charge, grid_size, alpha);
        const std::string tl_path = out_path(g, "tl_grid.csv");
        write_tl_grid(tl_path, grid);
        manifest.add_output(tl_path);

        std::printf("analyze: slope fit r^2 %.4f (mu %.4g, sigma %.4g); TL grid %zux%zu -> %s\n",
                    fit.r_squared, fit.mu, fit.sigma, grid.grid_size, grid.grid_size,
                    g.out_dir.c_str());
    } else {
        manifest.add_input(bits_path);
        const BitStream bits = read_bitstream(bits_path);
        const BitBalance bal = bit_balance(bits);
        nlohmann::json doc;
        doc["n_bits"] = bal.n_bits;
        doc["ones_fraction"] = bal.ones_fraction;
        doc["zeros_fraction"] = bal.zeros_fraction;
        const std::string path = out_path(g, "balance.json");
        std::ofstream f(path);
        f << doc.dump(2) << '\n';
        manifest.add_output(path);
        std::printf("analyze: %zu bits, ones %.4f / zeros %.4f\n", bal.n_bits,
                    bal.ones_fraction, bal.zeros_fraction);
    }
    manifest.write(out_path(g, "analyze.manifest.json"));
    return 0;
}

nist::TestParams nist_params_from(const Config& cfg) {
    nist::TestParams tp;
    tp.block_length_m = cfg.get_int("nist.block_m", 0);
    tp.template_bits = cfg.get_string("nist.template", "");
    tp.serial_m = cfg.get_int("nist.serial_m", 0);
    tp.apen_m = cfg.get_int("nist.apen_m", 0);
    tp.significance = cfg.get_double("nist.significance", 0.01);
    if (!(tp.significance > 0.0 && tp.significance < 1.0))
        throw std::invalid_argument("nist.significance must be in (0, 1)");
    return tp;
}

int cmd_nist(const GlobalOpts& g, const std::string& bits_path) {
    const Config cfg = resolve_config(g);
    Manifest manifest("nist", cfg, g);
    manifest.add_input(bits_path);

    const BitStream bits = read_bitstream(bits_path);
    const nist::TestReport report = nist::run_suite(bits, nist_params_from(cfg));

    const std::string json_path = out_path(g, "nist_report.json");
    std::ofstream f(json_path);
    f << nist::report_to_json(report).dump(2) << '\n';
    f.close();
    manifest.add_output(json_path);
    manifest.write(out_path(g, "nist.manifest.json"));

    if (g.format == "json")
        std::printf("%s\n", nist::report_to_json(report).dump(2).c_str());
    else
        std::fputs(nist::render_table(report).c_str(), stdout);
    const bool pass = report.all_pass();
    std::printf("nist: %s (alpha=%g, %zu bits)\n", pass ? "all applicable tests pass" : "FAILED",
                report.significance, bits.size());
    return pass ? 0 : 1;
}

int cmd_expand(const GlobalOpts& g, const std::string& seed_path, std::int64_t n_out,
               bool ascii) {
    const Config cfg = resolve_config(g);
    Manifest manifest("expand", cfg, g);
    manifest.add_input(seed_path);

    NlfsrSpec spec;
    const std::string anf = cfg.get_string("nlfsr.anf", "");
    if (anf.empty()) {
        spec = NlfsrSpec::default_spec(static_cast<int>(cfg.get_int("nlfsr.width", 20)));
    } else {
        spec = NlfsrSpec::parse("width=" + std::to_string(cfg.get_int("nlfsr.width", 20)) +
                                ";anf=" + anf);
    }
    spec.include_zero_state = cfg.get_int("nlfsr.include_zero", 0) != 0;
    const std::int64_t interval = cfg.get_int("nlfsr.reseed_interval", 1024);

    const BitStream seed = read_bitstream(seed_path);
    std::int64_t zero_chunks = 0;
    const auto t0 = std::chrono::steady_clock::now();
    const BitStream bits = expand(seed, spec, interval, n_out, &zero_chunks);
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    if (zero_chunks > 0)
        std::fprintf(stderr, "expand: warning: %lld all-zero seed chunks replaced by 0..01\n",
                     static_cast<long long>(zero_chunks));

    const std::string path = out_path(g, "expanded.bits");
    write_bitstream(path, bits, sha256_file(seed_path));
    manifest.add_output(path);
    if (ascii) {
        const std::string pa = out_path(g, "expanded.txt");
        write_bitstream_ascii(pa, bits);
        manifest.add_output(pa);
    }
    manifest.write(out_path(g, "expand.manifest.json"));

    std::printf("expand: %lld bits via %s -> %s (%.2f Mbit/s)\n",
                static_cast<long long>(n_out), spec.serialize().c_str(), path.c_str(),
                static_cast<double>(n_out) / secs / 1e6);
    return 0;
}

int cmd_bitmap(const GlobalOpts& g, const std::string& bits_path, std::int64_t side) {
    const Config cfg = resolve_config(g);
    Manifest manifest("bitmap", cfg, g);
    manifest.add_input(bits_path);

    const BitStream bits = read_bitstream(bits_path);
    const std::string path = out_path(g, "bitmap.pbm");
    std::string comment = "source sha256 " + sha256_file(bits_path);
    if (cfg.has("nlfsr.anf") || cfg.has("nlfsr.width")) {
        NlfsrSpec spec;
        const std::string anf = cfg.get_string("nlfsr.anf", "");
        if (anf.empty())
            spec = NlfsrSpec::default_spec(static_cast<int>(cfg.get_int("nlfsr.width", 20)));
        else
            spec = NlfsrSpec::parse("width=" + std::to_string(cfg.get_int("nlfsr.width", 20)) +
                                    ";anf=" + anf);
        comment = spec.serialize() + "; " + comment;
    }
    write_bitmap_p1(path, bits, static_cast<std::size_t>(side), comment);
    manifest.add_output(path);
    manifest.write(out_path(g, "bitmap.manifest.json"));

    const BitBalance bal = bit_balance(bits);
    std::printf("bitmap: %lldx%lld -> %s (ones %.4f)\n", static_cast<long long>(side),
                static_cast<long long>(side), path.c_str(), bal.ones_fraction);
    return 0;
}

int cmd_otp(const GlobalOpts& g, const std::string& bits_path, std::int64_t length,
            std::int64_t count, const std::string& charset) {
    const Config cfg = resolve_config(g);
    Manifest manifest("otp", cfg, g);
    manifest.add_input(bits_path);

    EntropyPool pool(read_bitstream(bits_path));
    for (std::int64_t i = 0; i < count; ++i)
        std::printf("%s\n", otp(pool, static_cast<std::size_t>(length), charset).c_str());
    manifest.write(out_path(g, "otp.manifest.json"));
    return 0;
}

int cmd_encrypt(const GlobalOpts& g, const std::string& bits_path, const std::string& in_path,
                const std::string& out_file, const std::string& key_out) {
    const Config cfg = resolve_config(g);
    Manifest manifest("encrypt", cfg, g);
    manifest.add_input(bits_path);
    manifest.add_input(in_path);

    EntropyPool pool(read_bitstream(bits_path));
    const auto plaintext = read_file_bytes(in_path);
    KeyMaterial keys;
    const CipherEnvelope env = encrypt(plaintext, pool, keys);
    write_file_bytes(out_file, env.serialize());

    const std::string key_path = key_out.empty() ? out_file + ".key" : key_out;
    std::ofstream kf(key_path);
    kf << hex_encode(keys.enc_key) << hex_encode(keys.mac_key) << "\n";
    kf.close();
    manifest.add_output(out_file);
    manifest.add_output(key_path);
    manifest.write(out_path(g, "encrypt.manifest.json"));

    std::printf("encrypt: %zu bytes -> %s (key in %s, %zu pool bits used)\n",
                plaintext.size(), out_file.c_str(), key_path.c_str(), pool.consumed());
    return 0;
}

int cmd_decrypt(const GlobalOpts& g, const std::string& key_path, const std::string& in_path,
                const std::string& out_file) {
    const Config cfg = resolve_config(g);
    Manifest manifest("decrypt", cfg, g);
    manifest.add_input(key_path);
    manifest.add_input(in_path);

    std::ifstream kf(key_path);
    if (!kf) throw std::invalid_argument("cannot open key file " + key_path);
    std::string hex;
    kf >> hex;
    const auto key_bytes = hex_decode(hex);
    if (key_bytes.size() != 64)
        throw std::invalid_argument("key file must hold 64 hex-encoded bytes");
    KeyMaterial keys;
    keys.enc_key.assign(key_bytes.begin(), key_bytes.begin() + 32);
    keys.mac_key.assign(key_bytes.begin() + 32, key_bytes.end());

    const CipherEnvelope env = CipherEnvelope::deserialize(read_file_bytes(in_path));
    const auto plaintext = decrypt(env, keys);
    write_file_bytes(out_file, plaintext);
    manifest.add_output(out_file);
    manifest.write(out_path(g, "decrypt.manifest.json"));

    std::printf("decrypt: %zu bytes -> %s\n", plaintext.size(), out_file.c_str());
    return 0;
}

int cmd_perturb(const GlobalOpts& g, const std::string& bits_path, const std::string& in_path,
                const std::string& out_file) {
    const Config cfg = resolve_config(g);
    Manifest manifest("perturb", cfg, g);
    manifest.add_input(bits_path);
    manifest.add_input(in_path);

    PerturbConfig pc;
    pc.epsilon = cfg.get_double("dp.epsilon", 1.0);
    pc.sensitivity_delta = cfg.get_double("dp.sensitivity_delta", 1.0);
    pc.clip = cfg.get_int("dp.clip", 1) != 0;

    EntropyPool pool(read_bitstream(bits_path));
    const Image original = read_pnm(in_path);
    const Image noisy = dp_perturb(original, pc, pool);
    const auto parent = fs::path(out_file).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
    write_pnm(out_file, noisy);
    manifest.add_output(out_file);

    const PerturbReport rep = perturbation_report(original, noisy);
    nlohmann::json doc;
    doc["epsilon"] = pc.epsilon;
    doc["sensitivity_delta"] = pc.sensitivity_delta;
    doc["clip"] = pc.clip;
    doc["mae"] = rep.mae;
    doc["psnr_db"] = std::isinf(rep.psnr) ? 1e9 : rep.psnr;
    const std::string rep_path = out_path(g, "perturb_report.json");
    std::ofstream rf(rep_path);
    rf << doc.dump(2) << '\n';
    rf.close();
    manifest.add_output(rep_path);
    manifest.write(out_path(g, "perturb.manifest.json"));

    std::printf("perturb: epsilon %.3g -> %s (MAE %.4g, PSNR %.4g dB)\n", pc.epsilon,
                out_file.c_str(), rep.mae, rep.psnr);
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"metastable-dipole TRNG simulator and extraction pipeline"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "key=value config file");
    app.add_option("--out", g.out_dir, "output directory (default .)");
    app.add_option("--format", g.format, "report format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--set", g.sets, "override a config key (key=value, repeatable)");
    auto* seed_opt = app.add_option("--seed", g.seed, "override sim.seed");

    auto* simulate_cmd = app.add_subcommand("simulate", "run the dipole Monte Carlo");

    std::string trace_path, bits_path, in_path, out_file, key_path;
    bool ascii = false;

    auto* extract_cmd = app.add_subcommand("extract", "current trace -> ports 1..3");
    extract_cmd->add_option("--trace", trace_path, "input trace CSV")->required();
    extract_cmd->add_flag("--ascii", ascii, "also write the bitstream as text");

    auto* analyze_cmd = app.add_subcommand("analyze", "slope/TL/balance statistics");
    analyze_cmd->add_option("--trace", trace_path, "input trace CSV");
    analyze_cmd->add_option("--bits", bits_path, "input bitstream");

    auto* nist_cmd = app.add_subcommand("nist", "randomness test battery");
    nist_cmd->add_option("--bits", bits_path, "input bitstream")->required();

    std::int64_t n_out = 1000000, side = 1024, length = 16, count = 1;
    std::string charset =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";

    auto* expand_cmd = app.add_subcommand("expand", "NLFSR throughput expansion");
    expand_cmd->add_option("--seed-bits", bits_path, "seed bitstream")->required();
    expand_cmd->add_option("-n,--bits-out", n_out, "output bits (default 1e6)");
    expand_cmd->add_flag("--ascii", ascii, "also write the stream as text");

    auto* bitmap_cmd = app.add_subcommand("bitmap", "bits -> P1 bitmap");
    bitmap_cmd->add_option("--bits", bits_path, "input bitstream")->required();
    bitmap_cmd->add_option("--side", side, "image side (default 1024)");

    auto* otp_cmd = app.add_subcommand("otp", "one-time passwords from a pool");
    otp_cmd->add_option("--bits", bits_path, "input bitstream")->required();
    otp_cmd->add_option("--length", length, "password length (default 16)");
    otp_cmd->add_option("--count", count, "number of passwords");
    otp_cmd->add_option("--charset", charset, "symbol set (default alphanumeric)");

    auto* encrypt_cmd = app.add_subcommand("encrypt", "encrypt a file with pool-derived keys");
    encrypt_cmd->add_option("--bits", bits_path, "input bitstream")->required();
    encrypt_cmd->add_option("--in", in_path, "plaintext file")->required();
    encrypt_cmd->add_option("--out-file", out_file, "envelope file")->required();
    encrypt_cmd->add_option("--key-out", key_path, "key file (default <out>.key)");

    auto* decrypt_cmd = app.add_subcommand("decrypt", "decrypt an envelope");
    decrypt_cmd->add_option("--key", key_path, "key file")->required();
    decrypt_cmd->add_option("--in", in_path, "envelope file")->required();
    decrypt_cmd->add_option("--out-file", out_file, "plaintext destination")->required();

    auto* perturb_cmd = app.add_subcommand("perturb", "Laplace-noise image perturbation");
    perturb_cmd->add_option("--bits", bits_path, "input bitstream")->required();
    perturb_cmd->add_option("--in", in_path, "input PNM image")->required();
    perturb_cmd->add_option("--out-file", out_file, "perturbed image")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    g.seed_given = seed_opt->count() > 0;

    try {
        if (simulate_cmd->parsed()) return cmd_simulate(g);
        if (extract_cmd->parsed()) return cmd_extract(g, trace_path, ascii);
        if (analyze_cmd->parsed()) return cmd_analyze(g, trace_path, bits_path);
        if (nist_cmd->parsed()) return cmd_nist(g, bits_path);
        if (expand_cmd->parsed()) return cmd_expand(g, bits_path, n_out, ascii);
        if (bitmap_cmd->parsed()) return cmd_bitmap(g, bits_path, side);
        if (otp_cmd->parsed()) return cmd_otp(g, bits_path, length, count, charset);
        if (encrypt_cmd->parsed()) return cmd_encrypt(g, bits_path, in_path, out_file, key_path);
        if (decrypt_cmd->parsed()) return cmd_decrypt(g, key_path, in_path, out_file);
        if (perturb_cmd->parsed()) return cmd_perturb(g, bits_path, in_path, out_file);
        std::fprintf(stderr, "error: no subcommand\n");
        return 2;
    } catch (const AuthError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const PoolExhausted& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const FormatError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

} // namespace motrng
