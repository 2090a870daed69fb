// psb command-line front end: key generation, encryption, generators,
// attacks, and the reproducible demo pipelines. All randomized subcommands
// honor --seed (hex) and are then bit-reproducible.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "psb/encryption.hpp"
#include "psb/hardcore.hpp"
#include "psb/natural.hpp"
#include "psb/numeric.hpp"
#include "psb/owf.hpp"
#include "psb/prf.hpp"
#include "psb/prg.hpp"
#include "psb/rng.hpp"
#include "psb/testlab.hpp"
#include "psb/trapdoor.hpp"

namespace {

using namespace psb;

SeededRng make_rng(std::string seed_hex) {
    if (seed_hex.empty()) {
        std::random_device rd;
        char buf[40];
        std::snprintf(buf, sizeof buf, "%08x%08x%08x%08x", rd(), rd(), rd(), rd());
        seed_hex = buf;
    }
    return SeededRng(seed_hex);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("invalid-path", "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("invalid-path", "cannot write " + path);
    out << data;
}

std::vector<std::uint8_t> to_byte_vec(const std::string& s) {
    return std::vector<std::uint8_t>(s.begin(), s.end());
}

Family parse_family(const std::string& name) {
    if (name == "dl") return Family::DL;
    if (name == "squaring") return Family::SQUARING;
    if (name == "ajtai") return Family::AJTAI;
    if (name == "mult") return Family::MULT;
    throw Error("invalid-parameter", "unknown family: " + name);
}

int run(int argc, char** argv) {
    CLI::App app{
        "Provable-security building blocks: trapdoor encryption, generators, "
        "attacks, and reduction demos.\n"
        "Byte inputs are interpreted bit-wise MSB-first per byte."};
    app.require_subcommand(1);
    std::string seed_hex;
    app.add_option("--seed", seed_hex, "master seed (hex); makes the run reproducible")
        ->envname("PSB_SEED");

    // keygen
    auto* keygen = app.add_subcommand("keygen", "generate a key pair");
    std::string scheme = "gm";
    std::size_t bits = 32;
    std::string out_base = "key";
    bool reveal = false;
    keygen->add_option("--scheme", scheme, "scheme (gm)");
    keygen->add_option("--bits", bits, "modulus size in bits");
    keygen->add_option("--out", out_base, "output basename (.pub/.sec)");
    keygen->add_flag("--reveal-secret", reveal, "also print the secret key to stdout");

    // encrypt / decrypt
    auto* encrypt = app.add_subcommand("encrypt", "encrypt a file bit by bit");
    std::string key_path, in_path, out_path;
    encrypt->add_option("--key", key_path, "public key file")->required();
    encrypt->add_option("--in", in_path, "plaintext file (raw bytes)")->required();
    encrypt->add_option("--out", out_path, "ciphertext file")->required();

    auto* decrypt = app.add_subcommand("decrypt", "decrypt a ciphertext file");
    std::string d_key, d_in, d_out;
    decrypt->add_option("--key", d_key, "secret key file")->required();
    decrypt->add_option("--in", d_in, "ciphertext file")->required();
    decrypt->add_option("--out", d_out, "plaintext output (default: stdout)");

    // prg
    auto* prg = app.add_subcommand("prg", "run a generator and print its bits");
    std::string gen = "sprg";
    std::size_t count = 64, kmod = 16;
    std::string taps_str, lfsr_seed_str;
    std::string lcg_m = "0", lcg_a = "0", lcg_b = "0", lcg_x0 = "0";
    std::string prg_seed_hex;
    prg->add_option("--gen", gen, "sprg | lfsr | lcg");
    prg->add_option("--count", count, "output length in bits (lcg: in values)");
    prg->add_option("--kmod", kmod, "sprg modulus size in bits");
    prg->add_option("--prg-seed", prg_seed_hex, "sprg seed (hex), default derived from --seed");
    prg->add_option("--taps", taps_str, "lfsr feedback taps as 0/1 string");
    prg->add_option("--lfsr-seed", lfsr_seed_str, "lfsr fill as 0/1 string");
    prg->add_option("--modulus", lcg_m, "lcg modulus (decimal)");
    prg->add_option("--mult", lcg_a, "lcg multiplier (decimal)");
    prg->add_option("--inc", lcg_b, "lcg increment (decimal)");
    prg->add_option("--x0", lcg_x0, "lcg seed (decimal)");

    // break-lfsr / break-lcg
    auto* blfsr = app.add_subcommand("break-lfsr", "recover (L, taps) from a bit stream");
    std::string stream_bits, stream_file;
    blfsr->add_option("--bits", stream_bits, "stream as 0/1 string");
    blfsr->add_option("--in", stream_file, "file containing the 0/1 stream");

    auto* blcg = app.add_subcommand("break-lcg", "recover (a, b) and predict the next output");
    std::string blcg_m, blcg_outputs;
    blcg->add_option("--modulus", blcg_m, "known modulus (decimal)")->required();
    blcg->add_option("--outputs", blcg_outputs, "x0,x1,x2 (decimal, comma separated)")->required();

    // prf
    auto* prf = app.add_subcommand("prf", "evaluate the tree-based PRF");
    std::size_t prf_k = 16;
    std::string prf_input;
    prf->add_option("--k", prf_k, "block size in bits (key derived from --seed)");
    prf->add_option("--input", prf_input, "input as 0/1 string of length k")->required();

    // owf
    auto* owf = app.add_subcommand("owf", "sample and evaluate a one-way function");
    std::string family_name_arg = "mult";
    std::size_t owf_bits = 16;
    bool owf_invert = false;
    owf->add_option("--family", family_name_arg, "dl | squaring | ajtai | mult");
    owf->add_option("--bits", owf_bits, "security parameter");
    owf->add_flag("--invert", owf_invert, "brute-force invert the sampled image (small sizes)");

    // gl-decode
    auto* gl = app.add_subcommand("gl-decode", "list-decode a noisy inner-product oracle");
    std::size_t gl_k = 16;
    double gl_eps = 0.2, gl_delta = 0.1;
    gl->add_option("--k", gl_k, "secret length in bits");
    gl->add_option("--epsilon", gl_eps, "oracle advantage");
    gl->add_option("--delta", gl_delta, "allowed failure probability");

    // distinguish
    auto* dist = app.add_subcommand("distinguish", "statistical battery against uniform");
    std::string dist_gen = "sprg";
    std::size_t dist_len = 128, dist_samples = 2000, dist_seedlen = 64;
    dist->add_option("--gen", dist_gen, "sprg | lfsr");
    dist->add_option("--len", dist_len, "output length per sample");
    dist->add_option("--samples", dist_samples, "samples per test");
    dist->add_option("--seed-bits", dist_seedlen, "generator seed length");

    // demo-reduction
    auto* demo_red = app.add_subcommand("demo-reduction",
                                        "hybrid argument: distinguisher to bit predictor");
    std::size_t kmsg = 8, red_trials = 1000;
    double red_delta = 0.2;
    demo_red->add_option("--kmsg", kmsg, "message length in bits");
    demo_red->add_option("--delta", red_delta, "planted leak advantage");
    demo_red->add_option("--trials", red_trials, "samples per hybrid");

    // demo-rabin
    auto* demo_rabin = app.add_subcommand("demo-rabin",
                                          "factoring from a square-root oracle");
    std::size_t rabin_bits = 32, rabin_trials = 100;
    demo_rabin->add_option("--bits", rabin_bits, "modulus size in bits");
    demo_rabin->add_option("--trials", rabin_trials, "independent instances");

    // vectors
    auto* vectors = app.add_subcommand("vectors", "print shared cross-language test vectors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1; // usage errors are exit 1
    }
    SeededRng rng = make_rng(seed_hex);

    if (*keygen) {
        if (scheme != "gm" && scheme != "qr")
            throw Error("invalid-parameter", "unknown scheme: " + scheme);
        GmKeypair kp = gm_keygen(bits, rng);
        write_file(out_base + ".pub", serialize_public_key(kp.public_key));
        write_file(out_base + ".sec", serialize_secret_key(kp.secret_key));
        std::cout << "wrote " << out_base << ".pub " << out_base << ".sec\n";
        std::cout << "n = " << to_hex(kp.public_key.n) << "\n";
        if (reveal)
            std::cout << serialize_secret_key(kp.secret_key);
        return 0;
    }
    if (*encrypt) {
        QrPublicKey pk = parse_public_key(read_file(key_path));
        BitString m = BitString::from_bytes(to_byte_vec(read_file(in_path)));
        if (m.empty())
            throw Error("invalid-message", "plaintext file is empty");
        GmCiphertext c = gm_encrypt(pk, m, rng);
        write_file(out_path, serialize_ciphertext(c, pk.n));
        std::cout << "encrypted " << m.size() << " bits\n";
        return 0;
    }
    if (*decrypt) {
        QrTrapdoor sk = parse_secret_key(read_file(d_key));
        Natural n;
        GmCiphertext c = parse_ciphertext(read_file(d_in), n);
        if (n != sk.n())
            throw Error("malformed-ciphertext", "ciphertext modulus does not match the key");
        BitString m = gm_decrypt(sk, c);
        if (m.size() % 8 == 0) {
            auto bytes = m.to_bytes();
            std::string data(bytes.begin(), bytes.end());
            if (d_out.empty())
                std::cout << data;
            else
                write_file(d_out, data);
        } else {
            if (d_out.empty())
                std::cout << m.to_string() << "\n";
            else
                write_file(d_out, m.to_string() + "\n");
        }
        return 0;
    }
    if (*prg) {
        if (gen == "sprg") {
            BitString seed = prg_seed_hex.empty() ? rng.next_bits(4 * kmod)
                                                  : BitString::from_hex(prg_seed_hex);
            std::cout << sprg_generate(seed, count, kmod).to_string() << "\n";
        } else if (gen == "lfsr") {
            LfsrSpec spec{BitString::from_string(taps_str).size(),
                          BitString::from_string(taps_str), BitString::from_string(lfsr_seed_str)};
            std::cout << lfsr_generate(spec, count).to_string() << "\n";
        } else if (gen == "lcg") {
            LcgSpec spec{Natural(lcg_m), Natural(lcg_a), Natural(lcg_b), Natural(lcg_x0)};
            auto values = lcg_generate(spec, count);
            for (std::size_t i = 0; i < values.size(); ++i)
                std::cout << values[i] << (i + 1 == values.size() ? "\n" : " ");
        } else {
            throw Error("invalid-parameter", "unknown generator: " + gen);
        }
        return 0;
    }
    if (*blfsr) {
        std::string raw = stream_bits;
        if (raw.empty() && !stream_file.empty()) {
            raw = read_file(stream_file);
            while (!raw.empty() && (raw.back() == '\n' || raw.back() == '\r'))
                raw.pop_back();
        }
        BmResult bm = berlekamp_massey(BitString::from_string(raw));
        std::cout << "L=" << bm.complexity << " taps=" << bm.taps.to_string() << "\n";
        return 0;
    }
    if (*blcg) {
        std::vector<Natural> xs;
        std::stringstream ss(blcg_outputs);
        std::string tok;
        while (std::getline(ss, tok, ','))
            xs.push_back(Natural(tok));
        if (xs.size() < 3)
            throw Error("invalid-parameter", "break-lcg needs three consecutive outputs");
        Natural m(blcg_m);
        auto [a, b] = lcg_recover(xs[0], xs[1], xs[2], m);
        Natural next = (a * xs[2] + b) % m;
        std::cout << "a=" << a << " b=" << b << " next=" << next << "\n";
        return 0;
    }
    if (*prf) {
        GgmKey key{prf_k, rng.next_bits(prf_k)};
        BitString x = BitString::from_string(prf_input);
        std::cout << ggm_eval(key, x).to_string() << "\n";
        return 0;
    }
    if (*owf) {
        OwfIndex index = sample_index(parse_family(family_name_arg), owf_bits, rng);
        DomainElement x = sample_domain(index, rng);
        Image y = evaluate(index, x);
        std::cout << index.serialize();
        std::cout << "image = " << y.serialize() << "\n";
        if (owf_invert) {
            auto pre = brute_force_invert(index, y, Natural(1) << 24);
            std::cout << "inverted = " << (pre.has_value() ? "yes" : "no") << "\n";
        }
        return 0;
    }
    if (*gl) {
        BitString x = rng.next_bits(gl_k);
        SeededRng noise = rng.fork(7);
        PredictionOracle oracle{
            [&x, &noise, gl_eps](const BitString& r) {
                int honest = gl_predicate(x, r);
                return noise.next_double() < 0.5 + gl_eps ? honest : 1 - honest;
            },
            gl_eps};
        auto list = gl_list_decode(oracle, gl_k, gl_eps, gl_delta, rng);
        bool found = false;
        for (const auto& cand : list)
            found = found || cand == x;
        std::cout << "list_size=" << list.size() << " recovered=" << (found ? "yes" : "no")
                  << "\n";
        return 0;
    }
    if (*dist) {
        Sampler sampler;
        if (dist_gen == "sprg") {
            std::size_t seed_bits = dist_seedlen;
            std::size_t len = dist_len;
            sampler = Sampler{len, [seed_bits, len](SeededRng& r) {
                                  return sprg_generate(r.next_bits(seed_bits), len,
                                                       seed_bits / 2 - seed_bits / 2 % 2);
                              }};
        } else if (dist_gen == "lfsr") {
            std::size_t L = dist_seedlen;
            std::size_t len = dist_len;
            sampler = Sampler{len, [L, len](SeededRng& r) {
                                  BitString taps = r.next_bits(L);
                                  taps.set(L - 1, 1);
                                  BitString fill = r.next_bits(L);
                                  if (fill.count_ones() == 0)
                                      fill.set(0, 1);
                                  return lfsr_generate(LfsrSpec{L, taps, fill}, len);
                              }};
        } else {
            throw Error("invalid-parameter", "unknown generator: " + dist_gen);
        }
        for (const auto& entry : battery(sampler, dist_samples, rng))
            std::cout << entry.estimate.serialize(entry.name) << "\n";
        return 0;
    }
    if (*demo_red) {
        DemoReport report = demo_reduction(kmsg, red_delta, red_trials, rng);
        std::cout << report.serialize();
        return 0;
    }
    if (*demo_rabin) {
        std::size_t total = 0;
        for (std::size_t i = 0; i < rabin_trials; ++i) {
            SeededRng inst = rng.fork(1000 + i);
            auto [pk, td] = qr_keygen(rabin_bits, inst);
            SeededRng oracle_rng = inst.fork(1);
            SqrtOracle oracle = [&td, &oracle_rng](const Natural& y) {
                auto roots = rabin_sqrt(td, y);
                return roots[static_cast<std::size_t>(oracle_rng.uniform_below(4))];
            };
            total += factor_from_sqrt_oracle(pk, oracle, inst, 1000).trials;
        }
        std::printf("instances=%zu mean_trials=%.4f\n", rabin_trials,
                    static_cast<double>(total) / static_cast<double>(rabin_trials));
        return 0;
    }
    if (*vectors) {
        std::cout << "mod_inv(33, 101) = " << mod_inv(33, 101) << "\n";
        std::cout << "crt_combine(1, 3, 2, 7) = " << crt_combine(1, 3, 2, 7) << "\n";
        std::cout << "jacobi(17, 21) = " << jacobi(17, 21) << "\n";
        std::cout << "jacobi(2, 21) = " << jacobi(2, 21) << "\n";
        QrTrapdoor toy{BlumFactorization{3, 7}};
        auto roots = rabin_sqrt(toy, 16);
        std::cout << "sqrt(16) mod 21 = ";
        for (const auto& r : roots)
            std::cout << r << " ";
        std::cout << "\n";
        std::cout << "QR_21 = ";
        for (const auto& x : enumerate_jn_plus1(21))
            if (qr_decide_with_trapdoor(toy, QrElement{x}) == 0)
                std::cout << x << " ";
        std::cout << "\n";
        BitString lfsr_out = lfsr_generate(
            LfsrSpec{4, BitString::from_string("1001"), BitString::from_string("0001")}, 16);
        std::cout << "lfsr(taps=1001, seed=0001, 16) = " << lfsr_out.to_string() << "\n";
        return 0;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const psb::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
