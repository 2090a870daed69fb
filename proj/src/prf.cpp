#include "psb/prf.hpp"

#include "psb/error.hpp"
#include <memory>

#include "psb/prg.hpp"

namespace psb {

std::pair<BitString, BitString> doubling_prg(const BitString& s) {
    const std::size_t k = s.size();
    if (k < 8)
        throw Error("parameter-too-small", "doubling_prg: seed must be at least 8 bits");
    BitString seed = s;
    std::size_t k_mod;
    if (k >= 32) {
        k_mod = k / 2;
        if (k_mod % 2 != 0)
            k_mod -= 1;
        if (k_mod < 16)
            k_mod = 16;
    } else {
        // Small seeds: stretch deterministically to 32 bits so the modulus
        // is built from two >= 8-bit primes.
        SeededRng stretch(s);
        seed = stretch.next_bits(32);
        k_mod = 16;
    }
    BitString out = sprg_generate(seed, 2 * k, k_mod);
    return {out.slice(0, k), out.slice(k, k)};
}

static void check_key(const GgmKey& key) {
    if (key.k < 8)
        throw Error("parameter-too-small", "ggm: k must be at least 8");
    if (key.root_seed.size() != key.k)
        throw Error("invalid-lengths", "ggm: root seed length must equal k");
}

BitString ggm_eval(const GgmKey& key, const BitString& x) {
    std::size_t calls = 0;
    return ggm_eval_counted(key, x, calls);
}

BitString ggm_eval_counted(const GgmKey& key, const BitString& x, std::size_t& doubling_calls) {
    check_key(key);
    if (x.size() != key.k)
        throw Error("invalid-lengths", "ggm: input length must equal k");
    BitString state = key.root_seed;
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto [left, right] = doubling_prg(state);
        ++doubling_calls;
        state = x[i] ? right : left;
    }
    return state;
}

BitString GgmTreeCache::eval(const BitString& x) {
    check_key(key_);
    if (x.size() != key_.k)
        throw Error("invalid-lengths", "ggm: input length must equal k");
    BitString state = key_.root_seed;
    std::string prefix;
    prefix.reserve(key_.k);
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto it = nodes_.find(prefix);
        if (it == nodes_.end()) {
            it = nodes_.emplace(prefix, doubling_prg(state)).first;
            ++doubling_calls_;
        }
        state = x[i] ? it->second.second : it->second.first;
        prefix.push_back(x[i] ? '1' : '0');
    }
    return state;
}

BitString LazyRandomFunction::query(const BitString& x) {
    if (x.size() != k_)
        throw Error("invalid-lengths", "random function: input length mismatch");
    auto key = x.to_string();
    auto it = memo_.find(key);
    if (it == memo_.end())
        it = memo_.emplace(key, rng_.next_bits(k_)).first;
    return it->second;
}

BitString FunctionOracle::query(const BitString& x) {
    if (used_ >= budget_)
        throw Error("budget-exhausted", "function oracle: query budget exhausted");
    if (x.size() != k_)
        throw Error("invalid-lengths", "function oracle: input length mismatch");
    ++used_;
    return fn_(x);
}

AdvantageEstimate function_statistical_test(const FunctionTest& test,
                                            const FunctionSampler& family_sampler, std::size_t k,
                                            std::size_t trials, SeededRng& rng,
                                            std::size_t query_budget) {
    if (trials < 20)
        throw Error("parameter-too-small", "function test: need at least 20 trials");
    SeededRng family_rng = rng.fork(21);
    SeededRng random_rng = rng.fork(22);
    std::size_t accept_family = 0, accept_random = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        auto fn = family_sampler(family_rng);
        FunctionOracle oracle(k, std::move(fn), query_budget);
        if (test(oracle) == 1)
            ++accept_family;
    }
    for (std::size_t t = 0; t < trials; ++t) {
        auto lazy = std::make_shared<LazyRandomFunction>(k, random_rng.fork(t));
        FunctionOracle oracle(
            k, [lazy](const BitString& x) { return lazy->query(x); }, query_budget);
        if (test(oracle) == 1)
            ++accept_random;
    }
    double p1 = static_cast<double>(accept_family) / static_cast<double>(trials);
    double p2 = static_cast<double>(accept_random) / static_cast<double>(trials);
    double adv = p1 > p2 ? p1 - p2 : p2 - p1;
    return make_estimate(adv, 2 * trials);
}

FunctionSampler ggm_family(std::size_t k) {
    return [k](SeededRng& rng) {
        GgmKey key{k, rng.next_bits(k)};
        auto cache = std::make_shared<GgmTreeCache>(std::move(key));
        return std::function<BitString(const BitString&)>(
            [cache](const BitString& x) { return cache->eval(x); });
    };
}

} // namespace psb
