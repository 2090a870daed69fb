#pragma once

#include <cstddef>
#include <functional>
#include <unordered_map>

#include "psb/bitstring.hpp"
#include "psb/rng.hpp"
#include "psb/testlab.hpp"

namespace psb {

// GGM key: the root of the binary tree of a length-doubling generator.
struct GgmKey {
    std::size_t k = 0;   // input and output length in bits, >= 8
    BitString root_seed; // length k
};

// Deterministic 2x expansion of s. For |s| >= 32 the seed feeds the
// squaring generator directly (entropy half + GL-mask half); shorter seeds
// are first stretched to 32 bits so the internal Blum primes stay >= 8 bits.
std::pair<BitString, BitString> doubling_prg(const BitString& s);

// Walk the tree MSB-first: left half on 0, right half on 1.
BitString ggm_eval(const GgmKey& key, const BitString& x);

// Same walk, counting doubling_prg calls (instrumentation).
BitString ggm_eval_counted(const GgmKey& key, const BitString& x, std::size_t& doubling_calls);

// Memoizing evaluator: shared input prefixes reuse tree nodes.
class GgmTreeCache {
public:
    explicit GgmTreeCache(GgmKey key) : key_(std::move(key)) {}
    BitString eval(const BitString& x);
    std::size_t doubling_calls() const { return doubling_calls_; }

private:
    GgmKey key_;
    std::unordered_map<std::string, std::pair<BitString, BitString>> nodes_;
    std::size_t doubling_calls_ = 0;
};

// Lazily-sampled uniform function {0,1}^k -> {0,1}^k: fresh uniform answer
// per new query, memoized for repeats.
class LazyRandomFunction {
public:
    LazyRandomFunction(std::size_t k, SeededRng rng) : k_(k), rng_(std::move(rng)) {}
    BitString query(const BitString& x);

private:
    std::size_t k_;
    SeededRng rng_;
    std::unordered_map<std::string, BitString> memo_;
};

// Black-box access with a query budget; throws budget-exhausted.
class FunctionOracle {
public:
    FunctionOracle(std::size_t k, std::function<BitString(const BitString&)> fn,
                   std::size_t budget = 1 << 16)
        : k_(k), fn_(std::move(fn)), budget_(budget) {}

    BitString query(const BitString& x);
    std::size_t k() const { return k_; }
    std::size_t queries_used() const { return used_; }

private:
    std::size_t k_;
    std::function<BitString(const BitString&)> fn_;
    std::size_t budget_;
    std::size_t used_ = 0;
};

using FunctionTest = std::function<int(FunctionOracle&)>;
using FunctionSampler = std::function<std::function<BitString(const BitString&)>(SeededRng&)>;

// |acceptance on family members - acceptance on lazily-sampled random
// functions|, with CI.
AdvantageEstimate function_statistical_test(const FunctionTest& test,
                                            const FunctionSampler& family_sampler, std::size_t k,
                                            std::size_t trials, SeededRng& rng,
                                            std::size_t query_budget = 1 << 16);

// GGM family sampler for function_statistical_test.
FunctionSampler ggm_family(std::size_t k);

} // namespace psb
