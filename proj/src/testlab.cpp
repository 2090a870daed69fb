#include "psb/testlab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "psb/error.hpp"

namespace psb {

Sampler uniform_sampler(std::size_t length) {
    return Sampler{length, [length](SeededRng& rng) { return rng.next_bits(length); }};
}

std::string AdvantageEstimate::serialize(const std::string& test_name) const {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "test=%s advantage=%.6f ci=%.6f samples=%zu verdict=%s",
                  test_name.c_str(), value, ci_half_width, samples,
                  verdict == Verdict::DISTINGUISHED ? "DISTINGUISHED" : "NOT_DISTINGUISHED");
    return buf;
}

AdvantageEstimate make_estimate(double value, std::size_t samples, double threshold) {
    AdvantageEstimate e;
    e.value = value;
    e.samples = samples;
    e.ci_half_width = 1.96 / std::sqrt(static_cast<double>(samples));
    e.threshold = threshold;
    e.verdict = (value - e.ci_half_width > threshold) ? Verdict::DISTINGUISHED
                                                      : Verdict::NOT_DISTINGUISHED;
    return e;
}

AdvantageEstimate estimate_advantage(const Sampler& a, const Sampler& b,
                                     const StatisticalTest& test, std::size_t samples,
                                     SeededRng& rng, double threshold) {
    if (a.output_length != b.output_length)
        throw Error("incompatible-samplers", "samplers emit different lengths");
    if (samples < 100) throw Error("invalid-parameter", "estimate_advantage needs samples >= 100");
    SeededRng rng_a = rng.fork(1);
    SeededRng rng_b = rng.fork(2);
    std::size_t hits_a = 0, hits_b = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        if (test(a.draw(rng_a)) != 0) ++hits_a;
        if (test(b.draw(rng_b)) != 0) ++hits_b;
    }
    double diff = std::abs(static_cast<double>(hits_a) - static_cast<double>(hits_b)) /
                  static_cast<double>(samples);
    return make_estimate(diff, samples, threshold);
}

void ExplicitDistribution::validate() const {
    Rational total = 0;
    std::map<std::string, int> seen;
    std::size_t len = support.empty() ? 0 : support.front().first.size();
    for (const auto& [value, prob] : support) {
        if (prob < 0 || prob > 1) throw Error("malformed-distribution", "probability outside [0,1]");
        if (value.size() != len) throw Error("malformed-distribution", "mixed support lengths");
        if (++seen[value.to_string()] > 1)
            throw Error("malformed-distribution", "duplicate support entry");
        total += prob;
    }
    if (total != 1) throw Error("malformed-distribution", "probabilities do not sum to 1");
}

Rational statistical_distance_exact(const ExplicitDistribution& x, const ExplicitDistribution& y) {
    x.validate();
    y.validate();
    if (!x.support.empty() && !y.support.empty() &&
        x.support.front().first.size() != y.support.front().first.size())
        throw Error("malformed-distribution", "supports over different lengths");
    std::map<std::string, Rational> px, py;
    for (const auto& [v, p] : x.support) px[v.to_string()] = p;
    for (const auto& [v, p] : y.support) py[v.to_string()] = p;
    Rational sum = 0;
    for (const auto& [v, p] : px) {
        auto it = py.find(v);
        Rational q = it == py.end() ? Rational(0) : it->second;
        sum += p > q ? p - q : q - p;
    }
    for (const auto& [v, q] : py)
        if (px.find(v) == px.end()) sum += q;
    return sum / 2;
}

int monobit_test(const BitString& s) {
    return s.count_ones() * 2 >= s.size() ? 1 : 0;
}

int serial_test(const BitString& s) {
    if (s.size() < 2) return 0;
    std::size_t transitions = 0;
    for (std::size_t i = 1; i < s.size(); ++i) transitions += (s[i] != s[i - 1]);
    return transitions * 2 > (s.size() - 1) ? 1 : 0;
}

int longest_run_test(const BitString& s) {
    std::size_t longest = 0, run = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        run = (i > 0 && s[i] == s[i - 1]) ? run + 1 : 1;
        longest = std::max(longest, run);
    }
    std::size_t cutoff = 1;
    while ((std::size_t{1} << cutoff) < s.size()) ++cutoff; // ~log2(len)
    return longest >= cutoff ? 1 : 0;
}

std::vector<BatteryEntry> battery(const Sampler& sampler, std::size_t samples, SeededRng& rng,
                                  double threshold) {
    if (samples < 1000) throw Error("invalid-parameter", "battery needs samples >= 10^3");
    Sampler uniform = uniform_sampler(sampler.output_length);
    std::vector<BatteryEntry> out;
    SeededRng r1 = rng.fork(11), r2 = rng.fork(12), r3 = rng.fork(13);
    out.push_back({"monobit", estimate_advantage(sampler, uniform, monobit_test, samples, r1, threshold)});
    out.push_back({"serial", estimate_advantage(sampler, uniform, serial_test, samples, r2, threshold)});
    out.push_back({"longest-run",
                   estimate_advantage(sampler, uniform, longest_run_test, samples, r3, threshold)});
    return out;
}

} // namespace psb
