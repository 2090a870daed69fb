#pragma once

#include <functional>
#include <string>
#include <vector>

#include "psb/bitstring.hpp"
#include "psb/natural.hpp"
#include "psb/rng.hpp"

namespace psb {

// Fixed-output-length distribution we can draw from.
struct Sampler {
    std::size_t output_length = 0;
    std::function<BitString(SeededRng&)> draw;
};

Sampler uniform_sampler(std::size_t length);

enum class Verdict { DISTINGUISHED, NOT_DISTINGUISHED };

// Empirically measured advantage. Asymptotic "negligible" is replaced by
// the recorded threshold policy; no bare numbers leave the module.
struct AdvantageEstimate {
    double value = 0.0;
    double ci_half_width = 0.0; // 1.96 / sqrt(samples)
    std::size_t samples = 0;
    double threshold = 0.05;
    Verdict verdict = Verdict::NOT_DISTINGUISHED;

    std::string serialize(const std::string& test_name) const;
};

AdvantageEstimate make_estimate(double value, std::size_t samples, double threshold = 0.05);

using StatisticalTest = std::function<int(const BitString&)>;

// |mean test(a) - mean test(b)| over `samples` draws per side, paired
// seed-split so a and b consume independent streams.
AdvantageEstimate estimate_advantage(const Sampler& a, const Sampler& b,
                                     const StatisticalTest& test, std::size_t samples,
                                     SeededRng& rng, double threshold = 0.05);

// Finite distribution with exact rational probabilities summing to 1.
struct ExplicitDistribution {
    std::vector<std::pair<BitString, Rational>> support;
    void validate() const;
};

// Total variation distance, exact rational arithmetic.
Rational statistical_distance_exact(const ExplicitDistribution& x, const ExplicitDistribution& y);

// Fixed battery: monobit, serial two-bit, longest-run, each run against an
// internal uniform sampler of the same length.
struct BatteryEntry {
    std::string name;
    AdvantageEstimate estimate;
};
std::vector<BatteryEntry> battery(const Sampler& sampler, std::size_t samples, SeededRng& rng,
                                  double threshold = 0.05);

// The battery's individual tests, exposed for reuse.
int monobit_test(const BitString& s);
int serial_test(const BitString& s);
int longest_run_test(const BitString& s);

} // namespace psb
