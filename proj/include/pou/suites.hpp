#pragma once

#include "pou/weights.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pou::suites {

// Seeded self-check suites. The CLI `check` subcommand and the acceptance
// binary both run these; keeping them in the library guarantees the two
// entry points test the same properties with the same generators.

inline constexpr int kMaxCounterexamples = 10;

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    long long cases = 0;
    long long passes = 0;
    long long failures = 0;
    std::vector<std::string> counterexamples; // first kMaxCounterexamples only
    std::vector<std::string> notes;

    // A report is only good if something actually ran.
    bool ok() const noexcept { return failures == 0 && passes > 0; }
};

const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);

// The case count each suite was designed around.
long long default_cases(const std::string& name);

// Runs one suite. Deterministic in (name, seed, cases): the parallel and the
// serial paths produce identical reports because every case owns its own RNG
// stream derived from (seed, case index).
SuiteReport run_suite(const std::string& name, std::uint64_t seed, long long cases,
                      bool parallel = true);

// Deterministic splitmix64-style generator. Hand-rolled on purpose: the
// standard distributions are not specified bit-for-bit across platforms, and
// suite reports must be reproducible everywhere.
class CaseRng {
public:
    CaseRng(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next();
    // Uniform-ish value in [0, bound); modulo bias at 64 bits is far below
    // anything a test generator cares about.
    std::uint64_t below(std::uint64_t bound);

private:
    std::uint64_t state_;
};

// First n lowercase letters as labels ("a", "b", ...); n <= 26.
std::vector<VertexLabel> alphabet_labels(int n);

// Support size uniform in [1, max_support], support uniform among subsets of
// that size, weights uniform integers in [1, 1000] normalized to mass 1.
ProbVector random_prob_vector(CaseRng& rng, int alphabet, int max_support);

// Chain length uniform in [1, max_chain]; keys are prefixes of a random
// permutation at distinct random cut sizes; weights as above.
DerivedVector random_chain_vector(CaseRng& rng, int alphabet, int max_chain);

} // namespace pou::suites
