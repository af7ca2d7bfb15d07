#pragma once

// The small deterministic instance corpus shared by the soundness and round-trip checks.

#include <lcr/caps.hpp>
#include <lcr/label_cover.hpp>

#include <string>
#include <vector>

namespace lcr {

struct CorpusEntry {
    std::string name;
    CspInstance csp;
};

// Integer atoms; every tuple of the scoped product is kept with probability density.
// Draws are reduced with plain modulo so output does not depend on the standard library.
auto random_csp(std::uint64_t seed, std::uint32_t max_vars, std::uint32_t max_domain, std::uint32_t max_constraints,
    std::uint32_t max_arity, double density = 0.5) -> CspInstance;

// Worked fixtures, random CSPs, linear systems over Z_4 and Z_3 and D4 coset CSPs,
// all with at most three variables and arity at most two.
auto small_corpus() -> std::vector<CorpusEntry>;

struct SoundnessReport {
    bool satisfiable = false;
    std::size_t checks = 0;
    // Relaxations whose system exceeded the caps and were not run.
    std::size_t skipped = 0;
    std::vector<std::string> violations;
};

// Runs AC, Z_p for p in {2, 3, 5}, Z_n for n in {4, 6}, the saturated levels k in {2, 3}
// over Z_2 and Z_3, and the partial-solution levels 1 and 2 over Z_2 and Z_3. On a
// satisfiable instance every refutation is recorded as a violation.
auto check_soundness(const CspInstance & csp, const Caps & caps = Caps{}) -> SoundnessReport;

}
