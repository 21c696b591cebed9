#pragma once

#include <cstdint>
#include <vector>

#include "bicrit/core.hpp"

namespace bicrit {

// Enumeration budget. The oracles are exact; anything larger is refused.
inline constexpr int kOracleMaxJobs = 10;
inline constexpr int kOracleMaxMachines = 4;

struct OracleResult {
    Rat value;
    Schedule witness;
    std::uint64_t enumerated = 0;  // complete assignments evaluated
};

// Smith ordering on one machine: non-increasing w/p, jobs with p = 0 first,
// ties by job id. Optimal single-machine sequencing for the weighted sum.
std::vector<long> smith_order(const Instance& inst, const std::vector<long>& ids, int machine);

// Exact minimum makespan over all machine assignments of the given jobs.
// The witness packs each machine back-to-back from time 0 in id order.
OracleResult opt_makespan(const Instance& inst, const std::vector<long>& subset);
OracleResult opt_makespan(const Instance& inst);

// Exact minimum weighted completion sum: enumeration over assignments with
// each machine sequenced by Smith's rule (exchange-optimal per machine).
OracleResult opt_weighted_completion(const Instance& inst, const std::vector<long>& subset);
OracleResult opt_weighted_completion(const Instance& inst);

}  // namespace bicrit
