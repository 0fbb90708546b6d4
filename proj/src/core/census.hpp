#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "fp_linear.hpp"

namespace pc {

enum class CensusKind { hamming, complete };

struct ShardSpec {
    int index = 0;
    int count = 1;
};

// Exact census of codeword weights (Hamming) or types (complete). Entry keys
// are {w} for Hamming tables and the full residue-count tuple for complete
// tables; std::map keeps them in ascending lexicographic order, which the
// .cwe writer relies on for byte reproducibility.
struct CensusTable {
    CensusKind kind = CensusKind::hamming;
    int p = 2;
    int length = 0;
    int dim = 0;
    std::string fingerprint;
    std::map<std::vector<int>, BigUint> entries;

    // Full-space provenance: message vectors covered so far (p^dim when the
    // table is a completed full census). Unset (zero) for bounded tables.
    BigUint covered;
    // Bounded-census provenance.
    int wmax = -1;  // -1 for full censuses
    bool proven = false;

    bool is_full_kind() const { return wmax < 0; }
    bool full_cover() const;
    BigUint total_count() const;
    const BigUint* lookup(const std::vector<int>& key) const;
};

// Exhaustive traversal of the shard's slice of the message space in reflected
// base-p Gray order: successive words differ by one generator row times +-1,
// so each step is O(row support) with incremental type maintenance.
// Refuses when p^dim > budget * shard.count.
CensusTable full_census(const LinearCode& code, CensusKind kind, ShardSpec shard,
                        const BigUint& budget = BigUint(1000000000ull), int threads = 1);

// Pointwise sum; all metadata must match and only full-census shards merge.
CensusTable merge_censuses(const std::vector<CensusTable>& tables);

struct BoundedCensus {
    CensusTable hamming;   // weight -> count, weights 0..wmax
    CensusTable complete;  // type -> count for the same words
    bool proven = false;
    std::vector<std::vector<std::uint8_t>> words;  // filled when want_words
    // The completeness certificate: with the chosen information sets, any
    // codeword missed by the enumeration has weight >= proven_bound.
    int proven_bound = 0;
    int enumerated_weight = 0;  // per-set message weight cap t
    int num_information_sets = 0;
};

// All codewords of weight <= wmax, by information-set enumeration in the
// Brouwer-Zimmermann style: deterministic seeded pivoting chooses sets
// maximizing fresh coordinates; messages of weight <= t are expanded through
// each set until the missed-word lower bound exceeds wmax. Throws a guard
// error when the required enumeration volume is infeasible, unless
// allow_heuristic is set (then the result is marked unproven).
BoundedCensus bounded_weight_census(const LinearCode& code, int wmax, bool want_words,
                                    std::uint64_t seed = 0, int threads = 1,
                                    bool allow_heuristic = false,
                                    double volume_budget = 6e8);

// Planning probe: whether a proven bounded census to wmax fits the volume
// budget (same set selection as the real run, nothing enumerated).
bool bounded_census_feasible(const LinearCode& code, int wmax, std::uint64_t seed = 0,
                             double volume_budget = 6e8);

enum class TypeCountStrategy { automatic, full, bounded_weight };

// a_j: the number of codewords of the given type.
BigUint type_census(const LinearCode& code, const WeightType& type, TypeCountStrategy strategy,
                    std::uint64_t seed = 0, int threads = 1);

// .cwe serialization.
std::string to_cwe_text(const CensusTable& table);
CensusTable from_cwe_text(const std::string& text);
void write_cwe_file(const CensusTable& table, const std::string& path);
CensusTable read_cwe_file(const std::string& path);

// Process-wide memo for bounded censuses keyed by (code fingerprint, wmax,
// seed); repeated verification passes over the same code reuse one run.
const BoundedCensus& cached_bounded_census(const LinearCode& code, int wmax,
                                           std::uint64_t seed, int threads);

}  // namespace pc
