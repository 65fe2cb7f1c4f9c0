#pragma once

#include "stylemark/recording.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace stylemark {

inline constexpr int kFingerprintSchemaVersion = 1;
inline constexpr int kDefaultNgram = 3;

// How several fingerprints are combined into one.
//   Pooled:   counts are summed and renormalized (prob == count / total_count).
//   Averaged: probabilities are the unweighted mean of the inputs' probability
//             vectors; counts are still summed for bookkeeping.
enum class Weighting { Pooled, Averaged };

std::string_view to_string(Weighting w);

struct FingerprintEntry {
  std::int64_t count = 0;
  double prob = 0.0;

  bool operator==(const FingerprintEntry&) const = default;
};

// Sparse probability vector over ordered action n-grams (n = 3 by default).
// Keys are the action keys ("st/sub/mv") joined with '|'; absent keys have probability 0.
struct Fingerprint {
  std::string player_id;
  std::string context;
  int n = kDefaultNgram;
  SequenceMode mode = SequenceMode::Dedup;
  Weighting weighting = Weighting::Pooled;
  std::int64_t total_count = 0;
  std::map<std::string, FingerprintEntry> entries;

  bool operator==(const Fingerprint&) const = default;

  bool empty() const { return total_count == 0; }
};

std::string ngram_key(std::span<const ActionTriple> actions);

// Counts every length-n window inside each sequence; windows never cross sequences.
// Throws ValidationError if a sequence belongs to another player or n < 1.
Fingerprint build_fingerprint(std::span<const ActionSequence> seqs, std::string_view player_id,
                              std::string_view context, int n = kDefaultNgram,
                              SequenceMode mode = SequenceMode::Dedup);

// Throws ValidationError on mismatched player_id, n or mode, or an empty input list.
// The result takes the shared context when all inputs agree, otherwise "merged".
Fingerprint merge_fingerprints(std::span<const Fingerprint> fps,
                               Weighting weighting = Weighting::Pooled);

// Cosine of the probability vectors, clamped to [0, 1].
// Throws ValidationError("empty fingerprint") if either side is empty.
double cosine_similarity(const Fingerprint& a, const Fingerprint& b);

// Same, over raw counts instead of probabilities.
double cosine_similarity_counts(const Fingerprint& a, const Fingerprint& b);

nlohmann::ordered_json fingerprint_to_json(const Fingerprint& fp);
// Validates structure and invariants; throws ValidationError.
Fingerprint fingerprint_from_json(const nlohmann::json& j);

}  // namespace stylemark
