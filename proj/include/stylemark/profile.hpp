#pragma once

#include "stylemark/fingerprint.hpp"
#include "stylemark/recording.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stylemark {

inline constexpr std::string_view kGeneralizedContext = "generalized";

struct BehaviorProfile {
  std::string player_id;
  std::string context;  // opponent id, or "generalized"
  Fingerprint fingerprint;
  int match_count = 0;

  bool operator==(const BehaviorProfile&) const = default;

  // "player" for generalized profiles, "player@opponent" otherwise.
  std::string label() const;
};

// Fingerprint JSON plus "match_count".
nlohmann::ordered_json profile_to_json(const BehaviorProfile& profile);
BehaviorProfile profile_from_json(const nlohmann::json& j);

// Accumulates per-(player, opponent) fingerprints one recording at a time, so that
// large recording sets never have to be held in memory together.
class ProfileBuilder {
 public:
  explicit ProfileBuilder(SequenceMode mode = SequenceMode::Dedup, int n = kDefaultNgram)
      : mode_(mode), n_(n) {}

  void add(const MatchRecording& rec);
  // Pools an already built per-match fingerprint (context = opponent).
  void add(const Fingerprint& match_fp);

  bool has_player(std::string_view player_id) const;
  std::vector<std::string> players() const;

  // Sorted by opponent id. Throws ValidationError if the player was never seen.
  std::vector<BehaviorProfile> opponent_profiles(std::string_view player_id) const;

 private:
  struct Slot {
    Fingerprint fingerprint;
    int match_count = 0;
  };

  SequenceMode mode_;
  int n_;
  // player -> opponent -> pooled fingerprint
  std::map<std::string, std::map<std::string, Slot>, std::less<>> slots_;
};

// One profile per distinct opponent, each pooling every round of every match against it.
// Recordings without the player are skipped; an empty list yields no profiles.
// Throws ValidationError if the list is non-empty and the player appears in none of it.
std::vector<BehaviorProfile> build_opponent_profiles(std::span<const MatchRecording> recs,
                                                     std::string_view player_id,
                                                     SequenceMode mode = SequenceMode::Dedup);

// Merges per-opponent profiles of one player; context becomes "generalized".
BehaviorProfile build_generalized_profile(std::span<const BehaviorProfile> profiles,
                                          Weighting weighting = Weighting::Pooled);

struct ConsistencyReport {
  std::string player_id;
  double min = 0.0;
  double max = 0.0;
  double avg = 0.0;
  std::size_t pair_count = 0;
};

// Min / max / mean of a set of pairwise similarity scores (at least one).
ConsistencyReport consistency_from_scores(std::string_view player_id, std::span<const double> scores);

// Over all C(k, 2) pairwise cosines among k >= 2 profiles of the same player.
ConsistencyReport consistency_stats(std::span<const BehaviorProfile> profiles);

struct SimilarityMatrix {
  std::vector<std::string> labels;
  std::vector<double> values;  // row-major, labels.size()^2

  std::size_t size() const { return labels.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * labels.size() + j]; }
  double& at(std::size_t i, std::size_t j) { return values[i * labels.size() + j]; }
  std::optional<std::size_t> index_of(std::string_view label) const;

  // Throws ValidationError unless square, symmetric, unit-diagonal and within [0, 1]
  // (to the given tolerance) with unique labels.
  void validate(double tolerance = 0.0) const;
};

// Pairwise cosine over labelled fingerprints. Every entry is computed independently, so
// the result does not depend on `jobs`.
SimilarityMatrix similarity_matrix(std::span<const std::pair<std::string, Fingerprint>> items,
                                   unsigned jobs = 1);
SimilarityMatrix similarity_matrix(std::span<const BehaviorProfile> profiles, unsigned jobs = 1);

enum class Group { Human, Ai };

struct CrossGroupRow {
  std::string label;
  Group group = Group::Human;
  double similarity_with_ai = 0.0;
  // Absent when no other human label exists.
  std::optional<double> avg_with_humans;
  std::optional<double> median_with_humans;
};

// Per label: mean similarity to the AI labels (1.0 for the AI label itself when it is the
// only one), and the mean and median similarity to the other human labels.
// Median of an even count is the mean of the two central values.
std::vector<CrossGroupRow> cross_group_summary(const SimilarityMatrix& matrix,
                                               const std::map<std::string, Group, std::less<>>& groups);

double median(std::vector<double> values);

struct IdentificationResult {
  std::string query_label;
  std::vector<std::pair<std::string, double>> ranking;  // similarity desc, then label asc

  const std::pair<std::string, double>& best() const { return ranking.front(); }
};

IdentificationResult identify_player(const Fingerprint& query,
                                     std::span<const BehaviorProfile> gallery,
                                     std::string_view query_label = "query");

struct SeparationRow {
  std::string player_id;
  double same = 0.0;   // mean cosine between the player's own per-opponent profiles
  double cross = 0.0;  // mean cosine between its profiles and every other player's
  double gap() const { return same - cross; }
};

// One row per player, from per-opponent profiles. A player needs at least two contexts
// and at least one other player must exist. Throws ValidationError otherwise.
std::vector<SeparationRow> separation_summary(std::span<const BehaviorProfile> profiles);

// Fingerprint of one player in one match; context is the opponent.
struct MatchFingerprint {
  std::string match_id;
  Fingerprint fingerprint;
};

// Both players' fingerprints of a recording.
std::vector<MatchFingerprint> match_fingerprints(const MatchRecording& rec,
                                                 SequenceMode mode = SequenceMode::Dedup,
                                                 int n = kDefaultNgram);

struct LeaveOneOutResult {
  std::vector<std::string> players;         // sorted
  std::vector<std::vector<int>> confusion;  // [actual][predicted], indices into players

  int total() const;
  int correct() const;
  double accuracy() const;
  // Share of the player's held-out matches identified as that player.
  double accuracy_of(std::string_view player) const;
};

// Each match in turn is removed from every player's pooled generalized profile and both of
// its per-player fingerprints are identified against what remains. Players left with no
// data are dropped from that query's gallery. Throws ValidationError on an empty input.
LeaveOneOutResult leave_one_match_out(std::span<const MatchFingerprint> fps);

// Single-linkage clusters over edges with similarity >= threshold. Members follow label
// order; clusters are sorted by their first member.
std::vector<std::vector<std::string>> partition_by_threshold(const SimilarityMatrix& matrix,
                                                             double threshold);

}  // namespace stylemark
