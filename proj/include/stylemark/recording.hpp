#pragma once

#include "stylemark/action.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stylemark {

inline constexpr int kRecordingSchemaVersion = 1;

struct PlayerInfo {
  std::string id;
  std::string controller;  // "human" or "ai-<preset>"

  bool operator==(const PlayerInfo&) const = default;
};

struct PlayerFrame {
  ActionTriple action;
  int health = 0;
  double x = 0.0;

  bool operator==(const PlayerFrame&) const = default;
};

struct FrameSnapshot {
  std::int64_t frame_index = 0;
  std::array<PlayerFrame, 2> players;

  bool operator==(const FrameSnapshot&) const = default;

  double sim_time(int fps) const { return static_cast<double>(frame_index) / fps; }
};

// Knockout winner or time-out. A simultaneous double knockout is KoDraw.
enum class RoundOutcome { KoP1, KoP2, KoDraw, Timeout };

std::string_view to_string(RoundOutcome o);
std::optional<RoundOutcome> parse_outcome(std::string_view s);

struct Round {
  std::vector<FrameSnapshot> frames;
  // Absent when the capture ended before the round was closed.
  std::optional<RoundOutcome> outcome;

  bool operator==(const Round&) const = default;
};

struct MatchRecording {
  int schema_version = kRecordingSchemaVersion;
  std::string match_id;
  int fps = 60;
  int round_limit_seconds = 100;
  Alphabets alphabets;
  std::array<PlayerInfo, 2> players;
  std::vector<Round> rounds;

  bool operator==(const MatchRecording&) const = default;

  std::int64_t max_frames_per_round() const {
    return static_cast<std::int64_t>(fps) * round_limit_seconds;
  }

  // Index (0 or 1) of the player, or -1.
  int side_of(std::string_view player_id) const;
};

// Parses and fully validates a JSONL recording. Throws ParseError with the line number.
MatchRecording parse_recording(std::string_view content);

// Canonical serialization: fixed key order, shortest round-trip floats, '\n' per line.
// Throws ValidationError for recordings that cannot be written (no rounds, bad players).
std::string write_recording(const MatchRecording& rec);

enum class SequenceMode { Dedup, PerFrame };

std::string_view to_string(SequenceMode m);
std::optional<SequenceMode> parse_sequence_mode(std::string_view s);

struct ActionSequence {
  std::string player_id;
  std::vector<ActionTriple> actions;
  // Frames covered by each action; all 1 in per-frame mode.
  std::vector<std::int64_t> run_lengths;
  std::string match_id;
  std::size_t round_index = 0;
};

// One sequence per round. Throws ValidationError for an unknown player.
std::vector<ActionSequence> extract_action_sequences(const MatchRecording& rec,
                                                     std::string_view player_id,
                                                     SequenceMode mode = SequenceMode::Dedup);

}  // namespace stylemark
