#pragma once

#include "stylemark/recording.hpp"
#include "stylemark/rng.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace stylemark::arena {

// Fuzzy-rule agent parameters. Times are in seconds, the rest in [0, 1].
struct AgentPreset {
  std::string name;
  double time_between_decisions = 0.0;
  double time_between_actions = 0.0;
  double rule_compliance = 1.0;
  double aggressiveness = 0.5;
  double combo_efficiency = 0.5;

  bool operator==(const AgentPreset&) const = default;

  // Throws ValidationError.
  void validate() const;
};

// very-easy, easy, normal, hard, very-hard.
std::span<const AgentPreset> builtin_presets();
std::optional<AgentPreset> find_builtin_preset(std::string_view name);

// {"presets":[{"name":..,"time_between_decisions":..,...}]}; throws ValidationError.
std::vector<AgentPreset> presets_from_json(const nlohmann::json& j);
nlohmann::ordered_json preset_to_json(const AgentPreset& p);

struct AttackSpec {
  double range = 1.0;      // arena units, measured between fighter centres
  int damage = 1;
  double duration = 0.2;   // seconds of commitment
  double hit_time = 0.07;  // seconds from start until the hit resolves
  double stun = 0.25;      // hit stun inflicted on the defender
  bool knockdown = false;

  bool operator==(const AttackSpec&) const = default;
};

// Combat tables. Defaults are the committed config/combat_default.json.
struct CombatTuning {
  int schema_version = 1;
  double walk_forward_speed = 3.6;  // units per second
  double walk_back_speed = 2.7;
  double min_separation = 0.6;
  double start_gap = 6.0;
  double jump_time = 0.6;
  double block_stun = 0.2;
  double knockdown_time = 0.75;
  double getup_time = 0.33;
  double knockdown_pushback = 0.5;
  int max_combo_chain = 2;
  double low_health_fraction = 0.3;
  double threat_margin = 0.6;
  double light_preference = 0.4;  // share of light attacks when both reach
  AttackSpec light{1.3, 1, 0.2, 0.083, 0.25, false};
  AttackSpec heavy{1.5, 2, 0.45, 0.2, 0.0, true};
  AttackSpec combo{1.5, 1, 0.25, 0.067, 0.3, false};

  bool operator==(const CombatTuning&) const = default;
};

nlohmann::ordered_json tuning_to_json(const CombatTuning& t);
// Missing keys keep their defaults; unknown schema versions are rejected.
CombatTuning tuning_from_json(const nlohmann::json& j);

struct SimConfig {
  int fps = 60;
  int round_limit_seconds = 100;
  int rounds_per_match = 2;
  double arena_width = 16.0;
  int initial_health = 100;
  std::uint64_t seed = 0;
  CombatTuning tuning;

  // Throws ValidationError.
  void validate() const;
  std::int64_t max_frames_per_round() const {
    return static_cast<std::int64_t>(fps) * round_limit_seconds;
  }
};

nlohmann::ordered_json config_to_json(const SimConfig& c);

enum class Command {
  Continue,
  Idle,
  WalkForward,
  WalkBack,
  Crouch,
  Block,
  Jump,
  LightAttack,
  HeavyAttack,
  ComboFollowup,
};

bool is_attack(Command c);

// A decision plus the cooldowns it arms, in frames.
struct ActionCommand {
  Command kind = Command::Continue;
  int decision_cooldown = 0;
  int action_cooldown = 0;

  bool operator==(const ActionCommand&) const = default;
};

enum class Activity {
  Idle,
  WalkForward,
  WalkBack,
  Crouch,
  Block,
  Jump,
  Attack,
  HitStun,
  BlockStun,
  KnockedDown,
  GettingUp,
};

enum class AttackKind { Light, Heavy, Combo };

struct FighterState {
  std::int64_t x_milli = 0;  // position in thousandths of an arena unit
  int health = 0;
  Activity activity = Activity::Idle;
  bool crouched = false;  // stance for attacks, blocks and hits
  AttackKind attack = AttackKind::Light;
  int activity_frames = 0;         // frames spent in the current timed activity
  int action_frames_remaining = 0; // frames left in a timed activity; 0 for held ones
  bool attack_resolved = false;
  bool combo_pending = false;  // a hit just landed; the next decision may chain
  bool combo_queued = false;
  int combo_chain_depth = 0;
  int stun_hits = 0;  // hits taken without leaving hit stun
  int decision_cooldown = 0;
  int action_cooldown = 0;
  int reaction_frames = 0;  // decision time of the last command, re-armed when a timed activity ends

  bool operator==(const FighterState&) const = default;

  double x() const { return static_cast<double>(x_milli) / 1000.0; }
  bool completed() const { return action_frames_remaining > 0 && activity_frames >= action_frames_remaining; }
  // Free to take a new command: a held activity, or a finished timed one still on screen.
  bool actionable() const;
};

struct CombatState {
  std::array<FighterState, 2> fighters;
  std::int64_t frame = 0;

  bool operator==(const CombatState&) const = default;
};

CombatState initial_state(const SimConfig& config);

// Observable (state, sub_state, basic_move) of a fighter.
ActionTriple observe(const FighterState& f);

// Token sets the simulator emits.
const Alphabets& arena_alphabets();

// Returns Continue unless a new decision is due (both cooldowns expired and the fighter
// is free), or a pending combo roll is due after a landed hit.
ActionCommand decide_action(const CombatState& state, int side, const AgentPreset& preset,
                      SplitMix64& rng, const SimConfig& config);

// Advances one frame.
CombatState step(const CombatState& state, const ActionCommand& cmd_a, const ActionCommand& cmd_b,
                 const SimConfig& config);

// Seconds to whole frames at the given rate (rounded, never negative).
int to_frames(double seconds, int fps);

// Rounds seeded with derive_seed(config.seed, round), agents with derive_seed(round_seed, side).
MatchRecording simulate_match(const AgentPreset& a, const AgentPreset& b, const SimConfig& config,
                              std::string match_id = {});

struct MatchPlan {
  std::size_t pair_index = 0;
  std::size_t match_index = 0;  // 0-based; file names use match_index + 1
  std::string pair;             // "<a>-vs-<b>"
  AgentPreset a;
  AgentPreset b;
  std::uint64_t seed = 0;       // derive_seed(derive_seed(base, pair_index), match_index)
  std::string file_name;        // "<pair>_<match:02>.jsonl"
};

// All unordered pairs (i < j) in preset order, matches_per_pair each.
// Throws ValidationError for fewer than 2 presets, duplicate names or matches_per_pair < 1.
std::vector<MatchPlan> plan_tournament(std::span<const AgentPreset> presets, int matches_per_pair,
                                       std::uint64_t base_seed);

MatchRecording simulate_planned(const MatchPlan& plan, const SimConfig& config);

struct ManifestEntry {
  std::string file;
  std::string pair;
  int match = 0;  // 1-based
  std::uint64_t seed = 0;
  std::string fnv1a64;
  int rounds = 0;
  int knockouts = 0;
};

struct TournamentManifest {
  std::vector<AgentPreset> presets;
  std::vector<std::string> pairs;
  int matches_per_pair = 0;
  SimConfig config;
  std::vector<ManifestEntry> matches;

  int knockouts() const;
};

nlohmann::ordered_json manifest_to_json(const TournamentManifest& m);

// Simulates every planned match (in parallel over `jobs` threads), writes each recording
// and manifest.json into out_dir. Output bytes do not depend on `jobs`.
// Throws IoError with the failing path.
TournamentManifest run_tournament(std::span<const AgentPreset> presets, int matches_per_pair,
                                  const SimConfig& config, const std::filesystem::path& out_dir,
                                  unsigned jobs = 1);

}  // namespace stylemark::arena
