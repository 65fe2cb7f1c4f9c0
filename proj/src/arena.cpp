#include "stylemark/arena.hpp"

#include "stylemark/errors.hpp"
#include "stylemark/io.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

namespace stylemark::arena {

namespace {

// Defaults of the five built-in skill presets.
const std::array<AgentPreset, 5> kBuiltinPresets{{
    {"very-easy", 0.4, 0.1, 0.9, 0.1, 0.1},
    {"easy", 0.3, 0.1, 0.9, 0.3, 0.2},
    {"normal", 0.0, 0.05, 0.9, 0.5, 1.0},
    {"hard", 0.1, 0.05, 0.9, 0.6, 1.0},
    {"very-hard", 0.0, 0.05, 0.9, 0.6, 1.0},
}};

bool unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

void AgentPreset::validate() const {
  if (name.empty()) throw ValidationError("preset name must be non-empty");
  if (!(time_between_decisions >= 0.0) || !(time_between_actions >= 0.0) ||
      !std::isfinite(time_between_decisions) || !std::isfinite(time_between_actions)) {
    throw ValidationError("preset " + name + ": times must be finite and >= 0");
  }
  if (!unit_interval(rule_compliance) || !unit_interval(aggressiveness) ||
      !unit_interval(combo_efficiency)) {
    throw ValidationError("preset " + name + ": rule_compliance, aggressiveness and combo_efficiency must lie in [0, 1]");
  }
}

std::span<const AgentPreset> builtin_presets() { return kBuiltinPresets; }

std::optional<AgentPreset> find_builtin_preset(std::string_view name) {
  for (const auto& p : kBuiltinPresets) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

nlohmann::ordered_json preset_to_json(const AgentPreset& p) {
  return {{"name", p.name},
          {"time_between_decisions", p.time_between_decisions},
          {"time_between_actions", p.time_between_actions},
          {"rule_compliance", p.rule_compliance},
          {"aggressiveness", p.aggressiveness},
          {"combo_efficiency", p.combo_efficiency}};
}

std::vector<AgentPreset> presets_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("presets") || !j["presets"].is_array()) {
    throw ValidationError("preset file must be {\"presets\":[...]}");
  }
  std::vector<AgentPreset> out;
  for (const auto& e : j["presets"]) {
    auto num = [&](const char* key) {
      if (!e.contains(key) || !e[key].is_number()) {
        throw ValidationError(std::string("preset field \"") + key + "\" must be a number");
      }
      return e[key].get<double>();
    };
    if (!e.is_object() || !e.contains("name") || !e["name"].is_string()) {
      throw ValidationError("preset entry needs a string \"name\"");
    }
    AgentPreset p{e["name"].get<std::string>(), num("time_between_decisions"),
                  num("time_between_actions"), num("rule_compliance"), num("aggressiveness"),
                  num("combo_efficiency")};
    p.validate();
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

nlohmann::ordered_json attack_to_json(const AttackSpec& a) {
  return {{"range", a.range},       {"damage", a.damage}, {"duration", a.duration},
          {"hit_time", a.hit_time}, {"stun", a.stun},     {"knockdown", a.knockdown}};
}

template <typename T>
void read_field(const nlohmann::json& j, const char* key, T& out) {
  auto it = j.find(key);
  if (it == j.end()) return;
  try {
    out = it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(std::string("combat tuning field \"") + key + "\" has the wrong type");
  }
}

AttackSpec attack_from_json(const nlohmann::json& j, const char* name, AttackSpec a) {
  auto it = j.find(name);
  if (it == j.end()) return a;
  if (!it->is_object()) throw ValidationError(std::string("attack \"") + name + "\" must be an object");
  read_field(*it, "range", a.range);
  read_field(*it, "damage", a.damage);
  read_field(*it, "duration", a.duration);
  read_field(*it, "hit_time", a.hit_time);
  read_field(*it, "stun", a.stun);
  read_field(*it, "knockdown", a.knockdown);
  if (!(a.range > 0.0) || a.damage < 0 || !(a.duration > 0.0) || !(a.hit_time >= 0.0) ||
      a.hit_time > a.duration || !(a.stun >= 0.0)) {
    throw ValidationError(std::string("attack \"") + name + "\" has out-of-range values");
  }
  return a;
}

}  // namespace

nlohmann::ordered_json tuning_to_json(const CombatTuning& t) {
  return {{"schema_version", t.schema_version},
          {"walk_forward_speed", t.walk_forward_speed},
          {"walk_back_speed", t.walk_back_speed},
          {"min_separation", t.min_separation},
          {"start_gap", t.start_gap},
          {"jump_time", t.jump_time},
          {"block_stun", t.block_stun},
          {"knockdown_time", t.knockdown_time},
          {"getup_time", t.getup_time},
          {"knockdown_pushback", t.knockdown_pushback},
          {"max_combo_chain", t.max_combo_chain},
          {"low_health_fraction", t.low_health_fraction},
          {"threat_margin", t.threat_margin},
          {"light_preference", t.light_preference},
          {"attacks",
           {{"light", attack_to_json(t.light)},
            {"heavy", attack_to_json(t.heavy)},
            {"combo", attack_to_json(t.combo)}}}};
}

CombatTuning tuning_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("combat tuning must be a JSON object");
  CombatTuning t;
  read_field(j, "schema_version", t.schema_version);
  if (t.schema_version != 1) {
    throw ValidationError("unsupported combat tuning schema_version " + std::to_string(t.schema_version));
  }
  read_field(j, "walk_forward_speed", t.walk_forward_speed);
  read_field(j, "walk_back_speed", t.walk_back_speed);
  read_field(j, "min_separation", t.min_separation);
  read_field(j, "start_gap", t.start_gap);
  read_field(j, "jump_time", t.jump_time);
  read_field(j, "block_stun", t.block_stun);
  read_field(j, "knockdown_time", t.knockdown_time);
  read_field(j, "getup_time", t.getup_time);
  read_field(j, "knockdown_pushback", t.knockdown_pushback);
  read_field(j, "max_combo_chain", t.max_combo_chain);
  read_field(j, "low_health_fraction", t.low_health_fraction);
  read_field(j, "threat_margin", t.threat_margin);
  read_field(j, "light_preference", t.light_preference);
  if (auto it = j.find("attacks"); it != j.end()) {
    if (!it->is_object()) throw ValidationError("\"attacks\" must be an object");
    t.light = attack_from_json(*it, "light", t.light);
    t.heavy = attack_from_json(*it, "heavy", t.heavy);
    t.combo = attack_from_json(*it, "combo", t.combo);
  }
  if (!(t.walk_forward_speed >= 0.0) || !(t.walk_back_speed >= 0.0) || !(t.min_separation >= 0.0) ||
      !(t.start_gap >= t.min_separation) || !(t.jump_time > 0.0) || !(t.block_stun >= 0.0) ||
      !(t.knockdown_time > 0.0) || !(t.getup_time >= 0.0) || !(t.knockdown_pushback >= 0.0) ||
      t.max_combo_chain < 0 || !unit_interval(t.low_health_fraction) || !(t.threat_margin >= 0.0) ||
      !unit_interval(t.light_preference)) {
    throw ValidationError("combat tuning has out-of-range values");
  }
  return t;
}

void SimConfig::validate() const {
  if (fps < 1) throw ValidationError("fps must be >= 1");
  if (round_limit_seconds < 1) throw ValidationError("round_limit_seconds must be >= 1");
  if (rounds_per_match < 1) throw ValidationError("rounds_per_match must be >= 1");
  if (initial_health < 0) throw ValidationError("initial_health must be >= 0");
  if (!(arena_width > tuning.start_gap)) throw ValidationError("arena_width must exceed start_gap");
}

nlohmann::ordered_json config_to_json(const SimConfig& c) {
  return {{"fps", c.fps},
          {"round_limit_seconds", c.round_limit_seconds},
          {"rounds_per_match", c.rounds_per_match},
          {"arena_width", c.arena_width},
          {"initial_health", c.initial_health},
          {"seed", c.seed},
          {"tuning", tuning_to_json(c.tuning)}};
}

bool is_attack(Command c) {
  return c == Command::LightAttack || c == Command::HeavyAttack || c == Command::ComboFollowup;
}

int to_frames(double seconds, int fps) {
  return static_cast<int>(std::max(0L, std::lround(seconds * fps)));
}

bool FighterState::actionable() const {
  switch (activity) {
    case Activity::Idle:
    case Activity::WalkForward:
    case Activity::WalkBack:
    case Activity::Crouch:
    case Activity::Block:
      return health > 0;
    case Activity::KnockedDown:
      return false;
    case Activity::Attack:
      return health > 0 && completed() && !combo_queued;
    default:
      return health > 0 && completed();
  }
}

CombatState initial_state(const SimConfig& config) {
  CombatState s;
  const double centre = config.arena_width / 2.0;
  const double half_gap = config.tuning.start_gap / 2.0;
  s.fighters[0].x_milli = std::llround((centre - half_gap) * 1000.0);
  s.fighters[1].x_milli = std::llround((centre + half_gap) * 1000.0);
  for (auto& f : s.fighters) f.health = config.initial_health;
  return s;
}

const Alphabets& arena_alphabets() {
  static const Alphabets kAlphabets{
      {"Stand", "Crouch", "Jump", "Down"},
      {"Resting", "Blocking", "Stunned"},
      {"Idle", "MoveForward", "MoveBack", "JumpStraight", "CrouchHold", "LightAttack", "HeavyAttack",
       "ComboFollowup", "Hit", "KnockedDown"}};
  return kAlphabets;
}

ActionTriple observe(const FighterState& f) {
  const char* stance = f.crouched ? "Crouch" : "Stand";
  switch (f.activity) {
    case Activity::Idle: return {"Stand", "Resting", "Idle"};
    case Activity::WalkForward: return {"Stand", "Resting", "MoveForward"};
    case Activity::WalkBack: return {"Stand", "Resting", "MoveBack"};
    case Activity::Crouch: return {"Crouch", "Resting", "CrouchHold"};
    // A blocked hit only freezes the guard, it does not show as a separate move.
    case Activity::Block:
    case Activity::BlockStun:
      return f.crouched ? ActionTriple{"Crouch", "Blocking", "CrouchHold"}
                        : ActionTriple{"Stand", "Blocking", "Idle"};
    case Activity::Jump: return {"Jump", "Resting", "JumpStraight"};
    case Activity::Attack:
      switch (f.attack) {
        case AttackKind::Light: return {stance, "Resting", "LightAttack"};
        case AttackKind::Heavy: return {stance, "Resting", "HeavyAttack"};
        case AttackKind::Combo: return {stance, "Resting", "ComboFollowup"};
      }
      break;
    case Activity::HitStun: return {stance, "Stunned", "Hit"};
    // Getting up is part of the knockdown as far as an observer can tell.
    case Activity::KnockedDown:
    case Activity::GettingUp:
      return {"Down", "Stunned", "KnockedDown"};
  }
  return {"Stand", "Resting", "Idle"};
}

namespace {

const AttackSpec& spec_of(AttackKind k, const CombatTuning& t) {
  switch (k) {
    case AttackKind::Light: return t.light;
    case AttackKind::Heavy: return t.heavy;
    case AttackKind::Combo: return t.combo;
  }
  return t.light;
}

double distance(const CombatState& s) {
  return std::abs(static_cast<double>(s.fighters[1].x_milli - s.fighters[0].x_milli)) / 1000.0;
}

Command pick_attack(double dist, const CombatTuning& t, SplitMix64& rng, bool in_rule) {
  if (in_rule && dist > t.light.range) return Command::HeavyAttack;
  if (in_rule) return rng.bernoulli(t.light_preference) ? Command::LightAttack : Command::HeavyAttack;
  return rng.below(2) == 0 ? Command::LightAttack : Command::HeavyAttack;
}

// Priority: attack in range > block a threat > retreat at low health > advance.
Command apply_rules(const CombatState& s, int side, const AgentPreset& preset, SplitMix64& rng,
                    const SimConfig& config) {
  const auto& t = config.tuning;
  const auto& me = s.fighters[side];
  const auto& opp = s.fighters[1 - side];
  const double dist = distance(s);

  const bool threatened = opp.activity == Activity::Attack && !opp.attack_resolved &&
                          dist <= spec_of(opp.attack, t).range + t.threat_margin;
  if (dist <= std::min(t.light.range, t.heavy.range)) {
    if (rng.bernoulli(preset.aggressiveness)) return pick_attack(dist, t, rng, true);
    if (threatened) return Command::Block;
    // Otherwise hold ground, mostly behind a guard.
    const double u = rng.uniform();
    if (u < 0.8) return Command::Block;
    if (u < 0.95) return Command::WalkBack;
    return Command::Crouch;
  }
  if (threatened) return Command::Block;
  const bool low_health = me.health <= t.low_health_fraction * config.initial_health && me.health < opp.health;
  return low_health ? Command::WalkBack : Command::WalkForward;
}

Command random_choice(const CombatState& s, const AgentPreset& preset, SplitMix64& rng,
                      const SimConfig& config) {
  if (rng.bernoulli(preset.aggressiveness)) return pick_attack(distance(s), config.tuning, rng, false);
  static constexpr std::array<Command, 6> kBasic{Command::Idle,   Command::WalkForward, Command::WalkBack,
                                                 Command::Crouch, Command::Block,       Command::Jump};
  return kBasic[rng.below(kBasic.size())];
}

}  // namespace

ActionCommand decide_action(const CombatState& state, int side, const AgentPreset& preset,
                            SplitMix64& rng, const SimConfig& config) {
  const auto& me = state.fighters[side];
  if (me.combo_pending) {
    return {rng.bernoulli(preset.combo_efficiency) ? Command::ComboFollowup : Command::Continue, 0, 0};
  }
  if (!me.actionable() || me.decision_cooldown > 0 || me.action_cooldown > 0) return {};

  const Command kind = rng.bernoulli(preset.rule_compliance) ? apply_rules(state, side, preset, rng, config)
                                                             : random_choice(state, preset, rng, config);
  return {kind, to_frames(preset.time_between_decisions, config.fps),
          to_frames(preset.time_between_actions, config.fps)};
}

namespace {

void start_attack(FighterState& f, AttackKind kind, const SimConfig& config) {
  f.activity = Activity::Attack;
  f.attack = kind;
  f.activity_frames = 0;
  f.action_frames_remaining = std::max(1, to_frames(spec_of(kind, config.tuning).duration, config.fps));
  f.attack_resolved = false;
}

void start_timed(FighterState& f, Activity a, double seconds, int fps) {
  f.activity = a;
  f.activity_frames = 0;
  f.action_frames_remaining = std::max(1, to_frames(seconds, fps));
}

void apply_command(FighterState& f, const ActionCommand& cmd, const SimConfig& config) {
  if (f.combo_pending) {
    f.combo_pending = false;
    if (cmd.kind == Command::ComboFollowup && f.activity == Activity::Attack) f.combo_queued = true;
    return;
  }
  if (cmd.kind == Command::Continue || cmd.kind == Command::ComboFollowup || !f.actionable()) return;

  f.decision_cooldown = cmd.decision_cooldown;
  f.action_cooldown = cmd.action_cooldown;
  f.reaction_frames = cmd.decision_cooldown;
  f.combo_chain_depth = 0;
  f.activity_frames = 0;
  f.action_frames_remaining = 0;
  switch (cmd.kind) {
    case Command::Idle: f.activity = Activity::Idle; f.crouched = false; break;
    case Command::WalkForward: f.activity = Activity::WalkForward; f.crouched = false; break;
    case Command::WalkBack: f.activity = Activity::WalkBack; f.crouched = false; break;
    case Command::Crouch: f.activity = Activity::Crouch; f.crouched = true; break;
    case Command::Block: f.activity = Activity::Block; break;
    case Command::Jump:
      f.crouched = false;
      start_timed(f, Activity::Jump, config.tuning.jump_time, config.fps);
      break;
    case Command::LightAttack: start_attack(f, AttackKind::Light, config); break;
    case Command::HeavyAttack: start_attack(f, AttackKind::Heavy, config); break;
    default: break;
  }
}

void move(CombatState& s, int side, const SimConfig& config) {
  auto& me = s.fighters[side];
  const auto& opp = s.fighters[1 - side];
  const auto& t = config.tuning;
  std::int64_t delta = 0;
  if (me.activity == Activity::WalkForward) {
    delta = std::llround(t.walk_forward_speed * 1000.0 / config.fps);
  } else if (me.activity == Activity::WalkBack) {
    delta = -std::llround(t.walk_back_speed * 1000.0 / config.fps);
  } else {
    return;
  }
  const std::int64_t toward = opp.x_milli >= me.x_milli ? 1 : -1;
  const std::int64_t min_sep = std::llround(t.min_separation * 1000.0);
  const std::int64_t width = std::llround(config.arena_width * 1000.0);
  std::int64_t x = me.x_milli + toward * delta;
  if (toward > 0) {
    x = std::min(x, opp.x_milli - min_sep);
  } else {
    x = std::max(x, opp.x_milli + min_sep);
  }
  // Never move backwards because of the separation clamp.
  if (delta > 0) x = toward > 0 ? std::max(x, me.x_milli) : std::min(x, me.x_milli);
  me.x_milli = std::clamp<std::int64_t>(x, 0, width);
}

struct PendingHit {
  int attacker;
  AttackKind kind;
};

bool in_down_state(const FighterState& f) {
  return f.activity == Activity::KnockedDown || f.activity == Activity::GettingUp;
}

void finish_activity(FighterState& f, const SimConfig& config) {
  if (f.action_frames_remaining == 0 || f.activity_frames < f.action_frames_remaining) return;
  switch (f.activity) {
    case Activity::Attack:
      if (f.combo_queued && f.combo_chain_depth < config.tuning.max_combo_chain) {
        f.combo_queued = false;
        ++f.combo_chain_depth;
        start_attack(f, AttackKind::Combo, config);
        return;
      }
      f.combo_queued = false;
      f.combo_chain_depth = 0;
      f.activity = f.crouched ? Activity::Crouch : Activity::Idle;
      break;
    case Activity::BlockStun:
      f.activity = Activity::Block;
      break;
    case Activity::KnockedDown:
      start_timed(f, Activity::GettingUp, config.tuning.getup_time, config.fps);
      return;
    default:
      f.activity = Activity::Idle;
      f.crouched = false;
      break;
  }
  f.activity_frames = 0;
  f.action_frames_remaining = 0;
}

void land_hit(CombatState& s, const PendingHit& hit, const SimConfig& config) {
  const auto& t = config.tuning;
  auto& attacker = s.fighters[hit.attacker];
  auto& defender = s.fighters[1 - hit.attacker];
  const auto& spec = spec_of(hit.kind, t);

  defender.health = std::max(0, defender.health - spec.damage);
  defender.combo_pending = false;
  defender.combo_queued = false;
  defender.combo_chain_depth = 0;
  defender.stun_hits = defender.activity == Activity::HitStun ? defender.stun_hits + 1 : 1;
  const std::int64_t away = defender.x_milli >= attacker.x_milli ? 1 : -1;
  const std::int64_t width = std::llround(config.arena_width * 1000.0);
  auto push_back = [&] {
    defender.x_milli = std::clamp<std::int64_t>(
        defender.x_milli + away * std::llround(t.knockdown_pushback * 1000.0), 0, width);
  };
  if (spec.knockdown || defender.activity == Activity::Jump) {
    defender.stun_hits = 0;
    defender.crouched = false;
    start_timed(defender, Activity::KnockedDown, t.knockdown_time, config.fps);
    push_back();
    return;
  }
  start_timed(defender, Activity::HitStun, spec.stun, config.fps);
  if (defender.stun_hits > t.max_combo_chain) {
    // A long string ends by knocking the defender out of reach; the rest of this stun
    // cannot be hit.
    push_back();
  } else if (attacker.combo_chain_depth < t.max_combo_chain) {
    attacker.combo_pending = true;
  }
}

}  // namespace

CombatState step(const CombatState& state, const ActionCommand& cmd_a, const ActionCommand& cmd_b,
                 const SimConfig& config) {
  CombatState s = state;
  const auto& t = config.tuning;
  apply_command(s.fighters[0], cmd_a, config);
  apply_command(s.fighters[1], cmd_b, config);

  // Timed activities that ran out without being replaced by a new command.
  for (auto& f : s.fighters) finish_activity(f, config);

  move(s, 0, config);
  move(s, 1, config);

  for (auto& f : s.fighters) {
    if (f.action_frames_remaining == 0) continue;
    ++f.activity_frames;
    // After its own timed actions the fighter needs its decision time before acting again.
    if (f.completed() && (f.activity == Activity::Attack || f.activity == Activity::Jump)) {
      f.decision_cooldown = std::max(f.decision_cooldown, f.reaction_frames);
    }
  }

  // Hits are decided against the pre-resolution state of both fighters, so trades land both ways.
  std::vector<PendingHit> hits;
  const double dist = distance(s);
  for (int side = 0; side < 2; ++side) {
    auto& f = s.fighters[side];
    if (f.activity != Activity::Attack || f.attack_resolved) continue;
    const auto& spec = spec_of(f.attack, t);
    if (f.activity_frames < std::max(1, to_frames(spec.hit_time, config.fps))) continue;
    f.attack_resolved = true;
    const auto& def = s.fighters[1 - side];
    if (dist > spec.range || in_down_state(def) || def.health == 0) continue;
    if (def.activity == Activity::Jump && f.attack != AttackKind::Heavy) continue;
    if (def.activity == Activity::HitStun && def.stun_hits > t.max_combo_chain) continue;
    hits.push_back({side, f.attack});
  }

  for (const auto& hit : hits) {
    auto& def = s.fighters[1 - hit.attacker];
    if (def.activity == Activity::Block || def.activity == Activity::BlockStun) {
      start_timed(def, Activity::BlockStun, t.block_stun, config.fps);
      continue;
    }
    land_hit(s, hit, config);
  }

  for (auto& f : s.fighters) {
    if (f.decision_cooldown > 0) --f.decision_cooldown;
    if (f.action_cooldown > 0) --f.action_cooldown;
    if (f.health == 0) {
      f.activity = Activity::KnockedDown;
      f.crouched = false;
      f.combo_pending = false;
      f.combo_queued = false;
    }
  }
  ++s.frame;
  return s;
}

namespace {

PlayerFrame snapshot(const FighterState& f) { return {observe(f), f.health, f.x()}; }

}  // namespace

MatchRecording simulate_match(const AgentPreset& a, const AgentPreset& b, const SimConfig& config,
                              std::string match_id) {
  a.validate();
  b.validate();
  config.validate();
  MatchRecording rec;
  rec.match_id = match_id.empty() ? a.name + "-vs-" + b.name : std::move(match_id);
  rec.fps = config.fps;
  rec.round_limit_seconds = config.round_limit_seconds;
  rec.alphabets = arena_alphabets();
  rec.players[0] = {a.name, "ai-" + a.name};
  rec.players[1] = {b.name == a.name ? b.name + "#2" : b.name, "ai-" + b.name};

  const auto max_frames = config.max_frames_per_round();
  for (int r = 0; r < config.rounds_per_match; ++r) {
    const std::uint64_t round_seed = derive_seed(config.seed, static_cast<std::uint64_t>(r));
    SplitMix64 rng_a(derive_seed(round_seed, 0));
    SplitMix64 rng_b(derive_seed(round_seed, 1));
    CombatState state = initial_state(config);
    Round round;
    round.frames.reserve(static_cast<std::size_t>(max_frames));
    for (std::int64_t f = 0; f < max_frames; ++f) {
      const auto cmd_a = decide_action(state, 0, a, rng_a, config);
      const auto cmd_b = decide_action(state, 1, b, rng_b, config);
      state = step(state, cmd_a, cmd_b, config);
      round.frames.push_back({f, {snapshot(state.fighters[0]), snapshot(state.fighters[1])}});
      const bool down_a = state.fighters[0].health == 0;
      const bool down_b = state.fighters[1].health == 0;
      if (down_a || down_b) {
        round.outcome = down_a && down_b ? RoundOutcome::KoDraw
                        : down_b         ? RoundOutcome::KoP1
                                         : RoundOutcome::KoP2;
        break;
      }
    }
    if (!round.outcome) round.outcome = RoundOutcome::Timeout;
    rec.rounds.push_back(std::move(round));
  }
  return rec;
}

std::vector<MatchPlan> plan_tournament(std::span<const AgentPreset> presets, int matches_per_pair,
                                       std::uint64_t base_seed) {
  if (presets.size() < 2) throw ValidationError("a tournament needs at least 2 presets");
  if (matches_per_pair < 1) throw ValidationError("matches per pair must be >= 1");
  std::set<std::string> names;
  for (const auto& p : presets) {
    p.validate();
    if (!names.insert(p.name).second) throw ValidationError("duplicate preset name " + p.name);
  }
  std::vector<MatchPlan> plans;
  std::size_t pair_index = 0;
  for (std::size_t i = 0; i < presets.size(); ++i) {
    for (std::size_t j = i + 1; j < presets.size(); ++j, ++pair_index) {
      const std::uint64_t pair_seed = derive_seed(base_seed, pair_index);
      for (int m = 0; m < matches_per_pair; ++m) {
        MatchPlan plan;
        plan.pair_index = pair_index;
        plan.match_index = static_cast<std::size_t>(m);
        plan.pair = presets[i].name + "-vs-" + presets[j].name;
        plan.a = presets[i];
        plan.b = presets[j];
        plan.seed = derive_seed(pair_seed, static_cast<std::uint64_t>(m));
        char suffix[16];
        std::snprintf(suffix, sizeof suffix, "_%02d", m + 1);
        plan.file_name = plan.pair + suffix + ".jsonl";
        plans.push_back(std::move(plan));
      }
    }
  }
  return plans;
}

MatchRecording simulate_planned(const MatchPlan& plan, const SimConfig& config) {
  SimConfig c = config;
  c.seed = plan.seed;
  auto id = plan.file_name.substr(0, plan.file_name.size() - 6);  // strip ".jsonl"
  return simulate_match(plan.a, plan.b, c, std::move(id));
}

int TournamentManifest::knockouts() const {
  int n = 0;
  for (const auto& m : matches) n += m.knockouts;
  return n;
}

nlohmann::ordered_json manifest_to_json(const TournamentManifest& m) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["config"] = config_to_json(m.config);
  j["presets"] = nlohmann::ordered_json::array();
  for (const auto& p : m.presets) j["presets"].push_back(preset_to_json(p));
  j["matches_per_pair"] = m.matches_per_pair;
  j["pairs"] = m.pairs;
  j["seeds"] = {{"base", m.config.seed},
                {"derivation",
                 "match = derive(derive(base, pair_index), match_index); round = derive(match, round_index); "
                 "agent = derive(round, side); derive(s, i) = splitmix64_mix(s + 0x9E3779B97F4A7C15 * (i + 1))"}};
  j["matches"] = nlohmann::ordered_json::array();
  for (const auto& e : m.matches) {
    j["matches"].push_back({{"file", e.file},
                            {"pair", e.pair},
                            {"match", e.match},
                            {"seed", e.seed},
                            {"rounds", e.rounds},
                            {"knockouts", e.knockouts},
                            {"fnv1a64", e.fnv1a64}});
  }
  return j;
}

TournamentManifest run_tournament(std::span<const AgentPreset> presets, int matches_per_pair,
                                  const SimConfig& config, const std::filesystem::path& out_dir,
                                  unsigned jobs) {
  config.validate();
  const auto plans = plan_tournament(presets, matches_per_pair, config.seed);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw IoError("cannot create output directory " + out_dir.string());
  }

  TournamentManifest manifest;
  manifest.presets.assign(presets.begin(), presets.end());
  manifest.matches_per_pair = matches_per_pair;
  manifest.config = config;
  for (const auto& p : plans) {
    if (manifest.pairs.empty() || manifest.pairs.back() != p.pair) manifest.pairs.push_back(p.pair);
  }
  manifest.matches.resize(plans.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < plans.size(); k = next++) {
      try {
        const auto& plan = plans[k];
        const auto rec = simulate_planned(plan, config);
        const auto bytes = write_recording(rec);
        write_file_atomic(out_dir / plan.file_name, bytes);
        auto& e = manifest.matches[k];
        e.file = plan.file_name;
        e.pair = plan.pair;
        e.match = static_cast<int>(plan.match_index) + 1;
        e.seed = plan.seed;
        e.fnv1a64 = hex64(fnv1a64(bytes));
        e.rounds = static_cast<int>(rec.rounds.size());
        for (const auto& r : rec.rounds) {
          if (r.outcome && *r.outcome != RoundOutcome::Timeout) ++e.knockouts;
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = plans.size();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(plans.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (unsigned i = 0; i < jobs; ++i) threads.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  write_file_atomic(out_dir / "manifest.json", manifest_to_json(manifest).dump(2) + "\n");
  return manifest;
}

}  // namespace stylemark::arena
