#include "stylemark/recording.hpp"

#include "stylemark/errors.hpp"
#include "stylemark/format.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace stylemark {

using nlohmann::json;

bool Alphabets::contains(const ActionTriple& a) const {
  auto in = [](const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
  };
  return in(state, a.state) && in(sub_state, a.sub_state) && in(basic_move, a.basic_move);
}

std::string_view to_string(RoundOutcome o) {
  switch (o) {
    case RoundOutcome::KoP1: return "ko:p1";
    case RoundOutcome::KoP2: return "ko:p2";
    case RoundOutcome::KoDraw: return "ko:draw";
    case RoundOutcome::Timeout: return "timeout";
  }
  return "timeout";
}

std::optional<RoundOutcome> parse_outcome(std::string_view s) {
  if (s == "ko:p1") return RoundOutcome::KoP1;
  if (s == "ko:p2") return RoundOutcome::KoP2;
  if (s == "ko:draw") return RoundOutcome::KoDraw;
  if (s == "timeout") return RoundOutcome::Timeout;
  return std::nullopt;
}

std::string_view to_string(SequenceMode m) {
  return m == SequenceMode::Dedup ? "dedup" : "per-frame";
}

std::optional<SequenceMode> parse_sequence_mode(std::string_view s) {
  if (s == "dedup") return SequenceMode::Dedup;
  if (s == "per-frame") return SequenceMode::PerFrame;
  return std::nullopt;
}

int MatchRecording::side_of(std::string_view player_id) const {
  for (int i = 0; i < 2; ++i) {
    if (players[i].id == player_id) return i;
  }
  return -1;
}

namespace {

class LineParser {
 public:
  explicit LineParser(std::size_t line) : line_(line) {}

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

  const json& field(const json& obj, const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end()) fail(std::string("missing field \"") + key + "\"");
    return *it;
  }

  std::int64_t integer(const json& obj, const char* key) const {
    const json& v = field(obj, key);
    if (!v.is_number_integer()) fail(std::string("field \"") + key + "\" must be an integer");
    return v.get<std::int64_t>();
  }

  double number(const json& obj, const char* key) const {
    const json& v = field(obj, key);
    if (!v.is_number()) fail(std::string("field \"") + key + "\" must be a number");
    return v.get<double>();
  }

  std::string string(const json& obj, const char* key) const {
    const json& v = field(obj, key);
    if (!v.is_string()) fail(std::string("field \"") + key + "\" must be a string");
    return v.get<std::string>();
  }

  std::vector<std::string> token_list(const json& obj, const char* key) const {
    const json& v = field(obj, key);
    if (!v.is_array()) fail(std::string("alphabet \"") + key + "\" must be an array");
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& t : v) {
      if (!t.is_string() || t.get<std::string>().empty()) {
        fail(std::string("alphabet \"") + key + "\" must contain non-empty strings");
      }
      auto s = t.get<std::string>();
      if (!seen.insert(s).second) fail(std::string("duplicate token \"") + s + "\" in alphabet \"" + key + "\"");
      out.push_back(std::move(s));
    }
    if (out.empty()) fail(std::string("alphabet \"") + key + "\" is empty");
    return out;
  }

 private:
  std::size_t line_;
};

bool valid_controller(const std::string& c) {
  return c == "human" || (c.size() > 3 && c.compare(0, 3, "ai-") == 0);
}

void parse_header(const json& h, const LineParser& p, MatchRecording& rec) {
  if (!h.is_object()) p.fail("header must be a JSON object");
  const auto version = p.integer(h, "schema_version");
  if (version != kRecordingSchemaVersion) {
    p.fail("unsupported schema_version " + std::to_string(version));
  }
  rec.schema_version = static_cast<int>(version);
  rec.match_id = p.string(h, "match_id");
  const auto fps = p.integer(h, "fps");
  if (fps < 1 || fps > 100000) p.fail("fps must be in [1, 100000]");
  rec.fps = static_cast<int>(fps);
  const auto limit = p.integer(h, "round_limit_seconds");
  if (limit < 1 || limit > 1000000) p.fail("round_limit_seconds must be >= 1");
  rec.round_limit_seconds = static_cast<int>(limit);

  const json& alpha = p.field(h, "alphabets");
  if (!alpha.is_object()) p.fail("alphabets must be an object");
  rec.alphabets.state = p.token_list(alpha, "state");
  rec.alphabets.sub_state = p.token_list(alpha, "sub_state");
  rec.alphabets.basic_move = p.token_list(alpha, "basic_move");

  const json& players = p.field(h, "players");
  if (!players.is_array()) p.fail("players must be an array");
  if (players.size() != 2) p.fail("player count must be 2");
  for (std::size_t i = 0; i < 2; ++i) {
    const json& pl = players[i];
    if (!pl.is_object()) p.fail("player entry must be an object");
    rec.players[i].id = p.string(pl, "id");
    rec.players[i].controller = p.string(pl, "controller");
    if (rec.players[i].id.empty()) p.fail("player id must be non-empty");
    if (!valid_controller(rec.players[i].controller)) {
      p.fail("controller must be \"human\" or \"ai-<preset>\"");
    }
  }
  if (rec.players[0].id == rec.players[1].id) p.fail("player ids must be distinct");
}

// Validation state for the round currently being read.
struct OpenRound {
  bool open = false;
  bool knocked_out = false;
};

void check_outcome(const Round& round, RoundOutcome outcome, std::int64_t max_frames,
                   const LineParser& p) {
  if (round.frames.empty()) p.fail("round has no frames");
  const auto& last = round.frames.back();
  const bool p1_down = last.players[0].health == 0;
  const bool p2_down = last.players[1].health == 0;
  const auto n = static_cast<std::int64_t>(round.frames.size());
  switch (outcome) {
    case RoundOutcome::KoP1:
      if (!p2_down || p1_down) p.fail("outcome ko:p1 requires player 2 at 0 health and player 1 above 0");
      break;
    case RoundOutcome::KoP2:
      if (!p1_down || p2_down) p.fail("outcome ko:p2 requires player 1 at 0 health and player 2 above 0");
      break;
    case RoundOutcome::KoDraw:
      if (!p1_down || !p2_down) p.fail("outcome ko:draw requires both players at 0 health");
      break;
    case RoundOutcome::Timeout:
      if (p1_down || p2_down) p.fail("timeout outcome but a player is knocked out");
      if (n != max_frames) {
        p.fail("timeout round must have exactly " + std::to_string(max_frames) + " frames, has " +
               std::to_string(n));
      }
      break;
  }
}

void parse_frame(const json& obj, const LineParser& p, MatchRecording& rec, OpenRound& open) {
  const auto round_no = p.integer(obj, "round");
  const auto count = static_cast<std::int64_t>(rec.rounds.size());
  if (open.open && round_no == count) {
    // continues the open round
  } else if (round_no == count + 1) {
    // an unclosed previous round keeps an absent outcome
    rec.rounds.emplace_back();
    open = OpenRound{true, false};
  } else {
    p.fail("round " + std::to_string(round_no) + " out of order");
  }

  Round& round = rec.rounds.back();
  if (open.knocked_out) p.fail("frame after knockout");

  FrameSnapshot snap;
  snap.frame_index = p.integer(obj, "f");
  if (snap.frame_index < 0) p.fail("frame index must be non-negative");
  if (!round.frames.empty() && snap.frame_index != round.frames.back().frame_index + 1) {
    p.fail("non-monotonic frame_index " + std::to_string(snap.frame_index) + " after " +
           std::to_string(round.frames.back().frame_index));
  }
  if (static_cast<std::int64_t>(round.frames.size()) >= rec.max_frames_per_round()) {
    p.fail("round exceeds " + std::to_string(rec.max_frames_per_round()) + " frames");
  }

  const json& ps = p.field(obj, "p");
  if (!ps.is_array() || ps.size() != 2) p.fail("\"p\" must hold exactly 2 player entries");
  for (std::size_t i = 0; i < 2; ++i) {
    const json& e = ps[i];
    if (!e.is_object()) p.fail("player entry must be an object");
    PlayerFrame& pf = snap.players[i];
    pf.action.state = p.string(e, "st");
    pf.action.sub_state = p.string(e, "sub");
    pf.action.basic_move = p.string(e, "mv");
    const auto& a = rec.alphabets;
    if (std::find(a.state.begin(), a.state.end(), pf.action.state) == a.state.end()) {
      p.fail("unknown state token \"" + pf.action.state + "\"");
    }
    if (std::find(a.sub_state.begin(), a.sub_state.end(), pf.action.sub_state) == a.sub_state.end()) {
      p.fail("unknown sub_state token \"" + pf.action.sub_state + "\"");
    }
    if (std::find(a.basic_move.begin(), a.basic_move.end(), pf.action.basic_move) ==
        a.basic_move.end()) {
      p.fail("unknown basic_move token \"" + pf.action.basic_move + "\"");
    }
    const auto hp = p.integer(e, "hp");
    if (hp < 0 || hp > 1000000000) p.fail("hp out of range");
    pf.health = static_cast<int>(hp);
    if (!round.frames.empty() && pf.health > round.frames.back().players[i].health) {
      p.fail("health increased within a round");
    }
    pf.x = p.number(e, "x");
    if (!std::isfinite(pf.x)) p.fail("x must be finite");
  }
  if (snap.players[0].health == 0 || snap.players[1].health == 0) open.knocked_out = true;
  round.frames.push_back(std::move(snap));
}

void parse_round_end(const json& obj, const LineParser& p, MatchRecording& rec, OpenRound& open) {
  const auto round_no = p.integer(obj, "round_end");
  if (!open.open || round_no != static_cast<std::int64_t>(rec.rounds.size())) {
    p.fail("round_end " + std::to_string(round_no) + " does not close the open round");
  }
  const auto text = p.string(obj, "outcome");
  const auto outcome = parse_outcome(text);
  if (!outcome) p.fail("unknown outcome \"" + text + "\"");
  check_outcome(rec.rounds.back(), *outcome, rec.max_frames_per_round(), p);
  rec.rounds.back().outcome = *outcome;
  open = OpenRound{};
}

}  // namespace

MatchRecording parse_recording(std::string_view content) {
  MatchRecording rec;
  OpenRound open;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  while (pos < content.size()) {
    auto end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    LineParser p(line_no);
    if (line.empty()) p.fail("empty line");

    json obj = json::parse(line.begin(), line.end(), nullptr, false);
    if (obj.is_discarded()) p.fail("malformed JSON");
    if (!have_header) {
      parse_header(obj, p, rec);
      have_header = true;
      continue;
    }
    if (!obj.is_object()) p.fail("line must be a JSON object");
    if (obj.contains("round")) {
      parse_frame(obj, p, rec, open);
    } else if (obj.contains("round_end")) {
      parse_round_end(obj, p, rec, open);
    } else {
      p.fail("unrecognized line (expected frame or round_end)");
    }
  }
  if (!have_header) throw ParseError(1, "missing header");
  if (rec.rounds.empty()) throw ParseError(line_no + 1, "at least one round");
  return rec;
}

namespace {

void append_header(std::string& out, const MatchRecording& rec) {
  nlohmann::ordered_json h;
  h["schema_version"] = rec.schema_version;
  h["match_id"] = rec.match_id;
  h["fps"] = rec.fps;
  h["round_limit_seconds"] = rec.round_limit_seconds;
  h["alphabets"]["state"] = rec.alphabets.state;
  h["alphabets"]["sub_state"] = rec.alphabets.sub_state;
  h["alphabets"]["basic_move"] = rec.alphabets.basic_move;
  h["players"] = nlohmann::ordered_json::array();
  for (const auto& p : rec.players) {
    h["players"].push_back({{"id", p.id}, {"controller", p.controller}});
  }
  out += h.dump();
  out += '\n';
}

}  // namespace

std::string write_recording(const MatchRecording& rec) {
  if (rec.rounds.empty()) throw ValidationError("at least one round");
  if (rec.players[0].id.empty() || rec.players[1].id.empty()) {
    throw ValidationError("player count must be 2");
  }

  std::string out;
  std::size_t frames = 0;
  for (const auto& r : rec.rounds) frames += r.frames.size();
  out.reserve(512 + frames * 160);
  append_header(out, rec);

  for (std::size_t r = 0; r < rec.rounds.size(); ++r) {
    const auto round_no = std::to_string(r + 1);
    for (const auto& f : rec.rounds[r].frames) {
      out += "{\"round\":";
      out += round_no;
      out += ",\"f\":";
      out += std::to_string(f.frame_index);
      out += ",\"p\":[";
      for (std::size_t i = 0; i < 2; ++i) {
        const auto& pf = f.players[i];
        if (!std::isfinite(pf.x)) throw ValidationError("non-finite x position");
        if (i) out += ',';
        out += "{\"st\":";
        append_json_string(out, pf.action.state);
        out += ",\"sub\":";
        append_json_string(out, pf.action.sub_state);
        out += ",\"mv\":";
        append_json_string(out, pf.action.basic_move);
        out += ",\"hp\":";
        out += std::to_string(pf.health);
        out += ",\"x\":";
        append_shortest(out, pf.x);
        out += '}';
      }
      out += "]}\n";
    }
    if (rec.rounds[r].outcome) {
      out += "{\"round_end\":";
      out += round_no;
      out += ",\"outcome\":\"";
      out += to_string(*rec.rounds[r].outcome);
      out += "\"}\n";
    }
  }
  return out;
}

std::vector<ActionSequence> extract_action_sequences(const MatchRecording& rec,
                                                     std::string_view player_id,
                                                     SequenceMode mode) {
  const int side = rec.side_of(player_id);
  if (side < 0) {
    throw ValidationError("unknown player \"" + std::string(player_id) + "\" in match " + rec.match_id);
  }
  std::vector<ActionSequence> out;
  out.reserve(rec.rounds.size());
  for (std::size_t r = 0; r < rec.rounds.size(); ++r) {
    ActionSequence seq;
    seq.player_id = std::string(player_id);
    seq.match_id = rec.match_id;
    seq.round_index = r;
    for (const auto& f : rec.rounds[r].frames) {
      const auto& a = f.players[side].action;
      if (mode == SequenceMode::Dedup && !seq.actions.empty() && seq.actions.back() == a) {
        ++seq.run_lengths.back();
      } else {
        seq.actions.push_back(a);
        seq.run_lengths.push_back(1);
      }
    }
    out.push_back(std::move(seq));
  }
  return out;
}

}  // namespace stylemark
