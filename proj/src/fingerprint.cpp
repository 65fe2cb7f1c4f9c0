#include "stylemark/fingerprint.hpp"

#include "stylemark/errors.hpp"

#include <algorithm>
#include <cmath>

namespace stylemark {

std::string_view to_string(Weighting w) { return w == Weighting::Pooled ? "pooled" : "averaged"; }

std::string ngram_key(std::span<const ActionTriple> actions) {
  std::string key;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (i) key += '|';
    key += actions[i].key();
  }
  return key;
}

namespace {

void renormalize(Fingerprint& fp) {
  for (auto& [key, e] : fp.entries) {
    e.prob = static_cast<double>(e.count) / static_cast<double>(fp.total_count);
  }
}

template <typename Value>
double cosine(const Fingerprint& a, const Fingerprint& b, Value value) {
  if (a.empty() || b.empty()) throw ValidationError("empty fingerprint");
  // Walk both supports in key order so the summation order is the same for (a, b) and (b, a).
  double dot = 0.0;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  while (ia != a.entries.end() && ib != b.entries.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += value(ia->second) * value(ib->second);
      ++ia;
      ++ib;
    }
  }
  auto norm = [&](const Fingerprint& f) {
    double s = 0.0;
    for (const auto& [k, e] : f.entries) s += value(e) * value(e);
    return std::sqrt(s);
  };
  const double na = norm(a);
  const double nb = norm(b);
  const double denom = na < nb ? na * nb : nb * na;
  if (denom == 0.0) throw ValidationError("empty fingerprint");
  return std::clamp(dot / denom, 0.0, 1.0);
}

}  // namespace

Fingerprint build_fingerprint(std::span<const ActionSequence> seqs, std::string_view player_id,
                              std::string_view context, int n, SequenceMode mode) {
  if (n < 1) throw ValidationError("n-gram length must be >= 1");
  Fingerprint fp;
  fp.player_id = std::string(player_id);
  fp.context = std::string(context);
  fp.n = n;
  fp.mode = mode;
  const auto width = static_cast<std::size_t>(n);
  for (const auto& seq : seqs) {
    if (seq.player_id != player_id) {
      throw ValidationError("sequence of player \"" + seq.player_id + "\" passed for \"" +
                            std::string(player_id) + "\"");
    }
    if (seq.actions.size() < width) continue;
    std::vector<std::string> keys;
    keys.reserve(seq.actions.size());
    for (const auto& a : seq.actions) keys.push_back(a.key());
    std::string window;
    for (std::size_t i = 0; i + width <= keys.size(); ++i) {
      window.clear();
      for (std::size_t j = 0; j < width; ++j) {
        if (j) window += '|';
        window += keys[i + j];
      }
      ++fp.entries[window].count;
      ++fp.total_count;
    }
  }
  if (!fp.empty()) renormalize(fp);
  return fp;
}

Fingerprint merge_fingerprints(std::span<const Fingerprint> fps, Weighting weighting) {
  if (fps.empty()) throw ValidationError("nothing to merge");
  Fingerprint out;
  out.player_id = fps.front().player_id;
  out.context = fps.front().context;
  out.n = fps.front().n;
  out.mode = fps.front().mode;
  out.weighting = weighting;
  for (const auto& fp : fps) {
    if (fp.player_id != out.player_id) {
      throw ValidationError("cannot merge fingerprints of \"" + out.player_id + "\" and \"" +
                            fp.player_id + "\"");
    }
    if (fp.n != out.n) throw ValidationError("cannot merge fingerprints with different n");
    if (fp.mode != out.mode) throw ValidationError("cannot merge fingerprints with different modes");
    if (fp.context != out.context) out.context = "merged";
    for (const auto& [key, e] : fp.entries) out.entries[key].count += e.count;
    out.total_count += fp.total_count;
  }
  if (weighting == Weighting::Pooled) {
    if (!out.empty()) renormalize(out);
    return out;
  }
  const auto k = static_cast<double>(fps.size());
  for (const auto& fp : fps) {
    if (fp.empty()) throw ValidationError("empty fingerprint");
    for (const auto& [key, e] : fp.entries) out.entries[key].prob += e.prob / k;
  }
  return out;
}

double cosine_similarity(const Fingerprint& a, const Fingerprint& b) {
  return cosine(a, b, [](const FingerprintEntry& e) { return e.prob; });
}

double cosine_similarity_counts(const Fingerprint& a, const Fingerprint& b) {
  return cosine(a, b, [](const FingerprintEntry& e) { return static_cast<double>(e.count); });
}

nlohmann::ordered_json fingerprint_to_json(const Fingerprint& fp) {
  nlohmann::ordered_json j;
  j["schema_version"] = kFingerprintSchemaVersion;
  j["player"] = fp.player_id;
  j["context"] = fp.context;
  j["n"] = fp.n;
  j["mode"] = std::string(to_string(fp.mode));
  if (fp.weighting != Weighting::Pooled) j["weighting"] = std::string(to_string(fp.weighting));
  j["total_count"] = fp.total_count;
  auto& entries = j["entries"] = nlohmann::ordered_json::array();
  for (const auto& [key, e] : fp.entries) {
    entries.push_back({{"key", key}, {"count", e.count}, {"prob", e.prob}});
  }
  return j;
}

Fingerprint fingerprint_from_json(const nlohmann::json& j) {
  auto fail = [](const std::string& what) -> void { throw ValidationError("fingerprint: " + what); };
  if (!j.is_object()) fail("not a JSON object");
  auto require = [&](const char* key) -> const nlohmann::json& {
    auto it = j.find(key);
    if (it == j.end()) fail(std::string("missing field \"") + key + "\"");
    return *it;
  };
  if (!require("schema_version").is_number_integer() ||
      j["schema_version"].get<int>() != kFingerprintSchemaVersion) {
    fail("unsupported schema_version");
  }
  Fingerprint fp;
  if (!require("player").is_string() || !require("context").is_string()) {
    fail("player and context must be strings");
  }
  fp.player_id = j["player"].get<std::string>();
  fp.context = j["context"].get<std::string>();
  if (!require("n").is_number_integer() || j["n"].get<int>() < 1) fail("n must be a positive integer");
  fp.n = j["n"].get<int>();
  if (auto it = j.find("mode"); it != j.end()) {
    auto mode = it->is_string() ? parse_sequence_mode(it->get<std::string>()) : std::nullopt;
    if (!mode) fail("unknown mode");
    fp.mode = *mode;
  }
  if (auto it = j.find("weighting"); it != j.end()) {
    if (*it == "pooled") {
      fp.weighting = Weighting::Pooled;
    } else if (*it == "averaged") {
      fp.weighting = Weighting::Averaged;
    } else {
      fail("unknown weighting");
    }
  }
  if (!require("total_count").is_number_integer()) fail("total_count must be an integer");
  fp.total_count = j["total_count"].get<std::int64_t>();
  const auto& entries = require("entries");
  if (!entries.is_array()) fail("entries must be an array");

  std::int64_t sum = 0;
  double prob_sum = 0.0;
  const std::string* prev = nullptr;
  for (const auto& e : entries) {
    if (!e.is_object() || !e.contains("key") || !e.contains("count") || !e.contains("prob") ||
        !e["key"].is_string() || !e["count"].is_number_integer() || !e["prob"].is_number()) {
      fail("malformed entry");
    }
    auto key = e["key"].get<std::string>();
    FingerprintEntry entry{e["count"].get<std::int64_t>(), e["prob"].get<double>()};
    if (entry.count < 1) fail("entry count must be positive: " + key);
    if (!(entry.prob >= 0.0 && entry.prob <= 1.0)) fail("entry prob out of [0, 1]: " + key);
    if (std::count(key.begin(), key.end(), '|') != fp.n - 1) fail("key arity does not match n: " + key);
    auto [it, inserted] = fp.entries.emplace(std::move(key), entry);
    if (!inserted) fail("duplicate key " + it->first);
    if (prev && !(*prev < it->first)) fail("entries not sorted by key");
    prev = &it->first;
    sum += entry.count;
    prob_sum += entry.prob;
  }
  if (sum != fp.total_count) fail("total_count does not equal the sum of entry counts");
  if (fp.total_count > 0 && std::abs(prob_sum - 1.0) > 1e-9) fail("probabilities do not sum to 1");
  return fp;
}

}  // namespace stylemark
