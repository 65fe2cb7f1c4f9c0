#include "stylemark/profile.hpp"

#include "stylemark/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <set>
#include <thread>

namespace stylemark {

std::string BehaviorProfile::label() const {
  if (context == kGeneralizedContext) return player_id;
  return player_id + "@" + context;
}

nlohmann::ordered_json profile_to_json(const BehaviorProfile& profile) {
  auto j = fingerprint_to_json(profile.fingerprint);
  j["match_count"] = profile.match_count;
  return j;
}

BehaviorProfile profile_from_json(const nlohmann::json& j) {
  BehaviorProfile p;
  p.fingerprint = fingerprint_from_json(j);
  p.player_id = p.fingerprint.player_id;
  p.context = p.fingerprint.context;
  auto it = j.find("match_count");
  if (it == j.end() || !it->is_number_integer() || it->get<int>() < 0) {
    throw ValidationError("profile: match_count must be a non-negative integer");
  }
  p.match_count = it->get<int>();
  return p;
}

void ProfileBuilder::add(const MatchRecording& rec) {
  for (const auto& mf : match_fingerprints(rec, mode_, n_)) add(mf.fingerprint);
}

void ProfileBuilder::add(const Fingerprint& match_fp) {
  if (match_fp.n != n_ || match_fp.mode != mode_) {
    throw ValidationError("fingerprint n or mode does not match the profile builder");
  }
  auto& slot = slots_[match_fp.player_id][match_fp.context];
  if (slot.match_count == 0) {
    slot.fingerprint.player_id = match_fp.player_id;
    slot.fingerprint.context = match_fp.context;
    slot.fingerprint.n = n_;
    slot.fingerprint.mode = mode_;
  }
  for (const auto& [key, e] : match_fp.entries) slot.fingerprint.entries[key].count += e.count;
  slot.fingerprint.total_count += match_fp.total_count;
  ++slot.match_count;
}

bool ProfileBuilder::has_player(std::string_view player_id) const {
  return slots_.find(player_id) != slots_.end();
}

std::vector<std::string> ProfileBuilder::players() const {
  std::vector<std::string> out;
  for (const auto& [p, _] : slots_) out.push_back(p);
  return out;
}

std::vector<BehaviorProfile> ProfileBuilder::opponent_profiles(std::string_view player_id) const {
  auto it = slots_.find(player_id);
  if (it == slots_.end()) {
    throw ValidationError("player \"" + std::string(player_id) + "\" not found in any recording");
  }
  std::vector<BehaviorProfile> out;
  for (const auto& [opponent, slot] : it->second) {
    BehaviorProfile p;
    p.player_id = std::string(player_id);
    p.context = opponent;
    p.fingerprint = merge_fingerprints(std::span(&slot.fingerprint, 1));
    p.match_count = slot.match_count;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<BehaviorProfile> build_opponent_profiles(std::span<const MatchRecording> recs,
                                                     std::string_view player_id,
                                                     SequenceMode mode) {
  if (recs.empty()) return {};
  ProfileBuilder builder(mode);
  for (const auto& rec : recs) {
    if (rec.side_of(player_id) >= 0) builder.add(rec);
  }
  return builder.opponent_profiles(player_id);
}

BehaviorProfile build_generalized_profile(std::span<const BehaviorProfile> profiles,
                                          Weighting weighting) {
  if (profiles.empty()) throw ValidationError("no profiles to generalize");
  std::vector<Fingerprint> fps;
  BehaviorProfile out;
  out.player_id = profiles.front().player_id;
  out.context = std::string(kGeneralizedContext);
  for (const auto& p : profiles) {
    if (p.player_id != out.player_id) {
      throw ValidationError("mixed players in generalized profile: \"" + out.player_id + "\" and \"" +
                            p.player_id + "\"");
    }
    fps.push_back(p.fingerprint);
    out.match_count += p.match_count;
  }
  out.fingerprint = merge_fingerprints(fps, weighting);
  out.fingerprint.context = out.context;
  return out;
}

ConsistencyReport consistency_from_scores(std::string_view player_id, std::span<const double> scores) {
  if (scores.empty()) throw ValidationError("consistency needs at least one pairwise score");
  ConsistencyReport r;
  r.player_id = std::string(player_id);
  r.min = *std::min_element(scores.begin(), scores.end());
  r.max = *std::max_element(scores.begin(), scores.end());
  // Sorted summation keeps the mean independent of input order.
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  r.avg = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size());
  r.avg = std::clamp(r.avg, r.min, r.max);
  r.pair_count = scores.size();
  return r;
}

ConsistencyReport consistency_stats(std::span<const BehaviorProfile> profiles) {
  if (profiles.size() < 2) throw ValidationError("consistency needs at least 2 profiles");
  for (const auto& p : profiles) {
    if (p.player_id != profiles.front().player_id) {
      throw ValidationError("consistency over mixed players");
    }
  }
  std::vector<double> scores;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    for (std::size_t j = i + 1; j < profiles.size(); ++j) {
      scores.push_back(cosine_similarity(profiles[i].fingerprint, profiles[j].fingerprint));
    }
  }
  return consistency_from_scores(profiles.front().player_id, scores);
}

std::optional<std::size_t> SimilarityMatrix::index_of(std::string_view label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels.begin());
}

void SimilarityMatrix::validate(double tolerance) const {
  const auto n = labels.size();
  if (values.size() != n * n) throw ValidationError("matrix is not square");
  std::set<std::string> unique(labels.begin(), labels.end());
  if (unique.size() != n) throw ValidationError("duplicate matrix labels");
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(at(i, i) - 1.0) > tolerance) {
      throw ValidationError("matrix diagonal is not 1 at " + labels[i]);
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double v = at(i, j);
      if (!(v >= -tolerance && v <= 1.0 + tolerance)) {
        throw ValidationError("matrix entry out of [0, 1] at " + labels[i] + "," + labels[j]);
      }
      if (std::abs(v - at(j, i)) > tolerance) {
        throw ValidationError("matrix is not symmetric at " + labels[i] + "," + labels[j]);
      }
    }
  }
}

SimilarityMatrix similarity_matrix(std::span<const std::pair<std::string, Fingerprint>> items,
                                   unsigned jobs) {
  SimilarityMatrix m;
  const auto n = items.size();
  for (const auto& [label, fp] : items) {
    if (fp.empty()) throw ValidationError("empty fingerprint: " + label);
    m.labels.push_back(label);
  }
  m.values.assign(n * n, 0.0);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    m.at(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < pairs.size(); k = next++) {
      const auto [i, j] = pairs[k];
      const double v = cosine_similarity(items[i].second, items[j].second);
      m.at(i, j) = v;
      m.at(j, i) = v;
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, pairs.size()))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
  }
  m.validate();
  return m;
}

SimilarityMatrix similarity_matrix(std::span<const BehaviorProfile> profiles, unsigned jobs) {
  std::vector<std::pair<std::string, Fingerprint>> items;
  items.reserve(profiles.size());
  for (const auto& p : profiles) items.emplace_back(p.label(), p.fingerprint);
  return similarity_matrix(items, jobs);
}

double median(std::vector<double> values) {
  if (values.empty()) throw ValidationError("median of an empty set");
  std::sort(values.begin(), values.end());
  const auto n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

std::vector<CrossGroupRow> cross_group_summary(const SimilarityMatrix& matrix,
                                               const std::map<std::string, Group, std::less<>>& groups) {
  const auto n = matrix.size();
  std::vector<Group> group_of(n);
  std::vector<std::size_t> ai;
  for (std::size_t i = 0; i < n; ++i) {
    auto it = groups.find(matrix.labels[i]);
    if (it == groups.end()) {
      throw ValidationError("missing group assignment for \"" + matrix.labels[i] + "\"");
    }
    group_of[i] = it->second;
    if (it->second == Group::Ai) ai.push_back(i);
  }
  if (ai.empty()) throw ValidationError("cross-group summary needs at least one AI label");

  std::vector<CrossGroupRow> rows;
  for (std::size_t i = 0; i < n; ++i) {
    CrossGroupRow row;
    row.label = matrix.labels[i];
    row.group = group_of[i];
    double sum = 0.0;
    for (auto a : ai) sum += matrix.at(i, a);
    row.similarity_with_ai = sum / static_cast<double>(ai.size());

    std::vector<double> humans;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && group_of[j] == Group::Human) humans.push_back(matrix.at(i, j));
    }
    if (!humans.empty()) {
      std::vector<double> sorted = humans;
      std::sort(sorted.begin(), sorted.end());
      row.avg_with_humans =
          std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size());
      row.median_with_humans = median(std::move(humans));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

IdentificationResult identify_player(const Fingerprint& query,
                                     std::span<const BehaviorProfile> gallery,
                                     std::string_view query_label) {
  if (gallery.empty()) throw ValidationError("empty gallery");
  IdentificationResult r;
  r.query_label = std::string(query_label);
  for (const auto& p : gallery) r.ranking.emplace_back(p.label(), cosine_similarity(query, p.fingerprint));
  std::sort(r.ranking.begin(), r.ranking.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return r;
}

std::vector<SeparationRow> separation_summary(std::span<const BehaviorProfile> profiles) {
  std::map<std::string, std::vector<const BehaviorProfile*>> by_player;
  for (const auto& p : profiles) by_player[p.player_id].push_back(&p);
  if (by_player.size() < 2) throw ValidationError("separation needs at least two players");
  std::vector<SeparationRow> rows;
  for (const auto& [player, mine] : by_player) {
    if (mine.size() < 2) {
      throw ValidationError("separation needs at least two contexts for \"" + player + "\"");
    }
    SeparationRow row;
    row.player_id = player;
    std::vector<double> same;
    for (std::size_t i = 0; i < mine.size(); ++i) {
      for (std::size_t j = i + 1; j < mine.size(); ++j) {
        same.push_back(cosine_similarity(mine[i]->fingerprint, mine[j]->fingerprint));
      }
    }
    std::vector<double> cross;
    for (const auto* m : mine) {
      for (const auto& o : profiles) {
        if (o.player_id != player) cross.push_back(cosine_similarity(m->fingerprint, o.fingerprint));
      }
    }
    row.same = consistency_from_scores(player, same).avg;
    row.cross = consistency_from_scores(player, cross).avg;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<MatchFingerprint> match_fingerprints(const MatchRecording& rec, SequenceMode mode, int n) {
  std::vector<MatchFingerprint> out;
  for (int side = 0; side < 2; ++side) {
    const auto& me = rec.players[side].id;
    const auto seqs = extract_action_sequences(rec, me, mode);
    out.push_back({rec.match_id, build_fingerprint(seqs, me, rec.players[1 - side].id, n, mode)});
  }
  return out;
}

int LeaveOneOutResult::total() const {
  int t = 0;
  for (const auto& row : confusion) t = std::accumulate(row.begin(), row.end(), t);
  return t;
}

int LeaveOneOutResult::correct() const {
  int c = 0;
  for (std::size_t i = 0; i < confusion.size(); ++i) c += confusion[i][i];
  return c;
}

double LeaveOneOutResult::accuracy() const {
  const int t = total();
  return t == 0 ? 0.0 : static_cast<double>(correct()) / t;
}

double LeaveOneOutResult::accuracy_of(std::string_view player) const {
  auto it = std::find(players.begin(), players.end(), player);
  if (it == players.end()) throw ValidationError("unknown player \"" + std::string(player) + "\"");
  const auto& row = confusion[static_cast<std::size_t>(it - players.begin())];
  const int t = std::accumulate(row.begin(), row.end(), 0);
  return t == 0 ? 0.0 : static_cast<double>(row[static_cast<std::size_t>(it - players.begin())]) / t;
}

LeaveOneOutResult leave_one_match_out(std::span<const MatchFingerprint> fps) {
  if (fps.empty()) throw ValidationError("leave-one-out needs at least one match");
  using Counts = std::map<std::string, std::int64_t>;
  std::map<std::string, Counts> pooled;
  std::map<std::string, std::vector<std::size_t>> by_match;
  for (std::size_t i = 0; i < fps.size(); ++i) {
    const auto& fp = fps[i].fingerprint;
    if (fp.n != fps.front().fingerprint.n || fp.mode != fps.front().fingerprint.mode) {
      throw ValidationError("leave-one-out over fingerprints with different n or mode");
    }
    auto& counts = pooled[fp.player_id];
    for (const auto& [key, e] : fp.entries) counts[key] += e.count;
    by_match[fps[i].match_id].push_back(i);
  }

  auto profile_of = [&](const std::string& player, const Counts& counts) {
    BehaviorProfile p;
    p.player_id = player;
    p.context = std::string(kGeneralizedContext);
    p.fingerprint.player_id = player;
    p.fingerprint.context = p.context;
    p.fingerprint.n = fps.front().fingerprint.n;
    p.fingerprint.mode = fps.front().fingerprint.mode;
    for (const auto& [key, c] : counts) {
      if (c == 0) continue;
      p.fingerprint.entries[key].count = c;
      p.fingerprint.total_count += c;
    }
    for (auto& [key, e] : p.fingerprint.entries) {
      e.prob = static_cast<double>(e.count) / static_cast<double>(p.fingerprint.total_count);
    }
    return p;
  };

  LeaveOneOutResult r;
  for (const auto& [player, _] : pooled) r.players.push_back(player);
  r.confusion.assign(r.players.size(), std::vector<int>(r.players.size(), 0));
  auto index = [&](const std::string& player) {
    return static_cast<std::size_t>(std::lower_bound(r.players.begin(), r.players.end(), player) -
                                    r.players.begin());
  };

  for (const auto& [match_id, members] : by_match) {
    std::map<std::string, Counts> held_out = pooled;
    for (auto i : members) {
      auto& counts = held_out[fps[i].fingerprint.player_id];
      for (const auto& [key, e] : fps[i].fingerprint.entries) counts[key] -= e.count;
    }
    std::vector<BehaviorProfile> gallery;
    for (const auto& [player, counts] : held_out) {
      auto p = profile_of(player, counts);
      if (!p.fingerprint.empty()) gallery.push_back(std::move(p));
    }
    for (auto i : members) {
      const auto& query = fps[i].fingerprint;
      if (query.empty() || gallery.empty()) continue;
      const auto result = identify_player(query, gallery);
      ++r.confusion[index(query.player_id)][index(result.best().first)];
    }
  }
  return r;
}

std::vector<std::vector<std::string>> partition_by_threshold(const SimilarityMatrix& matrix,
                                                             double threshold) {
  const auto n = matrix.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (matrix.at(i, j) >= threshold) parent[find(i)] = find(j);
    }
  }
  std::map<std::size_t, std::vector<std::string>> by_root;
  for (std::size_t i = 0; i < n; ++i) by_root[find(i)].push_back(matrix.labels[i]);
  std::vector<std::vector<std::string>> clusters;
  for (auto& [root, members] : by_root) {
    std::sort(members.begin(), members.end());
    clusters.push_back(std::move(members));
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return clusters;
}

}  // namespace stylemark
