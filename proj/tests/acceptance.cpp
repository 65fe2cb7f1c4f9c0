// Acceptance checks; one PASS/FAIL line per criterion.
//   acceptance            run everything
//   acceptance <name>...  run the named criteria only

#include "cli.hpp"
#include "fixtures.hpp"
#include "stylemark/arena.hpp"
#include "stylemark/fingerprint.hpp"
#include "stylemark/io.hpp"
#include "stylemark/profile.hpp"
#include "stylemark/recording.hpp"
#include "stylemark/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace stylemark;
namespace fs = std::filesystem;

namespace {

constexpr double kFixtureTol = 1e-9;
constexpr double kCosineTol = 1e-12;
constexpr double kMinGap = 0.05;
constexpr double kMinAccuracy = 0.80;
constexpr double kMaxSeconds = 120.0;
constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void fail(const std::string& why) {
    pass = false;
    notes.push_back(why);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

unsigned jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("stylemark_acceptance_" + name);
  fs::remove_all(p);
  return p;
}

// ---- fixtures ----

Outcome fixture_arithmetic() {
  Outcome o;
  for (const auto& row : fixtures::consistency_rows()) {
    const auto r = consistency_from_scores(row.player, row.scores);
    for (auto [name, got, want] : {std::tuple{"min", r.min, row.min}, {"max", r.max, row.max}, {"avg", r.avg, row.avg}}) {
      if (std::abs(got - want) > kFixtureTol) {
        o.fail("consistency " + row.player + " " + name + " " + num(got, 10) + " != " + num(want, 2));
      }
    }
  }
  const auto rows = cross_group_summary(fixtures::cross_group_matrix(), fixtures::cross_group_groups());
  for (const auto& want : fixtures::cross_group_rows()) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const auto& r) { return r.label == want.label; });
    if (it == rows.end()) {
      o.fail("cross-group row " + want.label + " missing");
      continue;
    }
    auto check = [&](const char* name, std::optional<double> got, double w) {
      if (!got || std::abs(*got - w) > kFixtureTol) {
        o.fail("cross-group " + want.label + " " + name + " " + (got ? num(*got, 10) : "undefined") +
               " != " + num(w, 2));
      }
    };
    check("with_ai", it->similarity_with_ai, want.with_ai);
    check("avg_humans", it->avg_with_humans, want.avg_humans);
    check("median_humans", it->median_with_humans, want.median_humans);
  }
  o.note("5 consistency rows, 5 cross-group rows, tol " + std::string("1e-9"));
  return o;
}

// ---- cosine properties ----

std::vector<ActionTriple> alphabet(int k) {
  std::vector<ActionTriple> a;
  for (int i = 0; i < k; ++i) a.push_back({"S" + std::to_string(i), "Resting", "M" + std::to_string(i)});
  return a;
}

Fingerprint random_fingerprint(SplitMix64& rng, const std::vector<ActionTriple>& symbols, const std::string& player) {
  std::vector<ActionSequence> seqs(1 + rng.below(3));
  for (auto& s : seqs) {
    s.player_id = player;
    const auto len = 3 + rng.below(40);
    for (std::uint64_t i = 0; i < len; ++i) {
      s.actions.push_back(symbols[rng.below(symbols.size())]);
      s.run_lengths.push_back(1);
    }
  }
  return build_fingerprint(seqs, player, "c", 3, SequenceMode::PerFrame);
}

// Brute force over every trigram of the alphabet, probabilities recomputed from counts.
double dense_cosine(const Fingerprint& a, const Fingerprint& b, const std::vector<ActionTriple>& symbols) {
  long double dot = 0, na = 0, nb = 0;
  for (const auto& x : symbols) {
    for (const auto& y : symbols) {
      for (const auto& z : symbols) {
        const std::vector<ActionTriple> t{x, y, z};
        const auto key = ngram_key(t);
        auto value = [&](const Fingerprint& f) -> long double {
          auto it = f.entries.find(key);
          return it == f.entries.end() ? 0.0L
                                       : static_cast<long double>(it->second.count) / f.total_count;
        };
        const long double va = value(a), vb = value(b);
        dot += va * vb;
        na += va * va;
        nb += vb * vb;
      }
    }
  }
  return static_cast<double>(dot / std::sqrt(na * nb));
}

Outcome cosine_properties() {
  Outcome o;
  SplitMix64 rng(20240601);
  const auto five = alphabet(5);
  std::vector<Fingerprint> fps;
  for (int i = 0; i < 1000; ++i) fps.push_back(random_fingerprint(rng, five, "p"));
  double worst_self = 0, worst_scale = 0;
  int range_bad = 0, sym_bad = 0;
  for (std::size_t i = 0; i < fps.size(); ++i) {
    const auto& a = fps[i];
    const auto& b = fps[(i * 7 + 1) % fps.size()];
    const double ab = cosine_similarity(a, b);
    if (!(ab >= 0.0 && ab <= 1.0)) ++range_bad;
    if (ab != cosine_similarity(b, a)) ++sym_bad;
    worst_self = std::max(worst_self, std::abs(cosine_similarity(a, a) - 1.0));
    worst_scale = std::max(worst_scale, std::abs(cosine_similarity_counts(a, b) - ab));
  }
  if (range_bad) o.fail(std::to_string(range_bad) + " similarities outside [0,1]");
  if (sym_bad) o.fail(std::to_string(sym_bad) + " asymmetric pairs");
  if (worst_self > kCosineTol) o.fail("self-similarity off by " + num(worst_self, 16));
  if (worst_scale > kCosineTol) o.fail("count vs probability cosine off by " + num(worst_scale, 16));

  double worst_dense = 0;
  for (int k = 1; k <= 4; ++k) {
    const auto small = alphabet(k);
    for (int i = 0; i < 250; ++i) {
      const auto a = random_fingerprint(rng, small, "p");
      const auto b = random_fingerprint(rng, small, "p");
      worst_dense = std::max(worst_dense, std::abs(cosine_similarity(a, b) - dense_cosine(a, b, small)));
    }
  }
  if (worst_dense > kCosineTol) o.fail("sparse vs dense off by " + num(worst_dense, 16));
  o.note("1000 fingerprints; max |self-1| " + num(worst_self, 16) + ", max scale diff " + num(worst_scale, 16) +
         ", max dense diff " + num(worst_dense, 16));
  return o;
}

// ---- seed-42 tournament ----

struct Tournament {
  std::vector<MatchRecording> recordings;
  std::vector<MatchFingerprint> match_fps;
  std::vector<BehaviorProfile> contextual;
};

Tournament seed42() {
  const auto presets = arena::builtin_presets();
  arena::SimConfig cfg;
  cfg.seed = kSeed;
  const auto plans = arena::plan_tournament(presets, 10, kSeed);
  Tournament t;
  t.recordings.resize(plans.size());
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (unsigned w = 0; w < jobs(); ++w) {
    pool.emplace_back([&] {
      for (auto i = next++; i < plans.size(); i = next++) {
        // Through the file format, as the CLI sees it.
        t.recordings[i] = parse_recording(write_recording(arena::simulate_planned(plans[i], cfg)));
      }
    });
  }
  for (auto& th : pool) th.join();
  ProfileBuilder builder;
  for (const auto& rec : t.recordings) {
    for (auto& mf : match_fingerprints(rec)) {
      builder.add(mf.fingerprint);
      t.match_fps.push_back(std::move(mf));
    }
  }
  for (const auto& p : builder.players()) {
    const auto v = builder.opponent_profiles(p);
    t.contextual.insert(t.contextual.end(), v.begin(), v.end());
  }
  return t;
}

Outcome separation() {
  Outcome o;
  const auto t = seed42();
  for (const auto& r : separation_summary(t.contextual)) {
    const std::string line = r.player_id + " same " + num(r.same, 3) + " cross " + num(r.cross, 3) + " gap " +
                             num(r.gap(), 3);
    if (!(r.same > r.cross) || r.gap() < kMinGap) {
      o.fail(line);
    } else {
      o.note(line);
    }
  }
  return o;
}

Outcome identification() {
  Outcome o;
  const auto t = seed42();
  const auto loo = leave_one_match_out(t.match_fps);
  if (loo.accuracy() < kMinAccuracy) o.fail("accuracy " + num(loo.accuracy(), 3) + " < 0.80");
  o.note("top-1 " + num(loo.accuracy(), 3) + " (" + std::to_string(loo.correct()) + "/" +
         std::to_string(loo.total()) + ")");
  for (const auto& p : loo.players) o.note(p + " " + num(loo.accuracy_of(p), 3));
  // Adjacent presets, reported only: queries of either one, judged between the two.
  auto idx = [&](const std::string& p) {
    return static_cast<std::size_t>(std::find(loo.players.begin(), loo.players.end(), p) - loo.players.begin());
  };
  const auto h = idx("hard"), vh = idx("very-hard");
  const int right = loo.confusion[h][h] + loo.confusion[vh][vh];
  const int wrong = loo.confusion[h][vh] + loo.confusion[vh][h];
  o.note("hard vs very-hard " + num(static_cast<double>(right) / std::max(1, right + wrong), 3) + " (" +
         std::to_string(wrong) + " swapped)");
  return o;
}

// ---- determinism and round trip ----

std::map<std::string, std::uint64_t> checksums(const fs::path& dir) {
  std::map<std::string, std::uint64_t> out;
  for (const auto& e : fs::directory_iterator(dir)) out[e.path().filename().string()] = fnv1a64(read_file(e.path()));
  return out;
}

Outcome determinism() {
  Outcome o;
  const auto root = scratch("determinism");
  arena::SimConfig cfg;
  cfg.seed = kSeed;
  const auto presets = arena::builtin_presets();
  arena::run_tournament(presets, 10, cfg, root / "j1", 1);
  arena::run_tournament(presets, 10, cfg, root / "j4", 4);
  arena::run_tournament(presets, 10, cfg, root / "again", jobs());
  const auto a = checksums(root / "j1");
  if (a.size() != 101) o.fail("expected 101 files, got " + std::to_string(a.size()));
  if (checksums(root / "j4") != a) o.fail("jobs 1 and jobs 4 differ");
  if (checksums(root / "again") != a) o.fail("rerun differs");

  int round_trip_bad = 0, bytes_bad = 0;
  for (const auto& [name, sum] : a) {
    if (name == "manifest.json") continue;
    const auto text = read_file(root / "j1" / name);
    const auto rec = parse_recording(text);
    if (parse_recording(write_recording(rec)) != rec) ++round_trip_bad;
    if (write_recording(rec) != text) ++bytes_bad;
  }
  if (round_trip_bad) o.fail(std::to_string(round_trip_bad) + " recordings fail parse(write(x)) == x");
  if (bytes_bad) o.fail(std::to_string(bytes_bad) + " recordings are not canonical");
  o.note(std::to_string(a.size()) + " files identical across jobs 1/4/" + std::to_string(jobs()) +
         "; 100 recordings round-trip");
  fs::remove_all(root);
  return o;
}

// ---- protocol counts through the CLI ----

Outcome protocol_counts() {
  Outcome o;
  const auto root = scratch("protocol");
  std::ostringstream out, err;
  const int code = cli::run({"stylemark", "simulate", "--presets", "all", "--matches", "10", "--seed", "42", "--out",
                             root.string()},
                            out, err);
  if (code != 0) {
    o.fail("simulate exited " + std::to_string(code) + ": " + err.str());
    return o;
  }
  std::map<std::string, int> per_pair;
  int files = 0, timeouts = 0, kos = 0, bad_timeout = 0, bad_ko = 0, bad_rounds = 0;
  for (const auto& e : fs::directory_iterator(root)) {
    if (e.path().extension() != ".jsonl") continue;
    ++files;
    const auto name = e.path().stem().string();
    ++per_pair[name.substr(0, name.rfind('_'))];
    const auto rec = parse_recording(read_file(e.path()));
    if (rec.rounds.size() != 2) ++bad_rounds;
    const auto limit = static_cast<std::size_t>(rec.fps) * 100;
    for (const auto& r : rec.rounds) {
      if (r.outcome == RoundOutcome::Timeout) {
        ++timeouts;
        if (r.frames.size() != limit) ++bad_timeout;
      } else {
        ++kos;
        if (r.frames.size() >= limit) ++bad_ko;
      }
    }
  }
  if (files != 100) o.fail(std::to_string(files) + " recordings, expected 100");
  if (per_pair.size() != 10) o.fail(std::to_string(per_pair.size()) + " pairs, expected 10");
  for (const auto& [pair, n] : per_pair) {
    if (n != 10) o.fail(pair + " has " + std::to_string(n) + " matches");
  }
  if (bad_rounds) o.fail(std::to_string(bad_rounds) + " matches without 2 rounds");
  if (bad_timeout) o.fail(std::to_string(bad_timeout) + " timeout rounds not exactly fps x 100 frames");
  if (bad_ko) o.fail(std::to_string(bad_ko) + " knockout rounds at full length");
  o.note("10 pairs x 10 matches; " + std::to_string(timeouts) + " timeout rounds at 6000 frames, " +
         std::to_string(kos) + " knockout rounds shorter");
  fs::remove_all(root);
  return o;
}

// ---- runtime ----

Outcome runtime() {
  Outcome o;
  const auto root = scratch("runtime");
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream out, err;
  const int code = cli::run({"stylemark", "--jobs", std::to_string(std::min(4u, jobs())), "tournament", "--presets",
                             "all", "--matches", "10", "--seed", "42", "--out", root.string()},
                            out, err);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (code != 0) o.fail("tournament exited " + std::to_string(code) + ": " + err.str());
  if (secs >= kMaxSeconds) o.fail(num(secs, 1) + " s >= 120 s");
  o.note("simulate + fingerprint + report in " + num(secs, 1) + " s on " + std::to_string(std::min(4u, jobs())) +
         " threads");
  fs::remove_all(root);
  return o;
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome()>>> all{
      {"fixture_arithmetic", fixture_arithmetic}, {"cosine_properties", cosine_properties},
      {"separation", separation},                 {"identification", identification},
      {"determinism", determinism},               {"protocol_counts", protocol_counts},
      {"runtime", runtime},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> wanted(argv + 1, argv + argc);
  int failed = 0, ran = 0;
  for (const auto& [name, fn] : criteria()) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), name) == wanted.end()) continue;
    ++ran;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name;
    for (std::size_t i = 0; i < o.notes.size(); ++i) std::cout << (i == 0 ? ": " : "; ") << o.notes[i];
    std::cout << "\n";
    if (!o.pass) ++failed;
  }
  if (ran == 0) {
    std::cerr << "no such criterion\n";
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
