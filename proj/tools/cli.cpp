#include "cli.hpp"

#include "stylemark/arena.hpp"
#include "stylemark/errors.hpp"
#include "stylemark/fingerprint.hpp"
#include "stylemark/format.hpp"
#include "stylemark/io.hpp"
#include "stylemark/profile.hpp"
#include "stylemark/recording.hpp"
#include "stylemark/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace stylemark::cli {

namespace {

namespace fs = std::filesystem;

unsigned default_jobs() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

struct Globals {
  std::uint64_t seed = 42;
  unsigned jobs = default_jobs();
  std::string mode = "dedup";
  std::string format = "csv";
  std::string config;

  SequenceMode sequence_mode() const { return *parse_sequence_mode(mode); }
};

struct Output {
  fs::path path;
  std::string content;
};

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

// Everything is computed before the first write, so a failure leaves no partial output set.
void write_all(const std::vector<Output>& outputs) {
  for (const auto& o : outputs) {
    if (o.path.has_parent_path()) make_dir(o.path.parent_path());
  }
  for (const auto& o : outputs) write_file_atomic(o.path, o.content);
}

nlohmann::json parse_json_file(const fs::path& path) {
  const auto text = read_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path.string() + ": malformed JSON: " + e.what());
  }
}

template <typename F>
auto with_path(const fs::path& path, F&& f) {
  try {
    return f();
  } catch (const IoError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

// Files given directly are kept as they are; directories contribute their files with the
// extension, in name order.
std::vector<fs::path> collect_files(const std::vector<std::string>& inputs, std::string_view ext) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    const fs::path p(in);
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(p, ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ext) found.push_back(entry.path());
      }
      if (ec) throw IoError("cannot list " + p.string());
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else if (fs::exists(p, ec)) {
      out.push_back(p);
    } else {
      throw IoError("no such file or directory: " + p.string());
    }
  }
  if (out.empty()) throw ValidationError("no " + std::string(ext) + " files in the given inputs");
  return out;
}

MatchRecording load_recording(const fs::path& path) {
  const auto text = read_file(path);
  return with_path(path, [&] { return parse_recording(text); });
}

// Profile JSON, or a bare fingerprint (match_count 0). The label is the file stem.
struct LabelledProfile {
  std::string label;
  BehaviorProfile profile;
};

LabelledProfile load_profile(const fs::path& path) {
  const auto j = parse_json_file(path);
  return with_path(path, [&] {
    LabelledProfile lp;
    lp.label = path.stem().string();
    if (j.is_object() && j.contains("match_count")) {
      lp.profile = profile_from_json(j);
    } else {
      lp.profile.fingerprint = fingerprint_from_json(j);
      lp.profile.player_id = lp.profile.fingerprint.player_id;
      lp.profile.context = lp.profile.fingerprint.context;
    }
    return lp;
  });
}

std::vector<LabelledProfile> load_profiles(const std::vector<std::string>& inputs) {
  std::vector<LabelledProfile> out;
  for (const auto& path : collect_files(inputs, ".json")) out.push_back(load_profile(path));
  return out;
}

std::string safe_file_name(std::string s) {
  for (char& c : s) {
    if (c == '/' || c == '\\' || static_cast<unsigned char>(c) < 0x20) c = '_';
  }
  return s;
}

std::string profile_json(const BehaviorProfile& p) { return profile_to_json(p).dump(2) + "\n"; }

arena::SimConfig load_config(const Globals& g) {
  arena::SimConfig c;
  c.seed = g.seed;
  std::string path = g.config;
  if (path.empty()) {
    if (const char* env = std::getenv("STYLEMARK_CONFIG"); env != nullptr) path = env;
  }
  if (!path.empty()) {
    const auto j = parse_json_file(path);
    c.tuning = with_path(path, [&] { return arena::tuning_from_json(j); });
  }
  c.validate();
  return c;
}

std::vector<arena::AgentPreset> resolve_presets(const std::string& list, const std::string& preset_file) {
  std::vector<arena::AgentPreset> pool;
  if (preset_file.empty()) {
    const auto builtin = arena::builtin_presets();
    pool.assign(builtin.begin(), builtin.end());
  } else {
    const auto j = parse_json_file(preset_file);
    pool = with_path(preset_file, [&] { return arena::presets_from_json(j); });
  }
  if (list == "all") return pool;

  std::vector<arena::AgentPreset> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    auto end = list.find(',', start);
    if (end == std::string::npos) end = list.size();
    const auto name = list.substr(start, end - start);
    auto it = std::find_if(pool.begin(), pool.end(), [&](const auto& p) { return p.name == name; });
    if (it == pool.end()) {
      std::string known;
      for (const auto& p : pool) known += (known.empty() ? "" : ", ") + p.name;
      throw ValidationError("unknown preset \"" + name + "\" (known: " + known + ")");
    }
    out.push_back(*it);
    start = end + 1;
  }
  return out;
}

// Runs body(i) for i in [0, n) on up to `jobs` threads; the first exception wins.
template <typename F>
void parallel_for(std::size_t n, unsigned jobs, F&& body) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex m;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(m);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

std::string render_matrix(const SimilarityMatrix& m, const std::string& format) {
  if (format == "svg") return matrix_to_svg(m);
  if (format == "json") return matrix_to_json(m).dump(2) + "\n";
  return matrix_to_csv(m);
}

std::string matrix_file(const std::string& format) {
  return format == "svg" ? "matrix.svg" : format == "json" ? "matrix.json" : "matrix.csv";
}

// Labels "player@context" grouped by player; players seen in fewer than two contexts are skipped.
std::vector<ConsistencyReport> consistency_from_matrix(const SimilarityMatrix& m) {
  std::map<std::string, std::vector<std::size_t>> by_player;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto at = m.labels[i].find('@');
    if (at != std::string::npos) by_player[m.labels[i].substr(0, at)].push_back(i);
  }
  std::vector<ConsistencyReport> rows;
  for (const auto& [player, idx] : by_player) {
    if (idx.size() < 2) continue;
    std::vector<double> scores;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = a + 1; b < idx.size(); ++b) scores.push_back(m.at(idx[a], idx[b]));
    }
    rows.push_back(consistency_from_scores(player, scores));
  }
  return rows;
}

SimilarityMatrix submatrix(const SimilarityMatrix& m, const std::vector<std::size_t>& idx) {
  SimilarityMatrix out;
  for (auto i : idx) out.labels.push_back(m.labels[i]);
  for (auto i : idx) {
    for (auto j : idx) out.values.push_back(m.at(i, j));
  }
  return out;
}

std::string clusters_to_csv(const std::vector<std::vector<std::string>>& clusters) {
  std::string out = "cluster,label\n";
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    for (const auto& label : clusters[c]) out += std::to_string(c + 1) + "," + label + "\n";
  }
  return out;
}

// ---- subcommands ----

struct SimulateArgs {
  std::string presets = "all";
  std::string preset_file;
  int matches = 10;
  std::string out = "runs";
};

int cmd_simulate(const Globals& g, const SimulateArgs& a, std::ostream& out) {
  const auto presets = resolve_presets(a.presets, a.preset_file);
  const auto config = load_config(g);
  arena::plan_tournament(presets, a.matches, config.seed);  // validates before touching the disk
  const auto manifest = arena::run_tournament(presets, a.matches, config, a.out, g.jobs);
  int rounds = 0;
  for (const auto& m : manifest.matches) rounds += m.rounds;
  out << manifest.pairs.size() << " pairs, " << manifest.matches.size() << " matches, "
      << manifest.knockouts() << " knockouts in " << rounds << " rounds -> " << a.out << "\n";
  return kOk;
}

struct FingerprintArgs {
  std::vector<std::string> inputs;
  std::string player;
  std::string out;
  std::string weighting = "pooled";
};

std::vector<Output> profile_outputs(const ProfileBuilder& builder, const std::vector<std::string>& players,
                                    Weighting weighting, const fs::path& dir) {
  std::vector<Output> outputs;
  for (const auto& p : players) {
    const auto profiles = builder.opponent_profiles(p);
    for (const auto& prof : profiles) {
      outputs.push_back({dir / (safe_file_name(prof.label()) + ".json"), profile_json(prof)});
    }
    const auto general = build_generalized_profile(profiles, weighting);
    outputs.push_back({dir / (safe_file_name(general.label()) + ".json"), profile_json(general)});
  }
  return outputs;
}

int cmd_fingerprint(const Globals& g, const FingerprintArgs& a, std::ostream& out) {
  const auto files = collect_files(a.inputs, ".jsonl");
  ProfileBuilder builder(g.sequence_mode());
  for (const auto& f : files) builder.add(load_recording(f));
  std::vector<std::string> players;
  if (a.player.empty()) {
    players = builder.players();
  } else {
    if (!builder.has_player(a.player)) {
      throw ValidationError("player \"" + a.player + "\" not found in any recording");
    }
    players.push_back(a.player);
  }
  const auto weighting = a.weighting == "averaged" ? Weighting::Averaged : Weighting::Pooled;
  const auto outputs = profile_outputs(builder, players, weighting, a.out);
  write_all(outputs);
  out << outputs.size() << " profiles for " << players.size() << " players from " << files.size()
      << " recordings -> " << a.out << "\n";
  return kOk;
}

int cmd_compare(const std::string& a, const std::string& b, std::ostream& out) {
  const auto pa = load_profile(a);
  const auto pb = load_profile(b);
  out << fixed6(cosine_similarity(pa.profile.fingerprint, pb.profile.fingerprint)) << "\n";
  return kOk;
}

SimilarityMatrix matrix_of(const std::vector<LabelledProfile>& profiles, unsigned jobs) {
  std::vector<std::pair<std::string, Fingerprint>> items;
  for (const auto& p : profiles) items.emplace_back(p.label, p.profile.fingerprint);
  return similarity_matrix(items, jobs);
}

int cmd_matrix(const Globals& g, const std::vector<std::string>& inputs, const std::string& out_path,
               std::ostream& out) {
  const auto m = matrix_of(load_profiles(inputs), g.jobs);
  const auto content = render_matrix(m, g.format);
  if (out_path.empty()) {
    out << content;
  } else {
    write_all({{out_path, content}});
  }
  return kOk;
}

struct ReportArgs {
  std::vector<std::string> profiles;
  std::string matrix;
  std::string groups;
  std::string out;
  std::optional<double> threshold;
};

int cmd_report(const Globals& g, const ReportArgs& a, std::ostream& out) {
  SimilarityMatrix m;
  if (!a.matrix.empty()) {
    const auto text = read_file(a.matrix);
    m = with_path(a.matrix, [&] { return matrix_from_csv(text); });
  } else {
    m = matrix_of(load_profiles(a.profiles), g.jobs);
  }
  if (m.size() < 2) throw ValidationError("a report needs at least 2 profiles");
  const fs::path dir(a.out);

  std::vector<Output> outputs{{dir / "matrix.csv", matrix_to_csv(m)}};
  if (g.format == "svg") outputs.push_back({dir / "matrix.svg", matrix_to_svg(m)});
  if (g.format == "json") outputs.push_back({dir / "matrix.json", matrix_to_json(m).dump(2) + "\n"});

  const auto consistency = consistency_from_matrix(m);
  if (!consistency.empty()) outputs.push_back({dir / "consistency.csv", consistency_to_csv(consistency)});

  if (!a.groups.empty()) {
    const auto j = parse_json_file(a.groups);
    const auto groups = with_path(a.groups, [&] { return groups_from_json(j); });
    std::vector<std::size_t> plain;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m.labels[i].find('@') == std::string::npos) plain.push_back(i);
    }
    if (plain.empty()) throw ValidationError("no generalized (un-suffixed) labels for the cross-group table");
    const auto rows = cross_group_summary(submatrix(m, plain), groups);
    outputs.push_back({dir / "cross_group.csv", cross_group_to_csv(rows)});
  }
  if (a.threshold) {
    outputs.push_back({dir / "clusters.csv", clusters_to_csv(partition_by_threshold(m, *a.threshold))});
  }
  write_all(outputs);
  for (const auto& o : outputs) out << o.path.string() << "\n";
  return kOk;
}

struct IdentifyArgs {
  std::string query;
  std::string player;
  std::vector<std::string> gallery;
  std::string out;
};

int cmd_identify(const Globals& g, const IdentifyArgs& a, std::ostream& out) {
  Fingerprint query;
  std::string query_label;
  if (fs::path(a.query).extension() == ".jsonl") {
    if (a.player.empty()) throw ValidationError("--player is required when the query is a recording");
    const auto rec = load_recording(a.query);
    if (rec.side_of(a.player) < 0) {
      throw ValidationError("player \"" + a.player + "\" not found in " + a.query);
    }
    const auto seqs = extract_action_sequences(rec, a.player, g.sequence_mode());
    query = build_fingerprint(seqs, a.player, rec.match_id, kDefaultNgram, g.sequence_mode());
    query_label = a.player + "@" + rec.match_id;
  } else {
    auto lp = load_profile(a.query);
    query = std::move(lp.profile.fingerprint);
    query_label = lp.label;
  }
  std::vector<BehaviorProfile> gallery;
  for (auto& lp : load_profiles(a.gallery)) {
    BehaviorProfile p = std::move(lp.profile);
    p.player_id = lp.label;
    p.context = std::string(kGeneralizedContext);
    gallery.push_back(std::move(p));
  }
  const auto result = identify_player(query, gallery, query_label);
  const auto content = ranking_to_csv(result);
  if (a.out.empty()) {
    out << content;
  } else {
    write_all({{a.out, content}});
  }
  return kOk;
}

int cmd_tournament(const Globals& g, const SimulateArgs& a, std::ostream& out) {
  const auto presets = resolve_presets(a.presets, a.preset_file);
  const auto config = load_config(g);
  const auto mode = g.sequence_mode();
  arena::plan_tournament(presets, a.matches, config.seed);
  const fs::path root(a.out);
  const auto manifest = arena::run_tournament(presets, a.matches, config, root / "recordings", g.jobs);

  // Analysis reads the recordings back from disk, exactly as `fingerprint` would.
  std::vector<std::vector<MatchFingerprint>> per_match(manifest.matches.size());
  parallel_for(manifest.matches.size(), g.jobs, [&](std::size_t i) {
    per_match[i] = match_fingerprints(load_recording(root / "recordings" / manifest.matches[i].file), mode);
  });
  ProfileBuilder builder(mode);
  std::vector<MatchFingerprint> all;
  for (auto& v : per_match) {
    for (auto& mf : v) {
      builder.add(mf.fingerprint);
      all.push_back(std::move(mf));
    }
  }

  const auto players = builder.players();
  std::vector<Output> outputs = profile_outputs(builder, players, Weighting::Pooled, root / "profiles");

  std::vector<BehaviorProfile> contextual;
  std::vector<std::pair<std::string, Fingerprint>> items;
  for (const auto& p : players) {
    const auto profiles = builder.opponent_profiles(p);
    for (const auto& prof : profiles) items.emplace_back(prof.label(), prof.fingerprint);
    contextual.insert(contextual.end(), profiles.begin(), profiles.end());
  }
  for (const auto& p : players) {
    items.emplace_back(p, build_generalized_profile(builder.opponent_profiles(p)).fingerprint);
  }
  const auto m = similarity_matrix(items, g.jobs);
  const auto loo = leave_one_match_out(all);
  const auto separation = separation_summary(contextual);

  const auto report = root / "report";
  outputs.push_back({report / "matrix.csv", matrix_to_csv(m)});
  if (g.format != "csv") outputs.push_back({report / matrix_file(g.format), render_matrix(m, g.format)});
  outputs.push_back({report / "consistency.csv", consistency_to_csv(consistency_from_matrix(m))});
  outputs.push_back({report / "separation.csv", separation_to_csv(separation)});
  outputs.push_back({report / "identification.csv", identification_to_csv(loo)});
  outputs.push_back({report / "confusion.csv", confusion_to_csv(loo)});
  write_all(outputs);

  out << manifest.pairs.size() << " pairs, " << manifest.matches.size() << " matches, "
      << manifest.knockouts() << " knockouts\n";
  for (const auto& r : separation) {
    out << "  " << r.player_id << ": same " << fixed6(r.same) << ", cross " << fixed6(r.cross)
        << ", identified " << fixed6(loo.accuracy_of(r.player_id)) << "\n";
  }
  out << "leave-one-match-out accuracy " << fixed6(loo.accuracy()) << " (" << loo.correct() << "/"
      << loo.total() << ") -> " << a.out << "\n";
  return kOk;
}

void add_simulation_flags(CLI::App* sub, SimulateArgs& a) {
  sub->add_option("--presets", a.presets, "\"all\" or a comma-separated list of preset names")
      ->capture_default_str();
  sub->add_option("--preset-file", a.preset_file, "JSON file {\"presets\":[...]} replacing the built-ins")
      ->check(CLI::ExistingFile);
  sub->add_option("--matches", a.matches, "Matches per preset pair")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--out", a.out, "Output directory")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Behavior fingerprints and play-style similarity for fighting-game recordings", "stylemark"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Base seed for simulation")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads; results do not depend on it")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--mode", g.mode, "Action granularity")
      ->capture_default_str()
      ->check(CLI::IsMember({"dedup", "per-frame"}));
  app.add_option("--format", g.format, "Matrix output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "svg", "json"}));
  app.add_option("--config", g.config, "Combat tuning JSON (default: $STYLEMARK_CONFIG, else built-in)");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a round-robin tournament between AI presets");
  add_simulation_flags(simulate, sim);

  SimulateArgs tour;
  auto* tournament =
      app.add_subcommand("tournament", "Simulate, fingerprint and report: recordings/, profiles/ and report/");
  add_simulation_flags(tournament, tour);

  FingerprintArgs fp;
  auto* fingerprint = app.add_subcommand("fingerprint", "Build per-opponent and generalized profiles");
  fingerprint->add_option("inputs", fp.inputs, "Recording files or directories of .jsonl files")->required();
  fingerprint->add_option("--player", fp.player, "Only this player (default: every player)");
  fingerprint->add_option("--out", fp.out, "Output directory for <player>@<opponent>.json and <player>.json")
      ->required();
  fingerprint->add_option("--weighting", fp.weighting, "How per-opponent profiles are generalized")
      ->capture_default_str()
      ->check(CLI::IsMember({"pooled", "averaged"}));

  std::string cmp_a, cmp_b;
  auto* compare = app.add_subcommand("compare", "Print the cosine similarity of two profiles");
  compare->add_option("a", cmp_a, "Profile or fingerprint JSON")->required();
  compare->add_option("b", cmp_b, "Profile or fingerprint JSON")->required();

  std::vector<std::string> matrix_inputs;
  std::string matrix_out;
  auto* matrix = app.add_subcommand("matrix", "Pairwise similarity matrix; labels are file stems");
  matrix->add_option("inputs", matrix_inputs, "Profile files or directories")->required();
  matrix->add_option("--out", matrix_out, "Output file (default: stdout)");

  ReportArgs rep;
  auto* report = app.add_subcommand("report", "Matrix, consistency, cross-group and cluster tables");
  auto* rep_profiles = report->add_option("--profiles", rep.profiles, "Profile files or directories");
  auto* rep_matrix = report->add_option("--matrix", rep.matrix, "Similarity matrix CSV instead of profiles");
  rep_profiles->excludes(rep_matrix);
  report->add_option("--groups", rep.groups, "JSON {\"label\": \"human\"|\"ai\"} for the cross-group table");
  report->add_option("--threshold", rep.threshold, "Also write single-linkage clusters at this similarity")
      ->check(CLI::Range(0.0, 1.0));
  report->add_option("--out", rep.out, "Output directory")->required();

  IdentifyArgs id;
  auto* identify = app.add_subcommand("identify", "Rank gallery profiles by similarity to a query");
  identify->add_option("--query", id.query, "Profile JSON or a .jsonl recording")->required();
  identify->add_option("--player", id.player, "Player to fingerprint when the query is a recording");
  identify->add_option("--gallery", id.gallery, "Profile files or directories")->required();
  identify->add_option("--out", id.out, "Output file (default: stdout)");

  for (auto* sub : app.get_subcommands({})) {
    sub->footer(
        "Global options (accepted before or after the subcommand):\n"
        "  --seed UINT       base seed for simulation (default 42)\n"
        "  --jobs UINT       worker threads; outputs do not depend on it\n"
        "  --mode TEXT       dedup | per-frame (default dedup)\n"
        "  --format TEXT     csv | svg | json matrix output (default csv)\n"
        "  --config PATH     combat tuning JSON; else $STYLEMARK_CONFIG, else built-in");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(g, sim, out);
    if (tournament->parsed()) return cmd_tournament(g, tour, out);
    if (fingerprint->parsed()) return cmd_fingerprint(g, fp, out);
    if (compare->parsed()) return cmd_compare(cmp_a, cmp_b, out);
    if (matrix->parsed()) return cmd_matrix(g, matrix_inputs, matrix_out, out);
    if (report->parsed()) {
      if (rep.profiles.empty() && rep.matrix.empty()) {
        throw ValidationError("report needs --profiles or --matrix");
      }
      return cmd_report(g, rep, out);
    }
    if (identify->parsed()) return cmd_identify(g, id, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kUsageError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace stylemark::cli
