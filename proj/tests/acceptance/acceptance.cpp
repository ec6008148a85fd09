// Acceptance gate: one [PASS]/[FAIL] line per criterion, exit status 0 only
// if every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "eye2vec/analysis.hpp"
#include "eye2vec/cli.hpp"
#include "eye2vec/compressor.hpp"
#include "eye2vec/error.hpp"
#include "eye2vec/gaze.hpp"
#include "eye2vec/hash.hpp"
#include "eye2vec/linker.hpp"
#include "eye2vec/minilang.hpp"
#include "eye2vec/path_context.hpp"
#include "eye2vec/simulator.hpp"
#include "support/oracles.hpp"
#include "support/program_gen.hpp"
#include "support/samples.hpp"

namespace {

using namespace eye2vec;
using minilang::parse;
using minilang::SyntaxTree;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<SyntaxTree> sample_trees() {
  std::vector<SyntaxTree> out;
  for (const auto& p : testing::sample_programs()) out.push_back(parse(testing::read_file(p)));
  return out;
}

GridRecording random_recording(std::mt19937_64& rng, const SyntaxTree& t, std::size_t n) {
  const int max_line = t.leaves().back().span.end_line + 1;
  GridRecording rec{"rand", {}, std::nullopt};
  std::int64_t ts = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ts += static_cast<std::int64_t>(rng() % 400);
    rec.fixations.push_back(GridFixation{
        ts, 200, GridPos{1 + static_cast<int>(rng() % max_line), 1 + static_cast<int>(rng() % 50)}});
  }
  return rec;
}

// Simulated recordings over every sample program, both strategies.
std::vector<std::pair<const SyntaxTree*, GridRecording>> sample_recordings(
    const std::vector<SyntaxTree>& trees) {
  std::vector<std::pair<const SyntaxTree*, GridRecording>> out;
  for (const auto& t : trees) {
    for (auto s : {ReadingStrategy::Linear, ReadingStrategy::Defuse}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        out.emplace_back(&t, simulate(t, Strategy{s, static_cast<int>(seed % 3), seed}, 120));
      }
    }
  }
  return out;
}

Outcome path_oracle() {
  const auto t0 = Clock::now();
  testing::ProgramGenerator gen(2024);
  std::size_t programs = 0;
  std::size_t pairs = 0;
  std::size_t mismatches = 0;
  for (; programs < 250; ++programs) {
    const auto t = parse(gen.program(30));
    const std::size_t n = t.leaves().size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        ++pairs;
        if (path_between(t, i, j).str() != testing::oracle_context(t, i, j)) ++mismatches;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 10.0,
          fmt::format("{} programs, {} leaf pairs, {} mismatches, {:.2f} s", programs, pairs,
                      mismatches, secs)};
}

Outcome ratio_normalization(const std::vector<SyntaxTree>& trees) {
  std::mt19937_64 rng(1000);
  std::size_t recordings = 0;
  std::size_t failures = 0;
  double worst = 0.0;
  for (; recordings < 1000; ++recordings) {
    const auto& t = trees[recordings % trees.size()];
    LinkOptions opt;
    opt.snap_tol_cols = static_cast<int>(rng() % 5);
    opt.self_transitions = rng() % 2 ? SelfTransitions::Keep : SelfTransitions::Drop;
    opt.chain = rng() % 2 ? ChainMode::Strict : ChainMode::Skip;
    const auto rec = random_recording(rng, t, 2 + rng() % 150);
    const auto p = build_profile(rec, t, opt);
    const auto oracle = testing::oracle_recount(rec, t, opt);

    std::map<std::string, std::uint64_t> counts;
    double sum = 0.0;
    std::uint64_t total = 0;
    for (const auto& e : p.entries) {
      counts[e.context.str()] = e.count;
      sum += e.ratio;
      total += e.count;
    }
    if (!p.empty()) worst = std::max(worst, std::abs(sum - 1.0));
    const bool ok = counts == oracle.counts && p.total_transitions == oracle.total &&
                    total == p.total_transitions && (p.empty() || std::abs(sum - 1.0) <= 1e-9);
    if (!ok) ++failures;
  }
  return {failures == 0, fmt::format("{} recordings, {} failures, max |sum-1| = {:.3g}",
                                     recordings, failures, worst)};
}

Outcome count_scale_invariance(const std::vector<SyntaxTree>& trees) {
  const EmbeddingTable table;
  std::size_t checked = 0;
  double worst = 0.0;
  for (const auto& [tree, rec] : sample_recordings(trees)) {
    GridRecording twice{rec.recording_id, {}, std::nullopt};
    for (const auto& f : rec.fixations) {
      twice.fixations.push_back(f);
      twice.fixations.push_back(f);
    }
    const auto a = compress(build_profile(rec, *tree), table);
    const auto b = compress(build_profile(twice, *tree), table);
    for (std::size_t i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    ++checked;
  }
  return {worst <= 1e-12,
          fmt::format("{} recordings, max component difference {:.3g}", checked, worst)};
}

Outcome compressor_linearity(const std::vector<SyntaxTree>& trees) {
  const EmbeddingTable table;
  const auto recs = sample_recordings(trees);
  std::mt19937_64 rng(4);
  std::size_t splits = 0;
  double worst = 0.0;
  while (splits < 100) {
    const auto& [tree, rec] = recs[rng() % recs.size()];
    const std::size_t cut = 2 + rng() % (rec.fixations.size() - 3);
    GridRecording left{"l", {rec.fixations.begin(), rec.fixations.begin() + cut}, std::nullopt};
    GridRecording right{"r", {rec.fixations.begin() + cut, rec.fixations.end()}, std::nullopt};
    const auto pa = build_profile(left, *tree);
    const auto pb = build_profile(right, *tree);
    if (pa.empty() || pb.empty()) continue;
    const auto merged = merge_profiles(pa, pb, "m");
    const auto va = compress(pa, table, false);
    const auto vb = compress(pb, table, false);
    const auto vm = compress(merged, table, false);
    const double na = static_cast<double>(pa.total_transitions);
    const double nb = static_cast<double>(pb.total_transitions);
    for (std::size_t i = 0; i < vm.dim(); ++i) {
      const double mean = (na * va.values[i] + nb * vb.values[i]) / (na + nb);
      worst = std::max(worst, std::abs(vm.values[i] - mean));
    }
    ++splits;
  }
  return {worst <= 1e-9, fmt::format("{} splits, max component difference {:.3g}", splits, worst)};
}

// Runs the CLI in-process; returns stdout or throws on a non-zero exit.
std::string cli(std::vector<std::string> args) {
  args.insert(args.begin(), "eye2vec");
  std::ostringstream out;
  std::ostringstream err;
  if (const int code = cli::run(args, out, err); code != 0) {
    throw std::runtime_error(fmt::format("{} exited {}: {}", args[1], code, err.str()));
  }
  return out.str();
}

// simulate -> link -> vectorize -> cluster -> predict, every artifact
// concatenated into one transcript.
std::string pipeline_transcript(const fs::path& work) {
  fs::remove_all(work);
  fs::create_directories(work / "train");
  const std::string src = (testing::samples_dir() / "inventory.mj").string();
  std::string transcript;
  std::string labels;
  std::vector<std::string> vectors;
  for (const std::string strategy : {"linear", "defuse"}) {
    cli({"simulate", src, "--strategy", strategy, "--n", "100", "--count", "4", "--seed",
         strategy == "linear" ? "0" : "100", "--jitter", "2", "--out", (work / "sims").string()});
    for (int i = 0; i < 4; ++i) {
      const std::string id = fmt::format("inventory_{}_{}", strategy, i);
      const std::string csv = (work / "sims" / (id + ".csv")).string();
      const std::string json = (work / "train" / (id + ".json")).string();
      transcript += testing::read_file(csv);
      transcript += cli({"link", src, csv});
      cli({"vectorize", src, csv, "-o", json});
      transcript += testing::read_file(json);
      labels += id + "\t" + strategy + "\n";
      vectors.push_back(json);
    }
  }
  std::ofstream(work / "train" / "labels.tsv") << labels;
  std::vector<std::string> cluster_args = {"cluster", "--k", "2", "--seed", "7"};
  cluster_args.insert(cluster_args.end(), vectors.begin(), vectors.end());
  transcript += cli(cluster_args);
  std::vector<std::string> predict_args = {"predict", "--train", (work / "train").string(), "--loo",
                                           "--test"};
  predict_args.insert(predict_args.end(), vectors.begin(), vectors.end());
  transcript += cli(predict_args);
  return transcript;
}

Outcome determinism() {
  const fs::path base = fs::temp_directory_path() / "eye2vec_acceptance_determinism";
  const std::string first = pipeline_transcript(base / "run1");
  const std::string second = pipeline_transcript(base / "run2");
  fs::remove_all(base);
  return {!first.empty() && first == second,
          fmt::format("two runs, {} transcript bytes each, {}", first.size(),
                      first == second ? "identical" : "different")};
}

Outcome strategy_discrimination() {
  const auto t0 = Clock::now();
  const auto tree = parse(testing::read_file(testing::samples_dir() / "inventory.mj"));
  const EmbeddingTable table;
  LabeledSet set;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto strategy = seed < 20 ? ReadingStrategy::Linear : ReadingStrategy::Defuse;
    const auto rec = simulate(tree, Strategy{strategy, 2, seed}, 100,
                              fmt::format("{}_{}", strategy_name(strategy), seed));
    set.push_back(
        LabeledVector{compress(build_profile(rec, tree), table), std::string(strategy_name(strategy))});
  }
  const double loo = leave_one_out(set);
  std::vector<EyeVector> vectors;
  std::vector<std::string> labels;
  for (const auto& item : set) {
    vectors.push_back(item.vector);
    labels.push_back(item.label);
  }
  const double agreement = best_match_agreement(kmeans(vectors, 2, 7), labels);
  const double secs = seconds_since(t0);
  return {loo >= 0.90 && agreement >= 0.85 && secs < 60.0,
          fmt::format("LOO accuracy {:.3f} (>= 0.90), k-means agreement {:.3f} (>= 0.85), {:.2f} s",
                      loo, agreement, secs)};
}

Outcome grid_round_trip() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> origin(-500.0, 2000.0);
  std::uniform_real_distribution<double> cell(0.5, 64.0);
  std::uniform_int_distribution<int> index(1, 5000);
  std::size_t failures = 0;
  constexpr int kTrials = 10000;
  for (int i = 0; i < kTrials; ++i) {
    const auto grid = FontGrid::make(origin(rng), origin(rng), cell(rng), cell(rng));
    const GridPos p{index(rng), index(rng)};
    if (to_grid(PixelFixation{0, 1, cell_center(p, grid)}, grid).position != p) ++failures;
  }
  return {failures == 0, fmt::format("{} configurations, {} failures", kTrials, failures)};
}

Outcome format_round_trips(const std::vector<SyntaxTree>& trees) {
  std::vector<std::string> problems;
  std::mt19937_64 rng(8);

  for (const auto& [tree, rec] : sample_recordings(trees)) {
    std::ostringstream a;
    write_fixations(a, rec);
    std::istringstream in(a.str());
    const auto back = read_grid_fixations(in, rec.recording_id);
    std::ostringstream b;
    write_fixations(b, back);
    if (back != rec || a.str() != b.str()) problems.push_back("grid CSV " + rec.recording_id);
  }

  std::uniform_real_distribution<double> px(0.0, 3000.0);
  for (int r = 0; r < 100; ++r) {
    PixelRecording rec{"p", {}, std::nullopt};
    std::int64_t ts = 0;
    for (int i = 0; i < 50; ++i) {
      ts += static_cast<std::int64_t>(rng() % 300);
      rec.fixations.push_back({ts, 1 + static_cast<std::int64_t>(rng() % 500), {px(rng), px(rng)}});
    }
    std::ostringstream a;
    write_fixations(a, rec);
    std::istringstream in(a.str());
    if (read_pixel_fixations(in, "p") != rec) problems.push_back("pixel CSV");
  }

  const EmbeddingTable table;
  for (const auto& [tree, rec] : sample_recordings(trees)) {
    for (bool normalize : {true, false}) {
      const auto v = compress(build_profile(rec, *tree), table, normalize);
      std::istringstream in(eye_vector_json(v));
      if (read_eye_vector_json(in) != v) problems.push_back("eye vector " + rec.recording_id);
    }
  }

  using K = FormatError::Kind;
  const std::string h = "eye2vec-embeddings v1 dim=2\n";
  const std::vector<std::pair<std::string, K>> malformed = {
      {"eye2vec-embeddings v1 dim=x\n", K::BadHeader},
      {"embeddings dim=2\n", K::BadHeader},
      {h + "tok:a\t1.0 0.0 0.5\n", K::BadArity},
      {h + "tok:a\t1.0\n", K::BadArity},
      {h + "tok:a\t1.0 abc\n", K::BadNumber},
      {h + "tok:a\tnan 0.0\n", K::NonFinite},
      {h + "tok:a\t1.0 0.0\ntok:a\t0.0 1.0\n", K::DuplicateKey},
      {h + "a\t1.0 0.0\n", K::BadKey},
  };
  for (const auto& [text, kind] : malformed) {
    std::istringstream in(text);
    try {
      load_table(in);
      problems.push_back("accepted malformed table");
    } catch (const FormatError& e) {
      if (e.kind() != kind) problems.push_back(fmt::format("wrong error for: {}", text));
    }
  }

  return {problems.empty(),
          problems.empty() ? std::string("fixation CSV, eye-vector JSON lossless; 8 malformed tables rejected")
                           : fmt::format("{} problems, first: {}", problems.size(), problems.front())};
}

Outcome fnv_conformance() {
  const std::uint64_t empty = fnv1a64("");
  const std::uint64_t a = fnv1a64("a");
  return {empty == 0xcbf29ce484222325ULL && a == 0xaf63dc4c8601ec8cULL,
          fmt::format("hash(\"\") = {:#018x}, hash(\"a\") = {:#018x}", empty, a)};
}

}  // namespace

int main() {
  const auto trees = sample_trees();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 path-context oracle equivalence", path_oracle},
      {"2 ratio normalization and recount", [&] { return ratio_normalization(trees); }},
      {"3 count-scale invariance", [&] { return count_scale_invariance(trees); }},
      {"4 compressor linearity", [&] { return compressor_linearity(trees); }},
      {"5 pipeline determinism", determinism},
      {"6 strategy discrimination", strategy_discrimination},
      {"7 font grid round trip", grid_round_trip},
      {"8 format round trips", [&] { return format_round_trips(trees); }},
      {"9 FNV-1a conformance", fnv_conformance},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, fmt::format("threw: {}", e.what())};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << std::endl;
  }
  std::cout << fmt::format("{}/{} criteria passed", criteria.size() - failed, criteria.size())
            << std::endl;
  return failed == 0 ? 0 : 1;
}
