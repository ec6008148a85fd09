#include "eye2vec/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "eye2vec/analysis.hpp"
#include "eye2vec/compressor.hpp"
#include "eye2vec/embedding.hpp"
#include "eye2vec/error.hpp"
#include "eye2vec/gaze.hpp"
#include "eye2vec/linker.hpp"
#include "eye2vec/minilang.hpp"
#include "eye2vec/path_context.hpp"
#include "eye2vec/simulator.hpp"
#include "eye2vec/text_format.hpp"

namespace eye2vec::cli {
namespace {

namespace fs = std::filesystem;

// Usage problems discovered after CLI11 parsing (conflicting or missing
// flag combinations).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_text(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open {}", file.string()));
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Writes to --out when given, else to the data stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error(fmt::format("cannot write {}", path));
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

struct LinkFlags {
  int snap_tol = 3;
  bool keep_self = false;
  bool strict_chain = false;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--snap-tol", snap_tol, "Snap tolerance in columns")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    cmd.add_flag("--keep-self", keep_self, "Count transitions between a leaf and itself");
    cmd.add_flag("--strict-chain", strict_chain, "Break the chain at dropped fixations");
  }
  LinkOptions options() const {
    return LinkOptions{snap_tol, keep_self ? SelfTransitions::Keep : SelfTransitions::Drop,
                       strict_chain ? ChainMode::Strict : ChainMode::Skip};
  }
};

TransitionProfile link_files(const std::string& src, const std::string& fixations,
                             const LinkFlags& flags) {
  const auto tree = minilang::parse(read_text(src));
  const auto rec = read_grid_fixations(fs::path(fixations));
  return build_profile(rec, tree, flags.options());
}

std::vector<EyeVector> read_vectors(const std::vector<std::string>& files) {
  std::vector<EyeVector> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back(read_eye_vector(f));
  return out;
}

LabeledSet read_training_dir(const fs::path& dir) {
  const fs::path labels_file = dir / "labels.tsv";
  std::ifstream in(labels_file);
  if (!in) throw Error(fmt::format("cannot open {}", labels_file.string()));
  std::map<std::string, std::string> labels;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.ends_with('\r')) line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size() ||
        line.find('\t', tab + 1) != std::string::npos) {
      throw FormatError(FormatError::Kind::BadArity, row,
                        fmt::format("{}: expected recording_id<TAB>label", labels_file.string()));
    }
    if (!labels.emplace(line.substr(0, tab), line.substr(tab + 1)).second) {
      throw FormatError(FormatError::Kind::DuplicateKey, row,
                        fmt::format("{}: duplicate recording id", labels_file.string()));
    }
  }

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  LabeledSet set;
  std::map<std::string, bool> seen;
  for (const auto& f : files) {
    EyeVector v = read_eye_vector(f);
    const auto it = labels.find(v.recording_id);
    if (it == labels.end()) continue;
    if (seen[v.recording_id]) throw Error(fmt::format("recording \"{}\" appears twice", v.recording_id));
    seen[v.recording_id] = true;
    set.push_back(LabeledVector{std::move(v), it->second});
  }
  for (const auto& [id, label] : labels) {
    if (!seen[id]) throw Error(fmt::format("labels.tsv names \"{}\" but no vector file has it", id));
  }
  return set;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eye-movement vectors over program syntax trees", "eye2vec"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string out_path;
  const auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("-o,--out", out_path, "Write output to this file instead of stdout");
  };

  // paths
  auto* paths = app.add_subcommand("paths", "List path contexts of a source file");
  std::string src;
  std::size_t max_length = kDefaultMaxPathLength;
  std::size_t max_width = kDefaultMaxPathWidth;
  paths->add_option("src", src, "Source file")->required();
  paths->add_option("--max-length", max_length, "Max nodes per path (0 = unlimited)")
      ->capture_default_str();
  paths->add_option("--max-width", max_width, "Max leaf-index distance (0 = unlimited)")
      ->capture_default_str();
  add_out(paths);

  // convert
  auto* convert = app.add_subcommand("convert", "Convert pixel fixations to line/column");
  std::string fixations;
  double origin_x = 0, origin_y = 0, char_width = 0, line_height = 0;
  convert->add_option("fixations", fixations, "Pixel-mode fixation CSV")->required();
  convert->add_option("--origin-x", origin_x, "Left edge of the first character cell (px)")->required();
  convert->add_option("--origin-y", origin_y, "Top edge of the first line (px)")->required();
  convert->add_option("--char-width", char_width, "Character cell width (px)")->required();
  convert->add_option("--line-height", line_height, "Line height (px)")->required();
  add_out(convert);

  // link
  auto* link = app.add_subcommand("link", "Build the transition profile of a recording");
  LinkFlags link_flags;
  link->add_option("src", src, "Source file")->required();
  link->add_option("fixations", fixations, "Grid-mode fixation CSV")->required();
  link_flags.add_to(*link);
  add_out(link);

  // vectorize
  auto* vectorize = app.add_subcommand("vectorize", "Compute the eye vector of a recording");
  std::string emb_path;
  std::size_t dim = kDefaultEmbeddingDim;
  std::uint64_t seed = kDefaultFallbackSeed;
  bool no_normalize = false;
  vectorize->add_option("src", src, "Source file")->required();
  vectorize->add_option("fixations", fixations, "Grid-mode fixation CSV")->required();
  link_flags.add_to(*vectorize);
  auto* emb_opt = vectorize->add_option("--emb", emb_path, "Embedding table (TSV)");
  auto* dim_opt = vectorize->add_option("--dim", dim, "Embedding dimension")
                      ->capture_default_str()
                      ->check(CLI::PositiveNumber);
  vectorize->add_option("--seed", seed, "Fallback embedding seed")->capture_default_str();
  vectorize->add_flag("--no-normalize", no_normalize, "Keep the raw weighted sum");
  add_out(vectorize);

  // compare
  auto* compare = app.add_subcommand("compare", "Cosine similarity of two eye vectors");
  std::string vec_a, vec_b;
  compare->add_option("a", vec_a, "Eye vector JSON")->required();
  compare->add_option("b", vec_b, "Eye vector JSON")->required();

  // cluster
  auto* cluster = app.add_subcommand("cluster", "k-means over eye vectors");
  std::vector<std::string> vec_files;
  std::size_t k = 0;
  std::uint64_t cluster_seed = 0;
  std::size_t max_iters = kDefaultKMeansIters;
  cluster->add_option("vectors", vec_files, "Eye vector JSON files")->required();
  cluster->add_option("--k", k, "Number of clusters")->required();
  cluster->add_option("--seed", cluster_seed, "Seed for k-means++")->required();
  cluster->add_option("--max-iters", max_iters, "Lloyd iteration cap")->capture_default_str();

  // predict
  auto* predict = app.add_subcommand("predict", "Nearest-centroid label prediction");
  std::string train_dir;
  std::vector<std::string> test_files;
  bool loo = false;
  predict->add_option("--train", train_dir, "Directory with labels.tsv and vector files")
      ->required()
      ->check(CLI::ExistingDirectory);
  predict->add_option("--test", test_files, "Eye vector JSON files to label");
  predict->add_flag("--loo", loo, "Report leave-one-out accuracy on the training set");

  // simulate
  auto* simulate_cmd = app.add_subcommand("simulate", "Generate synthetic grid-mode recordings");
  std::string strategy_str, out_dir;
  std::size_t n_fix = 0, count = 0;
  std::uint64_t sim_seed = 0;
  int jitter = 0;
  simulate_cmd->add_option("src", src, "Source file")->required();
  simulate_cmd->add_option("--strategy", strategy_str, "linear or defuse")
      ->required()
      ->check(CLI::IsMember({"linear", "defuse"}));
  simulate_cmd->add_option("--n", n_fix, "Fixations per recording")->required();
  simulate_cmd->add_option("--count", count, "Number of recordings")->required();
  simulate_cmd->add_option("--seed", sim_seed, "Seed of the first recording")->required();
  simulate_cmd->add_option("--out", out_dir, "Output directory")->required();
  simulate_cmd->add_option("--jitter", jitter, "Column jitter")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsageError;
  }

  try {
    if (*paths) {
      const auto tree = minilang::parse(read_text(src));
      Sink sink(out_path, out);
      for (const auto& c : all_path_contexts(tree, max_length, max_width)) sink.get() << c.str() << '\n';
    } else if (*convert) {
      const FontGrid grid = FontGrid::make(origin_x, origin_y, char_width, line_height);
      const auto rec = to_grid(read_pixel_fixations(fs::path(fixations)), grid);
      Sink sink(out_path, out);
      write_fixations(sink.get(), rec);
    } else if (*link) {
      const auto profile = link_files(src, fixations, link_flags);
      if (profile.empty()) {
        err << "error: EmptyProfile: recording \"" << profile.recording_id
            << "\" has no transitions\n";
        return kExitInputError;
      }
      Sink sink(out_path, out);
      write_profile_json(sink.get(), profile);
    } else if (*vectorize) {
      std::optional<EmbeddingTable> table;
      if (!emb_opt->empty()) {
        table = load_table(fs::path(emb_path), seed);
        if (!dim_opt->empty() && table->dim() != dim) {
          throw Error(fmt::format("--dim {} does not match the embedding table's dim={}", dim,
                                  table->dim()));
        }
      } else {
        table.emplace(dim, seed);
      }
      const auto profile = link_files(src, fixations, link_flags);
      const auto v = compress(profile, *table, !no_normalize);
      Sink sink(out_path, out);
      write_eye_vector_json(sink.get(), v);
    } else if (*compare) {
      const auto a = read_eye_vector(vec_a);
      const auto b = read_eye_vector(vec_b);
      out << format_real(cosine_similarity(a.values, b.values)) << '\n';
    } else if (*cluster) {
      const auto vectors = read_vectors(vec_files);
      const auto assignment = kmeans(vectors, k, cluster_seed, max_iters);
      for (std::size_t i = 0; i < vectors.size(); ++i) {
        out << vectors[i].recording_id << '\t' << assignment[i] << '\n';
      }
    } else if (*predict) {
      if (test_files.empty() && !loo) throw UsageError("predict needs --test <vec.json>... or --loo");
      const auto train = read_training_dir(train_dir);
      if (!test_files.empty()) {
        const auto tests = read_vectors(test_files);
        const auto labels = nearest_centroid_predict(train, tests);
        for (std::size_t i = 0; i < tests.size(); ++i) {
          out << tests[i].recording_id << '\t' << labels[i] << '\n';
        }
      }
      if (loo) out << "accuracy=" << format_real(leave_one_out(train)) << '\n';
    } else if (*simulate_cmd) {
      const auto tree = minilang::parse(read_text(src));
      const auto strategy = *parse_strategy(strategy_str);
      fs::create_directories(out_dir);
      const std::string stem = fs::path(src).stem().string();
      for (std::size_t i = 0; i < count; ++i) {
        const std::string id = fmt::format("{}_{}_{}", stem, strategy_str, i);
        const auto rec = simulate(tree, Strategy{strategy, jitter, sim_seed + i}, n_fix, id);
        std::ofstream file(fs::path(out_dir) / (id + ".csv"), std::ios::binary);
        if (!file) throw Error(fmt::format("cannot write into {}", out_dir));
        write_fixations(file, rec);
      }
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitOk;
}

}  // namespace eye2vec::cli
