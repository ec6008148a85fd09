#include "eye2vec/embedding.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "eye2vec/error.hpp"
#include "eye2vec/hash.hpp"
#include "eye2vec/kernels.hpp"
#include "eye2vec/text_format.hpp"

namespace eye2vec {

using Kind = FormatError::Kind;

namespace {

constexpr std::string_view kHeaderPrefix = "eye2vec-embeddings v1 dim=";

bool namespaced(std::string_view key) {
  return (key.starts_with("tok:") && key.size() > 4) || (key.starts_with("path:") && key.size() > 5);
}

}  // namespace

EmbeddingTable::EmbeddingTable(std::size_t dim, std::uint64_t fallback_seed)
    : dim_(dim), fallback_seed_(fallback_seed) {
  if (dim == 0) throw std::invalid_argument("embedding dimension must be positive");
}

void EmbeddingTable::insert(std::string key, std::vector<double> values, std::size_t row) {
  if (!namespaced(key)) {
    throw FormatError(Kind::BadKey, row, fmt::format("key \"{}\" lacks a tok:/path: prefix", key));
  }
  if (values.size() != dim_) {
    throw FormatError(Kind::BadArity, row,
                      fmt::format("expected {} components, got {}", dim_, values.size()));
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw FormatError(Kind::NonFinite, row, "non-finite component");
  }
  if (entries_.contains(key)) {
    throw FormatError(Kind::DuplicateKey, row, fmt::format("duplicate key \"{}\"", key));
  }
  entries_.emplace(std::move(key), std::move(values));
}

bool EmbeddingTable::contains(std::string_view key) const { return entries_.find(key) != entries_.end(); }

std::vector<double> EmbeddingTable::lookup(std::string_view key) const {
  if (const auto it = entries_.find(key); it != entries_.end()) return it->second;
  return fallback_vector(key, fallback_seed_, dim_);
}

std::vector<double> fallback_vector(std::string_view key, std::uint64_t seed, std::size_t dim) {
  SplitMix64 rng(fnv1a64(key) ^ seed);
  std::vector<double> v(dim);
  for (double& x : v) x = 2.0 * (static_cast<double>(rng.next() >> 11) * 0x1.0p-53) - 1.0;
  const double n = kernels::norm(v);
  if (n == 0.0) {
    throw DegenerateVectorError(fmt::format("fallback vector for \"{}\" is all zeros", key));
  }
  kernels::scale(1.0 / n, v);
  return v;
}

std::vector<double> context_vector(const EmbeddingTable& table, const PathContext& c) {
  std::vector<double> out;
  out.reserve(3 * table.dim());
  for (const auto& key :
       {"tok:" + c.source_text, "path:" + c.path_encoding, "tok:" + c.target_text}) {
    const auto part = table.lookup(key);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

EmbeddingTable load_table(std::istream& in, std::uint64_t fallback_seed) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError(Kind::BadHeader, 1, "missing header");
  if (line.ends_with('\r')) line.pop_back();
  const std::string_view header{line};
  const auto dim = header.starts_with(kHeaderPrefix)
                       ? parse_uint(header.substr(kHeaderPrefix.size()))
                       : std::nullopt;
  if (!dim || *dim == 0) {
    throw FormatError(Kind::BadHeader, 1,
                      fmt::format("expected \"{}<d>\" with positive d", kHeaderPrefix));
  }
  EmbeddingTable table(*dim, fallback_seed);
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.ends_with('\r')) line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw FormatError(Kind::BadArity, row, "expected key<TAB>components");
    }
    std::vector<double> values;
    std::string_view rest = std::string_view{line}.substr(tab + 1);
    while (!rest.empty()) {
      const auto sp = rest.find(' ');
      const std::string_view field = rest.substr(0, sp);
      const auto v = parse_real(field);
      if (!v) {
        // "inf" and "nan" do parse; insert() rejects them as NonFinite
        throw FormatError(Kind::BadNumber, row, fmt::format("bad component \"{}\"", field));
      }
      values.push_back(*v);
      if (sp == std::string_view::npos) break;
      rest.remove_prefix(sp + 1);
    }
    table.insert(line.substr(0, tab), std::move(values), row);
  }
  return table;
}

EmbeddingTable load_table(const std::filesystem::path& file, std::uint64_t fallback_seed) {
  std::ifstream in(file);
  if (!in) throw Error(fmt::format("cannot open {}", file.string()));
  return load_table(in, fallback_seed);
}

void save_table(std::ostream& out, const EmbeddingTable& table) {
  out << kHeaderPrefix << table.dim() << '\n';
  for (const auto& [key, values] : table.entries()) {
    out << key << '\t';
    for (std::size_t k = 0; k < values.size(); ++k) out << (k ? " " : "") << format_real(values[k]);
    out << '\n';
  }
}

}  // namespace eye2vec
