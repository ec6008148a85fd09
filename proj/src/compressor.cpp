#include "eye2vec/compressor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "eye2vec/error.hpp"
#include "eye2vec/hash.hpp"
#include "eye2vec/kernels.hpp"
#include "eye2vec/text_format.hpp"

namespace eye2vec {

EyeVector compress(const TransitionProfile& profile, const EmbeddingTable& table, bool normalize) {
  if (profile.empty()) {
    throw EmptyProfileError(
        fmt::format("recording \"{}\" has no transitions to compress", profile.recording_id));
  }
  std::vector<std::pair<std::string, const ProfileEntry*>> order;
  order.reserve(profile.entries.size());
  for (const auto& e : profile.entries) order.emplace_back(e.context.str(), &e);
  std::sort(order.begin(), order.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  EyeVector v;
  v.recording_id = profile.recording_id;
  v.values.assign(3 * table.dim(), 0.0);
  for (const auto& [key, e] : order) {
    kernels::axpy(e->ratio, context_vector(table, e->context), v.values);
  }
  if (normalize) {
    const double n = kernels::norm(v.values);
    if (n == 0.0) {
      throw ZeroVectorError(
          fmt::format("eye vector of \"{}\" is zero and cannot be normalized", v.recording_id));
    }
    kernels::scale(1.0 / n, v.values);
  }
  v.normalized = normalize;
  v.meta = EyeVectorMeta{profile.total_transitions, profile.entries.size(), table.fallback_seed(),
                         fnv1a64(profile_json(profile))};
  return v;
}

void write_eye_vector_json(std::ostream& out, const EyeVector& v) {
  out << "{\"recording_id\": " << nlohmann::json(v.recording_id).dump() << ", \"dim\": " << v.dim()
      << ", \"normalized\": " << (v.normalized ? "true" : "false")
      << ", \"meta\": {\"total_transitions\": " << v.meta.total_transitions
      << ", \"distinct_contexts\": " << v.meta.distinct_contexts << ", \"embedding_seed\": \""
      << v.meta.embedding_seed << "\", \"created_from\": \"" << v.meta.created_from
      << "\"}, \"values\": [";
  for (std::size_t k = 0; k < v.values.size(); ++k) {
    out << (k ? ", " : "") << format_real(v.values[k]);
  }
  out << "]}\n";
}

std::string eye_vector_json(const EyeVector& v) {
  std::ostringstream s;
  write_eye_vector_json(s, v);
  return s.str();
}

EyeVector read_eye_vector_json(std::istream& in) {
  using Kind = FormatError::Kind;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(Kind::BadDocument, 0, fmt::format("invalid eye vector JSON: {}", e.what()));
  }
  try {
    EyeVector v;
    v.recording_id = doc.at("recording_id").get<std::string>();
    v.normalized = doc.at("normalized").get<bool>();
    const auto& meta = doc.at("meta");
    const auto u64 = [&](const char* name) {
      const auto x = parse_uint(meta.at(name).get<std::string>());
      if (!x) throw FormatError(Kind::BadDocument, 0, fmt::format("meta.{} is not a uint64", name));
      return *x;
    };
    v.meta.total_transitions = meta.at("total_transitions").get<std::uint64_t>();
    v.meta.distinct_contexts = meta.at("distinct_contexts").get<std::uint64_t>();
    v.meta.embedding_seed = u64("embedding_seed");
    v.meta.created_from = u64("created_from");
    for (const auto& x : doc.at("values")) {
      const double d = x.get<double>();
      if (!std::isfinite(d)) throw FormatError(Kind::NonFinite, 0, "non-finite vector component");
      v.values.push_back(d);
    }
    if (v.values.empty() || v.values.size() != doc.at("dim").get<std::size_t>()) {
      throw FormatError(Kind::BadArity, 0, "\"dim\" does not match the number of values");
    }
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(Kind::BadDocument, 0, fmt::format("eye vector JSON schema: {}", e.what()));
  }
}

EyeVector read_eye_vector(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(fmt::format("cannot open {}", file.string()));
  try {
    return read_eye_vector_json(in);
  } catch (const FormatError& e) {
    throw FormatError(e.kind(), e.row(), fmt::format("{}: {}", file.string(), e.what()));
  }
}

}  // namespace eye2vec
