#include "veritas/vector_index.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <unordered_map>

#include "veritas/error.hpp"
#include "veritas/jsonl.hpp"

namespace veritas {
namespace {

constexpr std::string_view kMagic = "VTXI";
constexpr std::uint32_t kFormatVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "index serialization assumes a little-endian host");

template <typename T>
void put(std::string& out, T value) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  out.append(bytes, sizeof(T));
}

void put_string(std::string& out, std::string_view s) {
  put<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
  out.append(s);
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    T value;
    std::memcpy(&value, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }

  std::string get_string() {
    const auto len = get<std::uint32_t>();
    need(len);
    std::string s(bytes_.substr(pos_, len));
    pos_ += len;
    return s;
  }

  std::string_view take(std::size_t n) {
    need(n);
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) {
      throw ParseError("truncated index data at byte " + std::to_string(pos_), pos_);
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

struct Header {
  std::uint32_t dim;
  std::string fingerprint;
};

Header read_header(Reader& reader) {
  if (reader.take(kMagic.size()) != kMagic) throw ParseError("not a veritas index file", 0);
  const auto version = reader.get<std::uint32_t>();
  if (version != kFormatVersion) {
    throw ParseError("unsupported index format version " + std::to_string(version), 4);
  }
  Header header;
  header.dim = reader.get<std::uint32_t>();
  header.fingerprint = reader.get_string();
  return header;
}

}  // namespace

VectorIndex::VectorIndex(std::size_t dim, std::string fingerprint)
    : dim_(dim), fingerprint_(std::move(fingerprint)) {
  if (dim_ == 0) throw ValidationError("index dimension must be positive");
}

void VectorIndex::add(std::string doc_id, EmbeddingVector vector) {
  if (vector.dim() != dim_) {
    throw ValidationError("vector for " + doc_id + " has dim " +
                          std::to_string(vector.dim()) + ", index dim is " +
                          std::to_string(dim_));
  }
  if (!ids_.insert(doc_id).second) {
    throw ValidationError("duplicate doc_id in index: " + doc_id);
  }
  entries_.push_back(Entry{std::move(doc_id), std::move(vector)});
}

std::string VectorIndex::serialize() const {
  std::string out;
  out.reserve(32 + entries_.size() * (16 + dim_ * sizeof(float)));
  out.append(kMagic);
  put<std::uint32_t>(out, kFormatVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(dim_));
  put_string(out, fingerprint_);
  put<std::uint64_t>(out, entries_.size());
  for (const auto& entry : entries_) {
    put_string(out, entry.doc_id);
    for (float x : entry.vector.values()) put<float>(out, x);
  }
  return out;
}

VectorIndex VectorIndex::deserialize(std::string_view bytes) {
  Reader reader(bytes);
  auto header = read_header(reader);
  VectorIndex index(header.dim, std::move(header.fingerprint));
  const auto count = reader.get<std::uint64_t>();
  for (std::uint64_t i = 0; i < count; ++i) {
    auto doc_id = reader.get_string();
    std::vector<float> values(header.dim);
    for (auto& x : values) x = reader.get<float>();
    index.add(std::move(doc_id), EmbeddingVector(std::move(values)));
  }
  if (!reader.done()) throw ParseError("trailing bytes after index data", bytes.size());
  return index;
}

void VectorIndex::save(const std::filesystem::path& path) const {
  write_text_atomic(path, serialize());
}

VectorIndex VectorIndex::load(const std::filesystem::path& path) {
  return deserialize(read_text_file(path));
}

VectorIndex VectorIndex::load(const std::filesystem::path& path,
                              std::string_view expected_fingerprint) {
  auto index = load(path);
  if (index.fingerprint() != expected_fingerprint) {
    throw ValidationError("stale index " + path.string() + ": built with \"" +
                          index.fingerprint() + "\", configured provider is \"" +
                          std::string(expected_fingerprint) + "\"");
  }
  return index;
}

std::string VectorIndex::read_fingerprint(const std::filesystem::path& path) {
  const auto bytes = read_text_file(path);
  Reader reader(bytes);
  return read_header(reader).fingerprint;
}

VectorIndex build_index(std::span<const Document> docs, EmbeddingProvider& provider,
                        const EmbedOptions& options) {
  if (docs.empty()) throw ValidationError("cannot build an index from zero documents");
  std::unordered_set<std::string_view> seen;
  for (const auto& doc : docs) {
    if (!seen.insert(doc.doc_id).second) {
      throw ValidationError("duplicate doc_id: " + doc.doc_id);
    }
  }

  std::vector<std::string> texts;
  texts.reserve(docs.size());
  for (const auto& doc : docs) texts.push_back(doc.text);
  auto vectors = embed_texts(provider, texts, options);

  VectorIndex index(provider.dim(), provider.fingerprint());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    index.add(docs[i].doc_id, std::move(vectors[i]));
  }
  return index;
}

std::vector<RetrievalHit> search(const VectorIndex& index, const EmbeddingVector& query,
                                 std::size_t k) {
  if (k == 0) throw ValidationError("k must be at least 1");
  if (query.dim() != index.dim()) {
    throw ValidationError("query dim " + std::to_string(query.dim()) +
                          " does not match index dim " + std::to_string(index.dim()));
  }

  std::vector<RetrievalHit> hits;
  hits.reserve(index.size());
  for (const auto& entry : index.entries()) {
    hits.push_back(RetrievalHit{entry.doc_id, entry.vector.dot(query)});
  }
  const auto better = [](const RetrievalHit& a, const RetrievalHit& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id < b.doc_id;
  };
  const std::size_t n = std::min(k, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(n), hits.end(),
                    better);
  hits.resize(n);
  return hits;
}

std::vector<Document> retrieve_for_claim(const ClaimRecord& claim, const VectorIndex& index,
                                         std::span<const Document> docs,
                                         EmbeddingProvider& provider, std::size_t k,
                                         const EmbedOptions& options) {
  const std::string texts[] = {claim.text};
  auto query = embed_texts(provider, texts, options);
  const auto hits = search(index, query.front(), k);

  std::unordered_map<std::string_view, const Document*> by_id;
  for (const auto& doc : docs) by_id.emplace(doc.doc_id, &doc);

  std::vector<Document> out;
  out.reserve(hits.size());
  for (const auto& hit : hits) {
    auto it = by_id.find(hit.doc_id);
    if (it == by_id.end()) {
      throw ValidationError("index entry " + hit.doc_id +
                            " has no matching document for claim " +
                            std::to_string(claim.claim_id));
    }
    out.push_back(*it->second);
  }
  return out;
}

}  // namespace veritas
