#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "veritas/embedding.hpp"
#include "veritas/records.hpp"

namespace veritas {

struct RetrievalHit {
  std::string doc_id;
  double score = 0.0;  // cosine similarity

  bool operator==(const RetrievalHit&) const = default;
};

// Flat, exact index over one claim's knowledge store. Entries keep
// ingestion order; every vector has unit norm and the index dimension.
class VectorIndex {
 public:
  struct Entry {
    std::string doc_id;
    EmbeddingVector vector;
  };

  VectorIndex(std::size_t dim, std::string fingerprint);

  // Throws ValidationError on a duplicate doc id or a dimension mismatch.
  void add(std::string doc_id, EmbeddingVector vector);

  std::size_t dim() const { return dim_; }
  const std::string& fingerprint() const { return fingerprint_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }

  // Versioned little-endian binary container:
  //   "VTXI" u32 version | u32 dim | u32 len + fingerprint | u64 count |
  //   per entry: u32 len + doc_id, dim x f32
  std::string serialize() const;
  static VectorIndex deserialize(std::string_view bytes);

  void save(const std::filesystem::path& path) const;
  static VectorIndex load(const std::filesystem::path& path);
  // Loads and rejects an index built by a different provider configuration.
  static VectorIndex load(const std::filesystem::path& path,
                          std::string_view expected_fingerprint);
  // Reads only the header; used to skip already built indexes.
  static std::string read_fingerprint(const std::filesystem::path& path);

 private:
  std::size_t dim_;
  std::string fingerprint_;
  std::vector<Entry> entries_;
  std::unordered_set<std::string> ids_;
};

// Embeds every document (truncated to options.char_budget) and indexes it.
// Throws ValidationError for an empty or duplicate-id document list.
VectorIndex build_index(std::span<const Document> docs, EmbeddingProvider& provider,
                        const EmbedOptions& options = {});

// Exact top-k by dot product of normalized vectors. Results are ordered by
// descending score, ties by ascending doc_id; min(k, size) hits.
std::vector<RetrievalHit> search(const VectorIndex& index, const EmbeddingVector& query,
                                 std::size_t k);

// Embeds the claim text with the same provider and resolves the top-k hits
// back to documents, in hit order.
std::vector<Document> retrieve_for_claim(const ClaimRecord& claim, const VectorIndex& index,
                                         std::span<const Document> docs,
                                         EmbeddingProvider& provider, std::size_t k = 3,
                                         const EmbedOptions& options = {});

}  // namespace veritas
