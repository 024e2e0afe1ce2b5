#pragma once

#include <filesystem>
#include <fstream>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "veritas/error.hpp"
#include "veritas/records.hpp"

namespace veritas {

// Canonical single-line serialization: compact, UTF-8 (not \u-escaped),
// invalid byte sequences replaced rather than rejected.
std::string dump_line(const Json& value);

std::string read_text_file(const std::filesystem::path& path);

// Writes through a temporary sibling and renames it into place, so readers
// never observe a partially written file.
void write_text_atomic(const std::filesystem::path& path, std::string_view content);

// Parses a JSON-Lines file. Blank lines are skipped; a malformed line throws
// ParseError carrying its 1-based line number.
std::vector<Json> read_jsonl(const std::filesystem::path& path);

template <typename Record>
void save_artifacts(const std::filesystem::path& path,
                    std::span<const Record> records) {
  std::string content;
  for (const auto& record : records) {
    content += dump_line(Json(record));
    content += '\n';
  }
  write_text_atomic(path, content);
}

template <typename Record>
void save_artifacts(const std::filesystem::path& path,
                    const std::vector<Record>& records) {
  save_artifacts(path, std::span<const Record>(records));
}

template <typename Record>
std::vector<Record> load_artifacts(const std::filesystem::path& path) {
  std::vector<Record> records;
  std::size_t line_no = 0;
  for (const auto& value : read_jsonl(path)) {
    ++line_no;
    try {
      records.push_back(value.template get<Record>());
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string() + ": record " + std::to_string(line_no) +
                           ": " + e.what(),
                       line_no);
    }
  }
  return records;
}

// Appends lines to a JSON-Lines file, one flush per record. Thread-safe.
class JsonlAppender {
 public:
  explicit JsonlAppender(const std::filesystem::path& path);

  void append(const Json& value);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::mutex mutex_;
};

}  // namespace veritas
