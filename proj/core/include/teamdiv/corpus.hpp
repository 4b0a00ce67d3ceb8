#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "teamdiv/config.hpp"
#include "teamdiv/ids.hpp"

namespace teamdiv {

// One publication as ingested. Author order is preserved; topics are kept
// sorted and unique.
struct PaperRecord {
  std::string id;
  int year = 0;
  std::vector<AuthorId> authors;
  std::vector<TopicId> topics;
  std::optional<std::int64_t> citations_5y;
};

// A record with names instead of interned ids, as read from JSONL or
// produced by the generator.
struct RawRecord {
  std::string id;
  int year = 0;
  std::vector<std::string> authors;
  std::vector<std::string> topics;
  std::optional<std::int64_t> citations_5y;
};

// A record-level problem. `position` is the 1-based line number for JSONL
// input, or the 1-based record number for in-memory input.
class CorpusError : public std::runtime_error {
 public:
  CorpusError(std::size_t position, std::string message);
  std::size_t position() const noexcept { return position_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t position_;
  std::string reason_;
};

class CorpusBuilder;

// Immutable, validated collection of papers plus the author -> papers
// index. Safe for concurrent reads.
class Corpus {
 public:
  Corpus() = default;

  std::span<const PaperRecord> papers() const noexcept { return papers_; }
  const PaperRecord& paper(PaperIndex index) const { return papers_.at(index); }
  std::size_t size() const noexcept { return papers_.size(); }
  bool empty() const noexcept { return papers_.empty(); }

  std::optional<PaperIndex> find_paper(std::string_view id) const;
  std::optional<AuthorId> find_author(std::string_view name) const;
  std::optional<TopicId> find_topic(std::string_view name) const;

  std::string_view author_name(AuthorId id) const { return author_names_.at(id.value); }
  std::string_view topic_name(TopicId id) const { return topic_names_.at(id.value); }
  std::size_t author_count() const noexcept { return author_names_.size(); }
  std::size_t topic_count() const noexcept { return topic_names_.size(); }

  // Papers of `author` ordered by (year, record position). Empty for an
  // unknown id.
  std::span<const PaperIndex> papers_of(AuthorId author) const;

  // True iff rebuilding the author index from the papers reproduces it.
  bool author_index_consistent() const;

  // Convenience for tests and tools; throws CorpusError on the first bad
  // record.
  static Corpus from_records(std::vector<RawRecord> records);

 private:
  friend class CorpusBuilder;

  static std::vector<std::vector<PaperIndex>> build_author_index(
      std::span<const PaperRecord> papers, std::size_t author_count);

  std::vector<PaperRecord> papers_;
  std::vector<std::string> author_names_;
  std::vector<std::string> topic_names_;
  std::vector<std::vector<PaperIndex>> author_index_;
  std::unordered_map<std::string, PaperIndex> paper_lookup_;
};

// Incrementally validates and interns records. A rejected record leaves
// the builder untouched.
class CorpusBuilder {
 public:
  // Throws CorpusError(position, ...) on an invalid or duplicate record.
  void add(RawRecord record, std::size_t position);
  std::size_t size() const noexcept { return papers_.size(); }
  Corpus build() &&;

 private:
  std::uint32_t intern(std::unordered_map<std::string, std::uint32_t>& table,
                       std::vector<std::string>& names, const std::string& name);

  std::vector<PaperRecord> papers_;
  std::unordered_map<std::string, PaperIndex> ids_;
  std::unordered_map<std::string, std::uint32_t> author_ids_;
  std::unordered_map<std::string, std::uint32_t> topic_ids_;
  std::vector<std::string> author_names_;
  std::vector<std::string> topic_names_;
};

enum class ParseMode { kStrict, kLenient };

struct Diagnostic {
  std::size_t line = 0;
  std::string message;
};

struct ParseResult {
  Corpus corpus;
  // Skipped records (lenient mode only; strict mode throws instead).
  std::vector<Diagnostic> diagnostics;
};

// Reads the JSONL corpus format:
//   {"id": str, "year": int, "authors": [str], "topics": [str],
//    "citations_5y": int (optional)}
// Blank lines are ignored, unknown keys are ignored. Strict mode throws
// CorpusError at the first bad line.
ParseResult parse_corpus(std::istream& in, ParseMode mode = ParseMode::kStrict);

// Throws std::system_error if the file cannot be opened.
ParseResult load_corpus(const std::filesystem::path& path,
                        ParseMode mode = ParseMode::kStrict);

// Writes one JSON object per line in record order; the inverse of
// parse_corpus.
void write_corpus(std::ostream& out, const Corpus& corpus);

// Papers satisfying all four selection constraints, in record order:
// year in range, enough citations, enough authors, and every author has at
// least one paper in the preceding window.
std::vector<PaperIndex> select_analysis_set(const Corpus& corpus,
                                            const AnalysisConfig& config);

// The author's papers with year in [year - window_years, year - 1], ordered
// by year. Unknown authors yield an empty list.
std::vector<PaperIndex> prior_window(const Corpus& corpus, AuthorId author,
                                     int year, int window_years);

struct BucketId {
  std::size_t index = 0;
  std::string label;
  friend bool operator==(const BucketId&, const BucketId&) = default;
};

// Throws std::out_of_range when citations fall below the first bucket.
BucketId assign_bucket(std::int64_t citations, const AnalysisConfig& config);

}  // namespace teamdiv
