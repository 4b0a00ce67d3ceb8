#include "teamdiv/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <system_error>
#include <unordered_set>

#include "json.hpp"

namespace teamdiv {

CorpusError::CorpusError(std::size_t position, std::string message)
    : std::runtime_error("record " + std::to_string(position) + ": " + message),
      position_(position),
      reason_(std::move(message)) {}

std::optional<PaperIndex> Corpus::find_paper(std::string_view id) const {
  auto it = paper_lookup_.find(std::string(id));
  if (it == paper_lookup_.end()) return std::nullopt;
  return it->second;
}

namespace {

template <typename Id>
std::optional<Id> find_name(const std::vector<std::string>& sorted_names,
                            std::string_view name) {
  auto it = std::lower_bound(sorted_names.begin(), sorted_names.end(), name);
  if (it == sorted_names.end() || *it != name) return std::nullopt;
  return Id{static_cast<std::uint32_t>(it - sorted_names.begin())};
}

}  // namespace

std::optional<AuthorId> Corpus::find_author(std::string_view name) const {
  return find_name<AuthorId>(author_names_, name);
}

std::optional<TopicId> Corpus::find_topic(std::string_view name) const {
  return find_name<TopicId>(topic_names_, name);
}

std::span<const PaperIndex> Corpus::papers_of(AuthorId author) const {
  if (author.value >= author_index_.size()) return {};
  return author_index_[author.value];
}

std::vector<std::vector<PaperIndex>> Corpus::build_author_index(
    std::span<const PaperRecord> papers, std::size_t author_count) {
  std::vector<std::vector<PaperIndex>> index(author_count);
  for (std::size_t i = 0; i < papers.size(); ++i) {
    for (AuthorId a : papers[i].authors) index[a.value].push_back(static_cast<PaperIndex>(i));
  }
  for (auto& list : index) {
    std::stable_sort(list.begin(), list.end(), [&](PaperIndex x, PaperIndex y) {
      return papers[x].year < papers[y].year;
    });
  }
  return index;
}

bool Corpus::author_index_consistent() const {
  return build_author_index(papers_, author_names_.size()) == author_index_;
}

Corpus Corpus::from_records(std::vector<RawRecord> records) {
  CorpusBuilder builder;
  for (std::size_t i = 0; i < records.size(); ++i) builder.add(std::move(records[i]), i + 1);
  return std::move(builder).build();
}

std::uint32_t CorpusBuilder::intern(std::unordered_map<std::string, std::uint32_t>& table,
                                    std::vector<std::string>& names,
                                    const std::string& name) {
  auto [it, inserted] = table.try_emplace(name, static_cast<std::uint32_t>(names.size()));
  if (inserted) names.push_back(name);
  return it->second;
}

void CorpusBuilder::add(RawRecord record, std::size_t position) {
  if (record.id.empty()) throw CorpusError(position, "empty id");
  if (ids_.contains(record.id)) {
    throw CorpusError(position, "duplicate id '" + record.id + "'");
  }
  if (record.authors.empty()) throw CorpusError(position, "empty authors");
  if (record.topics.empty()) throw CorpusError(position, "empty topics");
  if (record.citations_5y && *record.citations_5y < 0) {
    throw CorpusError(position, "negative citations_5y");
  }
  {
    std::unordered_set<std::string_view> seen;
    for (const auto& a : record.authors) {
      if (a.empty()) throw CorpusError(position, "empty author name");
      if (!seen.insert(a).second) {
        throw CorpusError(position, "duplicate author '" + a + "'");
      }
    }
    for (const auto& t : record.topics) {
      if (t.empty()) throw CorpusError(position, "empty topic name");
    }
  }

  PaperRecord paper;
  paper.id = record.id;
  paper.year = record.year;
  paper.citations_5y = record.citations_5y;
  paper.authors.reserve(record.authors.size());
  for (const auto& a : record.authors) {
    paper.authors.push_back(AuthorId{intern(author_ids_, author_names_, a)});
  }
  paper.topics.reserve(record.topics.size());
  for (const auto& t : record.topics) {
    paper.topics.push_back(TopicId{intern(topic_ids_, topic_names_, t)});
  }
  ids_.emplace(std::move(record.id), static_cast<PaperIndex>(papers_.size()));
  papers_.push_back(std::move(paper));
}

namespace {

// Returns old-id -> new-id such that new ids follow name order, and sorts
// `names` in place.
std::vector<std::uint32_t> sort_names(std::vector<std::string>& names) {
  std::vector<std::uint32_t> order(names.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return names[a] < names[b]; });
  std::vector<std::uint32_t> remap(names.size());
  std::vector<std::string> sorted(names.size());
  for (std::uint32_t rank = 0; rank < order.size(); ++rank) {
    remap[order[rank]] = rank;
    sorted[rank] = std::move(names[order[rank]]);
  }
  names = std::move(sorted);
  return remap;
}

}  // namespace

Corpus CorpusBuilder::build() && {
  Corpus corpus;
  const auto author_remap = sort_names(author_names_);
  const auto topic_remap = sort_names(topic_names_);
  for (auto& paper : papers_) {
    for (auto& a : paper.authors) a.value = author_remap[a.value];
    for (auto& t : paper.topics) t.value = topic_remap[t.value];
    std::sort(paper.topics.begin(), paper.topics.end());
    paper.topics.erase(std::unique(paper.topics.begin(), paper.topics.end()),
                       paper.topics.end());
  }
  corpus.author_index_ = Corpus::build_author_index(papers_, author_names_.size());
  corpus.papers_ = std::move(papers_);
  corpus.author_names_ = std::move(author_names_);
  corpus.topic_names_ = std::move(topic_names_);
  corpus.paper_lookup_ = std::move(ids_);
  *this = CorpusBuilder{};
  return corpus;
}

namespace {

using nlohmann::json;

std::vector<std::string> string_list(const json& j, const char* key, std::size_t line) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    throw CorpusError(line, std::string("missing ") + key);
  }
  if (!it->is_array()) throw CorpusError(line, std::string(key) + " must be an array");
  std::vector<std::string> out;
  out.reserve(it->size());
  for (const auto& v : *it) {
    if (!v.is_string()) throw CorpusError(line, std::string(key) + " must contain strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

RawRecord record_from_json(const std::string& text, std::size_t line) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error&) {
    throw CorpusError(line, "malformed JSON");
  }
  if (!j.is_object()) throw CorpusError(line, "record is not a JSON object");

  RawRecord r;
  auto id = j.find("id");
  if (id == j.end() || !id->is_string()) throw CorpusError(line, "missing or non-string id");
  r.id = id->get<std::string>();

  auto year = j.find("year");
  if (year == j.end()) throw CorpusError(line, "missing year");
  if (!year->is_number_integer()) throw CorpusError(line, "non-integer year");
  r.year = year->get<int>();

  r.authors = string_list(j, "authors", line);
  r.topics = string_list(j, "topics", line);

  auto cites = j.find("citations_5y");
  if (cites != j.end() && !cites->is_null()) {
    if (!cites->is_number_integer()) throw CorpusError(line, "non-integer citations_5y");
    r.citations_5y = cites->get<std::int64_t>();
  }
  return r;
}

}  // namespace

ParseResult parse_corpus(std::istream& in, ParseMode mode) {
  CorpusBuilder builder;
  std::vector<Diagnostic> diagnostics;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      builder.add(record_from_json(text, line), line);
    } catch (const CorpusError& e) {
      if (mode == ParseMode::kStrict) throw;
      diagnostics.push_back({e.position(), e.reason()});
    }
  }
  return {std::move(builder).build(), std::move(diagnostics)};
}

ParseResult load_corpus(const std::filesystem::path& path, ParseMode mode) {
  std::ifstream in(path);
  if (!in) {
    throw std::system_error(std::make_error_code(std::errc::no_such_file_or_directory),
                            "cannot open " + path.string());
  }
  return parse_corpus(in, mode);
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& paper : corpus.papers()) {
    nlohmann::ordered_json j;
    j["id"] = paper.id;
    j["year"] = paper.year;
    auto& authors = j["authors"] = nlohmann::ordered_json::array();
    for (AuthorId a : paper.authors) authors.push_back(corpus.author_name(a));
    auto& topics = j["topics"] = nlohmann::ordered_json::array();
    for (TopicId t : paper.topics) topics.push_back(corpus.topic_name(t));
    if (paper.citations_5y) j["citations_5y"] = *paper.citations_5y;
    out << j.dump() << '\n';
  }
}

namespace {

bool has_prior_paper(const Corpus& corpus, AuthorId author, int year, int window_years) {
  auto papers = corpus.papers_of(author);
  auto it = std::lower_bound(papers.begin(), papers.end(), year - window_years,
                             [&](PaperIndex p, int y) { return corpus.paper(p).year < y; });
  return it != papers.end() && corpus.paper(*it).year <= year - 1;
}

}  // namespace

std::vector<PaperIndex> select_analysis_set(const Corpus& corpus,
                                            const AnalysisConfig& config) {
  std::vector<PaperIndex> selected;
  const auto papers = corpus.papers();
  for (std::size_t i = 0; i < papers.size(); ++i) {
    const auto& p = papers[i];
    if (p.year < config.year_start || p.year > config.year_end) continue;
    if (!p.citations_5y || *p.citations_5y < config.min_citations) continue;
    if (p.authors.size() < static_cast<std::size_t>(config.min_authors)) continue;
    const bool profiled = std::all_of(p.authors.begin(), p.authors.end(), [&](AuthorId a) {
      return has_prior_paper(corpus, a, p.year, config.window_years);
    });
    if (profiled) selected.push_back(static_cast<PaperIndex>(i));
  }
  return selected;
}

std::vector<PaperIndex> prior_window(const Corpus& corpus, AuthorId author, int year,
                                     int window_years) {
  auto papers = corpus.papers_of(author);
  auto year_of = [&](PaperIndex p) { return corpus.paper(p).year; };
  auto first = std::lower_bound(papers.begin(), papers.end(), year - window_years,
                                [&](PaperIndex p, int y) { return year_of(p) < y; });
  auto last = std::lower_bound(first, papers.end(), year,
                               [&](PaperIndex p, int y) { return year_of(p) < y; });
  return {first, last};
}

BucketId assign_bucket(std::int64_t citations, const AnalysisConfig& config) {
  const auto& bounds = config.bucket_bounds;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (citations >= bounds[i].lo && (!bounds[i].hi || citations < *bounds[i].hi)) {
      return {i, bucket_label(i)};
    }
  }
  throw std::out_of_range("citation count " + std::to_string(citations) +
                          " is below the first bucket");
}

}  // namespace teamdiv
