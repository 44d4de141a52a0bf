#include "relind/dataset.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <utility>

#include "relind/embedding.hpp"
#include "relind/errors.hpp"

namespace relind {

namespace {

namespace fs = std::filesystem;

std::vector<std::string> split_on(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == sep) {
      out.emplace_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string strip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return s.substr(i);
}

// Multi-answer targets ("sang/sung") keep the first alternative.
std::string first_alternative(std::string word) {
  const auto slash = word.find('/');
  if (slash != std::string::npos) word.resize(slash);
  return word;
}

struct Builder {
  std::vector<RelationDataset> relations;
  std::vector<std::set<std::pair<std::string, std::string>>> seen;
  std::vector<std::size_t> dup_counts;
  bool case_fold = false;

  std::size_t open(const std::string& name) {
    for (std::size_t i = 0; i < relations.size(); ++i) {
      if (relations[i].name == name) return i;
    }
    relations.push_back(RelationDataset{name, {}, {}});
    seen.emplace_back();
    dup_counts.push_back(0);
    return relations.size() - 1;
  }

  void add(std::size_t rel, std::string source, std::string target,
           const std::string& path, std::size_t line_no) {
    if (case_fold) {
      source = fold_case_ascii(source);
      target = fold_case_ascii(target);
    }
    if (source.empty() || target.empty()) {
      throw ParseError(path + ", line " + std::to_string(line_no) + ": empty word");
    }
    if (!seen[rel].emplace(source, target).second) {
      ++dup_counts[rel];
      return;
    }
    relations[rel].pairs.push_back(WordPair{std::move(source), std::move(target)});
  }

  std::vector<RelationDataset> finish() {
    for (std::size_t i = 0; i < relations.size(); ++i) {
      if (dup_counts[i] > 0) {
        relations[i].warnings.push_back("dropped " + std::to_string(dup_counts[i]) +
                                        " duplicate pair(s)");
      }
    }
    return std::move(relations);
  }
};

void load_google(const std::string& path, Builder& builder) {
  std::ifstream in(path);
  if (!in.is_open()) throw DataError("cannot open dataset file: " + path);
  std::string line;
  std::size_t line_no = 0;
  bool have_section = false;
  std::size_t current = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip(line);
    if (line.empty()) continue;
    if (line[0] == ':') {
      std::string name = strip(line.substr(1));
      if (name.empty()) {
        throw ParseError(path + ", line " + std::to_string(line_no) +
                         ": section header without a name");
      }
      current = builder.open(name);
      have_section = true;
      continue;
    }
    if (!have_section) {
      throw ParseError(path + ", line " + std::to_string(line_no) +
                       ": analogy line before any ': section' header");
    }
    const auto fields = split_ws(line);
    if (fields.size() != 4) {
      throw ParseError(path + ", line " + std::to_string(line_no) +
                       ": expected 4 words, got " + std::to_string(fields.size()));
    }
    // Both halves of an analogy line instantiate the relation.
    builder.add(current, fields[0], fields[1], path, line_no);
    builder.add(current, fields[2], fields[3], path, line_no);
  }
}

void load_pair_file(const std::string& path, const std::string& relation_name,
                    Builder& builder) {
  std::ifstream in(path);
  if (!in.is_open()) throw DataError("cannot open dataset file: " + path);
  const std::size_t rel = builder.open(relation_name);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip(line);
    if (line.empty()) continue;
    const auto fields = split_ws(line);
    if (fields.size() != 2) {
      throw ParseError(path + ", line " + std::to_string(line_no) +
                       ": expected 'source target', got " + std::to_string(fields.size()) +
                       " fields");
    }
    builder.add(rel, fields[0], first_alternative(fields[1]), path, line_no);
  }
}

void load_bats(const std::string& path, Builder& builder) {
  const fs::path root(path);
  if (fs::is_directory(root)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw DataError("dataset directory is empty: " + path);
    for (const auto& file : files) {
      load_pair_file(file.string(), file.stem().string(), builder);
    }
  } else {
    load_pair_file(path, root.stem().string(), builder);
  }
}

void load_diffvec(const std::string& path, Builder& builder) {
  std::ifstream in(path);
  if (!in.is_open()) throw DataError("cannot open dataset file: " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip(line);
    if (line.empty()) continue;
    const char sep = line.find('\t') != std::string::npos ? '\t' : ',';
    auto fields = split_on(line, sep);
    for (auto& f : fields) f = strip(f);
    if (fields.size() != 3) {
      throw ParseError(path + ", line " + std::to_string(line_no) +
                       ": expected 'relation,source,target', got " +
                       std::to_string(fields.size()) + " fields");
    }
    if (fields[0].empty()) {
      throw ParseError(path + ", line " + std::to_string(line_no) + ": empty relation name");
    }
    const std::size_t rel = builder.open(fields[0]);
    builder.add(rel, fields[1], fields[2], path, line_no);
  }
}

void load_custom_tsv(const std::string& path, Builder& builder) {
  std::ifstream in(path);
  if (!in.is_open()) throw DataError("cannot open dataset file: " + path);
  std::string line;
  std::size_t line_no = 0;
  bool have_relation = false;
  std::size_t current = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (strip(line).empty()) continue;
    if (line.rfind("#relation\t", 0) == 0) {
      const std::string name = strip(line.substr(10));
      if (name.empty()) {
        throw ParseError(path + ", line " + std::to_string(line_no) +
                         ": relation header without a name");
      }
      current = builder.open(name);
      have_relation = true;
      continue;
    }
    if (!have_relation) {
      throw ParseError(path + ", line " + std::to_string(line_no) +
                       ": pair line before any '#relation' header");
    }
    const auto fields = split_on(line, '\t');
    if (fields.size() != 2) {
      throw ParseError(path + ", line " + std::to_string(line_no) +
                       ": expected 'source<TAB>target', got " +
                       std::to_string(fields.size()) + " fields");
    }
    builder.add(current, strip(fields[0]), strip(fields[1]), path, line_no);
  }
}

}  // namespace

DatasetFormat dataset_format_from_name(std::string_view name) {
  if (name == "google") return DatasetFormat::kGoogle;
  if (name == "bats") return DatasetFormat::kBats;
  if (name == "diffvec") return DatasetFormat::kDiffVec;
  if (name == "custom-tsv") return DatasetFormat::kCustomTsv;
  throw ConfigError("unknown dataset format '" + std::string(name) +
                    "' (expected google, bats, diffvec, or custom-tsv)");
}

std::string to_string(DatasetFormat format) {
  switch (format) {
    case DatasetFormat::kGoogle: return "google";
    case DatasetFormat::kBats: return "bats";
    case DatasetFormat::kDiffVec: return "diffvec";
    case DatasetFormat::kCustomTsv: return "custom-tsv";
  }
  return "?";
}

std::vector<RelationDataset> load_dataset(const std::string& path, DatasetFormat format,
                                          bool case_fold) {
  Builder builder;
  builder.case_fold = case_fold;
  switch (format) {
    case DatasetFormat::kGoogle: load_google(path, builder); break;
    case DatasetFormat::kBats: load_bats(path, builder); break;
    case DatasetFormat::kDiffVec: load_diffvec(path, builder); break;
    case DatasetFormat::kCustomTsv: load_custom_tsv(path, builder); break;
  }
  auto out = builder.finish();
  if (out.empty()) throw DataError("dataset is empty: " + path);
  return out;
}

}  // namespace relind
