#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace relind {

struct WordPair {
  std::string source;
  std::string target;

  friend bool operator==(const WordPair& a, const WordPair& b) {
    return a.source == b.source && a.target == b.target;
  }
};

enum class DatasetFormat {
  kGoogle,     // ": section" headers, 4-word analogy lines
  kBats,       // directory of per-relation files, "source<TAB>target[/alt...]"
  kDiffVec,    // "relation,source,target" rows, comma or tab separated
  kCustomTsv,  // "#relation<TAB>name" headers, "source<TAB>target" rows
};

DatasetFormat dataset_format_from_name(std::string_view name);
std::string to_string(DatasetFormat format);

// One named relation: an ordered list of deduplicated word pairs.
struct RelationDataset {
  std::string name;
  std::vector<WordPair> pairs;
  std::vector<std::string> warnings;  // dedup notices and the like
};

// Loads every relation in the file (or directory, for the per-relation
// format). Words are case folded when requested; duplicate pairs within a
// relation are dropped with a warning on the relation. Unparseable rows
// raise ParseError naming file and line.
std::vector<RelationDataset> load_dataset(const std::string& path, DatasetFormat format,
                                          bool case_fold);

}  // namespace relind
