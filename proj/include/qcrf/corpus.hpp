#pragma once

// The built-in instance corpus: every data/instances/*.json file, checked at
// each level listed in its "expect" map.

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "qcrf/io.hpp"

namespace qcrf {

struct LevelOutcome {
  std::string level;
  std::string expected;  // "pass" or "fail"
  std::string verdict;   // "pass", "fail" or "error"
  std::string error;     // set when verdict == "error"
  CheckReport report;

  bool as_expected() const { return verdict == expected; }
};

struct CorpusEntry {
  std::string file;  // file name relative to the corpus directory
  InstanceDocument doc;
  std::string digest;
  std::vector<LevelOutcome> outcomes;
};

/// Sorted *.json files of `dir`. Throws Error if `dir` is not a directory.
std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir);

/// Loads and checks every file; `jobs` worker threads, results in file order.
/// Throws ParseError for a malformed file.
std::vector<CorpusEntry> run_corpus(const std::filesystem::path& dir, std::size_t jobs = 1);

std::string corpus_text(const std::vector<CorpusEntry>& entries);
std::string corpus_json(const std::vector<CorpusEntry>& entries);
bool corpus_ok(const std::vector<CorpusEntry>& entries);

}  // namespace qcrf
