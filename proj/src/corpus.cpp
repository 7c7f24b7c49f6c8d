#include "qcrf/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "qcrf/error.hpp"
#include "qcrf/levels.hpp"

namespace qcrf {

std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error("'" + dir.string() + "' is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

namespace {

CorpusEntry check_file(const std::filesystem::path& file) {
  CorpusEntry e;
  e.file = file.filename().string();
  e.doc = load_instance(file);
  e.digest = instance_digest(e.doc);
  for (const auto& [level, expected] : e.doc.expect) {
    LevelOutcome o;
    o.level = level;
    o.expected = expected;
    try {
      o.report = run_level(e.doc, level);
      o.verdict = o.report.verdict() ? "pass" : "fail";
    } catch (const Error& err) {
      o.verdict = "error";
      o.error = err.what();
    }
    e.outcomes.push_back(std::move(o));
  }
  return e;
}

}  // namespace

std::vector<CorpusEntry> run_corpus(const std::filesystem::path& dir, std::size_t jobs) {
  const auto files = corpus_files(dir);
  std::vector<CorpusEntry> entries(files.size());
  std::vector<std::exception_ptr> errors(files.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < files.size(); k = next++) {
      try {
        entries[k] = check_file(files[k]);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, files.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return entries;
}

std::string corpus_text(const std::vector<CorpusEntry>& entries) {
  std::string out;
  for (const CorpusEntry& e : entries) {
    out += e.doc.instance.name + " (" + e.digest + ")\n";
    for (const LevelOutcome& o : e.outcomes) {
      out += "  " + o.level + ": " + o.verdict + " (expected " + o.expected + ")" +
             (o.as_expected() ? "" : "  MISMATCH") + "\n";
      if (!o.error.empty()) out += "    " + o.error + "\n";
    }
  }
  out += std::string("corpus: ") + (corpus_ok(entries) ? "ok" : "mismatch") + "\n";
  return out;
}

std::string corpus_json(const std::vector<CorpusEntry>& entries) {
  nlohmann::ordered_json j;
  j["tool"] = kToolVersion;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const CorpusEntry& e : entries) {
    nlohmann::ordered_json item;
    item["file"] = e.file;
    item["name"] = e.doc.instance.name;
    item["digest"] = e.digest;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const LevelOutcome& o : e.outcomes) {
      nlohmann::ordered_json c;
      c["level"] = o.level;
      c["expected"] = o.expected;
      if (o.verdict == "error") {
        c["verdict"] = "error";
        c["error"] = o.error;
      } else {
        nlohmann::ordered_json r = report_json(o.report);
        for (auto it = r.begin(); it != r.end(); ++it) c[it.key()] = it.value();
      }
      checks.push_back(c);
    }
    item["checks"] = checks;
    list.push_back(item);
  }
  j["instances"] = list;
  j["ok"] = corpus_ok(entries);
  return j.dump(2) + "\n";
}

bool corpus_ok(const std::vector<CorpusEntry>& entries) {
  for (const CorpusEntry& e : entries) {
    for (const LevelOutcome& o : e.outcomes) {
      if (!o.as_expected()) return false;
    }
  }
  return true;
}

}  // namespace qcrf
