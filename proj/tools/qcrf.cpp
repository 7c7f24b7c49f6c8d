#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

#include "qcrf/cohomology_job.hpp"
#include "qcrf/corpus.hpp"
#include "qcrf/error.hpp"
#include "qcrf/eval.hpp"
#include "qcrf/io.hpp"
#include "qcrf/levels.hpp"

namespace {

using qcrf::InstanceDocument;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

std::vector<qcrf::GaussRational> parse_point(const std::string& text, const qcrf::PatchPtr& patch) {
  std::vector<qcrf::GaussRational> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    qcrf::Poly p = qcrf::parse_poly(item, patch);
    if (!p.is_constant()) throw qcrf::UsageError("--base-point: '" + item + "' is not a constant");
    out.push_back(p.constant_term());
  }
  if (out.size() != patch->dim()) {
    throw qcrf::UsageError("--base-point: expected " + std::to_string(patch->dim()) + " comma-separated values");
  }
  return out;
}

InstanceDocument load(const std::string& file, const std::string& base_point) {
  InstanceDocument doc = qcrf::load_instance(file);
  if (!base_point.empty()) doc.instance.base_point = parse_point(base_point, doc.instance.patch);
  return doc;
}

int cmd_check(const std::string& file, const std::string& level, bool json, const std::string& base_point) {
  InstanceDocument doc = load(file, base_point);
  qcrf::CheckReport report = qcrf::run_level(doc, level);
  if (json) {
    nlohmann::ordered_json j;
    j["tool"] = qcrf::kToolVersion;
    j["instance"] = doc.instance.name;
    j["digest"] = qcrf::instance_digest(doc);
    j["level"] = level;
    nlohmann::ordered_json r = qcrf::report_json(report);
    for (auto it = r.begin(); it != r.end(); ++it) j[it.key()] = it.value();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "instance: " << doc.instance.name << " (" << qcrf::instance_digest(doc) << ")\n"
              << "level: " << level << "\n"
              << report.str();
  }
  return report.verdict() ? kPass : kFail;
}

int cmd_cohomology(const std::string& file, const qcrf::CohomologyOptions& options, bool json) {
  InstanceDocument doc = qcrf::load_instance(file);
  qcrf::CohomologyOutput out = qcrf::run_cohomology(doc, options);
  std::cout << (json ? out.json.dump(2) + "\n" : out.text);
  return out.pass ? kPass : kFail;
}

int cmd_eval(const std::string& file, const std::string& expression) {
  InstanceDocument doc = qcrf::load_instance(file);
  std::cout << qcrf::eval_expression(doc, expression) << "\n";
  return kPass;
}

int cmd_format(const std::string& file) {
  std::cout << qcrf::format_instance(qcrf::load_instance(file));
  return kPass;
}

int cmd_corpus(const std::string& dir, bool json, std::size_t jobs) {
  auto entries = qcrf::run_corpus(dir, jobs);
  std::cout << (json ? qcrf::corpus_json(entries) : qcrf::corpus_text(entries));
  return qcrf::corpus_ok(entries) ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks of generalized CRF, contact and Poisson structures on polynomial instances"};
  app.set_version_flag("--version", std::string(qcrf::kToolVersion));
  app.require_subcommand(1);

  std::string file, level, base_point, expression, dir = QCRF_DEFAULT_DATA_DIR;
  bool json = false;
  std::size_t jobs = 1;

  auto* check = app.add_subcommand("check", "Run the checkers of one level on an instance file");
  check->add_option("file", file, "Instance file")->required();
  check->add_option("--level,-l", level, "Check level")
      ->required()
      ->check(CLI::IsMember(qcrf::check_levels()));
  check->add_flag("--json", json, "Machine-readable output");
  check->add_option("--base-point", base_point, "Comma-separated rational point for frame validation");

  qcrf::CohomologyOptions coh;
  auto* cohomology = app.add_subcommand("cohomology", "Truncated Poisson cohomology and spectral sequence terms");
  cohomology->add_option("file", file, "Instance file")->required();
  cohomology->add_option("--degree,-D", coh.degree_bound, "Coefficient degree bound")->capture_default_str();
  cohomology->add_option("--kmax,-k", coh.kmax, "Highest multivector degree")->capture_default_str();
  cohomology->add_flag("--bigrading", coh.bigrading, "Check the (Q, P) bigrading of d_pi");
  cohomology->add_flag("--triple", coh.triple, "Check the (Q, H, Hbar) splitting of sigma''");
  cohomology->add_flag("--spectral", coh.spectral, "Spectral sequence tables E0 to E3");
  cohomology->add_flag("--json", json, "Machine-readable output");

  auto* eval = app.add_subcommand("eval", "Evaluate a bracket expression on an instance");
  eval->add_option("file", file, "Instance file")->required();
  eval->add_option("expression", expression, "Expression, e.g. lie(X1, X2)")->required();

  auto* format = app.add_subcommand("format", "Print an instance file in canonical form");
  format->add_option("file", file, "Instance file")->required();

  auto* corpus = app.add_subcommand("corpus", "Check every built-in instance against its expected verdicts");
  corpus->add_option("--data-dir", dir, "Directory of instance files");
  corpus->add_flag("--json", json, "Machine-readable output");
  corpus->add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::Range(1, 64));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*check) return cmd_check(file, level, json, base_point);
    if (*cohomology) return cmd_cohomology(file, coh, json);
    if (*eval) return cmd_eval(file, expression);
    if (*format) return cmd_format(file);
    if (*corpus) return cmd_corpus(dir, json, jobs);
  } catch (const qcrf::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const qcrf::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const qcrf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
