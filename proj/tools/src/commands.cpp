#include "veritas_app/commands.hpp"

#include <deque>
#include <future>
#include <map>
#include <set>
#include <string>

#include "veritas/corpus_store.hpp"
#include "veritas/error.hpp"
#include "veritas/eval/report.hpp"
#include "veritas/evidence_pipeline.hpp"
#include "veritas/jsonl.hpp"
#include "veritas/vector_index.hpp"
#include "veritas/verdict_classifier.hpp"

namespace veritas::app {
namespace {

// Everything one claim contributes to the artifacts.
struct ClaimOutput {
  ClaimId claim_id = 0;
  std::optional<EvidenceSet> evidence;
  std::optional<VerdictPrediction> prediction;
  std::vector<StageFailure> failures;
};

ClaimOutput process_claim(const ClaimRecord& claim, const RunConfig& config,
                          const std::string& fingerprint, Providers& providers,
                          const EvidenceSettings& evidence_settings,
                          const ClassifierSettings& classifier_settings) {
  ClaimOutput out;
  out.claim_id = claim.claim_id;
  auto fatal = [&](std::string stage, const std::string& message) {
    out.failures.push_back({claim.claim_id, std::move(stage), message, true, std::nullopt});
    return out;
  };

  std::vector<Document> docs;
  std::optional<VectorIndex> index;
  try {
    index.emplace(VectorIndex::load(index_file(config, claim.claim_id), fingerprint));
    docs = load_knowledge_store(config.knowledge_store, claim.claim_id);
  } catch (const Error& e) {
    return fatal("retrieve", e.what());
  }

  EvidenceOutcome outcome;
  try {
    outcome = extract_evidence(claim, *index, docs, *providers.embedder, *providers.llm,
                               evidence_settings);
  } catch (const StageError& e) {
    return fatal(e.stage(), e.what());
  } catch (const Error& e) {
    return fatal("retrieve", e.what());
  }
  out.evidence = outcome.evidence;
  out.failures = outcome.failures;

  try {
    auto result = classify(claim, outcome.evidence, *providers.llm, classifier_settings);
    out.prediction = std::move(result.prediction);
  } catch (const Error& e) {
    return fatal("classify", e.what());
  }
  return out;
}

// Lines of a JSON-Lines artifact that parse as objects with a claim_id.
// A torn final line (interrupted write) is dropped.
std::vector<Json> read_artifact_lines(const fs::path& path) {
  std::vector<Json> lines;
  std::error_code ec;
  if (!fs::exists(path, ec)) return lines;
  const auto text = read_text_file(path);
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    const bool complete = end != std::string::npos;
    if (!complete) end = text.size();
    const auto line = std::string_view(text).substr(start, end - start);
    start = end + 1;
    if (line.empty() || !complete) continue;
    auto value = Json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (value.is_object() && value.contains("claim_id") && value["claim_id"].is_number_integer()) {
      lines.push_back(std::move(value));
    }
  }
  return lines;
}

std::string join_lines(const std::vector<Json>& lines) {
  std::string out;
  for (const auto& line : lines) out += dump_line(line) + '\n';
  return out;
}

// Claims whose artifacts were fully committed by an earlier invocation:
// those with a prediction or a fatal error. Every artifact is rewritten to
// hold exactly those claims' lines, which drops half-committed claims.
std::set<ClaimId> prepare_resume(const RunConfig& config, Logger& log) {
  const auto dir = config.output_dir;
  auto predictions = read_artifact_lines(dir / kPredictionsFile);
  auto errors = read_artifact_lines(dir / kErrorsFile);
  auto evidence = read_artifact_lines(dir / kEvidenceFile);

  std::set<ClaimId> done;
  for (const auto& p : predictions) done.insert(p["claim_id"].get<ClaimId>());
  for (const auto& e : errors) {
    if (e.value("fatal", false)) done.insert(e["claim_id"].get<ClaimId>());
  }

  auto keep = [&](std::vector<Json>& lines) {
    std::erase_if(lines, [&](const Json& j) { return !done.count(j["claim_id"].get<ClaimId>()); });
  };
  keep(predictions);
  keep(errors);
  keep(evidence);
  write_text_atomic(dir / kPredictionsFile, join_lines(predictions));
  write_text_atomic(dir / kErrorsFile, join_lines(errors));
  write_text_atomic(dir / kEvidenceFile, join_lines(evidence));
  if (!done.empty()) log.info("resume", {{"completed_claims", done.size()}});
  return done;
}

std::size_t count_error_lines(const fs::path& path) { return read_artifact_lines(path).size(); }

}  // namespace

fs::path index_file(const RunConfig& config, ClaimId claim_id) {
  return config.resolved_index_dir() / (std::to_string(claim_id) + ".vidx");
}

Providers make_providers(const RunConfig& config) {
  Providers p;
  if (config.mock_embed || config.embed.provider == "hashing") {
    p.embedder = std::make_shared<HashingEmbedder>(config.embed.dim ? config.embed.dim : 256);
  } else {
    OllamaEmbedder::Options o;
    o.base_url = config.embed.url;
    o.model = config.embed.model;
    o.dim = config.embed.dim;
    o.timeout = std::chrono::seconds(config.embed.timeout_s);
    p.embedder = std::make_shared<OllamaEmbedder>(std::move(o));
  }

  if (config.mock_script) {
    auto script = ScriptedProvider::load_script(*config.mock_script);
    p.ordinal_script = !script.by_ordinal.empty();
    p.llm = make_mock_provider(std::move(script));
  } else {
    OllamaChatProvider::Options o;
    o.base_url = config.llm.url;
    o.timeout = std::chrono::seconds(config.llm.timeout_s);
    o.limiter = std::make_shared<InflightLimiter>(config.llm.inflight);
    p.llm = std::make_shared<OllamaChatProvider>(std::move(o));
  }
  return p;
}

std::vector<ClaimRecord> load_config_claims(const RunConfig& config) {
  auto claims = load_claims(config.claims);
  if (config.limit && claims.size() > *config.limit) claims.resize(*config.limit);
  return claims;
}

int index_claims(const RunConfig& config, EmbeddingProvider& embedder, Logger& log) {
  const auto claims = load_config_claims(config);
  std::string fingerprint;
  try {
    fingerprint = with_retries(config.retry(), [&] { return embedder.fingerprint(); });
  } catch (const Error& e) {
    log.error("embedder_unavailable", {{"message", e.what()}});
    return kExitClaimFailures;
  }
  fs::create_directories(config.resolved_index_dir());

  EmbedOptions options;
  options.char_budget = config.embed.char_budget;
  options.batch_size = config.embed.batch_size;
  options.retry = config.retry();

  std::size_t built = 0, skipped = 0, failed = 0;
  for (const auto& claim : claims) {
    const auto path = index_file(config, claim.claim_id);
    std::error_code ec;
    if (fs::exists(path, ec)) {
      try {
        if (VectorIndex::read_fingerprint(path) == fingerprint) {
          ++skipped;
          log.debug("index_skipped", {{"claim_id", claim.claim_id}});
          continue;
        }
      } catch (const Error&) {
        // Unreadable header: rebuild.
      }
    }
    try {
      const auto docs = load_knowledge_store(config.knowledge_store, claim.claim_id);
      build_index(docs, embedder, options).save(path);
      ++built;
      log.info("index_built", {{"claim_id", claim.claim_id}, {"documents", docs.size()}});
    } catch (const Error& e) {
      ++failed;
      log.error("index_failed", {{"claim_id", claim.claim_id}, {"message", e.what()}});
    }
  }
  log.info("index_done", {{"built", built}, {"skipped", skipped}, {"failed", failed}});
  return failed ? kExitClaimFailures : kExitOk;
}

int run_claims(const RunConfig& config, Providers& providers, Logger& log) {
  const auto claims = load_config_claims(config);
  const auto evidence_settings = config.evidence_settings();
  const auto classifier_settings = config.classifier_settings();

  fs::create_directories(config.output_dir);
  auto resolved = run_config_to_json(config);
  write_text_atomic(config.output_dir / kRunConfigFile, resolved.dump(2) + "\n");

  std::string fingerprint;
  try {
    fingerprint = with_retries(config.retry(), [&] { return providers.embedder->fingerprint(); });
  } catch (const Error& e) {
    log.error("embedder_unavailable", {{"message", e.what()}});
    return kExitClaimFailures;
  }

  const auto done = prepare_resume(config, log);
  std::vector<const ClaimRecord*> pending;
  for (const auto& claim : claims) {
    if (!done.count(claim.claim_id)) pending.push_back(&claim);
  }

  std::size_t workers = config.workers;
  if (providers.ordinal_script && workers > 1) {
    log.warn("workers_reduced", {{"reason", "ordinal mock script needs sequential calls"}});
    workers = 1;
  }

  JsonlAppender evidence_out(config.output_dir / kEvidenceFile);
  JsonlAppender predictions_out(config.output_dir / kPredictionsFile);
  JsonlAppender errors_out(config.output_dir / kErrorsFile);

  std::size_t committed = 0, failed_claims = 0;
  auto commit = [&](const ClaimOutput& out) {
    if (out.evidence) evidence_out.append(Json(*out.evidence));
    for (const auto& f : out.failures) {
      errors_out.append(Json(f));
      log.warn("stage_failed", {{"claim_id", f.claim_id},
                                {"stage", f.stage},
                                {"fatal", f.fatal},
                                {"message", f.message}});
    }
    if (out.prediction) {
      predictions_out.append(Json(*out.prediction));
      log.info("claim_done",
               {{"claim_id", out.claim_id}, {"label", display_name(out.prediction->label)}});
    }
    if (!out.failures.empty()) ++failed_claims;
    ++committed;
  };

  auto launch = [&](const ClaimRecord* claim) {
    return std::async(workers > 1 ? std::launch::async : std::launch::deferred, [&, claim] {
      return process_claim(*claim, config, fingerprint, providers, evidence_settings,
                           classifier_settings);
    });
  };

  // Bounded window of in-flight claims, committed strictly in claim order.
  std::deque<std::future<ClaimOutput>> window;
  std::size_t next = 0;
  bool stopped = false;
  while (next < pending.size() || !window.empty()) {
    while (next < pending.size() && window.size() < workers) window.push_back(launch(pending[next++]));
    auto out = window.front().get();
    window.pop_front();
    commit(out);
    if (config.stop_after && committed >= *config.stop_after) {
      stopped = true;
      break;
    }
  }
  for (auto& f : window) {
    if (f.valid()) f.wait();
  }

  log.info("run_done", {{"claims", claims.size()},
                        {"already_done", done.size()},
                        {"processed", committed},
                        {"with_failures", failed_claims},
                        {"stopped_early", stopped}});
  return count_error_lines(config.output_dir / kErrorsFile) ? kExitClaimFailures : kExitOk;
}

int evaluate_predictions(const RunConfig& config, const fs::path& predictions,
                         const fs::path& gold, const fs::path& out_dir, Logger& log,
                         std::ostream& out) {
  const auto preds = load_artifacts<VerdictPrediction>(predictions);
  const auto golds = load_claims(gold);
  const auto report = eval::evaluate_run(preds, golds, config.eval_config());
  for (const auto& e : report.excluded) {
    log.warn("claim_excluded", {{"claim_id", e.claim_id}, {"reason", e.reason}});
  }

  fs::create_directories(out_dir);
  write_text_atomic(out_dir / "report.json", eval::report_to_json(report).dump(2) + "\n");
  write_text_atomic(out_dir / "report.txt", eval::render_text(report));
  write_text_atomic(out_dir / "per_claim.csv", eval::render_csv(report));
  log.info("evaluate_done", {{"scored", report.per_claim.size()},
                             {"excluded", report.excluded.size()},
                             {"out_dir", out_dir.generic_string()}});
  out << eval::headline(report) << '\n';
  return kExitOk;
}

int render_report(const fs::path& report_json, std::ostream& out) {
  Json j;
  try {
    j = Json::parse(read_text_file(report_json));
  } catch (const Json::parse_error& e) {
    throw ParseError(report_json.string() + ": " + e.what(), e.byte);
  }
  out << eval::render_text(eval::report_from_json(j));
  return kExitOk;
}

}  // namespace veritas::app
