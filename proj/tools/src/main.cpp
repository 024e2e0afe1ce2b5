#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "veritas/error.hpp"
#include "veritas_app/commands.hpp"
#include "veritas_app/run_config.hpp"

namespace {

using namespace veritas::app;

// Flags shared by index and run; each one, when given, wins over the file.
struct Overrides {
  std::string config;
  std::optional<std::string> claims, knowledge_store, out, index_dir;
  std::optional<std::string> embed_url, llm_url, model, mock_script;
  std::optional<std::size_t> top_k, workers, limit, stop_after;
  bool mock_embed = false;

  void add_to(CLI::App* cmd, bool config_required) {
    auto* opt = cmd->add_option("-c,--config", config, "TOML config file");
    if (config_required) opt->required();
    cmd->add_option("--claims", claims, "Claims JSON file");
    cmd->add_option("--knowledge-store", knowledge_store, "Knowledge-store directory");
    cmd->add_option("--out", out, "Output directory");
    cmd->add_option("--index-dir", index_dir, "Index directory");
    cmd->add_option("--embed-url", embed_url, "Embedding endpoint");
    cmd->add_option("--llm-url", llm_url, "LLM endpoint");
    cmd->add_option("--model", model, "LLM model for every stage");
    cmd->add_option("--top-k", top_k, "Documents retrieved per claim");
    cmd->add_option("--workers", workers, "Claims processed concurrently");
    cmd->add_option("--limit", limit, "Process only the first N claims");
    cmd->add_option("--mock-script", mock_script, "Serve LLM calls from a scripted JSON file");
    cmd->add_flag("--mock-embed", mock_embed, "Use the offline hashing embedder");
    cmd->add_option("--stop-after", stop_after)->group("");
  }

  RunConfig resolve() const {
    RunConfig c;
    if (!config.empty()) c = load_run_config(config);
    apply_env_overrides(c);
    if (claims) c.claims = *claims;
    if (knowledge_store) c.knowledge_store = *knowledge_store;
    if (out) c.output_dir = *out;
    if (index_dir) c.index_dir = fs::path(*index_dir);
    if (embed_url) c.embed.url = *embed_url;
    if (llm_url) c.llm.url = *llm_url;
    if (model) {
      c.llm.model = *model;
      c.question.model = c.answer.model = c.classify.model = std::nullopt;
    }
    if (top_k) c.top_k = *top_k;
    if (workers) c.workers = *workers;
    if (limit) c.limit = *limit;
    if (mock_script) c.mock_script = fs::path(*mock_script);
    c.mock_embed = c.mock_embed || mock_embed;
    c.stop_after = stop_after;
    c.validate();
    return c;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Claim verification pipeline: index, run, evaluate, report"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "debug, info, warn, error or off");

  Overrides index_flags, run_flags;
  auto* index_cmd = app.add_subcommand("index", "Build one vector index per claim");
  index_flags.add_to(index_cmd, true);
  auto* run_cmd = app.add_subcommand("run", "Extract evidence and classify every claim");
  run_flags.add_to(run_cmd, true);

  Overrides eval_flags;
  std::string pred_path, gold_path;
  std::optional<double> threshold;
  auto* eval_cmd = app.add_subcommand("evaluate", "Score predictions against gold");
  eval_cmd->add_option("--pred", pred_path, "Predictions JSON-Lines")->required();
  eval_cmd->add_option("--gold", gold_path, "Gold claims JSON")->required();
  eval_cmd->add_option("-c,--config", eval_flags.config, "TOML config file");
  eval_cmd->add_option("--out", eval_flags.out, "Report directory");
  eval_cmd->add_option("--threshold", threshold, "Q+A threshold");

  std::string report_in;
  auto* report_cmd = app.add_subcommand("report", "Render a report.json as text");
  report_cmd->add_option("--in", report_in, "report.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    Logger log(std::cerr, parse_log_level(log_level));
    if (index_cmd->parsed()) {
      const auto config = index_flags.resolve();
      require_exists(config.claims, "claims file");
      require_exists(config.knowledge_store, "knowledge store");
      auto providers = make_providers(config);
      return index_claims(config, *providers.embedder, log);
    }
    if (run_cmd->parsed()) {
      const auto config = run_flags.resolve();
      require_exists(config.claims, "claims file");
      require_exists(config.knowledge_store, "knowledge store");
      auto providers = make_providers(config);
      return run_claims(config, providers, log);
    }
    if (eval_cmd->parsed()) {
      RunConfig config;
      if (!eval_flags.config.empty()) config = load_run_config(eval_flags.config);
      if (threshold) config.qa_threshold = *threshold;
      config.validate();
      require_exists(pred_path, "predictions file");
      require_exists(gold_path, "gold file");
      fs::path out_dir = eval_flags.out ? fs::path(*eval_flags.out)
                         : eval_flags.config.empty() ? fs::path(pred_path).parent_path()
                                                     : config.output_dir;
      if (out_dir.empty()) out_dir = ".";
      return evaluate_predictions(config, pred_path, gold_path, out_dir, log, std::cout);
    }
    return render_report(report_in, std::cout);
  } catch (const veritas::Error& e) {
    Logger(std::cerr).error("fatal", {{"message", e.what()}});
    return kExitConfigError;
  } catch (const std::exception& e) {
    Logger(std::cerr).error("fatal", {{"message", e.what()}});
    return kExitConfigError;
  }
}
