#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relind/relind.hpp"

// Command line front end. Exit codes: 0 success, 2 configuration errors
// (bad flags, unknown names, unreadable paths), 3 data errors (malformed
// files, out-of-vocabulary words, too little data).

namespace {

struct RunConfig {
  std::string embedding_path;
  std::string embedding_format = "glove-text";
  std::string dataset_path;
  std::string dataset_format = "custom-tsv";
  std::string model = "translation";
  std::uint64_t seed = 42;
  std::string out_path;
  std::string out_tsv_path;
  bool case_fold = false;
  std::optional<int> k_override;
  std::size_t max_vocab = 0;
  unsigned threads = 0;
  std::string train_path;
  std::string pairs_path;
  std::string load_model_path;
  std::string save_model_path;
  std::string relation_name;
};

void require_readable(const std::string& path, const std::string& what) {
  namespace fs = std::filesystem;
  if (path.empty()) return;
  std::error_code ec;
  if (!fs::exists(path, ec) || ec) {
    throw relind::ConfigError(what + " path does not exist: " + path);
  }
  if (fs::is_directory(path, ec)) return;  // directory datasets are opened per file
  std::ifstream probe(path);
  if (!probe.is_open()) {
    throw relind::ConfigError(what + " path is not readable: " + path);
  }
}

void require_writable_parent(const std::string& path, const std::string& what) {
  namespace fs = std::filesystem;
  if (path.empty()) return;
  const fs::path parent = fs::path(path).parent_path();
  if (parent.empty()) return;  // current directory
  std::error_code ec;
  if (!fs::is_directory(parent, ec) || ec) {
    throw relind::ConfigError(what + " parent directory does not exist: " +
                              parent.string());
  }
}

relind::WordEmbedding load_embedding_checked(const RunConfig& config) {
  return relind::WordEmbedding::load(config.embedding_path,
                                     relind::embedding_format_from_name(config.embedding_format),
                                     config.case_fold, config.max_vocab);
}

std::vector<relind::WordPair> load_pair_lines(const std::string& path, bool case_fold) {
  std::ifstream in(path);
  if (!in.is_open()) throw relind::DataError("cannot open pairs file: " + path);
  std::vector<relind::WordPair> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size() ||
        line.find('\t', tab + 1) != std::string::npos) {
      throw relind::ParseError(path + ", line " + std::to_string(line_no) +
                               ": expected 'source<TAB>target'");
    }
    std::string s = line.substr(0, tab);
    std::string t = line.substr(tab + 1);
    if (case_fold) {
      s = relind::fold_case_ascii(s);
      t = relind::fold_case_ascii(t);
    }
    out.push_back(relind::WordPair{std::move(s), std::move(t)});
  }
  if (out.empty()) throw relind::DataError("pairs file is empty: " + path);
  return out;
}

int cmd_evaluate(const RunConfig& config) {
  require_readable(config.embedding_path, "embedding");
  require_readable(config.dataset_path, "dataset");
  require_writable_parent(config.out_path, "report");
  require_writable_parent(config.out_tsv_path, "TSV report");

  const auto embedding = load_embedding_checked(config);
  const auto relations = relind::load_dataset(
      config.dataset_path, relind::dataset_format_from_name(config.dataset_format),
      config.case_fold);

  relind::EvalOptions options;
  options.model = relind::model_kind_from_name(config.model);
  options.seed = config.seed;
  options.threads = config.threads;
  options.k_override = config.k_override;
  options.embedding_id = config.embedding_path;
  options.dataset_id = config.dataset_path;

  const auto report = relind::evaluate(embedding, relations, options);
  if (!config.out_path.empty()) relind::write_report_json(report, config.out_path);
  if (!config.out_tsv_path.empty()) relind::write_report_tsv(report, config.out_tsv_path);
  relind::print_macro_table(report, std::cout);
  return 0;
}

int cmd_score(const RunConfig& config) {
  require_readable(config.embedding_path, "embedding");
  require_writable_parent(config.out_path, "output");
  require_writable_parent(config.save_model_path, "model");
  if (config.train_path.empty() == config.load_model_path.empty()) {
    throw relind::ConfigError("score needs exactly one of --train or --load-model");
  }
  if (!config.train_path.empty()) require_readable(config.train_path, "training pairs");
  if (!config.load_model_path.empty()) {
    require_readable(config.load_model_path, "model");
  }
  require_readable(config.pairs_path, "pairs");
  if (config.pairs_path.empty()) {
    throw relind::ConfigError("score needs --pairs with candidate pairs to score");
  }

  const auto embedding = load_embedding_checked(config);

  relind::StoredModel stored;
  if (!config.train_path.empty()) {
    const auto train_pairs = load_pair_lines(config.train_path, config.case_fold);
    stored.kind = relind::model_kind_from_name(config.model);
    switch (stored.kind) {
      case relind::ModelKind::kTranslation:
        stored.model = relind::fit_translation(embedding, train_pairs, config.seed);
        break;
      case relind::ModelKind::kRegression:
        stored.model = relind::fit_regression(embedding, train_pairs, config.k_override);
        break;
      case relind::ModelKind::kThreeCosAvg:
        stored.model = relind::fit_three_cos_avg(embedding, train_pairs);
        break;
      case relind::ModelKind::kLRCos:
        stored.model = relind::fit_lrcos(embedding, train_pairs);
        break;
      case relind::ModelKind::kMargin: {
        const auto training =
            relind::assemble_margin_training(embedding, train_pairs, config.seed);
        for (const auto& w : training.warnings) std::cerr << "warning: " << w << '\n';
        stored.model = relind::train_margin_classifier(
            training.positives, training.negatives, 1.0, 1.0, training.negative_weight);
        break;
      }
    }
  } else {
    stored = relind::load_model(config.load_model_path);
  }
  if (!config.save_model_path.empty()) relind::save_model(stored, config.save_model_path);

  const auto pairs = load_pair_lines(config.pairs_path, config.case_fold);

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!config.out_path.empty()) {
    file.open(config.out_path, std::ios::binary);
    if (!file.is_open()) {
      throw relind::DataError("cannot open for writing: " + config.out_path);
    }
    out = &file;
  }

  char buf[64];
  auto fmt = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return std::string(buf);
  };

  *out << "source\ttarget\ttotal\tsource_type_lbf\ttarget_type_lbf\trelation_lbf\tnote\n";
  for (const auto& pair : pairs) {
    const bool s_in = embedding.contains(pair.source);
    const bool t_in = embedding.contains(pair.target);
    if (!s_in || !t_in) {
      std::string note = "oov:";
      if (!s_in) note += " " + pair.source;
      if (!t_in) note += " " + pair.target;
      *out << pair.source << '\t' << pair.target << "\tNA\tNA\tNA\tNA\t" << note << '\n';
      continue;
    }
    relind::ScoreBreakdown breakdown;
    bool have_breakdown = true;
    switch (stored.kind) {
      case relind::ModelKind::kTranslation:
        breakdown = relind::score_translation(
            std::get<relind::TranslationRelationModel>(stored.model), embedding,
            pair.source, pair.target);
        break;
      case relind::ModelKind::kRegression:
        breakdown = relind::score_regression(
            std::get<relind::RegressionRelationModel>(stored.model), embedding,
            pair.source, pair.target);
        break;
      case relind::ModelKind::kThreeCosAvg:
        breakdown.total = relind::score_three_cos_avg(
            std::get<relind::ThreeCosAvgModel>(stored.model), embedding, pair.source,
            pair.target);
        have_breakdown = false;
        break;
      case relind::ModelKind::kLRCos:
        breakdown.total = relind::score_lrcos(std::get<relind::LRCosModel>(stored.model),
                                              embedding, pair.source, pair.target);
        have_breakdown = false;
        break;
      case relind::ModelKind::kMargin:
        breakdown.total = relind::score_margin(
            std::get<relind::MarginClassifier>(stored.model), embedding, pair.source,
            pair.target);
        have_breakdown = false;
        break;
    }
    *out << pair.source << '\t' << pair.target << '\t' << fmt(breakdown.total) << '\t';
    if (have_breakdown) {
      *out << fmt(breakdown.source_type_lbf) << '\t' << fmt(breakdown.target_type_lbf)
           << '\t' << fmt(breakdown.relation_lbf);
    } else {
      *out << "NA\tNA\tNA";
    }
    *out << "\t-\n";
  }
  if (!config.out_path.empty() && !file) {
    throw relind::DataError("write failed: " + config.out_path);
  }
  return 0;
}

int cmd_diagnostics(const RunConfig& config) {
  require_readable(config.embedding_path, "embedding");
  require_readable(config.dataset_path, "dataset");
  if (config.out_path.empty()) {
    throw relind::ConfigError("diagnostics needs --out for the CSV path");
  }
  require_writable_parent(config.out_path, "output");

  const auto embedding = load_embedding_checked(config);
  const auto relations = relind::load_dataset(
      config.dataset_path, relind::dataset_format_from_name(config.dataset_format),
      config.case_fold);

  const relind::RelationDataset* chosen = nullptr;
  if (!config.relation_name.empty()) {
    for (const auto& rel : relations) {
      if (rel.name == config.relation_name) {
        chosen = &rel;
        break;
      }
    }
    if (chosen == nullptr) {
      std::string names;
      for (const auto& rel : relations) names += " '" + rel.name + "'";
      throw relind::ConfigError("relation '" + config.relation_name +
                                "' not in the dataset; available:" + names);
    }
  } else if (relations.size() == 1) {
    chosen = &relations.front();
  } else {
    std::string names;
    for (const auto& rel : relations) names += " '" + rel.name + "'";
    throw relind::ConfigError(
        "dataset has several relations; pick one with --relation; available:" + names);
  }

  const auto projection = relind::export_diagnostics(*chosen, embedding, config.out_path);
  std::cout << "wrote " << projection.points_path << '\n'
            << "wrote " << projection.pairs_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relation induction over word embeddings"};
  app.require_subcommand(1);

  RunConfig config;
  int k_value = -1;

  auto add_common = [&](CLI::App* cmd, bool needs_dataset) {
    cmd->add_option("--embedding", config.embedding_path, "embedding file")->required();
    cmd->add_option("--embedding-format", config.embedding_format,
                    "embedding file format")
        ->check(CLI::IsMember({"glove-text", "word2vec-text"}));
    if (needs_dataset) {
      cmd->add_option("--dataset", config.dataset_path, "dataset file or directory")
          ->required();
      cmd->add_option("--dataset-format", config.dataset_format, "dataset format")
          ->check(CLI::IsMember({"google", "bats", "diffvec", "custom-tsv"}));
    }
    cmd->add_option("--seed", config.seed, "random seed");
    cmd->add_option("--out", config.out_path, "output path");
    cmd->add_flag("--case-fold", config.case_fold, "lowercase words on load");
    cmd->add_option("--max-vocab", config.max_vocab,
                    "keep only the first N embedding entries (0 = all)");
  };

  CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "run the benchmark protocol");
  add_common(evaluate_cmd, true);
  evaluate_cmd->add_option("--model", config.model, "model kind")
      ->check(CLI::IsMember({"translation", "regression", "3cosavg", "lrcos", "margin"}));
  evaluate_cmd->add_option("--k", k_value, "regression basis size override");
  evaluate_cmd->add_option("--threads", config.threads,
                           "worker threads (0 = hardware, result identical)");
  evaluate_cmd->add_option("--out-tsv", config.out_tsv_path, "flat per-relation TSV path");

  CLI::App* score_cmd = app.add_subcommand("score", "fit or load one model, score pairs");
  add_common(score_cmd, false);
  score_cmd->add_option("--model", config.model, "model kind")
      ->check(CLI::IsMember({"translation", "regression", "3cosavg", "lrcos", "margin"}));
  score_cmd->add_option("--k", k_value, "regression basis size override");
  score_cmd->add_option("--train", config.train_path, "training pairs TSV");
  score_cmd->add_option("--pairs", config.pairs_path, "candidate pairs TSV to score");
  score_cmd->add_option("--load-model", config.load_model_path, "load a saved model");
  score_cmd->add_option("--save-model", config.save_model_path, "save the fitted model");

  CLI::App* diagnostics_cmd =
      app.add_subcommand("diagnostics", "project one relation to 2 components");
  add_common(diagnostics_cmd, true);
  diagnostics_cmd->add_option("--relation", config.relation_name, "relation to project");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // CLI11 prints help itself; map every parse failure to the config code
    // except an explicit help request.
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (k_value >= 0) config.k_override = k_value;
    if (evaluate_cmd->parsed()) return cmd_evaluate(config);
    if (score_cmd->parsed()) return cmd_score(config);
    if (diagnostics_cmd->parsed()) return cmd_diagnostics(config);
    throw relind::ConfigError("no subcommand given");
  } catch (const relind::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const relind::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const relind::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
