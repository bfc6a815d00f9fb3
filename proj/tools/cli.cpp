/*
 * Copyright (C) 2026 The Happiness Classifier Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "happiness/behavior.hpp"
#include "happiness/corpus.hpp"
#include "happiness/error.hpp"
#include "happiness/eval.hpp"
#include "happiness/format.hpp"
#include "happiness/lexicon.hpp"
#include "happiness/stats.hpp"
#include "happiness/synth.hpp"
#include "happiness/tree.hpp"

namespace happiness::cli {
namespace {

namespace fs = std::filesystem;

struct Config {
  std::string records;
  std::string lexicon;  // empty: bundled demo lexicon
  std::string matrix;
  std::string tree;
  std::string out = ".";
  std::string format = "text";
  std::string sets = "L,B,D";
  double alpha = 0.05;
  std::size_t k = 10;
  std::uint64_t seed = 548;
  int max_depth = 4;
  std::size_t min_leaf = 5;
  std::size_t min_split = 10;
  std::size_t min_posts = corpus::kDefaultMinPosts;
  std::string positive_label = "LH";
  std::size_t n_hh = 294;
  std::size_t n_lh = 254;
  std::size_t posts_per_user = corpus::kDefaultMinPosts;
  bool null_cohort = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path output_dir(const Config& cfg) {
  const fs::path dir(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw InputError("cannot create output directory " + cfg.out);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << content;
  if (!out.flush()) throw InputError("cannot write " + path.string());
}

// Prefixes errors from a named input with its path.
template <typename Fn>
auto with_path(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

tree::TreeParams tree_params(const Config& cfg) {
  if (cfg.positive_label != "LH" && cfg.positive_label != "HH") {
    throw InputError("--positive-label must be HH or LH");
  }
  tree::TreeParams p;
  p.max_depth = cfg.max_depth;
  p.min_leaf = cfg.min_leaf;
  p.min_split = std::max(cfg.min_split, cfg.min_leaf);
  p.positive_label = cfg.positive_label;
  p.negative_label = cfg.positive_label == "LH" ? "HH" : "LH";
  p.validate();
  return p;
}

lexicon::Lexicon load_lexicon(const Config& cfg) {
  return cfg.lexicon.empty() ? lexicon::demo_lexicon() : lexicon::load_lexicon(cfg.lexicon);
}

std::vector<FeatureSet> parse_sets(const std::string& text) {
  std::vector<FeatureSet> sets;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto s = item.size() == 1 ? parse_set_tag(item[0]) : std::nullopt;
    if (!s) throw InputError("--sets expects a comma-separated subset of L,B,D, got '" + text + "'");
    if (std::find(sets.begin(), sets.end(), *s) == sets.end()) sets.push_back(*s);
  }
  if (sets.empty()) throw InputError("--sets must name at least one feature set");
  return sets;
}

struct Ingested {
  std::vector<corpus::UserRecord> active;
  corpus::CohortSplit split;
};

Ingested ingest(const Config& cfg) {
  if (cfg.records.empty()) throw InputError("--records is required");
  const std::string text = read_file(cfg.records);
  auto records = with_path(cfg.records, [&] { return corpus::parse_records(text); });
  Ingested in;
  in.active = corpus::filter_active(records, cfg.min_posts);
  if (in.active.size() < 2) {
    throw InputError("only " + std::to_string(in.active.size()) + " of " +
                     std::to_string(records.size()) + " users have at least " +
                     std::to_string(cfg.min_posts) + " posts");
  }
  in.split = corpus::split_records(in.active);
  return in;
}

std::string cohort_csv(const Ingested& in) {
  std::string out = "user_id,score,group\n";
  for (const auto& r : in.active) {
    const char* group = in.split.hh_ids.contains(r.user_id)   ? "HH"
                        : in.split.lh_ids.contains(r.user_id) ? "LH"
                                                              : "excluded";
    out += r.user_id + "," + std::to_string(corpus::score_ohi(r.ohi_responses)) + "," + group + "\n";
  }
  return out;
}

std::string cohort_summary(const Ingested& in) {
  return "users " + std::to_string(in.active.size()) + ", mean " + format_fixed(in.split.mean, 3) +
         ", sd " + format_fixed(in.split.sd, 3) + ", HH > " +
         format_fixed(in.split.upper_threshold(), 3) + ": " + std::to_string(in.split.hh_ids.size()) +
         ", LH < " + format_fixed(in.split.lower_threshold(), 3) + ": " +
         std::to_string(in.split.lh_ids.size()) + ", excluded " +
         std::to_string(in.split.excluded_ids.size()) + "\n";
}

FeatureMatrix extract_matrix(const Ingested& in, const lexicon::Lexicon& lex) {
  std::vector<corpus::UserRecord> grouped;
  for (const auto& r : in.active) {
    if (in.split.hh_ids.contains(r.user_id) || in.split.lh_ids.contains(r.user_id)) grouped.push_back(r);
  }
  if (grouped.empty()) throw InputError("no users fall in the HH or LH group");
  FeatureMatrix m = behavior::assemble_matrix(grouped, lex);
  for (std::size_t i = 0; i < m.rows(); ++i) m.set_label(i, in.split.hh_ids.contains(m.user_id(i)) ? "HH" : "LH");
  return m;
}

FeatureMatrix load_matrix(const Config& cfg) {
  const std::string path = cfg.matrix.empty() ? (fs::path(cfg.out) / "features.csv").string() : cfg.matrix;
  std::istringstream in(read_file(path));
  FeatureMatrix m = with_path(path, [&] { return behavior::read_matrix_csv(in); });
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m.label(i).empty()) throw InputError(path + ": row " + std::to_string(i + 1) + " has no label");
  }
  return m;
}

void do_ingest(const Config& cfg, std::ostream& out) {
  const Ingested in = ingest(cfg);
  write_file(output_dir(cfg) / "cohort.csv", cohort_csv(in));
  out << cohort_summary(in);
}

FeatureMatrix do_extract(const Config& cfg, std::ostream& out) {
  const auto lex = with_path(cfg.lexicon, [&] { return load_lexicon(cfg); });
  const Ingested in = ingest(cfg);
  FeatureMatrix m = extract_matrix(in, lex);
  const fs::path dir = output_dir(cfg);
  std::ostringstream csv;
  behavior::write_matrix_csv(csv, m);
  write_file(dir / "features.csv", csv.str());
  write_file(dir / "codebook.json", behavior::codebook_json(m));
  write_file(dir / "cohort.csv", cohort_csv(in));
  out << cohort_summary(in);
  out << "matrix " << m.rows() << " rows x " << m.cols() << " columns\n";
  return m;
}

void do_analyze(const Config& cfg, const FeatureMatrix& m, std::ostream& out) {
  stats::SelectOptions opt;
  opt.alpha = cfg.alpha;
  const auto report = stats::select_features(m, m.labels(), opt);
  const fs::path dir = output_dir(cfg);
  std::ostringstream csv;
  stats::write_selection_csv(csv, report);
  write_file(dir / "selection.csv", csv.str());
  const std::string table = stats::selection_table(report);
  write_file(dir / "selection.txt", table);
  out << table;
}

void do_train(const Config& cfg, const FeatureMatrix& m, std::ostream& out) {
  const auto sets = parse_sets(cfg.sets);
  const auto cols = m.columns_in(sets);
  if (cols.empty()) throw InputError("matrix has no columns in the requested feature sets");
  const auto model = tree::train_tree(m.select_columns(cols), m.labels(), tree_params(cfg));
  const fs::path dir = output_dir(cfg);
  const std::string text = tree::export_tree(model, tree::ExportFormat::kText);
  write_file(dir / "tree.json", model.to_json());
  write_file(dir / "tree.txt", text);
  write_file(dir / "tree.dot", tree::export_tree(model, tree::ExportFormat::kDot));
  out << text;
}

void do_evaluate(const Config& cfg, const FeatureMatrix& m, std::ostream& out) {
  const auto report = eval::run_ablation(m, m.labels(), tree_params(cfg), cfg.k, cfg.seed);
  const fs::path dir = output_dir(cfg);
  std::ostringstream csv;
  eval::write_ablation_csv(csv, report);
  write_file(dir / "ablation.csv", csv.str());
  const std::string table = eval::ablation_table(report);
  write_file(dir / "ablation.txt", table);
  out << table;
}

void do_synth(const Config& cfg, std::ostream& out) {
  const auto lex = with_path(cfg.lexicon, [&] { return load_lexicon(cfg); });
  synth::CohortSpec spec;
  spec.n_hh = cfg.n_hh;
  spec.n_lh = cfg.n_lh;
  spec.posts_per_user = cfg.posts_per_user;
  spec.seed = cfg.seed;
  if (cfg.null_cohort) spec.planted_effects.clear();
  const auto cohort = synth::generate_cohort(spec, lex);
  const fs::path dir = output_dir(cfg);
  std::ostringstream jsonl;
  corpus::write_records(jsonl, cohort.records);
  write_file(dir / "cohort.jsonl", jsonl.str());
  write_file(dir / "manifest.json", synth::manifest_json(spec, cohort));
  out << "synthesized " << cohort.records.size() << " users (HH " << cohort.hh_ids.size() << ", LH "
      << cohort.lh_ids.size() << ", " << spec.planted_effects.size() << " planted effects)\n";
}

void do_export(const Config& cfg, std::ostream& out) {
  const std::string path = cfg.tree.empty() ? (fs::path(cfg.out) / "tree.json").string() : cfg.tree;
  const auto model = tree::DecisionTree::from_json(read_file(path));
  if (cfg.format != "text" && cfg.format != "dot") throw InputError("--format must be text or dot");
  out << tree::export_tree(model, cfg.format == "dot" ? tree::ExportFormat::kDot : tree::ExportFormat::kText);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Happiness classifier: questionnaire cohorts, lexicon and behavior features, "
               "group tests and decision trees"};
  app.name(args.empty() ? "happiness" : fs::path(args.front()).filename().string());
  app.require_subcommand(1);

  const auto out_opt = [&](CLI::App* c) { c->add_option("--out", cfg.out, "Output directory")->capture_default_str(); };
  const auto records_opt = [&](CLI::App* c) {
    c->add_option("--records", cfg.records, "Participant records (JSON Lines)")->required();
    c->add_option("--min-posts", cfg.min_posts, "Minimum posts for an active user")->capture_default_str();
  };
  const auto lexicon_opt = [&](CLI::App* c) {
    c->add_option("--lexicon", cfg.lexicon, "LIWC-style .dic file (default: bundled demo lexicon)");
  };
  const auto matrix_opt = [&](CLI::App* c) {
    c->add_option("--matrix", cfg.matrix, "Feature matrix CSV (default: <out>/features.csv)");
  };
  const auto alpha_opt = [&](CLI::App* c) {
    c->add_option("--alpha", cfg.alpha, "Significance level")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  };
  const auto tree_opt = [&](CLI::App* c) {
    c->add_option("--max-depth", cfg.max_depth, "Maximum tree depth")->capture_default_str();
    c->add_option("--min-leaf", cfg.min_leaf, "Minimum rows per leaf")->capture_default_str();
    c->add_option("--min-split", cfg.min_split, "Minimum rows to split a node")->capture_default_str();
    c->add_option("--positive-label", cfg.positive_label, "Positive class (HH or LH)")->capture_default_str();
  };
  const auto cv_opt = [&](CLI::App* c) {
    c->add_option("--k", cfg.k, "Cross-validation folds")->capture_default_str();
    c->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  };

  auto* ingest_cmd = app.add_subcommand("ingest", "Validate records and split the cohort");
  records_opt(ingest_cmd);
  out_opt(ingest_cmd);

  auto* extract_cmd = app.add_subcommand("extract", "Build the feature matrix");
  records_opt(extract_cmd);
  lexicon_opt(extract_cmd);
  out_opt(extract_cmd);

  auto* analyze_cmd = app.add_subcommand("analyze", "Test every feature between HH and LH");
  matrix_opt(analyze_cmd);
  alpha_opt(analyze_cmd);
  out_opt(analyze_cmd);

  auto* train_cmd = app.add_subcommand("train", "Train a decision tree on the whole matrix");
  matrix_opt(train_cmd);
  tree_opt(train_cmd);
  train_cmd->add_option("--sets", cfg.sets, "Feature sets to train on")->capture_default_str();
  out_opt(train_cmd);

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Cross-validate the L, B, L+B, L+B+D ablation");
  matrix_opt(evaluate_cmd);
  tree_opt(evaluate_cmd);
  cv_opt(evaluate_cmd);
  out_opt(evaluate_cmd);

  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic cohort with planted effects");
  lexicon_opt(synth_cmd);
  synth_cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  synth_cmd->add_option("--n-hh", cfg.n_hh, "High-happiness users")->capture_default_str();
  synth_cmd->add_option("--n-lh", cfg.n_lh, "Low-happiness users")->capture_default_str();
  synth_cmd->add_option("--posts-per-user", cfg.posts_per_user, "Posts per user")->capture_default_str();
  synth_cmd->add_flag("--null", cfg.null_cohort, "Plant no effects");
  out_opt(synth_cmd);

  auto* export_cmd = app.add_subcommand("export-tree", "Render a saved tree as text or DOT");
  export_cmd->add_option("--tree", cfg.tree, "Tree JSON (default: <out>/tree.json)");
  export_cmd->add_option("--format", cfg.format, "text or dot")->capture_default_str();
  out_opt(export_cmd);

  auto* pipeline_cmd = app.add_subcommand("pipeline", "ingest, extract, analyze, train and evaluate");
  records_opt(pipeline_cmd);
  lexicon_opt(pipeline_cmd);
  alpha_opt(pipeline_cmd);
  tree_opt(pipeline_cmd);
  cv_opt(pipeline_cmd);
  out_opt(pipeline_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*ingest_cmd) {
      do_ingest(cfg, out);
    } else if (*extract_cmd) {
      do_extract(cfg, out);
    } else if (*analyze_cmd) {
      do_analyze(cfg, load_matrix(cfg), out);
    } else if (*train_cmd) {
      do_train(cfg, load_matrix(cfg), out);
    } else if (*evaluate_cmd) {
      do_evaluate(cfg, load_matrix(cfg), out);
    } else if (*synth_cmd) {
      do_synth(cfg, out);
    } else if (*export_cmd) {
      do_export(cfg, out);
    } else if (*pipeline_cmd) {
      const FeatureMatrix m = do_extract(cfg, out);
      do_analyze(cfg, m, out);
      do_train(cfg, m, out);
      do_evaluate(cfg, m, out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace happiness::cli
