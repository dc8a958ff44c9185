#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "selpref/selpref.hpp"

namespace selpref::cli {

namespace {

struct RunConfig {
  std::string taxonomy_path;
  std::string senses_path;
  std::string triples_path;
  std::string dump_path;
  std::string model = "c2c";
  std::string rel = "both";
  std::uint64_t seed = 0;
  std::string out_path;
  std::string instances_path;
  std::string xval_path;
  std::string docs_path;
  std::size_t k = 10;
  bool skip_bad_lines = false;
  bool sampled_random = false;
  bool explain = false;
};

// Usage problems detected after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Re-throws loader errors with the file name in front.
template <class Fn>
auto with_file(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const CycleError& e) {
    throw ValidationError(path + ": " + e.what());
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

struct Inputs {
  std::string taxonomy_bytes;
  std::string senses_bytes;
  std::string triples_bytes;
  Taxonomy taxonomy;
  SenseInventory inventory;
  std::vector<Triple> triples;
  std::vector<std::string> warnings;
};

void load_base(const RunConfig& cfg, Inputs& in) {
  in.taxonomy_bytes = read_file(cfg.taxonomy_path);
  in.taxonomy = with_file(cfg.taxonomy_path, [&] {
    std::istringstream s(in.taxonomy_bytes);
    return Taxonomy::load(s);
  });
  in.senses_bytes = read_file(cfg.senses_path);
  in.inventory = with_file(cfg.senses_path, [&] {
    std::istringstream s(in.senses_bytes);
    return SenseInventory::load(s, in.taxonomy);
  });
}

void load_triples_into(const RunConfig& cfg, Inputs& in) {
  in.triples_bytes = read_file(cfg.triples_path);
  in.triples = with_file(cfg.triples_path, [&] {
    std::istringstream s(in.triples_bytes);
    return load_triples(s, in.taxonomy, in.inventory, {cfg.skip_bad_lines}, &in.warnings);
  });
}

RelationFilter relation_filter(const RunConfig& cfg) {
  auto f = parse_relation_filter(cfg.rel);
  if (!f) throw UsageError("--rel must be subj, obj or both");
  return *f;
}

ModelKind model_kind(const RunConfig& cfg) {
  auto k = parse_model_kind(cfg.model);
  if (!k) throw UsageError("--model must be w2w, w2c or c2c");
  return *k;
}

// Writes to --out when given, else to `out`.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw Error("cannot write '" + cfg.out_path + "'");
  f << text;
}

std::vector<std::string> read_list(const std::string& path) {
  std::vector<std::string> items;
  std::istringstream s(read_file(path));
  std::string line;
  while (std::getline(s, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    items.push_back(line.substr(b, e - b + 1));
  }
  return items;
}

// ---------------------------------------------------------------------------

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Inputs in;
  std::size_t errors = 0;
  try {
    load_base(cfg, in);
    in.triples_bytes = read_file(cfg.triples_path);
    std::istringstream s(in.triples_bytes);
    std::vector<std::string> problems;
    in.triples = load_triples(s, in.taxonomy, in.inventory, {true}, &problems);
    for (const auto& p : problems) {
      if (cfg.skip_bad_lines) {
        err << "warning: " << cfg.triples_path << ": " << p << '\n';
        in.warnings.push_back(p);
      } else {
        err << "error: " << cfg.triples_path << ": " << p << '\n';
        ++errors;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    out << "1 errors\n";
    return kExitValidation;
  }

  std::size_t nouns = 0;
  for (std::size_t c = 0; c < in.taxonomy.size(); ++c)
    if (in.taxonomy.pos(static_cast<ConceptIndex>(c)) == PartOfSpeech::noun) ++nouns;
  std::size_t subj = 0;
  for (const auto& t : in.triples)
    if (t.rel == Relation::subject) ++subj;

  std::string report;
  report += fmt::format("taxonomy\t{} concepts\t{} noun\t{} verb\t{} roots\n", in.taxonomy.size(),
                        nouns, in.taxonomy.size() - nouns, in.taxonomy.roots().size());
  report += fmt::format("senses\t{} noun lemmas\t{} verb lemmas\n",
                        in.inventory.lemma_count(PartOfSpeech::noun),
                        in.inventory.lemma_count(PartOfSpeech::verb));
  report += fmt::format("triples\t{}\tsubj {}\tobj {}\n", in.triples.size(), subj,
                        in.triples.size() - subj);
  report += fmt::format("{} warnings\n{} errors\n", in.warnings.size(), errors);
  emit(cfg, out, report);
  return errors == 0 ? kExitOk : kExitValidation;
}

DumpHeader header_for(const Inputs& in, const RunConfig& cfg) {
  return {content_digest(in.taxonomy_bytes), content_digest(in.senses_bytes),
          content_digest(in.triples_bytes), cfg.seed};
}

int cmd_train(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Inputs in;
  load_base(cfg, in);
  load_triples_into(cfg, in);
  for (const auto& w : in.warnings) err << "warning: " << cfg.triples_path << ": " << w << '\n';

  const auto estimates = build_estimates(count_frequencies(in.triples), in.taxonomy);
  std::ostringstream dump;
  write_dump(dump, header_for(in, cfg), estimates, in.taxonomy);
  if (cfg.out_path.empty()) {
    out << dump.str();
  } else {
    emit(cfg, out, dump.str());
    std::size_t rel_verb_cells = 0, rel_class_cells = 0;
    for (const auto& [k, row] : estimates.class_rel_verb) rel_verb_cells += row.size();
    for (const auto& [k, row] : estimates.class_rel_class) rel_class_cells += row.size();
    out << fmt::format("triples\t{}\nclass_rel_verb\t{}\nclass_rel_class\t{}\nrel_class\t{}\n",
                       in.triples.size(), rel_verb_cells, rel_class_cells,
                       estimates.rel_class.size());
  }
  return kExitOk;
}

std::string format_score(const PreferenceScore& s) {
  return s.value ? fmt::format("{:.6g}", *s.value) : std::string("-");
}

int cmd_disambiguate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto kind = model_kind(cfg);
  const auto filter = relation_filter(cfg);
  if (cfg.instances_path.empty()) throw UsageError("--instances is required");
  if (cfg.dump_path.empty() == cfg.triples_path.empty())
    throw UsageError("give exactly one of --triples or --dump");

  Inputs in;
  load_base(cfg, in);
  std::optional<PreferenceModel> model;
  if (!cfg.dump_path.empty()) {
    auto loaded = with_file(cfg.dump_path, [&] {
      std::ifstream f(cfg.dump_path, std::ios::binary);
      if (!f) throw Error("cannot open");
      return read_dump(f, in.taxonomy);
    });
    if (loaded.header.taxonomy_digest != content_digest(in.taxonomy_bytes) ||
        loaded.header.senses_digest != content_digest(in.senses_bytes))
      throw ValidationError(cfg.dump_path +
                            ": model was trained with a different taxonomy or sense inventory");
    model.emplace(in.taxonomy, std::move(loaded.estimates));
  } else {
    load_triples_into(cfg, in);
    for (const auto& w : in.warnings) err << "warning: " << cfg.triples_path << ": " << w << '\n';
    model.emplace(PreferenceModel::train(in.taxonomy, in.triples));
  }
  const Disambiguator wsd(in.inventory, *model);

  std::string text = fmt::format("# selpref disambiguate\tmodel={}\trel={}\tseed={}\n",
                                 to_string(kind), cfg.rel, cfg.seed);
  std::istringstream lines(read_file(cfg.instances_path));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos || line[b] == '#') continue;
    std::vector<std::string> f;
    std::istringstream fs(line);
    for (std::string field; std::getline(fs, field, '\t');) f.push_back(field);
    auto where = [&] { return cfg.instances_path + ": line " + std::to_string(lineno) + ": "; };
    if (f.size() != 3) throw Error(where() + "expected <noun_lemma>\\t<rel>\\t<verb_lemma>");
    auto rel = parse_relation(f[1]);
    if (!rel) throw Error(where() + "unknown relation '" + f[1] + "'");
    if (!accepts(filter, *rel)) continue;
    if (!in.inventory.contains(f[0], PartOfSpeech::noun))
      throw Error(where() + "unknown noun lemma '" + f[0] + "'");

    WsdInstance inst{f[0], *rel, f[2], std::nullopt, ""};
    const auto decision = wsd.disambiguate(inst, kind);
    std::string scores;
    for (std::size_t i = 0; i < decision.scores.size(); ++i) {
      if (i) scores += ',';
      scores += fmt::format("{}={}", i + 1, format_score(decision.scores[i]));
    }
    text += fmt::format("{}\t{}\t{}\t{}\t{}", inst.noun_lemma, to_string(inst.rel),
                        inst.verb_lemma,
                        decision.answer ? std::to_string(*decision.answer) : std::string("-"),
                        scores);
    if (cfg.explain) {
      const auto ex = wsd.explain(inst, kind);
      std::string tops;
      for (const auto& se : ex.senses) {
        if (!tops.empty()) tops += ',';
        tops += fmt::format("{}=", se.sense);
        if (se.terms.empty()) {
          tops += '-';
          continue;
        }
        const auto& top = se.terms.front();
        tops += in.taxonomy.id(top.noun_class);
        if (top.verb_class) tops += "@" + in.taxonomy.id(*top.verb_class);
        if (se.score.best_verb_sense)
          tops += fmt::format("[{}]", in.taxonomy.id(*se.score.best_verb_sense));
      }
      text += "\t" + tops;
    }
    text += '\n';
  }
  emit(cfg, out, text);
  return kExitOk;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.xval_path.empty() == cfg.docs_path.empty())
    throw UsageError("give exactly one of --xval or --docs");
  if (cfg.k < 2) throw UsageError("--k must be at least 2");
  EvalOptions options{cfg.k, cfg.seed, relation_filter(cfg), cfg.sampled_random};

  Inputs in;
  load_base(cfg, in);
  load_triples_into(cfg, in);
  for (const auto& w : in.warnings) err << "warning: " << cfg.triples_path << ": " << w << '\n';

  EvalReport report;
  if (!cfg.xval_path.empty()) {
    auto list = read_list(cfg.xval_path);
    std::set<std::string> targets(list.begin(), list.end());
    report = crossvalidate(in.taxonomy, in.inventory, in.triples, targets, options);
  } else {
    report = holdout_documents(in.taxonomy, in.inventory, in.triples, read_list(cfg.docs_path),
                               options);
  }
  emit(cfg, out, report.to_tsv());
  return kExitOk;
}

void add_inputs(CLI::App& sub, RunConfig& cfg, bool need_triples) {
  sub.add_option("--taxonomy", cfg.taxonomy_path, "Taxonomy file")->required();
  sub.add_option("--senses", cfg.senses_path, "Sense inventory file")->required();
  auto* t = sub.add_option("--triples", cfg.triples_path, "Training triples file");
  if (need_triples) t->required();
  sub.add_option("--model", cfg.model, "Preference model: w2w, w2c or c2c");
  sub.add_option("--rel", cfg.rel, "Relations to process: subj, obj or both");
  sub.add_option("--seed", cfg.seed, "Seed for every random choice");
  sub.add_option("--out", cfg.out_path, "Output file (default: stdout)");
  sub.add_flag("--skip-bad-lines", cfg.skip_bad_lines, "Downgrade bad triple lines to warnings");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Class-to-class selectional preferences and noun sense disambiguation",
               "selpref"};
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "Check input files and print counts");
  add_inputs(*validate, cfg, true);

  auto* train = app.add_subcommand("train", "Write the trained model dump");
  add_inputs(*train, cfg, true);

  auto* disamb = app.add_subcommand("disambiguate", "Choose noun senses for instances");
  add_inputs(*disamb, cfg, false);
  disamb->add_option("--dump", cfg.dump_path, "Trained model dump (instead of --triples)");
  disamb->add_option("--instances", cfg.instances_path,
                     "Instance file: <noun_lemma>\\t<rel>\\t<verb_lemma>");
  disamb->add_flag("--explain", cfg.explain, "Append the top contributing class per sense");

  auto* eval = app.add_subcommand("eval", "Cross-validation or document-holdout evaluation");
  add_inputs(*eval, cfg, true);
  eval->add_option("--xval", cfg.xval_path, "Target noun lemmas, one per line");
  eval->add_option("--docs", cfg.docs_path, "Document ids to hold out, one per line");
  eval->add_option("--k", cfg.k, "Number of folds");
  eval->add_flag("--sampled-random", cfg.sampled_random,
                 "Sample the random baseline instead of its expectation");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(cfg, out, err);
    if (train->parsed()) return cmd_train(cfg, out, err);
    if (disamb->parsed()) return cmd_disambiguate(cfg, out, err);
    if (eval->parsed()) return cmd_eval(cfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace selpref::cli
