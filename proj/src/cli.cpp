#include "ktb/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include "ktb/audit.hpp"
#include "ktb/depconv.hpp"
#include "ktb/transform.hpp"
#include "ktb/treeio.hpp"

namespace ktb::cli {

namespace {

constexpr std::size_t kBatchSize = 512;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Processed {
  std::string text;
  std::vector<Diagnostic> diagnostics;
};

// Applies `fn` to every item; with more than one worker the batch is split
// into contiguous slices. Output order matches input order.
template <typename In, typename Fn>
std::vector<Processed> process_batch(const std::vector<In>& items, std::size_t workers, Fn fn) {
  std::vector<Processed> out(items.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = fn(items[i]);
  };
  workers = std::min(workers, items.size());
  if (workers <= 1) {
    work(0, items.size());
    return out;
  }
  std::vector<std::thread> pool;
  const std::size_t slice = (items.size() + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const auto begin = w * slice;
    const auto end = std::min(items.size(), begin + slice);
    if (begin < end) pool.emplace_back(work, begin, end);
  }
  for (auto& t : pool) t.join();
  return out;
}

class Session {
 public:
  Session(const RunConfig& config, std::ostream& out, std::ostream& err)
      : config_(config), err_(err) {
    if (config.config_path) registry_ = TagsetRegistry::from_config_file(*config.config_path);
    if (config.mode) registry_.set_mode(*config.mode);
    for (const auto& path : config.inputs) require_readable(path);
    for (const auto* path : {&config.manifest_path, &config.morph_path, &config.gold_path, &config.auto_path})
      if (*path) require_readable(**path);
    if (config.output && config.subcommand != "split") {
      file_ = std::make_unique<std::ofstream>(*config.output, std::ios::binary);
      if (!*file_) throw IoError("cannot write " + *config.output);
      out_ = file_.get();
    } else {
      out_ = &out;
    }
  }

  int run() {
    const auto& cmd = config_.subcommand;
    if (cmd == "transform") transform();
    else if (cmd == "convert") convert();
    else if (cmd == "validate") validate();
    else if (cmd == "stats") stats();
    else if (cmd == "split") split();
    else if (cmd == "subst") subst();
    else if (cmd == "agree") agree();
    out_->flush();
    if (!*out_) throw IoError("write failure");
    return errors_ ? kDiagnostics : kOk;
  }

 private:
  static void require_readable(const std::string& path) {
    std::ifstream probe(path);
    if (!probe) throw IoError("cannot read " + path);
  }

  std::ifstream open(const std::string& path) const {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    return in;
  }

  const std::string& single_input() const {
    if (config_.inputs.size() != 1) throw UsageError(config_.subcommand + " takes exactly one --in");
    return config_.inputs.front();
  }

  void emit(const Diagnostic& d) {
    if (d.severity == Severity::error) ++errors_;
    else ++warnings_;
    err_ << format_diagnostic(d) << '\n';
  }
  void emit(std::span<const Diagnostic> ds) {
    for (const auto& d : ds) emit(d);
  }

  // Streams trees through `fn` in batches, writing results in input order.
  template <typename Fn>
  std::size_t for_each_tree(const std::string& path, Fn fn) {
    auto in = open(path);
    TreebankReader reader(in, registry_, config_.tagset);
    std::vector<TreeRecord> batch;
    auto flush = [&] {
      auto results = process_batch(batch, config_.workers, [&](const TreeRecord& rec) {
        Processed p;
        p.diagnostics = rec.diagnostics;
        if (!rec.tree) return p;
        try {
          fn(rec, p);
        } catch (const std::exception& e) {
          p.text.clear();
          p.diagnostics.push_back(make_error("conversion-failed", e.what(), {rec.ordinal, 0, 0}));
        }
        return p;
      });
      for (auto& r : results) {
        emit(r.diagnostics);
        *out_ << r.text;
      }
      batch.clear();
    };
    while (auto rec = reader.next()) {
      batch.push_back(std::move(*rec));
      if (batch.size() == kBatchSize) flush();
    }
    flush();
    err_ << "info\t0:0:0\tsummary\t" << path << ": kept " << reader.kept() << ", dropped "
         << reader.dropped() << '\n';
    return reader.kept() + reader.dropped();
  }

  void tag_diagnostics(std::vector<Diagnostic>& ds, std::size_t ordinal) {
    for (auto& d : ds)
      if (d.where.tree == 0) d.where.tree = ordinal;
  }

  void transform() {
    for_each_tree(single_input(), [&](const TreeRecord& rec, Processed& p) {
      std::vector<Diagnostic> ds;
      auto penn = to_penn(*rec.tree, registry_, &ds);
      tag_diagnostics(ds, rec.ordinal);
      p.diagnostics.insert(p.diagnostics.end(), ds.begin(), ds.end());
      p.text = serialize_tree(penn) + "\n\n";
    });
  }

  void convert() {
    for_each_tree(single_input(), [&](const TreeRecord& rec, Processed& p) {
      std::vector<Diagnostic> ds;
      auto penn = to_penn(*rec.tree, registry_, &ds);
      tag_diagnostics(ds, rec.ordinal);
      p.diagnostics.insert(p.diagnostics.end(), ds.begin(), ds.end());
      p.text = write_conll(to_dependency(penn, registry_), registry_);
    });
  }

  void validate() {
    const auto& path = single_input();
    const auto errors_before = errors_, warnings_before = warnings_;
    std::size_t records = 0;
    if (sniff_format(path) == FileFormat::brackets) {
      records = for_each_tree(path, [&](const TreeRecord& rec, Processed& p) {
        std::vector<Diagnostic> ds;
        auto dep = to_dependency(to_penn(*rec.tree, registry_, &ds), registry_);
        auto vs = validate_dependency(dep, {rec.ordinal, 0, 0});
        ds.insert(ds.end(), vs.begin(), vs.end());
        tag_diagnostics(ds, rec.ordinal);
        p.diagnostics.insert(p.diagnostics.end(), ds.begin(), ds.end());
      });
    } else {
      auto in = open(path);
      ConllReader reader(in, registry_, config_.tagset);
      while (auto rec = reader.next()) {
        ++records;
        emit(rec->diagnostics);
        if (rec->tree) emit(validate_dependency(*rec->tree, {rec->ordinal, 0, 0}));
      }
    }
    *out_ << "sentences\t" << records << '\n'
          << "errors\t" << errors_ - errors_before << '\n'
          << "warnings\t" << warnings_ - warnings_before << '\n';
  }

  void stats() {
    if (config_.inputs.empty()) throw UsageError("stats needs at least one --in");
    std::vector<std::ifstream> streams;
    std::vector<CorpusInput> inputs;
    streams.reserve(config_.inputs.size());
    for (const auto& path : config_.inputs) {
      const auto format = sniff_format(path);
      streams.push_back(open(path));
      inputs.push_back({path, &streams.back(), format});
    }
    std::optional<SplitPlan> plan;
    if (config_.manifest_path) {
      if (inputs.size() != 1) throw UsageError("--manifest works with a single --in");
      auto counting = open(inputs[0].name);
      const auto n = count_records(counting, inputs[0].format, registry_, config_.tagset);
      plan = load_plan(n);
    }
    std::vector<Diagnostic> ds;
    auto report = corpus_stats(inputs, registry_, config_.tagset, plan ? &*plan : nullptr, &ds);
    emit(ds);
    *out_ << (config_.report_format == "tsv" ? format_stats_tsv(report) : format_stats_text(report));
  }

  SplitPlan load_plan(std::size_t n) {
    if (config_.manifest_path) {
      auto in = open(*config_.manifest_path);
      const auto entries = parse_manifest(in);
      return split_by_manifest(n, entries);
    }
    std::array<double, 3> ratios{};
    std::istringstream is(*config_.ratios);
    std::string part;
    std::size_t k = 0;
    while (std::getline(is, part, ',')) {
      if (k == 3) throw UsageError("--ratios takes three numbers");
      try {
        std::size_t used = 0;
        ratios[k] = std::stod(part, &used);
        if (used != part.size()) throw std::invalid_argument(part);
      } catch (const std::logic_error&) {
        throw UsageError("bad ratio '" + part + "'");
      }
      ++k;
    }
    if (k != 3) throw UsageError("--ratios takes three numbers");
    try {
      return split_by_ratios(n, ratios);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  void split() {
    const auto& path = single_input();
    if (config_.ratios.has_value() == config_.manifest_path.has_value())
      throw UsageError("split needs exactly one of --ratios and --manifest");
    if (!config_.output) throw UsageError("split needs --out PREFIX");
    const auto format = sniff_format(path);
    std::size_t n;
    {
      auto in = open(path);
      n = count_records(in, format, registry_, config_.tagset);
    }
    const auto plan = load_plan(n);
    std::array<std::ofstream, 3> files;
    std::array<std::ostream*, 3> outs{};
    for (auto s : {Split::train, Split::dev, Split::test}) {
      const auto i = static_cast<std::size_t>(s);
      const auto name = *config_.output + "." + std::string(to_string(s));
      files[i].open(name, std::ios::binary);
      if (!files[i]) throw IoError("cannot write " + name);
      outs[i] = &files[i];
    }
    auto in = open(path);
    std::vector<Diagnostic> ds;
    const auto written = split_corpus(in, format, registry_, config_.tagset, plan, outs, ds);
    emit(ds);
    for (auto& f : files) {
      f.flush();
      if (!f) throw IoError("write failure");
    }
    *out_ << "train\t" << written[0] << "\ndev\t" << written[1] << "\ntest\t" << written[2] << '\n';
  }

  void subst() {
    const auto& path = single_input();
    if (!config_.morph_path) throw UsageError("subst needs --morph");
    auto morph_in = open(*config_.morph_path);
    MorphReader morphs(morph_in, registry_, config_.tagset);
    auto in = open(path);
    const auto format = sniff_format(path);

    auto next_analyses = [&](std::size_t ordinal) -> std::optional<std::vector<Eojeol>> {
      auto s = morphs.next();
      if (!s) {
        emit(make_error("sentence-count-mismatch", "no analyses left for this sentence", {ordinal, 0, 0}));
        return std::nullopt;
      }
      emit(s->diagnostics);
      if (has_errors(s->diagnostics)) return std::nullopt;
      return std::move(s->eojeols);
    };

    if (format == FileFormat::conll) {
      ConllReader reader(in, registry_, config_.gold_tagset);
      while (auto rec = reader.next()) {
        emit(rec->diagnostics);
        auto analyses = next_analyses(rec->ordinal);
        if (!rec->tree) continue;
        if (!analyses) {
          *out_ << write_conll(*rec->tree, registry_);
          continue;
        }
        auto r = substitute_morphology(*rec->tree, *analyses, registry_, {rec->ordinal, 0, 0});
        emit(r.diagnostics);
        *out_ << write_conll(r.value, registry_);
      }
    } else {
      TreebankReader reader(in, registry_, config_.gold_tagset);
      while (auto rec = reader.next()) {
        emit(rec->diagnostics);
        auto analyses = next_analyses(rec->ordinal);
        if (!rec->tree) continue;
        auto penn = to_penn(*rec->tree, registry_);
        if (!analyses) {
          *out_ << serialize_tree(penn) << "\n\n";
          continue;
        }
        auto r = substitute_morphology(penn, *analyses, registry_, {rec->ordinal, 0, 0});
        emit(r.diagnostics);
        *out_ << serialize_tree(r.value) << "\n\n";
      }
    }
    if (morphs.next())
      emit(make_error("sentence-count-mismatch", "analysis file has more sentences than the input"));
  }

  void agree() {
    if (!config_.gold_path || !config_.auto_path) throw UsageError("agree needs --gold and --auto");
    auto gold_in = open(*config_.gold_path);
    auto auto_in = open(*config_.auto_path);
    MorphReader gold(gold_in, registry_, config_.gold_tagset);
    MorphReader automatic(auto_in, registry_, config_.tagset);
    AgreementReport total;
    for (;;) {
      auto g = gold.next();
      auto a = automatic.next();
      if (!g && !a) break;
      if (!g || !a) {
        emit(make_error("sentence-count-mismatch", "gold and automatic files differ in sentence count"));
        break;
      }
      emit(g->diagnostics);
      emit(a->diagnostics);
      const auto r = sentence_agreement(g->eojeols, a->eojeols);
      if (r.alignment_failures)
        emit(make_warning("eojeol-count-mismatch", "sentence skipped: eojeol counts differ", {g->ordinal, 0, 0}));
      total += r;
    }
    *out_ << (config_.report_format == "tsv" ? format_agreement_tsv(total) : format_agreement_text(total));
  }

  const RunConfig& config_;
  std::ostream& err_;
  std::ostream* out_ = nullptr;
  std::unique_ptr<std::ofstream> file_;
  TagsetRegistry registry_;
  std::size_t errors_ = 0;
  std::size_t warnings_ = 0;
};

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Korean treebank conversion toolkit", "ktb"};
  app.require_subcommand(1);
  RunConfig config;
  std::string tagset = "kaist", gold_tagset = "kaist";
  bool strict = false, lenient = false;

  auto common = [&](CLI::App* sub, bool multi_input = false) {
    if (multi_input) sub->add_option("--in", config.inputs, "Input files")->required();
    else sub->add_option("--in", config.inputs, "Input file")->required()->expected(1);
    sub->add_option("--out", config.output, "Output file (stdout if omitted)");
    sub->add_option("--tagset", tagset, "Tagset of the input morphology")
        ->check(CLI::IsMember({"kaist", "sejong"}));
    auto* s = sub->add_flag("--strict", strict, "Reject unknown tags");
    auto* l = sub->add_flag("--lenient", lenient, "Pass unknown tags through with a warning");
    s->excludes(l);
    sub->add_option("--config", config.config_path, "Registry override file");
    sub->add_option("--workers", config.workers, "Worker threads")->check(CLI::PositiveNumber);
  };

  common(app.add_subcommand("transform", "KAIST-style trees to Penn-style trees"));
  common(app.add_subcommand("convert", "Constituent trees to CoNLL-X dependencies"));
  common(app.add_subcommand("validate", "Check trees or CoNLL-X files"));

  auto* stats = app.add_subcommand("stats", "Tree and token counts");
  common(stats, true);
  stats->add_option("--manifest", config.manifest_path, "Split manifest for a per-split breakdown");
  stats->add_option("--report-format", config.report_format)->check(CLI::IsMember({"text", "tsv"}));

  auto* split = app.add_subcommand("split", "Deterministic train/dev/test split");
  common(split);
  auto* manifest = split->add_option("--manifest", config.manifest_path, "Explicit split manifest");
  auto* ratios = split->add_option("--ratios", config.ratios, "Contiguous split ratios a,b,c");
  manifest->excludes(ratios);

  auto* subst = app.add_subcommand("subst", "Replace gold morphology with automatic analyses");
  common(subst);
  subst->add_option("--morph", config.morph_path, "Automatic analyses (morph file)")->required();
  subst->add_option("--gold-tagset", gold_tagset, "Tagset of the input file")
      ->check(CLI::IsMember({"kaist", "sejong"}));

  auto* agree = app.add_subcommand("agree", "Agreement of automatic with gold morphology");
  agree->add_option("--gold", config.gold_path, "Gold morph file")->required();
  agree->add_option("--auto", config.auto_path, "Automatic morph file")->required();
  agree->add_option("--out", config.output, "Output file (stdout if omitted)");
  agree->add_option("--tagset", tagset, "Tagset of the automatic file")
      ->check(CLI::IsMember({"kaist", "sejong"}));
  agree->add_option("--gold-tagset", gold_tagset, "Tagset of the gold file")
      ->check(CLI::IsMember({"kaist", "sejong"}));
  agree->add_option("--config", config.config_path, "Registry override file");
  agree->add_option("--report-format", config.report_format)->check(CLI::IsMember({"text", "tsv"}));
  {
    auto* s = agree->add_flag("--strict", strict, "Reject unknown tags");
    auto* l = agree->add_flag("--lenient", lenient, "Pass unknown tags through with a warning");
    s->excludes(l);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "ktb: " << e.what() << '\n';
    return kFailure;
  }

  config.subcommand = app.get_subcommands().front()->get_name();
  config.tagset = *parse_tagset(tagset);
  config.gold_tagset = *parse_tagset(gold_tagset);
  if (strict) config.mode = Mode::strict;
  if (lenient) config.mode = Mode::lenient;

  try {
    Session session(config, out, err);
    return session.run();
  } catch (const UsageError& e) {
    err << "ktb: " << e.what() << '\n';
  } catch (const IoError& e) {
    err << "ktb: " << e.what() << '\n';
  } catch (const ConfigError& e) {
    err << "ktb: " << e.what() << '\n';
  } catch (const ManifestError& e) {
    err << "ktb: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "ktb: " << e.what() << '\n';
  }
  return kFailure;
}

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace ktb::cli
