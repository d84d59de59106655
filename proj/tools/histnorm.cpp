#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "histnorm/histnorm.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw histnorm::DataError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw histnorm::DataError("cannot write " + path.string());
  out << content;
  if (!out) throw histnorm::DataError("write failed for " + path.string());
}

std::string checksum_hex(const fs::path& path) {
  std::ostringstream os;
  os << std::hex << std::setfill('0') << std::setw(16) << fnv1a64(read_file(path));
  return os.str();
}

std::vector<std::string> load_hyp_lines(const fs::path& path) {
  return histnorm::read_lines(path);
}

histnorm::Metric parse_metric(const std::string& name) {
  if (name == "cer") return histnorm::Metric::cer;
  if (name == "ter") return histnorm::Metric::ter;
  if (name == "bleu") return histnorm::Metric::bleu;
  throw histnorm::ParamError("unknown metric: " + name);
}

histnorm::PhraseTable load_table(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw histnorm::DataError("cannot open phrase table " + path.string());
  return histnorm::read_phrase_table(in);
}

histnorm::NGramLM load_lm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw histnorm::DataError("cannot open language model " + path.string());
  return histnorm::read_arpa(in);
}

histnorm::FeatureWeights load_weights(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw histnorm::DataError("cannot open weights " + path.string());
  return histnorm::read_weights(in);
}

json report_json(const histnorm::EvalReport& rep) {
  return json{{"cer", rep.cer},
              {"ter", rep.ter},
              {"bleu", rep.bleu},
              {"sentence_count", rep.sentence_count},
              {"cer_edits",
               {{"insertions", rep.cer_edits.insertions},
                {"deletions", rep.cer_edits.deletions},
                {"substitutions", rep.cer_edits.substitutions}}},
              {"ter_edits",
               {{"insertions", rep.ter_edits.insertions},
                {"deletions", rep.ter_edits.deletions},
                {"substitutions", rep.ter_edits.substitutions},
                {"shifts", rep.ter_shifts}}}};
}

void print_report_tsv(std::ostream& out, const std::string& label,
                      const histnorm::EvalReport& rep) {
  out << label << "\tcer\t" << rep.cer << "\n";
  out << label << "\tter\t" << rep.ter << "\n";
  out << label << "\tbleu\t" << rep.bleu << "\n";
  out << label << "\tsentences\t" << rep.sentence_count << "\n";
}

// ---------------------------------------------------------------------------

struct StatsArgs {
  std::string src, tgt, name = "corpus", split = "train";
  bool as_json = false;
};

int run_stats(const StatsArgs& a) {
  histnorm::Split split = a.split == "dev"    ? histnorm::Split::dev
                          : a.split == "test" ? histnorm::Split::test
                                              : histnorm::Split::train;
  const histnorm::ParallelCorpus corpus = histnorm::load_parallel(a.src, a.tgt, a.name, split);
  const histnorm::CorpusStats st = histnorm::corpus_stats(corpus);
  if (a.as_json) {
    json j{{"sentences", st.sentences},     {"tokens_src", st.tokens_src},
           {"tokens_tgt", st.tokens_tgt},   {"vocab_src", st.vocab_src},
           {"vocab_tgt", st.vocab_tgt},     {"nonmodern_words", st.nonmodern_words}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "sentences\t" << st.sentences << "\n"
              << "tokens_src\t" << st.tokens_src << "\n"
              << "tokens_tgt\t" << st.tokens_tgt << "\n"
              << "vocab_src\t" << st.vocab_src << "\n"
              << "vocab_tgt\t" << st.vocab_tgt << "\n"
              << "nonmodern_words\t" << st.nonmodern_words << "\n";
  }
  return kExitOk;
}

struct TrainArgs {
  std::string src, tgt, out_dir;
  int order = 5;
  int max_len = 6;
  std::uint64_t min_count = 1;
};

int run_train(const TrainArgs& a) {
  const histnorm::ParallelCorpus corpus =
      histnorm::load_parallel(a.src, a.tgt, "train", histnorm::Split::train);
  if (corpus.pairs.empty()) throw histnorm::DataError("training corpus is empty");

  const histnorm::PhraseTable table = histnorm::build_phrase_table(corpus, a.max_len, a.min_count);
  std::vector<std::u32string> target_seqs;
  target_seqs.reserve(corpus.pairs.size());
  for (const auto& [src, tgt] : corpus.pairs) target_seqs.push_back(histnorm::char_tokenize(tgt));
  const histnorm::NGramLM lm = histnorm::train_lm(target_seqs, a.order);

  fs::create_directories(a.out_dir);
  const fs::path dir(a.out_dir);
  {
    std::ostringstream os;
    histnorm::write_phrase_table(table, os);
    write_file(dir / "phrase-table.txt", os.str());
  }
  {
    std::ostringstream os;
    histnorm::write_arpa(lm, os);
    write_file(dir / "lm.arpa", os.str());
  }
  json manifest{
      {"tool", "histnorm"},
      {"version", histnorm::kVersion},
      {"command", "train"},
      {"parameters", {{"order", a.order}, {"max_len", a.max_len}, {"min_count", a.min_count}}},
      {"inputs",
       {{"src", {{"path", a.src}, {"fnv1a64", checksum_hex(a.src)}}},
        {"tgt", {{"path", a.tgt}, {"fnv1a64", checksum_hex(a.tgt)}}}}},
      {"outputs",
       {{"phrase-table.txt", checksum_hex(dir / "phrase-table.txt")},
        {"lm.arpa", checksum_hex(dir / "lm.arpa")}}}};
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  std::cerr << "wrote " << (dir / "phrase-table.txt").string() << ", "
            << (dir / "lm.arpa").string() << ", " << (dir / "manifest.json").string() << "\n";
  return kExitOk;
}

struct TuneArgs {
  std::string dev_src, dev_tgt, table, lm, out;
  std::string objective = "bleu";
  int restarts = 8;
  int iterations = 20;
  std::uint64_t seed = 1;
  int beam = 12;
  int threads = 1;
};

int run_tune(const TuneArgs& a) {
  const histnorm::ParallelCorpus dev =
      histnorm::load_parallel(a.dev_src, a.dev_tgt, "dev", histnorm::Split::dev);
  const histnorm::PhraseTable table = load_table(a.table);
  const histnorm::NGramLM lm = load_lm(a.lm);

  histnorm::TuneConfig cfg;
  cfg.objective = parse_metric(a.objective);
  cfg.restarts = a.restarts;
  cfg.iterations = a.iterations;
  cfg.seed = a.seed;
  cfg.threads = a.threads;
  histnorm::DecoderConfig dcfg;
  dcfg.beam_size = a.beam;
  dcfg.max_phrase_len = table.max_len;

  const histnorm::TuneResult result = histnorm::tune_weights(dev, table, lm, cfg, dcfg);
  std::ostringstream os;
  histnorm::write_weights(result.weights, os);
  write_file(a.out, os.str());
  std::cerr << "dev objective (" << a.objective << ", signed) = " << result.objective
            << " from restart " << result.restart << "\n";
  return kExitOk;
}

struct NormalizeArgs {
  std::string table, lm, weights, in, out;
  int beam = 12;
};

int run_normalize(const NormalizeArgs& a) {
  const histnorm::PhraseTable table = load_table(a.table);
  const histnorm::NGramLM lm = load_lm(a.lm);
  histnorm::FeatureWeights w;
  if (!a.weights.empty()) w = load_weights(a.weights);

  histnorm::DecoderConfig cfg;
  cfg.beam_size = a.beam;
  cfg.max_phrase_len = table.max_len;

  const std::vector<std::string> lines = histnorm::read_lines(a.in);
  std::vector<std::string> out_lines;
  const histnorm::NormalizeStats stats =
      histnorm::normalize_lines(lines, table, lm, w, cfg, out_lines);

  std::string content;
  for (const std::string& line : out_lines) {
    content += line;
    content += '\n';
  }
  write_file(a.out, content);
  std::cerr << "normalized " << stats.sentences << " sentences";
  if (stats.boundary_repairs > 0)
    std::cerr << " (" << stats.boundary_repairs << " boundary repairs)";
  std::cerr << "\n";
  return kExitOk;
}

struct EvaluateArgs {
  std::string hyp, ref, src;
  bool as_json = false;
  std::string cer_denominator = "ref";
};

int run_evaluate(const EvaluateArgs& a) {
  const auto denom = a.cer_denominator == "hyp" ? histnorm::CerDenominator::hypothesis
                                                : histnorm::CerDenominator::reference;
  const std::vector<std::string> hyps = load_hyp_lines(a.hyp);
  const std::vector<std::string> refs = load_hyp_lines(a.ref);
  if (hyps.size() != refs.size())
    throw histnorm::DataError("hypothesis file has " + std::to_string(hyps.size()) +
                              " lines, reference has " + std::to_string(refs.size()));
  const histnorm::EvalReport rep = histnorm::evaluate(hyps, refs, denom);

  if (!a.src.empty()) {
    const std::vector<std::string> srcs = load_hyp_lines(a.src);
    if (srcs.size() != refs.size())
      throw histnorm::DataError("source file has " + std::to_string(srcs.size()) +
                                " lines, reference has " + std::to_string(refs.size()));
    const histnorm::EvalReport base = histnorm::evaluate(srcs, refs, denom);
    if (a.as_json) {
      json j{{"system", report_json(rep)}, {"baseline", report_json(base)}};
      std::cout << j.dump(2) << "\n";
    } else {
      print_report_tsv(std::cout, "system", rep);
      print_report_tsv(std::cout, "baseline", base);
    }
  } else {
    if (a.as_json)
      std::cout << report_json(rep).dump(2) << "\n";
    else
      print_report_tsv(std::cout, "system", rep);
  }
  return kExitOk;
}

struct CompareArgs {
  std::string hyp_a, hyp_b, ref;
  std::string metric = "bleu";
  int reps = 10000;
  double alpha = 0.05;
  std::uint64_t seed = 1;
};

int run_compare(const CompareArgs& a) {
  histnorm::ARConfig cfg;
  cfg.metric = parse_metric(a.metric);
  cfg.repetitions = a.reps;
  cfg.alpha = a.alpha;
  cfg.seed = a.seed;
  const histnorm::ARResult res = histnorm::ar_test(load_hyp_lines(a.hyp_a),
                                                   load_hyp_lines(a.hyp_b),
                                                   load_hyp_lines(a.ref), cfg);
  std::cout << "metric\t" << a.metric << "\n"
            << "system_a\t" << res.metric_a << "\n"
            << "system_b\t" << res.metric_b << "\n"
            << "delta\t" << res.observed_delta << "\n"
            << "p_value\t" << res.p_value << "\n"
            << "significant\t" << (res.significant ? "yes" : "no") << "\n";
  return kExitOk;
}

struct SynthArgs {
  std::string rules, in, out_src, out_tgt;
  std::uint64_t seed = 1;
};

int run_synth(const SynthArgs& a) {
  histnorm::RuleSet rules;
  if (a.rules.empty()) {
    rules = histnorm::default_rule_set();
  } else {
    std::ifstream in(a.rules, std::ios::binary);
    if (!in) throw histnorm::DataError("cannot open rules " + a.rules);
    rules = histnorm::read_rules(in);
  }
  const std::vector<std::string> modern = histnorm::read_lines(a.in);
  const histnorm::DegradeResult res = histnorm::degrade(modern, rules, a.seed);

  std::string src_content, tgt_content;
  for (const auto& [src, tgt] : res.corpus.pairs) {
    src_content += src;
    src_content += '\n';
    tgt_content += tgt;
    tgt_content += '\n';
  }
  write_file(a.out_src, src_content);
  write_file(a.out_tgt, tgt_content);
  std::cerr << "degraded " << res.corpus.pairs.size() << " sentences, " << res.applications
            << " rule applications\n";
  return kExitOk;
}

struct ReproduceArgs {
  std::string corpus_dir, out_dir;
  std::uint64_t seed = 42;
  int order = 5;
  int max_len = 6;
  int beam = 12;
  int restarts = 8;
  int iterations = 20;
  int reps = 10000;
  int threads = 1;
};

int run_reproduce(const ReproduceArgs& a) {
  const fs::path dir(a.corpus_dir);
  for (const char* name :
       {"train.src", "train.tgt", "dev.src", "dev.tgt", "test.src", "test.tgt"}) {
    if (!fs::exists(dir / name))
      throw histnorm::DataError("missing corpus file: " + (dir / name).string());
  }
  const fs::path out_dir = a.out_dir.empty() ? dir / "run" : fs::path(a.out_dir);
  fs::create_directories(out_dir);

  const auto train = histnorm::load_parallel(dir / "train.src", dir / "train.tgt", "train",
                                             histnorm::Split::train);
  const auto dev =
      histnorm::load_parallel(dir / "dev.src", dir / "dev.tgt", "dev", histnorm::Split::dev);
  const auto test =
      histnorm::load_parallel(dir / "test.src", dir / "test.tgt", "test", histnorm::Split::test);

  std::cerr << "[1/6] baseline evaluation\n";
  const histnorm::EvalReport baseline = histnorm::identity_baseline(test);

  std::cerr << "[2/6] training phrase table and language model\n";
  const histnorm::PhraseTable table = histnorm::build_phrase_table(train, a.max_len);
  std::vector<std::u32string> target_seqs;
  for (const auto& [src, tgt] : train.pairs) target_seqs.push_back(histnorm::char_tokenize(tgt));
  const histnorm::NGramLM lm = histnorm::train_lm(target_seqs, a.order);
  {
    std::ostringstream os;
    histnorm::write_phrase_table(table, os);
    write_file(out_dir / "phrase-table.txt", os.str());
  }
  {
    std::ostringstream os;
    histnorm::write_arpa(lm, os);
    write_file(out_dir / "lm.arpa", os.str());
  }

  std::cerr << "[3/6] tuning weights on dev\n";
  histnorm::TuneConfig tcfg;
  tcfg.seed = a.seed;
  tcfg.restarts = a.restarts;
  tcfg.iterations = a.iterations;
  tcfg.threads = a.threads;
  histnorm::DecoderConfig dcfg;
  dcfg.beam_size = a.beam;
  dcfg.max_phrase_len = table.max_len;
  const histnorm::TuneResult tuned = histnorm::tune_weights(dev, table, lm, tcfg, dcfg);
  {
    std::ostringstream os;
    histnorm::write_weights(tuned.weights, os);
    write_file(out_dir / "weights.txt", os.str());
  }

  std::cerr << "[4/6] normalizing test\n";
  std::vector<std::string> test_src, test_ref;
  for (const auto& [src, tgt] : test.pairs) {
    test_src.push_back(src);
    test_ref.push_back(tgt);
  }
  std::vector<std::string> hyps;
  histnorm::normalize_lines(test_src, table, lm, tuned.weights, dcfg, hyps);
  {
    std::string content;
    for (const std::string& h : hyps) {
      content += h;
      content += '\n';
    }
    write_file(out_dir / "test.hyp", content);
  }

  std::cerr << "[5/6] evaluating\n";
  const histnorm::EvalReport system = histnorm::evaluate(hyps, test_ref);

  std::cerr << "[6/6] significance tests\n";
  json sig;
  for (histnorm::Metric m : {histnorm::Metric::cer, histnorm::Metric::ter, histnorm::Metric::bleu}) {
    histnorm::ARConfig acfg;
    acfg.metric = m;
    acfg.repetitions = a.reps;
    acfg.seed = a.seed;
    const histnorm::ARResult r = histnorm::ar_test(test_src, hyps, test_ref, acfg);
    sig[histnorm::metric_name(m)] = {{"p_value", r.p_value},
                                     {"significant", r.significant},
                                     {"delta", r.observed_delta}};
  }

  json report{{"corpus", dir.filename().string()},
              {"seed", a.seed},
              {"parameters",
               {{"order", a.order},
                {"max_len", a.max_len},
                {"beam", a.beam},
                {"restarts", a.restarts},
                {"iterations", a.iterations},
                {"ar_repetitions", a.reps}}},
              {"systems", {{"baseline", report_json(baseline)}, {"cbsmt", report_json(system)}}},
              {"significance", sig},
              {"weights",
               {{"tm_fwd", tuned.weights.tm_fwd},
                {"tm_rev", tuned.weights.tm_rev},
                {"lm", tuned.weights.lm},
                {"penalty", tuned.weights.penalty}}}};
  write_file(out_dir / "report.json", report.dump(2) + "\n");

  std::ostringstream tab;
  tab << std::fixed << std::setprecision(1);
  tab << "System     CER     TER     BLEU\n";
  tab << "Baseline   " << std::setw(5) << baseline.cer << "   " << std::setw(5) << baseline.ter
      << "   " << std::setw(5) << baseline.bleu << "\n";
  tab << "CBSMT      " << std::setw(5) << system.cer << "   " << std::setw(5) << system.ter
      << "   " << std::setw(5) << system.bleu << "\n";
  tab << "\nCBSMT vs. Baseline (approximate randomization, " << a.reps << " repetitions):\n";
  for (const auto& m : {"cer", "ter", "bleu"}) {
    tab << "  " << m << ": p = " << sig[m]["p_value"].get<double>()
        << (sig[m]["significant"].get<bool>() ? "  (significant)" : "  (not significant)") << "\n";
  }
  std::cout << tab.str();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"histnorm: historical spelling normalization via character-level SMT"};
  std::ostringstream version;
  version << "histnorm " << histnorm::kVersion << " (c++" << (__cplusplus / 100 % 100) << ", "
#if defined(__clang__)
          << "clang " << __clang_major__ << "." << __clang_minor__
#elif defined(__GNUC__)
          << "gcc " << __GNUC__ << "." << __GNUC_MINOR__
#else
          << "unknown compiler"
#endif
          << ")";
  app.set_version_flag("--version", version.str());
  app.require_subcommand(1);

  StatsArgs stats_args;
  auto* stats = app.add_subcommand("stats", "corpus statistics from a parallel pair of files");
  stats->add_option("--src", stats_args.src, "source (historical) file")->required();
  stats->add_option("--tgt", stats_args.tgt, "target (modern) file")->required();
  stats->add_option("--name", stats_args.name, "corpus label");
  stats->add_option("--split", stats_args.split, "train|dev|test")
      ->check(CLI::IsMember({"train", "dev", "test"}));
  stats->add_flag("--json", stats_args.as_json, "emit JSON instead of TSV");

  TrainArgs train_args;
  auto* train = app.add_subcommand("train", "train phrase table and language model");
  train->add_option("--src", train_args.src, "training source file")->required();
  train->add_option("--tgt", train_args.tgt, "training target file")->required();
  train->add_option("--out-dir", train_args.out_dir, "output directory")->required();
  train->add_option("--order", train_args.order, "LM order")->check(CLI::PositiveNumber);
  train->add_option("--max-len", train_args.max_len, "maximum phrase length")
      ->check(CLI::PositiveNumber);
  train->add_option("--min-count", train_args.min_count, "prune phrase pairs below this count");

  TuneArgs tune_args;
  auto* tune = app.add_subcommand("tune", "optimize log-linear weights on a dev set");
  tune->add_option("--dev-src", tune_args.dev_src)->required();
  tune->add_option("--dev-tgt", tune_args.dev_tgt)->required();
  tune->add_option("--table", tune_args.table)->required();
  tune->add_option("--lm", tune_args.lm)->required();
  tune->add_option("--objective", tune_args.objective, "bleu|cer|ter")
      ->check(CLI::IsMember({"bleu", "cer", "ter"}));
  tune->add_option("--restarts", tune_args.restarts)->check(CLI::PositiveNumber);
  tune->add_option("--iterations", tune_args.iterations)->check(CLI::PositiveNumber);
  tune->add_option("--seed", tune_args.seed);
  tune->add_option("--beam", tune_args.beam)->check(CLI::PositiveNumber);
  tune->add_option("--threads", tune_args.threads)->check(CLI::PositiveNumber);
  tune->add_option("--out", tune_args.out, "weights file to write")->required();

  NormalizeArgs norm_args;
  auto* norm = app.add_subcommand("normalize", "normalize a file of historical text");
  norm->add_option("--table", norm_args.table)->required();
  norm->add_option("--lm", norm_args.lm)->required();
  norm->add_option("--weights", norm_args.weights, "weights file (default: all ones)");
  norm->add_option("--beam", norm_args.beam)->check(CLI::PositiveNumber);
  norm->add_option("--in", norm_args.in)->required();
  norm->add_option("--out", norm_args.out)->required();

  EvaluateArgs eval_args;
  auto* eval = app.add_subcommand("evaluate", "CER/TER/BLEU of a hypothesis file");
  eval->add_option("--hyp", eval_args.hyp)->required();
  eval->add_option("--ref", eval_args.ref)->required();
  eval->add_option("--src", eval_args.src, "also report the identity baseline of this file");
  eval->add_flag("--json", eval_args.as_json);
  eval->add_option("--cer-denominator", eval_args.cer_denominator, "ref|hyp")
      ->check(CLI::IsMember({"ref", "hyp"}));

  CompareArgs cmp_args;
  auto* cmp = app.add_subcommand("compare", "approximate randomization test between two systems");
  cmp->add_option("--hyp-a", cmp_args.hyp_a)->required();
  cmp->add_option("--hyp-b", cmp_args.hyp_b)->required();
  cmp->add_option("--ref", cmp_args.ref)->required();
  cmp->add_option("--metric", cmp_args.metric, "cer|ter|bleu")
      ->check(CLI::IsMember({"cer", "ter", "bleu"}));
  cmp->add_option("--reps", cmp_args.reps)->check(CLI::PositiveNumber);
  cmp->add_option("--alpha", cmp_args.alpha);
  cmp->add_option("--seed", cmp_args.seed);

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "degrade modern text into a synthetic parallel corpus");
  synth->add_option("--rules", synth_args.rules, "rule TSV (default: built-in rule set)");
  synth->add_option("--in", synth_args.in, "modern text, one sentence per line")->required();
  synth->add_option("--seed", synth_args.seed);
  synth->add_option("--out-src", synth_args.out_src)->required();
  synth->add_option("--out-tgt", synth_args.out_tgt)->required();

  ReproduceArgs rep_args;
  auto* rep = app.add_subcommand(
      "reproduce", "baseline + CBSMT end to end on a corpus directory, with significance");
  rep->add_option("--corpus-dir", rep_args.corpus_dir,
                  "directory with train/dev/test .src/.tgt files")
      ->required();
  rep->add_option("--out-dir", rep_args.out_dir, "artifact directory (default: corpus-dir/run)");
  rep->add_option("--seed", rep_args.seed);
  rep->add_option("--order", rep_args.order)->check(CLI::PositiveNumber);
  rep->add_option("--max-len", rep_args.max_len)->check(CLI::PositiveNumber);
  rep->add_option("--beam", rep_args.beam)->check(CLI::PositiveNumber);
  rep->add_option("--restarts", rep_args.restarts)->check(CLI::PositiveNumber);
  rep->add_option("--iterations", rep_args.iterations)->check(CLI::PositiveNumber);
  rep->add_option("--reps", rep_args.reps)->check(CLI::PositiveNumber);
  rep->add_option("--threads", rep_args.threads)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (stats->parsed()) return run_stats(stats_args);
    if (train->parsed()) return run_train(train_args);
    if (tune->parsed()) return run_tune(tune_args);
    if (norm->parsed()) return run_normalize(norm_args);
    if (eval->parsed()) return run_evaluate(eval_args);
    if (cmp->parsed()) return run_compare(cmp_args);
    if (synth->parsed()) return run_synth(synth_args);
    if (rep->parsed()) return run_reproduce(rep_args);
    return kExitUsage;
  } catch (const histnorm::ParamError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const histnorm::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
