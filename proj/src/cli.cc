// cli.cc

// Copyright 2026  The langsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABILITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "langsel/cli.h"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "langsel/am-surrogate.h"
#include "langsel/arpa-io.h"
#include "langsel/eval.h"
#include "langsel/lattice.h"
#include "langsel/ngram-lm.h"
#include "langsel/selection.h"

namespace langsel {

using nlohmann::ordered_json;

std::string FileDigest(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path + "' for reading");
  uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 14];
  while (is.read(buf, sizeof(buf)) || is.gcount() > 0) {
    for (std::streamsize i = 0; i < is.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016" PRIx64, h);
  return hex;
}

namespace {

using Clock = std::chrono::steady_clock;

// State shared by a subcommand run: streams, and the manifest being built.
struct Run {
  Run(std::ostream &o, std::ostream &e, std::vector<std::string> a)
      : out(o), err(e), args(std::move(a)) {}

  std::ostream &out;
  std::ostream &err;
  std::string subcommand;
  std::vector<std::string> args;
  ordered_json options = ordered_json::object();
  std::vector<std::string> inputs;
  // path -> whether the bytes are a function of the inputs alone
  std::vector<std::pair<std::string, bool>> outputs;
  std::optional<uint64_t> seed;
  ordered_json timings = ordered_json::object();
  std::string manifest_path;

  void Input(const std::string &path) { inputs.push_back(path); }
  void Output(const std::string &path, bool deterministic = true) {
    outputs.emplace_back(path, deterministic);
  }

  template <typename F>
  auto Stage(const std::string &name, F &&f) {
    auto t0 = Clock::now();
    struct Record {
      Run *run;
      std::string name;
      Clock::time_point t0;
      ~Record() {
        run->timings[name] =
            std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
      }
    } record{this, name, t0};
    return f();
  }
};

std::ifstream OpenIn(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path + "' for reading");
  return is;
}

std::ofstream OpenOut(const std::string &path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  return os;
}

void CloseOut(std::ofstream &os, const std::string &path) {
  os.close();
  if (!os) throw IoError("error writing '" + path + "'");
}

// Re-raises a parse error with the file name attached.
template <typename F>
auto WithFile(const std::string &path, F &&f) {
  try {
    return f();
  } catch (const ParseError &e) {
    if (!e.File().empty()) throw;
    throw ParseError(e.Message(), e.Line(), path);
  }
}

std::vector<std::pair<std::string, Sentence>> ReadUtteranceFile(
    const std::string &path) {
  std::ifstream is = OpenIn(path);
  return WithFile(path, [&] { return ReadUtterances(is); });
}

std::vector<std::string> ReadWordList(const std::string &path) {
  std::ifstream is = OpenIn(path);
  std::vector<std::string> words;
  std::string w;
  while (is >> w) words.push_back(w);
  return words;
}

std::map<std::string, std::string> ReadLabels(const std::string &path) {
  std::map<std::string, std::string> labels;
  for (auto &[id, fields] : ReadUtteranceFile(path)) {
    if (fields.size() != 1)
      throw ParseError("expected '<utt-id> <language>' for '" + id + "'", 0, path);
    labels[id] = fields[0];
  }
  return labels;
}

std::shared_ptr<const LanguageModel> LoadLm(Run &run, const std::string &path,
                                            const std::string &name = "") {
  run.Input(path);
  LanguageModel lm = ReadArpaFile(path);
  lm.SetName(name.empty() ? std::filesystem::path(path).stem().string() : name);
  return std::make_shared<const LanguageModel>(std::move(lm));
}

void PrintEntries(std::ostream &os, const LanguageModel &lm) {
  for (int k = 1; k <= lm.Order(); ++k)
    os << "ngram " << k << "=" << lm.NumEntries(k) << "\n";
}

// ---------------------------------------------------------------------------
// Subcommands

struct TrainArgs {
  std::string corpus, out, vocab, name;
  int order = 3;
};

int CmdLmTrain(Run &run, const TrainArgs &a) {
  run.options = {{"corpus", a.corpus}, {"order", a.order}, {"out", a.out},
                 {"vocab", a.vocab}, {"name", a.name}};
  run.Input(a.corpus);
  std::ifstream is = OpenIn(a.corpus);
  Corpus corpus = WithFile(a.corpus, [&] { return ReadCorpus(is); });
  std::optional<Vocabulary> vocab;
  if (!a.vocab.empty()) {
    run.Input(a.vocab);
    std::vector<std::string> words = ReadWordList(a.vocab);
    vocab.emplace(words);
  }
  CorpusStats stats;
  LanguageModel lm = run.Stage("train", [&] {
    return TrainWittenBell(corpus, a.order, vocab ? &*vocab : nullptr, &stats);
  });
  lm.SetName(a.name);
  run.Stage("write", [&] {
    WriteArpaFile(lm, a.out);
    return 0;
  });
  run.Output(a.out);
  run.out << "corpus " << a.corpus << ": " << stats.sentences << " sentences, "
          << stats.tokens << " tokens, " << stats.oov_tokens << " OOVs\n";
  for (size_t k = 0; k < stats.ngram_types.size(); ++k)
    run.out << "distinct " << k + 1 << "-grams " << stats.ngram_types[k] << "\n";
  PrintEntries(run.out, lm);
  return kExitOk;
}

struct InterpArgs {
  std::string lm_a, lm_b, out;
  double alpha = 0.5;
};

int CmdLmInterp(Run &run, const InterpArgs &a) {
  run.options = {{"lm-a", a.lm_a}, {"lm-b", a.lm_b}, {"alpha", a.alpha}, {"out", a.out}};
  auto lm_a = LoadLm(run, a.lm_a);
  auto lm_b = LoadLm(run, a.lm_b);
  LanguageModel mixed =
      run.Stage("interpolate", [&] { return Interpolate(*lm_a, *lm_b, a.alpha); });
  WriteArpaFile(mixed, a.out);
  run.Output(a.out);
  PrintEntries(run.out, mixed);
  return kExitOk;
}

struct PruneArgs {
  std::string lm, out;
  double threshold = 2e-8;
};

int CmdLmPrune(Run &run, const PruneArgs &a) {
  run.options = {{"lm", a.lm}, {"threshold", a.threshold}, {"out", a.out}};
  auto lm = LoadLm(run, a.lm);
  LanguageModel pruned = run.Stage("prune", [&] { return Prune(*lm, a.threshold); });
  WriteArpaFile(pruned, a.out);
  run.Output(a.out);
  auto before = std::filesystem::file_size(a.lm);
  auto after = std::filesystem::file_size(a.out);
  run.out << "entries before " << lm->TotalEntries() << " after "
          << pruned.TotalEntries() << "\n";
  run.out << "bytes before " << before << " after " << after << "\n";
  return kExitOk;
}

struct PplArgs {
  std::string lm, corpus;
  bool exclude_oov = false;
};

int CmdLmPpl(Run &run, const PplArgs &a) {
  run.options = {{"lm", a.lm}, {"corpus", a.corpus}, {"exclude-oov", a.exclude_oov}};
  auto lm = LoadLm(run, a.lm);
  run.Input(a.corpus);
  std::ifstream is = OpenIn(a.corpus);
  Corpus corpus = WithFile(a.corpus, [&] { return ReadCorpus(is); });
  PerplexityOptions opts;
  opts.include_oov = !a.exclude_oov;
  PerplexityResult r =
      run.Stage("perplexity", [&] { return ComputePerplexity(*lm, corpus, opts); });
  run.out << "file " << a.corpus << ": " << r.stats.sentences << " sentences, "
          << r.stats.tokens << " words, " << r.stats.oov_tokens << " OOVs\n";
  run.out << "logprob= " << FormatFixed(r.total_log_prob, 4)
          << " ppl= " << FormatFixed(r.perplexity, 4) << " events= " << r.events
          << "\n";
  return kExitOk;
}

struct GenArgs {
  std::string refs, confusion, out, vocab;
  uint64_t seed = 0;
  double sub_rate = 0.15, ins_rate = 0.0, del_rate = 0.0, spread = 1.0;
  double del_penalty = -1.0, ins_penalty = -1.0;
  int max_alts = 3;
};

int CmdGen(Run &run, const GenArgs &a) {
  run.options = {{"refs", a.refs},         {"confusion", a.confusion},
                 {"out", a.out},           {"vocab", a.vocab},
                 {"seed", a.seed},         {"sub-rate", a.sub_rate},
                 {"ins-rate", a.ins_rate}, {"del-rate", a.del_rate},
                 {"spread", a.spread},     {"del-penalty", a.del_penalty},
                 {"ins-penalty", a.ins_penalty}, {"max-alts", a.max_alts}};
  run.seed = a.seed;

  run.Input(a.confusion);
  std::ifstream cis = OpenIn(a.confusion);
  ConfusionModel noise = WithFile(a.confusion, [&] { return ReadConfusionTable(cis); });
  noise.substitution_rate = a.sub_rate;
  noise.insertion_rate = a.ins_rate;
  noise.deletion_rate = a.del_rate;
  noise.noise_spread = a.spread;
  noise.deletion_penalty = a.del_penalty;
  noise.insertion_penalty = a.ins_penalty;

  // Reference lines are read here rather than through ReadUtterances so OOV
  // words can be reported with their line numbers.
  run.Input(a.refs);
  std::ifstream ris = OpenIn(a.refs);
  std::vector<std::tuple<int64_t, std::string, Sentence>> refs;
  std::set<std::string> ids;
  std::string line;
  for (int64_t line_no = 1; std::getline(ris, line); ++line_no) {
    Sentence f = SplitWhitespace(line);
    if (f.empty()) continue;
    if (f.size() < 2) throw ParseError("empty reference", line_no, a.refs);
    if (!ids.insert(f[0]).second)
      throw ParseError("duplicate utterance id '" + f[0] + "'", line_no, a.refs);
    std::string id = f[0];
    f.erase(f.begin());
    refs.emplace_back(line_no, std::move(id), std::move(f));
  }

  std::set<std::string> vocab;
  if (!a.vocab.empty()) {
    run.Input(a.vocab);
    for (std::string &w : ReadWordList(a.vocab)) vocab.insert(std::move(w));
  } else {
    for (const auto &[line_no, id, words] : refs) vocab.insert(words.begin(), words.end());
    for (const auto &[word, alts] : noise.table) {
      vocab.insert(word);
      for (const Confusable &c : alts) vocab.insert(c.word);
    }
  }
  bool oov = false;
  for (const auto &[line_no, id, words] : refs) {
    for (const std::string &w : words) {
      if (vocab.count(w) == 0) {
        run.err << a.refs << ":" << line_no << ": word '" << w
                << "' is not in the vocabulary\n";
        oov = true;
      }
    }
  }
  if (oov) throw Error("reference words outside the vocabulary");
  noise.Check(vocab);

  GeneratorConfig cfg;
  cfg.max_alternatives = a.max_alts;
  cfg.vocabulary.assign(vocab.begin(), vocab.end());
  std::ofstream os = OpenOut(a.out);
  run.Stage("generate", [&] {
    for (size_t i = 0; i < refs.size(); ++i) {
      const auto &[line_no, id, words] = refs[i];
      cfg.seed = UtteranceSeed(a.seed, i);
      WriteLattice(GenerateLattice(words, noise, cfg, id), os);
    }
    return 0;
  });
  CloseOut(os, a.out);
  run.Output(a.out);
  run.out << "generated " << refs.size() << " lattices\n";
  return kExitOk;
}

struct DecodeArgs {
  std::string lattices, lm0, out, report, known_language;
  std::vector<std::string> lms;
  bool first_pass_only = false, normalize = false;
  double am_scale = 1.0, lm_scale = 1.0, low_margin = 1.0;
  int threads = 1;
};

struct UttOutcome {
  std::optional<DecodeResult> result;
  std::string error;
};

int CmdDecode(Run &run, const DecodeArgs &a) {
  run.options = {{"lattices", a.lattices},
                 {"lm0", a.lm0},
                 {"lm", a.lms},
                 {"out", a.out},
                 {"report", a.report},
                 {"known-language", a.known_language},
                 {"first-pass-only", a.first_pass_only},
                 {"normalize", a.normalize},
                 {"am-scale", a.am_scale},
                 {"lm-scale", a.lm_scale},
                 {"low-margin", a.low_margin},
                 {"threads", a.threads}};
  if (a.threads < 1) throw CLI::ValidationError("--threads", "must be at least 1");
  if (!a.first_pass_only && a.lms.empty())
    throw CLI::ValidationError("--lm", "at least one language model is required");
  if (a.first_pass_only && !a.known_language.empty())
    throw CLI::ValidationError("--known-language",
                               "cannot be combined with --first-pass-only");

  PipelineConfig cfg;
  cfg.first_pass_scores = {a.am_scale, a.lm_scale};
  cfg.rescore_scores = {a.am_scale, a.lm_scale};
  cfg.normalize_by_length = a.normalize;
  cfg.low_margin_threshold = a.low_margin;

  std::vector<std::string> names;
  run.Stage("load", [&] {
    cfg.lm0 = LoadLm(run, a.lm0, "lm0");
    for (const std::string &spec : a.lms) {
      size_t eq = spec.find('=');
      std::string name, path = spec;
      if (eq != std::string::npos) {
        name = spec.substr(0, eq);
        path = spec.substr(eq + 1);
      } else {
        name = std::filesystem::path(path).stem().string();
      }
      if (name.empty() || std::find(names.begin(), names.end(), name) != names.end())
        throw CLI::ValidationError("--lm", "language names must be non-empty and unique");
      names.push_back(name);
      cfg.lms.push_back(LoadLm(run, path, name));
    }
    return 0;
  });
  if (!a.first_pass_only) cfg.Check();

  std::map<std::string, std::string> labels;
  if (!a.known_language.empty()) {
    run.Input(a.known_language);
    labels = ReadLabels(a.known_language);
  }

  run.Input(a.lattices);
  std::ifstream is = OpenIn(a.lattices);
  std::vector<Lattice> lattices =
      WithFile(a.lattices, [&] { return ReadLattices(is); });

  auto decode_one = [&](const Lattice &lat) {
    UttOutcome o;
    try {
      if (a.first_pass_only) {
        DecodeResult r;
        r.utt_id = lat.utt_id;
        r.first_pass_words = BestPath(FirstPass(lat, cfg), cfg.first_pass_scores).words;
        r.selected.words = r.first_pass_words;
        r.selected.language_score = cfg.lm0->SentenceLogProb(r.first_pass_words);
        r.all_candidates = {r.selected};
        o.result = std::move(r);
      } else if (!a.known_language.empty()) {
        auto it = labels.find(lat.utt_id);
        if (it == labels.end()) throw Error("no language label");
        auto pos = std::find(names.begin(), names.end(), it->second);
        if (pos == names.end()) throw Error("unknown language '" + it->second + "'");
        o.result = DecodeKnownLanguage(lat, cfg, pos - names.begin());
      } else {
        o.result = Decode(lat, cfg);
      }
    } catch (const Error &e) {
      o.error = e.what();
    }
    return o;
  };

  std::vector<UttOutcome> outcomes(lattices.size());
  run.Stage("decode", [&] {
    if (a.threads == 1) {
      for (size_t i = 0; i < lattices.size(); ++i) outcomes[i] = decode_one(lattices[i]);
    } else {
      std::vector<std::future<void>> jobs;
      for (int t = 0; t < a.threads; ++t) {
        jobs.push_back(std::async(std::launch::async, [&, t] {
          for (size_t i = t; i < lattices.size(); i += a.threads)
            outcomes[i] = decode_one(lattices[i]);
        }));
      }
      for (auto &j : jobs) j.get();
    }
    return 0;
  });

  std::vector<std::string> record_names =
      a.first_pass_only ? std::vector<std::string>{"-"} : names;
  std::ofstream os = OpenOut(a.out);
  ordered_json utts = ordered_json::array();
  ordered_json failures = ordered_json::array();
  std::map<std::string, int64_t> selected_counts;
  int64_t low_margin = 0;
  StageTimings totals;
  for (size_t i = 0; i < outcomes.size(); ++i) {
    const UttOutcome &o = outcomes[i];
    if (!o.result) {
      failures.push_back({{"utt_id", lattices[i].utt_id}, {"error", o.error}});
      continue;
    }
    const DecodeResult &r = *o.result;
    os << FormatDecodeRecord(r, record_names) << "\n";
    std::string lang = record_names[a.first_pass_only ? 0 : r.selected.language_id];
    ++selected_counts[lang];
    if (r.low_margin) ++low_margin;
    totals.first_pass_ms += r.timings.first_pass_ms;
    totals.rescoring_ms += r.timings.rescoring_ms;
    totals.selection_ms += r.timings.selection_ms;
    ordered_json scores = ordered_json::object();
    for (const Candidate &c : r.all_candidates)
      scores[record_names[a.first_pass_only ? 0 : c.language_id]] = c.language_score;
    utts.push_back({{"utt_id", r.utt_id},
                    {"selected", lang},
                    {"scores", scores},
                    {"margin", r.margin},
                    {"low_margin", r.low_margin},
                    {"words", JoinWords(r.selected.words)},
                    {"first_pass_words", JoinWords(r.first_pass_words)},
                    {"timings_ms",
                     {{"first_pass", r.timings.first_pass_ms},
                      {"rescoring", r.timings.rescoring_ms},
                      {"selection", r.timings.selection_ms}}}});
  }
  CloseOut(os, a.out);
  run.Output(a.out);

  if (!a.report.empty()) {
    ordered_json report = {
        {"summary",
         {{"utterances", lattices.size()},
          {"decoded", lattices.size() - failures.size()},
          {"failed", failures},
          {"selected", selected_counts},
          {"low_margin", low_margin},
          {"timings_ms",
           {{"first_pass", totals.first_pass_ms},
            {"rescoring", totals.rescoring_ms},
            {"selection", totals.selection_ms}}}}},
        {"utterances", utts}};
    std::ofstream rs = OpenOut(a.report);
    rs << report.dump(2) << "\n";
    CloseOut(rs, a.report);
    run.Output(a.report, false);
  }

  run.out << "decoded " << lattices.size() - failures.size() << " of "
          << lattices.size() << " utterances";
  if (!a.first_pass_only) run.out << ", " << low_margin << " low-margin";
  run.out << "\n";
  if (!failures.empty()) {
    run.err << failures.size() << " utterances failed:\n";
    for (const auto &f : failures)
      run.err << "  " << f["utt_id"].get<std::string>() << ": "
              << f["error"].get<std::string>() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

struct ScoreArgs {
  std::string ref, hyp, hyp_format = "text", foreign, truth, out, rows;
};

int CmdScore(Run &run, const ScoreArgs &a) {
  run.options = {{"ref", a.ref},         {"hyp", a.hyp},     {"hyp-format", a.hyp_format},
                 {"foreign", a.foreign}, {"truth", a.truth}, {"out", a.out},
                 {"rows", a.rows}};
  run.Input(a.ref);
  auto refs = ReadUtteranceFile(a.ref);
  run.Input(a.hyp);
  std::map<std::string, Sentence> hyps;
  std::map<std::string, std::string> hyp_langs;
  if (a.hyp_format == "text") {
    for (auto &[id, words] : ReadUtteranceFile(a.hyp)) hyps[id] = std::move(words);
  } else {
    std::ifstream is = OpenIn(a.hyp);
    std::string line;
    for (int64_t line_no = 1; std::getline(is, line); ++line_no) {
      Sentence f = SplitWhitespace(line);
      if (f.empty()) continue;
      if (f.size() < 3)
        throw ParseError("expected '<utt-id> <language> <scores> [words]'", line_no, a.hyp);
      if (hyps.count(f[0]))
        throw ParseError("duplicate utterance id '" + f[0] + "'", line_no, a.hyp);
      hyp_langs[f[0]] = f[1];
      hyps[f[0]] = Sentence(f.begin() + 3, f.end());
    }
  }

  std::vector<std::string> unmatched;
  std::set<std::string> ref_ids;
  for (const auto &[id, words] : refs) {
    ref_ids.insert(id);
    if (!hyps.count(id)) unmatched.push_back(id + " (no hypothesis)");
  }
  for (const auto &[id, words] : hyps)
    if (!ref_ids.count(id)) unmatched.push_back(id + " (no reference)");
  if (!unmatched.empty()) {
    run.err << unmatched.size() << " unmatched utterance ids:\n";
    for (const std::string &u : unmatched) run.err << "  " << u << "\n";
    throw Error("reference and hypothesis ids differ");
  }

  std::map<std::string, std::string> truth;
  if (!a.truth.empty()) {
    run.Input(a.truth);
    truth = ReadLabels(a.truth);
  }

  EvalReport report;
  std::vector<Sentence> ref_list, hyp_list;
  int64_t selected_total = 0, selected_correct = 0;
  for (const auto &[id, words] : refs) {
    UtteranceScore row;
    row.utt_id = id;
    try {
      row.wer = ComputeWer(words, hyps[id]);
    } catch (const Error &e) {
      throw Error("utterance '" + id + "': " + e.what());
    }
    if (hyp_langs.count(id)) row.selected_language = hyp_langs[id];
    if (truth.count(id)) row.truth_language = truth[id];
    if (row.selected_language && row.truth_language) {
      ++selected_total;
      if (*row.selected_language == *row.truth_language) ++selected_correct;
    }
    report.total += row.wer;
    report.rows.push_back(std::move(row));
    ref_list.push_back(words);
    hyp_list.push_back(hyps[id]);
  }
  if (selected_total > 0)
    report.selection_accuracy =
        static_cast<double>(selected_correct) / static_cast<double>(selected_total);
  if (!a.foreign.empty()) {
    run.Input(a.foreign);
    std::vector<std::string> words = ReadWordList(a.foreign);
    report.foreign_words = ForeignWordAccuracy(
        ref_list, hyp_list, std::set<std::string>(words.begin(), words.end()));
  }

  if (a.out.empty()) {
    report.WriteTable(run.out);
  } else {
    std::ofstream os = OpenOut(a.out);
    report.WriteTable(os);
    CloseOut(os, a.out);
    run.Output(a.out);
  }
  if (!a.rows.empty()) {
    std::ofstream os = OpenOut(a.rows);
    report.WriteRows(os);
    CloseOut(os, a.rows);
    run.Output(a.rows);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Manifests

ordered_json BuildManifest(const Run &run, int exit_code) {
  ordered_json inputs = ordered_json::array();
  for (const std::string &p : run.inputs) {
    ordered_json e = {{"path", p}};
    try {
      e["digest"] = FileDigest(p);
    } catch (const IoError &) {
      e["digest"] = nullptr;
    }
    inputs.push_back(e);
  }
  ordered_json outputs = ordered_json::array();
  for (const auto &[p, deterministic] : run.outputs)
    outputs.push_back(
        {{"path", p}, {"digest", FileDigest(p)}, {"deterministic", deterministic}});
  return {{"tool", "langsel"},
          {"version", kToolVersion},
          {"subcommand", run.subcommand},
          {"argv", run.args},
          {"cwd", std::filesystem::current_path().string()},
          {"options", run.options},
          {"inputs", inputs},
          {"outputs", outputs},
          {"seed", run.seed ? ordered_json(*run.seed) : ordered_json(nullptr)},
          {"timings_ms", run.timings},
          {"exit_code", exit_code}};
}

void EmitManifest(const Run &run, int exit_code) {
  ordered_json m = BuildManifest(run, exit_code);
  std::string path = run.manifest_path;
  if (path.empty() && !run.outputs.empty())
    path = run.outputs.front().first + ".manifest.json";
  if (path.empty()) {
    run.err << "manifest: " << m.dump() << "\n";
    return;
  }
  std::ofstream os = OpenOut(path);
  os << m.dump(2) << "\n";
  CloseOut(os, path);
}

int Dispatch(const std::vector<std::string> &args, std::ostream &out,
             std::ostream &err, int depth);

int CmdReplay(const std::string &manifest_path, std::ostream &out, std::ostream &err,
              int depth) {
  if (depth > 0) throw CLI::ValidationError("replay", "a manifest cannot replay a replay");
  std::ifstream is = OpenIn(manifest_path);
  ordered_json m;
  try {
    m = ordered_json::parse(is);
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("invalid manifest: ") + e.what(), 0, manifest_path);
  }
  if (!m.contains("argv") || !m["argv"].is_array() || !m.contains("outputs"))
    throw ParseError("manifest lacks 'argv' or 'outputs'", 0, manifest_path);
  std::vector<std::string> argv = m["argv"].get<std::vector<std::string>>();
  if (!argv.empty() && argv.front() == "replay")
    throw ParseError("manifest records a replay", 0, manifest_path);

  for (const auto &in : m.value("inputs", ordered_json::array())) {
    std::string path = in["path"].get<std::string>();
    if (in["digest"].is_null()) continue;
    std::string now;
    try {
      now = FileDigest(path);
    } catch (const IoError &) {
      now = "(missing)";
    }
    if (now != in["digest"].get<std::string>())
      err << "warning: input '" << path << "' changed since the manifest was written\n";
  }

  int code = Dispatch(argv, out, err, depth + 1);
  if (code != m.value("exit_code", 0)) {
    err << "replay: exit code " << code << ", manifest recorded "
        << m.value("exit_code", 0) << "\n";
    return kExitFailure;
  }
  int mismatches = 0;
  for (const auto &o : m["outputs"]) {
    if (!o.value("deterministic", true)) continue;
    std::string path = o["path"].get<std::string>();
    std::string now = FileDigest(path);
    if (now != o["digest"].get<std::string>()) {
      err << "replay: output '" << path << "' differs from the manifest\n";
      ++mismatches;
    }
  }
  if (mismatches > 0) return kExitFailure;
  out << "replay: outputs reproduced\n";
  return kExitOk;
}

int Dispatch(const std::vector<std::string> &args, std::ostream &out,
             std::ostream &err, int depth) {
  CLI::App app{"Language-model based output selection for multilingual decoding",
               "langsel"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("langsel ") + kToolVersion);

  std::string manifest;
  auto add_manifest = [&](CLI::App *sub) {
    sub->add_option("--manifest", manifest,
                    "Where to write the run manifest (default <out>.manifest.json)");
  };

  TrainArgs train;
  auto *c_train = app.add_subcommand("lm-train", "Train a Witten-Bell n-gram model");
  c_train->add_option("--corpus", train.corpus, "One sentence per line")->required();
  c_train->add_option("--order", train.order, "Model order")->capture_default_str()
      ->check(CLI::Range(1, 10));
  c_train->add_option("--out", train.out, "Output ARPA file")->required();
  c_train->add_option("--vocab", train.vocab, "Closed vocabulary word list");
  c_train->add_option("--name", train.name, "Model name");
  add_manifest(c_train);

  InterpArgs interp;
  auto *c_interp = app.add_subcommand("lm-interp", "Linear interpolation of two models");
  c_interp->add_option("--lm-a", interp.lm_a, "First ARPA model")->required();
  c_interp->add_option("--lm-b", interp.lm_b, "Second ARPA model")->required();
  c_interp->add_option("--alpha", interp.alpha, "Weight of the first model")
      ->capture_default_str()->check(CLI::Range(0.0, 1.0));
  c_interp->add_option("--out", interp.out, "Output ARPA file")->required();
  add_manifest(c_interp);

  PruneArgs prune;
  auto *c_prune = app.add_subcommand("lm-prune", "Probability-threshold pruning");
  c_prune->add_option("--lm", prune.lm, "Input ARPA model")->required();
  c_prune->add_option("--threshold", prune.threshold, "Probability threshold")
      ->capture_default_str();
  c_prune->add_option("--out", prune.out, "Output ARPA file")->required();
  add_manifest(c_prune);

  PplArgs ppl;
  auto *c_ppl = app.add_subcommand("lm-ppl", "Perplexity of a corpus");
  c_ppl->add_option("--lm", ppl.lm, "ARPA model")->required();
  c_ppl->add_option("--corpus", ppl.corpus, "One sentence per line")->required();
  c_ppl->add_flag("--exclude-oov", ppl.exclude_oov, "Skip OOV tokens");
  add_manifest(c_ppl);

  GenArgs gen;
  auto *c_gen = app.add_subcommand("gen", "Generate noisy lattices from references");
  c_gen->add_option("--refs", gen.refs, "Lines '<utt-id> words...'")->required();
  c_gen->add_option("--confusion", gen.confusion, "Confusion table")->required();
  c_gen->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  c_gen->add_option("--out", gen.out, "Output lattice file")->required();
  c_gen->add_option("--vocab", gen.vocab, "Word list (default: refs + table)");
  c_gen->add_option("--sub-rate", gen.sub_rate)->capture_default_str();
  c_gen->add_option("--ins-rate", gen.ins_rate)->capture_default_str();
  c_gen->add_option("--del-rate", gen.del_rate)->capture_default_str();
  c_gen->add_option("--spread", gen.spread, "Acoustic noise half-width")
      ->capture_default_str();
  c_gen->add_option("--del-penalty", gen.del_penalty)->capture_default_str();
  c_gen->add_option("--ins-penalty", gen.ins_penalty)->capture_default_str();
  c_gen->add_option("--max-alts", gen.max_alts, "Words per position")
      ->capture_default_str();
  add_manifest(c_gen);

  DecodeArgs dec;
  auto *c_dec = app.add_subcommand("decode", "First pass, rescoring and selection");
  c_dec->add_option("--lattices", dec.lattices, "Lattice file")->required();
  c_dec->add_option("--lm0", dec.lm0, "First-pass ARPA model")->required();
  c_dec->add_option("--lm", dec.lms, "Per-language model NAME=PATH (repeatable)");
  c_dec->add_option("--out", dec.out, "Selection records")->required();
  c_dec->add_option("--report", dec.report, "JSON report");
  c_dec->add_option("--known-language", dec.known_language,
                    "Lines '<utt-id> <language>'; rescore with that model only");
  c_dec->add_flag("--first-pass-only", dec.first_pass_only, "Emit LM0 best paths");
  c_dec->add_flag("--normalize", dec.normalize, "Compare per-word scores");
  c_dec->add_option("--am-scale", dec.am_scale)->capture_default_str();
  c_dec->add_option("--lm-scale", dec.lm_scale)->capture_default_str();
  c_dec->add_option("--low-margin", dec.low_margin, "Low-margin flag threshold")
      ->capture_default_str();
  c_dec->add_option("--threads", dec.threads)->capture_default_str();
  add_manifest(c_dec);

  ScoreArgs score;
  auto *c_score = app.add_subcommand("score", "WER and selection metrics");
  c_score->add_option("--ref", score.ref, "Lines '<utt-id> words...'")->required();
  c_score->add_option("--hyp", score.hyp, "Hypotheses")->required();
  c_score->add_option("--hyp-format", score.hyp_format, "text or decode")
      ->capture_default_str()->check(CLI::IsMember({"text", "decode"}));
  c_score->add_option("--foreign", score.foreign, "Foreign word list");
  c_score->add_option("--truth", score.truth, "Lines '<utt-id> <language>'");
  c_score->add_option("--out", score.out, "Report table (default stdout)");
  c_score->add_option("--rows", score.rows, "Per-utterance TSV");
  add_manifest(c_score);

  std::string replay_path;
  auto *c_replay = app.add_subcommand("replay", "Re-run a manifest and compare outputs");
  c_replay->add_option("manifest", replay_path, "Manifest file")->required();

  std::vector<std::string> argv_store{"langsel"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char *> argv;
  for (std::string &s : argv_store) argv.push_back(s.data());

  Run run(out, err, args);
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  int code = kExitOk;
  try {
    if (c_replay->parsed()) return CmdReplay(replay_path, out, err, depth);
    run.manifest_path = manifest;
    if (c_train->parsed()) {
      run.subcommand = "lm-train";
      code = CmdLmTrain(run, train);
    } else if (c_interp->parsed()) {
      run.subcommand = "lm-interp";
      code = CmdLmInterp(run, interp);
    } else if (c_prune->parsed()) {
      run.subcommand = "lm-prune";
      code = CmdLmPrune(run, prune);
    } else if (c_ppl->parsed()) {
      run.subcommand = "lm-ppl";
      code = CmdLmPpl(run, ppl);
    } else if (c_gen->parsed()) {
      run.subcommand = "gen";
      code = CmdGen(run, gen);
    } else if (c_dec->parsed()) {
      run.subcommand = "decode";
      code = CmdDecode(run, dec);
    } else if (c_score->parsed()) {
      run.subcommand = "score";
      code = CmdScore(run, score);
    }
    EmitManifest(run, code);
  } catch (const CLI::ValidationError &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return code;
}

}  // namespace

int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err) {
  return Dispatch(args, out, err, 0);
}

}  // namespace langsel
