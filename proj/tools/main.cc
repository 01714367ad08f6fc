// Copyright 2026 The Truecase Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// truecase: command-line front end.
//
// Exit codes: 0 success, 1 evaluation or threshold failure, 2 I/O, format
// or usage errors.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "systems.h"
#include "truecase/baseline.h"
#include "truecase/char_reference.h"
#include "truecase/error.h"
#include "truecase/eval.h"
#include "truecase/hier_model.h"
#include "truecase/io.h"
#include "truecase/lm.h"
#include "truecase/serialization.h"
#include "truecase/training.h"
#include "truecase/unicode.h"

namespace truecase {
namespace {

constexpr int kExitThreshold = 1;
constexpr int kExitError = 2;

using json = nlohmann::json;

struct Common {
  std::uint64_t seed = 1;
  std::string config_path;
};

json LoadConfigFile(const std::string& path) {
  if (path.empty()) return json::object();
  try {
    json j = json::parse(ReadFileBytes(path));
    if (!j.is_object()) throw Error(ErrorCode::kConfig, path + ": expected a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfig, path + ": " + e.what());
  }
}

void LogResolved(const std::string& command, const json& resolved) {
  std::cerr << json{{"command", command}, {"resolved", resolved}}.dump() << "\n";
}

std::vector<Sentence> ReadCorpus(const std::string& path) {
  std::vector<Sentence> out;
  for (const auto& line : ReadLines(path)) {
    Sentence s = Sentence::Parse(line);
    if (!s.empty()) out.push_back(std::move(s));
  }
  return out;
}

void WriteJson(const std::string& path, const json& j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    WriteFileBytes(path, j.dump(2) + "\n");
  }
}

// Every option the user actually passed overrides the config file.
template <typename T>
void Override(const CLI::Option* opt, const T& value, json* section, const char* key) {
  if (opt->count() > 0) (*section)[key] = value;
}

// ---- train ----

struct TrainArgs {
  std::string system = "hier";
  std::vector<std::string> train_paths;
  std::string valid_path, out_path, log_path, checkpoint_path, preset;
  int epochs = 0, batch_size = 0, patience = 0;
  double learning_rate = 0, validation_fraction = 0;
};

int RunTrain(const Common& common, const TrainArgs& a, const CLI::App& cmd) {
  json file = LoadConfigFile(common.config_path);
  json train = file.value("train", json::object());
  json model = file.value("model", json::object());
  Override(cmd.get_option("--preset"), a.preset, &train, "preset");
  Override(cmd.get_option("--epochs"), a.epochs, &train, "epochs");
  Override(cmd.get_option("--batch-size"), a.batch_size, &train, "batch_size");
  Override(cmd.get_option("--lr"), a.learning_rate, &train, "learning_rate");
  Override(cmd.get_option("--patience"), a.patience, &train, "patience");
  Override(cmd.get_option("--validation-fraction"), a.validation_fraction, &train,
           "validation_fraction");
  Override(cmd.get_option("--log"), a.log_path, &train, "log_path");
  Override(cmd.get_option("--checkpoint"), a.checkpoint_path, &train, "checkpoint_path");
  if (cmd.get_option("--seed")->count() > 0 || !train.contains("seed")) {
    train["seed"] = common.seed;
  }
  const TrainConfig tc = TrainConfig::FromJson(train, TrainConfig());
  const ModelConfig mc = ModelConfig::FromJson(model, ModelConfig::Preset(tc.preset));
  LogResolved("train", {{"system", a.system}, {"train", tc.ToJson()}, {"model", mc.ToJson()},
                        {"seed", tc.seed}});

  std::vector<std::string> lines;
  for (const auto& path : a.train_paths) {
    auto more = ReadLines(path);
    lines.insert(lines.end(), more.begin(), more.end());
  }
  if (a.system == "lexicon") {
    std::vector<Sentence> corpus;
    for (const auto& p : IngestCorpus(lines).pairs) corpus.push_back(p.gold);
    WriteFileBytes(a.out_path, CaseLexicon::Build(corpus).ToTsv());
    return 0;
  }
  if (a.system == "char") {
    const IngestResult in = IngestCorpus(lines);
    CharTrainOptions opt;
    opt.epochs = tc.epochs;
    opt.batch_size = tc.batch_size;
    opt.learning_rate = tc.learning_rate;
    opt.clip_norm = tc.clip_norm;
    opt.seed = tc.seed;
    opt.init_range = tc.init_range;
    CharTagger<float> tagger(CharTaggerConfig::EqualWidth(mc));
    TrainCharTagger(&tagger, in.pairs, opt);
    ModelFile f = tagger.ToModelFile();
    f.header["metadata"] = {{"seed", tc.seed}, {"train_sentences", in.pairs.size()}};
    WriteFileBytes(a.out_path, SerializeModelFile(f));
    return 0;
  }
  if (a.system != "hier") throw Error(ErrorCode::kConfig, "unknown system " + a.system);
  std::optional<std::vector<std::string>> valid;
  if (!a.valid_path.empty()) valid = ReadLines(a.valid_path);
  TrainResult r = Train(tc, mc, lines, valid ? &*valid : nullptr, [](const EpochLog& log) {
    std::cerr << log.ToJson().dump() << "\n";
  });
  r.model.Save(a.out_path);
  std::cerr << json{{"best_epoch", r.best_epoch},
                    {"diverged", r.diverged},
                    {"train_sentences", r.train_sentences},
                    {"valid_sentences", r.valid_sentences},
                    {"rejected", r.rejected}}
                   .dump()
            << "\n";
  return r.diverged ? kExitThreshold : 0;
}

// ---- distill ----

struct DecodeArgs {
  std::string mode = "best-path";
  int beam = 0;
};

int RunDistill(const Common& common, const std::string& teacher_path,
               const std::string& input, const std::string& output,
               const std::string& student_preset, const DecodeArgs& d) {
  const DecodeMode mode = ParseDecodeMode(d.mode);
  LogResolved("distill", {{"teacher", teacher_path}, {"input", input}, {"mode", d.mode},
                          {"beam", d.beam}, {"seed", common.seed}});
  const auto teacher = HierModel<float>::Load(teacher_path);
  if (!student_preset.empty()) {
    CheckDistillCompatible(teacher.config(), ModelConfig::Preset(student_preset));
  }
  std::vector<std::string> lower;
  for (const auto& line : ReadLines(input)) lower.push_back(Lowercase(line));
  WriteLines(output, Distill(teacher, lower, mode, d.beam));
  return 0;
}

// ---- predict ----

int RunPredict(const Common& common, const std::string& model_path, const std::string& input,
               const std::string& output, const DecodeArgs& d) {
  const DecodeMode mode = ParseDecodeMode(d.mode);
  LogResolved("predict", {{"model", model_path}, {"mode", d.mode}, {"beam", d.beam},
                          {"seed", common.seed}});
  const LoadedSystem sys = LoadSystem(model_path, mode, d.beam);
  std::ifstream in_file;
  std::istream* in = &std::cin;
  if (!input.empty() && input != "-") {
    in_file.open(input, std::ios::binary);
    if (!in_file) throw Error(ErrorCode::kIo, "cannot open " + input);
    in = &in_file;
  }
  std::ofstream out_file;
  std::ostream* out = &std::cout;
  if (!output.empty() && output != "-") {
    out_file.open(output, std::ios::binary);
    if (!out_file) throw Error(ErrorCode::kIo, "cannot open " + output);
    out = &out_file;
  }
  std::size_t lines = 0, malformed = 0;
  std::string line;
  while (std::getline(*in, line)) {
    ++lines;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!IsValidUtf8(line)) {
      ++malformed;
      *out << line << '\n';
      continue;
    }
    const Sentence s = Sentence::Parse(line).Lowercased();
    *out << (s.empty() ? std::string() : sys.run(s).Join()) << '\n';
  }
  out->flush();
  if (!*out) throw Error(ErrorCode::kIo, "write failed");
  if (malformed > 0) {
    std::cerr << "warning: " << malformed << " of " << lines
              << " lines were not valid UTF-8 and were passed through\n";
  }
  return 0;
}

// ---- eval ----

int RunEval(const Common& common, const std::string& pred_path, const std::string& ref_path,
            const std::string& model_path, const std::string& name, bool tsv,
            double min_f1, const DecodeArgs& d, const std::string& out_path) {
  LogResolved("eval", {{"pred", pred_path}, {"ref", ref_path}, {"model", model_path},
                       {"min_f1", min_f1}, {"seed", common.seed}});
  const auto refs = ReadCorpus(ref_path);
  std::vector<Sentence> preds;
  if (!model_path.empty()) {
    const LoadedSystem sys = LoadSystem(model_path, ParseDecodeMode(d.mode), d.beam);
    for (const auto& r : refs) preds.push_back(sys.run(r.Lowercased()));
  } else {
    if (pred_path.empty()) throw Error(ErrorCode::kConfig, "need --pred or --model");
    preds = ReadCorpus(pred_path);
  }
  const EvalReport report = EvalNl(preds, refs);
  if (tsv) {
    std::cout << Table2Header() << "\n" << Table2Row(name, report, nullptr) << "\n";
  } else {
    json j = report.ToJson();
    j["seed"] = common.seed;
    WriteJson(out_path, j);
  }
  return report.f1 < min_f1 ? kExitThreshold : 0;
}

// ---- bench ----

int RunBench(const Common& common, const std::vector<std::string>& specs,
             const std::string& corpus_path, std::string reference, int runs, int warmup,
             int limit, bool tsv, const std::string& out_path) {
  LogResolved("bench", {{"systems", specs}, {"corpus", corpus_path}, {"runs", runs},
                        {"warmup", warmup}, {"limit", limit}, {"seed", common.seed}});
  std::vector<Sentence> refs = ReadCorpus(corpus_path);
  if (limit > 0 && refs.size() > static_cast<std::size_t>(limit)) refs.resize(limit);
  std::vector<Sentence> lower;
  for (const auto& r : refs) lower.push_back(r.Lowercased());
  std::vector<LoadedSystem> loaded;
  std::vector<BenchSystem> systems;
  for (const auto& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::kConfig, "expected NAME=PATH: " + spec);
    loaded.push_back(LoadSystem(spec.substr(eq + 1)));
    const auto& l = loaded.back();
    systems.push_back({spec.substr(0, eq), l.run, l.parameters, l.float_bytes,
                       l.quantized_bytes});
  }
  if (systems.empty()) throw Error(ErrorCode::kConfig, "no systems");
  if (reference.empty()) reference = systems.front().name;
  const BenchReport report = BenchSpeed(systems, lower, reference, {warmup, runs});
  json j = report.ToJson();
  j["seed"] = common.seed;
  json evals = json::object();
  std::ostringstream rows;
  rows << Table2Header() << "\n";
  for (const auto& s : systems) {
    std::vector<Sentence> preds;
    for (const auto& x : lower) preds.push_back(s.run(x));
    const EvalReport e = EvalNl(preds, refs);
    evals[s.name] = e.ToJson();
    rows << Table2Row(s.name, e, &report.Find(s.name)) << "\n";
  }
  j["eval"] = evals;
  if (tsv) {
    std::cout << rows.str();
  } else {
    WriteJson(out_path, j);
  }
  return 0;
}

// ---- noisify ----

int RunNoisify(const Common& common, const std::string& input, const std::string& output,
               double rate) {
  LogResolved("noisify", {{"input", input}, {"rate", rate}, {"seed", common.seed}});
  std::vector<Sentence> corpus;
  std::vector<std::string> lines = ReadLines(input);
  for (const auto& l : lines) corpus.push_back(Sentence::Parse(l));
  const auto noisy = Noisify(corpus, {rate, common.seed});
  for (std::size_t i = 0; i < lines.size(); ++i) lines[i] = noisy[i].Join();
  WriteLines(output, lines);
  return 0;
}

// ---- lm-exp ----

int RunLmExp(const Common& common, const std::string& train_path, const std::string& eval_path,
             const std::vector<std::string>& normalizers, std::vector<double> rates,
             double normalize_rate, bool require_ordering, double tolerance,
             const std::string& out_path) {
  LmExperimentConfig config;
  config.seed = common.seed;
  if (!rates.empty()) config.corruption_rates = rates;
  config.normalize_rate = normalize_rate;
  LogResolved("lm-exp", {{"train", train_path}, {"eval", eval_path},
                         {"normalizers", normalizers}, {"config", config.ToJson()}});
  std::vector<LoadedSystem> loaded;
  std::vector<std::pair<std::string, Normalizer>> norm;
  for (const auto& spec : normalizers) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::kConfig, "expected NAME=PATH: " + spec);
    loaded.push_back(LoadSystem(spec.substr(eq + 1)));
    norm.emplace_back(spec.substr(0, eq), loaded.back().run);
  }
  const auto result =
      RunLmExperiment(ReadCorpus(train_path), ReadCorpus(eval_path), norm, config);
  json j = result.ToJson();
  j["config"] = config.ToJson();
  WriteJson(out_path, j);
  if (!require_ordering) return 0;
  // The first two corrupt arms, then every normalized arm against oracle.
  bool ok = true;
  const double oracle = result.Find("oracle").result.perplexity;
  double prev = std::numeric_limits<double>::infinity();
  for (const auto& arm : result.arms) {
    const double p = arm.result.perplexity;
    if (arm.name.rfind("corrupt-", 0) == 0) {
      ok &= p < prev;
      prev = p;
    } else if (arm.name.rfind("normalized-", 0) == 0) {
      ok &= p < prev && std::abs(p - oracle) <= tolerance * oracle;
    }
  }
  return ok ? 0 : kExitThreshold;
}

// ---- inspect ----

int RunInspect(const Common& common, const std::string& path) {
  const std::string bytes = ReadFileBytes(path);
  const ModelFile file = ParseModelFile(bytes);
  const LoadedSystem sys = LoadSystem(path);
  json j;
  j["file"] = path;
  j["file_bytes"] = bytes.size();
  j["format"] = file.header.value("format", "");
  j["seed"] = common.seed;
  j["parameter_count"] = sys.parameters;
  j["float_bytes"] = sys.float_bytes;
  j["quantized_bytes"] = sys.quantized_bytes;
  if (sys.kind == "hier") {
    const ModelConfig c = ModelConfig::FromJson(file.header.at("config"));
    j["preset"] = c.preset;
    j["hyperparameters"] = {
        {"input embedding size", c.input_embedding_size},
        {"output embedding size", c.output_embedding_size},
        {"# of forward encoder layers", c.forward_encoder_layers},
        {"# of backward encoder layers", c.backward_encoder_layers},
        {"# of decoder layers", c.decoder_layers},
        {"# of encoder cells", c.encoder_cells},
        {"# of decoder cells", c.decoder_cells},
        {"max char n-gram order", c.max_ngram_order},
        {"buckets of char n-grams", c.num_buckets},
        {"beam size", c.beam_size}};
  } else {
    j["hyperparameters"] = file.header.at("config");
  }
  j["metadata"] = file.header.value("metadata", json::object());
  std::cout << j.dump(2) << "\n";
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Hierarchical word and character truecaser"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* c) {
    c->add_option("--seed", common.seed, "Random seed, recorded in outputs");
    c->add_option("--config", common.config_path, "JSON config file")
        ->check(CLI::ExistingFile);
  };
  DecodeArgs decode;
  auto add_decode = [&](CLI::App* c) {
    c->add_option("--mode", decode.mode, "best-path or full-beam")
        ->check(CLI::IsMember({"best-path", "full-beam"}));
    c->add_option("--beam", decode.beam, "Beam size (0 = model default)")
        ->check(CLI::NonNegativeNumber);
  };

  TrainArgs ta;
  auto* train = app.add_subcommand("train", "Train a model from a cased corpus");
  add_common(train);
  train->add_option("--system", ta.system, "hier, char or lexicon")
      ->check(CLI::IsMember({"hier", "char", "lexicon"}));
  train->add_option("--train", ta.train_paths, "Cased training corpus, repeatable")
      ->required();
  train->add_option("--valid", ta.valid_path, "Cased validation corpus");
  train->add_option("--out", ta.out_path, "Output model path")->required();
  train->add_option("--preset", ta.preset, "teacher or student");
  train->add_option("--epochs", ta.epochs);
  train->add_option("--batch-size", ta.batch_size);
  train->add_option("--lr", ta.learning_rate);
  train->add_option("--patience", ta.patience);
  train->add_option("--validation-fraction", ta.validation_fraction);
  train->add_option("--log", ta.log_path, "JSON-lines epoch log");
  train->add_option("--checkpoint", ta.checkpoint_path, "Best-so-far checkpoint path");

  std::string teacher, input, output, student_preset;
  auto* distill = app.add_subcommand("distill", "Decode a corpus with a teacher model");
  add_common(distill);
  add_decode(distill);
  distill->add_option("--teacher", teacher)->required();
  distill->add_option("--input", input, "Input corpus (lowercased before decoding)")
      ->required();
  distill->add_option("--output", output, "Synthetic cased corpus")->required();
  distill->add_option("--student-preset", student_preset,
                      "Check feature compatibility with this preset");

  std::string model;
  auto* predict = app.add_subcommand("predict", "Truecase lines from a file or stdin");
  add_common(predict);
  add_decode(predict);
  predict->add_option("--model", model)->required();
  predict->add_option("--input", input, "Input file (default stdin)");
  predict->add_option("--output", output, "Output file (default stdout)");

  std::string pred, ref, name = "system", out_path;
  bool tsv = false;
  double min_f1 = 0;
  auto* eval = app.add_subcommand("eval", "NL precision, recall and F1");
  add_common(eval);
  add_decode(eval);
  eval->add_option("--pred", pred, "Predicted corpus");
  eval->add_option("--ref", ref, "Reference cased corpus")->required();
  eval->add_option("--model", model, "Decode lowercase(ref) with this model");
  eval->add_option("--name", name, "System name for --tsv");
  eval->add_flag("--tsv", tsv, "Table row instead of JSON");
  eval->add_option("--min-f1", min_f1, "Exit 1 when F1 is below this");
  eval->add_option("--out", out_path, "JSON output path");

  std::vector<std::string> systems;
  std::string corpus, reference;
  int runs = 5, warmup = 1, limit = 0;
  auto* bench = app.add_subcommand("bench", "Single-thread speed and accuracy comparison");
  add_common(bench);
  bench->add_option("--system", systems, "NAME=PATH, repeatable")->required();
  bench->add_option("--corpus", corpus, "Cased corpus")->required();
  bench->add_option("--reference", reference, "Reference system for relative speed");
  bench->add_option("--runs", runs)->check(CLI::PositiveNumber);
  bench->add_option("--warmup", warmup)->check(CLI::NonNegativeNumber);
  bench->add_option("--limit", limit, "Use at most this many sentences");
  bench->add_flag("--tsv", tsv);
  bench->add_option("--out", out_path);

  double rate = 0.5;
  auto* noisify = app.add_subcommand("noisify", "Randomly lowercase capitalized words");
  add_common(noisify);
  noisify->add_option("--input", input)->required();
  noisify->add_option("--output", output)->required();
  noisify->add_option("--rate", rate)->check(CLI::Range(0.0, 1.0));

  std::string lm_train, lm_eval;
  std::vector<std::string> normalizers;
  std::vector<double> rates;
  double normalize_rate = 0.5, tolerance = 0.02;
  bool require_ordering = false;
  auto* lm = app.add_subcommand("lm-exp", "Perplexity under noisy and normalized case");
  add_common(lm);
  lm->add_option("--train", lm_train)->required();
  lm->add_option("--eval", lm_eval)->required();
  lm->add_option("--normalizer", normalizers, "NAME=PATH, repeatable");
  lm->add_option("--rates", rates, "Corruption rates")->delimiter(',');
  lm->add_option("--normalize-rate", normalize_rate)->check(CLI::Range(0.0, 1.0));
  lm->add_flag("--require-ordering", require_ordering,
               "Exit 1 unless perplexities fall in order and normalized arms are near oracle");
  lm->add_option("--tolerance", tolerance, "Relative distance to oracle");
  lm->add_option("--out", out_path);

  std::string inspect_path;
  auto* inspect = app.add_subcommand("inspect", "Print a model manifest");
  add_common(inspect);
  inspect->add_option("model", inspect_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*train) return RunTrain(common, ta, *train);
    if (*distill) return RunDistill(common, teacher, input, output, student_preset, decode);
    if (*predict) return RunPredict(common, model, input, output, decode);
    if (*eval) {
      return RunEval(common, pred, ref, model, name, tsv, min_f1, decode, out_path);
    }
    if (*bench) {
      return RunBench(common, systems, corpus, reference, runs, warmup, limit, tsv, out_path);
    }
    if (*noisify) return RunNoisify(common, input, output, rate);
    if (*lm) {
      return RunLmExp(common, lm_train, lm_eval, normalizers, rates, normalize_rate,
                      require_ordering, tolerance, out_path);
    }
    if (*inspect) return RunInspect(common, inspect_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace
}  // namespace truecase

int main(int argc, char** argv) { return truecase::Main(argc, argv); }
