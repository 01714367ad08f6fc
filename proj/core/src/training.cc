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

#include "truecase/training.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>

#include "truecase/adam.h"
#include "truecase/error.h"
#include "truecase/rng.h"

namespace truecase {
namespace {

using Snapshot = std::vector<Matrix<float>>;

Snapshot Take(const ParameterStore<float>& store) {
  Snapshot s;
  for (std::size_t i = 0; i < store.size(); ++i) s.push_back(store[i].value);
  return s;
}

void Restore(const Snapshot& s, ParameterStore<float>* store) {
  for (std::size_t i = 0; i < store->size(); ++i) (*store)[i].value = s[i];
}

std::vector<LabeledPair> Ingest(const std::vector<std::string>& lines,
                                double max_rejection, std::size_t* rejected) {
  IngestResult r = IngestCorpus(lines);
  const std::size_t considered = r.pairs.size() + r.rejected;
  if (considered > 0 &&
      static_cast<double>(r.rejected) > max_rejection * static_cast<double>(considered)) {
    throw Error(ErrorCode::kRejectionRate,
                std::to_string(r.rejected) + " of " + std::to_string(considered) +
                    " lines are not valid case variants");
  }
  if (rejected != nullptr) *rejected += r.rejected;
  return std::move(r.pairs);
}

double MeanLoss(const HierModel<float>& model, const std::vector<LabeledPair>& pairs) {
  if (pairs.empty()) return 0;
  double sum = 0;
  for (const auto& p : pairs) sum += static_cast<double>(model.SentenceLoss(p));
  return sum / static_cast<double>(pairs.size());
}

}  // namespace

void TrainConfig::Validate() const {
  if (epochs < 1) throw Error(ErrorCode::kConfig, "epochs must be >= 1");
  if (batch_size < 1) throw Error(ErrorCode::kConfig, "batch_size must be >= 1");
  if (!(learning_rate > 0)) throw Error(ErrorCode::kConfig, "learning_rate must be > 0");
  if (!(clip_norm > 0)) throw Error(ErrorCode::kConfig, "clip_norm must be > 0");
  if (!(validation_fraction > 0 && validation_fraction <= 0.5)) {
    throw Error(ErrorCode::kConfig, "validation_fraction must be in (0, 0.5]");
  }
  if (patience < 1) throw Error(ErrorCode::kConfig, "patience must be >= 1");
  if (!(init_range > 0)) throw Error(ErrorCode::kConfig, "init_range must be > 0");
  if (max_validation_decode < 0) {
    throw Error(ErrorCode::kConfig, "max_validation_decode must be >= 0");
  }
  ModelConfig::Preset(preset);
}

nlohmann::json TrainConfig::ToJson() const {
  return {{"epochs", epochs},
          {"batch_size", batch_size},
          {"learning_rate", learning_rate},
          {"clip_norm", clip_norm},
          {"seed", seed},
          {"validation_fraction", validation_fraction},
          {"patience", patience},
          {"preset", preset},
          {"init_range", init_range},
          {"max_rejection_rate", max_rejection_rate},
          {"max_validation_decode", max_validation_decode},
          {"target_train_loss", target_train_loss},
          {"log_path", log_path},
          {"checkpoint_path", checkpoint_path}};
}

TrainConfig TrainConfig::FromJson(const nlohmann::json& j, const TrainConfig& base) {
  if (!j.is_object()) throw Error(ErrorCode::kConfig, "train config must be an object");
  TrainConfig c = base;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "epochs") c.epochs = v.get<int>();
      else if (key == "batch_size") c.batch_size = v.get<int>();
      else if (key == "learning_rate") c.learning_rate = v.get<double>();
      else if (key == "clip_norm") c.clip_norm = v.get<double>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "validation_fraction") c.validation_fraction = v.get<double>();
      else if (key == "patience") c.patience = v.get<int>();
      else if (key == "preset") c.preset = v.get<std::string>();
      else if (key == "init_range") c.init_range = v.get<double>();
      else if (key == "max_rejection_rate") c.max_rejection_rate = v.get<double>();
      else if (key == "max_validation_decode") c.max_validation_decode = v.get<int>();
      else if (key == "target_train_loss") c.target_train_loss = v.get<double>();
      else if (key == "log_path") c.log_path = v.get<std::string>();
      else if (key == "checkpoint_path") c.checkpoint_path = v.get<std::string>();
      else throw Error(ErrorCode::kConfig, "unknown train config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfig, e.what());
  }
  return c;
}

nlohmann::json EpochLog::ToJson() const {
  return {{"epoch", epoch},
          {"train_loss", train_loss},
          {"valid_loss", valid_loss},
          {"valid_f1", valid_f1},
          {"seconds", seconds}};
}

TrainResult Train(const TrainConfig& config, const ModelConfig& model_config,
                  const std::vector<std::string>& cased_lines,
                  const std::vector<std::string>* validation_lines,
                  const EpochCallback& on_epoch) {
  config.Validate();
  TrainResult result{HierModel<float>(model_config), {}, 0, false, 0, 0, 0};
  HierModel<float>& model = result.model;

  std::vector<LabeledPair> train =
      Ingest(cased_lines, config.max_rejection_rate, &result.rejected);
  if (train.empty()) throw Error(ErrorCode::kEmptyCorpus, "no training sentences");
  Rng rng(config.seed);
  std::vector<LabeledPair> valid;
  if (validation_lines != nullptr) {
    valid = Ingest(*validation_lines, config.max_rejection_rate, &result.rejected);
  } else {
    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), 0);
    rng.Shuffle(order.begin(), order.end());
    const std::size_t n_valid = std::min(
        train.size() - 1,
        static_cast<std::size_t>(std::ceil(config.validation_fraction *
                                           static_cast<double>(train.size()))));
    std::vector<LabeledPair> rest;
    for (std::size_t k = 0; k < order.size(); ++k) {
      (k < n_valid ? valid : rest).push_back(std::move(train[order[k]]));
    }
    train = std::move(rest);
  }
  result.train_sentences = train.size();
  result.valid_sentences = valid.size();

  std::vector<Sentence> f1_refs;
  for (const auto& p : valid) {
    if (static_cast<int>(f1_refs.size()) >= config.max_validation_decode) break;
    f1_refs.push_back(p.gold);
  }

  model.InitUniform(rng.Next(), config.init_range);
  model.metadata() = {{"seed", config.seed},
                      {"train_sentences", train.size()},
                      {"valid_sentences", valid.size()}};
  ParameterStore<float>& params = model.params();
  AdamConfig adam_config;
  adam_config.learning_rate = config.learning_rate;
  Adam<float> adam(&params, adam_config);

  std::ofstream log;
  if (!config.log_path.empty()) {
    log.open(config.log_path, std::ios::trunc);
    if (!log) throw Error(ErrorCode::kIo, "cannot write " + config.log_path);
  }

  Snapshot best = Take(params);
  double best_loss = INFINITY;
  double best_f1 = -1;
  int stale = 0;
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  using Clock = std::chrono::steady_clock;

  for (int epoch = 1; epoch <= config.epochs && !result.diverged; ++epoch) {
    const auto start = Clock::now();
    rng.Shuffle(order.begin(), order.end());
    double epoch_loss = 0;
    for (std::size_t b = 0; b < order.size(); b += config.batch_size) {
      const std::size_t end = std::min(order.size(), b + config.batch_size);
      params.ZeroGrad();
      double batch_loss = 0;
      for (std::size_t k = b; k < end; ++k) {
        batch_loss += static_cast<double>(model.AccumulateGradients(train[order[k]]));
      }
      if (!std::isfinite(batch_loss)) {
        result.diverged = true;
        break;
      }
      epoch_loss += batch_loss;
      const float inv = 1.0f / static_cast<float>(end - b);
      for (std::size_t i = 0; i < params.size(); ++i) params[i].grad *= inv;
      ClipGradNorm(&params, config.clip_norm);
      try {
        adam.Step();
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNonFinite) throw;
        result.diverged = true;
        break;
      }
    }
    if (result.diverged || !params.AllFinite()) {
      result.diverged = true;
      break;
    }

    EpochLog entry;
    entry.epoch = epoch;
    entry.train_loss = epoch_loss / static_cast<double>(train.size());
    entry.valid_loss = MeanLoss(model, valid);
    if (!f1_refs.empty()) entry.valid_f1 = EvalModel(model, f1_refs).f1;
    entry.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (!std::isfinite(entry.valid_loss)) {
      result.diverged = true;
      break;
    }
    result.log.push_back(entry);
    if (log) log << entry.ToJson().dump() << "\n" << std::flush;
    if (on_epoch) on_epoch(entry);

    bool improved = false;
    if (entry.valid_loss < best_loss) {
      best_loss = entry.valid_loss;
      best = Take(params);
      result.best_epoch = epoch;
      improved = true;
      if (!config.checkpoint_path.empty()) {
        model.metadata()["epoch"] = epoch;
        model.Save(config.checkpoint_path);
      }
    }
    if (entry.valid_f1 > best_f1) {
      best_f1 = entry.valid_f1;
      improved = true;
    }
    stale = improved ? 0 : stale + 1;
    if (stale >= config.patience) break;
    if (config.target_train_loss > 0 && entry.train_loss < config.target_train_loss) {
      break;
    }
  }
  Restore(best, &params);
  model.metadata()["epoch"] = result.best_epoch;
  return result;
}

std::vector<std::string> Distill(const HierModel<float>& teacher,
                                 const std::vector<std::string>& lower_lines,
                                 DecodeMode mode, int beam_size) {
  std::vector<std::string> out;
  for (const auto& line : lower_lines) {
    const Sentence s = Sentence::Parse(Lowercase(line));
    if (s.empty()) continue;
    out.push_back(teacher.Truecase(s, mode, beam_size).Join());
  }
  return out;
}

void CheckDistillCompatible(const ModelConfig& teacher, const ModelConfig& student) {
  if (teacher.max_ngram_order != student.max_ngram_order ||
      teacher.num_buckets != student.num_buckets ||
      teacher.dedupe_ngrams != student.dedupe_ngrams) {
    throw Error(ErrorCode::kConfig,
                "teacher and student feature configs differ (n-gram order, "
                "buckets or dedupe)");
  }
}

template <typename T>
EvalReport EvalModel(const HierModel<T>& model, const std::vector<Sentence>& references,
                     DecodeMode mode, int beam_size) {
  std::vector<Sentence> predictions;
  predictions.reserve(references.size());
  for (const auto& ref : references) {
    predictions.push_back(model.Truecase(ref.Lowercased(), mode, beam_size));
  }
  return EvalNl(predictions, references);
}

template EvalReport EvalModel<float>(const HierModel<float>&,
                                     const std::vector<Sentence>&, DecodeMode, int);
template EvalReport EvalModel<double>(const HierModel<double>&,
                                      const std::vector<Sentence>&, DecodeMode, int);

LabelAccuracy MeasureLabelAccuracy(const HierModel<float>& model,
                                   const std::vector<LabeledPair>& pairs) {
  std::size_t words = 0, words_ok = 0, chars = 0, chars_ok = 0;
  for (const auto& p : pairs) {
    const auto enc = model.Encode(p.lower);
    const auto top = model.BeamSearchWords(enc, 0).front();
    for (std::size_t i = 0; i < p.lower.size(); ++i) {
      ++words;
      words_ok += top.labels[i] == static_cast<std::uint8_t>(p.word_labels[i]);
      if (p.word_labels[i] != WordLabel::kOther) continue;
      const auto ch = model.BeamSearchChars(enc, p.lower[i], i, 0).front();
      const auto cps = DecodeUtf8(p.lower[i]);
      for (std::size_t j = 0; j < cps.size(); ++j) {
        if (!IsCasedPosition(cps[j])) continue;
        ++chars;
        chars_ok += ch.labels[j] == static_cast<std::uint8_t>(p.char_labels[i][j]);
      }
    }
  }
  return {words ? static_cast<double>(words_ok) / words : 1.0,
          chars ? static_cast<double>(chars_ok) / chars : 1.0};
}

}  // namespace truecase
