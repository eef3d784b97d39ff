// Copyright 2026 The Spotbench Authors
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

#include "spotbench/curriculum.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "spotbench/errors.h"
#include "spotbench/format.h"
#include "spotbench/rng.h"

namespace spotbench::curriculum {
namespace {

struct LineContext {
  const std::string& file;
  std::size_t line;

  [[noreturn]] void Fail(const std::string& reason) const { throw ParseError(file, line, reason); }
};

long long ParseCount(std::string_view v, const LineContext& at, const char* what) {
  long long n = 0;
  std::string digits;
  for (char c : Trim(v)) {
    if (c != '_' && c != '\'') digits.push_back(c);
  }
  if (!ParseInt(digits, n) || n < 0) at.Fail(std::string("bad ") + what + " '" + std::string(v) + "'");
  return n;
}

double ParseNumber(std::string_view v, const LineContext& at, const char* what) {
  double x = 0.0;
  if (!ParseReal(v, x) || !std::isfinite(x)) {
    at.Fail(std::string("bad ") + what + " '" + std::string(v) + "'");
  }
  return x;
}

std::vector<DecayPoint> ParseDecay(std::string_view v, const LineContext& at) {
  std::vector<DecayPoint> out;
  if (Trim(v) == "none" || Trim(v).empty()) return out;
  for (auto item : Split(v, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) at.Fail("decay point needs <iteration>:<factor>");
    out.push_back({ParseCount(item.substr(0, colon), at, "decay iteration"),
                   ParseNumber(item.substr(colon + 1), at, "decay factor")});
  }
  return out;
}

int ParseStageIndex(std::string_view v, const LineContext& at) {
  const long long k = ParseCount(v, at, "stage index");
  if (k < 1 || k > 1'000'000) at.Fail("stage index must be a positive integer");
  return static_cast<int>(k);
}

std::string ReplaceAll(std::string s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

std::vector<std::string> SplitIds(std::string_view list) {
  std::vector<std::string> ids;
  for (auto part : Split(list, ',')) {
    const auto id = Trim(part);
    if (id.empty()) throw ConfigError("empty dataset id in '" + std::string(list) + "'");
    ids.emplace_back(id);
  }
  return ids;
}

std::string Join(const std::vector<std::string>& ids, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += sep;
    out += ids[i];
  }
  return out;
}

std::string FormatSchedule(const std::vector<std::pair<long long, double>>& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ";";
    out += std::to_string(s[i].first) + ":" + FormatShortest(s[i].second);
  }
  return out;
}

}  // namespace

MixingWeights ComputeMixingWeights(double lambda) {
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw ArgumentError("lambda must be finite and non-negative");
  }
  return {1.0 / (1.0 + lambda), lambda / (1.0 + lambda)};
}

MixingWeights ComputeMixingWeights(const DomainPair& dp) { return ComputeMixingWeights(dp.lambda); }

PlanConfig ParsePlanConfig(std::string_view text, const std::string& source_name) {
  PlanConfig cfg;
  std::set<std::string> seen;
  std::size_t lineno = 0;
  for (auto raw : Split(text, '\n')) {
    ++lineno;
    const LineContext at{source_name, lineno};
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) at.Fail("expected key = value");
    const std::string key(Trim(line.substr(0, eq)));
    const std::string_view value = Trim(line.substr(eq + 1));
    if (key.empty()) at.Fail("empty key");
    if (!seen.insert(key).second) at.Fail("duplicate key '" + key + "'");
    const auto dot = key.find('.');
    const std::string head = key.substr(0, dot);
    const std::string tail = dot == std::string::npos ? "" : key.substr(dot + 1);
    if (dot != std::string::npos && tail.empty()) at.Fail("empty key suffix in '" + key + "'");

    if (head == "dataset" && !tail.empty()) {
      cfg.dataset_sizes[tail] = ParseCount(value, at, "dataset size");
    } else if (key == "chain") {
      cfg.chain = std::string(value);
    } else if (key == "iterations") {
      cfg.iterations = ParseCount(value, at, "iterations");
    } else if (head == "iterations") {
      cfg.stage_iterations[ParseStageIndex(tail, at)] = ParseCount(value, at, "iterations");
    } else if (key == "base_lr") {
      cfg.base_lr = ParseNumber(value, at, "base_lr");
    } else if (head == "base_lr") {
      cfg.stage_base_lr[ParseStageIndex(tail, at)] = ParseNumber(value, at, "base_lr");
    } else if (key == "decay") {
      cfg.decay = ParseDecay(value, at);
    } else if (head == "decay") {
      cfg.stage_decay[ParseStageIndex(tail, at)] = ParseDecay(value, at);
    } else if (key == "label_fraction") {
      cfg.label_fraction = ParseNumber(value, at, "label_fraction");
    } else if (head == "fraction" && !tail.empty()) {
      cfg.fractions[tail] = ParseNumber(value, at, "fraction");
    } else if (key == "lambda") {
      cfg.lambda = ParseNumber(value, at, "lambda");
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(ParseCount(value, at, "seed"));
    } else if (key == "optimizer") {
      cfg.optimizer = std::string(value);
    } else {
      throw ConfigError(source_name + ":" + std::to_string(lineno) + ": unknown key '" + key +
                        "'");
    }
  }
  return cfg;
}

std::vector<std::string> SplitChain(std::string_view chain) {
  const std::string text = ReplaceAll(std::string(chain), "\xE2\x86\x92", "->");
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (depth < 0) throw ConfigError("unbalanced parentheses in chain '" + text + "'");
    if (depth == 0 && text.compare(i, 2, "->") == 0) {
      out.emplace_back(Trim(std::string_view(text).substr(start, i - start)));
      start = i + 2;
      ++i;
    }
  }
  if (depth != 0) throw ConfigError("unbalanced parentheses in chain '" + text + "'");
  out.emplace_back(Trim(std::string_view(text).substr(start)));
  for (const auto& e : out) {
    if (e.empty()) throw ConfigError("empty element in chain '" + text + "'");
  }
  return out;
}

CurriculumPlan BuildPlan(const PlanConfig& cfg) {
  if (Trim(cfg.chain).empty()) throw ConfigError("plan has no chain");
  const auto elements = SplitChain(cfg.chain);
  CurriculumPlan plan;
  plan.seed = cfg.seed;
  plan.hyper.optimizer_name = cfg.optimizer;
  const auto require = [&](const std::string& id) {
    if (!cfg.dataset_sizes.contains(id)) throw ConfigError("unknown dataset id '" + id + "'");
  };
  const auto fraction_of = [&](const std::string& id) {
    const auto it = cfg.fractions.find(id);
    return it == cfg.fractions.end() ? cfg.label_fraction : it->second;
  };
  for (const auto& [id, f] : cfg.fractions) require(id);

  for (std::size_t k = 0; k < elements.size(); ++k) {
    const std::string& el = elements[k];
    const int index = static_cast<int>(k) + 1;
    Stage st;
    std::string label;
    const auto open = el.find('(');
    if (open != std::string::npos) {
      if (el.back() != ')') throw ConfigError("malformed chain element '" + el + "'");
      const std::string op(Trim(std::string_view(el).substr(0, open)));
      const std::string_view args = std::string_view(el).substr(open + 1, el.size() - open - 2);
      if (op == "mix") {
        const auto ids = SplitIds(args);
        for (const auto& id : ids) st.mix.push_back({id, 1.0, fraction_of(id)});
        label = "mix(" + Join(ids, "+") + ")";
      } else if (op == "adapt") {
        const auto bar = args.find('|');
        if (bar == std::string_view::npos) {
          throw ConfigError("adapt(...) needs sources | targets in '" + el + "'");
        }
        DomainPair dp{SplitIds(args.substr(0, bar)), SplitIds(args.substr(bar + 1)), cfg.lambda};
        const MixingWeights w = ComputeMixingWeights(dp);
        for (const auto& id : dp.source_ids) {
          st.mix.push_back({id, w.p_source / dp.source_ids.size(), fraction_of(id)});
        }
        for (const auto& id : dp.target_ids) {
          st.mix.push_back({id, w.p_target / dp.target_ids.size(), fraction_of(id)});
        }
        label = "adapt(" + Join(dp.source_ids, "+") + "|" + Join(dp.target_ids, "+") + ")";
        st.domain_pair = std::move(dp);
      } else {
        throw ConfigError("unknown chain operator '" + op + "'");
      }
    } else {
      st.mix.push_back({el, 1.0, fraction_of(el)});
      label = el;
    }
    for (const auto& m : st.mix) require(m.dataset_id);
    st.name = "stage" + std::to_string(index) + ":" + label;
    const auto it_iter = cfg.stage_iterations.find(index);
    st.iterations = it_iter == cfg.stage_iterations.end() ? cfg.iterations : it_iter->second;
    const auto it_lr = cfg.stage_base_lr.find(index);
    st.base_lr = it_lr == cfg.stage_base_lr.end() ? cfg.base_lr : it_lr->second;
    const auto it_decay = cfg.stage_decay.find(index);
    st.decay = it_decay == cfg.stage_decay.end() ? cfg.decay : it_decay->second;
    st.seed = Rng::At(cfg.seed, k);
    plan.stages.push_back(std::move(st));
  }
  const auto check_index = [&](const auto& overrides, const char* what) {
    for (const auto& [index, v] : overrides) {
      if (index > static_cast<int>(plan.stages.size())) {
        throw ConfigError(std::string(what) + "." + std::to_string(index) +
                          " refers to a missing stage");
      }
    }
  };
  check_index(cfg.stage_iterations, "iterations");
  check_index(cfg.stage_base_lr, "base_lr");
  check_index(cfg.stage_decay, "decay");
  ValidatePlan(plan);
  return plan;
}

void ValidatePlan(const CurriculumPlan& plan) {
  if (plan.stages.empty()) throw ConfigError("plan has no stages");
  std::set<std::string> names;
  for (const auto& st : plan.stages) {
    const std::string where = "stage '" + st.name + "': ";
    if (!names.insert(st.name).second) throw ConfigError(where + "duplicate stage name");
    if (st.mix.empty()) throw ConfigError(where + "no datasets");
    if (st.iterations <= 0) throw ConfigError(where + "iterations must be positive");
    if (!(st.base_lr > 0.0) || !std::isfinite(st.base_lr)) {
      throw ConfigError(where + "base_lr must be positive");
    }
    double total = 0.0;
    std::set<std::string> ids;
    for (const auto& m : st.mix) {
      if (!ids.insert(m.dataset_id).second) {
        throw ConfigError(where + "dataset '" + m.dataset_id + "' listed twice");
      }
      if (!(m.weight >= 0.0) || !std::isfinite(m.weight)) {
        throw ConfigError(where + "weights must be finite and non-negative");
      }
      if (!(m.label_fraction > 0.0 && m.label_fraction <= 1.0)) {
        throw ConfigError(where + "label fraction must lie in (0, 1]");
      }
      total += m.weight;
    }
    if (total <= 0.0) throw ConfigError(where + "all mixing weights are zero");
    long long prev = 0;
    for (const auto& d : st.decay) {
      if (d.iteration <= prev || d.iteration >= st.iterations) {
        throw ConfigError(where + "decay iterations must increase strictly within (0, iterations)");
      }
      if (!(d.factor > 0.0) || !std::isfinite(d.factor)) {
        throw ConfigError(where + "decay factor must be positive");
      }
      prev = d.iteration;
    }
  }
}

annot::Json PlanToJson(const CurriculumPlan& plan) {
  annot::Json j;
  j["seed"] = plan.seed;
  j["rng"] = "splitmix64-counter";
  j["hyper"] = {{"optimizer", plan.hyper.optimizer_name},
                {"beta1", plan.hyper.beta1},
                {"beta2", plan.hyper.beta2},
                {"weight_decay", plan.hyper.weight_decay},
                {"queries", plan.hyper.queries},
                {"control_points", plan.hyper.control_points},
                {"max_text_len", plan.hyper.max_text_len}};
  j["stages"] = annot::Json::array();
  for (const auto& st : plan.stages) {
    annot::Json s;
    s["name"] = st.name;
    s["iterations"] = st.iterations;
    s["base_lr"] = st.base_lr;
    s["decay"] = annot::Json::array();
    for (const auto& d : st.decay) s["decay"].push_back({d.iteration, d.factor});
    s["lr_schedule"] = annot::Json::array();
    for (const auto& [it, lr] : LrSchedule(st)) s["lr_schedule"].push_back({it, lr});
    s["seed"] = st.seed;
    s["mix"] = annot::Json::array();
    for (const auto& m : st.mix) {
      s["mix"].push_back(
          {{"dataset", m.dataset_id}, {"weight", m.weight}, {"label_fraction", m.label_fraction}});
    }
    if (st.domain_pair) {
      const auto w = ComputeMixingWeights(*st.domain_pair);
      s["lambda"] = st.domain_pair->lambda;
      s["p_source"] = w.p_source;
      s["p_target"] = w.p_target;
    }
    j["stages"].push_back(std::move(s));
  }
  return j;
}

std::string PlanHash(const CurriculumPlan& plan) {
  return HashHex(Fnv1a64(PlanToJson(plan).dump()));
}

std::vector<long long> LabelFractionSubset(long long dataset_size, double fraction,
                                           std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ArgumentError("fraction must lie in (0, 1]");
  if (dataset_size < 0) throw ArgumentError("dataset size must be non-negative");
  std::vector<long long> perm(static_cast<std::size_t>(dataset_size));
  for (long long i = 0; i < dataset_size; ++i) perm[i] = i;
  Rng rng(seed);
  for (long long i = dataset_size - 1; i > 0; --i) {
    const auto j = static_cast<long long>(rng.Below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[i], perm[j]);
  }
  // Relative slack so that e.g. 0.29 * 100 keeps 29 elements.
  const double exact = fraction * static_cast<double>(dataset_size);
  const auto keep = static_cast<long long>(std::floor(exact * (1.0 + 1e-12)));
  perm.resize(static_cast<std::size_t>(std::min(keep, dataset_size)));
  return perm;
}

std::uint64_t SubsetSeed(std::uint64_t plan_seed, std::string_view dataset_id) {
  return SplitMix64(plan_seed ^ Fnv1a64(dataset_id));
}

std::vector<std::pair<long long, double>> LrSchedule(const Stage& stage) {
  std::vector<std::pair<long long, double>> out = {{0, stage.base_lr}};
  double lr = stage.base_lr;
  for (const auto& d : stage.decay) {
    lr *= d.factor;
    out.emplace_back(d.iteration, lr);
  }
  return out;
}

void ForEachDraw(const CurriculumPlan& plan, const std::map<std::string, long long>& sizes,
                 const std::function<void(std::size_t, const ManifestEntry&)>& fn) {
  ValidatePlan(plan);
  for (std::size_t s = 0; s < plan.stages.size(); ++s) {
    const Stage& st = plan.stages[s];
    const std::size_t n = st.mix.size();
    std::vector<std::vector<long long>> subsets(n);
    std::vector<double> cumulative(n);
    double total = 0.0;
    for (const auto& m : st.mix) total += m.weight;
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& m = st.mix[i];
      const auto it = sizes.find(m.dataset_id);
      if (it == sizes.end()) {
        throw ConfigError("no size known for dataset '" + m.dataset_id + "'");
      }
      subsets[i] = LabelFractionSubset(it->second, m.label_fraction,
                                       SubsetSeed(plan.seed, m.dataset_id));
      if (m.weight > 0.0) {
        if (subsets[i].empty()) {
          throw ConfigError("stage '" + st.name + "': empty subset for dataset '" +
                            m.dataset_id + "'");
        }
        last_positive = i;
      }
      acc += m.weight / total;
      cumulative[i] = acc;
    }
    Rng rng(st.seed);
    ManifestEntry e;
    for (long long it = 0; it < st.iterations; ++it) {
      const double u = rng.Uniform();
      std::size_t pick = last_positive;
      for (std::size_t i = 0; i < n; ++i) {
        if (st.mix[i].weight > 0.0 && u < cumulative[i]) {
          pick = i;
          break;
        }
      }
      const auto& subset = subsets[pick];
      e.iteration = it;
      e.dataset = static_cast<int>(pick);
      e.sample_index = subset[rng.Below(subset.size())];
      fn(s, e);
    }
  }
}

Manifest SampleManifest(const CurriculumPlan& plan,
                        const std::map<std::string, long long>& sizes) {
  Manifest out(plan.stages.size());
  for (std::size_t s = 0; s < plan.stages.size(); ++s) {
    out[s].stage = plan.stages[s].name;
    for (const auto& m : plan.stages[s].mix) out[s].dataset_ids.push_back(m.dataset_id);
    out[s].entries.reserve(static_cast<std::size_t>(plan.stages[s].iterations));
  }
  ForEachDraw(plan, sizes,
              [&](std::size_t s, const ManifestEntry& e) { out[s].entries.push_back(e); });
  return out;
}

void WriteManifestCsv(const CurriculumPlan& plan, const std::map<std::string, long long>& sizes,
                      std::ostream& out) {
  const auto& h = plan.hyper;
  out << "# " << kToolVersion << " training manifest\n";
  out << "# plan_hash: " << PlanHash(plan) << "\n";
  out << "# seed: " << plan.seed << "\n";
  out << "# rng: splitmix64-counter\n";
  out << "# hyper: optimizer=" << h.optimizer_name << " beta1=" << FormatShortest(h.beta1)
      << " beta2=" << FormatShortest(h.beta2) << " weight_decay=" << FormatShortest(h.weight_decay)
      << " queries=" << h.queries << " control_points=" << h.control_points
      << " max_text_len=" << h.max_text_len << "\n";
  out << "# mixing: lambda realized as a sampling ratio p_source = 1/(1+lambda), "
         "p_target = lambda/(1+lambda)\n";
  for (std::size_t s = 0; s < plan.stages.size(); ++s) {
    const Stage& st = plan.stages[s];
    out << "# stage " << s + 1 << ": name=" << st.name << " iterations=" << st.iterations
        << " lr_schedule=" << FormatSchedule(LrSchedule(st)) << " seed=" << st.seed << "\n";
    double total = 0.0;
    for (const auto& m : st.mix) total += m.weight;
    for (const auto& m : st.mix) {
      const auto it = sizes.find(m.dataset_id);
      out << "#   dataset=" << m.dataset_id << " p=" << FormatShortest(m.weight / total)
          << " label_fraction=" << FormatShortest(m.label_fraction)
          << " size=" << (it == sizes.end() ? -1 : it->second) << "\n";
    }
    if (st.domain_pair) {
      const auto w = ComputeMixingWeights(*st.domain_pair);
      out << "#   lambda=" << FormatShortest(st.domain_pair->lambda)
          << " p_source=" << FormatShortest(w.p_source)
          << " p_target=" << FormatShortest(w.p_target) << "\n";
    }
  }
  out << "iteration,stage,dataset_id,sample_index\n";
  std::string buf;
  buf.reserve(1 << 16);
  char num[24];
  const auto append_int = [&](long long v) {
    const auto r = std::to_chars(num, num + sizeof(num), v);
    buf.append(num, r.ptr);
  };
  ForEachDraw(plan, sizes, [&](std::size_t s, const ManifestEntry& e) {
    append_int(e.iteration);
    buf += ',';
    buf += plan.stages[s].name;
    buf += ',';
    buf += plan.stages[s].mix[e.dataset].dataset_id;
    buf += ',';
    append_int(e.sample_index);
    buf += '\n';
    if (buf.size() > (1 << 16) - 256) {
      out << buf;
      buf.clear();
    }
  });
  out << buf;
}

}  // namespace spotbench::curriculum
