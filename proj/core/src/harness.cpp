// SPDX-License-Identifier: Apache-2.0
#include "binrank/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "binrank/bm_format.hpp"
#include "binrank/errors.hpp"
#include "binrank/oracle.hpp"
#include "binrank/rng.hpp"

namespace binrank {

namespace {

bool known_algorithm(const std::string& a) {
  return a == "adaptive" || a == "nonadaptive" || a == "baseline" || a == "exact";
}

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  return it->get<T>();
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

void ExperimentPlan::validate() const {
  if (instances.empty()) throw ContractError("plan: at least one instance is required");
  if (algorithms.empty()) throw ContractError("plan: at least one algorithm is required");
  if (trials < 1) throw ContractError("plan: trials must be >= 1");
  if (threads < 1) throw ContractError("plan: threads must be >= 1");
  for (const auto& a : algorithms)
    if (!known_algorithm(a)) throw ContractError("plan: unknown algorithm '" + a + "'");
  std::map<std::string, int> ids;
  for (const auto& inst : instances) {
    if (inst.id.empty()) throw ContractError("plan: instance without id");
    if (++ids[inst.id] > 1) throw ContractError("plan: duplicate instance id '" + inst.id + "'");
    if (inst.spec.has_value() == inst.file.has_value())
      throw ContractError("plan: instance '" + inst.id + "' needs exactly one of kind or file");
    if (!(inst.epsilon > 0.0 && inst.epsilon < 1.0)) throw ContractError("plan: epsilon must lie in (0,1)");
  }
}

ExperimentPlan parse_plan(const nlohmann::json& j, const std::string& base_dir) {
  try {
    if (!j.is_object()) throw ParseError("plan: top level must be an object");
    const int version = get_or<int>(j, "schema_version", kSchemaVersion);
    if (version != kSchemaVersion) throw ParseError("plan: unsupported schema_version " + std::to_string(version));

    ExperimentPlan plan;
    plan.seed = get_or<std::uint64_t>(j, "seed", 0);
    plan.trials = get_or<unsigned>(j, "trials", 1);
    plan.threads = get_or<unsigned>(j, "threads", 1);
    plan.allow_unknown = get_or<bool>(j, "allow_unknown", false);
    plan.timing = get_or<bool>(j, "timing", false);
    plan.verify = get_or<bool>(j, "verify", false);
    plan.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    if (auto out = j.find("output"); out != j.end()) {
      if (out->contains("path")) {
        std::filesystem::path p = out->at("path").get<std::string>();
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        plan.output_path = p.string();
      }
      const auto format = get_or<std::string>(*out, "format", "csv");
      if (format == "csv")
        plan.format = OutputFormat::Csv;
      else if (format == "jsonl")
        plan.format = OutputFormat::JsonLines;
      else
        throw ParseError("plan: output format must be csv or jsonl");
    }

    const auto& insts = j.at("instances");
    if (!insts.is_array()) throw ParseError("plan: instances must be an array");
    std::size_t counter = 0;
    for (const auto& ij : insts) {
      PlanInstance inst;
      inst.id = get_or<std::string>(ij, "id", "instance" + std::to_string(counter));
      ++counter;
      const unsigned d = get_or<unsigned>(ij, "d", 1);
      const unsigned s = get_or<unsigned>(ij, "s", 1);
      inst.d = get_or<unsigned>(ij, "test_d", d);
      inst.s = get_or<unsigned>(ij, "test_s", s);
      inst.epsilon = get_or<double>(ij, "epsilon", 0.1);
      if (ij.contains("file")) {
        std::filesystem::path p = ij.at("file").get<std::string>();
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        inst.file = p.string();
      }
      if (ij.contains("kind")) {
        InstanceSpec spec;
        const auto kind_name = ij.at("kind").get<std::string>();
        const auto kind = parse_instance_kind(kind_name);
        if (!kind) throw ParseError("plan: unknown instance kind '" + kind_name + "'");
        spec.kind = *kind;
        spec.n = get_or<Index>(ij, "n", 0);
        spec.m = get_or<Index>(ij, "m", 0);
        spec.d = d;
        spec.s = s;
        spec.density = get_or<double>(ij, "density", 0.5);
        if (ij.contains("far_epsilon")) spec.far_epsilon = ij.at("far_epsilon").get<double>();
        if (ij.contains("strategy")) {
          const auto name = ij.at("strategy").get<std::string>();
          const auto strategy = parse_far_strategy(name);
          if (!strategy) throw ParseError("plan: unknown far strategy '" + name + "'");
          spec.strategy = *strategy;
        }
        // Instances without an explicit seed derive one from the master seed at run time.
        spec.seed = get_or<std::uint64_t>(ij, "seed", 0);
        inst.seed_from_master = !ij.contains("seed");
        inst.spec = spec;
      }
      plan.instances.push_back(std::move(inst));
    }
    plan.validate();
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("plan: ") + e.what());
  } catch (const ContractError& e) {
    throw ParseError(e.what());
  }
}

std::uint64_t trial_seed(std::uint64_t master, const std::string& instance_id, const std::string& algorithm,
                         unsigned trial) {
  std::uint64_t h = Rng::derive(master, stable_hash(instance_id));
  h = Rng::derive(h, stable_hash(algorithm));
  return Rng::derive(h, trial);
}

namespace {

struct Materialized {
  BinaryMatrix matrix;
};

// Proven per-run query bound, 0 when there is none.
std::uint64_t budget_for(const std::string& alg, const PlanInstance& inst, const BinaryMatrix& mat) {
  if (alg == "adaptive") return adaptive_query_budget(inst.d, inst.s, inst.epsilon);
  if (alg == "nonadaptive") return nonadaptive_table_size(nonadaptive_draws(inst.d, inst.s, inst.epsilon));
  if (alg == "exact") {
    const double nm = static_cast<double>(mat.size());
    if (nm * inst.epsilon < 2.0 * inst.d * inst.d) return mat.size();
    return adaptive_query_budget(inst.d, inst.s, inst.epsilon / 2.0);
  }
  return 0;
}

struct TrialOutcome {
  nlohmann::json record;
  Verdict verdict = Verdict::AbortUnknown;
  std::uint64_t queries = 0;
  bool budget_violation = false;
  bool invariant_violation = false;
  double seconds = 0;
};

}  // namespace

PlanResult run_plan(const ExperimentPlan& plan) {
  plan.validate();

  std::vector<Materialized> mats;
  mats.reserve(plan.instances.size());
  for (const auto& inst : plan.instances) {
    if (inst.file) {
      mats.push_back({load_bm(*inst.file)});
    } else {
      InstanceSpec spec = *inst.spec;
      if (inst.seed_from_master) spec.seed = Rng::derive(plan.seed, stable_hash(inst.id));
      mats.push_back({generate(spec).matrix});
    }
  }

  const std::size_t na = plan.algorithms.size();
  const std::size_t per_instance = na * plan.trials;
  const std::size_t total = plan.instances.size() * per_instance;

  std::vector<std::uint64_t> budgets(plan.instances.size() * na);
  for (std::size_t i = 0; i < plan.instances.size(); ++i)
    for (std::size_t a = 0; a < na; ++a) budgets[i * na + a] = budget_for(plan.algorithms[a], plan.instances[i], mats[i].matrix);

  std::vector<TrialOutcome> outcomes(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= total) return;
      const std::size_t ii = task / per_instance;
      const std::size_t ai = (task % per_instance) / plan.trials;
      const auto trial = static_cast<unsigned>(task % plan.trials);
      const PlanInstance& inst = plan.instances[ii];
      const std::string& alg = plan.algorithms[ai];
      TrialOutcome& out = outcomes[task];

      TesterConfig cfg;
      cfg.d = inst.d;
      cfg.s = inst.s;
      cfg.epsilon = inst.epsilon;
      cfg.seed = trial_seed(plan.seed, inst.id, alg, trial);
      cfg.verify = plan.verify;
      Algorithm which = Algorithm::Adaptive;
      if (alg == "exact")
        cfg.mode = Mode::Exactly;
      else
        which = *parse_algorithm(alg);

      out.record = {{"schema_version", kSchemaVersion}, {"instance", inst.id}, {"trial", trial},
                    {"d", inst.d},                      {"s", inst.s},       {"epsilon", inst.epsilon}};
      const auto t0 = std::chrono::steady_clock::now();
      try {
        MatrixOracle oracle(mats[ii].matrix);
        const TesterReport rep = run_tester(which, oracle, cfg);
        out.verdict = rep.verdict;
        out.queries = rep.queries;
        const std::uint64_t budget = budgets[ii * na + ai];
        if (alg == "nonadaptive")
          out.budget_violation = rep.queries != budget;
        else
          out.budget_violation = budget != 0 && rep.queries > budget;
        out.invariant_violation = !rep.violations.empty();
        nlohmann::json r = rep.to_json();
        for (auto& [k, v] : r.items()) out.record[k] = v;
        out.record["algorithm"] = alg;
      } catch (const InvariantViolation& e) {
        out.invariant_violation = true;
        out.record["algorithm"] = alg;
        out.record["verdict"] = "ERROR";
        out.record["error"] = e.what();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
        return;
      }
      out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };

  const unsigned nthreads = std::min<std::size_t>(plan.threads, std::max<std::size_t>(total, 1));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < nthreads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  PlanResult result;
  for (std::size_t ii = 0; ii < plan.instances.size(); ++ii) {
    for (std::size_t ai = 0; ai < na; ++ai) {
      const PlanInstance& inst = plan.instances[ii];
      AggregateRow row;
      row.instance_id = inst.id;
      row.algorithm = plan.algorithms[ai];
      row.d = inst.d;
      row.s = inst.s;
      row.epsilon = inst.epsilon;
      row.n = mats[ii].matrix.rows();
      row.m = mats[ii].matrix.cols();
      row.trials = plan.trials;
      row.theoretical_budget = budgets[ii * na + ai];
      double sum = 0;
      for (unsigned t = 0; t < plan.trials; ++t) {
        TrialOutcome& out = outcomes[ii * per_instance + ai * plan.trials + t];
        switch (out.verdict) {
          case Verdict::Accept:
            ++row.accepts;
            break;
          case Verdict::Reject:
            ++row.rejects;
            break;
          case Verdict::AbortUnknown:
            if (!out.invariant_violation) ++row.unknown;
            break;
        }
        sum += static_cast<double>(out.queries);
        row.max_queries = std::max(row.max_queries, out.queries);
        row.wall_time += out.seconds;
        if (out.budget_violation) {
          ++result.budget_violations;
          result.messages.push_back(inst.id + "/" + row.algorithm + " trial " + std::to_string(t) +
                                    ": query budget violated");
        }
        if (out.invariant_violation) {
          ++result.invariant_violations;
          result.messages.push_back(inst.id + "/" + row.algorithm + " trial " + std::to_string(t) +
                                    ": invariant violation");
        }
        result.trials.push_back(std::move(out.record));
      }
      result.unknown += row.unknown;
      row.accept_rate = static_cast<double>(row.accepts) / plan.trials;
      row.mean_queries = sum / plan.trials;
      row.utilization = row.theoretical_budget == 0
                            ? 0.0
                            : static_cast<double>(row.max_queries) / static_cast<double>(row.theoretical_budget);
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

std::string aggregates_csv(const std::vector<AggregateRow>& rows, bool with_timing) {
  std::ostringstream os;
  os << "schema_version,instance_id,algorithm,d,s,epsilon,n,m,trials,accepts,rejects,unknown,accept_rate,"
        "mean_queries,max_queries,theoretical_budget,utilization";
  if (with_timing) os << ",wall_time";
  os << '\n';
  for (const auto& r : rows) {
    os << kSchemaVersion << ',' << r.instance_id << ',' << r.algorithm << ',' << r.d << ',' << r.s << ','
       << fmt_double(r.epsilon) << ',' << r.n << ',' << r.m << ',' << r.trials << ',' << r.accepts << ','
       << r.rejects << ',' << r.unknown << ',' << fmt_double(r.accept_rate) << ',' << fmt_double(r.mean_queries)
       << ',' << r.max_queries << ',' << r.theoretical_budget << ',' << fmt_double(r.utilization);
    if (with_timing) os << ',' << fmt_double(r.wall_time);
    os << '\n';
  }
  return os.str();
}

std::string trials_jsonl(const PlanResult& result) {
  std::string out;
  for (const auto& t : result.trials) {
    out += t.dump();
    out += '\n';
  }
  return out;
}

ComparisonTable compare_table(const std::vector<AggregateRow>& rows, const std::string& reference,
                              const std::string& other) {
  if (rows.empty()) throw ContractError("compare_table: no rows");
  struct Pair {
    const AggregateRow* ref = nullptr;
    const AggregateRow* oth = nullptr;
  };
  std::map<std::string, Pair> by_instance;
  for (const auto& r : rows) {
    if (r.algorithm == reference) by_instance[r.instance_id].ref = &r;
    if (r.algorithm == other) by_instance[r.instance_id].oth = &r;
  }
  struct Acc {
    std::size_t count = 0;
    double ref = 0;
    double oth = 0;
    double ratio = 0;
  };
  std::map<unsigned, Acc> by_d;
  for (const auto& [id, p] : by_instance) {
    if (p.ref == nullptr || p.oth == nullptr)
      throw ContractError("compare_table: instance '" + id + "' lacks a " + (p.ref ? other : reference) + " row");
    double ratio = 1.0;
    if (p.ref->mean_queries > 0)
      ratio = p.oth->mean_queries / p.ref->mean_queries;
    else if (p.oth->mean_queries > 0)
      throw ContractError("compare_table: instance '" + id + "' has zero reference queries");
    Acc& acc = by_d[p.ref->d];
    ++acc.count;
    acc.ref += p.ref->mean_queries;
    acc.oth += p.oth->mean_queries;
    acc.ratio += ratio;
  }
  if (by_d.empty()) throw ContractError("compare_table: no instance has both algorithms");
  ComparisonTable table{reference, other, {}};
  for (const auto& [d, acc] : by_d) {
    const auto k = static_cast<double>(acc.count);
    table.rows.push_back({d, acc.count, acc.ref / k, acc.oth / k, acc.ratio / k});
  }
  return table;
}

std::string ComparisonTable::to_csv() const {
  std::ostringstream os;
  os << "schema_version,d,instances," << reference << "_mean_queries," << other << "_mean_queries,ratio\n";
  for (const auto& r : rows)
    os << kSchemaVersion << ',' << r.d << ',' << r.instances << ',' << fmt_double(r.reference_mean) << ','
       << fmt_double(r.other_mean) << ',' << fmt_double(r.ratio) << '\n';
  return os.str();
}

std::string ComparisonTable::to_markdown() const {
  std::ostringstream os;
  os << "| d | instances | " << reference << " mean queries | " << other << " mean queries | ratio |\n";
  os << "|---|---|---|---|---|\n";
  for (const auto& r : rows)
    os << "| " << r.d << " | " << r.instances << " | " << fmt_double(r.reference_mean) << " | "
       << fmt_double(r.other_mean) << " | " << fmt_double(r.ratio) << " |\n";
  return os.str();
}

bool ComparisonTable::ratio_nondecreasing() const {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].ratio < rows[i - 1].ratio) return false;
  return true;
}

}  // namespace binrank
