#include "tpack/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "tpack/errors.hpp"
#include "tpack/io.hpp"
#include "tpack/oracle.hpp"
#include "tpack/pipeline.hpp"

namespace tpack {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    save_text(path, text);
}

ConstantsProfile make_profile(const std::string& name, int retries) {
  ConstantsProfile p = ConstantsProfile::from_preset(parse_preset(name));
  if (retries >= 0) p.retries = retries;
  return p;
}

std::string instance_text(const Instance& inst) {
  std::ostringstream s;
  write_instance(s, inst);
  return s.str();
}

struct SweepRow {
  int n = 0, k = 0;
  std::uint64_t seed = 0;
  std::string family, outcome;
  int level = 4, retries = 0;
  long long millis = 0;
};

SweepRow sweep_one(int n, int k, Family family, int degree, std::uint64_t seed,
                   const ConstantsProfile& profile) {
  SweepRow row{n, k, seed, to_string(family), "", 4, 0, 0};
  const auto start = std::chrono::steady_clock::now();
  try {
    const Instance inst = generate_instance(n, k, family, degree, seed, profile);
    const PipelineResult res = pack_consecutive_trees(inst, profile, seed);
    row.outcome = res.success ? "success" : "fail";
    row.level = res.fallback_level;
    row.retries = res.retries;
  } catch (const HypothesisViolated&) {
    row.outcome = "hypothesis";
  } catch (const std::exception&) {
    row.outcome = "error";
  }
  row.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
                   .count();
  return row;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pack consecutive trees into a complete graph", "tpack"};
  app.require_subcommand(1);

  int n = 0, k = 0, degree = 3, retries = -1, nmin = 1, nmax = 0, seeds = 10, threads = 0;
  std::uint64_t seed = 1;
  std::string family = "uniform", profile_name = "desk", out_path = "-", instance_path,
              packing_path, trace_path, report_path;
  std::vector<int> ns, ks;
  std::vector<std::string> families;

  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  gen->add_option("--n", n, "Host order")->required();
  gen->add_option("--k", k, "Number of trees")->required();
  gen->add_option("--family", family, "uniform | bounded-degree | star-heavy | path-heavy");
  gen->add_option("--degree", degree, "Degree bound for bounded-degree");
  gen->add_option("--seed", seed, "Generator seed");
  gen->add_option("--profile", profile_name, "faithful | desk");
  gen->add_option("--out", out_path, "Instance file (- for stdout)");

  auto* pack = app.add_subcommand("pack", "Pack an instance");
  pack->add_option("instance", instance_path, "Instance file")->required();
  pack->add_option("--profile", profile_name, "faithful | desk");
  pack->add_option("--seed", seed, "Seed");
  pack->add_option("--retries", retries, "Seed retries per instance");
  pack->add_option("--trace", trace_path, "Write the decision trace here");
  pack->add_option("--report", report_path, "Write the report here (default stderr)");
  pack->add_option("--out", out_path, "Packing file (- for stdout)");

  auto* verify = app.add_subcommand("verify", "Check a packing against an instance");
  verify->add_option("instance", instance_path, "Instance file")->required();
  verify->add_option("packing", packing_path, "Packing file")->required();

  auto* oracle = app.add_subcommand("oracle", "Exhaustive check of all class tuples");
  oracle->add_option("--nmax", nmax, "Largest host order")->required();
  oracle->add_option("--k", k, "Tuple size")->required();
  oracle->add_option("--nmin", nmin, "Smallest host order");

  auto* sweep = app.add_subcommand("sweep", "Run seeded pipeline instances over a grid");
  sweep->add_option("--n", ns, "Host orders")->required();
  sweep->add_option("--k", ks, "Tree counts")->required();
  sweep->add_option("--family", families, "Families (default all four)");
  sweep->add_option("--degree", degree, "Degree bound for bounded-degree");
  sweep->add_option("--seeds", seeds, "Instances per grid cell");
  sweep->add_option("--seed", seed, "First seed");
  sweep->add_option("--profile", profile_name, "faithful | desk");
  sweep->add_option("--retries", retries, "Seed retries per instance");
  sweep->add_option("--threads", threads, "Worker threads (0 = hardware)");
  sweep->add_option("--out", out_path, "CSV file (- for stdout)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      const ConstantsProfile profile = make_profile(profile_name, retries);
      emit(out_path, instance_text(generate_instance(n, k, parse_family(family), degree, seed, profile)),
           out);
      return 0;
    }
    if (pack->parsed()) {
      const ConstantsProfile profile = make_profile(profile_name, retries);
      const Instance inst = load_instance(instance_path);
      PipelineResult res;
      try {
        res = pack_consecutive_trees(inst, profile, seed);
      } catch (const HypothesisViolated& e) {
        err << e.what() << '\n';
        return 1;
      }
      if (!trace_path.empty()) save_text(trace_path, res.trace_text());
      if (report_path.empty())
        err << res.report_text();
      else
        save_text(report_path, res.report_text());
      if (!res.success) {
        err << "packing failed\n";
        return 1;
      }
      std::ostringstream s;
      write_packing(s, res.maps);
      emit(out_path, s.str(), out);
      return 0;
    }
    if (verify->parsed()) {
      const Instance inst = load_instance(instance_path);
      std::ifstream in(packing_path);
      if (!in) throw std::runtime_error("cannot open " + packing_path);
      std::vector<Embedding> maps;
      try {
        maps = read_packing(in, inst);
      } catch (const GraphError& e) {
        out << "Malformed: " << e.what() << '\n';
        return 1;
      }
      const VerifyResult vr = verify_packing(inst.trees, maps, inst.n);
      if (vr.valid()) {
        out << "Valid\n";
        return 0;
      }
      out << (vr.status == VerifyResult::Status::Conflict ? "Conflict: " : "Malformed: ")
          << vr.message << '\n';
      return 1;
    }
    if (oracle->parsed()) {
      const SuiteReport rep = corollary_suite(nmin, nmax, k);
      out << rep.text();
      return rep.failed == 0 && rep.timeout == 0 ? 0 : 1;
    }
    if (sweep->parsed()) {
      const ConstantsProfile profile = make_profile(profile_name, retries);
      if (families.empty()) families = {"uniform", "bounded-degree", "star-heavy", "path-heavy"};
      struct Task {
        int n, k;
        Family family;
        std::uint64_t seed;
      };
      std::vector<Task> tasks;
      for (int nn : ns)
        for (int kk : ks)
          for (const auto& f : families)
            for (int s = 0; s < seeds; ++s)
              tasks.push_back({nn, kk, parse_family(f), seed + static_cast<std::uint64_t>(s)});
      std::vector<SweepRow> rows(tasks.size());
      std::atomic<std::size_t> next{0};
      const unsigned workers =
          threads > 0 ? static_cast<unsigned>(threads) : std::max(1U, std::thread::hardware_concurrency());
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
          for (std::size_t i = next++; i < tasks.size(); i = next++)
            rows[i] = sweep_one(tasks[i].n, tasks[i].k, tasks[i].family, degree, tasks[i].seed, profile);
        });
      for (auto& t : pool) t.join();
      std::ostringstream csv;
      csv << "n,k,seed,family,outcome,fallback_level,retries,millis\n";
      bool all = true;
      for (const auto& r : rows) {
        csv << r.n << ',' << r.k << ',' << r.seed << ',' << r.family << ',' << r.outcome << ','
            << r.level << ',' << r.retries << ',' << r.millis << '\n';
        all = all && r.outcome == "success";
      }
      emit(out_path, csv.str(), out);
      return all ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

int cli_dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_run(args, std::cout, std::cerr);
}

}  // namespace tpack
