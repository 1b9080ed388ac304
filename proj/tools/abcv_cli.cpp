#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "abcv/corpus.hpp"
#include "abcv/rules.hpp"

using namespace abcv;

namespace {

constexpr int kOk = 0;
constexpr int kViolated = 1;
constexpr int kUsage = 2;

Instance load_instance_arg(const std::string& path) {
  if (auto pos = path.rfind(".abci"); pos == std::string::npos) {
    // allow fixture names directly
    for (const auto& name : fixture_names()) {
      if (name == path) return fixture(name).instance;
    }
  }
  return load_instance_file(path);
}

NotionId parse_notion(const std::string& name) {
  auto id = notion_from_string(name);
  if (!id) throw CLI::ValidationError("--notion", "unknown notion: " + name);
  return *id;
}

AxiomId parse_axiom(const std::string& name) {
  auto id = axiom_from_string(name);
  if (!id) throw CLI::ValidationError("--axiom", "unknown axiom: " + name);
  return *id;
}

std::vector<int> parse_group(const std::string& text) {
  std::vector<int> out;
  std::istringstream ss(text);
  int v;
  while (ss >> v) out.push_back(v);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proportionality verification toolkit for approval-based "
               "committee voting"};
  app.require_subcommand(1);

  // verify
  std::string notion_name, instance_path, committee_text;
  auto* verify_cmd = app.add_subcommand("verify", "check one notion");
  verify_cmd->add_option("--notion", notion_name)->required();
  verify_cmd->add_option("--instance", instance_path)->required();
  verify_cmd->add_option("--committee", committee_text)->required();

  // witnesses
  auto* witnesses_cmd =
      app.add_subcommand("witnesses", "list every natural witness");
  witnesses_cmd->add_option("--notion", notion_name)->required();
  witnesses_cmd->add_option("--instance", instance_path)->required();
  witnesses_cmd->add_option("--committee", committee_text)->required();

  // axiom
  std::string axiom_name;
  auto* axiom_cmd = app.add_subcommand("axiom", "check one axiom at one pair");
  axiom_cmd->add_option("--notion", notion_name)->required();
  axiom_cmd->add_option("--axiom", axiom_name)->required();
  axiom_cmd->add_option("--instance", instance_path)->required();
  axiom_cmd->add_option("--committee", committee_text)->required();

  // search
  int max_n = 4, max_m = 5, max_k = 3, jobs = 0;
  std::uint64_t seed = 1;
  std::string out_path;
  auto* search_cmd =
      app.add_subcommand("search", "scan a bounded family for a violation");
  search_cmd->add_option("--notion", notion_name)->required();
  search_cmd->add_option("--axiom", axiom_name)->required();
  search_cmd->add_option("--max-n", max_n);
  search_cmd->add_option("--max-m", max_m);
  search_cmd->add_option("--max-k", max_k);
  search_cmd->add_option("--seed", seed);
  search_cmd->add_option("--jobs", jobs);
  search_cmd->add_option("--out", out_path);

  // embed
  std::string from_inst, from_group, from_committee;
  std::string to_inst, to_group, to_committee;
  auto* embed_cmd = app.add_subcommand("embed", "search a local embedding");
  embed_cmd->add_option("--from-instance", from_inst)->required();
  embed_cmd->add_option("--from-group", from_group)->required();
  embed_cmd->add_option("--from-committee", from_committee)->required();
  embed_cmd->add_option("--to-instance", to_inst)->required();
  embed_cmd->add_option("--to-group", to_group)->required();
  embed_cmd->add_option("--to-committee", to_committee)->required();

  // rule
  std::string rule_name;
  auto* rule_cmd = app.add_subcommand("rule", "run a committee rule");
  rule_cmd->add_option("--rule", rule_name)->required();
  rule_cmd->add_option("--instance", instance_path)->required();

  // fingerprint
  int stride = 1;
  auto* fingerprint_cmd =
      app.add_subcommand("fingerprint", "reproduce the compliance tables");
  fingerprint_cmd->add_option("--max-n", max_n);
  fingerprint_cmd->add_option("--max-m", max_m);
  fingerprint_cmd->add_option("--max-k", max_k);
  fingerprint_cmd->add_option("--jobs", jobs);
  fingerprint_cmd->add_option("--price-permutation-stride", stride);
  fingerprint_cmd->add_option("--out", out_path);

  // corpus
  bool replay_all = false;
  std::string write_dir;
  auto* corpus_cmd = app.add_subcommand("corpus", "fixture operations");
  corpus_cmd->add_flag("--replay-all", replay_all);
  corpus_cmd->add_option("--write-dir", write_dir);

  // gen
  int gen_n = 4, gen_m = 5, gen_k = 3, gen_ppm = 500000;
  bool nonempty = false;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random instance");
  gen_cmd->add_option("--n", gen_n)->required();
  gen_cmd->add_option("--m", gen_m)->required();
  gen_cmd->add_option("--k", gen_k)->required();
  gen_cmd->add_option("--ppm", gen_ppm);
  gen_cmd->add_option("--seed", seed);
  gen_cmd->add_flag("--nonempty", nonempty);
  gen_cmd->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return kOk;  // --help
    std::cerr << e.what() << "\n";
    return kUsage;
  }

  try {
    if (verify_cmd->parsed()) {
      Instance inst = load_instance_arg(instance_path);
      Committee w = parse_committee(committee_text, inst);
      auto result = verify(parse_notion(notion_name), inst, w);
      if (result.satisfied) {
        std::cout << "{\"satisfied\":true}\n";
        return kOk;
      }
      std::cout << "{\"satisfied\":false,\"witness\":"
                << witness_to_json(*result.witness) << "}\n";
      return kViolated;
    }

    if (witnesses_cmd->parsed()) {
      Instance inst = load_instance_arg(instance_path);
      Committee w = parse_committee(committee_text, inst);
      NotionId id = parse_notion(notion_name);
      auto witnesses = natural_witnesses(id, inst, w);
      for (const auto& group : witnesses.groups) {
        ViolationWitness vw;
        vw.kind = id;
        vw.group = group;
        std::cout << witness_to_json(vw) << "\n";
      }
      return witnesses.groups.empty() ? kOk : kViolated;
    }

    if (axiom_cmd->parsed()) {
      Instance inst = load_instance_arg(instance_path);
      Committee w = parse_committee(committee_text, inst);
      auto verdict = check_axiom(parse_notion(notion_name),
                                 parse_axiom(axiom_name), inst, w);
      switch (verdict.status) {
        case AxiomVerdict::Status::Holds:
          std::cout << "holds\n";
          return kOk;
        case AxiomVerdict::Status::NotApplicable:
          std::cout << "not-applicable\n";
          return kOk;
        case AxiomVerdict::Status::Violated:
          std::cout << "violated: " << verdict.detail << "\n";
          if (verdict.transformed) {
            std::cout << serialize_instance(*verdict.transformed);
          }
          return kViolated;
      }
    }

    if (search_cmd->parsed()) {
      InstanceFamily family;
      family.max_voters = max_n;
      family.max_candidates = max_m;
      family.max_k = max_k;
      SearchOptions opts;
      opts.jobs = jobs;
      opts.seed = seed;
      auto outcome = search_axiom_violation(parse_notion(notion_name),
                                            parse_axiom(axiom_name), family,
                                            opts);
      if (!outcome.violated) {
        std::cout << "holds-on-family pairs=" << outcome.pairs_checked << "\n";
        return kOk;
      }
      std::cout << "violated committee=" << serialize_committee(*outcome.committee)
                << "\n"
                << serialize_instance(*outcome.instance);
      if (!out_path.empty()) {
        write_instance_file(*outcome.instance, out_path);
        std::ofstream side(out_path + ".committee");
        side << serialize_committee(*outcome.committee) << "\n";
        std::ofstream verdict(out_path + ".tsv");
        verdict << notion_name << "\t" << axiom_name << "\tviolated\t"
                << out_path << "\n";
      }
      return kViolated;
    }

    if (embed_cmd->parsed()) {
      Instance a = load_instance_arg(from_inst);
      Instance b = load_instance_arg(to_inst);
      EmbeddingSide from{&a, parse_group(from_group),
                         parse_committee(from_committee, a)};
      EmbeddingSide to{&b, parse_group(to_group),
                       parse_committee(to_committee, b)};
      auto embedding = find_local_embedding(from, to);
      if (!embedding) {
        std::cout << "no-embedding\n";
        return kViolated;
      }
      std::cout << "voters:";
      for (auto [x, y] : embedding->voter_map)
        std::cout << " " << x << "->" << y;
      std::cout << "\ncandidates:";
      for (auto [x, y] : embedding->candidate_map)
        std::cout << " " << x << "->" << y;
      std::cout << "\n";
      return kOk;
    }

    if (rule_cmd->parsed()) {
      Instance inst = load_instance_arg(instance_path);
      auto rule = rule_from_string(rule_name);
      if (!rule) {
        std::cerr << "unknown rule: " << rule_name << "\n";
        return kUsage;
      }
      Committee w = *rule == RuleId::MES ? mes(inst) : pav_exhaustive(inst);
      std::cout << serialize_committee(w) << "\n";
      return kOk;
    }

    if (fingerprint_cmd->parsed()) {
      FingerprintOptions opts;
      opts.family.max_voters = max_n;
      opts.family.max_candidates = max_m;
      opts.family.max_k = max_k;
      opts.jobs = jobs;
      opts.permutation_stride_priceable = stride;
      auto result = fingerprint(opts);
      std::cout << fingerprint_grid(result) << "\n" << roadmap_grid(result);
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << fingerprint_tsv(result);
      }
      std::cout << (result.matches_expected ? "matches expected tables\n"
                                            : "MISMATCH against expected tables\n");
      return result.matches_expected ? kOk : kViolated;
    }

    if (corpus_cmd->parsed()) {
      if (!write_dir.empty()) write_corpus(write_dir);
      if (replay_all) {
        bool all = true;
        for (const auto& report : replay_all_fixtures()) {
          for (const auto& fact : report.facts) {
            std::cout << (fact.pass ? "[pass] " : "[FAIL] ") << report.name
                      << ": " << fact.description << "\n";
            all &= fact.pass;
          }
        }
        return all ? kOk : kViolated;
      }
      return kOk;
    }

    if (gen_cmd->parsed()) {
      Instance inst = random_instance(gen_n, gen_m, gen_k, gen_ppm, seed,
                                      nonempty);
      if (out_path.empty()) {
        std::cout << serialize_instance(inst);
      } else {
        write_instance_file(inst, out_path);
      }
      return kOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
