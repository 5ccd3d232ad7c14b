#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "finpart/bell.hpp"
#include "finpart/mostowski.hpp"
#include "finpart/ordinal.hpp"
#include "finpart/partition.hpp"
#include "finpart/scans.hpp"
#include "finpart/witnesses.hpp"

using namespace finpart;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Globals {
  std::uint64_t seed = 0;
  bool json = false;
};

int emit(const WitnessReport& report, const Globals& g) {
  if (g.json) {
    std::cout << report.to_json(false).dump(2) << "\n";
    std::cerr << "elapsed_ms=" << report.elapsed_ms << "\n";
  } else {
    std::cout << report.to_text();
  }
  return report.passed() ? kPass : kFail;
}

std::uint64_t seed_from_env() {
  const char* text = std::getenv("FINPART_SEED");
  if (text == nullptr || *text == '\0') return 0;
  return std::stoull(text);
}

std::string decimal(const BigRat& r, int digits) {
  std::ostringstream out;
  out << std::setprecision(digits) << r.convert_to<double>();
  return out.str();
}

std::set<CnfOrdinal> parse_ordinal_set(const std::string& text) {
  std::set<CnfOrdinal> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.insert(CnfOrdinal::parse(item));
  }
  return out;
}

std::string format_ordinal_set(const std::set<CnfOrdinal>& s) {
  std::string out = "{";
  for (const auto& x : s) out += (out.size() > 1 ? ", " : "") + x.to_string();
  return out + "}";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finitary partitions, Bell numbers and witness constructions"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  g.seed = seed_from_env();
  app.add_option("--seed", g.seed, "seed for randomized suites (default $FINPART_SEED or 0)");
  app.add_flag("--json", g.json, "JSON output");

  std::function<int()> action;

  // bell ------------------------------------------------------------------
  auto* bell_cmd = app.add_subcommand("bell", "Bell numbers")->require_subcommand(1);
  std::size_t bell_max = 0;
  bool with_star = false;
  unsigned modulus = 0;
  auto* table = bell_cmd->add_subcommand("table", "print B_n for n <= max");
  table->add_option("--max", bell_max)->required();
  table->add_flag("--star", with_star, "also print B*_n");
  table->add_option("--mod", modulus, "print residues mod m instead");
  table->callback([&] {
    action = [&] {
      if (modulus != 0) {
        const auto residues = bell_mod(bell_max, modulus);
        std::cout << "n,B_n_mod_" << modulus << "\n";
        for (std::size_t n = 0; n <= bell_max; ++n) std::cout << n << "," << residues[n] << "\n";
        return kPass;
      }
      const auto t = bell_table(bell_max);
      if (g.json) {
        Json rows = Json::array();
        for (std::size_t n = 0; n <= bell_max; ++n) {
          Json row{{"n", n}, {"B", to_json(t.values[n])}};
          if (with_star) row["B_star"] = to_json(t.star_values[n]);
          rows.push_back(row);
        }
        std::cout << rows.dump(2) << "\n";
        return kPass;
      }
      std::cout << (with_star ? "n,B_n,B_n_star\n" : "n,B_n\n");
      for (std::size_t n = 0; n <= bell_max; ++n) {
        std::cout << n << "," << t.values[n];
        if (with_star) std::cout << "," << t.star_values[n];
        std::cout << "\n";
      }
      return kPass;
    };
  });

  auto* period = bell_cmd->add_subcommand("check-period", "B_{n+24} = B_n mod 8");
  period->add_option("--max", bell_max)->required();
  period->callback([&] { action = [&] { return emit(check_mod8_period(bell_max), g); }; });

  auto* gap = bell_cmd->add_subcommand("gap-scan", "2^(2n+2) < B*_n from 23 on");
  gap->add_option("--max", bell_max)->required();
  gap->callback([&] {
    action = [&] {
      const auto scan = star_gap_scan(bell_max);
      if (g.json) {
        std::cout << Json{{"max", bell_max},
                          {"holds_from_23", scan.holds_from_23},
                          {"minimal_n", scan.minimal_n},
                          {"first_failure", scan.first_failure ? Json(*scan.first_failure) : Json()}}
                         .dump(2)
                  << "\n";
      } else {
        std::cout << "holds_from_23=" << (scan.holds_from_23 ? "true" : "false") << "\n"
                  << "minimal_n=" << scan.minimal_n << "\n";
      }
      return scan.holds_from_23 ? kPass : kFail;
    };
  });

  auto* power2 = bell_cmd->add_subcommand("power2", "B_m is not a power of two for 3 <= m <= max");
  power2->add_option("--max", bell_max)->required();
  power2->callback([&] { action = [&] { return emit(not_power_of_two_scan(bell_max), g); }; });

  std::size_t dob_n = 0;
  std::size_t dob_terms = 0;
  auto* dob = bell_cmd->add_subcommand("dobinski", "truncated Dobinski sum with a rigorous error bound");
  dob->add_option("--n", dob_n)->required();
  dob->add_option("--terms", dob_terms)->required();
  dob->callback([&] {
    action = [&] {
      const auto est = dobinski(dob_n, dob_terms);
      const BigNat exact = bell(dob_n);
      const BigRat diff = est.approximation - BigRat(exact);
      const bool within = abs(diff) <= est.error_bound;
      if (g.json) {
        std::cout << Json{{"n", dob_n},
                          {"terms", dob_terms},
                          {"approximation", decimal(est.approximation, 17)},
                          {"error_bound", decimal(est.error_bound, 6)},
                          {"exact", to_json(exact)},
                          {"within_bound", within}}
                         .dump(2)
                  << "\n";
      } else {
        std::cout << "approximation=" << decimal(est.approximation, 17) << "\n"
                  << "error_bound=" << decimal(est.error_bound, 6) << "\n"
                  << "exact=" << exact << "\n"
                  << "within_bound=" << (within ? "true" : "false") << "\n";
      }
      return within ? kPass : kFail;
    };
  });

  // witness ---------------------------------------------------------------
  auto* witness = app.add_subcommand("witness", "run constructions against their oracles")->require_subcommand(1);
  auto* list = witness->add_subcommand("list", "sorted witness names");
  list->callback([&] {
    action = [&] {
      Json names = Json::array();
      for (const auto& e : witness_registry()) {
        names.push_back(e.name);
        if (!g.json) std::cout << e.name << "  " << e.summary << "\n";
      }
      if (g.json) std::cout << names.dump(2) << "\n";
      return kPass;
    };
  });
  std::string witness_name;
  ScanOptions scan;
  auto* run = witness->add_subcommand("run", "run one witness");
  run->add_option("--name", witness_name)->required();
  run->add_option("--size,--n", scan.size, "size parameter (meaning depends on the witness)");
  run->add_option("--samples", scan.samples, "number of random instances");
  run->callback([&] {
    action = [&] {
      const auto* entry = find_witness(witness_name);
      if (entry == nullptr) {
        std::cerr << "unknown witness '" << witness_name << "' (see `witness list`)\n";
        return kUsage;
      }
      scan.seed = g.seed;
      return emit(entry->run(scan), g);
    };
  });

  // mostowski -------------------------------------------------------------
  auto* most = app.add_subcommand("mostowski", "ordered Mostowski model simulator")->require_subcommand(1);
  std::string support_text;
  std::string mask_text;
  auto* map = most->add_subcommand("map", "image of a supported subset under the injection into B(A)");
  map->add_option("--support", support_text, "comma-separated rationals p/q");
  map->add_option("--mask", mask_text, "0/1 string of length 2|support|+1")->required();
  map->callback([&] {
    action = [&] {
      const SupportedSubset c(parse_rat_list(support_text), parse_mask(mask_text));
      const auto image = mostowski_inject_detailed(c, MostowskiParams::defaults());
      const SupportedSubset r = reduce(c);
      if (g.json) {
        std::cout << Json{{"reduced", r.to_string()},
                          {"subset_rank", to_json(image.subset_rank)},
                          {"branch", image.large_support ? "support" : "complement"},
                          {"partition_index", to_json(image.partition_index)},
                          {"partition", image.partition.to_string()}}
                         .dump(2)
                  << "\n";
      } else {
        std::cout << "reduced=" << r.to_string() << "\n"
                  << "subset_rank=" << image.subset_rank << "\n"
                  << "branch=" << (image.large_support ? "support" : "complement") << "\n"
                  << "partition_index=" << image.partition_index << "\n"
                  << image.partition.to_string() << "\n";
      }
      return kPass;
    };
  });
  std::string pool_text;
  auto* mscan = most->add_subcommand("scan", "injectivity over every subset a pool supports");
  mscan->add_option("--pool", pool_text, "comma-separated rationals")->required();
  mscan->callback([&] {
    action = [&] { return emit(injectivity_scan(parse_rat_list(pool_text), MostowskiParams::defaults()), g); };
  });
  std::size_t count_n = 0;
  auto* count = most->add_subcommand("count", "subsets supported by an n-element set");
  count->add_option("--n", count_n)->required();
  count->callback([&] {
    action = [&] {
      std::cout << count_supported(count_n) << "\n";
      return kPass;
    };
  });
  std::size_t guard_max = 60;
  std::size_t threshold = MostowskiParams::defaults().threshold;
  auto* guards = most->add_subcommand("guards", "exact index-bound checks of the injection");
  guards->add_option("--max", guard_max, "largest support size");
  guards->add_option("--threshold", threshold, "support size from which the support itself is the carrier");
  guards->callback([&] {
    action = [&] {
      auto params = MostowskiParams::defaults();
      params.threshold = threshold;
      return emit(branch_guard_scan(params, guard_max), g);
    };
  });

  // ordinal ---------------------------------------------------------------
  auto* ord = app.add_subcommand("ordinal", "Cantor normal form codes")->require_subcommand(1);
  std::string alpha_text = "w";
  std::string b_text;
  std::string c_text;
  std::string v_text;
  std::string set_text;
  auto* pair = ord->add_subcommand("pair", "Godel pair of (b, c) below alpha");
  pair->add_option("--alpha", alpha_text);
  pair->add_option("--b", b_text)->required();
  pair->add_option("--c", c_text)->required();
  pair->callback([&] {
    action = [&] {
      std::cout << godel_pair(CnfOrdinal::parse(b_text), CnfOrdinal::parse(c_text), CnfOrdinal::parse(alpha_text)).to_string()
                << "\n";
      return kPass;
    };
  });
  auto* unpair = ord->add_subcommand("unpair", "inverse of pair");
  unpair->add_option("--alpha", alpha_text);
  unpair->add_option("--v", v_text)->required();
  unpair->callback([&] {
    action = [&] {
      auto [b, c] = godel_unpair(CnfOrdinal::parse(v_text), CnfOrdinal::parse(alpha_text));
      std::cout << b.to_string() << "\n" << c.to_string() << "\n";
      return kPass;
    };
  });
  auto* code = ord->add_subcommand("code-finset", "code of a finite set of ordinals below alpha");
  code->add_option("--alpha", alpha_text);
  code->add_option("--set", set_text, "comma-separated ordinals")->required();
  code->callback([&] {
    action = [&] {
      std::cout << finset_code(parse_ordinal_set(set_text), CnfOrdinal::parse(alpha_text)).to_string() << "\n";
      return kPass;
    };
  });
  auto* decode = ord->add_subcommand("decode-finset", "inverse of code-finset");
  decode->add_option("--alpha", alpha_text);
  decode->add_option("--v", v_text)->required();
  decode->callback([&] {
    action = [&] {
      std::cout << format_ordinal_set(finset_decode(CnfOrdinal::parse(v_text), CnfOrdinal::parse(alpha_text))) << "\n";
      return kPass;
    };
  });

  // part ------------------------------------------------------------------
  auto* part = app.add_subcommand("part", "set partitions as restricted growth strings")->require_subcommand(1);
  bool no_singletons = false;
  std::size_t part_n = 0;
  std::string rgs_text;
  std::string rank_text;
  auto* en = part->add_subcommand("enum", "every partition of {0..n-1} in RGS-lex order");
  en->add_option("--n", part_n)->required();
  en->add_flag("--no-singletons", no_singletons);
  en->callback([&] {
    action = [&] {
      for_each_partition(part_n, no_singletons, [](const Partition& p) { std::cout << p.to_string() << "\n"; });
      return kPass;
    };
  });
  auto* rk = part->add_subcommand("rank", "RGS-lex rank");
  rk->add_option("--rgs", rgs_text)->required();
  rk->add_flag("--no-singletons", no_singletons);
  rk->callback([&] {
    action = [&] {
      const Partition p = Partition::parse(rgs_text);
      std::cout << (no_singletons ? rank_no_singleton(p) : rank_partition(p)) << "\n";
      return kPass;
    };
  });
  auto* un = part->add_subcommand("unrank", "partition of a given RGS-lex rank");
  un->add_option("--n", part_n)->required();
  un->add_option("--rank", rank_text)->required();
  un->add_flag("--no-singletons", no_singletons);
  un->callback([&] {
    action = [&] {
      const BigNat r = parse_bignat(rank_text);
      std::cout << (no_singletons ? unrank_no_singleton(part_n, r) : unrank_partition(part_n, r)).to_string() << "\n";
      return kPass;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    return action ? action() : kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return kFail;
  }
}
