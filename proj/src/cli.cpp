#include "bh/cli.hpp"

#include <cstdlib>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "bh/bh_core.hpp"
#include "bh/bounds.hpp"
#include "bh/constructions.hpp"
#include "bh/equivalence.hpp"
#include "bh/error.hpp"
#include "bh/io.hpp"
#include "bh/search.hpp"

namespace bh {

namespace {

enum class Format { pretty, json, csv };

struct Globals {
  Format format = Format::pretty;
  std::string conway_db;
  unsigned threads = 0;
};

struct ConstructArgs {
  std::string family;
  int h = 0;
  std::uint64_t q = 0, b = 0;
};

struct ClassifyArgs {
  std::string family;
  int h = 0;
  std::uint64_t q = 0;
  std::string mode = "fast";
  bool certify = false;
};

struct ScanArgs {
  std::string family;
  int h = 0;
  std::uint64_t q_max = 0;
  std::vector<std::uint64_t> q_list;
  std::size_t k = 0;
  std::string checkpoint;
  std::uint64_t chunk = 4096;
  bool jsonl = false;
};

struct GreedyArgs {
  int h = 0;
  std::size_t count = 0;
  std::uint64_t offset = 1;
};

struct ExactArgs {
  int h = 0;
  std::size_t k = 0;
  std::uint64_t cap = 0;
  bool expensive = false;
  bool all = false;
};

struct BoundsArgs {
  int h = 0;
  std::string k, n;
  std::string regime = "all";
};

// Largest k handled by `exact` without --expensive.
constexpr std::size_t kExactEnvelope = 8;

std::string join(const std::vector<std::uint64_t>& v, const char* sep) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? sep : "") << v[i];
  return s.str();
}

std::string braces(const std::vector<std::uint64_t>& v) { return "{" + join(v, ", ") + "}"; }

std::string set_name(const BhParams& p) {
  std::string fam(to_string(p.family));
  fam[0] = static_cast<char>(std::toupper(fam[0]));
  return fam + "_" + std::to_string(p.h) + "(" + std::to_string(p.q.q) + ", " + std::to_string(p.b) + ")";
}

class Runner {
 public:
  Runner(const Globals& g, std::ostream& out) : g_(g), out_(out) {
    if (!g_.conway_db.empty()) db_ = ConwayDatabase::load(g_.conway_db);
  }

  BuildOptions build() const {
    BuildOptions b;
    if (db_) b.db = &*db_;
    return b;
  }

  SearchOptions search() const { return SearchOptions{g_.threads}; }

  int construct(const ConstructArgs& a) {
    const auto family = parse_family(a.family);
    const auto q = PrimePower::from_q(a.q);
    const auto ctx = family_field(family, a.h, q, build());
    const auto set = bh::construct(ctx, family, a.h, q, a.b);
    const bool ok = is_bh_cyclic(set, a.h).ok;
    switch (g_.format) {
      case Format::json:
        out_ << json{{"set", set}, {"verified", ok}}.dump() << '\n';
        break;
      case Format::csv:
        out_ << "modulus,element\n";
        for (auto x : set.elements) out_ << set.modulus << ',' << x << '\n';
        break;
      case Format::pretty:
        out_ << set_name(*set.meta) << " = " << braces(set.elements) << '\n';
        out_ << (ok ? "verified" : "FAILED") << " B_" << a.h << " mod " << set.modulus << '\n';
        break;
    }
    return ok ? exit_ok : exit_verification;
  }

  int classify(const ClassifyArgs& a) {
    const auto family = parse_family(a.family);
    const auto mode = parse_singer_mode(a.mode);
    const auto q = PrimePower::from_q(a.q);
    const auto ctx = family_field(family, a.h, q, build());
    const auto cls = bh::classify(ctx, family, a.h, q, mode);
    std::optional<CertificationReport> cert;
    if (a.certify) cert = certify_inequivalence(ctx, cls);
    std::vector<std::uint64_t> counts;
    for (const auto& s : cls.counts_after_stage) counts.push_back(s.classes);

    switch (g_.format) {
      case Format::json: {
        json j = cls;
        if (cert) j["certification"] = *cert;
        out_ << j.dump() << '\n';
        break;
      }
      case Format::csv:
        out_ << "representative,class_size\n";
        for (const auto& c : cls.classes) out_ << c.representative << ',' << c.members.size() << '\n';
        break;
      case Format::pretty: {
        out_ << "representatives: " << join(cls.representatives(), ", ") << '\n';
        out_ << "funnel: " << join(counts, " -> ") << " (";
        for (std::size_t i = 0; i < cls.counts_after_stage.size(); ++i) {
          out_ << (i ? ", " : "") << to_string(cls.counts_after_stage[i].stage);
        }
        out_ << ")\n";
        if (cert) {
          out_ << "certified: " << cert->pairs_checked << " pairs, ";
          if (cert->all_inequivalent()) {
            out_ << "all inequivalent\n";
          } else {
            out_ << cert->equivalent_pairs.size() << " equivalent, refined representatives: "
                 << join(cert->refined.representatives(), ", ") << '\n';
          }
        }
        break;
      }
    }
    return exit_ok;
  }

  int scan(const ScanArgs& a) {
    const auto family = parse_family(a.family);
    std::vector<std::uint64_t> qs = a.q_list;
    if (qs.empty()) {
      for (std::uint64_t q = 2; q <= a.q_max; ++q) {
        if (as_prime_power_ok(q)) qs.push_back(q);
      }
    }
    if (qs.empty()) fail(ErrorCode::invalid_argument, "no prime powers to scan (use --q-max or --q-list)");
    ScanOptions opts;
    opts.search = search();
    opts.build = build();
    opts.chunk = a.chunk;
    if (!a.checkpoint.empty()) opts.checkpoint = a.checkpoint;
    if (a.jsonl) {
      opts.on_improvement = [this](const SearchResult& r) {
        out_ << json{{"event", "improvement"}, {"result", r}}.dump() << '\n' << std::flush;
      };
    }
    const auto table = table_scan(a.h, family, qs, a.k, opts);
    const auto q_of = [](const SearchResult& r) { return r.provenance.params ? r.provenance.params->q.q : 0; };

    if (a.jsonl) {
      json j = table;
      j["event"] = "table";
      out_ << j.dump() << '\n';
    } else {
      switch (g_.format) {
        case Format::json:
          out_ << json(table).dump() << '\n';
          break;
        case Format::csv:
          out_ << "k,bound,q\n";
          for (const auto& r : table.rows) out_ << r.k << ',' << r.n << ',' << q_of(r) << '\n';
          break;
        case Format::pretty:
          for (const auto& r : table.rows) out_ << r.k << " → " << r.n << " @ q=" << q_of(r) << '\n';
          for (const auto& e : table.errors) out_ << "skipped q=" << e.q << ": " << e.message << '\n';
          break;
      }
    }
    return exit_ok;
  }

  int greedy(const GreedyArgs& a) {
    const auto seq = greedy_bh(a.h, a.count, a.offset);
    switch (g_.format) {
      case Format::json:
        out_ << json{{"h", a.h}, {"start", a.offset}, {"sequence", seq}}.dump() << '\n';
        break;
      case Format::csv:
        out_ << "index,value\n";
        for (std::size_t i = 0; i < seq.size(); ++i) out_ << i + 1 << ',' << seq.elements[i] << '\n';
        break;
      case Format::pretty:
        out_ << join(seq.elements, ",") << '\n';
        break;
    }
    return exit_ok;
  }

  int exact(const ExactArgs& a) {
    if (a.k > kExactEnvelope && !a.expensive) {
      fail(ErrorCode::invalid_argument,
           "k > " + std::to_string(kExactEnvelope) + " can take hours; pass --expensive to run it anyway");
    }
    std::optional<std::uint64_t> cap;
    if (a.cap != 0) cap = a.cap;
    const auto r = brute_force_optimal(a.h, a.k, cap, search());
    const auto shown = a.all ? r.witnesses : up_to_reflection(r.witnesses);
    switch (g_.format) {
      case Format::json:
        out_ << json(r).dump() << '\n';
        break;
      case Format::csv:
        out_ << "k,n,witness\n";
        for (const auto& w : shown) out_ << r.k << ',' << r.n << ',' << join(w.elements, " ") << '\n';
        break;
      case Format::pretty:
        if (r.infeasible) {
          out_ << r.k << " → infeasible under cap " << a.cap << '\n';
          break;
        }
        out_ << r.k << " → " << r.n << '\n';
        for (const auto& w : shown) out_ << braces(w.elements) << '\n';
        break;
    }
    return exit_ok;
  }

  int bounds(const BoundsArgs& a) {
    if (a.k.empty() && a.n.empty()) fail(ErrorCode::invalid_argument, "bounds needs --k and/or --n");
    std::vector<Regime> regimes;
    if (a.regime == "all") {
      regimes = {Regime::constructive, Regime::unconditional, Regime::large_k, Regime::bhp, Regime::rh};
    } else {
      regimes = {parse_regime(a.regime)};
    }
    std::vector<BoundReport> reports;
    for (auto regime : regimes) {
      if (!a.k.empty()) {
        if (regime == Regime::constructive) {
          std::uint64_t k = 0;
          try {
            k = std::stoull(a.k);
          } catch (const std::exception&) {
            fail(ErrorCode::invalid_argument, "constructive bounds need k to fit in 64 bits");
          }
          reports.push_back(constructive_bound(a.h, k));
        } else {
          reports.push_back(inverse_bound(a.h, a.k, regime));
        }
      }
      if (!a.n.empty() && regime != Regime::constructive) reports.push_back(density_bound(a.h, a.n, regime));
    }
    switch (g_.format) {
      case Format::json:
        out_ << json(reports).dump() << '\n';
        break;
      case Format::csv:
        out_ << "quantity,regime,argument,relation,value,vacuous,hypotheses\n";
        for (const auto& r : reports) {
          out_ << to_string(r.quantity) << ',' << to_string(r.regime) << ',' << r.argument << ',' << r.relation << ','
               << r.value << ',' << (r.vacuous ? "true" : "false") << ",\"" << r.hypotheses << "\"\n";
        }
        break;
      case Format::pretty:
        for (const auto& r : reports) {
          const std::string lhs = r.quantity == Quantity::inverse ? "R_" + std::to_string(r.h) + "^-1(" + r.argument + ")"
                                                                  : "R_" + std::to_string(r.h) + "(" + r.argument + ")";
          out_ << '[' << to_string(r.regime) << "] " << lhs << ' ' << r.relation << ' ' << r.value;
          if (r.vacuous) out_ << " (vacuous; formula gives " << r.raw_value << ")";
          out_ << "\n    " << r.formula;
          if (r.q) out_ << " with q=" << *r.q << " (" << r.construction << ")";
          if (!r.hypotheses.empty()) out_ << "; " << r.hypotheses;
          out_ << '\n';
        }
        break;
    }
    return exit_ok;
  }

 private:
  static bool as_prime_power_ok(std::uint64_t q) {
    try {
      PrimePower::from_q(q);
      return true;
    } catch (const Error&) {
      return false;
    }
  }

  const Globals& g_;
  std::ostream& out_;
  std::optional<ConwayDatabase> db_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bose and Singer B_h sets over finite fields", "bhsets"};
  app.require_subcommand(1);
  // --h is the B_h order, so help is long-form only
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", "bhsets 0.1.0");

  Globals g;
  if (const char* env = std::getenv("BHSETS_CONWAY_DB")) g.conway_db = env;
  const std::map<std::string, Format> formats{{"pretty", Format::pretty}, {"json", Format::json}, {"csv", Format::csv}};
  app.add_option("--format", g.format, "Output format: pretty, json or csv")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--conway-db", g.conway_db, "Conway polynomial list (default: bundled, or $BHSETS_CONWAY_DB)")
      ->check(CLI::ExistingFile);
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");
  app.fallthrough();

  const auto family_check = CLI::IsMember({"bose", "singer"}, CLI::ignore_case);

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build one Bose or Singer set and verify it");
  construct->add_option("--family", ca.family)->required()->check(family_check);
  construct->add_option("--h", ca.h)->required()->check(CLI::Range(2, 64));
  construct->add_option("--q", ca.q)->required()->check(CLI::Range(std::uint64_t{2}, UINT64_MAX));
  construct->add_option("--b", ca.b)->required();

  ClassifyArgs cl;
  auto* classify = app.add_subcommand("classify", "Group b values into affine equivalence classes");
  classify->add_option("--family", cl.family)->required()->check(family_check);
  classify->add_option("--h", cl.h)->required()->check(CLI::Range(2, 64));
  classify->add_option("--q", cl.q)->required()->check(CLI::Range(std::uint64_t{2}, UINT64_MAX));
  classify->add_option("--mode", cl.mode, "Singer criterion vii: fast or full")
      ->check(CLI::IsMember({"fast", "full"}));
  classify->add_flag("--certify", cl.certify, "Check representatives pairwise by direct search");

  ScanArgs sa;
  auto* scan = app.add_subcommand("scan", "Best affine subsets over several fields");
  scan->add_option("--family", sa.family)->required()->check(family_check);
  scan->add_option("--h", sa.h)->required()->check(CLI::Range(2, 64));
  auto* qmax = scan->add_option("--q-max", sa.q_max, "Scan every prime power up to this");
  auto* qlist = scan->add_option("--q-list", sa.q_list, "Comma separated prime powers")->delimiter(',');
  qmax->excludes(qlist);
  scan->add_option("--k", sa.k, "Largest subset size")->required()->check(CLI::PositiveNumber);
  scan->add_option("--checkpoint", sa.checkpoint, "Resumable progress file");
  scan->add_option("--chunk", sa.chunk, "Dilations per checkpoint line")->check(CLI::PositiveNumber);
  scan->add_flag("--jsonl", sa.jsonl, "Stream improvements as JSON lines");

  GreedyArgs ga;
  auto* greedy = app.add_subcommand("greedy", "Greedy B_h sequence");
  greedy->add_option("--h", ga.h)->required()->check(CLI::Range(2, 64));
  greedy->add_option("--count", ga.count)->required();
  greedy->add_option("--offset", ga.offset, "First term (1, or 0 for the 0-based variant)");

  ExactArgs ea;
  auto* exact = app.add_subcommand("exact", "Minimum-diameter B_h sets by exhaustive search");
  exact->add_option("--h", ea.h)->required()->check(CLI::Range(2, 64));
  exact->add_option("--k", ea.k)->required()->check(CLI::PositiveNumber);
  exact->add_option("--cap", ea.cap, "Give up past this n");
  exact->add_flag("--expensive", ea.expensive, "Allow k beyond the quick envelope");
  exact->add_flag("--all", ea.all, "List reflections separately");

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "Bounds on R_h^{-1}(k) and R_h(n)");
  bounds->add_option("--h", ba.h)->required()->check(CLI::Range(2, 64));
  bounds->add_option("--k", ba.k);
  bounds->add_option("--n", ba.n);
  bounds->add_option("--regime", ba.regime, "unconditional, large-k, BHP, RH, constructive or all");

  std::vector<std::string> argv_store{"bhsets"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_invalid;
  }

  try {
    Runner run(g, out);
    if (*construct) return run.construct(ca);
    if (*classify) return run.classify(cl);
    if (*scan) return run.scan(sa);
    if (*greedy) return run.greedy(ga);
    if (*exact) return run.exact(ea);
    if (*bounds) return run.bounds(ba);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::verification_failed ? exit_verification : exit_invalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_invalid;
  }
  return exit_invalid;
}

}  // namespace bh
