#include "relsrs/cli.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "relsrs/cert_io.hpp"
#include "relsrs/enumerate.hpp"
#include "relsrs/term.hpp"
#include "relsrs/tpdb.hpp"

namespace relsrs {

  namespace {

    namespace fs = std::filesystem;

    // Thrown for anything reported as "ERROR: ..." with exit code 2.
    struct UsageError : std::runtime_error {
      using std::runtime_error::runtime_error;
    };

    std::string read_file(std::string const& path) {
      std::ifstream in(path, std::ios::binary);
      if (!in) {
        throw UsageError("cannot open " + path);
      }
      std::stringstream buf;
      buf << in.rdbuf();
      return buf.str();
    }

    RelSrs load_system(std::string const& path) {
      try {
        return to_system(parse_srs(read_file(path)));
      } catch (ParseError const& e) {
        throw UsageError(path + ":" + e.what());
      }
    }

    struct Options {
      std::string file;
      std::string cert_file;
      std::string check_cert;
      std::string out_dir;

      std::size_t  alphabet         = 2;
      std::size_t  max_size         = 4;
      bool         do_prove         = false;
      std::size_t  jobs             = 1;
      bool         identify_reverse = false;
      bool         prune_trivial    = false;
      bool         allow_unused     = false;
      bool         allow_empty_r    = false;
      bool         allow_empty_s    = false;

      ProveBudget       budget;
      LoopSearchBounds  loop_bounds;  // for the loop subcommand
      std::size_t       max_closure_size = 20;
    };

    void add_budget_flags(CLI::App* cmd, Options& o) {
      cmd->add_option("--max-weight", o.budget.max_weight, "largest letter weight tried")
          ->capture_default_str();
      cmd->add_option("--max-dim", o.budget.matrix.max_dim,
                      "largest matrix dimension (<=2 exhaustive, above randomized)")
          ->capture_default_str();
      cmd->add_option("--max-entry", o.budget.matrix.max_entry, "largest matrix entry")
          ->capture_default_str();
      cmd->add_option("--random-trials", o.budget.matrix.random_trials,
                      "hill-climbing steps per randomized dimension")
          ->capture_default_str();
      cmd->add_option("--max-word-len", o.budget.loop.max_word_len, "loop search word length")
          ->capture_default_str();
      cmd->add_option("--max-steps", o.budget.loop.max_steps, "loop search derivation length")
          ->capture_default_str();
      cmd->add_option("--max-states", o.budget.loop.max_states, "loop search state budget")
          ->capture_default_str();
      cmd->add_option("--timeout", o.budget.timeout_seconds, "seconds per system (0: none)")
          ->capture_default_str();
    }

    void print_outcome(ProofOutcome const& o, Alphabet const& alphabet, std::ostream& out) {
      out << to_string(o.verdict) << "\n";
      if (o.certificate) {
        out << write_certificate(*o.certificate, alphabet);
        return;
      }
      out << "reason: " << o.reason << "\n";
      for (auto const& a : o.attempts) {
        out << "attempt " << a.target << " " << a.method << ": " << a.outcome << "\n";
      }
    }

    int exit_code(Verdict v) {
      return v == Verdict::maybe ? 1 : 0;
    }

    int cmd_prove(Options const& o, std::ostream& out) {
      auto const system = load_system(o.file);
      if (!o.check_cert.empty()) {
        std::optional<Certificate> cert;
        CheckResult                check;
        try {
          cert  = read_certificate(read_file(o.check_cert), system.alphabet);
          check = check_certificate(*cert, system);
        } catch (CertificateError const& e) {
          check = CheckResult::fail(e.what());
        }
        if (check) {
          ProofOutcome res;
          res.verdict     = claimed_verdict(*cert);
          res.certificate = std::move(*cert);
          print_outcome(res, system.alphabet, out);
          return exit_code(res.verdict);
        }
        auto res = prove(system, o.budget);
        res.attempts.insert(res.attempts.begin(),
                            {"supplied certificate", "R/S", "rejected: " + check.reason});
        print_outcome(res, system.alphabet, out);
        return exit_code(res.verdict);
      }
      auto res = prove(system, o.budget);
      print_outcome(res, system.alphabet, out);
      return exit_code(res.verdict);
    }

    int cmd_check_cert(Options const& o, std::ostream& out) {
      auto const  system = load_system(o.file);
      CheckResult res;
      try {
        auto cert = read_certificate(read_file(o.cert_file), system.alphabet);
        res       = check_certificate(cert, system);
      } catch (CertificateError const& e) {
        res = CheckResult::fail(e.what());
      }
      if (res) {
        out << "CERTIFIED\n";
        return 0;
      }
      out << "REJECTED: " << res.reason << "\n";
      return 1;
    }

    int cmd_loop(Options const& o, std::ostream& out) {
      auto const system = load_system(o.file);
      auto       found  = search_mixed_loop(system, o.loop_bounds);
      if (!found) {
        found = search_emitting_loop(system, o.loop_bounds);
      }
      if (found) {
        out << "NO\n" << write_certificate(*found.certificate, system.alphabet);
        return 0;
      }
      out << "MAYBE\nnone found (bound " << o.loop_bounds.max_word_len << ")\n";
      return 1;
    }

    int cmd_closures(Options const& o, std::ostream& out) {
      auto const system  = load_system(o.file);
      auto const closure = find_looping_forward_closure(system, o.max_closure_size);
      if (!closure) {
        out << "MAYBE\nnone found (bound " << o.max_closure_size << ")\n";
        return 1;
      }
      out << "NO\n"
          << "closure " << to_string(closure->source, system.alphabet) << " ->+ "
          << to_string(closure->target, system.alphabet) << " (" << closure->strict_steps
          << " strict steps)\n"
          << write_certificate(to_loop_certificate(*closure, system), system.alphabet);
      return 0;
    }

    int cmd_parse(Options const& o, std::ostream& out) {
      try {
        out << print_srs(parse_srs(read_file(o.file)));
      } catch (ParseError const& e) {
        throw UsageError(o.file + ":" + e.what());
      }
      return 0;
    }

    std::string file_name(std::size_t size, std::size_t seq) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "s%02zu-%06zu.srs", size, seq);
      return buf;
    }

    int cmd_enumerate(Options const& o, std::ostream& out) {
      EnumerationConfig config;
      config.alphabet_size            = o.alphabet;
      config.max_size                 = o.max_size;
      config.identify_reversal        = o.identify_reverse;
      config.prune_trivial            = o.prune_trivial;
      config.require_all_letters_used = !o.allow_unused;
      config.require_nonempty_r       = !o.allow_empty_r;
      config.require_nonempty_s       = !o.allow_empty_s;
      if (config.alphabet_size < 1 || config.alphabet_size > 4) {
        throw UsageError("--alphabet must be between 1 and 4");
      }

      std::error_code ec;
      fs::create_directories(o.out_dir, ec);
      if (ec || !fs::is_directory(o.out_dir)) {
        throw UsageError("cannot create directory " + o.out_dir);
      }
      auto write = [&](fs::path const& p, std::string const& text) {
        std::ofstream f(p, std::ios::binary);
        f << text;
        if (!f) {
          throw UsageError("cannot write " + p.string());
        }
      };

      struct Entry {
        std::string name;
        std::size_t size;
        RelSrs      system;
      };
      std::vector<Entry>                 kept;
      std::map<std::size_t, std::size_t> seq;
      auto stats = enumerate_systems(config, [&](RelSrs const& s) {
        auto const size = system_size(s);
        auto const name = file_name(size, ++seq[size]);
        write(fs::path(o.out_dir) / name, print_srs(to_document(s)));
        if (o.do_prove) {
          kept.push_back({name, size, s});
        }
      });
      auto manifest = enumeration_manifest(config, stats);

      if (o.do_prove) {
        std::vector<ProofOutcome> results(kept.size());
        std::atomic<std::size_t>  next{0};
        auto                      worker = [&] {
          for (std::size_t i; (i = next++) < kept.size();) {
            results[i] = prove(kept[i].system, o.budget);
          }
        };
        std::vector<std::thread> pool;
        auto const jobs = std::max<std::size_t>(1, o.jobs);
        for (std::size_t t = 1; t < jobs; ++t) {
          pool.emplace_back(worker);
        }
        worker();
        for (auto& t : pool) {
          t.join();
        }

        std::map<std::size_t, std::array<std::size_t, 3>> by_size;
        std::ostringstream                                 verdicts;
        for (std::size_t i = 0; i < kept.size(); ++i) {
          auto const& r = results[i];
          ++by_size[kept[i].size][static_cast<std::size_t>(r.verdict)];
          verdicts << kept[i].name << " " << to_string(r.verdict);
          if (r.certificate) {
            verdicts << " " << certificate_type(*r.certificate);
          }
          verdicts << "\n";
          if (r.verdict == Verdict::maybe) {
            verdicts << "  # " << to_string(kept[i].system) << "\n";
          }
        }
        write(fs::path(o.out_dir) / "verdicts.txt", verdicts.str());
        std::ostringstream summary;
        summary << "# verdicts by size: YES NO MAYBE\n";
        std::array<std::size_t, 3> total{};
        for (std::size_t size = 1; size <= config.max_size; ++size) {
          auto const c = by_size[size];
          summary << "verdicts " << size << " " << c[0] << " " << c[1] << " " << c[2] << "\n";
          for (std::size_t k = 0; k < 3; ++k) {
            total[k] += c[k];
          }
        }
        summary << "verdicts total " << total[0] << " " << total[1] << " " << total[2] << "\n";
        manifest += summary.str();
      }
      write(fs::path(o.out_dir) / "manifest.txt", manifest);
      out << manifest;
      return 0;
    }

  }  // namespace

  int run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"relsrs: relative termination of string rewriting systems"};
    app.require_subcommand(1);
    Options o;
    if (char const* seed = std::getenv("RELSRS_SEED")) {
      try {
        o.budget.matrix.seed = std::stoull(seed);
      } catch (std::exception const&) {
        out << "ERROR: RELSRS_SEED must be an unsigned integer\n";
        return 2;
      }
    }

    auto* prove_cmd = app.add_subcommand("prove", "decide SN(R/S) within a budget");
    prove_cmd->add_option("file", o.file, "SRS file")->required();
    prove_cmd->add_option("--check-cert", o.check_cert,
                          "certificate to check first; searched only if rejected");
    add_budget_flags(prove_cmd, o);

    auto* enum_cmd = app.add_subcommand("enumerate", "enumerate systems up to renaming");
    enum_cmd->add_option("--alphabet", o.alphabet, "alphabet size (1..4)")->capture_default_str();
    enum_cmd->add_option("--max-size", o.max_size, "largest system size")->capture_default_str();
    enum_cmd->add_option("--out", o.out_dir, "output directory")->required();
    enum_cmd->add_flag("--prove", o.do_prove, "run prove on every system");
    enum_cmd->add_option("--jobs", o.jobs, "prover threads")->capture_default_str();
    enum_cmd->add_flag("--identify-reversal", o.identify_reverse,
                       "also identify systems with their word reversal");
    enum_cmd->add_flag("--prune-trivial", o.prune_trivial,
                       "drop systems settled by the trivial checks");
    enum_cmd->add_flag("--allow-unused-letters", o.allow_unused, "");
    enum_cmd->add_flag("--allow-empty-r", o.allow_empty_r, "");
    enum_cmd->add_flag("--allow-empty-s", o.allow_empty_s, "");
    add_budget_flags(enum_cmd, o);

    auto* loop_cmd = app.add_subcommand("loop", "search for a mixed or emitting loop");
    loop_cmd->add_option("file", o.file, "SRS file")->required();
    loop_cmd->add_option("--max-word-len", o.loop_bounds.max_word_len)->capture_default_str();
    loop_cmd->add_option("--max-steps", o.loop_bounds.max_steps)->capture_default_str();
    loop_cmd->add_option("--max-states", o.loop_bounds.max_states)->capture_default_str();

    auto* clos_cmd = app.add_subcommand("closures", "search for a looping forward closure");
    clos_cmd->add_option("file", o.file, "SRS file")->required();
    clos_cmd->add_option("--max-closure-size", o.max_closure_size)->capture_default_str();

    auto* check_cmd = app.add_subcommand("check-cert", "check a certificate against a system");
    check_cmd->add_option("file", o.file, "SRS file")->required();
    check_cmd->add_option("cert", o.cert_file, "certificate file")->required();

    auto* parse_cmd = app.add_subcommand("parse", "parse and print an SRS file");
    parse_cmd->add_option("file", o.file, "SRS file")->required();

    std::vector<char const*> argv{"relsrs"};
    for (auto const& a : args) {
      argv.push_back(a.c_str());
    }
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (CLI::ParseError const& e) {
      if (e.get_exit_code() == 0) {
        return app.exit(e, out, err);
      }
      out << "ERROR: " << e.what() << "\n";
      return 2;
    }

    try {
      if (*prove_cmd) {
        return cmd_prove(o, out);
      }
      if (*enum_cmd) {
        return cmd_enumerate(o, out);
      }
      if (*loop_cmd) {
        return cmd_loop(o, out);
      }
      if (*clos_cmd) {
        return cmd_closures(o, out);
      }
      if (*check_cmd) {
        return cmd_check_cert(o, out);
      }
      return cmd_parse(o, out);
    } catch (UsageError const& e) {
      out << "ERROR: " << e.what() << "\n";
    } catch (SchemaError const& e) {
      out << "ERROR: " << e.what() << "\n";
    } catch (CertificateError const& e) {
      out << "ERROR: " << e.what() << "\n";
    } catch (std::exception const& e) {
      out << "ERROR: " << e.what() << "\n";
    }
    return 2;
  }

}  // namespace relsrs
