#include "cli.hpp"

#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "autostack/instances.hpp"
#include "autostack/io.hpp"
#include "autostack/kernels.hpp"
#include "autostack/verify.hpp"

namespace autostack::cli {

  namespace {
    struct Options {
      std::string                  ref;
      std::string                  word;
      std::string                  output;
      std::size_t                  radius    = 3;
      std::size_t                  max_len   = 12;
      std::size_t                  samples   = 1000;
      std::optional<std::uint64_t> seed;
      std::optional<std::uint64_t> budget;
      bool                         json   = false;
      bool                         as_dot = false;
      bool                         serial = false;
    };

    Json report_json(VerifyReport const& r) {
      Json checks = Json::array();
      for (auto const& c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"passed", c.passed},
                          {"checked", c.checked},
                          {"note", c.note},
                          {"witnesses", c.witnesses}});
      }
      return {{"structure", r.structure},
              {"radius", r.radius},
              {"ball_size", r.ball_size},
              {"passed", r.passed()},
              {"checks", checks}};
    }

    // Normalize against the oracle on seeded random words.
    CheckResult random_oracle(StackingStructure const& s, Options const& o, Exec exec) {
      CheckResult c{"random-oracle", true, 0, {}, {}};
      if (!s.oracle()) {
        c.note = "no oracle attached";
        return c;
      }
      auto const& alpha = s.alphabet();
      auto const  words = random_words(alpha, o.samples, o.max_len, *o.seed);
      c.checked         = words.size();
      c.note            = fmt::format("seed {}, {} words of length <= {}", *o.seed, o.samples, o.max_len);
      for (auto const& m : oracle_mismatches(s, words, exec)) {
        c.passed = false;
        if (c.witnesses.size() < 5) {
          c.witnesses.push_back(m.error.empty() ? fmt::format("'{}': flow '{}', oracle '{}'", alpha.format(m.word),
                                                              alpha.format(m.flow), alpha.format(m.oracle))
                                                : fmt::format("'{}': {}", alpha.format(m.word), m.error));
        }
      }
      return c;
    }

    void emit(std::string const& text, Options const& o, std::ostream& out) {
      if (o.output.empty() || o.output == "-") {
        out << text;
        return;
      }
      std::ofstream file(o.output);
      if (!file) {
        throw Error(fmt::format("cannot write '{}'", o.output));
      }
      file << text;
    }

    int build(std::string const& kind, Options const& o, std::ostream& out) {
      std::filesystem::path const path(o.ref);
      auto                        doc = read_json_file(path);
      auto const                  got = doc.value("kind", std::string());
      if (got != kind) {
        throw ParseError(fmt::format("recipe kind is '{}', expected '{}'", got, kind));
      }
      auto c = run_recipe(doc, path.parent_path());
      emit(structure_to_json(c.structure).dump(2) + "\n", o, out);
      return kOk;
    }
  }  // namespace

  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Autostackable structures: normal forms, verification and constructions", "autostack"};
    app.require_subcommand(1);
    Options o;

    auto add_ref = [&](CLI::App* sub, char const* what = "structure: builtin:<name> or a structure file") {
      sub->add_option("structure", o.ref, what)->required();
    };
    auto add_common = [&](CLI::App* sub) {
      sub->add_flag("--json", o.json, "machine-readable output");
      sub->add_option("--budget", o.budget, "edge visits allowed per normalize step");
    };

    auto* normalize = app.add_subcommand("normalize", "print the normal form of a word");
    add_ref(normalize);
    normalize->add_option("word", o.word, "whitespace-separated letters")->required();
    add_common(normalize);

    auto* verify_cmd = app.add_subcommand("verify", "check the flow-function axioms on a ball");
    add_ref(verify_cmd);
    add_common(verify_cmd);
    verify_cmd->add_option("--radius", o.radius, "ball radius")->capture_default_str();
    verify_cmd->add_option("--seed", o.seed, "also compare normalize with the oracle on random words");
    verify_cmd->add_option("--samples", o.samples, "random words for --seed")->capture_default_str();
    verify_cmd->add_option("--max-len", o.max_len, "maximum random word length")->capture_default_str();
    verify_cmd->add_flag("--serial", o.serial, "run the kernels serially");

    auto* ball_cmd = app.add_subcommand("ball", "list normal forms of the ball, length-lexicographically");
    add_ref(ball_cmd);
    add_common(ball_cmd);
    ball_cmd->add_option("--radius", o.radius, "ball radius")->capture_default_str();

    auto* rules_cmd = app.add_subcommand("rules", "prefix-rewriting rules for edges leaving the ball");
    add_ref(rules_cmd);
    add_common(rules_cmd);
    rules_cmd->add_option("--radius", o.radius, "ball radius")->capture_default_str();

    std::map<CLI::App*, std::string> builders;
    for (auto [verb, kind, help] : {std::tuple{"product", "graph_product", "build a graph product from a recipe"},
                                    std::tuple{"extend", "extension", "build an extension from a recipe"},
                                    std::tuple{"index", "finite_index", "build a finite-index supergroup from a recipe"}}) {
      auto* sub = app.add_subcommand(verb, help);
      add_ref(sub, "recipe file");
      sub->add_option("-o,--output", o.output, "structure file to write (default stdout)");
      builders[sub] = kind;
    }

    auto* export_fsa = app.add_subcommand("export-fsa", "write the normal-form acceptor");
    auto* graph_cmd  = app.add_subcommand("graph-automaton", "write the padded acceptor of graph(phi)");
    for (auto* sub : {export_fsa, graph_cmd}) {
      add_ref(sub);
      sub->add_flag("--dot", o.as_dot, "Graphviz instead of JSON");
      sub->add_option("-o,--output", o.output, "file to write (default stdout)");
    }

    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
    } catch (CLI::ParseError const& e) {
      auto const code = app.exit(e, out, err);
      return code == 0 ? kOk : kUsageOrParse;
    }

    try {
      NormalizeOptions nopts;
      nopts.budget    = o.budget;
      auto const exec = o.serial ? Exec::serial : Exec::parallel;

      for (auto const& [sub, kind] : builders) {
        if (sub->parsed()) {
          return build(kind, o, out);
        }
      }

      auto const s     = load_structure(o.ref);
      auto const alpha = s.alphabet();

      if (normalize->parsed()) {
        auto const w  = alpha.parse(o.word);
        auto const nf = s.normalize(w, nopts);
        if (o.json) {
          out << Json{{"input", alpha.format(w)}, {"normal_form", alpha.format(nf)}}.dump() << "\n";
        } else {
          out << alpha.format(nf) << "\n";
        }
        return kOk;
      }

      if (verify_cmd->parsed()) {
        VerifyOptions vopts;
        vopts.budget = o.budget;
        vopts.exec   = exec;
        auto report  = verify(s, o.radius, vopts);
        if (o.seed) {
          report.checks.push_back(random_oracle(s, o, exec));
        }
        out << (o.json ? report_json(report).dump(2) + "\n" : format_report(report));
        return report.passed() ? kOk : kFailed;
      }

      if (ball_cmd->parsed()) {
        auto const members = ball(s, o.radius);
        if (o.json) {
          Json list = Json::array();
          for (auto const& y : members) {
            list.push_back(alpha.format(y));
          }
          out << list.dump() << "\n";
        } else {
          for (auto const& y : members) {
            out << alpha.format(y) << "\n";
          }
        }
        return kOk;
      }

      if (rules_cmd->parsed()) {
        auto const rules = to_prefix_rules(s, o.radius);
        if (o.json) {
          Json list = Json::array();
          for (auto const& r : rules) {
            list.push_back({{"lhs", alpha.format(r.lhs)},
                            {"rhs", alpha.format(r.rhs)},
                            {"common", r.common},
                            {"backtrack", r.backtrack}});
          }
          out << list.dump(2) << "\n";
        } else {
          for (auto const& r : rules) {
            out << format_rule(alpha, r) << "\n";
          }
        }
        return kOk;
      }

      if (export_fsa->parsed()) {
        auto const f = minimize(s.normal_forms());
        emit(o.as_dot ? fsa_to_dot(f, s.name()) : fsa_to_json(f).dump(2) + "\n", o, out);
        return kOk;
      }

      if (graph_cmd->parsed()) {
        auto const g = graph_automaton(s);
        emit(o.as_dot ? sync_to_dot(g, s.name()) : sync_to_json(g).dump(2) + "\n", o, out);
        return kOk;
      }
    } catch (ParseError const& e) {
      err << "error: " << e.what() << "\n";
      return kUsageOrParse;
    } catch (AlphabetMismatch const& e) {
      err << "error: " << e.what() << "\n";
      return kUsageOrParse;
    } catch (TableMissing const& e) {
      err << "error: " << e.what() << "\n";
      return kUsageOrParse;
    } catch (std::exception const& e) {
      err << "error: " << e.what() << "\n";
      return kFailed;
    }
    return kUsageOrParse;
  }

}  // namespace autostack::cli
