#include "autostack/verify.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

namespace autostack {

  namespace {
    std::string show(Alphabet const& alpha, Word const& w) {
      auto text = alpha.format(w);
      return text.empty() ? std::string("1") : text;
    }

    std::string show_edge(Alphabet const& alpha, Word const& y, Letter a) {
      return fmt::format("({}, {})", show(alpha, y), alpha.name(a));
    }

    class Collector {
     public:
      Collector(std::string name, std::size_t max_witnesses) : max_(max_witnesses) {
        result_.name = std::move(name);
      }

      void tick(std::size_t n = 1) {
        result_.checked += n;
      }
      void fail(std::string witness) {
        result_.passed = false;
        if (result_.witnesses.size() < max_) {
          result_.witnesses.push_back(std::move(witness));
        }
      }
      void note(std::string text) {
        result_.note = std::move(text);
      }
      CheckResult take() {
        return std::move(result_);
      }

     private:
      CheckResult result_;
      std::size_t max_;
    };

    // A directed edge (y, a); with merging, the smaller of an edge and its
    // reverse stands for the undirected edge.
    struct EdgeKey {
      Word   source;
      Letter letter = 0;

      bool operator==(EdgeKey const&) const = default;
    };

    struct EdgeKeyHash {
      std::size_t operator()(EdgeKey const& e) const noexcept {
        return WordHash{}(e.source) * 31 + e.letter;
      }
    };

    bool key_less(EdgeKey const& x, EdgeKey const& y) {
      if (x.source != y.source) {
        return shortlex_less(x.source, y.source);
      }
      return x.letter < y.letter;
    }

    EdgeKey undirected(Alphabet const& alpha, Word const& y, Letter a, Word const& target) {
      EdgeKey fwd{y, a};
      EdgeKey rev{target, alpha.inverse(a)};
      return key_less(rev, fwd) ? rev : fwd;
    }

    CheckResult check_guards(StackingStructure const&       s,
                             std::vector<EdgeRecord> const& edges,
                             VerifyOptions const&           opts) {
      auto const& alpha = s.alphabet();
      Collector   c("guard-partition", opts.max_witnesses);
      if (s.has_rules()) {
        auto const& n     = s.normal_forms();
        auto const& rules = s.rules();
        for (std::size_t i = 0; i < rules.size(); ++i) {
          c.tick();
          if (auto w = shortest_word(difference(rules[i].guard, n))) {
            c.fail(fmt::format("guard of rule {} for {} accepts non-normal form '{}'", i,
                               alpha.name(rules[i].letter), show(alpha, *w)));
          }
        }
        for (Letter a = 0; a < alpha.size(); ++a) {
          std::vector<std::size_t> idx;
          for (std::size_t i = 0; i < rules.size(); ++i) {
            if (rules[i].letter == a) {
              idx.push_back(i);
            }
          }
          Fsa covered = Fsa::empty_language(alpha.symbols());
          for (std::size_t p = 0; p < idx.size(); ++p) {
            covered = unite(covered, rules[idx[p]].guard);
            for (std::size_t q = p + 1; q < idx.size(); ++q) {
              c.tick();
              auto both = intersect(rules[idx[p]].guard, rules[idx[q]].guard);
              if (auto w = shortest_word(intersect(both, n))) {
                c.fail(fmt::format("rules {} and {} for {} overlap at '{}'", idx[p], idx[q], alpha.name(a),
                                   show(alpha, *w)));
              }
            }
          }
          c.tick();
          if (auto w = shortest_word(difference(n, covered))) {
            c.fail(fmt::format("no rule for {} covers '{}'", alpha.name(a), show(alpha, *w)));
          }
        }
      } else {
        c.note("no piecewise rules; coverage checked by evaluation");
      }
      for (auto const& e : edges) {
        c.tick();
        if (e.uncovered || (s.has_rules() && e.error.empty() && e.matches != 1)) {
          c.fail(fmt::format("{}: {} matching rules", show_edge(alpha, e.source, e.letter), e.matches));
        }
      }
      return c.take();
    }

    CheckResult check_f2r(StackingStructure const&       s,
                          std::vector<EdgeRecord> const& edges,
                          std::size_t                    radius,
                          VerifyOptions const&           opts) {
      auto const& alpha = s.alphabet();
      Collector   c("F2r", opts.max_witnesses);
      for (auto const& e : edges) {
        if (e.over_budget) {
          c.fail(fmt::format("{}: {}", show_edge(alpha, e.source, e.letter), e.error));
        }
      }

      std::unordered_set<Word, WordHash> domain;
      for (auto const& e : edges) {
        domain.insert(e.source);
      }
      std::unordered_map<EdgeKey, std::size_t, EdgeKeyHash> ids;
      std::vector<EdgeKey>                                  keys;
      auto id_of = [&](EdgeKey const& k) {
        auto [it, inserted] = ids.emplace(k, keys.size());
        if (inserted) {
          keys.push_back(k);
        }
        return it->second;
      };
      std::vector<std::vector<std::size_t>> succ;
      for (auto const& e : edges) {
        if (e.tree || !e.target || !e.error.empty()) {
          continue;
        }
        auto const from = id_of(opts.merge_reverse_edges ? undirected(alpha, e.source, e.letter, *e.target)
                                                         : EdgeKey{e.source, e.letter});
        for (auto const& p : e.path) {
          if (p.tree || !domain.contains(p.source)) {
            continue;
          }
          auto const to = id_of(opts.merge_reverse_edges ? undirected(alpha, p.source, p.letter, p.target)
                                                         : EdgeKey{p.source, p.letter});
          if (succ.size() < keys.size()) {
            succ.resize(keys.size());
          }
          succ[from].push_back(to);
        }
      }
      succ.resize(keys.size());
      c.tick(keys.size());

      // Iterative three-colour DFS; a grey successor closes a cycle.
      std::vector<std::uint8_t> colour(keys.size(), 0);
      std::vector<std::size_t>  parent(keys.size(), SIZE_MAX);
      bool                      found = false;
      for (std::size_t root = 0; root < keys.size() && !found; ++root) {
        if (colour[root] != 0) {
          continue;
        }
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
        colour[root] = 1;
        while (!stack.empty() && !found) {
          auto& [v, next] = stack.back();
          if (next == succ[v].size()) {
            colour[v] = 2;
            stack.pop_back();
            continue;
          }
          auto const w = succ[v][next++];
          if (colour[w] == 0) {
            colour[w] = 1;
            parent[w] = v;
            stack.emplace_back(w, 0);
          } else if (colour[w] == 1) {
            std::vector<std::string> cycle;
            for (auto u = v;; u = parent[u]) {
              cycle.push_back(show_edge(alpha, keys[u].source, keys[u].letter));
              if (u == w) {
                break;
              }
            }
            std::reverse(cycle.begin(), cycle.end());
            c.fail(fmt::format("dependency cycle: {}", fmt::join(cycle, " -> ")));
            found = true;
          }
        }
      }
      auto r = c.take();
      if (r.passed) {
        r.note = fmt::format("certified on ball of radius {}", radius);
      }
      return r;
    }
  }  // namespace

  bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](auto const& c) { return c.passed; });
  }

  CheckResult const& VerifyReport::check(std::string const& name) const {
    for (auto const& c : checks) {
      if (c.name == name) {
        return c;
      }
    }
    throw Error(fmt::format("no check named '{}'", name));
  }

  VerifyReport verify(StackingStructure const& s, std::size_t radius, VerifyOptions const& opts) {
    auto const&  alpha = s.alphabet();
    VerifyReport report;
    report.structure = s.name();
    report.radius    = radius;

    // A ball that cannot be enumerated (a flow that never terminates, an
    // uncovered edge) is reported, and the checks run on the largest radius
    // that can be.
    std::vector<Word> members;
    std::string       ball_error;
    for (std::size_t reached = radius;; --reached) {
      try {
        members = ball(s, reached, opts.exec);
        if (!ball_error.empty()) {
          report.checks.push_back(
              {"ball", false, 1, {fmt::format("radius {}: {}", radius, ball_error)},
               fmt::format("checks below use radius {}", reached)});
        }
        break;
      } catch (std::exception const& e) {
        if (ball_error.empty()) {
          ball_error = e.what();
        }
      }
    }
    report.ball_size   = members.size();
    auto const edges   = scan_edges(s, members, opts.budget, opts.exec);

    report.checks.push_back(check_guards(s, edges, opts));

    {
      Collector c("boundedness", opts.max_witnesses);
      std::size_t longest = 0;
      for (auto const& e : edges) {
        if (!e.stack) {
          continue;
        }
        c.tick();
        longest = std::max(longest, e.stack->size());
        if (e.stack->size() > s.bound()) {
          c.fail(fmt::format("{}: phi = '{}' has length {} > {}", show_edge(alpha, e.source, e.letter),
                             show(alpha, *e.stack), e.stack->size(), s.bound()));
        }
      }
      c.note(fmt::format("max observed {} (bound {})", longest, s.bound()));
      report.checks.push_back(c.take());
    }

    {
      Collector c("F2d", opts.max_witnesses);
      for (auto const& e : edges) {
        if (!e.stack || !e.tree) {
          continue;
        }
        c.tick();
        if (*e.stack != Word{e.letter}) {
          c.fail(fmt::format("tree edge {}: phi = '{}'", show_edge(alpha, e.source, e.letter),
                             show(alpha, *e.stack)));
        }
      }
      report.checks.push_back(c.take());
    }

    {
      Collector c("F1", opts.max_witnesses);
      for (auto const& e : edges) {
        if (!e.stack || e.tree || !e.target) {
          continue;
        }
        c.tick();
        Word const end = e.path.empty() ? e.source : e.path.back().target;
        if (end != *e.target) {
          c.fail(fmt::format("{}: flow path ends at '{}', edge ends at '{}'", show_edge(alpha, e.source, e.letter),
                             show(alpha, end), show(alpha, *e.target)));
        } else if (e.oracle_flow && e.oracle_target && *e.oracle_flow != *e.oracle_target) {
          c.fail(fmt::format("{}: phi = '{}' ends at '{}' but the edge ends at '{}' (oracle)",
                             show_edge(alpha, e.source, e.letter), show(alpha, *e.stack),
                             show(alpha, *e.oracle_flow), show(alpha, *e.oracle_target)));
        }
      }
      if (!s.oracle()) {
        c.note("no oracle; endpoint agreement only");
      }
      report.checks.push_back(c.take());
    }

    {
      Collector c("oracle", opts.max_witnesses);
      if (auto const& oracle = s.oracle()) {
        c.note(oracle->name);
        for (auto const& y : members) {
          c.tick();
          auto o = oracle->normalize(y);
          if (o != y) {
            c.fail(fmt::format("ball element '{}' has oracle normal form '{}'", show(alpha, y), show(alpha, o)));
          }
        }
        for (auto const& e : edges) {
          if (!e.target || !e.oracle_target) {
            continue;
          }
          c.tick();
          if (*e.target != *e.oracle_target) {
            c.fail(fmt::format("{}: flow gives '{}', oracle gives '{}'", show_edge(alpha, e.source, e.letter),
                               show(alpha, *e.target), show(alpha, *e.oracle_target)));
          }
        }
      } else {
        c.note("no oracle attached");
      }
      report.checks.push_back(c.take());
    }

    {
      Collector c("dual-route", opts.max_witnesses);
      bool      any = false;
      for (auto const& e : edges) {
        if (!e.callable || !e.stack) {
          continue;
        }
        any = true;
        c.tick();
        if (*e.callable != *e.stack) {
          c.fail(fmt::format("{}: rules give '{}', callable gives '{}'", show_edge(alpha, e.source, e.letter),
                             show(alpha, *e.stack), show(alpha, *e.callable)));
        }
      }
      if (!any) {
        c.note("single route");
      }
      report.checks.push_back(c.take());
    }

    report.checks.push_back(check_f2r(s, edges, radius, opts));

    {
      Collector c("prefix-closure", opts.max_witnesses);
      c.tick();
      if (!s.is_normal_form(Word{})) {
        c.fail("empty word is not a normal form");
      }
      c.tick();
      if (!is_prefix_closed(s.normal_forms())) {
        c.fail("normal-form acceptor is not prefix-closed");
      }
      for (auto const& y : members) {
        for (std::size_t len = 0; len < y.size(); ++len) {
          c.tick();
          Word prefix(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(len));
          if (!s.is_normal_form(prefix)) {
            c.fail(fmt::format("prefix '{}' of '{}' is not a normal form", show(alpha, prefix), show(alpha, y)));
          }
        }
      }
      report.checks.push_back(c.take());
    }

    {
      Collector c("relators", opts.max_witnesses);
      auto      failures = relator_failures(s, members, opts.exec);
      c.tick(members.size() * s.relators().size());
      for (auto& f : failures) {
        if (f) {
          c.fail(std::move(*f));
        }
      }
      if (s.relators().empty()) {
        c.note("no relators");
      }
      report.checks.push_back(c.take());
    }

    // Anything scan_edges could not classify surfaces as a generic failure.
    for (auto const& e : edges) {
      if (!e.error.empty() && !e.over_budget && !e.uncovered) {
        CheckResult r{"evaluation", false, 1, {fmt::format("{}: {}", show_edge(alpha, e.source, e.letter), e.error)},
                      {}};
        report.checks.push_back(std::move(r));
        break;
      }
    }
    return report;
  }

  std::string format_report(VerifyReport const& report) {
    std::string out = fmt::format("structure {}: ball of radius {} has {} elements\n", report.structure,
                                  report.radius, report.ball_size);
    for (auto const& c : report.checks) {
      out += fmt::format("{} {} ({} checked){}\n", c.passed ? "PASS" : "FAIL", c.name, c.checked,
                         c.note.empty() ? "" : "; " + c.note);
      for (auto const& w : c.witnesses) {
        out += fmt::format("    {}\n", w);
      }
    }
    out += report.passed() ? "all checks passed\n" : "verification failed\n";
    return out;
  }

  PsiReport check_psi(StackingStructure const& s, PsiCertificate const& psi, std::size_t radius, Exec exec) {
    auto const& alpha   = s.alphabet();
    auto const  members = ball(s, radius, exec);
    auto const  edges   = scan_edges(s, members, std::nullopt, exec);

    struct Slot {
      std::size_t              edges = 0, pairs = 0, violations = 0, indeterminate = 0;
      std::vector<std::string> witnesses;
    };
    std::vector<Slot> slots(edges.size());
    for_each_index(edges.size(), exec, [&](std::size_t i) {
      auto const& e = edges[i];
      auto&       r = slots[i];
      if (e.tree || !e.error.empty()) {
        if (!e.error.empty()) {
          r.violations = 1;
          r.witnesses.push_back(fmt::format("{}: {}", show_edge(alpha, e.source, e.letter), e.error));
        }
        return;
      }
      r.edges = 1;
      std::optional<std::vector<std::size_t>> top;
      try {
        top = psi.eval(e.source, e.letter);
      } catch (std::exception const&) {
        top.reset();
      }
      for (auto const& p : e.path) {
        if (p.tree) {
          continue;
        }
        ++r.pairs;
        std::optional<std::vector<std::size_t>> sub;
        try {
          sub = psi.eval(p.source, p.letter);
        } catch (std::exception const&) {
          sub.reset();
        }
        if (!top || !sub) {
          ++r.indeterminate;
          continue;
        }
        if (!lex_less(*sub, *top)) {
          ++r.violations;
          r.witnesses.push_back(fmt::format("psi{} = ({}) is not below psi{} = ({})",
                                            show_edge(alpha, p.source, p.letter), fmt::join(*sub, ", "),
                                            show_edge(alpha, e.source, e.letter), fmt::join(*top, ", ")));
        }
      }
    });
    PsiReport out;
    for (auto& r : slots) {
      out.edges += r.edges;
      out.pairs += r.pairs;
      out.violations += r.violations;
      out.indeterminate += r.indeterminate;
      for (auto& w : r.witnesses) {
        if (out.witnesses.size() < 5) {
          out.witnesses.push_back(std::move(w));
        }
      }
    }
    return out;
  }

}  // namespace autostack
