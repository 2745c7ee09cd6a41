// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <fmt/format.h>

#include "autostack/constructions.hpp"
#include "autostack/instances.hpp"
#include "autostack/kernels.hpp"
#include "autostack/verify.hpp"

using namespace autostack;

namespace {
  struct Outcome {
    bool                     passed = true;
    std::string              summary;
    std::vector<std::string> details;

    void require(bool ok, std::string what) {
      if (!ok) {
        passed = false;
        details.push_back(std::move(what));
      }
    }
  };

  std::string first_witness(CheckResult const& c) {
    return c.witnesses.empty() ? std::string("no witness") : c.witnesses.front();
  }

  double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  StackingStructure zgen(std::string const& name) {
    return free_group(std::vector<std::string>{name});
  }

  ////////////////////////////////////////////////////////////////////////
  // 1. Stallings oracle agreement
  ////////////////////////////////////////////////////////////////////////

  Outcome oracle_agreement() {
    Outcome     o;
    auto const  t0    = std::chrono::steady_clock::now();
    auto const  s     = stallings_structure();
    auto const& alpha = s.alphabet();
    auto const  all   = all_words(alpha, 5);
    auto const  rnd   = random_words(alpha, 10'000, 12, 20240611);
    auto const  bad1  = oracle_mismatches(s, all, Exec::parallel);
    auto const  bad2  = oracle_mismatches(s, rnd, Exec::parallel);
    double const took = seconds_since(t0);
    o.require(all.size() == 111'111, fmt::format("{} exhaustive words, expected 111111", all.size()));
    for (auto const* bad : {&bad1, &bad2}) {
      for (std::size_t i = 0; i < bad->size() && i < 5; ++i) {
        auto const& m = (*bad)[i];
        o.require(false, fmt::format("'{}': flow '{}', oracle '{}' {}", alpha.format(m.word), alpha.format(m.flow),
                                     alpha.format(m.oracle), m.error));
      }
    }
    o.require(bad1.empty() && bad2.empty(), fmt::format("{} mismatches", bad1.size() + bad2.size()));
    o.require(took < 60.0, fmt::format("took {:.1f} s, limit 60 s", took));
    o.summary = fmt::format("Stallings normalize = rewriting oracle on {} words of length <= 5 (every word, "
                            "111110 nonempty) and {} seeded random words of length <= 12; {} mismatches; {:.1f} s",
                            all.size(), rnd.size(), bad1.size() + bad2.size(), took);
    return o;
  }

  ////////////////////////////////////////////////////////////////////////
  // 2. Bounds
  ////////////////////////////////////////////////////////////////////////

  std::size_t max_flow_length(StackingStructure const& s, std::size_t radius) {
    std::size_t longest = 0;
    for (auto const& e : scan_edges(s, ball(s, radius), std::nullopt, Exec::parallel)) {
      if (e.stack) {
        longest = std::max(longest, e.stack->size());
      }
    }
    return longest;
  }

  ExtensionData heisenberg_data() {
    auto const    k = graph_product(GraphSpec::complete(2), {zgen("a1"), zgen("a2")}).structure;
    ExtensionData data{k, zgen("b"), {{"b", "t"}, {"b^-1", "t^-1"}}, {}, {}};
    auto const    p = [&](char const* text) { return k.alphabet().parse(text); };
    data.conj       = {
        {{"t", "a1"}, p("a1")},          {{"t", "a1^-1"}, p("a1^-1")},       {{"t", "a2"}, p("a1 a2")},
        {{"t", "a2^-1"}, p("a1^-1 a2^-1")}, {{"t^-1", "a1"}, p("a1")},         {{"t^-1", "a1^-1"}, p("a1^-1")},
        {{"t^-1", "a2"}, p("a1^-1 a2")}, {{"t^-1", "a2^-1"}, p("a1 a2^-1")},
    };
    return data;
  }

  Outcome bounds() {
    Outcome    o;
    auto const st       = stallings_structure();
    auto const st_seen  = max_flow_length(st, 4);
    o.require(st.bound() == 5, fmt::format("Stallings declared bound {}", st.bound()));
    o.require(st_seen == 5, fmt::format("Stallings max observed flow length {}", st_seen));

    std::vector<std::string> gp;
    for (auto const& spec : {GraphSpec::complete(2), GraphSpec::discrete(2)}) {
      auto const c    = graph_product(spec, {zgen("a"), zgen("b")});
      auto const seen = max_flow_length(c.structure, 4);
      o.require(c.structure.bound() == 3, fmt::format("graph product declared bound {}", c.structure.bound()));
      o.require(seen <= 3, fmt::format("graph product observed {}", seen));
      gp.push_back(fmt::format("{}/{}", seen, c.structure.bound()));
    }

    // max{k_K, 2 + M, k_Q + m} with M, m the longest conj / corr entries.
    auto const  data = heisenberg_data();
    std::size_t m_conj = 0, m_corr = 0;
    for (auto const& [key, w] : data.conj) {
      m_conj = std::max(m_conj, w.size());
    }
    for (auto const& [key, w] : data.corr) {
      m_corr = std::max(m_corr, w.size());
    }
    std::size_t const formula = std::max({data.K.bound(), 2 + m_conj, data.Q.bound() + m_corr});
    auto const        h       = extension(data).structure;
    auto const        shipped = heisenberg_construction().structure;
    auto const        seen    = max_flow_length(h, 4);
    o.require(h.bound() == formula, fmt::format("Heisenberg declared {} but formula gives {}", h.bound(), formula));
    o.require(shipped.bound() == formula, fmt::format("shipped Heisenberg declares {}", shipped.bound()));
    o.require(seen <= h.bound(), fmt::format("Heisenberg observed {} > {}", seen, h.bound()));
    o.summary = fmt::format("Stallings observed {} / declared {}; Z x Z and Z * Z observed/declared {}, {}; "
                            "Heisenberg observed {} / declared {} = max{{{}, 2+{}, {}+{}}}",
                            st_seen, st.bound(), gp[0], gp[1], seen, h.bound(), data.K.bound(), m_conj,
                            data.Q.bound(), m_corr);
    return o;
  }

  ////////////////////////////////////////////////////////////////////////
  // 3. Verification of every shipped instance, and negative controls
  ////////////////////////////////////////////////////////////////////////

  Outcome verification() {
    Outcome                  o;
    std::vector<std::string> passed;
    auto const names = builtin_names();
    for (auto const& name : names) {
      auto const r = verify(builtin(name), 3);
      if (r.passed()) {
        passed.push_back(fmt::format("{} ({})", name, r.ball_size));
      } else {
        o.require(false, format_report(r));
      }
    }
    for (char const* required : {"free1", "free2", "Z2", "F2xF2", "heisenberg", "index2Z", "stallings"}) {
      o.require(std::find(names.begin(), names.end(), required) != names.end(),
                fmt::format("instance {} missing", required));
    }

    // Corrupted output: x^-1 a x becomes x^-1 a^-1 x in one Stallings rule.
    auto const st    = stallings_structure();
    auto       rules = st.rules();
    auto       it    = std::find_if(rules.begin(), rules.end(), [](auto const& r) { return r.output.size() == 3; });
    it->output[1]    = st.alphabet().inverse(it->output[1]);
    auto const bad   = verify(st.with_rules(rules).with_stack_fn({}), 3);
    o.require(!bad.check("F1").passed && !bad.check("F1").witnesses.empty(), "corrupted output passed F1");
    o.require(!bad.check("oracle").passed && !bad.check("oracle").witnesses.empty(),
              "corrupted output passed the oracle check");

    // Bound lowered below the longest flow path.
    auto const low = verify(st.with_bound(4), 3);
    o.require(!low.check("boundedness").passed && !low.check("boundedness").witnesses.empty(),
              "lowered bound passed boundedness");

    o.summary = fmt::format("verify(., 3) passes for {}; negative controls fail: corrupted output "
                            "(F1: {}; oracle: {}), bound 4 (boundedness: {})",
                            fmt::join(passed, ", "), first_witness(bad.check("F1")),
                            first_witness(bad.check("oracle")), first_witness(low.check("boundedness")));
    return o;
  }

  ////////////////////////////////////////////////////////////////////////
  // 4. psi monotonicity
  ////////////////////////////////////////////////////////////////////////

  Outcome psi_monotonicity() {
    Outcome o;
    struct Case {
      std::string       name;
      StackingStructure s;
      PsiCertificate    psi;
      std::size_t       radius;
    };
    std::vector<Case> cases{{"stallings", stallings_structure(), psi_stallings(), 4}};
    for (auto [name, make, radius] :
         {std::tuple{"Z2", &z2_construction, 3}, std::tuple{"freeproductZZ", &free_product_zz_construction, 3},
          std::tuple{"F2xF2", &f2xf2_construction, 3}, std::tuple{"heisenberg", &heisenberg_construction, 3},
          std::tuple{"index2Z", &index2z_construction, 4}}) {
      auto c = make();
      cases.push_back({name, c.structure, c.psi, static_cast<std::size_t>(radius)});
    }
    std::vector<std::string> parts;
    for (auto const& c : cases) {
      auto const r = check_psi(c.s, c.psi, c.radius);
      o.require(r.violations == 0, fmt::format("{}: {} violations: {}", c.name, r.violations,
                                               fmt::join(r.witnesses, "; ")));
      o.require(r.indeterminate == 0, fmt::format("{}: {} pairs indeterminate", c.name, r.indeterminate));
      parts.push_back(fmt::format("{} ball({}) {} pairs", c.name, c.radius, r.pairs));
    }
    o.summary = fmt::format("psi strictly decreases along flow paths, 0 violations: {}", fmt::join(parts, ", "));
    return o;
  }

  ////////////////////////////////////////////////////////////////////////
  // 5. Normal-form acceptor identity
  ////////////////////////////////////////////////////////////////////////

  // No factor x x^-1, (c|d)^(+-1) (a|b)^(+-1), or s^(+-1) a^i (b|c|d)^(+-1)
  // with a^i a power of a single sign. Letters: a a^-1 b b^-1 c c^-1 d d^-1 s s^-1.
  bool irreducible(Word const& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if ((w[i] ^ 1u) == w[i + 1]) {
        return false;
      }
      if (w[i] >= 4 && w[i] < 8 && w[i + 1] < 4) {
        return false;
      }
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] < 8) {
        continue;
      }
      std::size_t j = i + 1;
      while (j < w.size() && w[j] < 2 && w[j] == w[i + 1]) {
        ++j;
      }
      if (j < w.size() && w[j] >= 2 && w[j] < 8) {
        return false;
      }
    }
    return true;
  }

  Outcome nf_identity() {
    Outcome     o;
    auto const  nf    = stallings_nf_automaton();
    auto const  s     = stallings_structure();
    auto const  proj  = proj1(graph_automaton(s));
    bool const  same  = equivalent(nf, proj);
    o.require(same, "stallings_nf_automaton differs from proj1(graph_automaton)");
    auto const  words = all_words(s.alphabet(), 6);
    std::size_t accepted = 0, disagree = 0;
    for (auto const& w : words) {
      bool const a = nf.accepts(w);
      accepted += a;
      if (a != irreducible(w) || a != (stallings_rewrite(w) == w)) {
        if (++disagree <= 5) {
          o.require(false, fmt::format("'{}': acceptor {}, factor scan {}, rewriting fixed point {}",
                                       s.alphabet().format(w), a, irreducible(w), stallings_rewrite(w) == w));
        }
      }
    }
    o.require(disagree == 0, fmt::format("{} disagreements", disagree));
    o.summary = fmt::format("stallings_nf_automaton {} proj1(graph_automaton) (exact equivalence); it accepts "
                            "exactly the {} irreducible words among all {} words of length <= 6",
                            same ? "==" : "!=", accepted, words.size());
    return o;
  }

  ////////////////////////////////////////////////////////////////////////
  // 6. Construction sanity
  ////////////////////////////////////////////////////////////////////////

  // Ball sizes of the Heisenberg group on t, a2, a1 as 3x3 upper unitriangular
  // integer matrices, stored as the entries (1,2), (2,3), (1,3).
  std::vector<std::size_t> heisenberg_matrix_balls(std::size_t max_radius) {
    using M = std::array<std::int64_t, 3>;
    auto mul = [](M const& x, M const& y) { return M{x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1]}; };
    std::vector<M> const gens{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    std::set<M>          seen{{0, 0, 0}};
    std::vector<M>       frontier{{0, 0, 0}};
    std::vector<std::size_t> sizes;
    for (std::size_t r = 1; r <= max_radius; ++r) {
      std::vector<M> next;
      for (auto const& x : frontier) {
        for (auto const& g : gens) {
          auto y = mul(x, g);
          if (seen.insert(y).second) {
            next.push_back(y);
          }
        }
      }
      frontier = std::move(next);
      sizes.push_back(seen.size());
    }
    return sizes;
  }

  Outcome construction_sanity() {
    Outcome o;
    auto    nf = [](Construction const& c, char const* w) {
      auto const& a = c.structure.alphabet();
      return a.format(c.structure.normalize(a.parse(w)));
    };
    auto const direct = graph_product(GraphSpec::complete(2), {zgen("a"), zgen("b")});
    auto const free   = graph_product(GraphSpec::discrete(2), {zgen("a"), zgen("b")});
    o.require(nf(direct, "b a") == "a b", "Z x Z normalize(b a) = " + nf(direct, "b a"));
    o.require(nf(free, "b a") == "b a", "Z * Z normalize(b a) = " + nf(free, "b a"));

    auto const               h        = heisenberg_construction().structure;
    auto const               expected = heisenberg_matrix_balls(4);
    std::vector<std::size_t> got;
    for (std::size_t r = 1; r <= 4; ++r) {
      got.push_back(ball(h, r).size());
    }
    o.require(got == expected, fmt::format("Heisenberg ball sizes {} vs matrices {}", fmt::join(got, " "),
                                           fmt::join(expected, " ")));

    // Elements g^n reachable in <= 4 steps of +-1 (g) and +-2 (h = g^2),
    // written h^floor(n/2) g^(n mod 2).
    auto const     z  = index2z_construction().structure;
    auto const&    za = z.alphabet();
    std::set<long> reach{0};
    for (int step = 0; step < 4; ++step) {
      for (long n : std::set<long>(reach)) {
        for (long d : {-2L, -1L, 1L, 2L}) {
          reach.insert(n + d);
        }
      }
    }
    std::set<Word> shape;
    for (long n : reach) {
      long const q = n >= 0 ? n / 2 : -((-n + 1) / 2);
      Word       w = power(za.letter("h"), za.letter("h^-1"), q);
      if (n - 2 * q == 1) {
        w.push_back(za.letter("g"));
      }
      shape.insert(w);
    }
    auto const     b = ball(z, 4);
    std::set<Word> listed(b.begin(), b.end());
    o.require(listed == shape, fmt::format("index-2 ball(4) has {} normal forms, expected {}", listed.size(),
                                           shape.size()));
    o.summary = fmt::format("Z x Z: b a -> {}; Z * Z: b a -> {}; Heisenberg |ball(1..4)| = {} (matrices {}); "
                            "index-2 ball(4) = {{h^i, h^i g}}: {} normal forms",
                            nf(direct, "b a"), nf(free, "b a"), fmt::join(got, " "), fmt::join(expected, " "),
                            listed.size());
    return o;
  }

  ////////////////////////////////////////////////////////////////////////
  // 7. Prefix-rewriting display
  ////////////////////////////////////////////////////////////////////////

  Outcome prefix_rules() {
    Outcome     o;
    auto const  s     = stallings_structure();
    auto const& alpha = s.alphabet();
    auto const  rules = to_prefix_rules(s, 3);
    std::size_t commutations = 0, longest = 0;
    std::string example;
    for (auto const& r : rules) {
      std::size_t const shape = (r.lhs.size() - r.common) + (r.rhs.size() - r.common);
      longest                 = std::max(longest, shape);
      o.require(shape <= 6, fmt::format("{} has l(s) + l(t) = {}", format_rule(alpha, r), shape));
      o.require(s.normalize(r.lhs) == s.normalize(r.rhs), fmt::format("{} changes the element", format_rule(alpha, r)));
      // Flow rules from y in Z* ending in a (c|d)-letter with an (a|b)-letter:
      // z y x -> z x y, freely reduced like every rule.
      if (r.backtrack || r.lhs.size() < 2) {
        continue;
      }
      Word const  y(r.lhs.begin(), r.lhs.end() - 1);
      Letter const x = r.lhs.back(), last = y.back();
      bool const   in_z = std::none_of(y.begin(), y.end(), [](Letter l) { return l >= 8; });
      if (in_z && last >= 4 && last < 8 && x < 4) {
        if (commutations++ == 0) {
          example = format_rule(alpha, r);
        }
        Word expect(y.begin(), y.end() - 1);
        expect.push_back(x);
        expect.push_back(last);
        o.require(r.rhs == free_reduce(alpha, expect), fmt::format("{} is not a commutation", format_rule(alpha, r)));
      }
    }
    o.require(commutations > 0, "no commutation rules found");
    o.summary = fmt::format("{} rules on ball(3), max l(s) + l(t) = {}, sides normalize equally; {} rules have the "
                            "shape z y x -> z x y (e.g. {})",
                            rules.size(), longest, commutations, example);
    return o;
  }

  ////////////////////////////////////////////////////////////////////////
  // 8. Quotient, product and projection laws
  ////////////////////////////////////////////////////////////////////////

  std::vector<Word> words_over(std::size_t k, std::size_t n) {
    std::vector<Word> out{{}};
    for (std::size_t begin = 0, len = 0; len < n; ++len) {
      auto const end = out.size();
      for (auto i = begin; i < end; ++i) {
        for (Letter x = 0; x < k; ++x) {
          auto w = out[i];
          w.push_back(x);
          out.push_back(std::move(w));
        }
      }
      begin = end;
    }
    return out;
  }

  Fsa random_fsa(std::mt19937_64& rng, SymbolsPtr const& s, std::size_t states) {
    std::vector<bool>  acc(states);
    std::vector<State> table(states * s->size());
    for (std::size_t q = 0; q < states; ++q) {
      acc[q] = rng() % 5 < 2;
    }
    for (auto& t : table) {
      t = static_cast<State>(rng() % states);
    }
    return Fsa(s, states, 0, acc, table);
  }

  bool has_partner(SyncAcceptor const& r, Word const& u) {
    auto const&                                    f     = r.fsa();
    auto const&                                    pa    = r.alphabet();
    std::size_t const                              limit = u.size() + f.num_states();
    std::set<std::tuple<State, std::size_t, bool>> seen;
    std::function<bool(State, std::size_t, bool)>  go = [&](State q, std::size_t i, bool v_done) {
      if (f.is_dead(q) || !seen.insert({q, i, v_done}).second) {
        return false;
      }
      if (i >= u.size() && f.is_accepting(q)) {
        return true;  // v ends here or has ended
      }
      if (i >= limit || (i >= u.size() && v_done)) {
        return false;
      }
      Symbol const ui = i < u.size() ? u[i] : pa.padding();
      if (!v_done) {
        for (Symbol x = 0; x < pa.base()->size(); ++x) {
          std::array<Symbol, 2> const t{ui, x};
          if (go(f.next(q, pa.encode(t)), i + 1, false)) {
            return true;
          }
        }
      }
      if (ui == pa.padding()) {
        return false;
      }
      std::array<Symbol, 2> const t{ui, pa.padding()};
      return go(f.next(q, pa.encode(t)), i + 1, true);
    };
    return go(f.start(), 0, false);
  }

  Outcome automata_laws() {
    Outcome         o;
    std::mt19937_64 rng(77);
    std::size_t     quotient_checks = 0, product_checks = 0, projection_checks = 0, identities = 0;
    for (std::size_t k : {2, 3}) {
      std::vector<std::string> names;
      for (std::size_t i = 0; i < k; ++i) {
        names.push_back(std::string(1, static_cast<char>('a' + i)));
      }
      auto const sym   = std::make_shared<Symbols const>(names);
      auto const words = words_over(k, 4);
      for (int trial = 0; trial < 12; ++trial) {
        auto const f = random_fsa(rng, sym, 2 + trial % 4);
        auto const g = random_fsa(rng, sym, 1 + trial % 3);
        auto const h = random_fsa(rng, sym, 3);

        // Quotient: x in L/w iff x w in L.
        for (auto const& w : words_over(k, 2)) {
          auto const q = quotient(f, w);
          for (auto const& x : words) {
            ++quotient_checks;
            if (q.accepts(x) != f.accepts(concat(x, w))) {
              o.require(false, "quotient disagrees with its definition");
            }
          }
        }

        // Product: pad(u, v) accepted iff u in F and v in G.
        auto const s = product({f, g});
        for (auto const& u : words) {
          for (auto const& v : words) {
            ++product_checks;
            if (s.accepts({u, v}) != (f.accepts(u) && g.accepts(v))) {
              o.require(false, "product membership is not componentwise");
            }
          }
        }

        // Projection of an arbitrary padded acceptor: u accepted iff some v
        // gives an accepted pad(u, v). The search runs over v letter by
        // letter; a witness, when one exists, has length at most
        // l(u) + (number of states), and (state, position, v ended) triples
        // already seen are skipped.
        PaddedAlphabet const pa(sym, 2);
        SyncAcceptor const   r(pa, random_fsa(rng, pa.symbols(), 4));
        auto const           p = proj1(r);
        for (auto const& u : words) {
          ++projection_checks;
          if (p.accepts(u) != has_partner(r, u)) {
            o.require(false, "projection disagrees with its definition");
          }
        }

        // Identities up to equivalence.
        identities += 8;
        o.require(equivalent(complement(unite(f, g)), intersect(complement(f), complement(g))), "De Morgan (union)");
        o.require(equivalent(complement(intersect(f, g)), unite(complement(f), complement(g))), "De Morgan (meet)");
        o.require(equivalent(intersect(f, unite(g, h)), unite(intersect(f, g), intersect(f, h))), "distributivity");
        o.require(equivalent(intersect(f, Fsa::universal(sym)), f), "L n A* = L");
        o.require(equivalent(complement(complement(f)), f), "double complement");
        o.require(equivalent(quotient(f, Word{}), f), "L / 1 = L");
        o.require(is_empty(g) || equivalent(proj1(product({f, g})), f), "proj1(F x G) = F");
        o.require(is_empty(g) || is_empty(h) || equivalent(proj1(product({f, g, h})), f), "proj1(F x G x H) = F");
      }
    }
    o.summary = fmt::format("{} quotient, {} product and {} projection memberships agree with the definitions "
                            "(lengths <= 4, 2 and 3 letters); {} algebraic identities hold",
                            quotient_checks, product_checks, projection_checks, identities);
    return o;
  }
}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> const criteria{
      {"1 Stallings oracle equivalence", oracle_agreement},
      {"2 bound constants", bounds},
      {"3 verify on shipped instances", verification},
      {"4 psi monotonicity", psi_monotonicity},
      {"5 normal-form acceptor identity", nf_identity},
      {"6 construction sanity", construction_sanity},
      {"7 prefix-rewriting display", prefix_rules},
      {"8 automata laws", automata_laws},
  };
  bool all = true;
  for (auto const& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (std::exception const& e) {
      o.passed  = false;
      o.summary = fmt::format("threw: {}", e.what());
    }
    all = all && o.passed;
    std::cout << fmt::format("{} criterion {}: {}\n", o.passed ? "PASS" : "FAIL", name, o.summary);
    for (auto const& d : o.details) {
      std::cout << "    " << d << "\n";
    }
    std::cout.flush();
  }
  return all ? 0 : 1;
}
