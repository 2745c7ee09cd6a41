#include "autostack/instances.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <deque>

#include <fmt/format.h>

namespace autostack {

  namespace {
    Fsa freely_reduced(Alphabet const& alpha) {
      auto const&       sym = alpha.symbols();
      std::vector<Word> pairs;
      for (Letter x = 0; x < alpha.size(); ++x) {
        pairs.push_back({x, alpha.inverse(x)});
      }
      auto const any = Fsa::universal(sym);
      return minimize(complement(concat(any, concat(Fsa::finite(sym, pairs), any))));
    }

    std::int64_t exponent(Word const& w, Letter x, Letter x_inv) {
      std::int64_t e = 0;
      for (auto y : w) {
        e += (y == x) - (y == x_inv);
      }
      return e;
    }

    Word power_of(Alphabet const& alpha, std::string const& name, std::int64_t n) {
      auto const x = alpha.letter(name);
      return power(x, alpha.inverse(x), static_cast<long>(n));
    }

    Word letters_in(Word const& w, std::size_t lo, std::size_t hi) {
      Word out;
      for (auto x : w) {
        if (x >= lo && x < hi) {
          out.push_back(x);
        }
      }
      return out;
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Free and finite groups
  ////////////////////////////////////////////////////////////////////////

  StackingStructure free_group(std::vector<std::string> const& generators) {
    auto const alpha = Alphabet::with_inverses(generators);
    auto const n     = freely_reduced(alpha);
    std::vector<PiecewiseRule> rules;
    for (Letter x = 0; x < alpha.size(); ++x) {
      rules.push_back({n, x, {x}});
    }
    std::string name = generators.size() == 1 ? fmt::format("Z({})", generators[0])
                                              : fmt::format("F({})", fmt::join(generators, ", "));
    StackingStructure s(name, alpha, n, std::move(rules), 1, {});
    return s.with_oracle({"free reduction", [alpha](Word const& w) { return free_reduce(alpha, w); }});
  }

  StackingStructure free_group(std::size_t n) {
    if (n == 0) {
      throw ParseError("free group needs rank at least 1");
    }
    std::vector<std::string> gens;
    for (std::size_t i = 0; i < n; ++i) {
      gens.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + i)) : fmt::format("x{}", i + 1));
    }
    return free_group(gens).with_name(fmt::format("free{}", n));
  }

  StackingStructure finite_group(std::string                                  name,
                                 std::vector<std::vector<std::size_t>> const& table,
                                 std::vector<std::size_t> const&              generators,
                                 std::vector<std::string> const&              names) {
    auto const order = table.size();
    if (order == 0) {
      throw ParseError("empty multiplication table");
    }
    for (std::size_t g = 0; g < order; ++g) {
      if (table[g].size() != order) {
        throw ParseError(fmt::format("row {} of the multiplication table has the wrong length", g));
      }
      for (auto h : table[g]) {
        if (h >= order) {
          throw ParseError(fmt::format("row {} names element {} out of range", g, h));
        }
      }
      if (table[0][g] != g || table[g][0] != g) {
        throw ParseError("element 0 must be the identity");
      }
    }
    if (generators.size() != names.size()) {
      throw ParseError("one name per generator is required");
    }
    std::vector<std::size_t> inv(order, order);
    for (std::size_t g = 0; g < order; ++g) {
      for (std::size_t h = 0; h < order; ++h) {
        if (table[g][h] == 0) {
          inv[g] = h;
        }
      }
      if (inv[g] == order) {
        throw ParseError(fmt::format("element {} has no inverse", g));
      }
    }

    std::vector<std::string> letter_names;
    std::vector<std::size_t> element;
    auto add = [&](std::size_t e, std::string const& n) {
      if (e == 0 || e >= order) {
        throw ParseError(fmt::format("generator '{}' is not a non-identity element", n));
      }
      if (std::find(element.begin(), element.end(), e) != element.end()) {
        throw ParseError(fmt::format("element {} is listed twice", e));
      }
      letter_names.push_back(n);
      element.push_back(e);
    };
    for (std::size_t i = 0; i < generators.size(); ++i) {
      add(generators[i], names[i]);
    }
    for (std::size_t i = 0; i < generators.size(); ++i) {
      auto const e = inv[generators[i]];
      if (std::find(element.begin(), element.end(), e) == element.end()) {
        add(e, names[i] + "^-1");
      }
    }
    std::vector<Letter> inverse(element.size());
    for (std::size_t x = 0; x < element.size(); ++x) {
      auto it    = std::find(element.begin(), element.end(), inv[element[x]]);
      inverse[x] = static_cast<Letter>(it - element.begin());
    }
    Alphabet const alpha(letter_names, inverse);
    auto const     k = alpha.size();

    // Breadth-first shortlex spanning tree.
    std::vector<std::optional<Word>> nf(order);
    nf[0] = Word{};
    std::deque<std::size_t> queue{0};
    std::vector<State>      dfa(static_cast<std::size_t>(order + 1) * k, static_cast<State>(order));
    while (!queue.empty()) {
      auto const g = queue.front();
      queue.pop_front();
      for (Letter x = 0; x < k; ++x) {
        auto const h = table[g][element[x]];
        if (!nf[h]) {
          nf[h] = concat(*nf[g], Word{x});
          dfa[g * k + x] = static_cast<State>(h);
          queue.push_back(h);
        }
      }
    }
    for (std::size_t g = 0; g < order; ++g) {
      if (!nf[g]) {
        throw ParseError(fmt::format("generators do not reach element {}", g));
      }
    }
    std::vector<bool> accepting(order + 1, true);
    accepting[order] = false;
    Fsa const n(alpha.symbols(), order + 1, 0, accepting, dfa);

    auto const evaluate = [table, element](Word const& w) {
      std::size_t g = 0;
      for (auto x : w) {
        g = table[g][element[x]];
      }
      return g;
    };

    std::vector<PiecewiseRule> rules;
    std::vector<Word>          relators;
    std::size_t                bound = 1;
    for (std::size_t g = 0; g < order; ++g) {
      Fsa const guard = Fsa::word(alpha.symbols(), *nf[g]);
      for (Letter x = 0; x < k; ++x) {
        auto const h        = table[g][element[x]];
        Word const forward  = concat(*nf[g], Word{x});
        bool const tree     = forward == *nf[h] || (!nf[g]->empty() && nf[g]->back() == alpha.inverse(x));
        Word       output   = tree ? Word{x} : free_reduce(alpha, concat(formal_inverse(alpha, *nf[g]), *nf[h]));
        bound               = std::max(bound, output.size());
        rules.push_back({guard, x, std::move(output)});
        if (!tree) {
          auto rel = free_reduce(alpha, concat(forward, formal_inverse(alpha, *nf[h])));
          if (!rel.empty()) {
            relators.push_back(std::move(rel));
          }
        }
      }
    }
    std::sort(relators.begin(), relators.end(), shortlex_less);
    relators.erase(std::unique(relators.begin(), relators.end()), relators.end());

    std::vector<Word> forms;
    for (auto& w : nf) {
      forms.push_back(*w);
    }
    StackingStructure s(std::move(name), alpha, n, std::move(rules), bound, std::move(relators));
    return s.with_oracle({"multiplication table", [evaluate, forms](Word const& w) { return forms[evaluate(w)]; }});
  }

  StackingStructure symmetric3() {
    std::vector<std::array<std::size_t, 3>> perms{{0, 1, 2}, {1, 0, 2}, {1, 2, 0},
                                                  {0, 2, 1}, {2, 1, 0}, {2, 0, 1}};
    std::vector<std::vector<std::size_t>> table(6, std::vector<std::size_t>(6));
    for (std::size_t p = 0; p < 6; ++p) {
      for (std::size_t q = 0; q < 6; ++q) {
        // Apply p first, then q.
        std::array<std::size_t, 3> r{};
        for (std::size_t i = 0; i < 3; ++i) {
          r[i] = perms[q][perms[p][i]];
        }
        table[p][q] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), r) - perms.begin());
      }
    }
    return finite_group("S3", table, {1, 2}, {"s", "r"});
  }

  ////////////////////////////////////////////////////////////////////////
  // Constructed instances
  ////////////////////////////////////////////////////////////////////////

  Construction z2_construction() {
    auto c      = graph_product(GraphSpec::complete(2), {free_group({"a"}), free_group({"b"})});
    auto alpha  = c.structure.alphabet();
    c.structure = c.structure.with_name("Z2").with_oracle(
        {"exponent sums", [alpha](Word const& w) {
           auto const a = alpha.letter("a"), b = alpha.letter("b");
           return concat(power_of(alpha, "a", exponent(w, a, alpha.inverse(a))),
                         power_of(alpha, "b", exponent(w, b, alpha.inverse(b))));
         }});
    return c;
  }

  Construction free_product_zz_construction() {
    auto c      = graph_product(GraphSpec::discrete(2), {free_group({"a"}), free_group({"b"})});
    auto alpha  = c.structure.alphabet();
    c.structure = c.structure.with_name("freeproductZZ").with_oracle(
        {"free reduction", [alpha](Word const& w) { return free_reduce(alpha, w); }});
    return c;
  }

  Construction f2xf2_construction() {
    auto c      = graph_product(GraphSpec::complete(2), {free_group({"a", "b"}), free_group({"c", "d"})});
    auto alpha  = c.structure.alphabet();
    c.structure = c.structure.with_name("F2xF2").with_oracle(
        {"free reduction per factor", [alpha](Word const& w) {
           return concat(free_reduce(alpha, letters_in(w, 0, 4)), free_reduce(alpha, letters_in(w, 4, 8)));
         }});
    return c;
  }

  Construction heisenberg_construction() {
    auto const    k = graph_product(GraphSpec::complete(2), {free_group({"a1"}), free_group({"a2"})});
    auto const&   ka = k.structure.alphabet();
    ExtensionData data{k.structure.with_name("Z2"), free_group({"b"}), {{"b", "t"}, {"b^-1", "t^-1"}}, {}, {}};
    auto w = [&](std::string const& text) { return ka.parse(text); };
    data.conj = {
        {{"t", "a1"}, w("a1")},           {{"t", "a1^-1"}, w("a1^-1")},
        {{"t", "a2"}, w("a1 a2")},        {{"t", "a2^-1"}, w("a1^-1 a2^-1")},
        {{"t^-1", "a1"}, w("a1")},        {{"t^-1", "a1^-1"}, w("a1^-1")},
        {{"t^-1", "a2"}, w("a1^-1 a2")},  {{"t^-1", "a2^-1"}, w("a1 a2^-1")},
    };
    auto c     = extension(data);
    auto alpha = c.structure.alphabet();
    // t = [[1,1,0],[0,1,0],[0,0,1]], a2 = [[1,0,0],[0,1,1],[0,0,1]], a1
    // central = [[1,0,1],[0,1,0],[0,0,1]]; (x, y, z) holds the entries
    // (1,2), (2,3), (1,3) and a1^z a2^y t^x is the normal form.
    c.structure = c.structure.with_name("heisenberg").with_oracle(
        {"3x3 integer matrices", [alpha](Word const& w) {
           std::int64_t x = 0, y = 0, z = 0;
           for (auto l : w) {
             auto const& n = alpha.name(l);
             if (n == "t") {
               ++x;
             } else if (n == "t^-1") {
               --x;
             } else if (n == "a2") {
               z += x;
               ++y;
             } else if (n == "a2^-1") {
               z -= x;
               --y;
             } else if (n == "a1") {
               ++z;
             } else if (n == "a1^-1") {
               --z;
             }
           }
           return concat(concat(power_of(alpha, "a1", z), power_of(alpha, "a2", y)), power_of(alpha, "t", x));
         }});
    return c;
  }

  Construction index2z_construction() {
    IndexData data{free_group({"h"}), {"g"}, {}, {}};
    auto      h  = [&](std::string const& text) { return data.H.alphabet().parse(text); };
    data.table1  = {{"g^-1", {h("h^-1"), "g"}}};
    data.table2  = {
        {{"g", "h"}, {h("h"), "g"}},        {{"g", "h^-1"}, {h("h^-1"), "g"}},
        {{"g", "g"}, {h("h"), ""}},         {{"g", "g^-1"}, {{}, ""}},
        {{"g^-1", "h"}, {{}, "g"}},         {{"g^-1", "h^-1"}, {h("h^-1 h^-1"), "g"}},
        {{"g^-1", "g"}, {{}, ""}},          {{"g^-1", "g^-1"}, {h("h^-1"), ""}},
    };
    auto c     = finite_index(data);
    auto alpha = c.structure.alphabet();
    c.structure = c.structure.with_name("index2Z").with_oracle(
        {"exponent of g", [alpha](Word const& w) {
           auto const   hh = alpha.letter("h"), g = alpha.letter("g");
           std::int64_t n  = 2 * exponent(w, hh, alpha.inverse(hh)) + exponent(w, g, alpha.inverse(g));
           std::int64_t q  = n >= 0 ? n / 2 : -((-n + 1) / 2);
           Word         out = power_of(alpha, "h", q);
           if (n - 2 * q == 1) {
             out.push_back(g);
           }
           return out;
         }});
    return c;
  }

  ////////////////////////////////////////////////////////////////////////
  // Stallings' group
  ////////////////////////////////////////////////////////////////////////

  namespace {
    enum : Letter { A = 0, A_ = 1, B = 2, B_ = 3, C = 4, C_ = 5, D = 6, D_ = 7, S = 8, S_ = 9 };

    constexpr Letter inv(Letter x) {
      return x ^ 1u;
    }
    constexpr int sign(Letter x) {
      return (x & 1u) ? -1 : 1;
    }
    constexpr bool is_a(Letter x) {
      return x <= A_;
    }
    constexpr bool is_ab(Letter x) {
      return x <= B_;
    }
    constexpr bool is_cd(Letter x) {
      return x >= C && x <= D_;
    }
    constexpr bool is_bcd(Letter x) {
      return x >= B && x <= D_;
    }
    constexpr bool is_s(Letter x) {
      return x >= S;
    }
    bool in_z(Word const& y) {
      return std::none_of(y.begin(), y.end(), is_s);
    }

    void append_a(Word& w, long n) {
      auto p = power(A, A_, n);
      w.insert(w.end(), p.begin(), p.end());
    }

    Fsa const& stallings_nf() {
      static Fsa const n = stallings_nf_automaton();
      return n;
    }
  }  // namespace

  Alphabet stallings_alphabet() {
    return Alphabet::with_inverses({"a", "b", "c", "d", "s"});
  }

  Fsa stallings_nf_automaton() {
    static Alphabet const alpha = stallings_alphabet();
    auto const&           sym   = alpha.symbols();
    std::vector<Word>     two;
    for (Letter x = 0; x < 10; ++x) {
      two.push_back({x, inv(x)});
    }
    for (Letter y = C; y <= D_; ++y) {
      for (Letter x = A; x <= B_; ++x) {
        two.push_back({y, x});
      }
    }
    std::vector<Symbol> s_letters{S, S_}, bcd{B, B_, C, C_, D, D_};
    Word const          a{A}, a_{A_};
    Fsa const           blocks = unite(star(Fsa::word(sym, a)), star(Fsa::word(sym, a_)));
    Fsa const           third  = concat(Fsa::letters(sym, s_letters), concat(blocks, Fsa::letters(sym, bcd)));
    Fsa const           m      = unite(Fsa::finite(sym, two), third);
    Fsa const           any    = Fsa::universal(sym);
    return minimize(complement(concat(any, concat(m, any))));
  }

  Word stallings_rewrite(Word const& w, std::size_t max_steps) {
    Word cur = w;
    for (auto x : cur) {
      if (x > S_) {
        throw ParseError(fmt::format("letter {} is not in the Stallings alphabet", x));
      }
    }
    for (std::size_t step = 0;; ++step) {
      if (step > max_steps) {
        throw BudgetExceeded(fmt::format("rewriting ran past {} steps", max_steps));
      }
      bool changed = false;
      for (std::size_t p = 0; p + 1 < cur.size() && !changed; ++p) {
        Letter const x    = cur[p];
        Letter const next = cur[p + 1];
        auto const   at   = cur.begin() + static_cast<std::ptrdiff_t>(p);
        if (next == inv(x)) {
          cur.erase(at, at + 2);
          changed = true;
        } else if (is_cd(x) && is_ab(next)) {
          std::swap(cur[p], cur[p + 1]);
          changed = true;
        } else if (is_s(x)) {
          // s^e a^i y: read the maximal single-signed a-block after s^e.
          std::size_t q = p + 1;
          while (q < cur.size() && is_a(cur[q]) && cur[q] == next) {
            ++q;
          }
          if (q == cur.size() || !is_bcd(cur[q])) {
            continue;
          }
          long const   i   = static_cast<long>(q - p - 1) * (q > p + 1 ? sign(next) : 1);
          Letter const y   = cur[q];
          int const    eta = sign(y);
          Word         rep;
          if (y == B || y == B_) {
            append_a(rep, i);
            rep.push_back(y);
            append_a(rep, -eta - i);
          } else {
            append_a(rep, -eta);
            rep.push_back(y);
          }
          rep.push_back(x);
          append_a(rep, eta + i);
          cur.erase(at, cur.begin() + static_cast<std::ptrdiff_t>(q + 1));
          cur.insert(cur.begin() + static_cast<std::ptrdiff_t>(p), rep.begin(), rep.end());
          changed = true;
        }
      }
      if (!changed) {
        return cur;
      }
    }
  }

  Word stallings_stack(Word const& y, Letter x) {
    auto const& n = stallings_nf();
    if (x > S_) {
      throw ParseError(fmt::format("letter {} is not in the Stallings alphabet", x));
    }
    if (!n.accepts(y)) {
      throw NotNormalForm("not a Stallings normal form");
    }
    bool const tree = n.is_accepting(n.next(n.run(n.start(), y), x)) || (!y.empty() && y.back() == inv(x));
    if (tree) {
      return {x};
    }
    Letter const last = y.back();
    bool const   z    = in_z(y);
    if (is_ab(x) && z && is_cd(last)) {
      return {inv(last), x, last};
    }
    if (is_cd(x) && !z && is_a(last)) {
      return {inv(last), x, last};
    }
    if ((x == B || x == B_) && !z && is_a(last)) {
      return last == A ? Word{C_, x, C} : Word{C, x, C_};
    }
    if (is_bcd(x) && is_s(last)) {
      Letter const a_minus = sign(x) > 0 ? A_ : A;
      return {inv(last), x, a_minus, last, inv(a_minus)};
    }
    throw CoverageViolation("no case of the Stallings stacking map applies");
  }

  StackingStructure stallings_structure() {
    auto const  alpha = stallings_alphabet();
    auto const& sym   = alpha.symbols();
    Fsa const   n     = stallings_nf_automaton();
    Fsa const   any   = Fsa::universal(sym);
    std::vector<Symbol> z_letters{A, A_, B, B_, C, C_, D, D_};
    Fsa const           zstar = star(Fsa::letters(sym, z_letters));
    auto ends = [&](Letter l) {
      Word w{l};
      return concat(any, Fsa::word(sym, w));
    };

    std::vector<PiecewiseRule> rules;
    for (Letter x = 0; x < 10; ++x) {
      Word const xw{x};
      Fsa const  guard = unite(quotient(n, xw), intersect(n, ends(inv(x))));
      rules.push_back({minimize(guard), x, {x}});
    }
    for (Letter z = C; z <= D_; ++z) {
      Fsa const guard = minimize(intersect(intersect(n, zstar), ends(z)));
      for (Letter x = A; x <= B_; ++x) {
        rules.push_back({guard, x, {inv(z), x, z}});
      }
    }
    for (Letter z = A; z <= A_; ++z) {
      Fsa const guard = minimize(difference(intersect(n, ends(z)), zstar));
      for (Letter x = C; x <= D_; ++x) {
        rules.push_back({guard, x, {inv(z), x, z}});
      }
      for (Letter x = B; x <= B_; ++x) {
        // eta = sign of z; output c^-eta x c^eta.
        rules.push_back({guard, x, z == A ? Word{C_, x, C} : Word{C, x, C_}});
      }
    }
    for (Letter z = S; z <= S_; ++z) {
      Fsa const guard = minimize(intersect(n, ends(z)));
      for (Letter x = B; x <= D_; ++x) {
        Letter const a_minus = sign(x) > 0 ? A_ : A;
        rules.push_back({guard, x, {inv(z), x, a_minus, z, inv(a_minus)}});
      }
    }

    auto w = [&](std::string const& text) { return alpha.parse(text); };
    std::vector<Word> relators{
        w("a c a^-1 c^-1"),         w("a d a^-1 d^-1"),         w("b c b^-1 c^-1"),
        w("b d b^-1 d^-1"),         w("s a b^-1 s^-1 b a^-1"),  w("s a c^-1 s^-1 c a^-1"),
        w("s a d^-1 s^-1 d a^-1"),
    };
    StackingStructure s("stallings", alpha, n, std::move(rules), 5, std::move(relators));
    return s.with_stack_fn(stallings_stack).with_oracle({"rewriting system", [](Word const& v) {
                                                           return stallings_rewrite(v);
                                                         }});
  }

  PsiCertificate psi_stallings() {
    PsiCertificate psi;
    psi.dimension = 3;
    psi.eval      = [](Word const& y, Letter x) -> std::optional<std::vector<std::size_t>> {
      auto const& n    = stallings_nf();
      bool const  tree = n.is_accepting(n.next(n.run(n.start(), y), x)) || (!y.empty() && y.back() == inv(x));
      if (tree) {
        return std::vector<std::size_t>{0, 0, 0};
      }
      if (in_z(y)) {
        std::size_t cd = 0;
        while (cd < y.size() && is_cd(y[y.size() - 1 - cd])) {
          ++cd;
        }
        return std::vector<std::size_t>{0, 0, cd};
      }
      auto const  ns = static_cast<std::size_t>(std::count_if(y.begin(), y.end(), is_s));
      std::size_t sa = 0;
      while (sa < y.size() && is_a(y[y.size() - 1 - sa])) {
        ++sa;
      }
      return std::vector<std::size_t>{ns, sa, (x == B || x == B_) ? 1u : 0u};
    };
    return psi;
  }

  ////////////////////////////////////////////////////////////////////////
  // Catalog
  ////////////////////////////////////////////////////////////////////////

  std::vector<std::string> builtin_names() {
    return {"free1", "free2", "Z", "Z2", "freeproductZZ", "F2xF2", "heisenberg", "index2Z", "stallings", "S3"};
  }

  StackingStructure builtin(std::string const& name) {
    if (name == "Z") {
      return free_group({"a"}).with_name("Z");
    }
    if (name == "Z2") {
      return z2_construction().structure;
    }
    if (name == "freeproductZZ") {
      return free_product_zz_construction().structure;
    }
    if (name == "F2xF2") {
      return f2xf2_construction().structure;
    }
    if (name == "heisenberg") {
      return heisenberg_construction().structure;
    }
    if (name == "index2Z") {
      return index2z_construction().structure;
    }
    if (name == "stallings") {
      return stallings_structure();
    }
    if (name == "S3") {
      return symmetric3();
    }
    if (name.starts_with("free") && name.size() > 4) {
      std::size_t n   = 0;
      auto const  end = name.data() + name.size();
      auto [ptr, ec]  = std::from_chars(name.data() + 4, end, n);
      if (ec == std::errc{} && ptr == end && n >= 1 && n <= 64) {
        return free_group(n);
      }
    }
    throw ParseError(fmt::format("unknown builtin structure '{}'", name));
  }

}  // namespace autostack
