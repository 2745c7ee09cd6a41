#include <doctest.h>

#include <algorithm>
#include <iterator>
#include <random>

#include "autostack/fsa.hpp"
#include "support.hpp"

using namespace autostack;
using autostack::test::language;
using autostack::test::symbols;
using autostack::test::words_up_to;

namespace {
  SymbolsPtr const ab  = symbols({"a", "b"});
  SymbolsPtr const abc = symbols({"a", "b", "c"});

  Fsa lit(SymbolsPtr const& s, std::vector<Word> const& words) {
    return Fsa::finite(s, words);
  }
  Fsa one(SymbolsPtr const& s, Symbol x) {
    Symbol const xs[] = {x};
    return Fsa::letters(s, xs);
  }

  // Random complete DFA; state 0 starts.
  Fsa random_fsa(std::mt19937_64& rng, SymbolsPtr const& s, std::size_t states) {
    std::uniform_int_distribution<State> to(0, static_cast<State>(states - 1));
    std::bernoulli_distribution           acc(0.4);
    std::vector<bool>                     accepting(states);
    std::vector<State>                    table(states * s->size());
    for (std::size_t q = 0; q < states; ++q) {
      accepting[q] = acc(rng);
    }
    for (auto& t : table) {
      t = to(rng);
    }
    return Fsa(s, states, 0, accepting, table);
  }

  std::set<Word> set_union(std::set<Word> x, std::set<Word> const& y) {
    x.insert(y.begin(), y.end());
    return x;
  }
}  // namespace

TEST_CASE("boolean operations on examples") {
  auto const a = one(ab, 0), b = one(ab, 1);
  CHECK(language(unite(a, b), 3) == std::set<Word>{{0}, {1}});
  CHECK(is_empty(intersect(a, complement(a))));
  auto const abcstar = star(concat(lit(abc, {{0, 1}}), lit(abc, {{2}})));
  CHECK(abcstar.accepts(Word{}));
  CHECK(abcstar.accepts(Word{0, 1, 2, 0, 1, 2}));
  CHECK(!abcstar.accepts(Word{0, 1, 2, 0}));
  CHECK_THROWS_AS(unite(a, one(abc, 0)), AlphabetMismatch);
}

TEST_CASE("boolean operations agree with set semantics") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    auto const f  = random_fsa(rng, ab, 1 + trial % 5);
    auto const g  = random_fsa(rng, ab, 1 + (trial * 7) % 4);
    auto const lf = language(f, 6), lg = language(g, 6);
    std::set<Word> inter, diff;
    std::set_intersection(lf.begin(), lf.end(), lg.begin(), lg.end(), std::inserter(inter, inter.end()));
    std::set_difference(lf.begin(), lf.end(), lg.begin(), lg.end(), std::inserter(diff, diff.end()));
    CHECK(language(unite(f, g), 6) == set_union(lf, lg));
    CHECK(language(intersect(f, g), 6) == inter);
    CHECK(language(difference(f, g), 6) == diff);

    // Concatenation against pairs of short words.
    std::set<Word> cat;
    for (auto const& x : language(f, 6)) {
      for (auto const& y : language(g, 6)) {
        if (x.size() + y.size() <= 6) {
          cat.insert(concat(x, y));
        }
      }
    }
    CHECK(language(concat(f, g), 6) == cat);

    // Laws up to equivalence.
    CHECK(equivalent(complement(unite(f, g)), intersect(complement(f), complement(g))));
    CHECK(equivalent(complement(intersect(f, g)), unite(complement(f), complement(g))));
    auto const h = random_fsa(rng, ab, 3);
    CHECK(equivalent(intersect(f, unite(g, h)), unite(intersect(f, g), intersect(f, h))));
    CHECK(equivalent(intersect(f, Fsa::universal(ab)), f));
    CHECK(equivalent(complement(complement(f)), f));
    CHECK(equivalent(minimize(f), f));
    CHECK(minimize(f).num_states() <= f.num_states() + 1);
  }
}

TEST_CASE("star agrees with bounded closure") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto const     f = random_fsa(rng, ab, 1 + trial % 4);
    auto const     l = language(f, 5);
    std::set<Word> closure{{}};
    bool           grew = true;
    while (grew) {
      grew = false;
      for (auto const& x : std::set<Word>(closure)) {
        for (auto const& y : l) {
          if (!y.empty() && x.size() + y.size() <= 5 && closure.insert(concat(x, y)).second) {
            grew = true;
          }
        }
      }
    }
    CHECK(language(star(f), 5) == closure);
  }
}

TEST_CASE("homomorphic preimage") {
  auto const c = symbols({"a", ">"});
  // a* >*
  auto const target = concat(star(one(c, 0)), star(one(c, 1)));
  auto const pre    = hom_preimage(target, ab, {{0}, {1}});
  CHECK(equivalent(pre, concat(star(one(ab, 0)), star(one(ab, 1)))));
  // Everything erased: preimage of a language containing the empty word is A*.
  CHECK(equivalent(hom_preimage(target, ab, std::vector<Word>(2)), Fsa::universal(ab)));
  CHECK(is_empty(hom_preimage(one(c, 0), ab, std::vector<Word>(2))));
  // Identity.
  std::mt19937_64 rng(5);
  auto const      f = random_fsa(rng, ab, 4);
  CHECK(equivalent(hom_preimage(f, ab, {{0}, {1}}), f));
  // Against direct evaluation of h.
  auto const g = random_fsa(rng, abc, 4);
  std::vector<Word> images{{0, 2}, {1, 1}};
  auto const        p = hom_preimage(g, ab, images);
  for (auto const& w : words_up_to(2, 6)) {
    Word image;
    for (auto x : w) {
      image = concat(image, images[x]);
    }
    CHECK(p.accepts(w) == g.accepts(image));
  }
}

TEST_CASE("quotient") {
  CHECK(language(quotient(lit(ab, {{0, 1}}), Word{1}), 4) == std::set<Word>{{0}});
  std::mt19937_64 rng(9);
  auto const      astar_b = concat(star(one(ab, 0)), one(ab, 1));
  CHECK(equivalent(quotient(astar_b, Word{1}), star(one(ab, 0))));
  for (int trial = 0; trial < 30; ++trial) {
    auto const f = random_fsa(rng, ab, 1 + trial % 5);
    CHECK(equivalent(quotient(f, Word{}), f));
    for (auto const& w : words_up_to(2, 3)) {
      auto const q = quotient(f, w);
      for (auto const& x : words_up_to(2, 4)) {
        CHECK(q.accepts(x) == f.accepts(concat(x, w)));
      }
      CHECK(is_subset(f, quotient(concat(f, Fsa::word(ab, w)), w)));
    }
  }
}

TEST_CASE("enumerate") {
  auto const astar = star(one(ab, 0));
  CHECK(enumerate(astar, 2) == std::vector<Word>{{}, {0}, {0, 0}});
  CHECK(enumerate(Fsa::empty_language(ab), 5).empty());
  CHECK(enumerate(lit(ab, {{0, 1}}), 1).empty());
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    auto const f = random_fsa(rng, ab, 1 + trial % 6);
    auto const e = enumerate(f, 6);
    CHECK(std::set<Word>(e.begin(), e.end()) == language(f, 6));
    CHECK(std::is_sorted(e.begin(), e.end(), shortlex_less));
  }
}

TEST_CASE("shortest word and prefix closure") {
  CHECK(shortest_word(lit(ab, {{1, 1}, {0, 1, 0}})) == Word{1, 1});
  CHECK(!shortest_word(Fsa::empty_language(ab)));
  CHECK(is_prefix_closed(lit(ab, {{}, {0}, {0, 1}})));
  CHECK(!is_prefix_closed(lit(ab, {{}, {0, 1}})));
}

TEST_CASE("padding") {
  PaddedAlphabet const pa(abc, 2);
  CHECK(pa.symbols()->size() == 15);
  auto const $ = pa.padding();
  auto       t = [&](Symbol x, Symbol y) {
    Symbol const tuple[] = {x, y};
    return pa.encode(tuple);
  };
  CHECK(pad(pa, {{0, 1}, {2}}) == Word{t(0, 2), t(1, $)});
  CHECK(pad(pa, {{0}, {0}}) == Word{t(0, 0)});
  CHECK(pad(pa, {{}, {0, 1}}) == Word{t($, 0), t($, 1)});
  CHECK(pad(pa, {{}, {}}).empty());
  for (auto const& u : words_up_to(3, 3)) {
    for (auto const& v : words_up_to(3, 2)) {
      CHECK(unpad(pa, pad(pa, {u, v})) == std::vector<Word>{u, v});
    }
  }
  CHECK_THROWS(unpad(pa, Word{t($, 0), t(0, 0)}));
  auto const wf = well_formed(pa);
  CHECK(wf.accepts(Word{t(0, 0), t($, 1)}));
  CHECK(!wf.accepts(Word{t($, 1), t(0, 0)}));
}

TEST_CASE("product membership is componentwise") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 12; ++trial) {
    auto const f = random_fsa(rng, ab, 1 + trial % 4), g = random_fsa(rng, ab, 2 + trial % 3);
    auto const s = product({f, g});
    for (auto const& u : words_up_to(2, 4)) {
      for (auto const& v : words_up_to(2, 4)) {
        CHECK(s.accepts({u, v}) == (f.accepts(u) && g.accepts(v)));
      }
    }
    if (!is_empty(g)) {
      CHECK(equivalent(proj1(s), f));
    }
    auto const h = random_fsa(rng, ab, 2);
    if (!is_empty(g) && !is_empty(h)) {
      CHECK(equivalent(proj1(product({f, g, h})), f));
    }
  }
  auto const astar = star(one(ab, 0)), bstar = star(one(ab, 1));
  auto const s     = product({astar, bstar});
  CHECK(s.accepts({{0, 0}, {1}}));
  CHECK(is_empty(product({Fsa::empty_language(ab), astar}).fsa()));
  CHECK(s.accepts({{}, {}}));
  CHECK(!product({one(ab, 0), astar}).accepts({{}, {}}));
}

TEST_CASE("projection examples") {
  PaddedAlphabet const pa(abc, 2);
  auto const           one_pair = SyncAcceptor(pa, Fsa::word(pa.symbols(), pad(pa, {{0, 1}, {2}})));
  CHECK(equivalent(proj1(one_pair), lit(abc, {{0, 1}})));
  auto const first_empty = SyncAcceptor(pa, Fsa::word(pa.symbols(), pad(pa, {{}, {0}})));
  CHECK(equivalent(proj1(first_empty), Fsa::epsilon(abc)));
  // Ill-formed padded words are removed on construction.
  Symbol const bad[] = {pa.encode(std::vector<Symbol>{pa.padding(), 0}), pa.encode(std::vector<Symbol>{0, 0})};
  CHECK(is_empty(SyncAcceptor(pa, Fsa::word(pa.symbols(), bad)).fsa()));
}
