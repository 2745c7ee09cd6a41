#include <doctest.h>

#include "autostack/constructions.hpp"
#include "autostack/instances.hpp"
#include "autostack/kernels.hpp"
#include "autostack/verify.hpp"

using namespace autostack;

namespace {
  StackingStructure zgen(std::string const& name) {
    return free_group(std::vector<std::string>{name});
  }

  StackingStructure trivial() {
    return free_group(std::vector<std::string>{});
  }

  std::vector<std::size_t> psi_of(Construction const& c, std::string const& y, std::string const& a) {
    auto const& alpha = c.structure.alphabet();
    auto        v     = c.psi.eval(alpha.parse(y), alpha.letter(a));
    REQUIRE(v.has_value());
    return *v;
  }

  std::string phi(Construction const& c, std::string const& y, std::string const& a) {
    auto const& alpha = c.structure.alphabet();
    return alpha.format(c.structure.stack(alpha.parse(y), alpha.letter(a)));
  }

  void check_construction(Construction const& c, std::size_t radius) {
    CAPTURE(c.structure.name());
    auto const report = verify(c.structure, radius);
    CHECK_MESSAGE(report.passed(), format_report(report));
    auto const psi = check_psi(c.structure, c.psi, radius);
    CHECK(psi.violations == 0);
    CHECK(psi.indeterminate == 0);
  }
}  // namespace

TEST_CASE("graph specs") {
  CHECK(GraphSpec::complete(3).edges().size() == 3);
  CHECK(GraphSpec::discrete(3).edges().empty());
  GraphSpec const path(3, {{0, 1}, {1, 2}});
  CHECK(path.adjacent(1, 0));
  CHECK(!path.adjacent(0, 2));
  CHECK_THROWS_AS(GraphSpec(2, {{0, 0}}), ParseError);
  CHECK_THROWS_AS(GraphSpec(2, {{0, 1}, {1, 0}}), ParseError);
  CHECK_THROWS_AS(GraphSpec(2, {{0, 2}}), ParseError);
}

TEST_CASE("pi") {
  auto const pa   = product_alphabet({zgen("a").alphabet(), zgen("b").alphabet()});
  auto const spec = GraphSpec::complete(2);
  auto const ab   = pa.alphabet.parse("a b");
  auto const c1   = pi_symbols(zgen("a").alphabet());
  CHECK(c1->names() == std::vector<std::string>{"a", "a^-1", ">", "$"});
  CHECK(pi(0, spec, pa, ab) == Word{0, 2});
  CHECK(pi(1, spec, pa, ab) == Word{0});
  CHECK(pi(0, spec, pa, {}).empty());
  CHECK(pi(0, GraphSpec::discrete(2), pa, ab) == Word{0, 3});
  CHECK(pi(1, GraphSpec::discrete(2), pa, ab) == Word{3, 0});
}

TEST_CASE("renaming on collisions") {
  auto const pa = product_alphabet({zgen("a").alphabet(), zgen("a").alphabet()});
  CHECK(pa.alphabet.names() == std::vector<std::string>{"a", "a^-1", "a_2", "a_2^-1"});
  CHECK(pa.renamed.size() == 2);
  auto const c = graph_product(GraphSpec::complete(2), {zgen("a"), zgen("a")});
  CHECK(c.renamed == pa.renamed);
  CHECK(c.structure.alphabet().format(c.structure.normalize(c.structure.alphabet().parse("a_2 a"))) == "a a_2");
}

TEST_CASE("product normal forms") {
  auto const za = zgen("a"), zb = zgen("b");
  auto const direct = product_normal_forms(GraphSpec::complete(2), {za, zb});
  auto const s      = direct.symbols();
  auto       star_of = [&](std::string const& name) {
    Symbol const x[] = {*s->find(name)};
    return star(Fsa::letters(s, x));
  };
  auto const hand = concat(unite(star_of("a"), star_of("a^-1")), unite(star_of("b"), star_of("b^-1")));
  CHECK(equivalent(direct, hand));
  CHECK(direct.accepts(Word{}));

  // Free product: the freely reduced words.
  auto const free = product_normal_forms(GraphSpec::discrete(2), {za, zb});
  std::vector<Word> cancel;
  for (Letter x = 0; x < 4; ++x) {
    cancel.push_back({x, static_cast<Letter>(x ^ 1u)});
  }
  auto const any     = Fsa::universal(s);
  auto const reduced = complement(concat(concat(any, Fsa::finite(s, cancel)), any));
  CHECK(equivalent(free, reduced));
}

TEST_CASE("graph product of Z and Z") {
  auto const c = graph_product(GraphSpec::complete(2), {zgen("a"), zgen("b")});
  CHECK(phi(c, "a b", "a") == "b^-1 a b");
  CHECK(phi(c, "a", "a") == "a");
  CHECK(c.structure.bound() == 3);
  CHECK(psi_of(c, "a b", "a") == std::vector<std::size_t>{2, 0});
  auto const& alpha = c.structure.alphabet();
  CHECK(alpha.format(c.structure.normalize(alpha.parse("b a"))) == "a b");
  auto const fp = graph_product(GraphSpec::discrete(2), {zgen("a"), zgen("b")});
  CHECK(fp.structure.alphabet().format(fp.structure.normalize(alpha.parse("b a"))) == "b a");
  check_construction(c, 3);
  check_construction(fp, 3);
}

TEST_CASE("graph product of one vertex") {
  for (auto const& name : {"free2", "S3", "Z2"}) {
    auto const s = builtin(name);
    auto const c = graph_product(GraphSpec::discrete(1), {s});
    CAPTURE(name);
    for (auto const& u : all_words(s.alphabet(), 5)) {
      CHECK(c.structure.normalize(u) == s.normalize(u));
    }
  }
}

TEST_CASE("graph products of mixed vertex groups") {
  check_construction(graph_product(GraphSpec::complete(2), {symmetric3(), zgen("a")}), 3);
  check_construction(graph_product(GraphSpec::discrete(2), {symmetric3(), zgen("a")}), 3);
  check_construction(graph_product(GraphSpec(3, {{0, 1}, {1, 2}}), {zgen("a"), zgen("b"), zgen("c")}), 3);
  check_construction(graph_product(GraphSpec(3, {{0, 2}}), {zgen("a"), symmetric3(), zgen("c")}), 3);
}

TEST_CASE("stack images") {
  auto const images = stack_images(zgen("b"));
  REQUIRE(images.size() == 2);
  CHECK(images[0] == std::vector<Word>{Word{0}});
  CHECK(images[1] == std::vector<Word>{Word{1}});
}

TEST_CASE("extension of Z by Z with trivial action") {
  ExtensionData data{zgen("a"), zgen("b"), {{"b", "t"}, {"b^-1", "t^-1"}}, {}, {}};
  auto const&   k = data.K.alphabet();
  for (auto const& lift : {"t", "t^-1"}) {
    data.conj[{lift, "a"}]    = k.parse("a");
    data.conj[{lift, "a^-1"}] = k.parse("a^-1");
  }
  auto const c = extension(data);
  CHECK(phi(c, "t", "a") == "t^-1 a t");
  CHECK(phi(c, "a", "t") == "t");
  CHECK(psi_of(c, "t", "a")[0] == 2);
  CHECK(psi_of(c, "t", "a")[1] == 1);
  check_construction(c, 3);

  data.conj.erase({"t", "a"});
  CHECK_THROWS_AS(extension(data), TableMissing);
}

TEST_CASE("Heisenberg instance") {
  auto const c = heisenberg_construction();
  CHECK(phi(c, "t", "a2") == "t^-1 a1 a2 t");
  CHECK(psi_of(c, "a2", "a1")[0] == 1);
  CHECK(psi_of(c, "t t", "a2") == std::vector<std::size_t>{2, 2});
  CHECK(c.structure.bound() == 4);
  check_construction(c, 3);
}

TEST_CASE("extension with a trivial factor") {
  SUBCASE("trivial kernel reproduces the quotient") {
    auto const q = builtin("free2");
    ExtensionData data{trivial(), q, {{"a", "x"}, {"a^-1", "x^-1"}, {"b", "y"}, {"b^-1", "y^-1"}}, {}, {}};
    auto const    c     = extension(data);
    auto const&   alpha = c.structure.alphabet();
    // x, y are the lifts of a, b; the letter orders correspond.
    auto const lift = [&](std::string const& name) {
      return alpha.letter((name[0] == 'a' ? "x" : "y") + name.substr(1));
    };
    for (auto const& u : all_words(q.alphabet(), 5)) {
      Word hatted, expected;
      for (auto x : u) {
        hatted.push_back(lift(q.alphabet().name(x)));
      }
      for (auto x : q.normalize(u)) {
        expected.push_back(lift(q.alphabet().name(x)));
      }
      CHECK(c.structure.normalize(hatted) == expected);
    }
    check_construction(c, 3);
  }
  SUBCASE("trivial quotient reproduces the kernel") {
    auto const k = builtin("Z2");
    auto const c = extension(ExtensionData{k, trivial(), {}, {}, {}});
    CHECK(c.structure.alphabet() == k.alphabet());
    for (auto const& u : all_words(k.alphabet(), 5)) {
      CHECK(c.structure.normalize(u) == k.normalize(u));
    }
    check_construction(c, 3);
  }
}

TEST_CASE("index 2 instance") {
  auto const c     = index2z_construction();
  auto const& s    = c.structure;
  auto const& alpha = s.alphabet();
  CHECK(phi(c, "g", "g") == "g^-1 h");
  CHECK(alpha.format(s.normalize_step(alpha.parse("g"), alpha.letter("g"))) == "h");
  CHECK(phi(c, "g", "g^-1") == "g^-1");
  CHECK(phi(c, "h", "g^-1") == "h^-1 g");
  CHECK(psi_of(c, "h", "g^-1") == std::vector<std::size_t>{1, 0});
  CHECK(psi_of(c, "h g", "h") == std::vector<std::size_t>{1, 1});
  check_construction(c, 4);
}

TEST_CASE("finite index input errors") {
  IndexData data{zgen("h"), {"g"}, {}, {}};
  auto      h = [&](std::string const& text) { return data.H.alphabet().parse(text); };
  data.table1 = {{"g^-1", {h("h^-1"), "g"}}};
  data.table2 = {{{"g", "h"}, {h("h"), "g"}}};
  CHECK_THROWS_AS(finite_index(data), TableMissing);
}
