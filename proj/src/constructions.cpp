#include "autostack/constructions.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

namespace autostack {

  namespace {
    Fsa lift(Fsa const& f, SymbolsPtr const& target, std::size_t offset) {
      std::vector<std::optional<Symbol>> map(f.num_symbols());
      for (std::size_t s = 0; s < map.size(); ++s) {
        map[s] = static_cast<Symbol>(offset + s);
      }
      return rename_symbols(f, target, map);
    }

    Word shift(Word w, std::size_t offset) {
      for (auto& x : w) {
        x += static_cast<Letter>(offset);
      }
      return w;
    }

    Word unshift(Word w, std::size_t offset) {
      for (auto& x : w) {
        x -= static_cast<Letter>(offset);
      }
      return w;
    }

    Fsa ends_with(SymbolsPtr const& symbols, Letter b) {
      Word last{b};
      return concat(Fsa::universal(symbols), Fsa::word(symbols, last));
    }

    void require_rules(StackingStructure const& s, char const* role) {
      if (!s.has_rules()) {
        throw Unsupported(fmt::format("{} '{}' has no piecewise rules", role, s.name()));
      }
    }

    void require_normal_form(StackingStructure const& s, Word const& w, std::string const& what) {
      for (auto x : w) {
        if (x >= s.alphabet().size()) {
          throw ParseError(fmt::format("{}: letter {} out of range", what, x));
        }
      }
      if (!s.is_normal_form(w)) {
        throw NotNormalForm(
            fmt::format("{}: '{}' is not a normal form of '{}'", what, s.alphabet().format(w), s.name()));
      }
    }

    std::string renamed_letter(std::string const& name, std::size_t vertex) {
      static std::string const inv = "^-1";
      if (name.size() > inv.size() && name.compare(name.size() - inv.size(), inv.size(), inv) == 0) {
        return fmt::format("{}_{}{}", name.substr(0, name.size() - inv.size()), vertex + 1, inv);
      }
      return fmt::format("{}_{}", name, vertex + 1);
    }

    std::vector<Word> commutators(ProductAlphabet const& pa, GraphSpec const& spec) {
      std::vector<Word> out;
      auto const&       alpha = pa.alphabet;
      for (Letter x = 0; x < alpha.size(); ++x) {
        for (Letter y = 0; y < alpha.size(); ++y) {
          if (x > alpha.inverse(x) || y > alpha.inverse(y)) {
            continue;
          }
          auto const i = pa.vertex[x];
          auto const j = pa.vertex[y];
          if (i < j && spec.adjacent(i, j)) {
            out.push_back({x, y, alpha.inverse(x), alpha.inverse(y)});
          }
        }
      }
      return out;
    }

    std::optional<std::vector<std::size_t>> pair(std::size_t x, std::optional<std::size_t> y) {
      if (!y) {
        return std::nullopt;
      }
      return std::vector<std::size_t>{x, *y};
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // GraphSpec
  ////////////////////////////////////////////////////////////////////////

  GraphSpec::GraphSpec(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges)
      : n_(n), adj_(n * n, false) {
    for (auto [i, j] : edges) {
      if (i >= n || j >= n) {
        throw ParseError(fmt::format("edge ({}, {}) out of range for {} vertices", i, j, n));
      }
      if (i == j) {
        throw ParseError(fmt::format("loop at vertex {}", i));
      }
      if (adj_[i * n + j]) {
        throw ParseError(fmt::format("repeated edge ({}, {})", i, j));
      }
      adj_[i * n + j] = adj_[j * n + i] = true;
    }
  }

  GraphSpec GraphSpec::complete(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        e.emplace_back(i, j);
      }
    }
    return GraphSpec(n, std::move(e));
  }

  GraphSpec GraphSpec::discrete(std::size_t n) {
    return GraphSpec(n, {});
  }

  bool GraphSpec::adjacent(std::size_t i, std::size_t j) const {
    return i < n_ && j < n_ && adj_[i * n_ + j];
  }

  std::vector<std::pair<std::size_t, std::size_t>> GraphSpec::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        if (adj_[i * n_ + j]) {
          out.emplace_back(i, j);
        }
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Graph products
  ////////////////////////////////////////////////////////////////////////

  ProductAlphabet product_alphabet(std::vector<Alphabet> const& vertices) {
    ProductAlphabet          pa;
    std::vector<std::string> names;
    std::vector<Letter>      inverse;
    std::set<std::string>    used;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      auto const& v = vertices[i];
      pa.offset.push_back(names.size());
      std::vector<bool> clash(v.size(), false);
      for (Letter x = 0; x < v.size(); ++x) {
        if (used.contains(v.name(x))) {
          clash[x] = clash[v.inverse(x)] = true;
        }
      }
      for (Letter x = 0; x < v.size(); ++x) {
        std::string name = v.name(x);
        if (clash[x]) {
          name = renamed_letter(name, i);
          pa.renamed.emplace_back(v.name(x), name);
        }
        if (used.contains(name)) {
          throw ParseError(fmt::format("letter name '{}' still collides after renaming", name));
        }
        names.push_back(name);
        inverse.push_back(static_cast<Letter>(pa.offset[i] + v.inverse(x)));
        pa.vertex.push_back(i);
      }
      for (Letter x = 0; x < v.size(); ++x) {
        used.insert(names[pa.offset[i] + x]);
      }
    }
    pa.alphabet = Alphabet(std::move(names), std::move(inverse));
    return pa;
  }

  SymbolsPtr pi_symbols(Alphabet const& vertex_alphabet) {
    auto names = vertex_alphabet.names();
    names.emplace_back(">");
    names.emplace_back("$");
    return std::make_shared<Symbols const>(std::move(names));
  }

  namespace {
    std::vector<Word> pi_images(std::size_t i, GraphSpec const& spec, ProductAlphabet const& pa) {
      auto const        size = (i + 1 < pa.offset.size() ? pa.offset[i + 1] : pa.alphabet.size()) - pa.offset[i];
      Letter const      gt   = static_cast<Letter>(size);
      Letter const      dol  = gt + 1;
      std::vector<Word> images(pa.alphabet.size());
      for (Letter x = 0; x < pa.alphabet.size(); ++x) {
        auto const v = pa.vertex[x];
        if (v == i) {
          images[x] = {static_cast<Letter>(x - pa.offset[i])};
        } else if (spec.adjacent(i, v)) {
          if (v > i) {
            images[x] = {gt};
          }
        } else {
          images[x] = {dol};
        }
      }
      return images;
    }

    void check_spec(GraphSpec const& spec, std::size_t count) {
      if (spec.size() != count) {
        throw ParseError(fmt::format("graph has {} vertices but {} structures were given", spec.size(), count));
      }
      if (count == 0) {
        throw ParseError("graph product needs at least one vertex");
      }
    }

    ProductAlphabet alphabet_of(std::vector<StackingStructure> const& vertices) {
      std::vector<Alphabet> alphabets;
      for (auto const& v : vertices) {
        alphabets.push_back(v.alphabet());
      }
      return product_alphabet(alphabets);
    }

    struct PiLanguages {
      Fsa prefix;  // pi_k^-1((N_k >* $)*)
      Fsa full;    // pi_k^-1((N_k >* $)* N_k >*)
      Fsa ends_gt;  // pi_k^-1(C_k* >)
    };

    PiLanguages pi_languages(std::size_t                           k,
                             GraphSpec const&                      spec,
                             ProductAlphabet const&                pa,
                             std::vector<StackingStructure> const& vertices) {
      auto const&  vk     = vertices[k];
      auto const   ck     = pi_symbols(vk.alphabet());
      Letter const gt     = static_cast<Letter>(vk.alphabet().size());
      Letter const dol    = gt + 1;
      auto const   images = pi_images(k, spec, pa);
      Word const   gtw{gt}, dolw{dol};

      Fsa const nk     = lift(vk.normal_forms(), ck, 0);
      Fsa const gtstar = star(Fsa::word(ck, gtw));
      Fsa const block  = star(concat(concat(nk, gtstar), Fsa::word(ck, dolw)));
      Fsa const whole  = concat(block, concat(nk, gtstar));
      Fsa const endgt  = concat(Fsa::universal(ck), Fsa::word(ck, gtw));
      auto const& a    = pa.alphabet.symbols();
      return {minimize(hom_preimage(block, a, images)), minimize(hom_preimage(whole, a, images)),
              minimize(hom_preimage(endgt, a, images))};
    }

    Fsa normal_forms_from(std::vector<PiLanguages> const& langs, SymbolsPtr const& symbols) {
      Fsa out = Fsa::universal(symbols);
      for (auto const& l : langs) {
        out = minimize(intersect(out, l.full));
      }
      return out;
    }
  }  // namespace

  Word pi(std::size_t i, GraphSpec const& spec, ProductAlphabet const& pa, Word const& w) {
    if (i >= pa.offset.size()) {
      throw ParseError(fmt::format("vertex {} out of range", i));
    }
    auto const images = pi_images(i, spec, pa);
    Word       out;
    for (auto x : w) {
      if (x >= images.size()) {
        throw ParseError(fmt::format("letter {} is not in the product alphabet", x));
      }
      out.insert(out.end(), images[x].begin(), images[x].end());
    }
    return out;
  }

  Fsa product_normal_forms(GraphSpec const& spec, std::vector<StackingStructure> const& vertices) {
    check_spec(spec, vertices.size());
    auto const               pa = alphabet_of(vertices);
    std::vector<PiLanguages> langs;
    for (std::size_t k = 0; k < vertices.size(); ++k) {
      langs.push_back(pi_languages(k, spec, pa, vertices));
    }
    return normal_forms_from(langs, pa.alphabet.symbols());
  }

  Construction graph_product(GraphSpec const&                      spec,
                             std::vector<StackingStructure> const& vertices,
                             std::size_t                           chain_radius) {
    check_spec(spec, vertices.size());
    for (auto const& v : vertices) {
      require_rules(v, "vertex structure");
    }
    auto const               pa  = alphabet_of(vertices);
    auto const&              sym = pa.alphabet.symbols();
    std::vector<PiLanguages> langs;
    for (std::size_t k = 0; k < vertices.size(); ++k) {
      langs.push_back(pi_languages(k, spec, pa, vertices));
    }
    Fsa const nl = normal_forms_from(langs, sym);

    std::vector<PiecewiseRule> rules;
    std::size_t                bound = 3;
    std::vector<Word>          relators;
    for (std::size_t k = 0; k < vertices.size(); ++k) {
      auto const& vk  = vertices[k];
      auto const  off = pa.offset[k];
      bound           = std::max(bound, vk.bound());
      for (auto const& r : vk.rules()) {
        Fsa guard = minimize(intersect(nl, concat(langs[k].prefix, lift(r.guard, sym, off))));
        if (!is_empty(guard)) {
          rules.push_back({std::move(guard), static_cast<Letter>(r.letter + off), shift(r.output, off)});
        }
      }
      Fsa const after_gt = intersect(nl, langs[k].ends_gt);
      for (Letter b = 0; b < pa.alphabet.size(); ++b) {
        auto const i = pa.vertex[b];
        if (i == k || !spec.adjacent(i, k)) {
          continue;
        }
        Fsa guard = minimize(intersect(after_gt, ends_with(sym, b)));
        if (is_empty(guard)) {
          continue;
        }
        for (Letter a = 0; a < vk.alphabet().size(); ++a) {
          auto const ga = static_cast<Letter>(a + off);
          rules.push_back({guard, ga, {pa.alphabet.inverse(b), ga, b}});
        }
      }
      for (auto const& rel : vk.relators()) {
        relators.push_back(shift(rel, off));
      }
    }
    auto comm = commutators(pa, spec);
    relators.insert(relators.end(), comm.begin(), comm.end());

    std::vector<std::string> names;
    for (auto const& v : vertices) {
      names.push_back(v.name());
    }
    std::string name = fmt::format("graph_product({})", fmt::join(names, ", "));

    StackingStructure out(name, pa.alphabet, nl, std::move(rules), bound, std::move(relators));

    auto const gt_of = [](std::size_t k, std::vector<StackingStructure> const& v) {
      return static_cast<Letter>(v[k].alphabet().size());
    };
    auto direct = [pa, spec, vertices, gt_of](Word const& y, Letter a) -> Word {
      auto const k = pa.vertex.at(a);
      auto const p = pi(k, spec, pa, y);
      if (!p.empty() && p.back() == gt_of(k, vertices)) {
        return {pa.alphabet.inverse(y.back()), a, y.back()};
      }
      std::size_t start = y.size();
      while (start > 0 && pa.vertex[y[start - 1]] == k) {
        --start;
      }
      Word const suf(y.begin() + static_cast<std::ptrdiff_t>(start), y.end());
      auto const off = pa.offset[k];
      return shift(vertices[k].stack(unshift(suf, off), static_cast<Letter>(a - off)), off);
    };
    out = out.with_stack_fn(direct);

    std::vector<ChainLengths> chains;
    for (auto const& v : vertices) {
      chains.emplace_back(v, chain_radius);
    }
    PsiCertificate psi;
    psi.dimension = 2;
    psi.eval = [pa, spec, vertices, chains, gt_of](Word const& y, Letter a) -> std::optional<std::vector<std::size_t>> {
      auto const k = pa.vertex.at(a);
      auto const p = pi(k, spec, pa, y);
      if (!p.empty() && p.back() == gt_of(k, vertices)) {
        return std::vector<std::size_t>{y.size(), 0};
      }
      std::size_t start = y.size();
      while (start > 0 && pa.vertex[y[start - 1]] == k) {
        --start;
      }
      auto const off = pa.offset[k];
      Word const suf = unshift(Word(y.begin() + static_cast<std::ptrdiff_t>(start), y.end()), off);
      return pair(0, chains[k](suf, static_cast<Letter>(a - off)));
    };
    return {std::move(out), std::move(psi), pa.renamed};
  }

  ////////////////////////////////////////////////////////////////////////
  // Extensions
  ////////////////////////////////////////////////////////////////////////

  std::vector<std::vector<Word>> stack_images(StackingStructure const& s) {
    require_rules(s, "structure");
    std::vector<std::vector<Word>> out(s.alphabet().size());
    for (auto const& r : s.rules()) {
      auto& v = out[r.letter];
      if (std::find(v.begin(), v.end(), r.output) == v.end()) {
        v.push_back(r.output);
      }
    }
    for (auto& v : out) {
      std::sort(v.begin(), v.end(), shortlex_less);
    }
    return out;
  }

  Construction extension(ExtensionData const& data, std::size_t chain_radius) {
    auto const& K = data.K;
    auto const& Q = data.Q;
    require_rules(K, "kernel");
    require_rules(Q, "quotient");
    auto const& A  = K.alphabet();
    auto const& B  = Q.alphabet();
    auto const  na = A.size();

    std::vector<std::string> names = A.names();
    std::vector<Letter>      inverse(A.inverses());
    for (Letter b = 0; b < B.size(); ++b) {
      auto it = data.hat.find(B.name(b));
      if (it == data.hat.end()) {
        throw TableMissing(fmt::format("no lift for quotient letter '{}'", B.name(b)));
      }
      names.push_back(it->second);
      inverse.push_back(static_cast<Letter>(na + B.inverse(b)));
    }
    for (auto const& [b, lifted] : data.hat) {
      if (!B.find(b)) {
        throw ParseError(fmt::format("lift given for unknown quotient letter '{}'", b));
      }
    }
    Alphabet const C(names, inverse);
    auto const&    sym = C.symbols();

    auto conj = [&](Letter d, Letter a) -> Word const& {
      auto it = data.conj.find({C.name(d), A.name(a)});
      if (it == data.conj.end()) {
        throw TableMissing(fmt::format("no conjugate for ({}, {})", C.name(d), A.name(a)));
      }
      return it->second;
    };
    auto const images = stack_images(Q);
    auto       corr   = [&](Letter c, Word const& z) -> Word {
      auto it = data.corr.find({C.name(c), z});
      if (it != data.corr.end()) {
        return it->second;
      }
      if (shift(z, na) == Word{c}) {
        return {};
      }
      throw TableMissing(fmt::format("no correction for ({}, '{}')", C.name(c), B.format(z)));
    };

    Fsa const nk = lift(K.normal_forms(), sym, 0);
    Fsa const ng = minimize(concat(nk, lift(Q.normal_forms(), sym, na)));

    std::vector<PiecewiseRule> rules;
    std::vector<Word>          relators;
    std::size_t                longest_conj = 0, longest_corr = 0;
    for (auto const& r : K.rules()) {
      rules.push_back({lift(r.guard, sym, 0), r.letter, r.output});
    }
    for (Letter d = static_cast<Letter>(na); d < C.size(); ++d) {
      Fsa const guard = minimize(intersect(ng, ends_with(sym, d)));
      for (Letter a = 0; a < na; ++a) {
        Word const& u = conj(d, a);
        require_normal_form(K, u, fmt::format("conjugate ({}, {})", C.name(d), A.name(a)));
        longest_conj = std::max(longest_conj, u.size());
        Word out{C.inverse(d)};
        out.insert(out.end(), u.begin(), u.end());
        out.push_back(d);
        rules.push_back({guard, a, std::move(out)});
        Word rel{d, a, C.inverse(d)};
        auto inv_u = formal_inverse(A, u);
        rel.insert(rel.end(), inv_u.begin(), inv_u.end());
        relators.push_back(std::move(rel));
      }
    }
    for (Letter c = static_cast<Letter>(na); c < C.size(); ++c) {
      for (auto const& r : Q.rules()) {
        if (r.letter + na != c) {
          continue;
        }
        Word const u = corr(c, r.output);
        require_normal_form(K, u, fmt::format("correction ({}, '{}')", C.name(c), B.format(r.output)));
        longest_corr = std::max(longest_corr, u.size());
        Word out     = concat(u, shift(r.output, na));
        rules.push_back({minimize(concat(nk, lift(r.guard, sym, na))), c, out});
        out.push_back(C.inverse(c));
        relators.push_back(std::move(out));
      }
    }
    for (auto const& rel : K.relators()) {
      relators.push_back(rel);
    }
    std::sort(relators.begin(), relators.end(), shortlex_less);
    relators.erase(std::unique(relators.begin(), relators.end()), relators.end());
    auto const bound = std::max({K.bound(), 2 + longest_conj, Q.bound() + longest_corr});

    std::string name = fmt::format("extension({}, {})", K.name(), Q.name());
    StackingStructure out(name, C, ng, std::move(rules), bound, std::move(relators));

    // Split y = u t with u over A and t over the lifted letters.
    auto split = [na](Word const& y) {
      std::size_t i = 0;
      while (i < y.size() && y[i] < na) {
        ++i;
      }
      return i;
    };
    auto conj_copy = data.conj;
    auto corr_copy = data.corr;
    auto direct    = [K, Q, C, A, B, na, split, conj_copy, corr_copy](Word const& y, Letter c) -> Word {
      auto const i = split(y);
      if (c < na) {
        if (i == y.size()) {
          return K.stack(y, c);
        }
        auto it = conj_copy.find({C.name(y.back()), A.name(c)});
        if (it == conj_copy.end()) {
          throw TableMissing(fmt::format("no conjugate for ({}, {})", C.name(y.back()), A.name(c)));
        }
        Word out{C.inverse(y.back())};
        out.insert(out.end(), it->second.begin(), it->second.end());
        out.push_back(y.back());
        return out;
      }
      Word const t = unshift(Word(y.begin() + static_cast<std::ptrdiff_t>(i), y.end()), na);
      Word const z = Q.stack(t, static_cast<Letter>(c - na));
      Word const zhat = shift(z, na);
      Word       u;
      if (auto it = corr_copy.find({C.name(c), z}); it != corr_copy.end()) {
        u = it->second;
      } else if (zhat != Word{c}) {
        throw TableMissing(fmt::format("no correction for ({}, '{}')", C.name(c), B.format(z)));
      }
      return concat(u, zhat);
    };
    out = out.with_stack_fn(direct);

    ChainLengths   chi_k(K, chain_radius), chi_q(Q, chain_radius);
    PsiCertificate psi;
    psi.dimension = 2;
    psi.eval      = [na, split, chi_k, chi_q](Word const& y, Letter c) -> std::optional<std::vector<std::size_t>> {
      auto const i = split(y);
      if (c < na) {
        if (i == y.size()) {
          return pair(1, chi_k(y, c));
        }
        return std::vector<std::size_t>{2, y.size() - i};
      }
      Word const t = unshift(Word(y.begin() + static_cast<std::ptrdiff_t>(i), y.end()), na);
      return pair(3, chi_q(t, static_cast<Letter>(c - na)));
    };
    return {std::move(out), std::move(psi), {}};
  }

  ////////////////////////////////////////////////////////////////////////
  // Finite-index supergroups
  ////////////////////////////////////////////////////////////////////////

  Construction finite_index(IndexData const& data, std::size_t chain_radius) {
    auto const& H = data.H;
    require_rules(H, "subgroup");
    auto const& A  = H.alphabet();
    auto const  na = A.size();
    if (data.transversal.empty()) {
      throw ParseError("transversal has no non-identity representatives");
    }

    std::vector<std::string> names = A.names();
    std::vector<Letter>      inverse(A.inverses());
    for (auto const& s : data.transversal) {
      auto const at = static_cast<Letter>(names.size());
      names.push_back(s);
      names.push_back(s + "^-1");
      inverse.push_back(at + 1);
      inverse.push_back(at);
    }
    Alphabet const C(names, inverse);
    auto const&    sym = C.symbols();
    auto in_s = [na](Letter x) { return x >= na && (x - na) % 2 == 0; };

    auto coset_word = [&](CosetWord const& cw, std::string const& what) {
      require_normal_form(H, cw.u, what);
      Word w = cw.u;
      if (!cw.t.empty()) {
        auto t = C.find(cw.t);
        if (!t || !in_s(*t)) {
          throw ParseError(fmt::format("{}: '{}' is not a coset representative", what, cw.t));
        }
        w.push_back(*t);
      }
      return w;
    };

    // y_x for x in B.
    std::vector<Word> yc(C.size());
    for (Letter x = static_cast<Letter>(na); x < C.size(); ++x) {
      if (in_s(x)) {
        yc[x] = {x};
        continue;
      }
      auto it = data.table1.find(C.name(x));
      if (it == data.table1.end()) {
        throw TableMissing(fmt::format("no coset word for '{}'", C.name(x)));
      }
      yc[x] = coset_word(it->second, fmt::format("table1 entry '{}'", C.name(x)));
    }
    // y_{xy} for x in B, y in C.
    std::vector<Word> yxy(C.size() * C.size());
    for (Letter x = static_cast<Letter>(na); x < C.size(); ++x) {
      for (Letter y = 0; y < C.size(); ++y) {
        auto it = data.table2.find({C.name(x), C.name(y)});
        if (it == data.table2.end()) {
          throw TableMissing(fmt::format("no coset word for ({}, {})", C.name(x), C.name(y)));
        }
        yxy[x * C.size() + y] = coset_word(it->second, fmt::format("table2 entry ({}, {})", C.name(x), C.name(y)));
      }
    }
    for (auto const& [k, v] : data.table1) {
      if (!C.find(k)) {
        throw ParseError(fmt::format("table1 names unknown letter '{}'", k));
      }
    }

    Fsa const nh = lift(H.normal_forms(), sym, 0);
    Fsa       ng = nh;
    for (Letter s = static_cast<Letter>(na); s < C.size(); s += 2) {
      Word const sw{s};
      ng = unite(ng, concat(nh, Fsa::word(sym, sw)));
    }
    ng = minimize(ng);

    std::vector<PiecewiseRule> rules;
    std::vector<Word>          relators = H.relators();
    std::size_t                bound    = H.bound();
    for (auto const& r : H.rules()) {
      rules.push_back({lift(r.guard, sym, 0), r.letter, r.output});
    }
    for (Letter c = static_cast<Letter>(na); c < C.size(); ++c) {
      rules.push_back({nh, c, yc[c]});
      bound = std::max(bound, yc[c].size());
      if (!in_s(c)) {
        Word rel{c};
        auto inv = formal_inverse(C, yc[c]);
        rel.insert(rel.end(), inv.begin(), inv.end());
        relators.push_back(std::move(rel));
      }
    }
    for (Letter s = static_cast<Letter>(na); s < C.size(); s += 2) {
      Word const sw{s};
      Fsa const  guard = minimize(concat(nh, Fsa::word(sym, sw)));
      for (Letter c = 0; c < C.size(); ++c) {
        Word out{C.inverse(s)};
        auto const& y = yxy[s * C.size() + c];
        out.insert(out.end(), y.begin(), y.end());
        bound = std::max(bound, out.size());
        rules.push_back({guard, c, std::move(out)});
      }
    }
    for (Letter x = static_cast<Letter>(na); x < C.size(); ++x) {
      for (Letter y = 0; y < C.size(); ++y) {
        Word rel{x, y};
        auto inv = formal_inverse(C, yxy[x * C.size() + y]);
        rel.insert(rel.end(), inv.begin(), inv.end());
        relators.push_back(free_reduce(C, rel));
      }
    }
    std::erase_if(relators, [](Word const& w) { return w.empty(); });
    std::sort(relators.begin(), relators.end(), shortlex_less);
    relators.erase(std::unique(relators.begin(), relators.end()), relators.end());

    std::string name = fmt::format("finite_index({})", H.name());
    StackingStructure out(name, C, ng, std::move(rules), bound, std::move(relators));

    auto const csize  = C.size();
    auto       direct = [H, C, na, csize, yc, yxy](Word const& y, Letter c) -> Word {
      bool const in_a = y.empty() || y.back() < na;
      if (in_a) {
        return c < na ? H.stack(y, c) : yc[c];
      }
      Word out{C.inverse(y.back())};
      auto const& w = yxy[y.back() * csize + c];
      out.insert(out.end(), w.begin(), w.end());
      return out;
    };
    out = out.with_stack_fn(direct);

    ChainLengths   chi_h(H, chain_radius);
    PsiCertificate psi;
    psi.dimension = 2;
    psi.eval      = [na, chi_h](Word const& y, Letter c) -> std::optional<std::vector<std::size_t>> {
      bool const in_a = y.empty() || y.back() < na;
      if (!in_a) {
        return std::vector<std::size_t>{1, 1};
      }
      if (c >= na) {
        return std::vector<std::size_t>{1, 0};
      }
      return pair(0, chi_h(y, c));
    };
    return {std::move(out), std::move(psi), {}};
  }

}  // namespace autostack
