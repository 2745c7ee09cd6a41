#include "autostack/io.hpp"

#include <fstream>
#include <algorithm>

#include <fmt/format.h>

#include "autostack/instances.hpp"

namespace autostack {

  namespace {
    template <typename F>
    auto guarded(std::string const& what, F&& f) -> decltype(f()) {
      try {
        return f();
      } catch (nlohmann::json::exception const& e) {
        throw ParseError(fmt::format("{}: {}", what, e.what()));
      }
    }

    Word parse_word(Alphabet const& alpha, Json const& j) {
      return alpha.parse(j.get<std::string>());
    }

    // Live states in index order, mapped to consecutive numbers.
    std::vector<std::optional<State>> live_numbering(Fsa const& f, std::size_t& count) {
      std::vector<std::optional<State>> num(f.num_states());
      count = 0;
      for (State q = 0; q < f.num_states(); ++q) {
        if (q == f.start() || !f.is_dead(q)) {
          num[q] = static_cast<State>(count++);
        }
      }
      return num;
    }

    template <typename SymbolJson>
    Json acceptor_json(Fsa const& f, SymbolJson&& symbol_json) {
      std::size_t n   = 0;
      auto const  num = live_numbering(f, n);
      Json        accepting = Json::array(), transitions = Json::array();
      for (State q = 0; q < f.num_states(); ++q) {
        if (!num[q]) {
          continue;
        }
        if (f.is_accepting(q)) {
          accepting.push_back(*num[q]);
        }
        for (Symbol s = 0; s < f.num_symbols(); ++s) {
          auto const r = f.next(q, s);
          if (num[r]) {
            transitions.push_back(Json::array({*num[q], symbol_json(s), *num[r]}));
          }
        }
      }
      return Json{{"states", n}, {"start", *num[f.start()]}, {"accepting", accepting}, {"transitions", transitions}};
    }

    template <typename SymbolOf>
    Fsa acceptor_from(Json const& doc, SymbolsPtr symbols, SymbolOf&& symbol_of) {
      auto const n    = doc.at("states").get<std::size_t>();
      auto const k    = symbols->size();
      auto const dead = static_cast<State>(n);
      auto const start = doc.at("start").get<std::size_t>();
      if (start >= std::max<std::size_t>(n, 1)) {
        throw ParseError(fmt::format("start state {} out of range", start));
      }
      std::vector<bool>  accepting(n + 1, false);
      std::vector<State> table((n + 1) * k, dead);
      std::vector<bool>  seen(n * k, false);
      for (auto const& a : doc.at("accepting")) {
        auto const q = a.get<std::size_t>();
        if (q >= n) {
          throw ParseError(fmt::format("accepting state {} out of range", q));
        }
        accepting[q] = true;
      }
      for (auto const& t : doc.at("transitions")) {
        if (!t.is_array() || t.size() != 3) {
          throw ParseError("a transition is [state, symbol, state]");
        }
        auto const q = t[0].get<std::size_t>(), r = t[2].get<std::size_t>();
        if (q >= n || r >= n) {
          throw ParseError(fmt::format("transition {} -> {} out of range", q, r));
        }
        Symbol const s = symbol_of(t[1]);
        if (seen[q * k + s]) {
          throw ParseError(fmt::format("state {} has two moves on symbol {}", q, t[1].dump()));
        }
        seen[q * k + s]  = true;
        table[q * k + s] = static_cast<State>(r);
      }
      return Fsa(std::move(symbols), n + 1, static_cast<State>(start), std::move(accepting), std::move(table));
    }

    SymbolsPtr symbols_from(Json const& names) {
      return std::make_shared<Symbols const>(names.get<std::vector<std::string>>());
    }

    Fsa load_fsa(Json const& j, SymbolsPtr const& symbols, std::filesystem::path const& base_dir) {
      if (j.is_string()) {
        return fsa_from_json(read_json_file(base_dir / j.get<std::string>()), symbols);
      }
      return fsa_from_json(j, symbols);
    }

    StackingStructure load_ref(Json const& j, std::filesystem::path const& base_dir) {
      if (j.is_string()) {
        return load_structure(j.get<std::string>(), base_dir);
      }
      return structure_from_json(j, base_dir);
    }

    CosetWord coset_word(Alphabet const& h, Json const& j) {
      CosetWord c;
      c.u = parse_word(h, j.value("u", Json("")));
      c.t = j.value("t", std::string());
      return c;
    }

    std::string dot_escape(std::string const& s) {
      std::string out;
      for (char c : s) {
        if (c == '"' || c == '\\') {
          out += '\\';
        }
        out += c;
      }
      return out;
    }

    template <typename Label>
    std::string dot(Fsa const& f, std::string const& name, Label&& label) {
      std::size_t n   = 0;
      auto const  num = live_numbering(f, n);
      std::string out = fmt::format("digraph \"{}\" {{\n  rankdir=LR;\n  init [shape=point];\n", dot_escape(name));
      for (State q = 0; q < f.num_states(); ++q) {
        if (num[q]) {
          out += fmt::format("  q{} [shape={}];\n", *num[q], f.is_accepting(q) ? "doublecircle" : "circle");
        }
      }
      out += fmt::format("  init -> q{};\n", *num[f.start()]);
      for (State q = 0; q < f.num_states(); ++q) {
        if (!num[q]) {
          continue;
        }
        // One arrow per target, labelled by all symbols leading there.
        std::vector<std::pair<State, std::vector<std::string>>> arrows;
        for (Symbol s = 0; s < f.num_symbols(); ++s) {
          auto const r = f.next(q, s);
          if (!num[r]) {
            continue;
          }
          auto it = std::find_if(arrows.begin(), arrows.end(), [&](auto const& a) { return a.first == r; });
          if (it == arrows.end()) {
            arrows.push_back({r, {}});
            it = arrows.end() - 1;
          }
          it->second.push_back(label(s));
        }
        for (auto const& [r, labels] : arrows) {
          out += fmt::format("  q{} -> q{} [label=\"{}\"];\n", *num[q], *num[r], dot_escape(fmt::format("{}", fmt::join(labels, ", "))));
        }
      }
      out += "}\n";
      return out;
    }

    std::string padded_name(PaddedAlphabet const& pa, Symbol s) {
      std::vector<std::string> parts;
      for (auto c : pa.decode(s)) {
        parts.push_back(c == pa.padding() ? "$" : pa.base()->name(c));
      }
      return fmt::format("({})", fmt::join(parts, ","));
    }
  }  // namespace

  Json fsa_to_json(Fsa const& f) {
    auto doc = acceptor_json(f, [&](Symbol s) { return Json(f.symbols()->name(s)); });
    doc["alphabet"] = f.symbols()->names();
    return doc;
  }

  Fsa fsa_from_json(Json const& doc, SymbolsPtr symbols) {
    return guarded("acceptor", [&] {
      auto own = symbols_from(doc.at("alphabet"));
      auto f   = acceptor_from(doc, own, [&](Json const& j) {
        auto s = own->find(j.get<std::string>());
        if (!s) {
          throw ParseError(fmt::format("unknown symbol '{}'", j.get<std::string>()));
        }
        return *s;
      });
      return symbols ? with_symbols(f, std::move(symbols)) : f;
    });
  }

  Json sync_to_json(SyncAcceptor const& s) {
    auto const& pa  = s.alphabet();
    auto        doc = acceptor_json(s.fsa(), [&](Symbol x) {
      Json tuple = Json::array();
      for (auto c : pa.decode(x)) {
        tuple.push_back(c == pa.padding() ? std::string("$") : pa.base()->name(c));
      }
      return tuple;
    });
    doc["alphabet"] = pa.base()->names();
    doc["arity"]    = pa.arity();
    return doc;
  }

  SyncAcceptor sync_from_json(Json const& doc) {
    return guarded("padded acceptor", [&] {
      auto const     base  = symbols_from(doc.at("alphabet"));
      auto const     arity = doc.at("arity").get<std::size_t>();
      PaddedAlphabet pa(base, arity);
      auto f = acceptor_from(doc, pa.symbols(), [&](Json const& j) {
        if (!j.is_array() || j.size() != arity) {
          throw ParseError(fmt::format("padded symbol {} must have {} components", j.dump(), arity));
        }
        std::vector<Symbol> tuple;
        for (auto const& c : j) {
          auto const name = c.get<std::string>();
          if (name == "$") {
            tuple.push_back(pa.padding());
          } else if (auto x = base->find(name)) {
            tuple.push_back(*x);
          } else {
            throw ParseError(fmt::format("unknown symbol '{}'", name));
          }
        }
        if (std::all_of(tuple.begin(), tuple.end(), [&](Symbol x) { return x == pa.padding(); })) {
          throw ParseError("the all-padding tuple is not a symbol");
        }
        return pa.encode(tuple);
      });
      return SyncAcceptor(pa, f);
    });
  }

  std::string fsa_to_dot(Fsa const& f, std::string const& name) {
    return dot(f, name, [&](Symbol s) { return f.symbols()->name(s); });
  }

  std::string sync_to_dot(SyncAcceptor const& s, std::string const& name) {
    return dot(s.fsa(), name, [&](Symbol x) { return padded_name(s.alphabet(), x); });
  }

  Json structure_to_json(StackingStructure const& s, std::string const& oracle_ref) {
    if (!s.has_rules()) {
      throw Unsupported(fmt::format("structure '{}' has no piecewise rules to write", s.name()));
    }
    auto const& alpha = s.alphabet();
    Json        inverses = Json::array(), rules = Json::array(), relators = Json::array();
    for (Letter x = 0; x < alpha.size(); ++x) {
      inverses.push_back(alpha.name(alpha.inverse(x)));
    }
    for (auto const& r : s.rules()) {
      rules.push_back({{"guard", fsa_to_json(minimize(r.guard))},
                       {"letter", alpha.name(r.letter)},
                       {"output", alpha.format(r.output)}});
    }
    for (auto const& w : s.relators()) {
      relators.push_back(alpha.format(w));
    }
    return Json{{"name", s.name()},
                {"alphabet", alpha.names()},
                {"inverses", inverses},
                {"normal_forms", fsa_to_json(minimize(s.normal_forms()))},
                {"rules", rules},
                {"bound", s.bound()},
                {"relators", relators},
                {"oracle", oracle_ref}};
  }

  StackingStructure structure_from_json(Json const& doc, std::filesystem::path const& base_dir) {
    return guarded("structure", [&] {
      auto const names = doc.at("alphabet").get<std::vector<std::string>>();
      auto const inv   = doc.at("inverses").get<std::vector<std::string>>();
      if (inv.size() != names.size()) {
        throw ParseError("alphabet and inverses differ in length");
      }
      Symbols const       lookup(names);
      std::vector<Letter> inverse;
      for (auto const& n : inv) {
        auto x = lookup.find(n);
        if (!x) {
          throw ParseError(fmt::format("inverse '{}' is not a letter", n));
        }
        inverse.push_back(*x);
      }
      Alphabet alpha(names, inverse);
      auto     nf = load_fsa(doc.at("normal_forms"), alpha.symbols(), base_dir);

      std::vector<PiecewiseRule> rules;
      for (auto const& r : doc.at("rules")) {
        rules.push_back({load_fsa(r.at("guard"), alpha.symbols(), base_dir),
                         alpha.letter(r.at("letter").get<std::string>()),
                         parse_word(alpha, r.at("output"))});
      }
      std::vector<Word> relators;
      auto const relators_doc = doc.value("relators", Json::array());
      for (auto const& w : relators_doc) {
        relators.push_back(parse_word(alpha, w));
      }
      StackingStructure s(doc.value("name", std::string("structure")), alpha, std::move(nf), std::move(rules),
                          doc.at("bound").get<std::size_t>(), std::move(relators));

      auto const oracle = doc.value("oracle", std::string("none"));
      if (oracle == "none") {
        return s;
      }
      if (!oracle.starts_with("builtin:")) {
        throw ParseError(fmt::format("oracle must be \"none\" or \"builtin:<name>\", not '{}'", oracle));
      }
      auto const b = builtin(oracle.substr(8));
      if (!(b.alphabet() == alpha)) {
        throw ParseError(fmt::format("oracle '{}' is over a different alphabet", oracle));
      }
      if (!b.oracle()) {
        throw ParseError(fmt::format("builtin '{}' has no oracle", oracle.substr(8)));
      }
      return s.with_oracle(*b.oracle());
    });
  }

  StackingStructure load_structure(std::string const& ref, std::filesystem::path const& base_dir) {
    if (ref.starts_with("builtin:")) {
      return builtin(ref.substr(8));
    }
    auto const path = base_dir / ref;
    return structure_from_json(read_json_file(path), path.parent_path());
  }

  Construction run_recipe(Json const& doc, std::filesystem::path const& base_dir) {
    return guarded("recipe", [&]() -> Construction {
      auto const kind = doc.at("kind").get<std::string>();
      if (kind == "graph_product") {
        auto const& g = doc.at("graph");
        GraphSpec   spec(g.at("n").get<std::size_t>(),
                       g.value("edges", Json::array()).get<std::vector<std::pair<std::size_t, std::size_t>>>());
        std::vector<StackingStructure> vertices;
        for (auto const& v : doc.at("vertices")) {
          vertices.push_back(load_ref(v, base_dir));
        }
        return graph_product(spec, vertices);
      }
      if (kind == "extension") {
        ExtensionData data{load_ref(doc.at("K"), base_dir), load_ref(doc.at("Q"), base_dir), {}, {}, {}};
        auto const&   ka = data.K.alphabet();
        auto const&   qa = data.Q.alphabet();
        data.hat         = doc.at("hat").get<std::map<std::string, std::string>>();
        for (auto const& [lift, row] : doc.at("conj").items()) {
          for (auto const& [a, w] : row.items()) {
            data.conj[{lift, a}] = parse_word(ka, w);
          }
        }
        auto const corr = doc.value("corr", Json::object());
        for (auto const& [lift, row] : corr.items()) {
          for (auto const& [z, w] : row.items()) {
            data.corr[{lift, qa.parse(z)}] = parse_word(ka, w);
          }
        }
        return extension(data);
      }
      if (kind == "finite_index") {
        IndexData   data{load_ref(doc.at("H"), base_dir), doc.at("S").get<std::vector<std::string>>(), {}, {}};
        auto const& ha = data.H.alphabet();
        auto const table1 = doc.value("table1", Json::object());
        for (auto const& [x, c] : table1.items()) {
          data.table1[x] = coset_word(ha, c);
        }
        for (auto const& [x, row] : doc.at("table2").items()) {
          for (auto const& [y, c] : row.items()) {
            data.table2[{x, y}] = coset_word(ha, c);
          }
        }
        return finite_index(data);
      }
      throw ParseError(fmt::format("unknown recipe kind '{}'", kind));
    });
  }

  Json read_json_file(std::filesystem::path const& path) {
    std::ifstream in(path);
    if (!in) {
      throw ParseError(fmt::format("cannot open '{}'", path.string()));
    }
    try {
      return Json::parse(in);
    } catch (nlohmann::json::exception const& e) {
      throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
    }
  }

}  // namespace autostack
