#include "autostack/fsa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>

namespace autostack {

  namespace {

    void require_same_symbols(Fsa const& x, Fsa const& y, char const* op) {
      if (!same_symbols(x.symbols(), y.symbols())) {
        throw AlphabetMismatch(std::string(op) + ": acceptors have different alphabets");
      }
    }

    // States from which an accepting state is reachable.
    std::vector<bool> coreachable(Fsa const& f) {
      std::size_t const              n = f.num_states();
      std::vector<std::vector<State>> reverse(n);
      for (State q = 0; q < n; ++q) {
        for (Symbol s = 0; s < f.num_symbols(); ++s) {
          reverse[f.next(q, s)].push_back(q);
        }
      }
      std::vector<bool>  seen(n, false);
      std::vector<State> todo;
      for (State q = 0; q < n; ++q) {
        if (f.is_accepting(q)) {
          seen[q] = true;
          todo.push_back(q);
        }
      }
      while (!todo.empty()) {
        State q = todo.back();
        todo.pop_back();
        for (State p : reverse[q]) {
          if (!seen[p]) {
            seen[p] = true;
            todo.push_back(p);
          }
        }
      }
      return seen;
    }

    std::vector<State> reachable_in_bfs_order(Fsa const& f) {
      std::vector<bool>  seen(f.num_states(), false);
      std::vector<State> order{f.start()};
      seen[f.start()] = true;
      for (std::size_t i = 0; i < order.size(); ++i) {
        for (Symbol s = 0; s < f.num_symbols(); ++s) {
          State t = f.next(order[i], s);
          if (!seen[t]) {
            seen[t] = true;
            order.push_back(t);
          }
        }
      }
      return order;
    }

    struct VectorHash {
      std::size_t operator()(std::vector<State> const& v) const noexcept {
        return WordHash{}(v);
      }
    };

    // Builds the reachable part of x * y with acceptance decided by `accept`.
    template <typename Accept>
    Fsa pair_product(Fsa const& x, Fsa const& y, Accept accept) {
      std::size_t const                    k = x.num_symbols();
      std::unordered_map<std::uint64_t, State> index;
      std::vector<std::pair<State, State>>   states;
      auto id = [&](State p, State q) {
        auto key       = (static_cast<std::uint64_t>(p) << 32) | q;
        auto [it, ins] = index.emplace(key, static_cast<State>(states.size()));
        if (ins) {
          states.emplace_back(p, q);
        }
        return it->second;
      };
      id(x.start(), y.start());
      std::vector<State> table;
      for (std::size_t i = 0; i < states.size(); ++i) {
        auto [p, q] = states[i];
        for (Symbol s = 0; s < k; ++s) {
          table.push_back(id(x.next(p, s), y.next(q, s)));
        }
      }
      std::vector<bool> acc(states.size());
      for (std::size_t i = 0; i < states.size(); ++i) {
        acc[i] = accept(x.is_accepting(states[i].first), y.is_accepting(states[i].second));
      }
      return minimize(Fsa(x.symbols(), states.size(), 0, std::move(acc), std::move(table)));
    }

    // Nondeterministic acceptor with epsilon moves; only used transiently.
    struct Nfa {
      std::size_t                                      num_symbols = 0;
      std::vector<std::vector<std::pair<Symbol, State>>> arcs;
      std::vector<std::vector<State>>                  eps;
      std::vector<bool>                                accepting;
      std::vector<State>                               starts;

      State add_state(bool acc) {
        arcs.emplace_back();
        eps.emplace_back();
        accepting.push_back(acc);
        return static_cast<State>(accepting.size() - 1);
      }
    };

    // Copies the live (co-reachable) part of f into nfa; returns the map from
    // f's states to nfa states (nullopt for states that cannot accept).
    std::vector<std::optional<State>> embed(Nfa& nfa, Fsa const& f) {
      auto                              live = coreachable(f);
      std::vector<std::optional<State>> map(f.num_states());
      for (State q = 0; q < f.num_states(); ++q) {
        if (live[q]) {
          map[q] = nfa.add_state(f.is_accepting(q));
        }
      }
      for (State q = 0; q < f.num_states(); ++q) {
        if (!map[q]) {
          continue;
        }
        for (Symbol s = 0; s < f.num_symbols(); ++s) {
          if (auto t = map[f.next(q, s)]) {
            nfa.arcs[*map[q]].emplace_back(s, *t);
          }
        }
      }
      return map;
    }

    void close(Nfa const& nfa, std::vector<State>& set) {
      std::vector<bool> in(nfa.accepting.size(), false);
      for (auto q : set) {
        in[q] = true;
      }
      for (std::size_t i = 0; i < set.size(); ++i) {
        for (auto t : nfa.eps[set[i]]) {
          if (!in[t]) {
            in[t] = true;
            set.push_back(t);
          }
        }
      }
      std::sort(set.begin(), set.end());
    }

    Fsa determinize(Nfa const& nfa, SymbolsPtr symbols) {
      std::size_t const k = nfa.num_symbols;
      std::unordered_map<std::vector<State>, State, VectorHash> index;
      std::vector<std::vector<State>>                            subsets;
      auto id = [&](std::vector<State> set) {
        close(nfa, set);
        auto [it, ins] = index.emplace(set, static_cast<State>(subsets.size()));
        if (ins) {
          subsets.push_back(std::move(set));
        }
        return it->second;
      };
      id(nfa.starts);
      std::vector<State>              table;
      std::vector<std::vector<State>> buckets(k);
      for (std::size_t i = 0; i < subsets.size(); ++i) {
        for (auto& b : buckets) {
          b.clear();
        }
        for (auto q : subsets[i]) {
          for (auto [s, t] : nfa.arcs[q]) {
            buckets[s].push_back(t);
          }
        }
        for (Symbol s = 0; s < k; ++s) {
          auto& b = buckets[s];
          std::sort(b.begin(), b.end());
          b.erase(std::unique(b.begin(), b.end()), b.end());
          table.push_back(id(b));
        }
      }
      std::vector<bool> acc(subsets.size(), false);
      for (std::size_t i = 0; i < subsets.size(); ++i) {
        acc[i] = std::any_of(subsets[i].begin(), subsets[i].end(), [&](State q) {
          return nfa.accepting[q];
        });
      }
      return minimize(Fsa(std::move(symbols), subsets.size(), 0, std::move(acc), std::move(table)));
    }

    // True iff some word of length exactly r leads from q to acceptance,
    // tabulated for r = 0, ..., max_len.
    std::vector<std::vector<bool>> acceptance_horizon(Fsa const& f, std::size_t max_len) {
      std::vector<std::vector<bool>> can(max_len + 1,
                                         std::vector<bool>(f.num_states(), false));
      for (State q = 0; q < f.num_states(); ++q) {
        can[0][q] = f.is_accepting(q);
      }
      for (std::size_t r = 1; r <= max_len; ++r) {
        for (State q = 0; q < f.num_states(); ++q) {
          for (Symbol s = 0; s < f.num_symbols() && !can[r][q]; ++s) {
            can[r][q] = can[r - 1][f.next(q, s)];
          }
        }
      }
      return can;
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Fsa
  ////////////////////////////////////////////////////////////////////////

  Fsa::Fsa(SymbolsPtr         symbols,
           std::size_t        num_states,
           State              start,
           std::vector<bool>  accepting,
           std::vector<State> table)
      : symbols_(std::move(symbols)),
        start_(start),
        accepting_(std::move(accepting)),
        table_(std::move(table)) {
    if (!symbols_) {
      throw ParseError("fsa: missing symbol table");
    }
    if (num_states == 0 || start >= num_states) {
      throw ParseError("fsa: start state out of range");
    }
    if (accepting_.size() != num_states || table_.size() != num_states * symbols_->size()) {
      throw ParseError("fsa: transition table is not total");
    }
    for (auto t : table_) {
      if (t >= num_states) {
        throw ParseError("fsa: transition target out of range");
      }
    }
  }

  bool Fsa::is_dead(State q) const {
    if (accepting_[q]) {
      return false;
    }
    for (Symbol s = 0; s < num_symbols(); ++s) {
      if (next(q, s) != q) {
        return false;
      }
    }
    return true;
  }

  Fsa Fsa::empty_language(SymbolsPtr symbols) {
    auto k = symbols->size();
    return Fsa(std::move(symbols), 1, 0, {false}, std::vector<State>(k, 0));
  }

  Fsa Fsa::epsilon(SymbolsPtr symbols) {
    return word(std::move(symbols), {});
  }

  Fsa Fsa::universal(SymbolsPtr symbols) {
    auto k = symbols->size();
    return Fsa(std::move(symbols), 1, 0, {true}, std::vector<State>(k, 0));
  }

  Fsa Fsa::word(SymbolsPtr symbols, std::span<Symbol const> w) {
    return finite(std::move(symbols), {Word(w.begin(), w.end())});
  }

  Fsa Fsa::finite(SymbolsPtr symbols, std::vector<Word> const& words) {
    // Trie with an extra dead state at index 0.
    std::size_t const         k = symbols->size();
    std::vector<State>        table(2 * k, 0);
    std::vector<bool>         acc{false, false};
    for (auto const& w : words) {
      State q = 1;
      for (auto s : w) {
        if (s >= k) {
          throw ParseError("fsa: symbol out of range");
        }
        auto const at = static_cast<std::size_t>(q) * k + s;
        if (table[at] == 0) {
          table[at] = static_cast<State>(acc.size());
          acc.push_back(false);
          table.resize(table.size() + k, 0);
        }
        q = table[at];
      }
      acc[q] = true;
    }
    auto n = acc.size();
    return minimize(Fsa(std::move(symbols), n, 1, std::move(acc), std::move(table)));
  }

  Fsa Fsa::letters(SymbolsPtr symbols, std::span<Symbol const> letters) {
    std::vector<Word> words;
    for (auto s : letters) {
      words.push_back({s});
    }
    return finite(std::move(symbols), words);
  }

  ////////////////////////////////////////////////////////////////////////
  // Closure operations
  ////////////////////////////////////////////////////////////////////////

  Fsa unite(Fsa const& x, Fsa const& y) {
    require_same_symbols(x, y, "unite");
    return pair_product(x, y, [](bool a, bool b) { return a || b; });
  }

  Fsa intersect(Fsa const& x, Fsa const& y) {
    require_same_symbols(x, y, "intersect");
    return pair_product(x, y, [](bool a, bool b) { return a && b; });
  }

  Fsa difference(Fsa const& x, Fsa const& y) {
    require_same_symbols(x, y, "difference");
    return pair_product(x, y, [](bool a, bool b) { return a && !b; });
  }

  Fsa complement(Fsa const& x) {
    std::vector<bool>  acc(x.num_states());
    std::vector<State> table;
    table.reserve(x.num_states() * x.num_symbols());
    for (State q = 0; q < x.num_states(); ++q) {
      acc[q] = !x.is_accepting(q);
      for (Symbol s = 0; s < x.num_symbols(); ++s) {
        table.push_back(x.next(q, s));
      }
    }
    return minimize(Fsa(x.symbols(), x.num_states(), x.start(), std::move(acc), std::move(table)));
  }

  Fsa concat(Fsa const& x, Fsa const& y) {
    require_same_symbols(x, y, "concat");
    Nfa nfa;
    nfa.num_symbols = x.num_symbols();
    auto mx         = embed(nfa, x);
    auto my         = embed(nfa, y);
    if (!mx[x.start()] || !my[y.start()]) {
      return Fsa::empty_language(x.symbols());
    }
    for (State q = 0; q < x.num_states(); ++q) {
      if (mx[q] && x.is_accepting(q)) {
        nfa.accepting[*mx[q]] = false;
        nfa.eps[*mx[q]].push_back(*my[y.start()]);
      }
    }
    nfa.starts = {*mx[x.start()]};
    return determinize(nfa, x.symbols());
  }

  Fsa star(Fsa const& x) {
    Nfa nfa;
    nfa.num_symbols = x.num_symbols();
    State init      = nfa.add_state(true);
    auto  mx        = embed(nfa, x);
    nfa.starts      = {init};
    if (mx[x.start()]) {
      nfa.eps[init].push_back(*mx[x.start()]);
      for (State q = 0; q < x.num_states(); ++q) {
        if (mx[q] && x.is_accepting(q)) {
          nfa.eps[*mx[q]].push_back(*mx[x.start()]);
        }
      }
    }
    return determinize(nfa, x.symbols());
  }

  Fsa hom_preimage(Fsa const& f, SymbolsPtr domain, std::vector<Word> const& images) {
    if (images.size() != domain->size()) {
      throw ParseError("hom_preimage: the map must be defined on every letter");
    }
    std::vector<State> table;
    table.reserve(f.num_states() * domain->size());
    for (State q = 0; q < f.num_states(); ++q) {
      for (auto const& img : images) {
        for (auto s : img) {
          if (s >= f.num_symbols()) {
            throw ParseError("hom_preimage: image symbol out of range");
          }
        }
        table.push_back(f.run(q, img));
      }
    }
    std::vector<bool> acc(f.num_states());
    for (State q = 0; q < f.num_states(); ++q) {
      acc[q] = f.is_accepting(q);
    }
    return minimize(Fsa(std::move(domain), f.num_states(), f.start(), std::move(acc), std::move(table)));
  }

  Fsa quotient(Fsa const& f, std::span<Symbol const> w) {
    std::vector<bool>  acc(f.num_states());
    std::vector<State> table;
    table.reserve(f.num_states() * f.num_symbols());
    for (State q = 0; q < f.num_states(); ++q) {
      acc[q] = f.is_accepting(f.run(q, w));
      for (Symbol s = 0; s < f.num_symbols(); ++s) {
        table.push_back(f.next(q, s));
      }
    }
    return minimize(Fsa(f.symbols(), f.num_states(), f.start(), std::move(acc), std::move(table)));
  }

  Fsa rename_symbols(Fsa const&                                f,
                     SymbolsPtr                                target,
                     std::vector<std::optional<Symbol>> const& old_to_new) {
    if (old_to_new.size() != f.num_symbols()) {
      throw ParseError("rename_symbols: map must cover every symbol");
    }
    std::size_t const                 k = target->size();
    std::vector<std::optional<Symbol>> new_to_old(k);
    for (Symbol s = 0; s < old_to_new.size(); ++s) {
      if (!old_to_new[s]) {
        continue;
      }
      auto t = *old_to_new[s];
      if (t >= k || new_to_old[t]) {
        throw ParseError("rename_symbols: map must be injective into the target");
      }
      new_to_old[t] = s;
    }
    State const        dead = static_cast<State>(f.num_states());
    std::vector<State> table;
    table.reserve((f.num_states() + 1) * k);
    for (State q = 0; q <= dead; ++q) {
      for (Symbol t = 0; t < k; ++t) {
        table.push_back(q == dead || !new_to_old[t] ? dead : f.next(q, *new_to_old[t]));
      }
    }
    std::vector<bool> acc(f.num_states() + 1, false);
    for (State q = 0; q < dead; ++q) {
      acc[q] = f.is_accepting(q);
    }
    return minimize(Fsa(std::move(target), f.num_states() + 1, f.start(), std::move(acc), std::move(table)));
  }

  Fsa with_symbols(Fsa const& f, SymbolsPtr target) {
    std::vector<std::optional<Symbol>> map(f.num_symbols());
    for (Symbol s = 0; s < f.num_symbols(); ++s) {
      auto t = target->find(f.symbols()->name(s));
      if (!t) {
        throw AlphabetMismatch("with_symbols: '" + f.symbols()->name(s)
                               + "' is missing from the target alphabet");
      }
      map[s] = t;
    }
    return rename_symbols(f, std::move(target), map);
  }

  Fsa minimize(Fsa const& f) {
    std::size_t const k     = f.num_symbols();
    auto const        order = reachable_in_bfs_order(f);
    std::size_t const n     = order.size();
    std::vector<State> pos(f.num_states(), 0);
    for (State i = 0; i < n; ++i) {
      pos[order[i]] = i;
    }
    // Moore partition refinement over the reachable states.
    std::vector<State> cls(n);
    for (State i = 0; i < n; ++i) {
      cls[i] = f.is_accepting(order[i]) ? 1 : 0;
    }
    std::size_t num_classes = 0;
    std::vector<State> sig(k + 1);
    while (true) {
      std::unordered_map<std::vector<State>, State, VectorHash> index;
      std::vector<State>                                          next_cls(n);
      for (State i = 0; i < n; ++i) {
        sig[0] = cls[i];
        for (Symbol s = 0; s < k; ++s) {
          sig[s + 1] = cls[pos[f.next(order[i], s)]];
        }
        next_cls[i] = index.emplace(sig, static_cast<State>(index.size())).first->second;
      }
      cls.swap(next_cls);
      if (index.size() == num_classes) {
        break;
      }
      num_classes = index.size();
    }
    // Renumber classes in breadth-first order from the start state.
    std::vector<State> rep(num_classes, 0);
    for (State i = n; i-- > 0;) {
      rep[cls[i]] = i;
    }
    std::vector<std::optional<State>> number(num_classes);
    std::vector<State>                queue{cls[0]};
    number[cls[0]] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      State r = rep[queue[i]];
      for (Symbol s = 0; s < k; ++s) {
        State c = cls[pos[f.next(order[r], s)]];
        if (!number[c]) {
          number[c] = static_cast<State>(queue.size());
          queue.push_back(c);
        }
      }
    }
    std::vector<State> table(num_classes * k);
    std::vector<bool>  acc(num_classes);
    for (State c = 0; c < num_classes; ++c) {
      State r         = rep[queue[c]];
      acc[c]          = f.is_accepting(order[r]);
      for (Symbol s = 0; s < k; ++s) {
        table[c * k + s] = *number[cls[pos[f.next(order[r], s)]]];
      }
    }
    return Fsa(f.symbols(), num_classes, 0, std::move(acc), std::move(table));
  }

  std::optional<Word> shortest_word(Fsa const& f) {
    std::vector<std::optional<std::pair<State, Symbol>>> parent(f.num_states());
    std::vector<bool>                                    seen(f.num_states(), false);
    std::deque<State>                                    queue{f.start()};
    seen[f.start()] = true;
    while (!queue.empty()) {
      State q = queue.front();
      queue.pop_front();
      if (f.is_accepting(q)) {
        Word w;
        while (parent[q]) {
          w.push_back(parent[q]->second);
          q = parent[q]->first;
        }
        std::reverse(w.begin(), w.end());
        return w;
      }
      for (Symbol s = 0; s < f.num_symbols(); ++s) {
        State t = f.next(q, s);
        if (!seen[t]) {
          seen[t]   = true;
          parent[t] = std::make_pair(q, s);
          queue.push_back(t);
        }
      }
    }
    return std::nullopt;
  }

  bool is_empty(Fsa const& f) {
    return !shortest_word(f).has_value();
  }

  bool is_subset(Fsa const& x, Fsa const& y) {
    return is_empty(difference(x, y));
  }

  bool equivalent(Fsa const& x, Fsa const& y) {
    require_same_symbols(x, y, "equivalent");
    // Breadth-first search of the pair graph for a state pair that disagrees.
    std::unordered_map<std::uint64_t, bool> seen;
    std::vector<std::pair<State, State>>    todo{{x.start(), y.start()}};
    seen[(static_cast<std::uint64_t>(x.start()) << 32) | y.start()] = true;
    while (!todo.empty()) {
      auto [p, q] = todo.back();
      todo.pop_back();
      if (x.is_accepting(p) != y.is_accepting(q)) {
        return false;
      }
      for (Symbol s = 0; s < x.num_symbols(); ++s) {
        State p2  = x.next(p, s);
        State q2  = y.next(q, s);
        auto  key = (static_cast<std::uint64_t>(p2) << 32) | q2;
        if (seen.emplace(key, true).second) {
          todo.emplace_back(p2, q2);
        }
      }
    }
    return true;
  }

  bool is_prefix_closed(Fsa const& f) {
    auto const        order = reachable_in_bfs_order(f);
    std::vector<bool> below(f.num_states(), false);
    std::vector<State> todo;
    for (auto q : order) {
      if (!f.is_accepting(q)) {
        below[q] = true;
        todo.push_back(q);
      }
    }
    while (!todo.empty()) {
      State q = todo.back();
      todo.pop_back();
      if (f.is_accepting(q)) {
        return false;
      }
      for (Symbol s = 0; s < f.num_symbols(); ++s) {
        State t = f.next(q, s);
        if (!below[t]) {
          below[t] = true;
          todo.push_back(t);
        }
      }
    }
    return true;
  }

  std::vector<Word> enumerate(Fsa const& f, std::size_t max_len) {
    auto const        can = acceptance_horizon(f, max_len);
    std::vector<Word> out;
    Word              w;
    std::vector<State> path;
    for (std::size_t len = 0; len <= max_len; ++len) {
      if (!can[len][f.start()]) {
        continue;
      }
      // Depth-first in symbol order, pruned by the horizon table.
      w.clear();
      path.assign(1, f.start());
      std::vector<Symbol> next_symbol{0};
      while (!path.empty()) {
        std::size_t depth = path.size() - 1;
        if (depth == len) {
          out.push_back(w);
          path.pop_back();
          next_symbol.pop_back();
          if (!w.empty()) {
            w.pop_back();
          }
          continue;
        }
        Symbol& s = next_symbol.back();
        while (s < f.num_symbols() && !can[len - depth - 1][f.next(path.back(), s)]) {
          ++s;
        }
        if (s == f.num_symbols()) {
          path.pop_back();
          next_symbol.pop_back();
          if (!w.empty()) {
            w.pop_back();
          }
          continue;
        }
        w.push_back(s);
        path.push_back(f.next(path.back(), s));
        ++s;
        next_symbol.push_back(0);
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Padded alphabets
  ////////////////////////////////////////////////////////////////////////

  PaddedAlphabet::PaddedAlphabet(SymbolsPtr base, std::size_t arity)
      : base_(std::move(base)), arity_(arity) {
    if (arity_ == 0) {
      throw ParseError("padded alphabet: arity must be at least 1");
    }
    std::size_t total = 1;
    for (std::size_t i = 0; i < arity_; ++i) {
      total *= base_->size() + 1;
    }
    std::vector<std::string> names;
    names.reserve(total - 1);
    for (Symbol s = 0; s + 1 < total; ++s) {
      auto        tuple = decode(s);
      std::string n     = "(";
      for (std::size_t i = 0; i < arity_; ++i) {
        n += (i ? "," : "");
        n += tuple[i] == padding() ? std::string("$") : base_->name(tuple[i]);
      }
      names.push_back(n + ")");
    }
    symbols_ = std::make_shared<Symbols const>(std::move(names));
  }

  Symbol PaddedAlphabet::encode(std::span<Symbol const> tuple) const {
    if (tuple.size() != arity_) {
      throw ParseError("padded alphabet: tuple has the wrong arity");
    }
    std::size_t const radix = base_->size() + 1;
    std::size_t       value = 0;
    bool              all_padding = true;
    for (auto c : tuple) {
      if (c > padding()) {
        throw ParseError("padded alphabet: component out of range");
      }
      all_padding = all_padding && c == padding();
      value       = value * radix + c;
    }
    if (all_padding) {
      throw ParseError("padded alphabet: the all-padding tuple is not a symbol");
    }
    return static_cast<Symbol>(value);
  }

  std::vector<Symbol> PaddedAlphabet::decode(Symbol s) const {
    std::size_t const   radix = base_->size() + 1;
    std::vector<Symbol> tuple(arity_);
    std::size_t         value = s;
    for (std::size_t i = arity_; i-- > 0;) {
      tuple[i] = static_cast<Symbol>(value % radix);
      value /= radix;
    }
    return tuple;
  }

  Word pad(PaddedAlphabet const& alphabet, std::vector<Word> const& tuple) {
    if (tuple.size() != alphabet.arity()) {
      throw ParseError("pad: tuple has the wrong arity");
    }
    std::size_t longest = 0;
    for (auto const& u : tuple) {
      longest = std::max(longest, u.size());
    }
    Word                out;
    std::vector<Symbol> column(tuple.size());
    for (std::size_t m = 0; m < longest; ++m) {
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        column[i] = m < tuple[i].size() ? tuple[i][m] : alphabet.padding();
      }
      out.push_back(alphabet.encode(column));
    }
    return out;
  }

  std::vector<Word> unpad(PaddedAlphabet const& alphabet, Word const& padded) {
    std::vector<Word> tuple(alphabet.arity());
    std::vector<bool> done(alphabet.arity(), false);
    for (auto s : padded) {
      auto column = alphabet.decode(s);
      for (std::size_t i = 0; i < column.size(); ++i) {
        if (column[i] == alphabet.padding()) {
          done[i] = true;
        } else if (done[i]) {
          throw ParseError("unpad: padding is not a suffix");
        } else {
          tuple[i].push_back(column[i]);
        }
      }
    }
    return tuple;
  }

  Fsa well_formed(PaddedAlphabet const& alphabet) {
    std::size_t const n     = alphabet.arity();
    std::size_t const masks = std::size_t{1} << n;
    std::size_t const k     = alphabet.symbols()->size();
    State const       dead  = static_cast<State>(masks);
    std::vector<State> table((masks + 1) * k, dead);
    for (std::size_t mask = 0; mask < masks; ++mask) {
      for (Symbol s = 0; s < k; ++s) {
        auto        column = alphabet.decode(s);
        std::size_t next   = mask;
        bool        ok     = true;
        for (std::size_t i = 0; i < n; ++i) {
          bool padded = column[i] == alphabet.padding();
          if ((mask >> i & 1U) && !padded) {
            ok = false;
          }
          if (padded) {
            next |= std::size_t{1} << i;
          }
        }
        table[mask * k + s] = ok ? static_cast<State>(next) : dead;
      }
    }
    std::vector<bool> acc(masks + 1, true);
    acc[dead] = false;
    return minimize(Fsa(alphabet.symbols(), masks + 1, 0, std::move(acc), std::move(table)));
  }

  SyncAcceptor::SyncAcceptor(PaddedAlphabet alphabet, Fsa const& f)
      : alphabet_(std::move(alphabet)),
        fsa_(intersect(f, well_formed(alphabet_))) {}

  SyncAcceptor product(std::vector<Fsa> const& factors) {
    if (factors.empty()) {
      throw ParseError("product: at least one factor is required");
    }
    for (auto const& f : factors) {
      require_same_symbols(factors.front(), f, "product");
    }
    PaddedAlphabet    alphabet(factors.front().symbols(), factors.size());
    std::size_t const n = factors.size();
    std::size_t const k = alphabet.symbols()->size();
    // A coordinate is either a state of its factor or finished (value =
    // num_states); a finished coordinate read its $ from an accepting state.
    std::unordered_map<std::vector<State>, State, VectorHash> index;
    std::vector<std::vector<State>>                            states;
    State const                                                dead = 0;
    states.push_back({});  // dead
    index.emplace(std::vector<State>{}, dead);
    auto id = [&](std::vector<State> const& t) {
      auto [it, ins] = index.emplace(t, static_cast<State>(states.size()));
      if (ins) {
        states.push_back(t);
      }
      return it->second;
    };
    std::vector<State> start(n);
    for (std::size_t i = 0; i < n; ++i) {
      start[i] = factors[i].start();
    }
    State const        initial = id(start);
    std::vector<State> table;
    std::vector<State> next(n);
    for (std::size_t q = 0; q < states.size(); ++q) {
      for (Symbol s = 0; s < k; ++s) {
        if (q == dead) {
          table.push_back(dead);
          continue;
        }
        auto column = alphabet.decode(s);
        bool ok     = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
          State const done = static_cast<State>(factors[i].num_states());
          State const cur  = states[q][i];
          if (cur == done) {
            ok      = column[i] == alphabet.padding();
            next[i] = done;
          } else if (column[i] == alphabet.padding()) {
            ok      = factors[i].is_accepting(cur);
            next[i] = done;
          } else {
            next[i] = factors[i].next(cur, column[i]);
          }
        }
        table.push_back(ok ? id(next) : dead);
      }
    }
    std::vector<bool> acc(states.size(), false);
    for (std::size_t q = 1; q < states.size(); ++q) {
      bool all = true;
      for (std::size_t i = 0; i < n && all; ++i) {
        State cur = states[q][i];
        all = cur == factors[i].num_states() || factors[i].is_accepting(cur);
      }
      acc[q] = all;
    }
    auto f = minimize(Fsa(alphabet.symbols(), states.size(), initial, std::move(acc), std::move(table)));
    return SyncAcceptor(std::move(alphabet), std::move(f), SyncAcceptor::Trusted{});
  }

  SyncAcceptor unite(SyncAcceptor const& x, SyncAcceptor const& y) {
    if (!(x.alphabet() == y.alphabet())) {
      throw AlphabetMismatch("unite: padded alphabets differ");
    }
    return SyncAcceptor(x.alphabet(), unite(x.fsa(), y.fsa()), SyncAcceptor::Trusted{});
  }

  Fsa proj1(SyncAcceptor const& sync) {
    auto const& alphabet = sync.alphabet();
    auto const& f        = sync.fsa();
    Nfa         nfa;
    nfa.num_symbols = alphabet.base()->size();
    auto map        = embed(nfa, f);
    if (!map[f.start()]) {
      return Fsa::empty_language(alphabet.base());
    }
    // Re-label arcs by their first coordinate; padding becomes an epsilon move.
    for (auto& arcs : nfa.arcs) {
      std::vector<std::pair<Symbol, State>> kept;
      for (auto [s, t] : arcs) {
        Symbol first = alphabet.decode(s)[0];
        if (first == alphabet.padding()) {
          auto q = static_cast<State>(&arcs - nfa.arcs.data());
          nfa.eps[q].push_back(t);
        } else {
          kept.emplace_back(first, t);
        }
      }
      arcs = std::move(kept);
    }
    nfa.starts = {*map[f.start()]};
    return determinize(nfa, alphabet.base());
  }

}  // namespace autostack
