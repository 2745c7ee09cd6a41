#include "autostack/stacking.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include <fmt/format.h>

namespace autostack {

  namespace {
    // Past this many product states a letter falls back to running every
    // guard separately.
    constexpr std::size_t kDispatchStateCap = 1u << 18;

    std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
      std::uint64_t result = 1;
      for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && result > cap / base) {
          return cap;
        }
        result *= base;
      }
      return std::min(result, cap);
    }
  }  // namespace

  StackingStructure::StackingStructure(std::string                name,
                                       Alphabet                   alphabet,
                                       Fsa                        normal_forms,
                                       std::vector<PiecewiseRule> rules,
                                       std::size_t                bound,
                                       std::vector<Word>          relators) {
    Data d{std::move(name), std::move(alphabet), std::move(normal_forms), std::move(rules),
           true,            {},                  bound,                   std::move(relators),
           {},              {}};
    d_ = finish(std::move(d));
  }

  StackingStructure::StackingStructure(std::string       name,
                                       Alphabet          alphabet,
                                       Fsa               normal_forms,
                                       StackFn           stack_fn,
                                       std::size_t       bound,
                                       std::vector<Word> relators) {
    if (!stack_fn) {
      throw Error("opaque stacking structure needs a callable");
    }
    Data d{std::move(name), std::move(alphabet),  std::move(normal_forms), {}, false,
           std::move(stack_fn), bound,            std::move(relators),     {}, {}};
    d_ = finish(std::move(d));
  }

  std::shared_ptr<StackingStructure::Data const> StackingStructure::finish(Data d) {
    if (!same_symbols(d.normal_forms.symbols(), d.alphabet.symbols())) {
      if (!(*d.normal_forms.symbols() == *d.alphabet.symbols())) {
        throw AlphabetMismatch("normal-form acceptor is over a different alphabet");
      }
      d.normal_forms = with_symbols(d.normal_forms, d.alphabet.symbols());
    }
    if (!d.normal_forms.accepts(Word{})) {
      throw ParseError("normal-form language must contain the empty word");
    }
    auto const k = d.alphabet.size();
    for (auto& r : d.rules) {
      if (r.letter >= k) {
        throw ParseError(fmt::format("rule letter {} out of range", r.letter));
      }
      for (auto x : r.output) {
        if (x >= k) {
          throw ParseError(fmt::format("rule output letter {} out of range", x));
        }
      }
      if (!same_symbols(r.guard.symbols(), d.alphabet.symbols())) {
        if (!(*r.guard.symbols() == *d.alphabet.symbols())) {
          throw AlphabetMismatch("rule guard is over a different alphabet");
        }
        r.guard = with_symbols(r.guard, d.alphabet.symbols());
      }
    }
    for (auto const& rel : d.relators) {
      for (auto x : rel) {
        if (x >= k) {
          throw ParseError(fmt::format("relator letter {} out of range", x));
        }
      }
    }

    d.dispatch.assign(k, Dispatch{});
    if (d.has_rules) {
      for (Letter a = 0; a < k; ++a) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < d.rules.size(); ++i) {
          if (d.rules[i].letter == a) {
            idx.push_back(i);
          }
        }
        auto& disp = d.dispatch[a];
        if (idx.empty()) {
          disp.num_states = 1;
          disp.table.assign(k, 0);
          disp.rule.assign(1, -1);
          continue;
        }
        std::map<std::vector<State>, State> seen;
        std::vector<std::vector<State>>     tuples;
        std::vector<State>                  start;
        for (auto i : idx) {
          start.push_back(d.rules[i].guard.start());
        }
        seen.emplace(start, 0);
        tuples.push_back(start);
        bool overflow = false;
        for (std::size_t q = 0; q < tuples.size() && !overflow; ++q) {
          for (Letter x = 0; x < k; ++x) {
            std::vector<State> t(idx.size());
            for (std::size_t j = 0; j < idx.size(); ++j) {
              t[j] = d.rules[idx[j]].guard.next(tuples[q][j], x);
            }
            auto [it, inserted] = seen.emplace(t, static_cast<State>(tuples.size()));
            if (inserted) {
              tuples.push_back(std::move(t));
              if (tuples.size() > kDispatchStateCap) {
                overflow = true;
                break;
              }
            }
            disp.table.push_back(it->second);
          }
        }
        if (overflow) {
          disp = Dispatch{};
          continue;
        }
        disp.num_states = tuples.size();
        disp.rule.assign(tuples.size(), -1);
        for (std::size_t q = 0; q < tuples.size(); ++q) {
          for (std::size_t j = 0; j < idx.size(); ++j) {
            if (d.rules[idx[j]].guard.is_accepting(tuples[q][j])) {
              disp.rule[q] = disp.rule[q] == -1 ? static_cast<std::int64_t>(idx[j]) : -2;
            }
          }
        }
      }
    }
    return std::make_shared<Data const>(std::move(d));
  }

  StackingStructure StackingStructure::with_oracle(Oracle oracle) const {
    auto d    = std::make_shared<Data>(*d_);
    d->oracle = std::move(oracle);
    return StackingStructure(std::shared_ptr<Data const>(std::move(d)));
  }

  StackingStructure StackingStructure::with_bound(std::size_t bound) const {
    auto d   = std::make_shared<Data>(*d_);
    d->bound = bound;
    return StackingStructure(std::shared_ptr<Data const>(std::move(d)));
  }

  StackingStructure StackingStructure::with_rules(std::vector<PiecewiseRule> rules) const {
    Data d      = *d_;
    d.rules     = std::move(rules);
    d.has_rules = true;
    return StackingStructure(finish(std::move(d)));
  }

  StackingStructure StackingStructure::with_stack_fn(StackFn fn) const {
    auto d      = std::make_shared<Data>(*d_);
    d->stack_fn = std::move(fn);
    return StackingStructure(std::shared_ptr<Data const>(std::move(d)));
  }

  StackingStructure StackingStructure::with_name(std::string name) const {
    auto d  = std::make_shared<Data>(*d_);
    d->name = std::move(name);
    return StackingStructure(std::shared_ptr<Data const>(std::move(d)));
  }

  void StackingStructure::require_normal_form(Word const& y) const {
    for (auto x : y) {
      if (x >= d_->alphabet.size()) {
        throw NotNormalForm(fmt::format("letter {} out of range", x));
      }
    }
    if (!is_normal_form(y)) {
      throw NotNormalForm(fmt::format("'{}' is not a normal form", d_->alphabet.format(y)));
    }
  }

  bool StackingStructure::is_tree_edge(Word const& y, Letter a) const {
    require_normal_form(y);
    if (a >= d_->alphabet.size()) {
      throw ParseError(fmt::format("letter {} out of range", a));
    }
    auto const& n = d_->normal_forms;
    if (n.is_accepting(n.next(n.run(n.start(), y), a))) {
      return true;
    }
    return !y.empty() && y.back() == d_->alphabet.inverse(a);
  }

  std::vector<std::size_t> StackingStructure::matching_rules(Word const& y, Letter a) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < d_->rules.size(); ++i) {
      if (d_->rules[i].letter == a && d_->rules[i].guard.accepts(y)) {
        out.push_back(i);
      }
    }
    return out;
  }

  Word StackingStructure::lookup(Word const& y, Letter a) const {
    if (!d_->has_rules) {
      return d_->stack_fn(y, a);
    }
    auto const&  disp = d_->dispatch[a];
    std::int64_t rule = -1;
    if (disp.num_states == 0) {
      auto m = matching_rules(y, a);
      rule   = m.empty() ? -1 : (m.size() == 1 ? static_cast<std::int64_t>(m[0]) : -2);
    } else {
      auto const k = d_->alphabet.size();
      State      q = 0;
      for (auto x : y) {
        q = disp.table[static_cast<std::size_t>(q) * k + x];
      }
      rule = disp.rule[q];
    }
    if (rule < 0) {
      throw CoverageViolation(fmt::format("{} rule for ({}, {})", rule == -1 ? "no" : "more than one",
                                          d_->alphabet.format(y), d_->alphabet.name(a)));
    }
    return d_->rules[static_cast<std::size_t>(rule)].output;
  }

  Word StackingStructure::stack(Word const& y, Letter a) const {
    require_normal_form(y);
    if (a >= d_->alphabet.size()) {
      throw ParseError(fmt::format("letter {} out of range", a));
    }
    return lookup(y, a);
  }

  std::uint64_t StackingStructure::default_budget(std::size_t r) const {
    constexpr std::uint64_t cap = 1'000'000'000'000ULL;
    auto const              p   = saturating_pow(std::max<std::size_t>(d_->bound, 2), r + 2, cap / 10);
    return p * 10;
  }

  Word StackingStructure::normalize_step(Word const& y, Letter a, NormalizeOptions const& opts) const {
    require_normal_form(y);
    if (a >= d_->alphabet.size()) {
      throw ParseError(fmt::format("letter {} out of range", a));
    }
    auto const  budget = opts.budget.value_or(default_budget(y.size() + 1));
    auto const& n      = d_->normal_forms;
    auto const& alpha  = d_->alphabet;

    Word               cur = y;
    std::vector<State> states{n.start()};
    states.reserve(y.size() + 1);
    for (auto x : y) {
      states.push_back(n.next(states.back(), x));
    }

    struct Frame {
      Word        word;
      std::size_t pos = 0;
    };
    std::vector<Frame> frames;
    frames.push_back({Word{a}, 0});
    std::uint64_t steps = 0;
    while (!frames.empty()) {
      if (frames.back().pos == frames.back().word.size()) {
        frames.pop_back();
        continue;
      }
      Letter const x = frames.back().word[frames.back().pos++];
      if (++steps > budget) {
        throw BudgetExceeded(fmt::format("normalizing '{}' then '{}' ran past {} steps", alpha.format(y),
                                         alpha.name(a), budget));
      }
      State const t = n.next(states.back(), x);
      if (n.is_accepting(t)) {
        cur.push_back(x);
        states.push_back(t);
      } else if (!cur.empty() && cur.back() == alpha.inverse(x)) {
        cur.pop_back();
        states.pop_back();
      } else {
        frames.push_back({lookup(cur, x), 0});
      }
    }
    return cur;
  }

  Word StackingStructure::normalize_from(Word const& y, Word const& w, NormalizeOptions const& opts) const {
    Word cur = y;
    for (auto x : w) {
      cur = normalize_step(cur, x, opts);
    }
    return cur;
  }

  Word StackingStructure::normalize(Word const& w, NormalizeOptions const& opts) const {
    return normalize_from(Word{}, w, opts);
  }

  std::vector<Word> ball(StackingStructure const& s, std::size_t r, Exec exec) {
    auto const                                k = s.alphabet().size();
    std::unordered_set<Word, WordHash>        seen{Word{}};
    std::vector<Word>                         out{Word{}};
    std::vector<Word>                         frontier{Word{}};
    for (std::size_t layer = 1; layer <= r && !frontier.empty(); ++layer) {
      std::vector<Word>        next(frontier.size() * k);
      std::vector<std::exception_ptr> errors(next.size());
      for_each_index(next.size(), exec, [&](std::size_t i) {
        try {
          next[i] = s.normalize_step(frontier[i / k], static_cast<Letter>(i % k));
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
      for (auto const& e : errors) {
        if (e) {
          std::rethrow_exception(e);
        }
      }
      frontier.clear();
      for (auto& w : next) {
        if (seen.insert(w).second) {
          frontier.push_back(w);
        }
      }
      out.insert(out.end(), frontier.begin(), frontier.end());
    }
    std::sort(out.begin(), out.end(), shortlex_less);
    return out;
  }

  SyncAcceptor graph_automaton(StackingStructure const& s) {
    if (!s.has_rules()) {
      throw Unsupported(fmt::format("'{}' has no piecewise rules", s.name()));
    }
    auto const&               sym = s.alphabet().symbols();
    std::vector<SyncAcceptor> parts;
    for (auto const& r : s.rules()) {
      Word letter{r.letter};
      parts.push_back(product({r.guard, Fsa::word(sym, letter), Fsa::word(sym, r.output)}));
    }
    if (parts.empty()) {
      return product({Fsa::empty_language(sym), Fsa::empty_language(sym), Fsa::empty_language(sym)});
    }
    // Balanced pairwise union keeps the intermediate acceptors small.
    while (parts.size() > 1) {
      std::vector<SyncAcceptor> merged;
      for (std::size_t i = 0; i + 1 < parts.size(); i += 2) {
        merged.push_back(unite(parts[i], parts[i + 1]));
      }
      if (parts.size() % 2 == 1) {
        merged.push_back(parts.back());
      }
      parts = std::move(merged);
    }
    return parts.front();
  }

  std::vector<PrefixRule> to_prefix_rules(StackingStructure const& s, std::size_t r) {
    auto const&             alpha = s.alphabet();
    std::vector<PrefixRule> out;
    for (auto const& y : ball(s, r)) {
      for (Letter a = 0; a < alpha.size(); ++a) {
        Word lhs = concat(y, Word{a});
        if (s.is_normal_form(lhs)) {
          continue;
        }
        PrefixRule rule;
        rule.lhs = lhs;
        if (!y.empty() && y.back() == alpha.inverse(a)) {
          rule.rhs       = Word(y.begin(), y.end() - 1);
          rule.common    = rule.rhs.size();
          rule.backtrack = true;
        } else {
          rule.rhs = free_reduce(alpha, concat(y, s.stack(y, a)));
          std::size_t c = 0;
          while (c < rule.lhs.size() && c < rule.rhs.size() && rule.lhs[c] == rule.rhs[c]) {
            ++c;
          }
          rule.common = c;
        }
        out.push_back(std::move(rule));
      }
    }
    return out;
  }

  std::string format_rule(Alphabet const& alphabet, PrefixRule const& rule) {
    auto side = [&](Word const& w) {
      auto text = alphabet.format(w);
      return text.empty() ? std::string("1") : text;
    };
    return fmt::format("{} -> {}", side(rule.lhs), side(rule.rhs));
  }

  bool lex_less(std::vector<std::size_t> const& x, std::vector<std::size_t> const& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  }

  ////////////////////////////////////////////////////////////////////////
  // ChainLengths
  ////////////////////////////////////////////////////////////////////////

  struct ChainLengths::State {
    State(StackingStructure st, std::size_t r) : s(std::move(st)), radius(r) {}

    StackingStructure s;
    std::size_t       radius;
    std::mutex        mutex;
    // Built on the first non-tree query.
    std::optional<std::unordered_set<Word, WordHash>> domain;
    // Key is y followed by a; an absent optional marks a chain that left
    // the ball or looped.
    std::unordered_map<Word, std::optional<std::size_t>, WordHash> memo;
    std::unordered_set<Word, WordHash>                             active;

    std::optional<std::size_t> compute(Word const& y, Letter a) {
      if (s.is_tree_edge(y, a)) {
        return 0;
      }
      if (!domain) {
        auto members = ball(s, radius, Exec::serial);
        domain.emplace(members.begin(), members.end());
      }
      if (!domain->contains(y)) {
        return std::nullopt;
      }
      Word key = concat(y, Word{a});
      if (auto it = memo.find(key); it != memo.end()) {
        return it->second;
      }
      if (!active.insert(key).second) {
        return std::nullopt;
      }
      std::optional<std::size_t> result = 1;
      Word                       cur    = y;
      for (auto x : s.stack(y, a)) {
        if (!s.is_tree_edge(cur, x)) {
          auto sub = compute(cur, x);
          if (!sub) {
            result.reset();
            break;
          }
          result = std::max(*result, *sub + 1);
        }
        cur = s.normalize_step(cur, x);
      }
      active.erase(key);
      memo.emplace(std::move(key), result);
      return result;
    }
  };

  ChainLengths::ChainLengths(StackingStructure s, std::size_t radius)
      : state_(std::make_shared<State>(std::move(s), radius)) {}

  std::optional<std::size_t> ChainLengths::operator()(Word const& y, Letter a) const {
    std::lock_guard lock(state_->mutex);
    return state_->compute(y, a);
  }

}  // namespace autostack
