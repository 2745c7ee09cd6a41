// JSON documents for acceptors, structures and construction recipes, and
// DOT export of acceptors.
//
// Words are written as whitespace-separated letter names ("" is the empty
// word). Acceptor documents omit the dead state and every move into it.

#ifndef AUTOSTACK_IO_HPP_
#define AUTOSTACK_IO_HPP_

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "autostack/constructions.hpp"
#include "autostack/fsa.hpp"
#include "autostack/stacking.hpp"

namespace autostack {

  using Json = nlohmann::json;

  //! {alphabet, states, start, accepting, transitions: [[q, symbol, r]]}.
  Json fsa_to_json(Fsa const& f);
  //! When `symbols` is given the result is re-indexed onto it by name.
  Fsa fsa_from_json(Json const& doc, SymbolsPtr symbols = nullptr);

  //! As fsa_to_json with "alphabet" holding the base names, an "arity", and
  //! each symbol written as an array of names, "$" for padding.
  Json         sync_to_json(SyncAcceptor const& s);
  SyncAcceptor sync_from_json(Json const& doc);

  std::string fsa_to_dot(Fsa const& f, std::string const& name = "fsa");
  std::string sync_to_dot(SyncAcceptor const& s, std::string const& name = "sync");

  //! {name, alphabet, inverses, normal_forms, rules: [{guard, letter, output}],
  //! bound, relators, oracle}. Throws Unsupported for opaque structures.
  Json structure_to_json(StackingStructure const& s, std::string const& oracle_ref = "none");

  //! Acceptors inside the document may be inline or a path relative to
  //! `base_dir`. An oracle "builtin:<name>" attaches that builtin's oracle,
  //! whose alphabet must match.
  StackingStructure structure_from_json(Json const& doc, std::filesystem::path const& base_dir = {});

  //! "builtin:<name>" or the path of a structure file.
  StackingStructure load_structure(std::string const& ref, std::filesystem::path const& base_dir = {});

  //! {kind: "graph_product", graph: {n, edges}, vertices: [refs]}
  //! {kind: "extension", K, Q, hat: {q: lift}, conj: {lift: {a: word}},
  //!  corr: {lift: {z: word}}}
  //! {kind: "finite_index", H, S: [names], table1: {x: {u, t}},
  //!  table2: {x: {y: {u, t}}}}
  //! Structure refs are strings as for load_structure, or inline documents.
  Construction run_recipe(Json const& doc, std::filesystem::path const& base_dir = {});

  //! Throws ParseError when the file is missing or malformed.
  Json read_json_file(std::filesystem::path const& path);

}  // namespace autostack

#endif  // AUTOSTACK_IO_HPP_
