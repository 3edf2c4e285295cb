// Serialization and input handling shared by the CLI and the test suites.
//
// Conventions (documented in the README):
//   - polynomials serialize as ordered maps exponent -> coefficient, both as
//     strings so arbitrary-precision values survive JSON round-trips;
//   - rational functions as {"num": ..., "den": ...};
//   - elements render as their canonical words "s1 s2 s1", identity "e";
//   - J-ring elements as {"t_<word>": scalar}.

#pragma once

#include <json.hpp>
#include <string>

#include "cactusj/cactus.hpp"

namespace cactusj {

using json = nlohmann::ordered_json;

json laurent_json(const Laurent& p);
json ratfunc_json(const RatFunc& f);
json rat_json(const Rat& q);

template <class C>
json hecke_json(const CoxGroup& W, const HeckeElt<C>& h);
json jelt_json(const CoxGroup& W, const JElt<Int>& e);
json jelt_json(const CoxGroup& W, const JElt<Rat>& e);
json jelt_json(const CoxGroup& W, const JElt<RatFunc>& e);

// Coxeter matrix input file: {"size": n, "m": [[...]]} or {"type": "B3"}.
GroupSpec group_spec_from_file(const std::string& path);

// Resolves --group / --matrix-file into a build-ready spec.
GroupSpec resolve_group_spec(const std::string& label, const std::string& matrix_file);

std::string csv_escape(const std::string& s);

}  // namespace cactusj
