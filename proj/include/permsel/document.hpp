#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "permsel/ballean.hpp"
#include "permsel/decompose.hpp"
#include "permsel/set_valued_map.hpp"

namespace permsel {

// Line-oriented document grammar shared by the command line tools.
// '#' starts a comment; blank lines are ignored. The first statement must
// be "ground:". Statements:
//   ground: a b c
//   map a: a b            (map documents; one entry per ground element)
//   mode: strict          (family documents; optional, default relaxed)
//   perm: a->b b->a c->c  (family documents; complete mapping per line)
//   entourage E: (a,b) (b,a) ...
//   partition P: [a b] [c]
// Parse and validation errors carry 1-based line/column and never a stack
// trace.

SetValuedMap parse_map_document(const std::string& text);
SelectorFamily parse_family_document(const std::string& text);
CoarseBase parse_ballean_document(const std::string& text);

SetValuedMap read_map_file(const std::string& path);
SelectorFamily read_family_file(const std::string& path);
CoarseBase read_ballean_file(const std::string& path);

/// Canonical family document: ground line, mode line, one permutation per
/// line in one-line mapping form, lines sorted bytewise.
std::string write_family_document(const SelectorFamily& family);

std::string format_pair(const GroundSet& ground, const std::pair<int, int>& pair);

}  // namespace permsel
