#pragma once
// The curation DSL: a line-friendly declarative format recording expert
// modeling decisions (aliases, variable groupings, interactions, denied
// relations, tool configuration).
//
//   spec        = { stmt } ;
//   stmt        = alias | variable | interaction | deny | config ;
//   alias       = "alias" STRING "=" STRING ;
//   variable    = "variable" IDENT "{" { valuedecl } "}" ;
//   valuedecl   = "value" IDENT ":" STRING { "|" STRING } ;
//   interaction = "interaction" STRING "=" constituent "&" constituent { "&" constituent } ;
//   constituent = "(" IDENT "=" IDENT ")" ;
//   deny        = "deny" IDENT "->" IDENT ;
//   config      = "set" IDENT "=" ( NUMBER | IDENT ) ;
//
// '#' starts a comment to end of line. Recognized config keys:
// near_dup_threshold (default 0.5), max_path_len (default 6).

#include <string>
#include <string_view>

#include "cogmap/model.hpp"

namespace cogmap {

// Throws ParseError (line/column, expected-token hint) on syntax errors,
// duplicate statement names, unknown or ill-typed config keys, and alias
// chains detected at parse completion.
CurationSpec parse_curation(std::string_view text);

// Canonical rendering: statements sorted within kind, one canonical spelling
// per value. pretty_print(parse_curation(pretty_print(s))) == pretty_print(s).
std::string pretty_print(const CurationSpec& spec);

}  // namespace cogmap
