#pragma once

#include <string>

#include "hedra/combinatorics.h"
#include "hedra/polyhedron.h"

namespace hedra {

// Parses OFF text: header line "OFF", a counts line "V F E" (E is ignored and
// may be 0), V vertex lines of three reals, then F face lines "k i1 ... ik"
// with zero-based vertex indices. '#' starts a comment; blank lines are
// skipped. The result is validated. Throws ParseError (with the 1-based line
// number) on malformed input and InvalidPolyhedron on a well-formed file that
// fails mesh validation.
Polyhedron read_off(const std::string& text);

// Serializes to canonical OFF text: vertices printed with 17 significant
// digits (lossless double round-trip), faces in stored order. The composition
// write_off(read_off(write_off(p))) is byte-identical to write_off(p).
std::string write_off(const Polyhedron& p);

// Parses a line-oriented face file: each non-blank line lists one face as
// space-separated abstract vertex labels (arbitrary tokens; '#' starts a
// comment). Labels are numbered in order of first appearance. The incidence
// structure is validated (closed manifold, Euler count, connectivity); on
// failure throws InvalidPolyhedron whose message lists every violation.
CombinatorialType read_type(const std::string& text);

// Serializes a combinatorial type in read_type's format, one face per line
// with numeric labels.
std::string write_type(const CombinatorialType& t);

}  // namespace hedra
