#pragma once

#include <string>

#include "f2lab/set.hpp"

namespace f2lab {

/// Set file format (bit-exact): JSON {"schema":"f2lab/1", "p", "n",
/// "encoding":"hexmask"|"points", "data"}. "hexmask" is the
/// little-endian hex dump of the bitset (byte 0 = indices 0..7);
/// "points" is a list of digit arrays (digit i = coefficient of e_i).
/// Writing always emits the canonical hexmask encoding.
GroupSet parse_set_file(const std::string& path);
GroupSet parse_set_json(const std::string& text);
std::string set_to_json(const GroupSet& s);

/// Subspace JSON: {"schema":"f2lab/1", "p", "n", "basis": rows in RREF}
/// with rows as hex masks (p = 2) or digit arrays (p > 2).
Subspace parse_subspace_file(const std::string& path);
Subspace parse_subspace_json(const std::string& text);
std::string subspace_to_json(const Subspace& v);

/// Writes via temp file + rename so no partially written artifact can be
/// observed at the destination path.
void atomic_write(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace f2lab
