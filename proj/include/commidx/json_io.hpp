#pragma once

#include <string>

#include "json.hpp"

#include "commidx/corr.hpp"
#include "commidx/fgab.hpp"
#include "commidx/finring.hpp"
#include "commidx/orders.hpp"

// Wire format. All numbers that can exceed machine range travel as decimal
// strings; rationals as "p/q" (or "p" when the denominator is 1). Parsers
// throw InputError on malformed documents; semantic validation is left to
// the constructors, so a parsed object is always a valid one.
//
//   matrix   {"rows": r, "cols": c, "entries": ["…", …]}   row-major
//   group    {"rank": n, "torsion": ["d1", …]}             (finitely generated abelian)
//   hom      {"src": group, "dst": group, "mat": matrix}
//   corr     {"apex": group, "left": hom, "right": hom}
//   table    {"order": k, "table": [[…], …], "generators": […], "perms": [[…], …]}
//   zorder   {"zrank": n, "structure": ["…", …], "unity": ["…", …]}
//   lattice  {"order": zorder | {"group_ring": table}, "zrank": m, "action": [matrix, …]}
//   module   {"order": zorder | {"group_ring": table}, "grp": group, "action": [matrix, …]}
//   ring     {"add": group, "mult": ["…", …], "unity": ["…", …]}

namespace commidx {

using Json = nlohmann::ordered_json;

Json to_json(const IntMat& m);
Json to_json(const RatMat& m);
IntMat intmat_from_json(const Json& j);
RatMat ratmat_from_json(const Json& j);

Json to_json(const FgAbGroup& g);
FgAbGroup fgab_from_json(const Json& j);

Json to_json(const AbHom& h);
AbHom abhom_from_json(const Json& j);

Json to_json(const Correspondence<AbGroupContext>& c);
Correspondence<AbGroupContext> corr_from_json(const Json& j);

Json to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const Json& j);

Json to_json(const ZOrder& r);
ZOrder zorder_from_json(const Json& j); // accepts {"group_ring": table} too

Json to_json(const OrderLattice& l);
OrderLattice lattice_from_json(const Json& j);

Json to_json(const FiniteModule& m);
FiniteModule finmod_from_json(const Json& j);

Json to_json(const FiniteRing& r);
FiniteRing ring_from_json(const Json& j);

// Parses a whole document, wrapping syntax errors in InputError.
Json parse_json(const std::string& text);
Json load_json_file(const std::string& path);

} // namespace commidx
