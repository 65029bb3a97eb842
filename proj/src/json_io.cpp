#include "commidx/json_io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

namespace commidx {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw InputError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::size_t size_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_unsigned()) throw InputError(std::string("field \"") + key +
                                                  "\" must be a nonnegative integer");
    return v.get<std::size_t>();
}

const Json& array_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_array()) throw InputError(std::string("field \"") + key + "\" must be an array");
    return v;
}

Int int_from_json(const Json& v) {
    if (v.is_number_integer()) return Int(v.get<long long>());
    if (v.is_string()) {
        try {
            return Int(v.get<std::string>());
        } catch (const std::exception&) {
            throw InputError("malformed integer: " + v.get<std::string>());
        }
    }
    throw InputError("integer entries must be decimal strings or integers");
}

Rat rat_from_json(const Json& v) {
    if (v.is_number_integer()) return Rat(v.get<long long>());
    if (v.is_string()) return rat_from_string(v.get<std::string>());
    throw InputError("rational entries must be strings or integers");
}

Json int_list(const std::vector<Int>& v) {
    Json a = Json::array();
    for (const Int& x : v) a.push_back(x.str());
    return a;
}

std::vector<Int> int_list_from_json(const Json& a) {
    std::vector<Int> out;
    for (const Json& v : a) out.push_back(int_from_json(v));
    return out;
}

} // namespace

Json to_json(const IntMat& m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    Json e = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k) e.push_back(m(i, k).str());
    j["entries"] = std::move(e);
    return j;
}

Json to_json(const RatMat& m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    Json e = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k) e.push_back(rat_to_string(m(i, k)));
    j["entries"] = std::move(e);
    return j;
}

IntMat intmat_from_json(const Json& j) {
    std::size_t r = size_field(j, "rows"), c = size_field(j, "cols");
    const Json& e = array_field(j, "entries");
    if (e.size() != r * c) throw InputError("matrix entry count does not match rows*cols");
    IntMat m(r, c);
    std::size_t at = 0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < c; ++k) m(i, k) = int_from_json(e.at(at++));
    return m;
}

RatMat ratmat_from_json(const Json& j) {
    std::size_t r = size_field(j, "rows"), c = size_field(j, "cols");
    const Json& e = array_field(j, "entries");
    if (e.size() != r * c) throw InputError("matrix entry count does not match rows*cols");
    RatMat m(r, c);
    std::size_t at = 0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < c; ++k) m(i, k) = rat_from_json(e.at(at++));
    return m;
}

Json to_json(const FgAbGroup& g) {
    Json j;
    j["rank"] = g.rank();
    j["torsion"] = int_list(g.torsion());
    return j;
}

FgAbGroup fgab_from_json(const Json& j) {
    std::size_t rank = size_field(j, "rank");
    std::vector<Int> tors;
    if (j.is_object() && j.contains("torsion")) tors = int_list_from_json(array_field(j, "torsion"));
    return FgAbGroup(rank, std::move(tors));
}

Json to_json(const AbHom& h) {
    Json j;
    j["src"] = to_json(h.src());
    j["dst"] = to_json(h.dst());
    j["mat"] = to_json(h.mat());
    return j;
}

AbHom abhom_from_json(const Json& j) {
    return AbHom(fgab_from_json(field(j, "src")), fgab_from_json(field(j, "dst")),
                 intmat_from_json(field(j, "mat")));
}

Json to_json(const Correspondence<AbGroupContext>& c) {
    Json j;
    j["apex"] = to_json(c.apex);
    j["left"] = to_json(c.left);
    j["right"] = to_json(c.right);
    return j;
}

Correspondence<AbGroupContext> corr_from_json(const Json& j) {
    field(j, "apex"); // required by the schema even though the legs carry it
    return Correspondence<AbGroupContext>(fgab_from_json(field(j, "apex")),
                                          abhom_from_json(field(j, "left")),
                                          abhom_from_json(field(j, "right")));
}

Json to_json(const FiniteGroup& g) {
    Json j;
    j["order"] = g.order();
    Json table = Json::array();
    for (std::size_t i = 0; i < g.order(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < g.order(); ++k) row.push_back(g.mul(i, k));
        table.push_back(std::move(row));
    }
    j["table"] = std::move(table);
    if (!g.generators().empty()) j["generators"] = g.generators();
    if (!g.perms().empty()) j["perms"] = g.perms();
    return j;
}

FiniteGroup group_from_json(const Json& j) {
    std::size_t n = size_field(j, "order");
    const Json& table = array_field(j, "table");
    if (table.size() != n) throw InputError("group table must have one row per element");
    std::vector<std::size_t> flat;
    flat.reserve(n * n);
    for (const Json& row : table) {
        if (!row.is_array() || row.size() != n)
            throw InputError("group table rows must have one entry per element");
        for (const Json& v : row) {
            if (!v.is_number_unsigned()) throw InputError("group table entries must be indices");
            flat.push_back(v.get<std::size_t>());
        }
    }
    std::vector<std::size_t> gens;
    if (j.contains("generators"))
        for (const Json& v : array_field(j, "generators")) {
            if (!v.is_number_unsigned()) throw InputError("generators must be indices");
            gens.push_back(v.get<std::size_t>());
        }
    std::vector<std::vector<std::size_t>> perms;
    if (j.contains("perms"))
        for (const Json& p : array_field(j, "perms")) {
            if (!p.is_array()) throw InputError("perms must be arrays of indices");
            std::vector<std::size_t> perm;
            for (const Json& v : p) {
                if (!v.is_number_unsigned()) throw InputError("perm entries must be indices");
                perm.push_back(v.get<std::size_t>());
            }
            perms.push_back(std::move(perm));
        }
    return FiniteGroup(n, std::move(flat), std::move(gens), std::move(perms));
}

Json to_json(const ZOrder& r) {
    Json j;
    j["zrank"] = r.zrank();
    j["structure"] = int_list(r.structure());
    j["unity"] = int_list(r.unity());
    return j;
}

ZOrder zorder_from_json(const Json& j) {
    if (j.is_object() && j.contains("group_ring"))
        return group_ring(group_from_json(j.at("group_ring")));
    return ZOrder(size_field(j, "zrank"), int_list_from_json(array_field(j, "structure")),
                  int_list_from_json(array_field(j, "unity")));
}

Json to_json(const OrderLattice& l) {
    Json j;
    j["order"] = to_json(l.order());
    j["zrank"] = l.zrank();
    Json act = Json::array();
    for (const IntMat& a : l.action()) act.push_back(to_json(a));
    j["action"] = std::move(act);
    return j;
}

OrderLattice lattice_from_json(const Json& j) {
    ZOrder r = zorder_from_json(field(j, "order"));
    std::size_t m = size_field(j, "zrank");
    std::vector<IntMat> action;
    for (const Json& a : array_field(j, "action")) action.push_back(intmat_from_json(a));
    for (const IntMat& a : action)
        if (a.rows() != m || a.cols() != m)
            throw InputError("lattice action matrices must be zrank x zrank");
    return OrderLattice(std::move(r), std::move(action));
}

Json to_json(const FiniteModule& m) {
    Json j;
    j["order"] = to_json(m.order());
    j["grp"] = to_json(m.grp());
    Json act = Json::array();
    for (const IntMat& a : m.action()) act.push_back(to_json(a));
    j["action"] = std::move(act);
    return j;
}

FiniteModule finmod_from_json(const Json& j) {
    ZOrder r = zorder_from_json(field(j, "order"));
    FgAbGroup g = fgab_from_json(field(j, "grp"));
    std::vector<IntMat> action;
    for (const Json& a : array_field(j, "action")) action.push_back(intmat_from_json(a));
    return FiniteModule(std::move(r), std::move(g), std::move(action));
}

Json to_json(const FiniteRing& r) {
    Json j;
    j["add"] = to_json(r.add());
    j["mult"] = int_list(r.structure());
    j["unity"] = int_list(r.unity());
    return j;
}

FiniteRing ring_from_json(const Json& j) {
    return FiniteRing(fgab_from_json(field(j, "add")),
                      int_list_from_json(array_field(j, "mult")),
                      int_list_from_json(array_field(j, "unity")));
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str());
}

} // namespace commidx
