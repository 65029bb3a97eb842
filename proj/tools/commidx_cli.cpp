#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "commidx/finring.hpp"
#include "commidx/json_io.hpp"
#include "commidx/oracle.hpp"
#include "commidx/orders.hpp"
#include "commidx/rng.hpp"

using namespace commidx;

namespace {

// Everything the subcommands need; bound to CLI11 options below.
struct Options {
    std::uint64_t seed = 0;
    long trials = 100;
    std::string cap_str = "65536";
    std::string format = "text";
    std::string file_a, file_b;
    std::string alpha_path, right_path;
    std::size_t phi = 0;
    bool phi_given = false;
    std::string group = "C2";
    long n = 2;
    long q = 2;

    Int cap() const {
        Int c;
        try {
            c = Int(cap_str);
        } catch (const std::exception&) {
            throw InputError("malformed cap: " + cap_str);
        }
        if (c < 1) throw InputError("cap must be positive");
        return c;
    }
};

// JSON mode wraps every result in a reproducibility envelope.
void emit(const Options& opt, const std::string& text, const Json& result) {
    if (opt.format == "json") {
        Json wrap;
        wrap["version"] = 1;
        wrap["seed"] = opt.seed;
        wrap["cap"] = opt.cap().str();
        wrap["result"] = result;
        std::cout << wrap.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

std::string report_header(const Options& opt, bool with_trials) {
    std::ostringstream h;
    h << "# seed=" << opt.seed;
    if (with_trials) h << " trials=" << opt.trials;
    h << " cap=" << opt.cap().str() << "\n";
    return h.str();
}

bool is_module_doc(const Json& j) { return j.is_object() && j.contains("grp"); }

int run_ia(const Options& opt) {
    Json a = load_json_file(opt.file_a);
    Json b = load_json_file(opt.file_b);
    Rat v;
    if (is_module_doc(a) && is_module_doc(b))
        v = ia_finite(finmod_from_json(a), finmod_from_json(b), opt.cap());
    else if (!is_module_doc(a) && !is_module_doc(b))
        v = ia_abelian(fgab_from_json(a), fgab_from_json(b));
    else
        throw ObjectMismatch("ia needs two groups or two finite modules");
    emit(opt, rat_to_string(v) + "\n", rat_to_string(v));
    return 0;
}

int run_ie(const Options& opt) {
    if (opt.alpha_path.empty() == opt.right_path.empty())
        throw InputError("ie needs exactly one of --alpha or --right");
    if (opt.phi_given && opt.right_path.empty())
        throw InputError("--phi only applies with --right");
    OrderLattice l = lattice_from_json(load_json_file(opt.file_a));
    Rat v = opt.alpha_path.empty()
                ? ie_pair(l, lattice_from_json(load_json_file(opt.right_path)), opt.phi)
                : ie_self(l, ratmat_from_json(load_json_file(opt.alpha_path)));
    emit(opt, rat_to_string(v) + "\n", rat_to_string(v));
    return 0;
}

int run_compose(const Options& opt) {
    auto c = corr_from_json(load_json_file(opt.file_a));
    auto d = corr_from_json(load_json_file(opt.file_b));
    auto cd = compose_corr(c, d);
    Rat idx = certify(cd).index();
    Json result;
    result["correspondence"] = to_json(cd);
    result["index"] = rat_to_string(idx);
    emit(opt, rat_to_string(idx) + "\n", result);
    return 0;
}

FiniteGroup group_by_name(const std::string& name) {
    if (name == "S3") return symmetric_group(3);
    if (name.size() == 2 && name[0] == 'C' && name[1] >= '2' && name[1] <= '6')
        return cyclic_group(static_cast<std::size_t>(name[1] - '0'));
    throw InputError("unknown group (use C2..C6 or S3): " + name);
}

// Report plumbing shared by the check subcommands: every counterexample is
// listed, the summary line carries pass counts, failures exit 4.
int emit_check_report(const Options& opt, bool with_trials, const std::string& name,
                      long total, const std::vector<std::string>& failures, Json result) {
    std::ostringstream text;
    text << report_header(opt, with_trials);
    for (const auto& f : failures) text << f << "\n";
    text << name << ": " << (total - static_cast<long>(failures.size())) << "/" << total
         << " pass\n";
    result["passes"] = total - static_cast<long>(failures.size());
    result["total"] = total;
    result["failures"] = failures;
    result["pass"] = failures.empty();
    emit(opt, text.str(), result);
    return failures.empty() ? 0 : 4;
}

int run_check_welldef(const Options& opt) {
    OrderLattice l = regular_lattice(group_ring(group_by_name(opt.group)));
    std::vector<std::string> failures;
    for (long t = 0; t < opt.trials; ++t) {
        SampledCommensurability sc = sample_self_commensurability(l, Int(opt.seed) + Int(t));
        Rat endo = ie_self(l, to_rat(sc.alpha));
        Rat idx = certify(sc.corr).index();
        Int d = det(sc.alpha);
        if (d < 0) d = -d;
        if (endo != 1) {
            std::ostringstream f;
            f << "trial " << t << ": FAIL i(e(c)) = " << rat_to_string(endo);
            failures.push_back(f.str());
        } else if (idx != Rat(d)) {
            std::ostringstream f;
            f << "trial " << t << ": FAIL i(c) = " << rat_to_string(idx) << " vs |det alpha| = "
              << d.str();
            failures.push_back(f.str());
        }
    }
    Json result;
    result["check"] = "welldef";
    result["group"] = opt.group;
    return emit_check_report(opt, true, "welldef " + opt.group, opt.trials, failures,
                             std::move(result));
}

int run_check_theorem_o(const Options& opt) {
    auto catalog = theorem_o_catalog();
    std::vector<std::string> failures;
    for (std::size_t k = 0; k < catalog.size(); ++k) {
        UnitIsogenyReport rep = check_unit_isogeny(catalog[k], opt.cap());
        if (!rep.unit_map_isogeny || !rep.surjectivity_preserved) {
            std::ostringstream f;
            f << "hom " << k << ": FAIL"
              << (rep.unit_map_isogeny ? "" : " unit map not an isogeny")
              << (rep.surjectivity_preserved ? "" : " surjectivity not preserved");
            failures.push_back(f.str());
        }
    }
    Json result;
    result["check"] = "theorem-o";
    return emit_check_report(opt, false, "theorem-o", static_cast<long>(catalog.size()),
                             failures, std::move(result));
}

int run_check_theorem_w(const Options& opt) {
    if (opt.n < 1) throw InputError("--n must be positive");
    Int e = unit_quotient_exponent(matrix_ring(Int(opt.q), static_cast<std::size_t>(opt.n)),
                                   opt.cap());
    bool divides = Int(opt.n) % e == 0;
    std::ostringstream text;
    text << "exponent " << e.str() << (divides ? " divides " : " does not divide ") << opt.n
         << (divides ? ", pass" : ", FAIL") << "\n";
    Json result;
    result["check"] = "theorem-w";
    result["n"] = opt.n;
    result["q"] = opt.q;
    result["exponent"] = e.str();
    result["divides"] = divides;
    emit(opt, text.str(), result);
    return divides ? 0 : 4;
}

// The same admissible-image sampler the library tests use: each generator
// image is drawn from the elements its order kills.
AbHom random_hom(const FgAbGroup& src, const FgAbGroup& dst, Rng& rng) {
    IntMat m(dst.ngens(), src.ngens());
    for (std::size_t j = 0; j < src.ngens(); ++j)
        for (std::size_t i = 0; i < dst.ngens(); ++i) {
            Int g = gcd(dst.gen_order(i), src.gen_order(j));
            m(i, j) = (dst.gen_order(i) / g) * Int(rng.pick(0, g.convert_to<long>() - 1));
        }
    return AbHom(src, dst, std::move(m));
}

int run_check_multiplicativity(const Options& opt) {
    const std::vector<std::vector<long>> chains = {{2},    {3},       {4},  {2, 2}, {5},
                                                   {6},    {7},       {8},  {2, 4}, {2, 2, 2},
                                                   {9},    {3, 3},    {10}, {12},   {2, 6}};
    std::vector<FgAbGroup> pool;
    for (const auto& t : chains) pool.emplace_back(0, std::vector<Int>(t.begin(), t.end()));
    Rng rng(opt.seed);
    auto draw = [&]() -> const FgAbGroup& {
        return pool[static_cast<std::size_t>(rng.pick(0, static_cast<long>(pool.size()) - 1))];
    };
    std::vector<std::string> failures;
    for (long t = 0; t < opt.trials; ++t) {
        const FgAbGroup &w = draw(), &l = draw(), &m = draw(), &y = draw(), &n = draw();
        Correspondence<AbGroupContext> c(w, random_hom(w, l, rng), random_hom(w, m, rng));
        Correspondence<AbGroupContext> d(y, random_hom(y, m, rng), random_hom(y, n, rng));
        Rat lhs = certify(compose_corr(c, d)).index();
        Rat rhs = certify(c).index() * certify(d).index();
        if (lhs != rhs) {
            std::ostringstream f;
            f << "trial " << t << ": FAIL i(d.c) = " << rat_to_string(lhs)
              << " vs i(d)i(c) = " << rat_to_string(rhs);
            failures.push_back(f.str());
        }
    }
    Json result;
    result["check"] = "multiplicativity";
    return emit_check_report(opt, true, "multiplicativity", opt.trials, failures,
                             std::move(result));
}

// Shared listing shape for the finring subcommands.
int run_finring_listing(const Options& opt, const std::string& label,
                        const std::vector<std::vector<Int>>& elts) {
    std::ostringstream text;
    text << label << " " << elts.size() << "\n";
    Json rows = Json::array();
    for (const auto& e : elts) {
        Json row = Json::array();
        for (std::size_t i = 0; i < e.size(); ++i) {
            text << (i ? " " : "") << e[i].str();
            row.push_back(e[i].str());
        }
        text << "\n";
        rows.push_back(std::move(row));
    }
    Json result;
    result["count"] = elts.size();
    result[label] = std::move(rows);
    emit(opt, text.str(), result);
    return 0;
}

int run_oracle_aut_order(const Options& opt) {
    FgAbGroup g = fgab_from_json(load_json_file(opt.file_a));
    Int n = oracle::aut_order_enumerated(g, opt.cap());
    Json result;
    result["aut_order"] = n.str();
    emit(opt, n.str() + "\n", result);
    return 0;
}

int run_oracle_homs(const Options& opt) {
    Json a = load_json_file(opt.file_a);
    Json b = load_json_file(opt.file_b);
    std::size_t count;
    if (is_module_doc(a) && is_module_doc(b))
        count = oracle::enumerate_module_homs(finmod_from_json(a), finmod_from_json(b), opt.cap())
                    .size();
    else if (!is_module_doc(a) && !is_module_doc(b))
        count = oracle::enumerate_group_homs(fgab_from_json(a), fgab_from_json(b), opt.cap())
                    .size();
    else
        throw ObjectMismatch("homs need two groups or two finite modules");
    Json result;
    result["count"] = count;
    emit(opt, std::to_string(count) + "\n", result);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"exact commensurability indices for abelian groups, lattices, and modules "
                 "over Z-orders"};
    app.require_subcommand(1);
    auto common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", opt.seed, "sampling seed");
        cmd->add_option("--trials", opt.trials, "number of randomized trials")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--cap", opt.cap_str, "enumeration cap");
        cmd->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
        return cmd;
    };

    CLI::App* ia = common(app.add_subcommand("ia", "automorphism-level index of two objects"));
    ia->add_option("left", opt.file_a, "group or module file")->required();
    ia->add_option("right", opt.file_b, "group or module file")->required();

    CLI::App* ie = common(app.add_subcommand("ie", "endomorphism-level index for lattices"));
    ie->add_option("lattice", opt.file_a, "lattice file")->required();
    ie->add_option("--alpha", opt.alpha_path, "rational matrix in the commutant");
    ie->add_option("--right", opt.right_path, "second lattice");
    ie->add_option("--phi", opt.phi, "which rational isomorphism to use")
        ->each([&](const std::string&) { opt.phi_given = true; });

    CLI::App* compose =
        common(app.add_subcommand("compose", "compose two correspondences of abelian groups"));
    compose->add_option("first", opt.file_a, "correspondence file")->required();
    compose->add_option("second", opt.file_b, "correspondence file")->required();

    CLI::App* check = app.add_subcommand("check", "verify a property, reporting counterexamples");
    check->require_subcommand(1);
    CLI::App* welldef =
        common(check->add_subcommand("welldef", "sampled self-commensurabilities have index 1"));
    welldef->add_option("--group", opt.group, "group ring to sample over (C2..C6, S3)");
    CLI::App* theorem_o = common(
        check->add_subcommand("theorem-o", "unit maps of ring isogenies are group isogenies"));
    CLI::App* theorem_w = common(check->add_subcommand(
        "theorem-w", "unit quotient exponent of a matrix ring divides its degree"));
    theorem_w->add_option("--n", opt.n, "matrix degree");
    theorem_w->add_option("--q", opt.q, "field order");
    CLI::App* multiplicativity = common(
        check->add_subcommand("multiplicativity", "index is multiplicative under composition"));

    CLI::App* finring = app.add_subcommand("finring", "finite ring computations");
    finring->require_subcommand(1);
    CLI::App* units = common(finring->add_subcommand("units", "list the unit group"));
    units->add_option("ring", opt.file_a, "ring file")->required();
    CLI::App* radical = common(finring->add_subcommand("radical", "list the Jacobson radical"));
    radical->add_option("ring", opt.file_a, "ring file")->required();

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "brute-force reference computations");
    oracle_cmd->require_subcommand(1);
    CLI::App* aut_order_cmd =
        common(oracle_cmd->add_subcommand("aut-order", "automorphism count by enumeration"));
    aut_order_cmd->add_option("group", opt.file_a, "group file")->required();
    CLI::App* homs = common(oracle_cmd->add_subcommand("homs", "count all homomorphisms"));
    homs->add_option("left", opt.file_a, "group or module file")->required();
    homs->add_option("right", opt.file_b, "group or module file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1; // bad options are input errors
    }

    try {
        if (ia->parsed()) return run_ia(opt);
        if (ie->parsed()) return run_ie(opt);
        if (compose->parsed()) return run_compose(opt);
        if (check->parsed()) {
            if (welldef->parsed()) return run_check_welldef(opt);
            if (theorem_o->parsed()) return run_check_theorem_o(opt);
            if (theorem_w->parsed()) return run_check_theorem_w(opt);
            if (multiplicativity->parsed()) return run_check_multiplicativity(opt);
        }
        if (finring->parsed()) {
            if (units->parsed())
                return run_finring_listing(
                    opt, "units", unit_group(ring_from_json(load_json_file(opt.file_a)), opt.cap()));
            if (radical->parsed())
                return run_finring_listing(
                    opt, "radical",
                    jacobson_radical(ring_from_json(load_json_file(opt.file_a)), opt.cap()));
        }
        if (oracle_cmd->parsed()) {
            if (aut_order_cmd->parsed()) return run_oracle_aut_order(opt);
            if (homs->parsed()) return run_oracle_homs(opt);
        }
        throw InputError("no subcommand dispatched");
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 3;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
