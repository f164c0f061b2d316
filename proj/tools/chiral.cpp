// Batch front end: datum checking, dualization, QLS twisted pairs, and
// Maurer-Cartan / homomorphism verification over the built-in catalog or
// user-supplied structure files.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "chiral/catalog.hpp"
#include "chiral/datum_io.hpp"
#include "chiral/errors.hpp"
#include "chiral/mc.hpp"

using namespace chiral;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;     // parse or usage errors
constexpr int kExitNegative = 2;  // well-formed negative result

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Rational default_cutoff() {
    if (const char* env = std::getenv("CHIRAL_DEFAULT_CUTOFF")) {
        try {
            return Rational::parse(env);
        } catch (const std::exception&) {
            throw Error("CHIRAL_DEFAULT_CUTOFF is not a rational: " + std::string(env));
        }
    }
    return 4;
}

json relations_json(const QuadraticDatum& d) {
    json rows = json::array();
    size_t r = d.rank();
    for (size_t row = 0; row < d.relations.rows(); ++row) {
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j)
                for (const auto& [e, c] : d.relations.at(row, d.col(i, j)).coeffs()) {
                    if (!first) os << " + ";
                    first = false;
                    os << c.str() << " t^" << e << " " << d.generators[i].name << " "
                       << d.generators[j].name;
                }
        rows.push_back(os.str());
    }
    return rows;
}

json datum_json(const QuadraticDatum& d) {
    json gens = json::array();
    for (const auto& g : d.generators)
        gens.push_back({{"name", g.name},
                        {"degree", g.degree},
                        {"parity", g.parity == Parity::Odd ? "odd" : "even"},
                        {"weight", g.weight.str()}});
    return {{"generators", gens}, {"relations", relations_json(d)}};
}

std::string quad_expr_str(const QuadExpr& expr, const std::vector<GeneratorSpec>& gens) {
    if (expr.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : expr) {
        if (!first) os << " + ";
        first = false;
        os << t.coeff.str() << " ";
        if (t.deriv > 0) os << "d^" << t.deriv << "[" << gens[t.a].name << "]/" << t.deriv << "!";
        else os << gens[t.a].name;
        os << " " << gens[t.b].name;
    }
    return os.str();
}

void emit(const json& rep, bool as_json) {
    if (as_json) {
        std::cout << rep.dump(2) << "\n";
        return;
    }
    // human-readable rendering of the same report
    std::function<void(const json&, int)> walk = [&](const json& j, int indent) {
        std::string pad(indent, ' ');
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.value().is_object()) {
                std::cout << pad << it.key() << ":\n";
                walk(it.value(), indent + 2);
            } else if (it.value().is_array()) {
                std::cout << pad << it.key() << ":\n";
                for (const auto& el : it.value()) {
                    if (el.is_string())
                        std::cout << pad << "  - " << el.get<std::string>() << "\n";
                    else if (el.is_object()) {
                        std::cout << pad << "  -\n";
                        walk(el, indent + 4);
                    } else
                        std::cout << pad << "  - " << el.dump() << "\n";
                }
            } else if (it.value().is_string()) {
                std::cout << pad << it.key() << ": " << it.value().get<std::string>() << "\n";
            } else {
                std::cout << pad << it.key() << ": " << it.value().dump() << "\n";
            }
        }
    };
    walk(rep, 0);
}

int cmd_check(const std::string& file, bool as_json) {
    QuadraticDatum d = parse_datum(slurp(file));
    DualizabilityReport rep = validate(d);
    json out;
    out["command"] = "check " + file;
    out["valid_datum"] = rep.is_valid_datum;
    out["dualizable"] = rep.is_dualizable;
    out["rank"] = rep.rank;
    out["max_pole_order"] = rep.max_pole_order;
    out["determinant"] = rep.determinant.str();
    if (rep.failure_witness) out["witness"] = *rep.failure_witness;
    out["status"] = rep.is_dualizable ? "pass" : "fail";
    emit(out, as_json);
    return rep.is_dualizable ? kExitPass : kExitNegative;
}

int cmd_dual(const std::string& file, bool as_json) {
    QuadraticDatum d = parse_datum(slurp(file));
    QuadraticDatum dual;
    try {
        dual = dual_datum(d);
    } catch (const NotDualizable& e) {
        json out;
        out["command"] = "dual " + file;
        out["status"] = "fail";
        out["witness"] = e.what();
        emit(out, as_json);
        return kExitNegative;
    }
    if (as_json) {
        json out;
        out["command"] = "dual " + file;
        out["dual"] = datum_json(dual);
        out["status"] = "pass";
        emit(out, true);
    } else {
        std::cout << print_datum(dual);
    }
    return kExitPass;
}

int cmd_qls_dual(const std::string& file, bool as_json) {
    QuadraticDatum d = parse_datum(slurp(file));
    json out;
    out["command"] = "qls-dual " + file;
    if (!d.is_qls()) {
        out["status"] = "fail";
        out["witness"] = "datum has no unit generator";
        emit(out, as_json);
        return kExitNegative;
    }
    if (!validate(d).is_dualizable || !check_qls(d)) {
        out["status"] = "fail";
        out["witness"] = "datum is not a dualizable QLS datum";
        emit(out, as_json);
        return kExitNegative;
    }
    TwistedPairPresentation tp;
    try {
        tp = extract_twisted_pair(d);
    } catch (const NotQlsDualizable& e) {
        out["status"] = "fail";
        out["condition"] = e.condition;
        out["witness"] = e.what();
        emit(out, as_json);
        return kExitNegative;
    }
    out["quadratic_dual"] = datum_json(tp.quadratic_dual);
    out["full_dual"] = datum_json(tp.full_dual);
    out["distinguished_section"] = tp.full_dual.generators[tp.s_index].name;
    json table = json::array();
    for (size_t c = 0; c < tp.differential_table.size(); ++c)
        table.push_back("d(" + tp.quadratic_dual.generators[c].name + ") = " +
                        quad_expr_str(tp.differential_table[c], tp.quadratic_dual.generators));
    out["differential"] = table;
    out["curving"] = quad_expr_str(tp.curving, tp.quadratic_dual.generators);
    out["antisymmetry_consistent"] = tp.antisymmetry_consistent;
    out["degree_consistent"] = tp.degree_consistent;
    out["status"] = "pass";
    emit(out, as_json);
    return kExitPass;
}

struct McSetup {
    ExampleBundle bundle;
    std::string provenance;
};

McSetup mc_setup_from_example(const std::string& name, const Rational& level) {
    if (name == "kac-moody-sl2")
        return {kac_moody_example(sl2(level)), "builtin catalog: kac-moody-sl2"};
    if (name == "abelian")
        return {kac_moody_example(abelian_lie(1, {{0}})), "builtin catalog: abelian"};
    if (name == "heisenberg")
        return {kac_moody_example(heisenberg(level)), "builtin catalog: heisenberg"};
    if (name == "beta-gamma") return {beta_gamma_example(), "builtin catalog: beta-gamma"};
    if (name == "bc") return {bc_example(), "builtin catalog: bc"};
    throw Error("unknown example '" + name +
                "'; known: kac-moody-sl2, abelian, heisenberg, beta-gamma, bc");
}

McSetup mc_setup_from_file(const std::string& path) {
    ModeAlgebraSpec spec = parse_algebra(slurp(path));
    if (spec.kind == AlgebraKind::WeylClifford) {
        std::vector<Rational> weights;
        std::vector<Parity> parities;
        for (const auto& g : spec.generators) {
            weights.push_back(g.weight);
            parities.push_back(g.parity);
        }
        return {beta_gamma_bc_example(spec.omega, weights, parities), "algebra file: " + path};
    }
    LieData lie;
    for (const auto& g : spec.generators) lie.names.push_back(g.name);
    size_t n = lie.names.size();
    lie.f = spec.f.empty()
                ? std::vector<std::vector<std::vector<Rational>>>(
                      n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)))
                : spec.f;
    lie.kappa = spec.kappa.empty()
                    ? std::vector<std::vector<Rational>>(n, std::vector<Rational>(n))
                    : spec.kappa;
    return {kac_moody_example(lie), "algebra file: " + path};
}

int cmd_mc_verify(const McSetup& setup, const Rational& cutoff, long mmax, bool as_json,
                  bool parallel) {
    const ExampleBundle& b = setup.bundle;
    TwistedPairPresentation tp = extract_twisted_pair(b.datum);
    Engine primal(*b.primal_engine, cutoff);
    Engine dual(*b.dual_engine, cutoff);
    TensorPair pair(primal, dual);
    TwistedStructure ts;
    ts.on_right = true;
    ts.d = tp.differential_table;
    ts.iota = quad_expr_state(dual, tp.curving);
    Exec exec{parallel};
    MCReport rep = mc_check(pair, pair.canonical_element(), ts, mmax, exec);

    json out;
    out["command"] = "mc-verify";
    out["provenance"] = setup.provenance;
    out["cutoff"] = cutoff.str();
    out["m_max"] = mmax;
    json eqs = json::array();
    eqs.push_back(std::string("E1 = dI + 1/2 I_(0)I + 1/2 iota: ") +
                  (rep.residual_e1.is_zero() ? "0" : pair.str(rep.residual_e1)));
    for (size_t i = 0; i < rep.residuals_em.size(); ++i)
        eqs.push_back("I_(" + std::to_string(i + 1) + ")I: " +
                      (rep.residuals_em[i].is_zero() ? "0" : pair.str(rep.residuals_em[i])));
    out["equations"] = eqs;
    out["passed"] = rep.passed;
    out["status"] = rep.passed ? "pass" : "fail";
    emit(out, as_json);
    return rep.passed ? kExitPass : kExitNegative;
}

int cmd_hom_check(const std::string& source_file, const std::string& target_file,
                  const std::string& map_file, const Rational& cutoff, bool as_json) {
    ModeAlgebraSpec source = parse_algebra(slurp(source_file));
    if (source.kind == AlgebraKind::WeylClifford)
        throw Error("hom-check sources must be Lie data (kind lie or abelian-ce)");
    ModeAlgebraSpec target_spec = parse_algebra(slurp(target_file));
    Engine target(target_spec, cutoff);
    std::vector<std::string> names;
    for (const auto& g : source.generators) names.push_back(g.name);
    std::vector<FockState> y = parse_hom_map(slurp(map_file), target, names);

    size_t n = names.size();
    auto f = source.f.empty()
                 ? std::vector<std::vector<std::vector<Rational>>>(
                       n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)))
                 : source.f;
    auto kappa = source.kappa.empty()
                     ? std::vector<std::vector<Rational>>(n, std::vector<Rational>(n))
                     : source.kappa;
    HomReport rep = hom_check(f, kappa, target, y);

    json out;
    out["command"] = "hom-check " + source_file + " " + target_file + " " + map_file;
    out["products_ok"] = rep.products_ok;
    out["commutators_ok"] = rep.commutators_ok;
    json viol = json::array();
    for (const auto& v : rep.violations)
        viol.push_back({{"a", source.generators[v.a].name},
                        {"b", source.generators[v.b].name},
                        {"n", v.n},
                        {"detail", v.detail}});
    out["violations"] = viol;
    out["passed"] = rep.passed;
    out["status"] = rep.passed ? "pass" : "fail";
    emit(out, as_json);
    return rep.passed ? kExitPass : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact quadratic duality and Maurer-Cartan checks for chiral data"};
    app.require_subcommand(1);

    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable report on stdout");

    std::string file;
    auto* check = app.add_subcommand("check", "validate a datum file and test dualizability");
    check->add_option("file", file)->required();

    auto* dual = app.add_subcommand("dual", "print the quadratic dual datum");
    dual->add_option("file", file)->required();

    auto* qls = app.add_subcommand("qls-dual", "twisted-pair dual of a QLS datum");
    qls->add_option("file", file)->required();

    std::string example, algebra;
    std::string level_str = "1";
    std::string cutoff_str;
    long mmax = 4;
    bool parallel = false;
    auto* mc = app.add_subcommand("mc-verify", "verify the Maurer-Cartan equations");
    mc->add_option("--example", example, "builtin example name");
    mc->add_option("--algebra", algebra, "structure file");
    mc->add_option("--level", level_str, "level for kac-moody-sl2 / heisenberg");
    mc->add_option("--cutoff", cutoff_str, "weight cutoff (default 4 or CHIRAL_DEFAULT_CUTOFF)");
    mc->add_option("--mmax", mmax, "highest I_(m) I residual to check");
    mc->add_flag("--parallel", parallel, "expand tensor products with OpenMP");

    std::string source_file, target_file, map_file;
    auto* hom = app.add_subcommand("hom-check", "verify a generator assignment");
    hom->add_option("source", source_file, "source Lie structure file")->required();
    hom->add_option("target", target_file, "target algebra structure file")->required();
    hom->add_option("map", map_file, "generator assignment file")->required();
    hom->add_option("--cutoff", cutoff_str, "weight cutoff");

    CLI11_PARSE(app, argc, argv);

    try {
        Rational cutoff = cutoff_str.empty() ? default_cutoff() : Rational::parse(cutoff_str);
        if (check->parsed()) return cmd_check(file, as_json);
        if (dual->parsed()) return cmd_dual(file, as_json);
        if (qls->parsed()) return cmd_qls_dual(file, as_json);
        if (mc->parsed()) {
            if (example.empty() == algebra.empty())
                throw Error("mc-verify needs exactly one of --example or --algebra");
            McSetup setup = example.empty() ? mc_setup_from_file(algebra)
                                            : mc_setup_from_example(example, Rational::parse(level_str));
            return cmd_mc_verify(setup, cutoff, mmax, as_json, parallel);
        }
        if (hom->parsed()) return cmd_hom_check(source_file, target_file, map_file, cutoff, as_json);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
