// nilcentre: central elements of layered unstable algebras from the command line.
//
// Exit codes: 0 ok, 1 invalid input, 2 inconclusive centre, 3 enumeration cap hit.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nilc/centers.hpp"
#include "nilc/comodule.hpp"
#include "nilc/errors.hpp"
#include "nilc/oracle.hpp"
#include "nilc/serialize.hpp"

using namespace nilc;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kInconclusive = 2;
constexpr int kCap = 3;

struct RunConfig {
    std::string input;
    std::string coaction;
    std::string pair;
    std::string group = "trivial";
    unsigned max_degree = 12;
    std::size_t max_dim_w = 3;
    std::size_t probe_dim = 2;
    std::size_t dim = 2;
    bool json_output = false;
    Limits limits;
};

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

// Loads and validates; prints the diagnostics and returns false on failure.
bool load_valid(const RunConfig& cfg, LayeredAlgebra& k)
{
    k = load_presentation(cfg.input, cfg.limits);
    const auto report = validate(k, cfg.max_degree, cfg.limits);
    for (const auto& d : report.failures)
        std::cerr << d.code << ": " << d.message << '\n';
    return report.ok();
}

std::string level_name(unsigned k) { return "C" + std::to_string(k); }

int cmd_centre(const RunConfig& cfg)
{
    LayeredAlgebra k;
    if (!load_valid(cfg, k))
        return kInvalid;
    const CentreResult r = centre(k, cfg.max_dim_w, cfg.max_degree, cfg.limits);
    if (cfg.json_output) {
        emit(centre_result_to_json(r));
    } else {
        for (const auto& e : r.per_level) {
            std::cout << level_name(e.level) << ": " << describe(e.set) << '\n';
            if (!(e.header_reading == e.set))
                std::cout << "  (module-header reading: " << describe(e.header_reading) << ")\n";
        }
        std::cout << "C(K): " << describe(r.centre) << '\n';
    }
    return r.centre.mode == CentreMode::Inconclusive ? kInconclusive : kOk;
}

int cmd_oracle(const RunConfig& cfg)
{
    LayeredAlgebra k;
    if (!load_valid(cfg, k))
        return kInvalid;
    const Subgroup& g = k.subgroup();
    const SKPoint pt = make_point(g, parse_pair(cfg.pair, k.base_dim));

    json out;
    out["base_centre"] = base_centre(g, pt);
    out["functor_oracle"] = functor_centre_oracle(g, pt, cfg.probe_dim, cfg.limits);
    out["central"] = ck(k, k.depth(), pt, cfg.max_degree, cfg.limits);
    json pieces = json::array();
    bool all_full = true;
    for (const auto& layer : k.layers)
        for (const auto* side : {&layer.kernel, &layer.cokernel})
            for (const auto& piece : *side) {
                json p = {{"level", layer.level}, {"side", side == &layer.kernel ? "kernel" : "cokernel"}};
                if (piece.is_full()) {
                    p.update(lift_to_json(lift_count(g, piece, pt, cfg.limits)));
                } else {
                    all_full = false;
                    if (pt.dim_w == 0) {
                        p["witness"] = nullptr;
                    } else {
                        const auto w = sub_falsifier(piece, pt, cfg.max_degree, cfg.limits);
                        p["witness"] = w ? sub_witness_to_json(*w, piece, pt.dim_w) : json(nullptr);
                    }
                }
                pieces.push_back(p);
            }
    out["pieces"] = pieces;
    if (all_full)
        out["rho"] = rho_to_json(rho_check(k, pt, cfg.max_degree, cfg.limits));

    if (cfg.json_output) {
        emit(out);
        return kOk;
    }
    std::cout << "point: dim=" << pt.dim_w << " psi=" << matrix_to_json(pt.psi()).dump()
              << " (orbit of " << pt.orbit.members.size() << ")\n";
    std::cout << "base centre: " << (out["base_centre"].get<bool>() ? "yes" : "no")
              << ", functor oracle (probe " << cfg.probe_dim
              << "): " << (out["functor_oracle"].get<bool>() ? "yes" : "no") << '\n';
    for (const auto& p : pieces) {
        std::cout << "level " << p["level"] << ' ' << p["side"].get<std::string>() << " piece: ";
        if (p.contains("lifts"))
            std::cout << "lifts=" << p["lifts"] << '\n';
        else
            std::cout << "witness=" << p["witness"].dump() << '\n';
    }
    if (all_full) {
        std::cout << "rho dims (T vs K):";
        for (const auto& d : out["rho"]["per_degree"])
            std::cout << ' ' << d["lhs"] << '/' << d["rhs"];
        std::cout << '\n';
    }
    std::cout << (out["central"].get<bool>() ? "central" : "not central") << '\n';
    return kOk;
}

int cmd_comodule(const RunConfig& cfg)
{
    LayeredAlgebra k;
    if (!load_valid(cfg, k))
        return kInvalid;
    const CoactionSpec spec = coaction_from_json(read_json_file(cfg.coaction), k);
    const VarNames ambient = k.ambient_embedding ? k.ambient_embedding->var_names : k.base_names;
    const AxiomReport axioms = check_axioms(spec.base, cfg.max_degree);
    const RestrictionReport restr = check_restriction(k, spec.base, cfg.max_degree, spec.pieces, cfg.limits);

    json out = {{"axioms", axioms_to_json(axioms, ambient)}, {"restriction", restriction_to_json(restr)}};
    // The point behind an affine coaction, and whether centre accepts it. Reported
    // side by side; neither is inferred from the other.
    if (const auto f = affine_point(spec.base); f && f->rows() == k.base_dim) {
        const SKPoint pt = make_point(k.subgroup(), *f);
        out["point_central"] = ck(k, k.depth(), pt, cfg.max_degree, cfg.limits);
    }

    if (cfg.json_output) {
        emit(out);
        return kOk;
    }
    std::cout << "axioms: " << (axioms.ok() ? "ok" : "FAILED") << '\n';
    for (const auto& a : axioms.failures)
        std::cout << "  " << a.axiom << " at " << format(a.witness, ambient) << '\n';
    std::cout << "restriction: " << (restr.passed() ? "passes" : "fails") << '\n';
    for (const auto& w : restr.witnesses)
        std::cout << "  " << w.kind << ": " << w.text << '\n';
    if (out.contains("point_central"))
        std::cout << "point central: " << (out["point_central"].get<bool>() ? "yes" : "no") << '\n';
    return kOk;
}

int cmd_validate(const RunConfig& cfg)
{
    const LayeredAlgebra k = load_presentation(cfg.input, cfg.limits);
    const auto report = validate(k, cfg.max_degree, cfg.limits);
    if (cfg.json_output) {
        emit(validation_to_json(report));
    } else if (report.ok()) {
        std::cout << "valid\n";
    } else {
        for (const auto& d : report.failures)
            std::cout << d.code << ": " << d.message << '\n';
    }
    return report.ok() ? kOk : kInvalid;
}

int cmd_invariants(const RunConfig& cfg)
{
    Subgroup g = trivial_group(cfg.dim);
    if (cfg.group == "GL2" || cfg.group == "GL") {
        std::vector<F2Matrix> gens;
        for (const auto& m : enumerate_maps(cfg.dim, cfg.dim, cfg.limits))
            if (is_invertible(m))
                gens.push_back(m);
        g = group_closure(cfg.dim, gens, cfg.limits);
    } else if (cfg.group == "B2") {
        if (cfg.dim != 2)
            throw Error("B2 acts on dimension 2");
        const F2Matrix b = F2Matrix::from_rows({{1, 1}, {0, 1}});
        g = group_closure(2, std::span<const F2Matrix>(&b, 1), cfg.limits);
    } else if (cfg.group != "trivial") {
        throw Error("unknown group " + cfg.group + " (trivial, B2, GL)");
    }
    const auto bases = invariants_upto(g, cfg.max_degree, cfg.limits);
    const VarNames names = default_var_names(cfg.dim);
    if (cfg.json_output) {
        json dims = json::array(), bs = json::array();
        for (const auto& b : bases) {
            dims.push_back(b.size());
            json row = json::array();
            for (const auto& p : b)
                row.push_back(format(p, names));
            bs.push_back(row);
        }
        emit({{"group_order", g.order()}, {"dims", dims}, {"bases", bs}});
        return kOk;
    }
    std::cout << "|G| = " << g.order() << '\n';
    for (std::size_t d = 0; d < bases.size(); ++d) {
        std::cout << "degree " << d << ": dim " << bases[d].size();
        std::string sep = "  {";
        for (const auto& p : bases[d]) {
            std::cout << sep << format(p, names);
            sep = ", ";
        }
        std::cout << (bases[d].empty() ? "" : "}") << '\n';
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Central elements of layered unstable algebras over the mod-2 Steenrod algebra"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--max-degree", cfg.max_degree, "truncation degree")->capture_default_str();
        sub->add_flag("--json", cfg.json_output, "machine-readable output");
        sub->add_option("--cap-hom-bits", cfg.limits.hom_bits, "largest Hom-set enumerated, in bits")
            ->capture_default_str();
        sub->add_option("--cap-group-order", cfg.limits.group_order, "largest group closed")
            ->capture_default_str();
    };

    auto* centre_cmd = app.add_subcommand("centre", "compute C_k(K) and C(K)");
    centre_cmd->add_option("input", cfg.input, "presentation JSON")->required()->check(CLI::ExistingFile);
    centre_cmd->add_option("--max-dim", cfg.max_dim_w, "largest dim W swept")->capture_default_str()
        ->check(CLI::Range(1, 8));
    common(centre_cmd);

    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force checks for one point");
    oracle_cmd->add_option("input", cfg.input, "presentation JSON")->required()->check(CLI::ExistingFile);
    oracle_cmd->add_option("--pair", cfg.pair, "point, e.g. \"dim=1;psi=[[1],[0]]\"")->required();
    oracle_cmd->add_option("--probe-dim", cfg.probe_dim, "largest probe space")->capture_default_str();
    common(oracle_cmd);

    auto* comodule_cmd = app.add_subcommand("comodule", "check a coaction and its restriction to K");
    comodule_cmd->add_option("input", cfg.input, "presentation JSON")->required()->check(CLI::ExistingFile);
    comodule_cmd->add_option("coaction", cfg.coaction, "coaction JSON")->required()->check(CLI::ExistingFile);
    common(comodule_cmd);

    auto* validate_cmd = app.add_subcommand("validate", "check a presentation");
    validate_cmd->add_option("input", cfg.input, "presentation JSON")->required()->check(CLI::ExistingFile);
    common(validate_cmd);

    auto* inv_cmd = app.add_subcommand("invariants", "degreewise invariants of a group");
    inv_cmd->add_option("--dim", cfg.dim, "dimension of U")->capture_default_str()->check(CLI::Range(0, 8));
    inv_cmd->add_option("--group", cfg.group, "trivial, B2 or GL")->capture_default_str();
    common(inv_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        if (*centre_cmd)
            return cmd_centre(cfg);
        if (*oracle_cmd)
            return cmd_oracle(cfg);
        if (*comodule_cmd)
            return cmd_comodule(cfg);
        if (*validate_cmd)
            return cmd_validate(cfg);
        if (*inv_cmd)
            return cmd_invariants(cfg);
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return kCap;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    }
    return kInvalid;
}
