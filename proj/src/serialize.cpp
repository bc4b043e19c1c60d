#include "nilc/serialize.hpp"

#include <algorithm>
#include <fstream>

#include "nilc/errors.hpp"

namespace nilc {

namespace {

const json& field(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key))
        throw ParseError(where + ": missing \"" + key + "\"");
    return j.at(key);
}

std::size_t count_field(const json& j, const char* key, const std::string& where)
{
    const json& v = field(j, key, where);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ParseError(where + "." + key + ": expected a non-negative integer");
    return v.get<std::size_t>();
}

VarNames names_field(const json& j, std::size_t n, const std::string& where, VarNames fallback)
{
    if (!j.contains("variables"))
        return fallback;
    const json& v = j.at("variables");
    if (!v.is_array())
        throw ParseError(where + ".variables: expected an array of names");
    VarNames names;
    for (const auto& s : v) {
        if (!s.is_string())
            throw ParseError(where + ".variables: expected strings");
        names.push_back(s.get<std::string>());
    }
    if (names.size() != n)
        throw ParseError(where + ".variables: expected " + std::to_string(n) + " names");
    return names;
}

Polynomial poly_field(const json& j, const VarNames& names, const std::string& where)
{
    if (!j.is_string())
        throw ParseError(where + ": expected a polynomial string");
    try {
        return parse_polynomial(j.get<std::string>(), names);
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
    }
}

InducedModule piece_from_json(const json& j, std::size_t u_dim, const std::string& where)
{
    InducedModule m;
    m.suspension = static_cast<unsigned>(count_field(j, "suspension", where));
    m.source_dim = count_field(j, "source_dim", where);
    if (m.source_dim > kMaxVars)
        throw ParseError(where + ".source_dim: at most " + std::to_string(kMaxVars));
    m.gamma = matrix_from_json(field(j, "gamma", where), u_dim, m.source_dim, where + ".gamma");
    m.var_names = names_field(j, m.source_dim, where, default_var_names(m.source_dim));
    const json& kind = field(j, "kind", where);
    if (kind.is_string() && kind.get<std::string>() == "full") {
        m.kind = PieceKind::Full;
    } else if (kind.is_object() && kind.contains("sub")) {
        m.kind = PieceKind::Sub;
        const json& gens = field(kind.at("sub"), "generators", where + ".kind.sub");
        if (!gens.is_array())
            throw ParseError(where + ".kind.sub.generators: expected an array");
        for (std::size_t i = 0; i < gens.size(); ++i)
            m.generators.push_back(
                poly_field(gens[i], m.var_names, where + ".kind.sub.generators[" + std::to_string(i) + "]"));
    } else {
        throw ParseError(where + ".kind: expected \"full\" or {\"sub\": {...}}");
    }
    return m;
}

}  // namespace

F2Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const std::string& where)
{
    if (!j.is_array() || j.size() != rows)
        throw ParseError(where + ": expected " + std::to_string(rows) + " rows");
    if (rows > F2Matrix::kMaxDim || cols > F2Matrix::kMaxDim)
        throw ParseError(where + ": matrices are limited to " + std::to_string(F2Matrix::kMaxDim) +
                         " rows and columns");
    F2Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw ParseError(where + "[" + std::to_string(r) + "]: expected " + std::to_string(cols) +
                             " entries");
        for (std::size_t c = 0; c < cols; ++c) {
            const json& e = j[r][c];
            if (!e.is_number_integer() || (e.get<int>() != 0 && e.get<int>() != 1))
                throw ParseError(where + "[" + std::to_string(r) + "][" + std::to_string(c) +
                                 "]: entries must be 0 or 1");
            m.set(r, c, e.get<int>() == 1);
        }
    }
    return m;
}

json matrix_to_json(const F2Matrix& m)
{
    json rows = json::array();
    for (const auto& r : m.to_rows())
        rows.push_back(r);
    return rows;
}

LayeredAlgebra presentation_from_json(const json& j, const Limits& limits)
{
    const json& base = field(j, "base", "");
    const std::size_t dim = count_field(base, "dim", "base");
    if (dim > kMaxVars)
        throw ParseError("base.dim: at most " + std::to_string(kMaxVars));
    std::vector<F2Matrix> gens;
    if (base.contains("group_generators")) {
        const json& g = base.at("group_generators");
        if (!g.is_array())
            throw ParseError("base.group_generators: expected an array of matrices");
        for (std::size_t i = 0; i < g.size(); ++i)
            gens.push_back(matrix_from_json(g[i], dim, dim, "base.group_generators[" + std::to_string(i) + "]"));
    }
    const VarNames base_names = names_field(base, dim, "base", default_var_names(dim));

    std::vector<Layer> layers;
    if (j.contains("layers")) {
        const json& ls = j.at("layers");
        if (!ls.is_array())
            throw ParseError("layers: expected an array");
        for (std::size_t i = 0; i < ls.size(); ++i) {
            const std::string where = "layers[" + std::to_string(i) + "]";
            Layer layer;
            layer.level = static_cast<unsigned>(count_field(ls[i], "level", where));
            for (const char* side : {"kernel", "cokernel"}) {
                if (!ls[i].contains(side))
                    continue;
                const json& ps = ls[i].at(side);
                if (!ps.is_array())
                    throw ParseError(where + "." + side + ": expected an array");
                auto& out = std::string(side) == "kernel" ? layer.kernel : layer.cokernel;
                for (std::size_t p = 0; p < ps.size(); ++p)
                    out.push_back(piece_from_json(ps[p], dim, where + "." + side + "[" + std::to_string(p) + "]"));
            }
            layers.push_back(std::move(layer));
        }
    }

    std::optional<AmbientEmbedding> emb;
    if (j.contains("ambient_embedding")) {
        const json& e = j.at("ambient_embedding");
        AmbientEmbedding a;
        a.dim = count_field(e, "dim", "ambient_embedding");
        if (a.dim > kMaxVars)
            throw ParseError("ambient_embedding.dim: at most " + std::to_string(kMaxVars));
        a.var_names = names_field(e, a.dim, "ambient_embedding",
                                  a.dim == dim ? base_names : default_var_names(a.dim));
        const json& g = field(e, "generators", "ambient_embedding");
        if (!g.is_array())
            throw ParseError("ambient_embedding.generators: expected an array");
        for (std::size_t i = 0; i < g.size(); ++i)
            a.generators.push_back(
                poly_field(g[i], a.var_names, "ambient_embedding.generators[" + std::to_string(i) + "]"));
        emb = std::move(a);
    }
    return make_layered_algebra(dim, std::move(gens), std::move(layers), std::move(emb), base_names, limits);
}

json presentation_to_json(const LayeredAlgebra& k)
{
    json base = {{"dim", k.base_dim}, {"variables", k.base_names}};
    json gens = json::array();
    for (const auto& g : k.group_generators)
        gens.push_back(matrix_to_json(g));
    base["group_generators"] = gens;
    auto piece_json = [](const InducedModule& m) {
        json p = {{"suspension", m.suspension},
                  {"source_dim", m.source_dim},
                  {"gamma", matrix_to_json(m.gamma)},
                  {"variables", m.var_names}};
        if (m.is_full()) {
            p["kind"] = "full";
        } else {
            json g = json::array();
            for (const auto& q : m.generators)
                g.push_back(format(q, m.var_names));
            p["kind"] = {{"sub", {{"generators", g}}}};
        }
        return p;
    };
    json layers = json::array();
    for (const auto& l : k.layers) {
        json ker = json::array(), coker = json::array();
        for (const auto& m : l.kernel)
            ker.push_back(piece_json(m));
        for (const auto& m : l.cokernel)
            coker.push_back(piece_json(m));
        layers.push_back({{"level", l.level}, {"kernel", ker}, {"cokernel", coker}});
    }
    json out = {{"base", base}, {"layers", layers}};
    if (k.ambient_embedding) {
        const auto& e = *k.ambient_embedding;
        json g = json::array();
        for (const auto& q : e.generators)
            g.push_back(format(q, e.var_names));
        out["ambient_embedding"] = {{"dim", e.dim}, {"variables", e.var_names}, {"generators", g}};
    }
    return out;
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

LayeredAlgebra load_presentation(const std::string& path, const Limits& limits)
{
    try {
        return presentation_from_json(read_json_file(path), limits);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

CoactionSpec coaction_from_json(const json& j, const LayeredAlgebra& k)
{
    const std::size_t n = k.ambient_embedding ? k.ambient_embedding->dim : k.base_dim;
    const VarNames ambient = k.ambient_embedding ? k.ambient_embedding->var_names : k.base_names;
    CoactionSpec spec;
    if (j.contains("point")) {
        const json& p = j.at("point");
        if (!p.is_array() || p.size() != n || !p[0].is_array())
            throw ParseError("point: expected a matrix with " + std::to_string(n) + " rows");
        const F2Matrix f = matrix_from_json(p, n, p[0].size(), "point");
        VarNames coef;
        if (j.contains("coefficients"))
            coef = j.at("coefficients").get<VarNames>();
        spec.base = coaction_from_point(n, f, coef);
        return spec;
    }
    const VarNames coef = field(j, "coefficients", "").get<VarNames>();
    auto read_images = [&](const json& imgs, const VarNames& names, const std::string& where) {
        if (!imgs.is_object())
            throw ParseError(where + ": expected an object from variable names to images");
        VarNames all = names;
        all.insert(all.end(), coef.begin(), coef.end());
        Coaction c;
        c.ambient_vars = names.size();
        c.coefficient_vars = coef.size();
        c.coefficient_names = coef;
        for (std::size_t i = 0; i < names.size(); ++i)
            c.images.push_back(imgs.contains(names[i])
                                   ? poly_field(imgs.at(names[i]), all, where + "." + names[i])
                                   : Polynomial::var(all.size(), i));
        for (const auto& [key, val] : imgs.items())
            if (std::find(names.begin(), names.end(), key) == names.end())
                throw ParseError(where + ": unknown variable " + key);
        return c;
    };
    spec.base = read_images(field(j, "images", ""), ambient, "images");
    if (j.contains("piece_images")) {
        const Layer* layer = k.layer(1);
        const json& ps = j.at("piece_images");
        if (!layer || !ps.is_array() || ps.size() != layer->kernel.size())
            throw ParseError("piece_images: expected one entry per level-1 kernel piece");
        for (std::size_t i = 0; i < ps.size(); ++i)
            spec.pieces.push_back(
                read_images(ps[i], layer->kernel[i].var_names, "piece_images[" + std::to_string(i) + "]"));
    }
    return spec;
}

F2Matrix parse_pair(const std::string& text, std::size_t u_dim)
{
    const auto semi = text.find(';');
    if (semi == std::string::npos || text.rfind("dim=", 0) != 0 ||
        text.compare(semi + 1, 4, "psi=") != 0)
        throw ParseError("pair must look like \"dim=1;psi=[[1],[0]]\"");
    std::size_t dim = 0;
    try {
        dim = std::stoul(text.substr(4, semi - 4));
    } catch (const std::exception&) {
        throw ParseError("pair: bad dim");
    }
    json m;
    try {
        m = json::parse(text.substr(semi + 5));
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("pair: ") + e.what());
    }
    if (dim == 0)
        return F2Matrix(u_dim, 0);
    return matrix_from_json(m, u_dim, dim, "psi");
}

json vector_to_json(Vec v, std::size_t dim)
{
    json out = json::array();
    for (std::size_t i = 0; i < dim; ++i)
        out.push_back((v >> i) & 1u);
    return out;
}

json centre_to_json(const CentreDescription& c)
{
    json out;
    switch (c.mode) {
    case CentreMode::TrivialOnly:
        out["mode"] = "trivial_only";
        break;
    case CentreMode::Subspace: {
        out["mode"] = "subspace";
        json basis = json::array();
        for (Vec z : c.z_basis)
            basis.push_back(vector_to_json(z, c.u_dim));
        out["basis"] = basis;
        break;
    }
    case CentreMode::Inconclusive: {
        out["mode"] = "inconclusive";
        json acc = json::array();
        for (const auto& pt : c.raw_accepted)
            acc.push_back({{"dim", pt.dim_w}, {"psi", matrix_to_json(pt.psi())}});
        out["accepted"] = acc;
        break;
    }
    }
    out["description"] = describe(c);
    return out;
}

json centre_result_to_json(const CentreResult& r)
{
    json out = centre_to_json(r.centre);
    json levels = json::array();
    for (const auto& e : r.per_level) {
        json l = centre_to_json(e.set);
        l["level"] = e.level;
        l["header_reading"] = centre_to_json(e.header_reading);
        levels.push_back(l);
    }
    out["per_level"] = levels;
    out["points_examined"] = r.points.size();
    return out;
}

json validation_to_json(const ValidationReport& r)
{
    json f = json::array();
    for (const auto& d : r.failures)
        f.push_back({{"code", d.code}, {"message", d.message}});
    return {{"valid", r.ok()}, {"failures", f}};
}

json rho_to_json(const RhoReport& r)
{
    json pd = json::array();
    for (const auto& c : r.per_degree)
        pd.push_back({{"d", c.degree}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"ok", c.ok()}});
    return {{"per_degree", pd}, {"lift_counts", r.lift_counts}, {"all_equal", r.all_equal()}};
}

json lift_to_json(const LiftReport& r)
{
    json ls = json::array();
    for (const auto& f : r.lifts)
        ls.push_back(matrix_to_json(f));
    return {{"lifts", r.count()}, {"maps", ls}};
}

json sub_witness_to_json(const SubWitness& w, const InducedModule& piece, std::size_t dim_w)
{
    if (w.kind == SubWitness::Kind::NoLift) {
        return {{"kind", "no_lift"}, {"form", vector_to_json(w.form, piece.gamma.rows())}};
    }
    VarNames all = piece.var_names;
    const VarNames coef = default_coefficient_names(dim_w);
    all.insert(all.end(), coef.begin(), coef.end());
    return {{"kind", "non_unique"},
            {"alpha", matrix_to_json(w.alpha)},
            {"generator", format(w.generator, piece.var_names)},
            {"difference", format(w.difference, all)}};
}

json axioms_to_json(const AxiomReport& r, const VarNames& ambient)
{
    json f = json::array();
    for (const auto& a : r.failures)
        f.push_back({{"axiom", a.axiom}, {"witness", format(a.witness, ambient)}});
    return {{"ok", r.ok()}, {"failures", f}};
}

json restriction_to_json(const RestrictionReport& r)
{
    json ws = json::array();
    for (const auto& w : r.witnesses) {
        json e = {{"kind", w.kind}, {"text", w.text}};
        if (w.kind == "module_product")
            e["piece"] = w.piece;
        ws.push_back(e);
    }
    return {{"passed", r.passed()}, {"witnesses", ws}};
}

}  // namespace nilc
