#include "compoly/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "compoly/compose_bi.hpp"
#include "compoly/compose_uni.hpp"
#include "compoly/error.hpp"
#include "compoly/field.hpp"
#include "compoly/homog.hpp"
#include "compoly/newton_puiseux.hpp"
#include "compoly/parser.hpp"

namespace compoly {

namespace {

using nlohmann::json;

// ---- session flags ---------------------------------------------------------

struct Opts {
    std::string field = "rational";
    std::string trunc = "4";
    long seed = 0;
    std::string format = "text";
    std::string outfile;
    std::string budget = "1048576";
    std::string kind;
    std::vector<std::string> polys;
};

Int parse_budget(const std::string& s) {
    try {
        Int b(s, 10);
        if (b <= 0) throw std::invalid_argument("not positive");
        return b;
    } catch (const std::exception&) {
        fail(Errc::UsageError, "--budget must be a positive integer (got '" + s + "')");
    }
}

FieldConfig parse_field(const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t colon = s.find(':', start);
        parts.push_back(s.substr(start, colon - start));
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    try {
        if (parts[0] == "rational" && parts.size() == 1) return FieldConfig::rational();
        if (parts[0] == "cyclo" && parts.size() == 2)
            return FieldConfig::cyclotomic(std::stol(parts[1]));
        if (parts[0] == "finite" && (parts.size() == 2 || parts.size() == 3))
            return FieldConfig::finite(Int(parts[1], 10),
                                       parts.size() == 3 ? std::stol(parts[2]) : 1);
    } catch (const std::exception&) {
        // falls through to the usage error
    }
    fail(Errc::UsageError,
         "--field must be one of: rational, cyclo:N, finite:p[:e] (got '" + s + "')");
}

Rat parse_trunc(const std::string& s) {
    Rat T;
    try {
        T = Rat(s, 10);
        if (T.get_den() == 0) throw std::invalid_argument("zero denominator");
        T.canonicalize();
    } catch (const std::exception&) {
        fail(Errc::UsageError, "--trunc must be an integer or a fraction like 8/3 (got '" + s +
                                   "')");
    }
    if (T <= 0) fail(Errc::UsageError, "--trunc must be positive");
    return T;
}

// ---- serialization ---------------------------------------------------------

json series_json(const PuiseuxSeries& s) {
    PuiseuxSeries n = s.normalized();
    json terms = json::array();
    for (const auto& [num, coeff] : n.terms())
        terms.push_back({{"num", num}, {"den", n.ramification()}, {"coeff", coeff.to_string()}});
    json trunc;
    if (n.truncation().is_finite()) trunc = rat_to_string(n.truncation().value());
    return {{"ramification", n.ramification()}, {"truncation", trunc}, {"terms", terms}};
}

json upoly_json(const UnivariatePoly& f) {
    json terms = json::array();
    for (long k = 0; k <= f.deg(); ++k)
        if (!f.coeff(k).is_zero())
            terms.push_back({{"exp", k}, {"coeff", f.coeff(k).to_string()}});
    return {{"terms", terms}};
}

json bipoly_json(const BivariatePoly& f) {
    json terms = json::array();
    for (const auto& [key, coeff] : f.terms())
        terms.push_back({{"x", key.first}, {"y", key.second}, {"coeff", coeff.to_string()}});
    return {{"terms", terms}};
}

json composed_json(const ComposedResult& r) {
    json out;
    if (r.exact) out["exact"] = bipoly_json(*r.exact);
    json expanded = json::array();
    for (const PuiseuxSeries& s : r.expanded) expanded.push_back(series_json(s));
    out["expanded"] = expanded;
    json factored = json::array();
    for (const PuiseuxSeries& s : r.factored) factored.push_back(series_json(s));
    out["factored"] = factored;
    return out;
}

json homog_json(const HomogeneousElement& e) {
    return {{"poly", bipoly_json(e.poly)},
            {"associated", upoly_json(e.associated)},
            {"degree", e.degree}};
}

const char* membership_str(Membership m) {
    switch (m) {
        case Membership::not_member: return "not_member";
        case Membership::in_Mh: return "in_Mh";
        case Membership::in_Mhmin: return "in_Mhmin";
    }
    return "?";
}

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

void emit_composed(std::ostream& out, const std::string& format, const ComposedResult& r) {
    if (format == "json") {
        emit_json(out, composed_json(r));
        return;
    }
    if (format == "text") {
        if (r.exact) {
            out << "exact: " << r.exact->to_string() << "\n";
        } else {
            for (std::size_t j = 0; j < r.expanded.size(); ++j)
                out << "y^" << j << " coefficient: " << r.expanded[j].to_string() << "\n";
        }
    }
    for (const PuiseuxSeries& s : r.factored)
        out << (format == "text" ? "factor: " : "") << s.to_string() << "\n";
}

// ---- command bodies --------------------------------------------------------

void run_expand(const Opts& o, const FieldCtx& ctx, const Rat& T, std::ostream& out) {
    BivariatePoly f = to_bivariate(parse_poly(o.polys[0], ctx));
    BranchSet b = expand_branches({f, T});
    if (o.format == "json") {
        json branches = json::array();
        for (const auto& [series, mult] : b.branches)
            branches.push_back({{"multiplicity", mult}, {"series", series_json(series)}});
        emit_json(out, {{"branches", branches}});
        return;
    }
    for (const auto& [series, mult] : b.branches) {
        if (o.format == "text") {
            out << "branch: " << series.to_string();
            if (mult > 1) out << "  (multiplicity " << mult << ")";
            out << "\n";
        } else {
            for (long k = 0; k < mult; ++k) out << series.to_string() << "\n";
        }
    }
}

void run_composed(const std::string& cmd, const Opts& o, const FieldCtx& ctx, const Rat& T,
                  std::ostream& out) {
    BivariatePoly f = to_bivariate(parse_poly(o.polys[0], ctx));
    BivariatePoly g = to_bivariate(parse_poly(o.polys[1], ctx));
    ComposedResult r = cmd == "csum"   ? composed_sum(f, g, T)
                       : cmd == "cmul" ? composed_mul(f, g, T)
                                       : composed_product(f, g, T);
    emit_composed(out, o.format, r);
}

void run_uni(const std::string& cmd, const Opts& o, const FieldCtx& ctx, std::ostream& out) {
    UnivariatePoly f = to_univariate(parse_poly(o.polys[0], ctx));
    UnivariatePoly g = to_univariate(parse_poly(o.polys[1], ctx));
    UnivariatePoly r = composed_uni(f, g,
                                    cmd == "uni-csum" ? DiamondKind::addition
                                                      : DiamondKind::multiplication);
    if (o.format == "json")
        emit_json(out, upoly_json(r));
    else
        out << r.to_string() << "\n";
}

void run_uni_decompose(const Opts& o, const FieldCtx& ctx, std::ostream& out) {
    DiamondKind kind = o.kind == "sum" ? DiamondKind::addition : DiamondKind::multiplication;
    UnivariatePoly f = to_univariate(parse_poly(o.polys[0], ctx));
    DecompositionResult d = decompose_uni(f, kind, parse_budget(o.budget));
    if (o.format == "json") {
        json factors = json::array();
        for (const UnivariatePoly& g : d.factors) factors.push_back(upoly_json(g));
        json alternates = json::array();
        for (const auto& alt : d.alternates) {
            json fs = json::array();
            for (const UnivariatePoly& g : alt.factors) fs.push_back(upoly_json(g));
            json units = json::array();
            for (const FieldElement& u : alt.units) units.push_back(u.to_string());
            alternates.push_back(
                {{"factors", fs}, {"permutation", alt.permutation}, {"units", units}});
        }
        emit_json(out, {{"factors", factors}, {"alternates", alternates}});
        return;
    }
    for (const UnivariatePoly& g : d.factors)
        out << (o.format == "text" ? "factor: " : "") << g.to_string() << "\n";
    if (o.format == "text") out << "alternates: " << d.alternates.size() << "\n";
}

void run_homog_compose(const Opts& o, const FieldCtx& ctx, std::ostream& out) {
    HomogeneousElement f = homog_element(to_bivariate(parse_poly(o.polys[0], ctx)));
    HomogeneousElement g = homog_element(to_bivariate(parse_poly(o.polys[1], ctx)));
    HomogeneousElement r = homog_compose(f, g);
    if (o.format == "json")
        emit_json(out, homog_json(r));
    else
        out << r.poly.to_string() << "\n";
}

void run_homog_decompose(const Opts& o, const FieldCtx& ctx, std::ostream& out) {
    HomogeneousElement F = homog_element(to_bivariate(parse_poly(o.polys[0], ctx)));
    HomogDecomposition d = homog_decompose(F, parse_budget(o.budget));
    if (o.format == "json") {
        json factors = json::array();
        for (const HomogeneousElement& e : d.factors) factors.push_back(homog_json(e));
        json alternates = json::array();
        for (const auto& alt : d.alternates) {
            json fs = json::array();
            for (const HomogeneousElement& e : alt.factors) fs.push_back(homog_json(e));
            json units = json::array();
            for (const FieldElement& u : alt.units) units.push_back(u.to_string());
            alternates.push_back(
                {{"factors", fs}, {"permutation", alt.permutation}, {"units", units}});
        }
        emit_json(out, {{"factors", factors}, {"alternates", alternates}});
        return;
    }
    for (const HomogeneousElement& e : d.factors)
        out << (o.format == "text" ? "factor: " : "") << e.poly.to_string() << "\n";
    if (o.format == "text") out << "alternates: " << d.alternates.size() << "\n";
}

void run_associate_check(const Opts& o, const FieldCtx& ctx, std::ostream& out) {
    HomogeneousElement f = homog_element(to_bivariate(parse_poly(o.polys[0], ctx)));
    HomogeneousElement g = homog_element(to_bivariate(parse_poly(o.polys[1], ctx)));
    std::optional<FieldElement> w = is_associate(f, g);
    if (o.format == "json")
        emit_json(out, {{"witness", w ? json(w->to_string()) : json()}});
    else
        out << "witness: " << (w ? w->to_string() : "none") << "\n";
}

void run_membership(const Opts& o, const FieldCtx& ctx, std::ostream& out) {
    Membership m = membership(to_bivariate(parse_poly(o.polys[0], ctx)));
    if (o.format == "json")
        emit_json(out, {{"membership", membership_str(m)}});
    else
        out << membership_str(m) << "\n";
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact composed sums, multiplications, and products of polynomials", "compoly"};
    app.require_subcommand(1);

    Opts o;
    auto common = [&](CLI::App* sub, std::size_t npolys) {
        sub->add_option("--field", o.field,
                        "coefficient field: rational, cyclo:N, or finite:p[:e]");
        sub->add_option("--trunc", o.trunc,
                        "series truncation order, an integer or fraction (default 4)");
        sub->add_option("--seed", o.seed,
                        "seed for randomized subroutines (COMPOLY_SEED overrides)");
        sub->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"text", "json", "factored"}));
        sub->add_option("--out", o.outfile, "write the result to this file instead of stdout");
        if (npolys > 0)
            sub->add_option("poly", o.polys, "polynomial expression")
                ->required()
                ->expected(static_cast<int>(npolys));
        return sub;
    };

    common(app.add_subcommand("expand", "Puiseux branches of a polynomial monic in y"), 1);
    common(app.add_subcommand("csum", "composed sum: branches are pairwise sums"), 2);
    common(app.add_subcommand("cmul", "composed multiplication: branches are pairwise products"),
           2);
    common(app.add_subcommand("cprod", "composed product: branches are pairwise substitutions"),
           2);
    common(app.add_subcommand("uni-csum", "composed sum of univariate polynomials"), 2);
    common(app.add_subcommand("uni-cmul", "composed multiplication of univariate polynomials"),
           2);
    CLI::App* unidec =
        common(app.add_subcommand("uni-decompose",
                                  "factor a univariate polynomial under a composed operation"),
               0);
    unidec->add_option("--budget", o.budget,
                       "candidate limit for the decomposition search (default 2^20)");
    unidec->add_option("kind", o.kind, "composed operation")
        ->required()
        ->check(CLI::IsMember({"sum", "mul"}));
    unidec->add_option("poly", o.polys, "polynomial expression")->required()->expected(1);
    common(app.add_subcommand("homog-compose", "composed product of homogeneous polynomials"),
           2);
    common(app.add_subcommand("homog-decompose",
                              "decompose a homogeneous polynomial under the composed product"),
           1)
        ->add_option("--budget", o.budget,
                     "candidate limit for the decomposition search (default 2^20)");
    common(app.add_subcommand("associate-check",
                              "find the unit y - ax relating two homogeneous polynomials"),
           2);
    common(app.add_subcommand("membership", "classify a homogeneous polynomial"), 1);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err); // --help and friends
    } catch (const CLI::ParseError& e) {
        // usage errors list the valid flags of the scope that rejected them
        err << e.what() << "\n\n";
        const CLI::App* scope =
            app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << scope->help();
        return 2;
    }

    if (const char* env_seed = std::getenv("COMPOLY_SEED")) {
        try {
            o.seed = std::stol(env_seed);
        } catch (const std::exception&) {
            err << "UsageError: COMPOLY_SEED must be an integer\n";
            return 2;
        }
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        FieldCtx ctx = FieldContext::make(parse_field(o.field));
        Rat T = parse_trunc(o.trunc);

        std::ostringstream buf;
        if (cmd == "expand")
            run_expand(o, ctx, T, buf);
        else if (cmd == "csum" || cmd == "cmul" || cmd == "cprod")
            run_composed(cmd, o, ctx, T, buf);
        else if (cmd == "uni-csum" || cmd == "uni-cmul")
            run_uni(cmd, o, ctx, buf);
        else if (cmd == "uni-decompose")
            run_uni_decompose(o, ctx, buf);
        else if (cmd == "homog-compose")
            run_homog_compose(o, ctx, buf);
        else if (cmd == "homog-decompose")
            run_homog_decompose(o, ctx, buf);
        else if (cmd == "associate-check")
            run_associate_check(o, ctx, buf);
        else
            run_membership(o, ctx, buf);

        if (!o.outfile.empty()) {
            std::ofstream file(o.outfile, std::ios::binary);
            if (!file) fail(Errc::UsageError, "cannot open --out file '" + o.outfile + "'");
            file << buf.str();
        } else {
            out << buf.str();
        }
        return 0;
    } catch (const Error& e) {
        err << e.what() << "\n";
        bool usage = e.code() == Errc::UsageError || e.code() == Errc::SyntaxError ||
                     e.code() == Errc::NonPolynomial;
        return usage ? 2 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace compoly
