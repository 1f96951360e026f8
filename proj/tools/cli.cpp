#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "keo/keo.hpp"

namespace keo::cli {
namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rational parse_rational(const std::string& flag, const std::string& text)
{
    try {
        return Rational::parse(text);
    } catch (const Error& e) {
        throw UsageError(flag + ": expected an exact rational such as -1/3, got '" + text + "' (" + e.what() + ")");
    }
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string join(const std::vector<std::string>& parts, const char* sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i)
        out += (i ? sep : "") + parts[i];
    return out;
}

/// "name" or "name:k=v,k=v" with rational values.
std::pair<std::string, std::map<std::string, Rational>> parse_named(const std::string& flag, const std::string& text)
{
    const auto colon = text.find(':');
    std::pair<std::string, std::map<std::string, Rational>> out{text.substr(0, colon), {}};
    if (colon == std::string::npos)
        return out;
    std::stringstream rest(text.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw UsageError(flag + ": expected key=value in '" + item + "'");
        out.second[item.substr(0, eq)] = parse_rational(flag, item.substr(eq + 1));
    }
    return out;
}

/// Catalog lookup accepting "MB(-1/3)" or "vR(-1/4,-1/2)".
OrderingSpec catalog_entry(const std::string& text)
{
    const auto open = text.find('(');
    if (open == std::string::npos)
        return catalog::get(text);
    if (text.back() != ')')
        throw UsageError("--name: missing ')' in '" + text + "'");
    std::vector<Rational> args;
    std::stringstream inner(text.substr(open + 1, text.size() - open - 2));
    std::string item;
    while (std::getline(inner, item, ','))
        args.push_back(parse_rational("--name", item));
    return catalog::get(text.substr(0, open), std::span<const Rational>(args));
}

struct OrderingInput {
    std::string name;
    std::string expr;

    void attach(CLI::App* sub)
    {
        sub->add_option("--name", name, "catalog entry, e.g. YY or MB(-1/3)");
        sub->add_option("--expr", expr, "ordering expression, e.g. \"1/2 * p m^(-1) p\"");
    }

    OrderingSpec resolve() const
    {
        if (name.empty() == expr.empty())
            throw UsageError("exactly one of --name or --expr is required");
        if (!name.empty())
            return catalog_entry(name);
        return parse(expr);
    }
};

struct GridInput {
    double x_min = -1.0;
    double x_max = 1.0;
    int n = 100;
    double hbar = 1.0;

    void attach(CLI::App* sub)
    {
        sub->add_option("--xmin", x_min, "left wall")->capture_default_str();
        sub->add_option("--xmax", x_max, "right wall")->capture_default_str();
        sub->add_option("--n", n, "interior grid points")->capture_default_str();
        sub->add_option("--hbar", hbar, "reduced Planck constant")->capture_default_str();
    }

    Grid grid() const { return Grid(x_min, x_max, n); }
};

MassProfile make_profile(const std::string& text)
{
    auto [name, params] = parse_named("--profile", text);
    return profiles::by_name(name, params);
}

PotentialProfile make_potential(const std::string& text)
{
    auto [name, params] = parse_named("--potential", text);
    return potentials::by_name(name, params);
}

Stencil parse_stencil(const std::string& s)
{
    if (s == "central")
        return Stencil::Central;
    if (s == "staggered")
        return Stencil::Staggered;
    throw UsageError("--stencil must be central or staggered, got '" + s + "'");
}

template <class S>
json terms_json(const BasicOrderingSpec<S>& spec)
{
    json terms = json::array();
    for (const auto& b : spec.terms()) {
        terms.push_back({{"weight", scalar_traits<S>::str(b.weight)},
                         {"alpha", scalar_traits<S>::str(b.alpha)},
                         {"beta", scalar_traits<S>::str(b.beta)},
                         {"gamma", scalar_traits<S>::str(b.gamma)}});
    }
    return terms;
}

json labels_json(const Classification& c)
{
    json out = json::array();
    for (const auto& l : c)
        out.push_back({{"region", std::string(to_string(l.region))}, {"boundaries", boundary_names(l.boundaries)}});
    return out;
}

std::string labels_text(const ClassLabel& l)
{
    return std::string(to_string(l.region));
}

json provenance_json(const Provenance& p, double hbar)
{
    return {{"ordering", p.ordering}, {"pathway", to_string(p.pathway)}, {"stencil", to_string(p.stencil)},
            {"profile", p.profile},   {"potential", p.potential},        {"xi", p.xi},
            {"zeta", p.zeta},         {"eta", p.eta},                    {"hbar", hbar}};
}

json grid_json(const Grid& g)
{
    return {{"x_min", g.x_min()}, {"x_max", g.x_max()}, {"n", g.n()}, {"h", g.h()}};
}

struct Options {
    std::string format = "json";
    std::string output;
};

class Emitter {
public:
    explicit Emitter(const Options& o) : options_(o) {}

    bool csv() const { return options_.format == "csv"; }
    std::ostream& stream() { return buffer_; }

    void json_value(const json& j) { buffer_ << j.dump() << '\n'; }

    void flush(std::ostream& out) const
    {
        if (options_.output.empty()) {
            out << buffer_.str();
            return;
        }
        std::ofstream file(options_.output, std::ios::binary);
        if (!file)
            throw UsageError("cannot open output file '" + options_.output + "'");
        file << buffer_.str();
    }

private:
    const Options& options_;
    std::ostringstream buffer_;
};

void cmd_classify(Emitter& e, const Rational& xi, const Rational& zeta)
{
    const auto c = classify(xi, zeta);
    if (e.csv()) {
        e.stream() << "xi,zeta,region,boundaries\n";
        for (const auto& l : c)
            e.stream() << xi.str() << ',' << zeta.str() << ',' << labels_text(l) << ','
                       << join(boundary_names(l.boundaries), ";") << '\n';
        return;
    }
    e.json_value({{"xi", xi.str()}, {"zeta", zeta.str()}, {"labels", labels_json(c)}});
}

void cmd_params(Emitter& e, const OrderingSpec& spec)
{
    const auto p = linear_params(spec);
    if (e.csv()) {
        e.stream() << "xi,zeta,eta\n" << p.xi.str() << ',' << p.zeta.str() << ',' << p.eta.str() << '\n';
        return;
    }
    e.json_value({{"xi", p.xi.str()}, {"zeta", p.zeta.str()}, {"eta", p.eta.str()}});
}

template <class S>
void emit_ordering(Emitter& e, const BasicOrderingSpec<S>& spec, const Rational& xi, const Rational& zeta, Region r)
{
    if (e.csv()) {
        e.stream() << "weight,alpha,beta,gamma\n";
        for (const auto& b : spec.terms()) {
            using T = scalar_traits<S>;
            e.stream() << T::str(b.weight) << ',' << T::str(b.alpha) << ',' << T::str(b.beta) << ','
                       << T::str(b.gamma) << '\n';
        }
        return;
    }
    e.json_value({{"xi", xi.str()},
                  {"zeta", zeta.str()},
                  {"class", std::string(to_string(r))},
                  {"name", spec.name()},
                  {"terms", terms_json(spec)}});
}

void cmd_invert(Emitter& e, const Rational& xi, const Rational& zeta, Region r, bool numeric)
{
    if (numeric)
        emit_ordering(e, invert_numeric(xi, zeta, r), xi, zeta, r);
    else
        emit_ordering(e, invert(xi, zeta, r), xi, zeta, r);
}

void cmd_dual(Emitter& e, const Rational& xi, const Rational& zeta)
{
    const auto d = to_duality(xi, zeta);
    const auto image = dual(d);
    if (e.csv()) {
        e.stream() << "xi,zeta,theta,dual_xi,dual_zeta,dual_theta\n"
                   << xi.str() << ',' << zeta.str() << ',' << d.theta.str() << ',' << image.xi.str() << ','
                   << image.zeta().str() << ',' << image.theta.str() << '\n';
        return;
    }
    e.json_value({{"xi", xi.str()},
                  {"zeta", zeta.str()},
                  {"theta", d.theta.str()},
                  {"dual", {{"xi", image.xi.str()}, {"zeta", image.zeta().str()}, {"theta", image.theta.str()}}}});
}

void cmd_table1(Emitter& e)
{
    json rows = json::array();
    if (e.csv())
        e.stream() << "name,arguments,xi,zeta,eta\n";
    for (const auto& row : catalog::table_rows()) {
        const auto spec = catalog::get(row.name, std::span<const Rational>(row.arguments));
        const auto p = linear_params(spec);
        std::vector<std::string> args;
        for (const auto& a : row.arguments)
            args.push_back(a.str());
        if (e.csv()) {
            e.stream() << row.name << ',' << join(args, ";") << ',' << p.xi.str() << ',' << p.zeta.str() << ','
                       << p.eta.str() << '\n';
        } else {
            rows.push_back({{"name", row.name},
                            {"arguments", args},
                            {"xi", p.xi.str()},
                            {"zeta", p.zeta.str()},
                            {"eta", p.eta.str()},
                            {"terms", terms_json(spec)}});
        }
    }
    if (!e.csv())
        e.json_value(rows);
}

void cmd_region(Emitter& e, int resolution)
{
    const auto samples = region_samples(resolution);
    if (e.csv()) {
        e.stream() << "xi,zeta,region,boundaries\n";
        for (const auto& s : samples)
            for (const auto& l : s.labels)
                e.stream() << s.xi.str() << ',' << s.zeta.str() << ',' << labels_text(l) << ','
                           << join(boundary_names(l.boundaries), ";") << '\n';
        return;
    }
    json rows = json::array();
    for (const auto& s : samples)
        for (const auto& l : s.labels)
            rows.push_back({{"xi", s.xi.str()},
                            {"zeta", s.zeta.str()},
                            {"region", std::string(to_string(l.region))},
                            {"boundaries", boundary_names(l.boundaries)}});
    e.json_value({{"resolution", resolution}, {"rows", rows}});
}

AssembledOperator build_operator(const OrderingSpec& spec, const MassProfile& profile, const GridInput& g,
                                 const std::string& pathway, Stencil stencil)
{
    if (pathway == "terms")
        return assemble_terms(spec, profile, g.grid(), g.hbar, stencil);
    if (pathway == "linear")
        return assemble_linear(linear_params(spec), profile, g.grid(), g.hbar, stencil);
    throw UsageError("--pathway must be terms or linear, got '" + pathway + "'");
}

void cmd_assemble(Emitter& e, const AssembledOperator& op)
{
    if (e.csv()) {
        write_matrix_csv(op.matrix, e.stream());
        return;
    }
    json rows = json::array();
    for (int i = 0; i < op.matrix.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < op.matrix.cols(); ++j)
            row.push_back(op.matrix(i, j));
        rows.push_back(std::move(row));
    }
    e.json_value({{"grid", grid_json(op.grid)},
                  {"hbar", op.hbar},
                  {"provenance", provenance_json(op.provenance, op.hbar)},
                  {"max_asymmetry", max_asymmetry(op.matrix)},
                  {"matrix", rows}});
}

struct DefectRow {
    std::string ordering;
    std::string profile;
    int n;
    double coarse;
    double fine;
};

void cmd_defect(Emitter& e, const std::vector<std::string>& names, const std::vector<std::string>& profile_specs,
                const GridInput& g, Stencil stencil)
{
    std::vector<DefectRow> rows;
    for (const auto& ps : profile_specs) {
        const auto profile = make_profile(ps);
        for (const auto& name : names) {
            const auto spec = catalog_entry(name);
            const Grid coarse(g.x_min, g.x_max, g.n);
            const Grid fine(g.x_min, g.x_max, 2 * g.n);
            const double d1 = equivalence_defect(spec, profile, coarse, g.hbar, bump_test_function(coarse), stencil);
            const double d2 = equivalence_defect(spec, profile, fine, g.hbar, bump_test_function(fine), stencil);
            rows.push_back({name, profile.label(), g.n, d1, d2});
        }
    }
    constexpr double exact = 1e-12;
    const auto ratio = [](const DefectRow& r) -> std::optional<double> {
        if (r.fine <= exact)
            return std::nullopt;
        return r.coarse / r.fine;
    };
    if (e.csv()) {
        e.stream() << "ordering,profile,n,defect_n,defect_2n,ratio,stencil\n";
        for (const auto& r : rows) {
            const auto q = ratio(r);
            e.stream() << csv_field(r.ordering) << ',' << csv_field(r.profile) << ',' << r.n << ',' << fmt(r.coarse)
                       << ',' << fmt(r.fine) << ',' << (q ? fmt(*q) : "") << ',' << to_string(stencil) << '\n';
        }
        return;
    }
    json out = json::array();
    for (const auto& r : rows) {
        const auto q = ratio(r);
        out.push_back({{"ordering", r.ordering},
                       {"profile", r.profile},
                       {"n", r.n},
                       {"defect_n", r.coarse},
                       {"defect_2n", r.fine},
                       {"ratio", q ? json(*q) : json(nullptr)},
                       {"exact", r.coarse <= exact && r.fine <= exact}});
    }
    e.json_value({{"stencil", to_string(stencil)}, {"test_function", "(1-x^2)^2 scaled to the box"}, {"rows", out}});
}

void emit_spectrum(Emitter& e, const SpectrumResult& s, double hbar)
{
    if (e.csv()) {
        e.stream() << "index,eigenvalue\n";
        for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
            e.stream() << i << ',' << fmt(s.eigenvalues[i]) << '\n';
        return;
    }
    e.json_value({{"params", provenance_json(s.provenance, hbar)},
                  {"grid", grid_json(s.grid)},
                  {"eigenvalues", s.eigenvalues},
                  {"max_residual", s.max_residual}});
}

json dual_side_json(const DualSide& s)
{
    return {{"xi", s.xi.str()},
            {"zeta", s.zeta.str()},
            {"class", std::string(to_string(s.region))},
            {"name", s.ordering.name()},
            {"terms", terms_json(s.ordering)},
            {"eigenvalues", s.spectrum.eigenvalues},
            {"max_residual", s.spectrum.max_residual}};
}

void cmd_dualpair(Emitter& e, const DualPairReport& r)
{
    if (e.csv()) {
        e.stream() << "index,vR,I\n";
        for (std::size_t i = 0; i < r.von_roos.spectrum.eigenvalues.size(); ++i)
            e.stream() << i << ',' << fmt(r.von_roos.spectrum.eigenvalues[i]) << ','
                       << fmt(r.class_i.spectrum.eigenvalues[i]) << '\n';
        return;
    }
    e.json_value({{"xi", r.xi.str()},
                  {"theta", r.theta.str()},
                  {"grid", grid_json(r.von_roos.spectrum.grid)},
                  {"profile", r.von_roos.spectrum.provenance.profile},
                  {"potential", r.von_roos.spectrum.provenance.potential},
                  {"vR", dual_side_json(r.von_roos)},
                  {"I", dual_side_json(r.class_i)}});
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app("Kinetic-energy operator orderings for position-dependent mass", "keo");
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "TOML/INI file with the same keys as the flags; flags win");

    Options options;
    app.add_option("--format", options.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--output", options.output, "write the result to this file instead of stdout");

    std::string xi_text, zeta_text, theta_text, class_text;
    const auto add_point = [&](CLI::App* sub, bool need_zeta) {
        sub->add_option("--xi", xi_text, "xi as an exact rational")->required();
        if (need_zeta)
            sub->add_option("--zeta", zeta_text, "zeta as an exact rational")->required();
    };

    auto* classify_cmd = app.add_subcommand("classify", "classes containing (xi, zeta)");
    add_point(classify_cmd, true);

    OrderingInput ordering;
    auto* params_cmd = app.add_subcommand("params", "linear parameters (xi, zeta, eta) of an ordering");
    ordering.attach(params_cmd);

    bool numeric = false;
    auto* invert_cmd = app.add_subcommand("invert", "two-term ordering of a class with given (xi, zeta)");
    add_point(invert_cmd, true);
    invert_cmd->add_option("--class", class_text, "vR, I, II or III")->required();
    invert_cmd->add_flag("--numeric", numeric, "evaluate surds to doubles");

    auto* dual_cmd = app.add_subcommand("dual", "dual point (xi, theta) -> (xi, -theta)");
    add_point(dual_cmd, true);

    auto* table_cmd = app.add_subcommand("table1", "linear parameters of the literature orderings");

    int resolution = 201;
    auto* region_cmd = app.add_subcommand("region", "class labels on a uniform grid of the allowed region");
    region_cmd->add_option("--resolution", resolution, "points per axis")->capture_default_str();

    GridInput grid;
    std::string profile_text = "lorentzian";
    std::string potential_text = "zero";
    std::string pathway = "terms";
    std::string stencil_text;
    auto* assemble_cmd = app.add_subcommand("assemble", "finite-difference matrix of an ordering");
    ordering.attach(assemble_cmd);
    grid.attach(assemble_cmd);
    assemble_cmd->add_option("--profile", profile_text, "mass profile name[:k=v,...]")->capture_default_str();
    assemble_cmd->add_option("--pathway", pathway, "terms or linear")->capture_default_str();
    assemble_cmd->add_option("--stencil", stencil_text, "central (default) or staggered");

    std::vector<std::string> defect_names = {"ZK", "MM", "W", "LK", "Lal", "YY", "BDD"};
    std::vector<std::string> defect_profiles = {"gaussian", "step", "lorentzian"};
    auto* defect_cmd = app.add_subcommand("defect", "equivalence of the term and linear forms under refinement");
    defect_cmd->add_option("--names", defect_names, "catalog entries")->delimiter(' ');
    defect_cmd->add_option("--profiles", defect_profiles, "mass profiles")->delimiter(' ');
    grid.attach(defect_cmd);
    defect_cmd->add_option("--stencil", stencil_text, "staggered (default) or central");

    int count = 5;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "lowest eigenvalues of T + V");
    ordering.attach(spectrum_cmd);
    grid.attach(spectrum_cmd);
    spectrum_cmd->add_option("--profile", profile_text, "mass profile name[:k=v,...]")->capture_default_str();
    spectrum_cmd->add_option("--potential", potential_text, "potential name[:k=v,...]")->capture_default_str();
    spectrum_cmd->add_option("--k", count, "number of eigenvalues")->capture_default_str();
    spectrum_cmd->add_option("--pathway", pathway, "terms or linear")->capture_default_str();
    spectrum_cmd->add_option("--stencil", stencil_text, "staggered (default) or central");

    auto* dualpair_cmd = app.add_subcommand("dualpair", "spectra of the von Roos and class-I dual orderings");
    dualpair_cmd->add_option("--xi", xi_text, "xi as an exact rational")->required();
    dualpair_cmd->add_option("--theta", theta_text, "theta as an exact rational")->required();
    grid.attach(dualpair_cmd);
    dualpair_cmd->add_option("--profile", profile_text, "mass profile name[:k=v,...]")->capture_default_str();
    dualpair_cmd->add_option("--potential", potential_text, "potential name[:k=v,...]")->capture_default_str();
    dualpair_cmd->add_option("--k", count, "number of eigenvalues")->capture_default_str();
    dualpair_cmd->add_option("--stencil", stencil_text, "staggered (default) or central");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    }

    Emitter emitter(options);
    try {
        const auto stencil_or = [&](Stencil fallback) {
            return stencil_text.empty() ? fallback : parse_stencil(stencil_text);
        };
        if (classify_cmd->parsed()) {
            cmd_classify(emitter, parse_rational("--xi", xi_text), parse_rational("--zeta", zeta_text));
        } else if (params_cmd->parsed()) {
            cmd_params(emitter, ordering.resolve());
        } else if (invert_cmd->parsed()) {
            Region r{};
            try {
                r = parse_region(class_text);
            } catch (const Error& e) {
                throw UsageError(std::string("--class: ") + e.what());
            }
            cmd_invert(emitter, parse_rational("--xi", xi_text), parse_rational("--zeta", zeta_text), r, numeric);
        } else if (dual_cmd->parsed()) {
            cmd_dual(emitter, parse_rational("--xi", xi_text), parse_rational("--zeta", zeta_text));
        } else if (table_cmd->parsed()) {
            cmd_table1(emitter);
        } else if (region_cmd->parsed()) {
            cmd_region(emitter, resolution);
        } else if (assemble_cmd->parsed()) {
            const auto spec = ordering.resolve();
            cmd_assemble(emitter, build_operator(spec, make_profile(profile_text), grid, pathway,
                                                 stencil_or(Stencil::Central)));
        } else if (defect_cmd->parsed()) {
            cmd_defect(emitter, defect_names, defect_profiles, grid, stencil_or(Stencil::Staggered));
        } else if (spectrum_cmd->parsed()) {
            const auto spec = ordering.resolve();
            const auto keo = build_operator(spec, make_profile(profile_text), grid, pathway,
                                            stencil_or(Stencil::Staggered));
            emit_spectrum(emitter, solve(hamiltonian(keo, make_potential(potential_text)), count), grid.hbar);
        } else if (dualpair_cmd->parsed()) {
            const auto report = dual_pair_report(parse_rational("--xi", xi_text), parse_rational("--theta", theta_text),
                                                 make_profile(profile_text), make_potential(potential_text),
                                                 grid.grid(), count, grid.hbar, stencil_or(Stencil::Staggered));
            cmd_dualpair(emitter, report);
        }
        emitter.flush(out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ParseError& e) {
        err << "error [" << to_string(e.code()) << " at " << e.position() << "]: " << e.what() << '\n';
        return exit_domain;
    } catch (const Error& e) {
        err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        return exit_domain;
    }
    return exit_ok;
}

} // namespace keo::cli
