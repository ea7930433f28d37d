#include "perigrowth/cli.hpp"

#include "perigrowth/ball.hpp"
#include "perigrowth/decomposition.hpp"
#include "perigrowth/error.hpp"
#include "perigrowth/periodic_graph.hpp"
#include "perigrowth/series_fit.hpp"
#include "perigrowth/vab.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace perigrowth::cli {

namespace {

struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::string base;
    std::int64_t upto = -1;
    std::string upto_box;
    std::int64_t margin = -1;
    std::int64_t box = -1;
    bool canonical = false;
    bool exhaustive = false;
    std::string set_path;
    std::string eqn_path;
    std::size_t threads = 1;
    std::size_t max_vertices = BallOptions{}.max_vertices;
    std::size_t max_cycles = CycleOptions{}.max_cycles;
    std::size_t max_orbits = CoverOptions{}.max_orbits;
    std::size_t max_tuples = SolveOptions{}.max_tuples;
    std::size_t max_states = EnumerateOptions{}.max_states;
    std::int64_t max_exponent = 0;
    std::string output;

    BallOptions ball() const { return {max_vertices}; }
    CycleOptions cycles() const { return {max_cycles}; }
};

std::string join(std::span<const std::int64_t> v, char sep = ',') {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

std::vector<std::int64_t> parse_box(const std::string& text, std::size_t arity) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) {
        try {
            std::size_t used = 0;
            auto v = std::stoll(part, &used);
            if (used != part.size() || v < 0) throw std::invalid_argument(part);
            out.push_back(v);
        } catch (const std::exception&) {
            throw InputError("--upto expects nonnegative integers, got '" + text + "'");
        }
    }
    if (out.size() == 1 && arity > 1) out.assign(arity, out[0]);
    if (out.size() != arity)
        throw InputError("--upto has " + std::to_string(out.size()) + " entries for arity " + std::to_string(arity));
    return out;
}

PeriodicVertex base_of(const QuotientGraph& g, const std::string& spec) {
    if (g.orbit_count() == 0) throw InputError("graph has no orbits");
    return spec.empty() ? g.origin(0) : parse_vertex(g, spec);
}

std::string format_monoid_element(const MonoidElement& m) {
    return "(" + std::to_string(m.degree) + " | " + format_vector(m.vec) + ")";
}

std::string format_graded(const QuotientGraph& g, const GradedElement& e) {
    return "(" + std::to_string(e.degree) + " | " + format_vertex(g, e.vertex) + ")";
}

int series_report(const QuotientGraph& g, const PeriodicVertex& base, const RunConfig& cfg, std::ostream& os) {
    const auto gs = growth_sequence(g, base, cfg.upto, cfg.ball());
    FitOptions fo;
    fo.margin = cfg.margin < 0 ? 10 : cfg.margin;
    fo.canonical = cfg.canonical;
    const auto lr = fit_with_escalation(std::span<const std::int64_t>(gs.terms),
                                        default_denominator(g, cfg.cycles(), cfg.max_exponent), fo);
    os << kFormatHeader << '\n';
    os << "terms " << join(gs.terms) << '\n';
    os << format_series(lr.series);
    os << "ansatz " << lr.step << '\n';
    os << "canonical " << (lr.series.canonical ? "true" : "false") << '\n';
    os << "closed-form " << pretty(lr.series) << '\n';
    return kOk;
}

int pg_validate(const RunConfig& cfg, std::ostream& os) {
    const auto g = load_periodic_graph(cfg.inputs.at(0));
    const auto r = validate(g);
    os << kFormatHeader << '\n';
    if (!r.ok()) {
        for (const auto& e : r.entries) os << "invalid " << e << '\n';
        return kInputError;
    }
    os << "valid dim=" << g.dim() << " orbits=" << g.orbit_count() << " edges=" << g.edges().size() << '\n';
    return kOk;
}

int pg_growth(const RunConfig& cfg, std::ostream& os) {
    const auto g = load_periodic_graph(cfg.inputs.at(0));
    const auto gs = growth_sequence(g, base_of(g, cfg.base), cfg.upto, cfg.ball());
    os << kFormatHeader << '\n' << join(gs.terms) << '\n';
    return kOk;
}

int pg_series(const RunConfig& cfg, std::ostream& os) {
    const auto g = load_periodic_graph(cfg.inputs.at(0));
    return series_report(g, base_of(g, cfg.base), cfg, os);
}

int pg_decompose(const RunConfig& cfg, std::ostream& os) {
    const auto g = load_periodic_graph(cfg.inputs.at(0));
    const auto base = base_of(g, cfg.base);
    CoverOptions co;
    co.mode = cfg.exhaustive ? GeneratorMode::Exhaustive : GeneratorMode::Minimal;
    co.max_orbits = cfg.max_orbits;
    co.threads = cfg.threads;
    co.cycles = cfg.cycles();
    co.ball = cfg.ball();
    const auto rep = verify_cover(g, base, cfg.upto, co);
    os << kFormatHeader << '\n';
    os << "decompose radius=" << rep.radius << " base=" << format_vertex(g, base)
       << " mode=" << (cfg.exhaustive ? "exhaustive" : "minimal") << '\n';
    for (const auto& b : rep.blocks) {
        os << "block S={";
        for (std::size_t i = 0; i < b.support.orbits().size(); ++i)
            os << (i ? "," : "") << g.orbits()[b.support.orbits()[i]];
        os << "} degree-bound=" << b.module.degree_bound << '\n';
        for (const auto& m : b.monoid.generators) os << "  monoid " << format_monoid_element(m) << '\n';
        for (const auto& x : b.module.generators) os << "  module " << format_graded(g, x) << '\n';
        os << "  truncation " << b.truncation_size << '\n';
        os << "  module-action " << verdict(b.module_action_ok) << '\n';
    }
    for (const auto& e : rep.missing_from_union) os << "missing " << format_graded(g, e) << '\n';
    for (const auto& e : rep.extra_in_union) os << "extra " << format_graded(g, e) << '\n';
    os << "cover " << verdict(rep.cover_ok()) << " slice=" << rep.slice_size << " union=" << rep.union_size << '\n';
    os << "module-action " << verdict(rep.module_action_ok()) << '\n';
    return rep.cover_ok() && rep.module_action_ok() ? kOk : kMathFailure;
}

GroupSpec load_group(const std::string& path) {
    auto spec = load_vag(path);
    if (auto r = validate_group(spec.group); !r.ok()) throw InputError(path + ": invalid group: " + r.entries.front());
    return spec;
}

int vag_validate(const RunConfig& cfg, std::ostream& os) {
    const auto spec = load_vag(cfg.inputs.at(0));
    const auto r = validate_group(spec.group);
    os << kFormatHeader << '\n';
    if (!r.ok()) {
        for (const auto& e : r.entries) os << "invalid " << e << '\n';
        return kInputError;
    }
    os << "valid rank=" << spec.group.rank << " finite=" << spec.group.order
       << " generators=" << spec.generators.size() << '\n';
    return kOk;
}

int vag_cayley(const RunConfig& cfg, std::ostream& os) {
    const auto spec = load_group(cfg.inputs.at(0));
    const auto c = build_cayley(spec.group, spec.generators);
    os << "# " << kFormatHeader << '\n';
    os << "# base " << format_vertex(c.graph, c.base) << '\n';
    os << serialize(c.graph);
    return kOk;
}

int vag_growth(const RunConfig& cfg, std::ostream& os) {
    const auto spec = load_group(cfg.inputs.at(0));
    const auto c = build_cayley(spec.group, spec.generators);
    const auto gs = growth_sequence(c.graph, c.base, cfg.upto, cfg.ball());
    os << kFormatHeader << '\n' << join(gs.terms) << '\n';
    return kOk;
}

int vag_series(const RunConfig& cfg, std::ostream& os) {
    const auto spec = load_group(cfg.inputs.at(0));
    const auto c = build_cayley(spec.group, spec.generators);
    return series_report(c.graph, c.base, cfg, os);
}

int vag_solve(const RunConfig& cfg, std::ostream& os) {
    if (cfg.inputs.size() != 2) throw InputError("vag solve needs a .vag and an .eqn file");
    const auto spec = load_group(cfg.inputs[0]);
    const auto sys = load_equations(cfg.inputs[1], spec.group);
    const auto sols = solve_box(spec.group, sys, cfg.box, {cfg.max_tuples, cfg.threads});
    os << kFormatHeader << '\n';
    os << "solutions " << sols.size() << " box=" << cfg.box << '\n';
    for (const auto& t : sols) os << format_tuple(t) << '\n';
    return kOk;
}

std::vector<MultiFactor> with_unit_factors(std::vector<MultiFactor> f, std::size_t arity) {
    for (std::size_t k = 0; k < arity; ++k) {
        Exponent e(arity, 0);
        e[k] = 1;
        f.push_back({e, 1});
    }
    return normalize_factors(std::move(f));
}

int vag_relative(RunConfig cfg, std::ostream& os) {
    // A second positional file stands in for --set or --eqn by extension.
    if (cfg.inputs.size() == 2) {
        const auto& f = cfg.inputs[1];
        if (f.ends_with(".set") && cfg.set_path.empty()) cfg.set_path = f;
        else if (f.ends_with(".eqn") && cfg.eqn_path.empty()) cfg.eqn_path = f;
        else throw InputError("vag relative: cannot use '" + f + "' as a .set or .eqn input");
    }
    if (cfg.set_path.empty() == cfg.eqn_path.empty()) throw InputError("vag relative needs exactly one of --set, --eqn");
    const auto spec = load_group(cfg.inputs.at(0));
    const auto& G = spec.group;
    const auto cayley = build_cayley(G, spec.generators);

    std::optional<MonoidModuleSet> u;
    std::optional<EquationSystem> sys;
    std::size_t arity = 0;
    if (!cfg.set_path.empty()) {
        u = load_monoid_module_set(cfg.set_path, G);
        arity = u->arity;
    } else {
        if (cfg.box < 0) throw InputError("--eqn needs --box");
        sys = load_equations(cfg.eqn_path, G);
        arity = sys->arity;
    }
    const auto amax = parse_box(cfg.upto_box, arity);
    const auto top = *std::max_element(amax.begin(), amax.end());
    const auto dm = distances_upto(cayley.graph, cayley.base, top, cfg.ball());

    std::vector<GroupTuple> tuples;
    std::optional<std::int64_t> lattice_radius;
    if (u) {
        tuples = enumerate_monoid_module_set(G, *u, dm, amax, {cfg.max_states});
    } else {
        tuples = solve_box(G, *sys, cfg.box, {cfg.max_tuples, cfg.threads});
        lattice_radius = cfg.box;
    }
    const auto table = relative_growth_terms(G, spec.generators, tuples, amax, lattice_radius, cfg.ball());

    const std::int64_t k = cfg.margin < 0 ? 5 : cfg.margin;
    MultiFitOptions mo;
    mo.margin.assign(arity, k);
    const auto ansatz = default_relative_ansatz(cayley, arity, u ? &*u : nullptr, dm, cfg.cycles());
    const auto s_fit = fit_multivariate_with_escalation(table.index, table.counts_s, ansatz, mo);
    const auto s_red = reduce(s_fit.series);
    const auto b_fit =
        fit_multivariate_with_escalation(table.index, table.counts_b, with_unit_factors(ansatz, arity), mo);
    const auto b_red = reduce(b_fit.series);
    const bool s_from_b_ok =
        expand_multivariate(s_from_b(b_red), table.index) == expand_multivariate(s_red, table.index);

    const auto uni_terms = univariate_terms(table);
    FactorMultiset uni_ansatz;
    for (const auto& f : ansatz) {
        std::int64_t w = 0;
        for (auto x : f.w) w += x;
        uni_ansatz.push_back({w, f.exponent});
    }
    FitOptions fo;
    fo.margin = k;
    fo.canonical = true;
    const auto uni = fit_with_escalation(std::span<const std::int64_t>(uni_terms), uni_ansatz, fo);
    const auto special = specialize_to_univariate(s_red);
    const bool special_ok =
        special.numerator == uni.series.numerator && special.denominator == uni.series.denominator;

    os << kFormatHeader << '\n';
    os << "relative d=" << arity << " upto=" << join(amax) << " tuples=" << tuples.size() << '\n';
    for (std::size_t i = 0; i < table.index.size(); ++i)
        os << "count " << join(table.index.unflat(i), ' ') << " : " << table.counts_s[i] << ' ' << table.counts_b[i]
           << '\n';
    os << "multivariate " << s_fit.step << '\n' << format_series(s_red);
    os << "cumulative " << b_fit.step << '\n' << format_series(b_red);
    os << "s-from-b " << verdict(s_from_b_ok) << '\n';
    os << "univariate-terms " << join(uni_terms) << '\n';
    os << "univariate " << uni.step << '\n' << format_series(uni.series);
    os << "closed-form " << pretty(uni.series) << '\n';
    os << "specialization " << verdict(special_ok) << '\n';
    return s_from_b_ok && special_ok ? kOk : kMathFailure;
}

} // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Growth of periodic graphs and virtually abelian groups", "perigrowth"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--output", cfg.output, "Write results to this file instead of stdout");
    app.add_option("--max-vertices", cfg.max_vertices, "Ball size cap")->check(CLI::PositiveNumber);
    app.add_option("--max-cycles", cfg.max_cycles, "Quotient cycle cap")->check(CLI::PositiveNumber);
    app.add_option("--max-orbits", cfg.max_orbits, "Subset guard for decompose")->check(CLI::PositiveNumber);
    app.add_option("--max-tuples", cfg.max_tuples, "Enumeration guard for solve")->check(CLI::PositiveNumber);
    app.add_option("--max-states", cfg.max_states, "Enumeration guard for --set")->check(CLI::PositiveNumber);
    app.add_option("--max-exponent", cfg.max_exponent, "Cap on default ansatz exponents (0: none)")
        ->check(CLI::NonNegativeNumber);

    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, std::size_t files) {
        auto* sub = parent->add_subcommand(name, help);
        sub->fallthrough();
        sub->add_option("files", cfg.inputs, "Input files")->required()->expected(static_cast<int>(files));
        sub->callback([&cfg, parent, name] { cfg.command = parent->get_name() + " " + name; });
        return sub;
    };
    auto upto = [&](CLI::App* sub) {
        sub->add_option("--upto", cfg.upto, "Radius")->required()->check(CLI::NonNegativeNumber);
    };
    auto series_flags = [&](CLI::App* sub) {
        upto(sub);
        sub->add_option("--margin", cfg.margin, "Verification margin K (default 10)")->check(CLI::NonNegativeNumber);
        sub->add_flag("--canonical", cfg.canonical, "Reduce to canonical form");
    };

    auto* pg = app.add_subcommand("pg", "Periodic graphs (.pg)")->require_subcommand(1);
    pg->fallthrough();
    leaf(pg, "validate", "Check a .pg file", 1);
    auto* pg_g = leaf(pg, "growth", "Growth sequence", 1);
    pg_g->add_option("--base", cfg.base, "Base vertex orbit[:c1,...]");
    upto(pg_g);
    auto* pg_s = leaf(pg, "series", "Certified rational growth series", 1);
    pg_s->add_option("--base", cfg.base, "Base vertex orbit[:c1,...]");
    series_flags(pg_s);
    auto* pg_d = leaf(pg, "decompose", "Verify the monoid-module decomposition", 1);
    pg_d->add_option("--base", cfg.base, "Base vertex orbit[:c1,...]");
    pg_d->add_flag("--exhaustive", cfg.exhaustive, "List every module element up to the degree bound");
    upto(pg_d);

    auto* vag = app.add_subcommand("vag", "Virtually abelian groups (.vag)")->require_subcommand(1);
    vag->fallthrough();
    leaf(vag, "validate", "Check a .vag file", 1);
    leaf(vag, "cayley", "Emit the Cayley graph as .pg", 1);
    upto(leaf(vag, "growth", "Cayley growth sequence", 1));
    series_flags(leaf(vag, "series", "Certified rational Cayley growth series", 1));
    leaf(vag, "solve", "Solutions of an equation system in a lattice box", 2)
        ->add_option("--box", cfg.box, "Lattice box radius")
        ->required()
        ->check(CLI::NonNegativeNumber);
    auto* rel = leaf(vag, "relative", "Relative growth series of an algebraic set", 1);
    rel->get_option("files")->expected(1, 2);
    rel->add_option("--set", cfg.set_path, "Monoid-module set (.set)");
    rel->add_option("--eqn", cfg.eqn_path, "Equation system (.eqn), solved in --box");
    rel->add_option("--box", cfg.box, "Lattice box radius for --eqn")->check(CLI::NonNegativeNumber);
    rel->add_option("--upto", cfg.upto_box, "Weight box a1[,a2,...]")->required();
    rel->add_option("--margin", cfg.margin, "Verification margin per axis (default 5)")
        ->check(CLI::NonNegativeNumber);

    std::ostringstream result;
    int code = kOk;
    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
        if (cfg.command == "pg validate") code = pg_validate(cfg, result);
        else if (cfg.command == "pg growth") code = pg_growth(cfg, result);
        else if (cfg.command == "pg series") code = pg_series(cfg, result);
        else if (cfg.command == "pg decompose") code = pg_decompose(cfg, result);
        else if (cfg.command == "vag validate") code = vag_validate(cfg, result);
        else if (cfg.command == "vag cayley") code = vag_cayley(cfg, result);
        else if (cfg.command == "vag growth") code = vag_growth(cfg, result);
        else if (cfg.command == "vag series") code = vag_series(cfg, result);
        else if (cfg.command == "vag solve") code = vag_solve(cfg, result);
        else if (cfg.command == "vag relative") code = vag_relative(cfg, result);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kOk : kInputError;
    } catch (const MathError& e) {
        err << "error: " << e.what() << '\n';
        return kMathFailure;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const ResourceLimitError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    if (cfg.output.empty()) {
        out << result.str();
    } else {
        std::ofstream f(cfg.output, std::ios::binary);
        if (!f) {
            err << "error: cannot write " << cfg.output << '\n';
            return kInputError;
        }
        f << result.str();
    }
    return code;
}

} // namespace perigrowth::cli
