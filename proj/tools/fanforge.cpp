// fanforge: g-vector fans, type cones and their polytopal realizations.

#include "fanforge/arquiver.hpp"
#include "fanforge/clusterfan.hpp"
#include "fanforge/error.hpp"
#include "fanforge/exchange.hpp"
#include "fanforge/io.hpp"
#include "fanforge/linalg.hpp"
#include "fanforge/typecone.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>

using namespace fanforge;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInputError = 2;

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot read " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
    out << text;
}

std::string one_line(std::string s) {
    for (char& ch : s)
        if (ch == '\n' || ch == '\r') ch = ' ';
    std::string out;
    for (char ch : s) out += ch == '"' ? std::string("\\\"") : std::string(1, ch);
    return out;
}

int report_error(std::string_view code, const std::string& message) {
    std::cerr << "error code=" << code << " message=\"" << one_line(message) << "\"\n";
    return kInputError;
}

/// Integers print without a denominator in human-readable text.
std::string pretty(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return to_string(q);
}

// ---------------------------------------------------------------------------
// Seed selection shared by fan, abhy and verify.

struct SeedOptions {
    std::string type = "A";
    int rank = 0;
    std::string orientation;
    std::string seed_path;
    bool enable_e = false;

    void add_to(CLI::App* app) {
        app->add_option("--type", type, "Dynkin type A, D or E")->check(CLI::IsMember({"A", "D", "E"}));
        app->add_option("--rank", rank, "rank n");
        app->add_option("--orientation", orientation, "arrows as source>target, comma separated");
        app->add_option("--seed", seed_path, "seed JSON (exchange matrix or triangulation)");
        app->add_flag("--enable-e", enable_e, "allow type E");
    }

    char type_char() const { return type.empty() ? 'A' : type[0]; }

    DynkinQuiver quiver() const {
        if (type_char() == 'E' && !enable_e) throw Error(ErrorCode::UnsupportedType, "type E requires --enable-e");
        if (rank <= 0) throw Error(ErrorCode::InvalidInput, "--rank is required");
        if (orientation.empty()) return linear_quiver(type_char(), rank);
        return make_quiver(type_char(), rank, parse_orientation(orientation));
    }

    SeedInput seed() const {
        if (!seed_path.empty()) {
            SeedInput in = seed_from_json(read_input(seed_path));
            if (rank > 0 && in.seed.rank() != rank) {
                throw Error(ErrorCode::InvalidInput, "seed has rank " + std::to_string(in.seed.rank()) +
                                                         " but --rank is " + std::to_string(rank));
            }
            return in;
        }
        return SeedInput{initial_seed(exchange_matrix(quiver())), std::nullopt, {}};
    }
};

Fan labelled(Fan fan, const std::vector<std::string>& names) {
    if (names.empty()) return fan;
    for (int i = 0; i < fan.dim; ++i) {
        const IntVec unit = IntVec::Unit(fan.dim, i);
        if (int r = fan.find_ray(unit); r >= 0) fan.labels[static_cast<std::size_t>(r)] = names[static_cast<std::size_t>(i)];
        if (int r = fan.find_ray(IntVec(-unit)); r >= 0) fan.labels[static_cast<std::size_t>(r)] = "-" + names[static_cast<std::size_t>(i)];
    }
    return fan;
}

EnumerationOptions enumeration(int threads) { return {default_budget(), threads}; }

RatVec parse_vector_or(const std::string& text, Eigen::Index size, const char* what) {
    if (text.empty()) return RatVec::Constant(size, Rational(1));
    RatVec v = parse_rational_list(text);
    if (v.size() != size) {
        throw Error(ErrorCode::InvalidInput, std::string(what) + " needs " + std::to_string(size) + " entries, got " +
                                                 std::to_string(v.size()));
    }
    return v;
}

// ---------------------------------------------------------------------------
// ABHY text rendering.

std::string inequality_text(const ARQuiver& ar, int v, const AffineFunctional& f, const RatVec& c) {
    // f >= 0 rewritten as (-linear) . x <= constant . c
    std::string lhs, rhs;
    std::vector<std::pair<Rational, std::string>> pos, neg;
    for (Eigen::Index j = 0; j < f.linear.size(); ++j) {
        const Rational a = -f.linear(j);
        const std::string name = coordinate_name(ar, ar.projection_vertices[static_cast<std::size_t>(j)]);
        if (a > 0) pos.push_back({a, name});
        if (a < 0) neg.push_back({-a, name});
    }
    if (pos.empty() && neg.size() == 1 && f.constant.isZero()) {
        return (neg[0].first == 1 ? "" : pretty(neg[0].first) + " ") + neg[0].second + " >= 0";
    }
    auto emit = [&](const std::pair<Rational, std::string>& t) { return (t.first == 1 ? "" : pretty(t.first) + " ") + t.second; };
    for (const auto& t : pos) lhs += (lhs.empty() ? "" : " + ") + emit(t);
    for (const auto& t : neg) lhs += (lhs.empty() ? "-" : " - ") + emit(t);
    if (lhs.empty()) lhs = "0";
    for (Eigen::Index i = 0; i < f.constant.size(); ++i) {
        if (f.constant(i) == 0) continue;
        const std::string name = parameter_name(ar, ar.meshes[static_cast<std::size_t>(i)]);
        const Rational a = f.constant(i);
        rhs += rhs.empty() ? (a < 0 ? "-" : "") : (a < 0 ? " - " : " + ");
        const Rational mag = a < 0 ? Rational(-a) : a;
        rhs += (mag == 1 ? "" : pretty(mag) + " ") + name;
    }
    if (rhs.empty()) rhs = "0";
    (void)v;
    return lhs + " <= " + rhs + " = " + pretty(f.constant.dot(c));
}

std::string point_text(const RatVec& x) {
    std::string s = "(";
    for (Eigen::Index i = 0; i < x.size(); ++i) s += (i ? ", " : "") + pretty(x(i));
    return s + ")";
}

struct AbhyText {
    std::vector<std::string> equations, functionals, inequalities, vertices;
    HPolytope polytope;
    VPolytope vpoly;
};

AbhyText abhy_text(const ARQuiver& ar, const RatVec& c) {
    AbhyText t;
    for (const auto& m : mesh_equations(ar)) t.equations.push_back(format_mesh(ar, m));
    const auto fs = abhy_functionals(ar);
    std::set<int> projection(ar.projection_vertices.begin(), ar.projection_vertices.end());
    for (std::size_t v = 0; v < fs.size(); ++v) {
        if (!projection.contains(static_cast<int>(v))) t.functionals.push_back(format_functional(ar, static_cast<int>(v), fs[v]));
    }
    // positivity of the projection coordinates first, as in the display
    for (int v : ar.projection_vertices) t.inequalities.push_back(inequality_text(ar, v, fs[static_cast<std::size_t>(v)], c));
    for (std::size_t v = 0; v < fs.size(); ++v) {
        if (!projection.contains(static_cast<int>(v))) t.inequalities.push_back(inequality_text(ar, static_cast<int>(v), fs[v], c));
    }
    t.polytope = abhy_polytope(ar, c);
    t.vpoly = vertices(t.polytope);
    for (const auto& x : t.vpoly.vertices) t.vertices.push_back(point_text(x));
    return t;
}

void print_section(std::ostream& out, const std::string& title, const std::vector<std::string>& lines) {
    out << title << "\n";
    for (const auto& l : lines) out << "  " << l << "\n";
}

// ---------------------------------------------------------------------------
// Subcommands.

int run_fan(const SeedOptions& so, const std::string& out, const std::string& dot, int threads) {
    const SeedInput in = so.seed();
    const auto e = enumerate_fan(in.seed, enumeration(threads));
    const Fan fan = labelled(e.fan, in.labels);
    write_output(out, fan_to_json(fan));
    if (!dot.empty()) write_output(dot, exchange_graph_to_dot(fan, false));
    return kOk;
}

int run_typecone(const std::string& fan_path, const std::string& out, bool report, int threads) {
    const Fan fan = fan_from_json(read_input(fan_path));
    const auto tc = type_cone(fan, {threads});
    if (!out.empty() || !report) write_output(out, typecone_to_json(tc));
    if (report) {
        const auto uerp = unique_exchange_check(fan, threads);
        int negative = 0;
        for (const auto& d : facet_dependencies(tc))
            for (const auto& a : d.middle) negative += a < 0;
        std::cout << "facets=" << tc.facets.size() << " expected=" << fan.n_rays() - fan.dim
                  << " uerp=" << (uerp.holds ? "true" : "false") << "\n";
        std::cout << "uerp_weak=" << (uerp.weak_holds ? "true" : "false") << " walls=" << tc.walls.size()
                  << " distinct=" << tc.distinct.size() << " negative_middle_coefficients=" << negative << "\n";
    }
    return kOk;
}

int run_realize(const std::string& fan_path, const std::string& tc_path, const std::string& c_text,
                const std::string& h_text, const std::string& out, int threads) {
    const Fan fan = fan_from_json(read_input(fan_path));
    HPolytope p;
    if (!h_text.empty()) {
        if (!c_text.empty()) throw Error(ErrorCode::InvalidInput, "give either --c or --h");
        p = p_h(fan, parse_vector_or(h_text, fan.n_rays(), "--h"));
    } else {
        TypeCone tc = tc_path.empty() ? type_cone(fan, {threads}) : typecone_from_json(read_input(tc_path));
        if (tc.n_rays != fan.n_rays()) throw Error(ErrorCode::InvalidInput, "type cone and fan disagree on N");
        tc.dim = fan.dim;
        const RatVec c = parse_vector_or(c_text, static_cast<Eigen::Index>(tc.facets.size()), "--c");
        p = qc_polytope(fan, tc, c).polytope;
    }
    write_output(out, polytope_to_roff(vertices(p)));
    return kOk;
}

int run_abhy(const SeedOptions& so, const std::string& c_text, const std::string& roff, const std::string& ar_json,
             bool dictionary, int threads) {
    const DynkinQuiver q = so.quiver();
    const ARQuiver ar = knit_ar_quiver(q, {.enable_type_e = so.enable_e});
    const RatVec c = parse_vector_or(c_text, static_cast<Eigen::Index>(ar.meshes.size()), "--c");
    const AbhyText t = abhy_text(ar, c);
    std::ostream& out = std::cout;
    out << "vertices=" << ar.vertices.size() << " meshes=" << ar.meshes.size() << "\n";
    if (dictionary) {
        std::vector<std::string> rows;
        for (std::size_t v = 0; v < ar.vertices.size(); ++v) {
            const auto& x = ar.vertices[v];
            rows.push_back("(" + std::to_string(x.slice) + "," + std::to_string(x.vertex) + ") " +
                           coordinate_name(ar, static_cast<int>(v)) +
                           (x.kind == VertexKind::ShiftedInjective ? " shifted_injective" : " module"));
        }
        print_section(out, "coordinates", rows);
    }
    print_section(out, "mesh equations", t.equations);
    print_section(out, "functionals", t.functionals);
    print_section(out, "inequalities", t.inequalities);
    print_section(out, "vertices", t.vertices);
    const Fan fan = enumerate_fan(initial_seed(exchange_matrix(q)), enumeration(threads)).fan;
    const bool realizes = fan_eq(normal_fan(t.vpoly), fan);
    out << "realizes=" << (realizes ? "true" : "false") << "\n";
    if (!roff.empty()) write_output(roff, polytope_to_roff(t.vpoly));
    if (!ar_json.empty()) write_output(ar_json, arquiver_to_json(ar));
    return realizes ? kOk : kFailed;
}

int run_verify_polytope(const std::string& fan_path, const std::string& roff_path) {
    const Fan fan = fan_from_json(read_input(fan_path));
    const RoffPolytope r = roff_from_text(read_input(roff_path));
    bool ok = false;
    std::string why;
    try {
        const VPolytope p = make_vpolytope(fan.dim, r.points);
        if (p.vertices.size() != r.points.size()) throw Error(ErrorCode::InvalidInput, "repeated vertices");
        const HPolytope h = facets(p);
        // every listed point must be a vertex: check it against the facets it lies on
        const auto inc = incidences(p, h);
        for (const auto& tight : inc) {
            RatMat rows(static_cast<Eigen::Index>(tight.size()), fan.dim);
            for (std::size_t k = 0; k < tight.size(); ++k) rows.row(static_cast<Eigen::Index>(k)) = h.a.row(tight[k]);
            if (rank(rows) < fan.dim) throw Error(ErrorCode::DimensionDeficient, "a listed point is not a vertex");
        }
        ok = fan_eq(normal_fan(p), fan);
        if (!ok) why = "normal fan differs from the fan";
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidInput) throw;
        why = e.what();
    }
    std::cout << "realizes=" << (ok ? "true" : "false") << "\n";
    if (!ok) std::cout << "reason=" << one_line(why) << "\n";
    return ok ? kOk : kFailed;
}

int run_verify_seed(const SeedOptions& so, const std::string& report_path, std::uint64_t rng_seed, int threads) {
    using nlohmann::json;
    const SeedInput in = so.seed();
    const auto e = enumerate_fan(in.seed, enumeration(threads));
    const auto fc = check_fan(e.fan, {.rng_seed = rng_seed, .threads = threads});
    const auto mt = verify_mutation_theorem(e.fan, e.graph, threads);
    const auto uerp = unique_exchange_check(e.fan, threads);
    const auto tc = type_cone(e.fan, {threads});
    json report;
    report["fan"] = {{"rays", e.fan.n_rays()}, {"cones", e.fan.n_cones()}, {"dim", e.fan.dim}, {"ok", fc.ok()},
                     {"problems", fc.problems}};
    report["mutation"] = {{"walls_in_two", mt.walls_in_two}, {"regular", mt.regular}, {"connected", mt.connected},
                          {"dependencies_exact", mt.dependencies_exact}, {"walls", mt.wall_count},
                          {"unit_walls", mt.unit_walls}, {"problems", mt.problems}};
    json violations = json::array();
    for (const auto& v : uerp.violations) violations.push_back({{"pair", {v.r, v.r_prime}}, {"walls", {v.first_wall, v.second_wall}}});
    report["uerp"] = {{"holds", uerp.holds}, {"weak_holds", uerp.weak_holds}, {"violations", violations}};
    report["type_cone"] = {{"facets", tc.facets.size()}, {"expected", e.fan.n_rays() - e.fan.dim},
                           {"simplicial", tc.is_simplicial()}};
    bool ok = fc.ok() && mt.ok() && uerp.holds && tc.is_simplicial();
    if (in.triangulation) {
        const auto rm = relative_ar_meshes(*in.triangulation, e);
        std::set<std::vector<std::int64_t>> a, b;
        for (const auto& v : rm.normals) a.insert(to_std(v));
        for (const auto& v : tc.facets) b.insert(to_std(v));
        report["relative_meshes"] = {{"checked", true}, {"excluded", rm.excluded_count()},
                                     {"normals", rm.normals.size()}, {"match", a == b}};
        ok = ok && a == b && rm.excluded_count() == e.fan.dim;
    } else {
        report["relative_meshes"] = {{"checked", false}, {"reason", "needs a triangulation seed"}};
    }
    report["ok"] = ok;
    const std::string text = report.dump(2) + "\n";
    write_output(report_path, text);
    return ok ? kOk : kFailed;
}

int run_graph(const std::string& fan_path, bool annotate, const std::string& out) {
    write_output(out, exchange_graph_to_dot(fan_from_json(read_input(fan_path)), annotate));
    return kOk;
}

int run_paper_a2() {
    const ARQuiver ar = knit_ar_quiver(linear_quiver('A', 2));
    const AbhyText t = abhy_text(ar, RatVec::Constant(3, Rational(1)));
    print_section(std::cout, "mesh equations", t.equations);
    print_section(std::cout, "functionals", t.functionals);
    print_section(std::cout, "inequalities c=(1,1,1)", t.inequalities);
    print_section(std::cout, "vertices", t.vertices);

    const std::vector<std::string> golden_equations{"q_{1 3} + q_{2 4} = q_{1 4} + c_{2 4}",
                                                    "q_{1 4} + q_{2 5} = q_{2 4} + c_{2 5}",
                                                    "q_{2 4} + q_{3 5} = q_{2 5} + c_{3 5}"};
    const std::vector<std::string> golden_functionals{"q_{1 3} = c_{2 4} + c_{2 5} - q_{2 5}",
                                                      "q_{1 4} = c_{2 5} + c_{3 5} - q_{3 5}",
                                                      "q_{2 4} = c_{3 5} + q_{2 5} - q_{3 5}"};
    const std::vector<std::string> golden_inequalities{"q_{2 5} >= 0", "q_{3 5} >= 0",
                                                       "q_{2 5} <= c_{2 4} + c_{2 5} = 2",
                                                       "q_{3 5} <= c_{2 5} + c_{3 5} = 2",
                                                       "q_{3 5} - q_{2 5} <= c_{3 5} = 1"};
    const std::vector<std::string> golden_vertices{"(0, 0)", "(0, 1)", "(1, 2)", "(2, 0)", "(2, 2)"};
    std::vector<std::string> mismatches;
    if (t.equations != golden_equations) mismatches.push_back("mesh equations");
    if (t.functionals != golden_functionals) mismatches.push_back("functionals");
    if (t.inequalities != golden_inequalities) mismatches.push_back("inequalities");
    if (t.vertices != golden_vertices) mismatches.push_back("vertices");
    if (!fan_eq(normal_fan(t.vpoly), enumerate_fan(initial_seed(exchange_matrix(ar.quiver))).fan)) {
        mismatches.push_back("normal fan");
    }
    if (!mismatches.empty()) {
        std::cout << "MISMATCH";
        for (const auto& m : mismatches) std::cout << " " << m;
        std::cout << "\n";
        return kFailed;
    }
    std::cout << "OK\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fanforge: g-vector fans, type cones and polytopal realizations"};
    app.require_subcommand(1);
    int threads = 1;
    std::uint64_t rng_seed = 0;
    app.add_option("--threads", threads, "worker threads (output does not depend on it)")->check(CLI::Range(1, 256));

    SeedOptions fan_seed, abhy_seed, verify_seed;
    std::string out, dot, fan_path = "-", tc_path, c_text, h_text, roff, ar_json, polytope, report_path;
    bool report = false, annotate = false, dictionary = false;

    auto* fan = app.add_subcommand("fan", "enumerate the g-vector fan of a seed");
    fan_seed.add_to(fan);
    fan->add_option("--out", out, "Fan JSON output (default stdout)");
    fan->add_option("--dot", dot, "exchange graph DOT output");

    auto* tc = app.add_subcommand("typecone", "type cone of a fan");
    tc->add_option("--fan", fan_path, "Fan JSON input (default stdin)");
    tc->add_option("--out", out, "TypeCone JSON output");
    tc->add_flag("--report", report, "print facet count, N-n and the unique exchange verdict");

    auto* realize = app.add_subcommand("realize", "polytope realizing a fan, as ROFF");
    realize->set_help_flag("--help", "print this help message and exit");  // frees --h
    realize->add_option("--fan", fan_path, "Fan JSON input (default stdin)");
    realize->add_option("--typecone", tc_path, "TypeCone JSON (computed when absent)");
    realize->add_option("--c", c_text, "facet parameters p/q,... (default all ones)");
    realize->add_option("--h", h_text, "height vector p/q,... instead of --c");
    realize->add_option("--out", out, "ROFF output (default stdout)");

    auto* abhy = app.add_subcommand("abhy", "ABHY polytope from the Auslander-Reiten quiver");
    abhy_seed.add_to(abhy);
    abhy->add_option("--c", c_text, "mesh parameters p/q,... (default all ones)");
    abhy->add_option("--roff", roff, "ROFF output");
    abhy->add_option("--ar-json", ar_json, "ARQuiver JSON output");
    abhy->add_flag("--dictionary", dictionary, "print the coordinate table");

    auto* verify = app.add_subcommand("verify", "check a realization, or the fan invariants of a seed");
    verify->add_option("--fan", fan_path, "Fan JSON (with --polytope)");
    verify->add_option("--polytope", polytope, "ROFF polytope to check against the fan");
    verify_seed.add_to(verify);
    verify->add_option("--report", report_path, "Report JSON output (default stdout)");
    verify->add_option("--rng-seed", rng_seed, "seed for random probes");

    auto* graph = app.add_subcommand("graph", "exchange graph of a fan as DOT");
    graph->add_option("--fan", fan_path, "Fan JSON input (default stdin)");
    graph->add_flag("--annotate", annotate, "label walls with their dependencies");
    graph->add_option("--out", out, "DOT output (default stdout)");

    auto* paper = app.add_subcommand("paper-a2", "reproduce the A2 worked example and compare with golden data");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_error("InvalidInput", e.what());
    }

    try {
        if (fan->parsed()) return run_fan(fan_seed, out, dot, threads);
        if (tc->parsed()) return run_typecone(fan_path, out, report, threads);
        if (realize->parsed()) return run_realize(fan_path, tc_path, c_text, h_text, out, threads);
        if (abhy->parsed()) return run_abhy(abhy_seed, c_text, roff, ar_json, dictionary, threads);
        if (verify->parsed()) {
            if (!polytope.empty()) return run_verify_polytope(fan_path, polytope);
            return run_verify_seed(verify_seed, report_path, rng_seed, threads);
        }
        if (graph->parsed()) return run_graph(fan_path, annotate, out);
        if (paper->parsed()) return run_paper_a2();
    } catch (const Error& e) {
        const std::string what = e.what();
        const auto colon = what.find(": ");
        return report_error(to_string(e.code()), colon == std::string::npos ? what : what.substr(colon + 2));
    } catch (const std::exception& e) {
        return report_error("InvalidInput", e.what());
    }
    return kInputError;
}
