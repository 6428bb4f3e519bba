#include "fanforge/io.hpp"

#include "fanforge/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace fanforge {

namespace {

using nlohmann::json;

template <typename Range>
std::string int_list(const Range& xs) {
    std::string out = "[";
    bool first = true;
    for (const auto& x : xs) {
        if (!first) out += ", ";
        first = false;
        out += std::to_string(x);
    }
    return out + "]";
}

std::string int_list(const IntVec& v) { return int_list(to_std(v)); }

std::string string_list(const std::vector<std::string>& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + json(xs[i]).dump();
    return out + "]";
}

std::string rational_list(const std::vector<Rational>& xs) {
    std::vector<std::string> s;
    for (const auto& x : xs) s.push_back(to_string(x));
    return string_list(s);
}

template <typename T, typename F>
void write_rows(std::ostringstream& out, const std::string& key, const std::vector<T>& rows, F&& fmt, bool last) {
    out << "  \"" << key << "\": [";
    for (std::size_t i = 0; i < rows.size(); ++i) out << (i ? ",\n    " : "\n    ") << fmt(rows[i]);
    out << (rows.empty() ? "]" : "\n  ]") << (last ? "\n" : ",\n");
}

json parse(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what());
    }
}

template <typename T>
T get(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::InvalidInput, std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw Error(ErrorCode::InvalidInput, std::string("field \"") + key + "\" has the wrong type");
    }
}

IntVec int_vec(const std::vector<std::int64_t>& v) { return from_std(v); }

}  // namespace

std::string fan_to_json(const Fan& fan) {
    std::ostringstream out;
    out << "{\n  \"dim\": " << fan.dim << ",\n";
    write_rows(out, "rays", fan.rays, [](const IntVec& r) { return int_list(r); }, false);
    write_rows(out, "cones", fan.cones, [](const Cone& c) { return int_list(c); }, false);
    out << "  \"labels\": " << string_list(fan.labels) << "\n}\n";
    return out.str();
}

Fan fan_from_json(std::string_view text) {
    const json j = parse(text);
    const int dim = get<int>(j, "dim");
    std::vector<IntVec> rays;
    for (const auto& r : get<std::vector<std::vector<std::int64_t>>>(j, "rays")) {
        if (static_cast<int>(r.size()) != dim) throw Error(ErrorCode::InvalidInput, "ray of wrong dimension");
        rays.push_back(int_vec(r));
    }
    auto cones = get<std::vector<Cone>>(j, "cones");
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = get<std::vector<std::string>>(j, "labels");
    return make_fan(dim, std::move(rays), std::move(cones), std::move(labels));
}

std::string typecone_to_json(const TypeCone& tc) {
    std::ostringstream out;
    out << "{\n  \"N\": " << tc.n_rays << ",\n  \"dim\": " << tc.dim << ",\n";
    write_rows(out, "walls", tc.dependencies, [](const LinearDependency& d) {
        return "{\"cones\": " + int_list(std::vector<int>{d.wall.cone_a, d.wall.cone_b}) +
               ", \"shared\": " + int_list(d.wall.shared) +
               ", \"exchanged\": " + int_list(std::vector<int>{d.wall.r, d.wall.r_prime}) +
               ", \"alpha\": " + json(to_string(d.alpha)).dump() +
               ", \"alpha_prime\": " + json(to_string(d.alpha_prime)).dump() +
               ", \"middle\": " + rational_list(d.middle) + "}";
    }, false);
    write_rows(out, "facets", tc.facets, [](const IntVec& f) { return int_list(f); }, false);
    out << "  \"simplicial\": " << (tc.is_simplicial() ? "true" : "false") << ",\n";
    write_rows(out, "K", tc.facets, [](const IntVec& f) { return int_list(f); }, true);
    out << "}\n";
    return out.str();
}

TypeCone typecone_from_json(std::string_view text) {
    const json j = parse(text);
    TypeCone tc;
    tc.n_rays = get<int>(j, "N");
    tc.dim = j.contains("dim") ? get<int>(j, "dim") : 0;
    for (const auto& f : get<std::vector<std::vector<std::int64_t>>>(j, "facets")) {
        if (static_cast<int>(f.size()) != tc.n_rays) throw Error(ErrorCode::InvalidInput, "facet of wrong length");
        tc.facets.push_back(int_vec(f));
    }
    tc.distinct = tc.facets;
    return tc;
}

std::string arquiver_to_json(const ARQuiver& ar) {
    std::ostringstream out;
    std::vector<std::vector<int>> orientation;
    for (auto [s, t] : ar.quiver.arrows) orientation.push_back({s, t});
    out << "{\n  \"type\": \"" << ar.quiver.type << "\",\n  \"rank\": " << ar.quiver.rank << ",\n";
    write_rows(out, "orientation", orientation, [](const std::vector<int>& a) { return int_list(a); }, false);
    std::vector<int> ids(ar.vertices.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
    write_rows(out, "vertices", ids, [&](int i) {
        const auto& v = ar.vertices[static_cast<std::size_t>(i)];
        return "{\"slice\": " + std::to_string(v.slice) + ", \"vertex\": " + std::to_string(v.vertex) +
               ", \"dim\": " + int_list(v.dim) + ", \"g\": " + int_list(v.g) + ", \"label\": \"" +
               (v.kind == VertexKind::Module ? "module" : "shifted_injective") + "\", \"name\": " +
               json(coordinate_name(ar, i)).dump() + "}";
    }, false);
    std::vector<std::vector<int>> arrows;
    for (auto [s, t] : ar.arrows) arrows.push_back({s, t});
    write_rows(out, "arrows", arrows, [](const std::vector<int>& a) { return int_list(a); }, false);
    write_rows(out, "meshes", ar.meshes, [&](const MeshRelation& m) {
        return "{\"start\": " + std::to_string(m.start) + ", \"middles\": " + int_list(m.middles) +
               ", \"end\": " + std::to_string(m.end) + ", \"coeff_id\": " + std::to_string(m.coeff_id) +
               ", \"parameter\": " + json(parameter_name(ar, m)).dump() + "}";
    }, false);
    out << "  \"projection_vertices\": " << int_list(ar.projection_vertices) << "\n}\n";
    return out.str();
}

std::string polytope_to_roff(const VPolytope& p) {
    const HPolytope h = facets(p);
    const auto inc = incidences(p, h);
    std::vector<std::vector<int>> faces(static_cast<std::size_t>(h.a.rows()));
    for (std::size_t v = 0; v < inc.size(); ++v)
        for (int f : inc[v]) faces[static_cast<std::size_t>(f)].push_back(static_cast<int>(v));
    std::ostringstream out;
    out << "ROFF\n" << p.vertices.size() << " " << faces.size() << "\n";
    for (const auto& v : p.vertices) {
        for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? " " : "") << to_string(v(i));
        out << "\n";
    }
    for (const auto& f : faces) {
        out << f.size();
        for (int v : f) out << " " << v;
        out << "\n";
    }
    return out.str();
}

RoffPolytope roff_from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    auto next_line = [&]() -> std::string {
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
        }
        throw Error(ErrorCode::InvalidInput, "ROFF: unexpected end of input");
    };
    std::string header;
    std::istringstream{next_line()} >> header;
    if (header != "ROFF") throw Error(ErrorCode::InvalidInput, "ROFF: missing header");
    long nv = -1, nf = -1;
    std::istringstream counts(next_line());
    if (!(counts >> nv >> nf) || nv < 0 || nf < 0) throw Error(ErrorCode::InvalidInput, "ROFF: bad counts line");
    RoffPolytope p;
    std::size_t dim = 0;
    for (long i = 0; i < nv; ++i) {
        std::istringstream row(next_line());
        std::vector<Rational> xs;
        for (std::string tok; row >> tok;) xs.push_back(parse_rational(tok));
        if (i == 0) dim = xs.size();
        if (xs.empty() || xs.size() != dim) throw Error(ErrorCode::InvalidInput, "ROFF: vertex " + std::to_string(i) + " has wrong dimension");
        RatVec v(static_cast<Eigen::Index>(dim));
        for (std::size_t k = 0; k < dim; ++k) v(static_cast<Eigen::Index>(k)) = xs[k];
        p.points.push_back(v);
    }
    for (long i = 0; i < nf; ++i) {
        std::istringstream row(next_line());
        long k = -1;
        if (!(row >> k) || k < 0) throw Error(ErrorCode::InvalidInput, "ROFF: bad face line");
        std::vector<int> face;
        for (long t = 0; t < k; ++t) {
            long v = -1;
            if (!(row >> v) || v < 0 || v >= nv) throw Error(ErrorCode::InvalidInput, "ROFF: bad face index");
            face.push_back(static_cast<int>(v));
        }
        p.faces.push_back(std::move(face));
    }
    return p;
}

std::string exchange_graph_to_dot(const Fan& fan, bool annotate) {
    std::ostringstream out;
    out << "graph exchange {\n";
    for (int c = 0; c < fan.n_cones(); ++c) {
        std::string label;
        for (int r : fan.cones[static_cast<std::size_t>(c)]) label += (label.empty() ? "" : " ") + std::to_string(r);
        out << "  n" << c << " [label=\"" << label << "\"];\n";
    }
    auto term = [&](const Rational& a, int ray) {
        const std::string name = fan.labels[static_cast<std::size_t>(ray)];
        return a == 1 ? name : to_string(a) + " " + name;
    };
    for (const auto& w : walls(fan)) {
        out << "  n" << w.cone_a << " -- n" << w.cone_b << " [label=\"";
        if (annotate) {
            const auto d = wall_dependency(fan, w);
            out << term(d.alpha, w.r) << " + " << term(d.alpha_prime, w.r_prime) << " =";
            bool any = false;
            for (std::size_t i = 0; i < d.middle.size(); ++i) {
                if (d.middle[i] == 0) continue;
                out << (any ? " + " : " ") << term(d.middle[i], w.shared[i]);
                any = true;
            }
            if (!any) out << " 0";
        } else {
            out << fan.labels[static_cast<std::size_t>(w.r)] << " <-> " << fan.labels[static_cast<std::size_t>(w.r_prime)];
        }
        out << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

SeedInput seed_from_json(std::string_view text) {
    const json j = parse(text);
    SeedInput in;
    if (j.is_object() && j.contains("triangulation")) {
        const json& t = j.at("triangulation");
        const int m = get<int>(t, "polygon");
        std::vector<Diagonal> ds;
        for (const auto& d : get<std::vector<std::vector<int>>>(t, "diagonals")) {
            if (d.size() != 2) throw Error(ErrorCode::InvalidInput, "a diagonal has two endpoints");
            ds.push_back({d[0], d[1]});
        }
        in.triangulation = make_triangulation(m, std::move(ds));
        in.seed = seed_from_triangulation(*in.triangulation);
    } else {
        const auto rows = get<std::vector<std::vector<std::int64_t>>>(j, "b");
        const auto n = static_cast<Eigen::Index>(rows.size());
        if (n == 0) throw Error(ErrorCode::InvalidInput, "empty exchange matrix");
        IntMat b(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n) {
                throw Error(ErrorCode::InvalidInput, "exchange matrix is not square");
            }
            for (Eigen::Index k = 0; k < n; ++k) b(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        }
        in.seed = initial_seed(b);
    }
    if (j.contains("labels")) {
        in.labels = get<std::vector<std::string>>(j, "labels");
        if (static_cast<int>(in.labels.size()) != in.seed.rank()) {
            throw Error(ErrorCode::InvalidInput, "expected " + std::to_string(in.seed.rank()) + " labels");
        }
    }
    return in;
}

std::vector<std::pair<int, int>> parse_orientation(std::string_view text) {
    std::vector<std::pair<int, int>> arrows;
    std::istringstream in{std::string(text)};
    for (std::string item; std::getline(in, item, ',');) {
        const auto gt = item.find('>');
        try {
            if (gt == std::string::npos) throw std::invalid_argument("no '>'");
            std::size_t used1 = 0, used2 = 0;
            const std::string a = item.substr(0, gt), b = item.substr(gt + 1);
            const int s = std::stoi(a, &used1), t = std::stoi(b, &used2);
            if (used1 != a.size() || used2 != b.size()) throw std::invalid_argument("trailing characters");
            arrows.push_back({s, t});
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidInput, "bad arrow \"" + item + "\", expected source>target");
        }
    }
    return arrows;
}

}  // namespace fanforge
