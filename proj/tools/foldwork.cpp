// foldwork: command-line front end. Every command prints JSON (or SVG) on
// stdout. Exit codes: 0 computed, 1 negative decision, 2 input error,
// 3 budget exceeded.

#include <CLI11.hpp>

#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "foldwork/bipyramid.hpp"
#include "foldwork/errors.hpp"
#include "foldwork/flaps.hpp"
#include "foldwork/foldcore.hpp"
#include "foldwork/gadgets.hpp"
#include "foldwork/generators.hpp"
#include "foldwork/io.hpp"
#include "foldwork/layerdp.hpp"
#include "foldwork/ncl.hpp"
#include "foldwork/oracle.hpp"
#include "foldwork/svg.hpp"
#include "foldwork/treedecomp.hpp"

using namespace foldwork;
using io::Json;

namespace {

constexpr int kNegative = 1, kInputError = 2, kBudget = 3;

int emit(const Json& j, bool pretty) {
    std::cout << (pretty ? j.dump(2) : j.dump()) << "\n";
    return 0;
}

gen::Labels parse_labels(const std::string& s) {
    gen::Labels out;
    for (char c : s) {
        if (c == 'M') out.emplace_back(FoldLabel::Mountain);
        else if (c == 'V') out.emplace_back(FoldLabel::Valley);
        else if (c == '-') out.emplace_back(std::nullopt);
        else throw InvalidInput(std::string("labels use M, V and -, not '") + c + "'");
    }
    return out;
}

int parse_int(const std::string& s, const char* what) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) throw InvalidInput(std::string(what) + ": '" + s + "' is not an integer");
    return v;
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty() || !std::isfinite(v)) throw InvalidInput("'" + s + "' is not a number");
    return v;
}

Point parse_direction(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw InvalidInput("direction '" + s + "' must be x,y");
    try {
        return {Rat::parse(s.substr(0, comma)), Rat::parse(s.substr(comma + 1))};
    } catch (const InvalidInput&) {
        throw;
    } catch (const std::exception&) {
        throw InvalidInput("direction '" + s + "' must be x,y");
    }
}

// strip N | map RxC | fan x,y ... | fan random K
CreasePattern generate(const std::vector<std::string>& g, const std::string& labels, unsigned seed) {
    if (g.empty()) throw InvalidInput("--gen needs a generator");
    auto lab = parse_labels(labels);
    const auto& kind = g[0];
    auto need = [&](std::size_t n) {
        if (g.size() != n) throw InvalidInput("generator '" + kind + "' takes " + std::to_string(n - 1) + " argument(s)");
    };
    if (kind == "strip") {
        need(2);
        int n = parse_int(g[1], "strip length");
        if (n < 1) throw InvalidInput("strip length must be positive");
        return gen::strip(n, lab);
    }
    if (kind == "map") {
        need(2);
        auto x = g[1].find('x');
        if (x == std::string::npos) throw InvalidInput("map size must be RxC");
        int r = parse_int(g[1].substr(0, x), "rows"), c = parse_int(g[1].substr(x + 1), "columns");
        if (r < 1 || c < 1) throw InvalidInput("map size must be positive");
        return gen::map(r, c, lab);
    }
    if (kind == "fan") {
        if (g.size() == 3 && g[1] == "random") {
            std::mt19937 rng(seed);
            int k = parse_int(g[2], "crease count");
            if (k < 2 || k % 2) throw InvalidInput("random fans need an even crease count >= 2");
            return gen::fan(gen::kawasaki_directions(k, rng), lab);
        }
        if (g.size() < 2) throw InvalidInput("fan needs directions x,y ... or 'random K'");
        std::vector<Point> dirs;
        for (std::size_t i = 1; i < g.size(); ++i) dirs.push_back(parse_direction(g[i]));
        return gen::fan(dirs, lab);
    }
    throw InvalidInput("unknown generator '" + kind + "'");
}

struct FoldInput {
    std::string file;
    std::vector<std::string> gen;
    std::string labels;
    unsigned seed = 1;

    CreasePattern pattern() const {
        if (!file.empty() && !gen.empty()) throw InvalidInput("give an instance file or --gen, not both");
        if (!gen.empty()) return generate(gen, labels, seed);
        if (file.empty()) throw InvalidInput("no instance: give a file or --gen");
        auto cp = io::crease_pattern_from_json(io::read_file(file));
        if (!labels.empty()) cp = gen::with_labels(cp, parse_labels(labels));
        return cp;
    }
};

void add_fold_input(CLI::App* cmd, FoldInput& in) {
    cmd->add_option("file", in.file, "crease pattern JSON");
    cmd->add_option("--gen", in.gen, "generator: strip N | map RxC | fan x,y ... | fan random K")
        ->expected(1, -1)
        ->allow_extra_args();
    cmd->add_option("--labels", in.labels, "one of M, V, - per crease");
    cmd->add_option("--seed", in.seed, "seed for random generators");
}

FlapState read_state(const std::string& path) { return io::flap_state_from_json(io::read_file(path)); }

Orientation parse_bits(const NclGraph& g, const std::string& s) {
    Json j = Json::array();
    for (char c : s) {
        if (c == ',' || c == ' ' || c == '[' || c == ']') continue;  // "110", "1,1,0" or [1,1,0]
        if (c != '0' && c != '1') throw InvalidInput("orientation bits must be 0 or 1");
        j.push_back(c - '0');
    }
    return io::orientation_from_json(g, j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"foldwork: flat-folding and flap reconfiguration workbench"};
    app.require_subcommand(1);
    app.fallthrough();  // inherited, so --pretty works after any subcommand
    bool pretty = false;
    app.add_flag("--pretty", pretty, "indent JSON output");
    std::function<int()> action;

    // ---- fold
    auto* fold = app.add_subcommand("fold", "flat foldability of crease patterns");
    fold->require_subcommand(1);
    FoldInput fin;
    bool use_oracle = false, unfolded = false;
    int threads = 1, ply_cap = 8;
    std::uint64_t oracle_states = 1'000'000;
    auto fold_cmd = [&](const char* name, const char* help) {
        auto* c = fold->add_subcommand(name, help);
        add_fold_input(c, fin);
        c->add_flag("--oracle", use_oracle, "use the brute-force oracle instead of the tree DP");
        c->add_option("--threads", threads, "worker threads for the DP")->check(CLI::PositiveNumber);
        c->add_option("--ply-cap", ply_cap, "refuse cells with more layers than this");
        c->add_option("--budget", oracle_states, "oracle budget in partial layerings");
        return c;
    };
    auto arrangement = [&] { return fold_arrangement(fin.pattern()); };
    auto dp_opts = [&](DpMode m) {
        DpOptions o;
        o.mode = m;
        o.threads = threads;
        o.ply_cap = ply_cap;
        return o;
    };
    fold_cmd("check", "decide flat foldability")->callback([&] {
        action = [&] {
            bool ok = false;
            try {
                auto fa = arrangement();
                ok = use_oracle ? oracle_decide(fa, {oracle_states}) : run_dp(fa, dp_opts(DpMode::Decide)).foldable;
            } catch (const NoLocalFolding& e) {
                emit({{"foldable", false}, {"reason", e.what()}}, pretty);
                return kNegative;
            }
            emit({{"foldable", ok}}, pretty);
            return ok ? 0 : kNegative;
        };
    });
    fold_cmd("count", "count flat foldings")->callback([&] {
        action = [&] {
            BigInt n = 0;
            try {
                auto fa = arrangement();
                n = use_oracle ? oracle_count(fa, {oracle_states}) : run_dp(fa, dp_opts(DpMode::Count)).count;
            } catch (const NoLocalFolding&) {
                n = 0;
            }
            return emit({{"foldable", n > 0}, {"count", io::bigint_json(n)}}, pretty);
        };
    });
    fold_cmd("witness", "one valid layering, cell id to facets top to bottom")->callback([&] {
        action = [&] {
            std::optional<GlobalLayering> w;
            try {
                auto fa = arrangement();
                if (use_oracle) {
                    w = oracle_witness(fa, {oracle_states});
                } else {
                    auto r = run_dp(fa, dp_opts(DpMode::Witness));
                    if (r.foldable) w = extract_witness(r);
                }
            } catch (const NoLocalFolding& e) {
                emit({{"foldable", false}, {"reason", e.what()}}, pretty);
                return kNegative;
            }
            if (!w) {
                emit({{"foldable", false}}, pretty);
                return kNegative;
            }
            return emit({{"foldable", true}, {"witness", io::layering_json(*w)}}, pretty);
        };
    });
    fold_cmd("ply", "ply of every arrangement cell")->callback([&] {
        action = [&] {
            auto fa = arrangement();
            Json cells = Json::array();
            for (int c = 0; c < fa.num_cells(); ++c) cells.push_back(fa.ply(c));
            return emit({{"ply", ply(fa)}, {"cells", cells}}, pretty);
        };
    });
    bool with_ntd = false;
    fold_cmd("graph", "cell adjacency graph and its decomposition width")->callback([&] {
        action = [&] {
            auto fa = arrangement();
            auto g = cell_adjacency_graph(fa);
            Json edges = Json::array();
            for (auto [u, v] : g.edges()) edges.push_back({u, v});
            auto ntd = decompose(g);
            Json out{{"vertices", g.size()}, {"edges", edges}, {"width", ntd.width()}};
            if (with_ntd) out["decomposition"] = io::to_json(make_nice(ntd));
            return emit(out, pretty);
        };
    })->add_flag("--decomposition", with_ntd, "include the nice tree decomposition");
    fold_cmd("svg", "arrangement shaded by ply")->callback([&] {
        action = [&] {
            auto cp = fin.pattern();
            std::cout << (unfolded ? svg::crease_pattern(cp) : svg::arrangement(fold_arrangement(cp)));
            return 0;
        };
    })->add_flag("--unfolded", unfolded, "draw the crease pattern instead");

    // ---- flaps
    auto* flaps = app.add_subcommand("flaps", "flaps and flips");
    flaps->require_subcommand(1);
    std::string flap_file, state_file, from_file, to_file;
    FlapBudget fbudget;
    auto flap_cmd = [&](const char* name, const char* help) {
        auto* c = flaps->add_subcommand(name, help);
        c->add_option("file", flap_file, "flap instance JSON")->required();
        c->add_option("--max-flaps", fbudget.max_flaps, "flap limit for exhaustive search");
        c->add_option("--max-states", fbudget.max_states, "state limit for exhaustive search");
        return c;
    };
    auto flap_inst = [&] { return io::flap_instance_from_json(io::read_file(flap_file)); };
    flap_cmd("enumerate", "all valid states")->callback([&] {
        action = [&] {
            auto all = enumerate_states(flap_inst(), fbudget);
            Json states = Json::array();
            for (const auto& st : all) states.push_back(io::to_json(st));
            return emit({{"count", all.size()}, {"states", states}}, pretty);
        };
    });
    flap_cmd("count", "number of valid states")->callback([&] {
        action = [&] { return emit({{"count", count_states(flap_inst(), fbudget)}}, pretty); };
    });
    flap_cmd("moves", "states one flip away")->callback([&] {
        action = [&] {
            auto inst = flap_inst();
            auto st = read_state(state_file);
            if (!validate_state(inst, st)) throw InvalidInput("state is not valid for the instance");
            Json out = Json::array();
            for (const auto& t : moves(inst, st)) out.push_back(io::to_json(t));
            return emit({{"moves", out}}, pretty);
        };
    })->add_option("--state", state_file, "state JSON")->required();
    {
        auto* c = flap_cmd("reach", "is one state reachable from another");
        c->add_option("--from", from_file, "state JSON")->required();
        c->add_option("--to", to_file, "state JSON")->required();
        c->callback([&] {
            action = [&] {
                auto inst = flap_inst();
                auto s = read_state(from_file), t = read_state(to_file);
                if (!validate_state(inst, s) || !validate_state(inst, t)) throw InvalidInput("state is not valid for the instance");
                bool r = reachable(inst, s, t, fbudget);
                emit({{"reachable", r}}, pretty);
                return r ? 0 : kNegative;
            };
        });
    }
    flap_cmd("connected", "is the flip graph connected")->callback([&] {
        action = [&] {
            auto comps = flap_components(flap_inst(), fbudget);
            Json sizes = Json::array();
            for (const auto& c : comps) sizes.push_back(c.size());
            emit({{"connected", comps.size() <= 1}, {"components", comps.size()}, {"sizes", sizes}}, pretty);
            return comps.size() <= 1 ? 0 : kNegative;
        };
    });
    flap_cmd("svg", "draw hinges, and placed flaps for a state")->callback([&] {
        action = [&] {
            auto inst = flap_inst();
            if (state_file.empty()) {
                std::cout << svg::flaps(inst);
                return 0;
            }
            auto st = read_state(state_file);
            if (!validate_state(inst, st)) throw InvalidInput("state is not valid for the instance");
            std::cout << svg::flaps(inst, &st);
            return 0;
        };
    })->add_option("--state", state_file, "state JSON");

    // ---- ncl
    auto* ncl = app.add_subcommand("ncl", "nondeterministic constraint logic");
    ncl->require_subcommand(1);
    std::string ncl_file, bits, from_bits, to_bits;
    NclBudget nbudget;
    auto ncl_cmd = [&](const char* name, const char* help) {
        auto* c = ncl->add_subcommand(name, help);
        c->add_option("file", ncl_file, "NCL graph JSON")->required();
        c->add_option("--max-edges", nbudget.max_edges, "edge limit for exhaustive search");
        return c;
    };
    auto ncl_graph = [&] { return io::ncl_graph_from_json(io::read_file(ncl_file)); };
    ncl_cmd("validate", "does an orientation satisfy every vertex")->callback([&] {
        action = [&] {
            auto g = ncl_graph();
            bool ok = validate(g, parse_bits(g, bits));
            emit({{"valid", ok}}, pretty);
            return ok ? 0 : kNegative;
        };
    })->add_option("--orientation", bits, "one bit per edge, 1 = v to u")->required();
    ncl_cmd("count", "number of satisfying orientations")->callback([&] {
        action = [&] { return emit({{"count", count_orientations(ncl_graph(), nbudget)}}, pretty); };
    });
    {
        auto* c = ncl_cmd("reach", "is one orientation reachable from another");
        c->add_option("--from", from_bits, "orientation bits")->required();
        c->add_option("--to", to_bits, "orientation bits")->required();
        c->callback([&] {
            action = [&] {
                auto g = ncl_graph();
                auto s = parse_bits(g, from_bits), t = parse_bits(g, to_bits);
                if (!validate(g, s) || !validate(g, t)) throw InvalidInput("orientation does not satisfy the graph");
                bool r = reachable(g, s, t, nbudget);
                emit({{"reachable", r}}, pretty);
                return r ? 0 : kNegative;
            };
        });
    }
    ncl_cmd("connected", "is the move graph connected")->callback([&] {
        action = [&] {
            auto comps = components(ncl_graph(), nbudget);
            emit({{"connected", comps.size() <= 1}, {"components", comps.size()}}, pretty);
            return comps.size() <= 1 ? 0 : kNegative;
        };
    });
    std::string bi_file;
    auto* reduce = ncl->add_subcommand("reduce", "matchings of a cubic bipartite graph to NCL");
    reduce->add_option("file", bi_file, "biadjacency matrix JSON")->required();
    reduce->callback([&] {
        action = [&] {
            auto b = io::biadjacency_from_json(io::read_file(bi_file));
            auto g = matchings_to_ncl(b);
            return emit({{"graph", io::to_json(g)}, {"matchings", io::bigint_json(count_matchings(b))}}, pretty);
        };
    });

    // ---- gadget
    auto* gadget = app.add_subcommand("gadget", "flap gadgets and NCL compilation");
    gadget->require_subcommand(1);
    std::string kind_name, graph_file, routing_file;
    int edge_k = 1, red_k = -1;
    bool as_svg = false;
    FlapBudget gbudget{400, 2'000'000};
    auto* make = gadget->add_subcommand("make", "blueprint of one gadget");
    make->add_option("kind", kind_name, "edge, and, and-corner, or, turn, crossover")->required();
    make->add_option("--k", edge_k, "flaps in an edge gadget");
    make->add_flag("--svg", as_svg, "draw instead of JSON");
    make->callback([&] {
        action = [&] {
            auto bp = make_gadget(parse_gadget_kind(kind_name), edge_k);
            if (as_svg) {
                std::cout << svg::flaps(bp.instance());
                return 0;
            }
            return emit(io::to_json(bp), pretty);
        };
    });
    auto* compile = gadget->add_subcommand("compile", "compile an NCL graph along a grid routing");
    compile->add_option("--graph", graph_file, "NCL graph JSON")->required();
    compile->add_option("--routing", routing_file, "grid routing JSON")->required();
    compile->add_option("--k", red_k, "flaps per red edge (default: smallest allowed)");
    compile->add_flag("--svg", as_svg, "draw instead of JSON");
    auto compiled = [&] {
        auto g = io::ncl_graph_from_json(io::read_file(graph_file));
        auto r = io::routing_from_json(io::read_file(routing_file));
        int k = red_k;
        if (k < 0) {
            auto [lo, hi] = red_length_range(g, r);
            if (lo > hi) throw RoutingInvalid("no red edge length fits this routing");
            k = lo;
        }
        return compile_ncl(g, r, k);
    };
    compile->callback([&] {
        action = [&] {
            auto c = compiled();
            if (as_svg) {
                std::cout << svg::flaps(c.inst);
                return 0;
            }
            return emit(io::to_json(c), pretty);
        };
    });
    auto* verify = gadget->add_subcommand("verify", "check a gadget's port table or a compiled instance");
    verify->add_option("kind", kind_name, "gadget kind (omit with --graph)");
    verify->add_option("--k", edge_k, "flaps in an edge gadget");
    verify->add_option("--graph", graph_file, "NCL graph JSON");
    verify->add_option("--routing", routing_file, "grid routing JSON");
    verify->add_option("--red-k", red_k, "flaps per red edge");
    verify->add_option("--max-states", gbudget.max_states, "state limit");
    verify->callback([&] {
        action = [&] {
            if (!graph_file.empty()) {
                if (routing_file.empty()) throw InvalidInput("--graph needs --routing");
                auto rep = verify_compiled(compiled(), gbudget);
                emit({{"states", rep.states},
                      {"canonical", rep.canonical},
                      {"orientations", rep.orientations},
                      {"flap_components", rep.flap_components},
                      {"ncl_components", rep.ncl_components},
                      {"monotone", rep.monotone},
                      {"bijection", rep.bijection},
                      {"components_match", rep.components_match},
                      {"ok", rep.ok()}},
                     pretty);
                return rep.ok() ? 0 : kNegative;
            }
            if (kind_name.empty()) throw InvalidInput("give a gadget kind or --graph and --routing");
            auto kind = parse_gadget_kind(kind_name);
            auto bp = make_gadget(kind, edge_k);
            auto got = port_patterns(bp, gbudget);
            std::set<unsigned> want;
            switch (kind) {
                case GadgetKind::And:
                case GadgetKind::AndCorner: want = {1, 3, 5, 6, 7}; break;
                case GadgetKind::Or: want = {1, 2, 3, 4, 5, 6, 7}; break;
                case GadgetKind::Crossover:
                    for (unsigned a : {1u, 2u, 3u})
                        for (unsigned b : {1u, 2u, 3u}) want.insert(a | b << 2);
                    break;
                default: want = {1, 2, 3};
            }
            Json pats = Json::array();
            for (unsigned p : got) {
                Json in = Json::array();
                for (std::size_t i = 0; i < bp.ports.size(); ++i)
                    if (p >> i & 1) in.push_back(bp.ports[i].name);
                pats.push_back(in);
            }
            bool ok = got == want;
            emit({{"kind", gadget_name(kind)},
                  {"states", count_states(bp.instance(), gbudget)},
                  {"patterns", pats},
                  {"ok", ok}},
                 pretty);
            return ok ? 0 : kNegative;
        };
    });

    // ---- bipyramid
    auto* bip = app.add_subcommand("bipyramid", "cyclic polygons and bipyramids");
    bip->require_subcommand(1);
    std::vector<std::string> side_args;
    std::string ell_arg;
    double tol = 1e-12;
    auto sides = [&] {
        std::vector<double> s;
        for (const auto& a : side_args) s.push_back(parse_double(a));
        return s;
    };
    auto* radius = bip->add_subcommand("radius", "circumradius of the cyclic polygon");
    radius->add_option("sides", side_args, "side lengths")->required();
    radius->add_option("--tol", tol, "bisection tolerance");
    radius->callback([&] { action = [&] { return emit(io::to_json(circumradius(sides(), tol)), pretty); }; });
    auto* realize_cmd = bip->add_subcommand("realize", "3D bipyramid over the cyclic polygon");
    realize_cmd->add_option("sides", side_args, "side lengths")->required();
    realize_cmd->add_option("--ell", ell_arg, "pole edge length")->required();
    realize_cmd->add_option("--tol", tol, "bisection tolerance");
    realize_cmd->callback(
        [&] { action = [&] { return emit(io::to_json(realize(sides(), parse_double(ell_arg), tol)), pretty); }; });

    // ---- gen
    auto* gen_cmd = app.add_subcommand("gen", "crease pattern generators");
    std::vector<std::string> gen_args;
    std::string gen_labels;
    unsigned gen_seed = 1;
    gen_cmd->add_option("generator", gen_args, "strip N | map RxC | fan x,y ... | fan random K")->required();
    gen_cmd->add_option("--labels", gen_labels, "one of M, V, - per crease");
    gen_cmd->add_option("--seed", gen_seed, "seed for random generators");
    gen_cmd->callback([&] {
        action = [&] { return emit(io::to_json(generate(gen_args, gen_labels, gen_seed)), pretty); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }
    try {
        return action ? action() : kInputError;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const NoWitness& e) {
        std::cerr << e.what() << "\n";
        return kNegative;
    } catch (const InvalidInput& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const RoutingInvalid& e) {
        std::cerr << "routing error: " << e.what() << "\n";
        return kInputError;
    } catch (const NoLocalFolding& e) {
        std::cerr << "no local flat folding: " << e.what() << "\n";
        return kNegative;
    } catch (const DecompositionInvalid& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    }
}
