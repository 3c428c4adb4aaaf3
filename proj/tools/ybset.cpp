// Command-line front end: enumeration, classification, invariants, file I/O.

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ybset/enumerate.hpp"
#include "ybset/io.hpp"
#include "ybset/links.hpp"
#include "ybset/structure.hpp"
#include "ybset/tstruct.hpp"

using nlohmann::json;
using namespace ybset;

namespace {

std::atomic<bool> g_stop{false};
void handle_sigint(int) { g_stop.store(true); }

std::uint64_t budget_from_env(std::uint64_t fallback) {
    const char* v = std::getenv("YBSET_BUDGET");
    if (!v) return fallback;
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(v, &end, 10);
    if (end == v || parsed == 0) return fallback;
    return parsed;
}

Permutation parse_perm_arg(const std::string& text, int n) {
    std::istringstream is(text);
    std::vector<int> img;
    int v;
    while (is >> v) img.push_back(v);
    if (n > 0 && (int)img.size() != n)
        throw StructuralError("expected " + std::to_string(n) + " images");
    return Permutation(img);
}

LinkDiagram load_diagram(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot open " + path);
    json j = json::parse(in, nullptr, true);
    LinkDiagram d;
    d.edges = j.at("edges").get<int>();
    d.free_loops = j.value("free_loops", 0);
    for (auto& c : j.at("crossings"))
        d.crossings.push_back({c.at("inL").get<int>(), c.at("inR").get<int>(),
                               c.at("outL").get<int>(), c.at("outR").get<int>()});
    check_diagram(d);
    return d;
}

void print_solution(std::ostream& out, const SolutionTable& s, const std::string& format) {
    if (format == "text")
        out << solution_to_text(s);
    else
        out << solution_to_json(s) << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"finite symmetric-set toolkit"};
    app.require_subcommand(1);

    // enumerate
    auto* cmd_enum = app.add_subcommand("enumerate", "enumerate classes of size n");
    int en_n = 4, en_jobs = 0;
    std::string en_out, en_ckpt;
    cmd_enum->add_option("-n", en_n, "set size")->required();
    cmd_enum->add_option("--out", en_out, "output JSONL file (default stdout)");
    cmd_enum->add_option("--jobs", en_jobs, "worker count");
    cmd_enum->add_option("--checkpoint", en_ckpt, "resumable checkpoint file");

    // table
    auto* cmd_table = app.add_subcommand("table", "classification counts for 1..n");
    int tb_n = 4, tb_jobs = 0;
    bool tb_csv = false;
    cmd_table->add_option("-n", tb_n, "largest size")->required();
    cmd_table->add_flag("--csv", tb_csv, "CSV output");
    cmd_table->add_option("--jobs", tb_jobs, "worker count");

    // check
    auto* cmd_check = app.add_subcommand("check", "validate a solution file");
    std::string ck_in;
    cmd_check->add_option("--in", ck_in, "solution file")->required();

    // classify
    auto* cmd_classify = app.add_subcommand("classify", "taxonomy of one solution");
    std::string cl_in;
    cmd_classify->add_option("--in", cl_in, "solution file")->required();

    // structure
    auto* cmd_struct = app.add_subcommand("structure", "structure-group invariants");
    std::string st_in;
    bool st_json = false;
    cmd_struct->add_option("--in", st_in, "solution file")->required();
    cmd_struct->add_flag("--json", st_json, "JSON output");

    // retract
    auto* cmd_retract = app.add_subcommand("retract", "quotient by equal actions");
    std::string rt_in;
    bool rt_proj = false;
    cmd_retract->add_option("--in", rt_in, "solution file")->required();
    cmd_retract->add_flag("--proj", rt_proj, "include the projection");

    // blowup
    auto* cmd_blow = app.add_subcommand("blowup", "build a solution from a bundle");
    std::string bl_base, bl_bundle;
    cmd_blow->add_option("--base", bl_base, "base solution file")->required();
    cmd_blow->add_option("--bundle", bl_bundle, "bundle JSON file")->required();

    // make
    auto* cmd_make = app.add_subcommand("make", "named constructions");
    cmd_make->require_subcommand(1);
    auto* mk_trivial = cmd_make->add_subcommand("trivial");
    int mt_n = 1;
    mk_trivial->add_option("-n", mt_n)->required();
    auto* mk_cyclic = cmd_make->add_subcommand("cyclic");
    int mc_n = 2;
    mk_cyclic->add_option("-n", mc_n)->required();
    auto* mk_perm = cmd_make->add_subcommand("perm");
    int mp_n = 0;
    std::string mp_images, mp_cycle;
    mk_perm->add_option("-n", mp_n, "set size")->required();
    mk_perm->add_option("--images", mp_images, "space-separated image list");
    mk_perm->add_option("--cycle", mp_cycle, "cycle, e.g. \"0 1 2\"");
    auto* mk_affine = cmd_make->add_subcommand("affine");
    std::string ma_group, ma_a, ma_b, ma_z;
    mk_affine->add_option("--group", ma_group, "invariant factors, e.g. \"2,2\"")->required();
    mk_affine->add_option("--a", ma_a, "matrix entries row-major")->required();
    mk_affine->add_option("--b", ma_b, "matrix entries row-major")->required();
    mk_affine->add_option("--z", ma_z, "tuple entries");

    // union
    auto* cmd_union = app.add_subcommand("union", "twisted or general union");
    std::string un_x, un_y, un_fx, un_gy, un_cross;
    cmd_union->add_option("--x", un_x, "first solution")->required();
    cmd_union->add_option("--y", un_y, "second solution")->required();
    cmd_union->add_option("--fx", un_fx, "automorphism of X (images)");
    cmd_union->add_option("--gy", un_gy, "automorphism of Y (images)");
    cmd_union->add_option("--cross", un_cross, "cross-map JSON file");

    // colorings
    auto* cmd_color = app.add_subcommand("colorings", "count diagram colorings");
    std::string co_diagram, co_solution;
    bool co_expect = false;
    cmd_color->add_option("--diagram", co_diagram)->required();
    cmd_color->add_option("--solution", co_solution)->required();
    cmd_color->add_flag("--expect-planar", co_expect, "fail when the count is obstructed");

    // tstruct
    auto* cmd_t = app.add_subcommand("tstruct", "T-structures on Z/n");
    int ts_n = 0;
    bool ts_enum = false;
    std::string ts_check;
    int ts_ring_c = -1;
    cmd_t->add_option("--order", ts_n)->required();
    cmd_t->add_flag("--enumerate", ts_enum);
    cmd_t->add_option("--check", ts_check, "permutation JSON (images array)");
    cmd_t->add_option("--ring-c", ts_ring_c, "ring element c");

    // verify-golden
    auto* cmd_gold = app.add_subcommand("verify-golden", "diff against reference counts");
    int vg_n = 6, vg_jobs = 0;
    cmd_gold->add_option("-n,--n-max", vg_n, "largest size (default 6)");
    cmd_gold->add_option("--jobs", vg_jobs, "worker count");

    CLI11_PARSE(app, argc, argv);

    if (cmd_enum->parsed()) {
        std::signal(SIGINT, handle_sigint);
        std::ofstream file;
        std::ostream* out = &std::cout;
        if (!en_out.empty()) {
            file.open(en_out);
            if (!file) throw StructuralError("cannot open " + en_out);
            out = &file;
        }
        EnumerateOptions opts;
        opts.jobs = en_jobs;
        opts.checkpoint = en_ckpt;
        opts.stop = &g_stop;
        long count = enumerate_solutions(
            en_n, [&](const SolutionTable& s) { *out << solution_to_json(s) << "\n"; }, opts);
        std::cerr << count << " classes\n";
        return 0;
    }

    if (cmd_table->parsed()) {
        auto rows = summary_table(tb_n, tb_jobs);
        if (tb_csv) std::cout << "n,s,ds,tu,gtu,id,idmp,idir,idira\n";
        for (const auto& r : rows) {
            if (tb_csv)
                std::cout << r.n << ',' << r.s << ',' << r.ds << ',' << r.tu << ',' << r.gtu
                          << ',' << r.id << ',' << r.idmp << ',' << r.idir << ',' << r.idira
                          << "\n";
            else
                std::cout << r.n << "\t" << r.s << "\t" << r.ds << "\t" << r.tu << "\t"
                          << r.gtu << "\t" << r.id << "\t" << r.idmp << "\t" << r.idir
                          << "\t" << r.idira << "\n";
        }
        return 0;
    }

    if (cmd_check->parsed()) {
        auto s = load_solution(ck_in);
        auto rep = validate(s);
        json j{{"bijective", rep.bijective},
               {"involutive", rep.involutive},
               {"braided", rep.braided},
               {"nondegenerate", rep.nondegenerate}};
        std::cout << j.dump() << "\n";
        return rep.ok() ? 0 : 1;
    }

    if (cmd_classify->parsed()) {
        auto s = load_solution(cl_in);
        if (!validate(s).ok()) {
            std::cerr << "input does not validate\n";
            return 1;
        }
        auto rec = classify(s);
        json j{{"decomposable", rec.decomposable},
               {"twisted_union", rec.twisted_union},
               {"generalized_twisted_union", rec.generalized_twisted_union},
               {"indecomposable", rec.indecomposable},
               {"irretractable", rec.irretractable},
               {"affine", rec.affine}};
        if (rec.multipermutation_level)
            j["multipermutation_level"] = *rec.multipermutation_level;
        else
            j["multipermutation_level"] = nullptr;
        std::cout << j.dump() << "\n";
        return 0;
    }

    if (cmd_struct->parsed()) {
        auto s = load_solution(st_in);
        auto d = compute_structure(s, budget_from_env(100000));
        bool solvable = is_solvable(d);
        bool transitive = orbits(s).size() == 1;
        bool cocycle_ok = true;
        for (int i = 0; i < (int)d.order() && cocycle_ok; i++)
            for (int j = 0; j < (int)d.order(); j++) {
                int ij = d.mult(i, j);
                int lhs = d.theta(d.cocycle[ij]);
                int rhs = d.a_group.add(
                    d.act(d.inverse(j), d.theta(d.cocycle[i])), d.theta(d.cocycle[j]));
                if (lhs != rhs) {
                    cocycle_ok = false;
                    break;
                }
            }
        json inv = json::array();
        for (long long f : d.invariant_factors)
            if (f > 1) inv.push_back(f);
        json j{{"order", d.order()},
               {"invariant_factors", inv},
               {"solvable", solvable},
               {"transitive", transitive},
               {"cocycle_ok", cocycle_ok}};
        if (st_json)
            std::cout << j.dump() << "\n";
        else
            std::cout << j.dump(2) << "\n";
        return cocycle_ok ? 0 : 4;
    }

    if (cmd_retract->parsed()) {
        auto s = load_solution(rt_in);
        if (!validate(s).ok()) {
            std::cerr << "input does not validate\n";
            return 1;
        }
        auto [r, proj] = retraction(s);
        if (rt_proj) {
            json j = json::parse(solution_to_json(r));
            j["projection"] = proj;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << solution_to_json(r) << "\n";
        }
        return 0;
    }

    if (cmd_blow->parsed()) {
        BundleSpec b;
        b.base = load_solution(bl_base);
        std::ifstream in(bl_bundle);
        if (!in) throw StructuralError("cannot open " + bl_bundle);
        json j = json::parse(in);
        b.projection = j.at("projection").get<std::vector<int>>();
        b.total_size = (int)b.projection.size();
        for (auto& row : j.at("gen_action"))
            b.gen_action.emplace_back(row.get<std::vector<int>>());
        auto s = blow_up(b);
        std::cout << solution_to_json(s) << "\n";
        return 0;
    }

    if (cmd_make->parsed()) {
        SolutionTable s;
        if (mk_trivial->parsed()) {
            s = trivial_solution(mt_n);
        } else if (mk_cyclic->parsed()) {
            s = cyclic_solution(mc_n);
        } else if (mk_perm->parsed()) {
            Permutation p = Permutation::identity(mp_n);
            if (!mp_images.empty()) {
                p = parse_perm_arg(mp_images, mp_n);
            } else if (!mp_cycle.empty()) {
                std::istringstream is(mp_cycle);
                std::vector<int> cyc;
                int v;
                while (is >> v) cyc.push_back(v);
                std::vector<int> img(mp_n);
                std::iota(img.begin(), img.end(), 0);
                for (size_t i = 0; i < cyc.size(); i++)
                    img[cyc[i]] = cyc[(i + 1) % cyc.size()];
                p = Permutation(img);
            }
            s = permutation_solution(p);
        } else if (mk_affine->parsed()) {
            std::vector<int> factors;
            std::istringstream gs(ma_group);
            for (std::string tok; std::getline(gs, tok, ',');)
                factors.push_back(std::stoi(tok));
            AbelianGroup g(factors);
            auto parse_mat = [&](const std::string& text) {
                std::istringstream is(text);
                std::vector<int> entries;
                for (std::string tok; std::getline(is, tok, ',');)
                    entries.push_back(std::stoi(tok));
                if ((int)entries.size() != g.rank() * g.rank())
                    throw StructuralError("matrix needs rank^2 entries");
                Endomorphism e{g, entries};
                return e;
            };
            int z = 0;
            if (!ma_z.empty()) {
                std::istringstream is(ma_z);
                std::vector<int> t;
                for (std::string tok; std::getline(is, tok, ',');)
                    t.push_back(std::stoi(tok));
                z = g.index(t);
            }
            s = affine_solution(g, parse_mat(ma_a), parse_mat(ma_b), z);
        }
        print_solution(std::cout, s, "json");
        return 0;
    }

    if (cmd_union->parsed()) {
        auto x = load_solution(un_x);
        auto y = load_solution(un_y);
        SolutionTable s;
        if (!un_cross.empty()) {
            std::ifstream in(un_cross);
            if (!in) throw StructuralError("cannot open " + un_cross);
            json j = json::parse(in);
            std::vector<std::vector<std::pair<int, int>>> cross;
            for (auto& row : j.at("cross")) {
                std::vector<std::pair<int, int>> r;
                for (auto& cell : row) r.emplace_back(cell[0].get<int>(), cell[1].get<int>());
                cross.push_back(std::move(r));
            }
            s = assemble_union(x, y, cross);
        } else {
            Permutation f = un_fx.empty() ? Permutation::identity(x.n)
                                          : parse_perm_arg(un_fx, x.n);
            Permutation g = un_gy.empty() ? Permutation::identity(y.n)
                                          : parse_perm_arg(un_gy, y.n);
            s = twisted_union(x, y, f, g);
        }
        std::cout << solution_to_json(s) << "\n";
        return 0;
    }

    if (cmd_color->parsed()) {
        auto d = load_diagram(co_diagram);
        auto s = load_solution(co_solution);
        auto rep = planarity_obstruction(d, s);
        json j{{"colorings", rep.colorings},
               {"expected", rep.expected},
               {"components", component_count(d)},
               {"obstructed", rep.obstructed}};
        std::cout << j.dump() << "\n";
        return (co_expect && rep.obstructed) ? 1 : 0;
    }

    if (cmd_t->parsed()) {
        if (ts_enum) {
            for (const auto& t : enumerate_t_structures(ts_n)) {
                json j = t.images();
                std::cout << j.dump() << "\n";
            }
            return 0;
        }
        if (!ts_check.empty()) {
            std::ifstream in(ts_check);
            if (!in) throw StructuralError("cannot open " + ts_check);
            json j = json::parse(in);
            Permutation t(j.get<std::vector<int>>());
            AbelianGroup a(ts_n > 1 ? std::vector<int>{ts_n} : std::vector<int>{});
            bool ok = is_t_structure(a, t);
            std::cout << (ok ? "true" : "false") << "\n";
            return ok ? 0 : 1;
        }
        if (ts_ring_c >= 0) {
            auto [t, s] = ring_solution(ts_n, ts_ring_c);
            json j{{"T", t.images()}, {"solution", json::parse(solution_to_json(s))}};
            std::cout << j.dump() << "\n";
            return 0;
        }
        std::cerr << "tstruct needs --enumerate, --check or --ring-c\n";
        return 2;
    }

    if (cmd_gold->parsed()) {
        auto rep = verify_golden(vg_n, vg_jobs);
        for (const auto& r : rep.rows)
            std::cout << r.n << "\t" << r.s << "\t" << r.ds << "\t" << r.tu << "\t" << r.gtu
                      << "\t" << r.id << "\t" << r.idmp << "\t" << r.idir << "\t" << r.idira
                      << "\n";
        if (rep.pass) {
            std::cout << "PASS: all cells match through n = " << vg_n << "\n";
            return 0;
        }
        for (const auto& m : rep.mismatches)
            std::cout << "MISMATCH n=" << m.n << " " << m.column << ": got " << m.got
                      << " want " << m.want << "\n";
        return 1;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const InternalInvariantViolation& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return 4;
    } catch (const InterruptedError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const StructuralError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
