#pragma once

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "spshadow/branch.hpp"
#include "spshadow/builtins.hpp"
#include "spshadow/pencil_json.hpp"
#include "spshadow/sdp.hpp"
#include "spshadow/svg.hpp"

namespace spshadow::cli {

namespace detail {

using nlohmann::ordered_json;

inline SymPencil resolve_pencil(const std::string& spec) {
    if (spec.rfind("builtin:", 0) == 0) return builtin_pencil(spec.substr(8));
    if (spec.rfind("family:", 0) == 0) {
        std::string rest = spec.substr(7);
        std::size_t colon = rest.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("pencil spec: expected family:<name>:<eps>");
        return family_pencil({rest.substr(0, colon), Rational::parse(rest.substr(colon + 1))});
    }
    std::ifstream in(spec);
    if (!in) throw std::invalid_argument("pencil file not found: " + spec);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_pencil(buf.str());
}

inline std::vector<double> parse_reals(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            if (item.find('/') != std::string::npos)
                out.push_back(Rational::parse(item).to_double());
            else
                out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw std::invalid_argument(what + ": bad number '" + item + "'");
        }
    }
    if (out.empty()) throw std::invalid_argument(what + ": empty list");
    return out;
}

inline std::string fmt(double v, const char* spec = "%.6f") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

inline BranchMethod parse_method(const std::string& m) {
    if (m == "groebner") return BranchMethod::Groebner;
    if (m == "resultant") return BranchMethod::Resultant;
    if (m == "auto") return BranchMethod::Auto;
    throw std::invalid_argument("--method: expected groebner, resultant or auto");
}

inline ordered_json stratum_json(const StratumCurve& c) {
    ordered_json j;
    j["rank"] = c.rank;
    j["expected_degree"] =
        c.expected.degree ? ordered_json(*c.expected.degree) : ordered_json(nullptr);
    j["principal"] = c.principal();
    if (c.principal()) {
        j["poly"] = c.poly().to_text();
        j["degree"] = c.degree;
    } else {
        ordered_json gens = ordered_json::array();
        for (const auto& g : c.elimination_ideal().generators()) gens.push_back(g.to_text());
        j["generators"] = gens;
    }
    return j;
}

}  // namespace detail

/// Full command dispatch; returns the process exit code.
/// 0 success, 2 input error, 3 budget exceeded, 4 numerical failure.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using detail::fmt;
    using detail::ordered_json;

    CLI::App app{"spectrahedral shadow boundary toolkit"};
    app.require_subcommand(1);

    // ---- pataki ----
    int pk_n = 0, pk_p = 0;
    bool pk_json = false;
    auto* pataki = app.add_subcommand("pataki", "rank range and boundary degrees for (n, p)");
    pataki->add_option("--n", pk_n, "matrix size")->required();
    pataki->add_option("--p", pk_p, "projection codimension")->required();
    pataki->add_flag("--json", pk_json, "machine-readable output");

    // ---- degree ----
    int dg_n = 0, dg_p = 0, dg_r = 0;
    bool dg_json = false;
    auto* degree = app.add_subcommand("degree", "boundary degree for one (n, p, r)");
    degree->add_option("--n", dg_n)->required();
    degree->add_option("--p", dg_p)->required();
    degree->add_option("--r", dg_r)->required();
    degree->add_flag("--json", dg_json);

    // shared pencil options
    struct PencilArgs {
        std::string spec;
        bool no_saturate = false, no_reduce = false, json = false, long_running = false;
        std::string method = "auto";
        std::uint64_t budget_pairs = GBOptions{}.max_pairs;
    };
    auto add_pencil_opts = [](CLI::App* cmd, PencilArgs& a, bool with_branch_flags) {
        cmd->add_option("pencil", a.spec, "builtin:<name>, family:<name>:<eps>, or a JSON file")
            ->required();
        cmd->add_flag("--json", a.json);
        if (with_branch_flags) {
            cmd->add_flag("--no-saturate", a.no_saturate, "skip lower-stratum saturation");
            cmd->add_flag("--no-reduce", a.no_reduce, "keep multiplicities (no squarefree reduction)");
            cmd->add_option("--method", a.method, "groebner | resultant | auto");
            cmd->add_option("--budget-pairs", a.budget_pairs, "Groebner pair budget");
            cmd->add_flag("--long-running", a.long_running, "allow heavy Jacobian-minor pipelines");
        }
    };

    // ---- boundary ----
    PencilArgs bd;
    int bd_rank = 0;
    auto* boundary = app.add_subcommand("boundary", "branch-locus polynomial for one rank");
    add_pencil_opts(boundary, bd, true);
    boundary->add_option("--rank", bd_rank, "boundary rank r")->required();

    // ---- report ----
    PencilArgs rp;
    auto* report = app.add_subcommand("report", "branch loci for every rank in the Pataki range");
    add_pencil_opts(report, rp, true);

    // ---- transversal ----
    PencilArgs tv;
    auto* transversal = app.add_subcommand("transversal", "corank-1 smoothness of the symmetroid");
    add_pencil_opts(transversal, tv, false);
    std::uint64_t tv_budget = GBOptions{}.max_pairs;
    transversal->add_option("--budget-pairs", tv_budget);

    // ---- member ----
    PencilArgs mb;
    std::string mb_point;
    double mb_tol = 1e-7;
    int mb_max_iter = 5000;
    auto* member = app.add_subcommand("member", "numerical shadow membership for a point");
    add_pencil_opts(member, mb, false);
    member->add_option("--point", mb_point, "comma-separated coordinates")->required();
    member->add_option("--tol", mb_tol);
    member->add_option("--max-iter", mb_max_iter);

    // ---- support ----
    PencilArgs sp;
    std::string sp_dir;
    double sp_tol = 1e-9;
    auto* support = app.add_subcommand("support", "support function in one direction");
    add_pencil_opts(support, sp, false);
    support->add_option("--dir", sp_dir, "comma-separated direction")->required();
    support->add_option("--tol", sp_tol);

    // ---- scan ----
    PencilArgs sc;
    int sc_dirs = 64;
    double sc_tol = 1e-9;
    auto* scan = app.add_subcommand("scan", "boundary points and ranks over a direction sweep");
    add_pencil_opts(scan, sc, false);
    scan->add_option("--directions", sc_dirs);
    scan->add_option("--tol", sc_tol);

    // ---- render ----
    PencilArgs rd;
    std::string rd_out, rd_window = "-2,2,-2,2";
    int rd_grid = 256, rd_scan = 96;
    std::vector<std::string> rd_curves;
    std::vector<int> rd_ranks;
    auto* render = app.add_subcommand("render", "SVG of the shadow and implicit curves");
    add_pencil_opts(render, rd, true);
    render->add_option("--out", rd_out, "output file (stdout when omitted)");
    render->add_option("--window", rd_window, "xmin,xmax,ymin,ymax");
    render->add_option("--grid", rd_grid, "sign-grid resolution");
    render->add_option("--scan", rd_scan, "boundary-scan directions (0 disables)");
    render->add_option("--curve", rd_curves, "extra implicit curve in canonical text");
    render->add_option("--rank", rd_ranks, "draw the branch curve of this rank");

    // ---- builtin ----
    std::string bi_name;
    auto* builtin = app.add_subcommand("builtin", "emit a builtin pencil as JSON");
    builtin->add_option("name", bi_name, "builtin name or family:<name>:<eps>")->required();

    std::vector<const char*> argv;
    argv.push_back("spshadow");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp& e) {
            out << app.help();
            return 0;
        } catch (const CLI::ParseError& e) {
            err << e.what() << "\n";
            return 2;
        }

        auto branch_options = [&](const PencilArgs& a) {
            BoundaryReportOptions o;
            if (a.no_saturate) o.saturate_lower = false;
            o.reduce = !a.no_reduce;
            o.method = detail::parse_method(a.method);
            o.gb.max_pairs = a.budget_pairs;
            o.long_running = a.long_running;
            return o;
        };

        if (*pataki) {
            PatakiRange range = pataki_range(pk_n, pk_p);
            ordered_json ranks = ordered_json::array(), degs = ordered_json::array();
            for (int r : range.ranks) {
                ranks.push_back(r);
                auto e = sdp_degree(pk_n, pk_p, r);
                degs.push_back(e.degree ? ordered_json(*e.degree) : ordered_json(nullptr));
            }
            if (pk_json) {
                ordered_json j;
                j["ranks"] = ranks;
                j["degrees"] = degs;
                out << j.dump() << "\n";
            } else {
                out << "ranks:";
                for (int r : range.ranks) out << " " << r;
                out << "\ndegrees:";
                for (const auto& d : degs) out << " " << (d.is_null() ? "?" : d.dump());
                out << "\n";
            }
            return 0;
        }

        if (*degree) {
            DegreeEntry e = sdp_degree(dg_n, dg_p, dg_r);
            if (dg_json) {
                ordered_json j;
                j["n"] = dg_n;
                j["p"] = dg_p;
                j["r"] = dg_r;
                j["degree"] = e.degree ? ordered_json(*e.degree) : ordered_json(nullptr);
                out << j.dump() << "\n";
            } else {
                out << (e.degree ? std::to_string(*e.degree) : "unknown") << "\n";
            }
            return 0;
        }

        if (*boundary) {
            SymPencil P = detail::resolve_pencil(bd.spec);
            BoundaryReportOptions ro = branch_options(bd);
            PatakiRange range = pataki_range(P.n, P.p);
            BranchOptions bo;
            bo.saturate_lower = ro.saturate_lower
                                    ? *ro.saturate_lower
                                    : (!range.ranks.empty() && bd_rank > range.ranks.front());
            bo.reduce = ro.reduce;
            bo.method = ro.method;
            bo.gb = ro.gb;
            bo.long_running = ro.long_running;
            StratumCurve c = rank_branch_locus(P, bd_rank, bo);
            if (bd.json) {
                out << detail::stratum_json(c).dump() << "\n";
            } else if (c.principal()) {
                out << c.poly().to_text() << "\n";
            } else if (c.elimination_ideal().is_zero_ideal()) {
                out << "not principal: elimination ideal is zero (dense image)\n";
            } else {
                out << "not principal: " << c.elimination_ideal().generators().size()
                    << " generators\n";
                for (const auto& g : c.elimination_ideal().generators())
                    out << "  " << g.to_text() << "\n";
            }
            return 0;
        }

        if (*report) {
            SymPencil P = detail::resolve_pencil(rp.spec);
            auto entries = boundary_report(P, branch_options(rp));
            if (rp.json) {
                ordered_json arr = ordered_json::array();
                for (const auto& e : entries) {
                    if (e.curve) {
                        arr.push_back(detail::stratum_json(*e.curve));
                    } else {
                        ordered_json j;
                        j["rank"] = e.rank;
                        j["skipped"] = e.skip_reason;
                        arr.push_back(j);
                    }
                }
                out << arr.dump() << "\n";
            } else {
                for (const auto& e : entries) {
                    std::string expected =
                        e.expected.degree ? std::to_string(*e.expected.degree) : "?";
                    if (!e.curve) {
                        out << "rank " << e.rank << ": skipped: " << e.skip_reason << "\n";
                    } else if (e.curve->principal()) {
                        out << "rank " << e.rank << ": degree " << e.curve->degree << " (expected "
                            << expected << "): " << e.curve->poly().to_text() << "\n";
                    } else {
                        out << "rank " << e.rank << ": not principal ("
                            << e.curve->elimination_ideal().generators().size() << " generators)\n";
                    }
                }
            }
            return 0;
        }

        if (*transversal) {
            SymPencil P = detail::resolve_pencil(tv.spec);
            GBOptions gb;
            gb.max_pairs = tv_budget;
            bool ok = check_transversal(P, gb);
            if (tv.json) {
                ordered_json j;
                j["transversal"] = ok;
                out << j.dump() << "\n";
            } else {
                out << (ok ? "true" : "false") << "\n";
            }
            return 0;
        }

        if (*member) {
            SymPencil P = detail::resolve_pencil(mb.spec);
            MemberResult r = is_member(P, detail::parse_reals(mb_point, "--point"), mb_tol, mb_max_iter);
            if (mb.json) {
                ordered_json j;
                j["feasible"] = r.feasible;
                j["gap"] = r.final_gap;
                j["iterations"] = r.iterations;
                j["witness_y"] = r.witness_y;
                out << j.dump() << "\n";
            } else if (r.feasible) {
                out << "feasible gap=" << fmt(r.final_gap, "%.3e");
                if (!r.witness_y.empty()) {
                    out << " witness_y=";
                    for (std::size_t i = 0; i < r.witness_y.size(); ++i)
                        out << (i ? "," : "") << fmt(r.witness_y[i]);
                }
                out << "\n";
            } else {
                out << "numerically-infeasible gap=" << fmt(r.final_gap, "%.3e") << "\n";
            }
            return 0;
        }

        if (*support) {
            SymPencil P = detail::resolve_pencil(sp.spec);
            SupportResult r = support_function(P, detail::parse_reals(sp_dir, "--dir"), sp_tol);
            if (sp.json) {
                ordered_json j;
                j["value"] = r.value;
                j["argmax"] = r.argmax;
                j["witness_y"] = r.witness_y;
                j["rank"] = r.rank;
                j["rank_gap"] = r.rank_gap;
                out << j.dump() << "\n";
            } else {
                out << "value " << fmt(r.value) << "\n";
                out << "argmax";
                for (double v : r.argmax) out << " " << fmt(v);
                out << "\nrank " << r.rank << " gap " << fmt(r.rank_gap, "%.3e") << "\n";
            }
            return 0;
        }

        if (*scan) {
            SymPencil P = detail::resolve_pencil(sc.spec);
            auto pts = boundary_scan(P, sc_dirs, sc_tol);
            if (sc.json) {
                ordered_json arr = ordered_json::array();
                for (const auto& s : pts) {
                    ordered_json j;
                    j["angle"] = s.angle;
                    if (s.ok) {
                        j["point"] = s.point;
                        j["rank"] = s.rank;
                        j["rank_gap"] = s.rank_gap;
                    } else {
                        j["error"] = s.error;
                    }
                    arr.push_back(j);
                }
                out << arr.dump() << "\n";
            } else {
                for (const auto& s : pts) {
                    out << fmt(s.angle, "%.4f");
                    if (s.ok) {
                        for (double v : s.point) out << " " << fmt(v);
                        out << " rank " << s.rank << " gap " << fmt(s.rank_gap, "%.3e") << "\n";
                    } else {
                        out << " failed: " << s.error << "\n";
                    }
                }
            }
            return 0;
        }

        if (*render) {
            SymPencil P = detail::resolve_pencil(rd.spec);
            if (P.d != 2) throw std::invalid_argument("render: pencil must have d = 2");
            auto window = detail::parse_reals(rd_window, "--window");
            if (window.size() != 4) throw std::invalid_argument("--window: need xmin,xmax,ymin,ymax");
            SvgScene scene;
            scene.xmin = window[0];
            scene.xmax = window[1];
            scene.ymin = window[2];
            scene.ymax = window[3];
            scene.grid = rd_grid;
            RingPtr xring = make_xy_ring(2, 0);
            for (const auto& text : rd_curves)
                scene.curves.push_back({Polynomial::parse(xring, text), ""});
            BoundaryReportOptions ro = branch_options(rd);
            PatakiRange range = pataki_range(P.n, P.p);
            for (int r : rd_ranks) {
                BranchOptions bo;
                bo.saturate_lower = ro.saturate_lower
                                        ? *ro.saturate_lower
                                        : (!range.ranks.empty() && r > range.ranks.front());
                bo.reduce = ro.reduce;
                bo.method = ro.method;
                bo.gb = ro.gb;
                bo.long_running = ro.long_running;
                StratumCurve c = rank_branch_locus(P, r, bo);
                if (c.principal()) scene.curves.push_back({c.poly(), "rank " + std::to_string(r)});
            }
            if (rd_scan > 0) {
                std::vector<std::array<double, 2>> region;
                for (const auto& s : boundary_scan(P, rd_scan)) {
                    if (s.ok) region.push_back({s.point[0], s.point[1]});
                }
                if (!region.empty()) scene.regions.push_back(std::move(region));
            }
            std::string svg = render_curves(scene);
            if (rd_out.empty()) {
                out << svg;
            } else {
                std::ofstream f(rd_out);
                if (!f) throw std::invalid_argument("render: cannot open " + rd_out);
                f << svg;
                out << "wrote " << rd_out << " (" << scene.curves.size() << " curves, "
                    << (scene.regions.empty() ? 0 : scene.regions[0].size()) << " scan points)\n";
            }
            return 0;
        }

        if (*builtin) {
            SymPencil P = bi_name.rfind("family:", 0) == 0 ? detail::resolve_pencil(bi_name)
                                                           : builtin_pencil(bi_name);
            out << emit_pencil(P) << "\n";
            return 0;
        }

        err << "no subcommand\n";
        return 2;
    } catch (const LongRunningRequired& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace spshadow::cli
