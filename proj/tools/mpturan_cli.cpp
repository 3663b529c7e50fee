// mpturan_cli.cpp
// Command-line front door. Every subcommand prints one newline-terminated
// JSON object (sweeps print JSON lines); validation failures exit 2 with a
// machine-readable error object, internal failures exit 1.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mpturan/json_io.hpp"

using namespace mpturan;

namespace {

struct Options {
    std::vector<int> sizes;
    int t = 3;
    int k = 1;
    long long L = 2;
    std::string graph_path;
    std::string partition_path;
    std::string witness_path;
    std::string x_path;
    double eps = 0.0;
    double xi = 0.05;
    uint64_t seed = 0;
    long long count = 0;
    int jobs = 1;
    long long budget_edges = 30;
    int rmin = 3, rmax = 3, max_entry = 3;
    bool pretty = false;
    bool check_witnesses = false;
    std::string mode = "recursive";
};

void emit(const json& j, bool pretty) {
    std::cout << (pretty ? j.dump(2) : j.dump()) << "\n";
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw Error(Errc::ParseError, std::string("bad JSON in ") + path + ": " + e.what());
    }
    return j;
}

std::vector<int> parse_sizes(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (...) {
            throw Error(Errc::ParseError, "bad size entry '" + item + "'");
        }
    }
    return out;
}

json blocks_minus(const VertexPartition& vp, const MultipartiteGraph& host, const Bits& removed) {
    auto blocks = partition_blocks(canonicalized(vp));
    json jb = json::array();
    for (const auto& b : blocks) {
        json one = json::array();
        for (const auto& v : b)
            if (!removed.test(host.global(v))) one.push_back(to_json(v));
        jb.push_back(one);
    }
    return jb;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multipartite Turan toolkit: extremal functions, stable partitions, "
                 "recovery and a brute-force oracle"};
    app.require_subcommand(1);
    Options o;
    std::string sizes_csv;

    auto add_sizes = [&](CLI::App* cmd, bool required = true) {
        auto* opt = cmd->add_option("--sizes", sizes_csv, "class sizes, comma separated");
        if (required) opt->required();
    };

    auto* cmd_f = app.add_subcommand("f", "extremal function f over index partitions");
    add_sizes(cmd_f);
    cmd_f->add_option("--t", o.t, "clique order")->required();
    cmd_f->add_option("--k", o.k, "number of disjoint copies");

    auto* cmd_g = app.add_subcommand("g", "extremal function g via dominating vertices");
    add_sizes(cmd_g);
    cmd_g->add_option("--t", o.t)->required();
    cmd_g->add_option("--k", o.k)->required();
    cmd_g->add_option("--mode", o.mode, "recursive|direct");

    auto* cmd_tau = app.add_subcommand("tau", "L-balance families and tau");
    add_sizes(cmd_tau);
    cmd_tau->add_option("--t", o.t)->required();
    cmd_tau->add_option("--L", o.L)->required();

    auto* cmd_ext = app.add_subcommand("extremal-partitions",
                                       "all extremal vertex (t-1)-partitions (exhaustive)");
    add_sizes(cmd_ext);
    cmd_ext->add_option("--t", o.t)->required();

    auto* cmd_thm = app.add_subcommand("verify-thm12",
                                       "extremal = stable + extremal internalization check");
    add_sizes(cmd_thm);
    cmd_thm->add_option("--t", o.t)->required();

    auto* cmd_chk = app.add_subcommand("check-stable", "stability verdict for a partition");
    add_sizes(cmd_chk);
    cmd_chk->add_option("--partition", o.partition_path, "partition JSON file")->required();
    cmd_chk->add_option("--eps", o.eps, "additive slack (0 = exact)");
    cmd_chk->add_option("--graph", o.graph_path, "graph JSON: check (X,eps)-stability");
    cmd_chk->add_option("--x", o.x_path, "removed vertex set JSON (with --graph)");

    auto* cmd_int = app.add_subcommand("internalize", "move partial classes into single blocks");
    add_sizes(cmd_int);
    cmd_int->add_option("--partition", o.partition_path)->required();

    auto* cmd_stab = app.add_subcommand("stabilize", "trim an eps-stable partition to stable");
    add_sizes(cmd_stab);
    cmd_stab->add_option("--partition", o.partition_path)->required();
    cmd_stab->add_option("--eps", o.eps)->required();

    auto* cmd_rec = app.add_subcommand("recover", "recover an (X,eps)-stable partition");
    cmd_rec->add_option("--graph", o.graph_path)->required();
    cmd_rec->add_option("--t", o.t)->required();
    cmd_rec->add_option("--xi", o.xi, "small-class threshold");

    auto* cmd_or = app.add_subcommand("oracle-ex", "brute-force ex(n_1,...,n_r,kK_t)");
    add_sizes(cmd_or);
    cmd_or->add_option("--t", o.t)->required();
    cmd_or->add_option("--k", o.k);
    cmd_or->add_option("--budget-edges", o.budget_edges);
    cmd_or->add_option("--jobs", o.jobs);

    auto* cmd_cert = app.add_subcommand("certify", "sweep oracle vs formula (JSON lines)");
    cmd_cert->add_option("--t", o.t)->required();
    cmd_cert->add_option("--k", o.k);
    cmd_cert->add_option("--rmin", o.rmin);
    cmd_cert->add_option("--rmax", o.rmax);
    cmd_cert->add_option("--max-entry", o.max_entry);
    cmd_cert->add_option("--budget-edges", o.budget_edges);
    cmd_cert->add_option("--jobs", o.jobs);
    cmd_cert->add_flag("--witnesses", o.check_witnesses, "verify extremal graph structure (k >= 2)");

    auto* cmd_real = app.add_subcommand("realize", "realize a witness as a concrete graph");
    add_sizes(cmd_real);
    cmd_real->add_option("--t", o.t)->required();
    cmd_real->add_option("--k", o.k);
    cmd_real->add_option("--witness", o.witness_path, "witness JSON (default: g-argmax witness)");

    auto* cmd_pert = app.add_subcommand("perturb", "delete random edges, seeded");
    cmd_pert->add_option("--graph", o.graph_path)->required();
    cmd_pert->add_option("--count", o.count)->required();
    cmd_pert->add_option("--seed", o.seed)->required();

    bool compact = false;
    for (auto* c : app.get_subcommands({})) {
        c->add_flag("--pretty", o.pretty, "indent the JSON report");
        c->add_flag("--json", compact, "compact single-line JSON (default)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        json err{{"error", {{"code", "ParseError"}, {"message", e.what()}}}};
        std::cout << err.dump() << "\n";
        return 2;
    }

    try {
        if (cmd_f->parsed()) {
            PartSizes ps = validate(parse_sizes(sizes_csv), {o.t, o.k});
            auto res = compute_f(ps, o.k, o.t);
            json argmax = json::array();
            for (const auto& p : res.argmax) argmax.push_back(to_json(p));
            emit({{"sizes", ps.sizes}, {"t", o.t}, {"k", o.k}, {"value", res.value},
                  {"argmax", argmax}},
                 o.pretty);
        } else if (cmd_g->parsed()) {
            PartSizes ps = validate(parse_sizes(sizes_csv), {o.t, o.k});
            GMode mode = o.mode == "direct" ? GMode::Direct : GMode::Recursive;
            if (o.mode != "direct" && o.mode != "recursive")
                throw Error(Errc::ParseError, "mode must be recursive or direct");
            auto res = compute_g(ps, o.k, o.t, mode);
            emit({{"sizes", ps.sizes}, {"t", o.t}, {"k", o.k}, {"value", res.value},
                  {"witness", to_json(res.witness)}},
                 o.pretty);
        } else if (cmd_tau->parsed()) {
            PartSizes ps = validate(parse_sizes(sizes_csv), {o.t, 1}, false);
            auto bf = l_balance_families(ps, o.L);
            json fams = json::array();
            for (const auto& fam : bf.families) fams.push_back(fam);
            emit({{"sizes", ps.sizes}, {"t", o.t}, {"L", o.L},
                  {"value", compute_tau(ps, o.t, o.L)}, {"families", fams}},
                 o.pretty);
        } else if (cmd_ext->parsed()) {
            PartSizes ps = validate(parse_sizes(sizes_csv), {o.t, 1});
            auto parts = enumerate_extremal_vertex_partitions(ps, o.t);
            json arr = json::array();
            for (const auto& vp : parts) arr.push_back(to_json(vp));
            emit({{"sizes", ps.sizes}, {"t", o.t},
                  {"value", compute_f(ps, 1, o.t, false).value}, {"partitions", arr}},
                 o.pretty);
        } else if (cmd_thm->parsed()) {
            PartSizes ps = validate(parse_sizes(sizes_csv), {o.t, 1});
            auto rep = verify_characterization(ps, o.t);
            json bad_a = json::array(), bad_b = json::array();
            for (const auto& vp : rep.only_extremal) bad_a.push_back(to_json(vp));
            for (const auto& vp : rep.only_characterized) bad_b.push_back(to_json(vp));
            emit({{"sizes", ps.sizes}, {"t", o.t}, {"match", rep.match},
                  {"partitions_checked", rep.partitions_checked},
                  {"extremal_count", rep.extremal_count},
                  {"characterized_count", rep.characterized_count},
                  {"only_extremal", bad_a}, {"only_characterized", bad_b}},
                 o.pretty);
        } else if (cmd_chk->parsed()) {
            PartSizes ps = validate(parse_sizes(sizes_csv), {o.t, 1}, false);
            VertexPartition vp = vertex_partition_from_json(load_json(o.partition_path), ps);
            if (!o.graph_path.empty()) {
                MultipartiteGraph g = graph_from_json(load_json(o.graph_path));
                if (!(g.parts() == ps)) throw Error(Errc::ShapeMismatch, "graph sizes differ");
                Bits x(g.num_vertices());
                if (!o.x_path.empty())
                    for (const auto& e : load_json(o.x_path))
                        x.set(g.global(vertex_from_json(e)));
                emit({{"eps", o.eps}, {"verdict", to_json(is_x_eps_stable(g, vp, x, o.eps))}},
                     o.pretty);
            } else {
                auto verdict = o.eps > 0 ? is_eps_stable(vp, ps, o.eps) : is_stable(vp, ps);
                emit({{"eps", o.eps}, {"verdict", to_json(verdict)}}, o.pretty);
            }
        } else if (cmd_int->parsed()) {
            PartSizes ps = validate(parse_sizes(sizes_csv), {o.t, 1}, false);
            VertexPartition vp = vertex_partition_from_json(load_json(o.partition_path), ps);
            VertexPartition out = internalize(vp, ps);
            emit({{"partition", to_json(out)},
                  {"edges", edges_of_complete_partition(cells_from(out, ps))}},
                 o.pretty);
        } else if (cmd_stab->parsed()) {
            PartSizes ps = validate(parse_sizes(sizes_csv), {o.t, 1}, false);
            VertexPartition vp = vertex_partition_from_json(load_json(o.partition_path), ps);
            auto res = stabilize(vp, ps, o.eps);
            MultipartiteGraph host(ps);
            emit({{"eps", o.eps}, {"removed", to_json(res.removed, host)},
                  {"restricted_blocks", blocks_minus(res.partition, host, res.removed)},
                  {"stable", is_stable(cells_excluding(res.partition, ps, &res.removed)).holds}},
                 o.pretty);
        } else if (cmd_rec->parsed()) {
            MultipartiteGraph g = graph_from_json(load_json(o.graph_path));
            auto rec = recover_partition(g, o.t, o.xi);
            json pvc = json::array();
            for (int i = 0; i < g.num_classes(); ++i)
                for (int off = 0; off < g.parts().sizes[i]; ++off)
                    if (rec.per_vertex_closeness[i][off] >= 0)
                        pvc.push_back(json::array(
                            {json::array({i, off}), rec.per_vertex_closeness[i][off]}));
            emit({{"partition", to_json(rec.partition)}, {"removed", to_json(rec.removed, g)},
                  {"epsilon", rec.epsilon}, {"certified", rec.certified},
                  {"per_vertex_closeness", pvc},
                  {"diagnostics",
                   {{"layer_sizes", rec.layer_sizes}, {"small_classes", rec.small_classes},
                    {"eps_star", rec.eps_star}, {"stabilize_removed", rec.stabilize_removed},
                    {"outliers_folded", rec.outliers_folded}, {"failure", rec.failure}}}},
                 o.pretty);
        } else if (cmd_or->parsed()) {
            PartSizes ps = validate(parse_sizes(sizes_csv), {o.t, o.k});
            OracleLimits lim;
            lim.max_host_edges = o.budget_edges;
            lim.jobs = o.jobs;
            auto res = brute_force_ex(ps, {o.t, o.k}, lim);
            emit({{"sizes", ps.sizes}, {"t", o.t}, {"k", o.k}, {"value", res.value},
                  {"exhaustive", res.exhaustive}, {"nodes_explored", res.nodes_explored},
                  {"witness", to_json(res.witness)}},
                 o.pretty);
        } else if (cmd_cert->parsed()) {
            OracleLimits lim;
            lim.max_host_edges = o.budget_edges;
            lim.jobs = o.jobs;
            std::vector<std::vector<int>> hosts;
            for (int r = o.rmin; r <= o.rmax; ++r) {
                std::vector<int> cur(r, 1);
                std::function<void(int, int)> gen = [&](int pos, int hi) {
                    if (pos == r) {
                        hosts.push_back(cur);
                        return;
                    }
                    for (int v = 1; v <= hi; ++v) {
                        cur[pos] = v;
                        gen(pos + 1, v);
                    }
                };
                gen(0, o.max_entry);
            }
            bool all_ok = true;
            for (const auto& h : hosts) {
                if (int(h.size()) < o.t) continue;
                PartSizes ps = validate(h, {o.t, o.k});
                auto inst = certify_instance(ps, {o.t, o.k}, lim, o.check_witnesses);
                json line{{"sizes", ps.sizes}, {"t", o.t}, {"k", o.k},
                          {"relation", inst.relation}, {"oracle", inst.oracle_value},
                          {"formula", inst.formula_value}};
                if (inst.witnesses_checked)
                    line["witnesses_structured"] = inst.witnesses_structured;
                std::cout << line.dump() << "\n";
                // k >= 2 mismatches on tiny hosts are expected and only
                // logged; the k = 1 identity has no size threshold
                if (o.k == 1 && !inst.skipped && inst.relation != "equal") all_ok = false;
            }
            return all_ok ? 0 : 1;
        } else if (cmd_real->parsed()) {
            PartSizes ps = validate(parse_sizes(sizes_csv), {o.t, o.k});
            ExtremalWitness w;
            if (!o.witness_path.empty())
                w = witness_from_json(load_json(o.witness_path), ps);
            else
                w = compute_g(ps, o.k, o.t).witness;
            auto g = realize_witness(ps, w, o.t);
            emit(to_json(g), o.pretty);
        } else if (cmd_pert->parsed()) {
            MultipartiteGraph g = graph_from_json(load_json(o.graph_path));
            emit(to_json(delete_random_edges(g, o.count, o.seed)), o.pretty);
        }
    } catch (const Error& e) {
        json err{{"error", {{"code", errc_name(e.code())}, {"message", e.what()}}}};
        std::cout << err.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        json err{{"error", {{"code", "Internal"}, {"message", e.what()}}}};
        std::cout << err.dump() << "\n";
        return 1;
    }
    return 0;
}
