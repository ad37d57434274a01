#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "regba/analysis.hpp"
#include "regba/automaton.hpp"
#include "regba/errors.hpp"
#include "regba/geometry.hpp"
#include "regba/io.hpp"
#include "regba/ops.hpp"
#include "regba/rational.hpp"
#include "regba/reals.hpp"
#include "regba/structure.hpp"

using nlohmann::json;
using namespace regba;

namespace {

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

json base_report(const std::string& command) {
    return json{{"schema", 1}, {"command", command}};
}

json automaton_report(const std::string& command, const Automaton& a,
                      const std::string& out_path) {
    json r = base_report(command);
    r["states"] = a.num_states();
    r["transitions"] = a.transitions.size();
    r["automaton"] = serialize_automaton(a);
    if (!out_path.empty()) {
        save_automaton(a, out_path);
        r["out"] = out_path;
    }
    return r;
}

int run_info(const std::string& file) {
    Automaton a = load_automaton(file);
    json r = base_report("info");
    r["states"] = a.num_states();
    r["transitions"] = a.transitions.size();
    r["radix"] = a.radix;
    r["arity"] = a.arity();
    r["deterministic"] = a.deterministic();
    r["complete"] = a.complete();
    r["weak"] = is_weak(a);
    r["closed"] = is_closed(a);
    auto trimmed = try_trim(a);
    r["trim"] = trimmed.has_value() && trimmed->num_states() == a.num_states();
    emit(r);
    return 0;
}

int run_function_check(const std::string& command, const std::string& file) {
    Automaton sat = saturated_presentation(load_automaton(file));
    FunctionCheck fc = is_function(sat);
    json r = base_report(command);
    r[command == "is-function" ? "function" : "continuous"] = fc.ok;
    switch (fc.failure) {
        case FunctionCheck::Failure::None:
            r["failure"] = "none";
            break;
        case FunctionCheck::Failure::NotTotal:
            r["failure"] = "not-total";
            break;
        case FunctionCheck::Failure::MultiValued:
            r["failure"] = "multi-valued";
            break;
    }
    if (!fc.counterexample.empty()) {
        std::vector<std::string> ce;
        for (const Rational& v : fc.counterexample) ce.push_back(to_string(v));
        r["counterexample"] = ce;
    }
    emit(r);
    return fc.ok ? 0 : 1;
}

int run_diff_check(const std::string& file) {
    Automaton sat = saturated_presentation(load_automaton(file));
    if (!is_function(sat).ok) throw NotAFunction();
    DifferentiabilityResult res = is_differentiable(sat);
    json r = base_report("diff-check");
    r["differentiable"] = res.differentiable;
    if (res.counterexample) {
        r["counterexample"] = {{"x", to_string(res.counterexample->first)},
                               {"y", to_string(res.counterexample->second)}};
    }
    emit(r);
    return res.differentiable ? 0 : 1;
}

int run_eval(const std::string& file, const std::string& at) {
    Automaton sat = saturated_presentation(load_automaton(file));
    if (!is_function(sat).ok) throw NotAFunction();
    Rational x = parse_rational(at);
    Rational y = eval_function(sat, x);
    json r = base_report("eval");
    r["at"] = to_string(x);
    r["value"] = to_string(y);
    emit(r);
    return 0;
}

int run_slopes(const std::string& file, unsigned depth) {
    Automaton full = make_full(saturated_presentation(load_automaton(file)));
    PiecewiseReport report = slope_set(full, depth);
    json r = base_report("slopes");
    r["depth"] = report.depth;
    std::vector<std::string> slopes;
    for (const Rational& s : report.slopes) slopes.push_back(to_string(s));
    r["slopes"] = slopes;
    r["pieces"] = json::array();
    for (const AffinePiece& p : report.pieces) {
        std::vector<std::string> sink_names;
        for (State q : p.sink) sink_names.push_back(full.state_names[q]);
        r["pieces"].push_back({{"alpha", to_string(p.alpha)},
                               {"beta", to_string(p.beta)},
                               {"entry", full.state_names[p.entry]},
                               {"sink", sink_names}});
    }
    r["witnesses"] = json::array();
    for (const WitnessInterval& w : report.witnesses) {
        r["witnesses"].push_back(
            {{"left", to_string(w.left)}, {"depth", w.depth}, {"slope", to_string(w.slope)}});
    }
    r["covered_measure"] = to_string(report.covered_measure);
    emit(r);
    return 0;
}

std::string boxes_csv(const BoxCover& cover, std::size_t arity) {
    std::string text;
    for (const auto& box : cover.boxes) {
        text += std::to_string(cover.depth);
        for (std::size_t i = 0; i < arity; ++i) text += "," + std::to_string(box[i]);
        text += "\n";
    }
    return text;
}

int run_render(const std::string& file, unsigned depth, const std::string& format,
               const std::string& out_path) {
    Automaton a = trim(load_automaton(file));
    BoxCover cover = attractor_boxes(a, depth);
    std::string payload;
    if (format == "csv") {
        payload = boxes_csv(cover, a.arity());
    } else {
        json r = base_report("render");
        r["depth"] = cover.depth;
        r["radix"] = a.radix;
        r["count"] = cover.boxes.size();
        r["boxes"] = json::array();
        for (const auto& box : cover.boxes) {
            std::vector<std::uint64_t> idx(box.begin(), box.begin() + a.arity());
            r["boxes"].push_back(idx);
        }
        payload = r.dump(2) + "\n";
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw Error("cannot write " + out_path);
        out << payload;
        json r = base_report("render");
        r["depth"] = cover.depth;
        r["count"] = cover.boxes.size();
        r["out"] = out_path;
        emit(r);
    } else {
        std::cout << payload;
    }
    return 0;
}

int run_measure(const std::string& file, unsigned depth) {
    Automaton a = trim(load_automaton(file));
    BoxCover cover = attractor_boxes(a, depth);
    json r = base_report("measure");
    r["depth"] = depth;
    r["boxes"] = cover.boxes.size();
    r["estimate"] = to_string(box_measure_estimate(a, depth));
    emit(r);
    return 0;
}

int run_kernel(const std::string& file) {
    Automaton det = determinize_closed(closure(trim(load_automaton(file))));
    std::vector<KernelResidual> groups = kernel_residuals(det);
    json r = base_report("kernel");
    r["classes"] = json::array();
    std::size_t nonempty = 0;
    for (const KernelResidual& g : groups) {
        std::vector<std::string> members;
        for (State q : g.members) members.push_back(det.state_names[q]);
        r["classes"].push_back({{"representative", det.state_names[g.representative]},
                                {"members", members},
                                {"empty", g.empty_language}});
        if (!g.empty_language) ++nonempty;
    }
    r["count"] = groups.size();
    r["nonempty"] = nonempty;
    r["finite"] = true;
    emit(r);
    return 0;
}

int run_porosity(const std::string& file) {
    Automaton sat = saturated_presentation(load_automaton(file));
    json r = base_report("porosity");
    try {
        PorosityWitness w = porosity_witness(sat);
        r["depth"] = w.depth;
        r["index"] = w.index.str();
        r["interval"] = {to_string(w.left), to_string(w.right)};
        r["constant"] = to_string(w.constant);
        emit(r);
        return 0;
    } catch (const NotNowhereDense& e) {
        r["verdict"] = "not-nowhere-dense";
        r["reason"] = e.what();
        emit(r);
        return 1;
    }
}

int run_paths(const std::string& file, unsigned depth) {
    Automaton a = load_automaton(file);
    require_valid(a);
    Int total = pow_int(Int(a.alphabet_size()), depth);
    json r = base_report("paths");
    r["depth"] = depth;
    r["rows"] = json::array();
    for (State p = 0; p < a.num_states(); ++p) {
        if (!a.initial[p]) continue;
        std::vector<std::uint64_t> counts = path_label_counts_from(a, p, depth);
        for (State q = 0; q < a.num_states(); ++q) {
            if (counts[q] == 0) continue;
            r["rows"].push_back({{"from", a.state_names[p]},
                                 {"to", a.state_names[q]},
                                 {"labels", counts[q]},
                                 {"ratio", to_string(Rational(Int(counts[q]), total))}});
        }
    }
    emit(r);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Buchi-automaton representations of real sets and functions"};
    app.require_subcommand(1);

    std::string file, file2, at, out_path;
    std::string format = "json";
    unsigned depth = 6;
    std::vector<std::size_t> keep;

    auto* info = app.add_subcommand("info", "validate and summarize an automaton");
    info->add_option("file", file)->required();

    auto* trim_cmd = app.add_subcommand("trim", "accessible and co-accessible part");
    trim_cmd->add_option("file", file)->required();
    trim_cmd->add_option("--out", out_path, "write the result as a .regba file");

    auto* closure_cmd = app.add_subcommand("closure", "make every state accepting");
    closure_cmd->add_option("file", file)->required();
    closure_cmd->add_option("--out", out_path);

    auto* det_cmd = app.add_subcommand("determinize", "subset construction for closed automata");
    det_cmd->add_option("file", file)->required();
    det_cmd->add_option("--out", out_path);

    auto* comp_cmd = app.add_subcommand("complement", "complement of the accepted language");
    comp_cmd->add_option("file", file)->required();
    comp_cmd->add_option("--out", out_path);

    auto* prod_cmd = app.add_subcommand("product", "intersection of two languages");
    prod_cmd->add_option("file", file)->required();
    prod_cmd->add_option("file2", file2)->required();
    prod_cmd->add_option("--out", out_path);

    auto* proj_cmd = app.add_subcommand("project", "drop all coordinates not listed");
    proj_cmd->add_option("file", file)->required();
    proj_cmd->add_option("--keep", keep, "1-based coordinates to keep")
        ->required()
        ->delimiter(',');
    proj_cmd->add_option("--out", out_path);

    auto* sat_cmd = app.add_subcommand("saturate", "close the language under value equality");
    sat_cmd->add_option("file", file)->required();
    sat_cmd->add_option("--out", out_path);

    auto* isf_cmd = app.add_subcommand("is-function", "is the value set a total function graph");
    isf_cmd->add_option("file", file)->required();

    auto* isc_cmd = app.add_subcommand("is-continuous", "is the value set a continuous function");
    isc_cmd->add_option("file", file)->required();

    auto* diff_cmd = app.add_subcommand("diff-check", "is the function differentiable");
    diff_cmd->add_option("file", file)->required();

    auto* eval_cmd = app.add_subcommand("eval", "evaluate the function at a rational");
    eval_cmd->add_option("file", file)->required();
    eval_cmd->add_option("--at", at, "argument as p/q in [0,1]")->required();

    auto* slopes_cmd = app.add_subcommand("slopes", "piecewise-affine structure report");
    slopes_cmd->add_option("file", file)->required();
    slopes_cmd->add_option("--depth", depth, "witness interval depth");

    auto* render_cmd = app.add_subcommand("render", "depth-k box cover of the value set");
    render_cmd->add_option("file", file)->required();
    render_cmd->add_option("--depth", depth);
    render_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    render_cmd->add_option("--out", out_path, "write the cover to a file");

    auto* measure_cmd = app.add_subcommand("measure", "box-cover measure upper bound");
    measure_cmd->add_option("file", file)->required();
    measure_cmd->add_option("--depth", depth);

    auto* kernel_cmd = app.add_subcommand("kernel", "residual classes of the determinization");
    kernel_cmd->add_option("file", file)->required();

    auto* por_cmd = app.add_subcommand("porosity", "excluded-interval porosity witness");
    por_cmd->add_option("file", file)->required();

    auto* paths_cmd = app.add_subcommand("paths", "distinct path-label counts per state pair");
    paths_cmd->add_option("file", file)->required();
    paths_cmd->add_option("--depth", depth);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(info)) return run_info(file);
        if (app.got_subcommand(trim_cmd))
            return emit(automaton_report("trim", trim(load_automaton(file)), out_path)), 0;
        if (app.got_subcommand(closure_cmd))
            return emit(automaton_report("closure", closure(load_automaton(file)), out_path)), 0;
        if (app.got_subcommand(det_cmd))
            return emit(automaton_report(
                       "determinize", determinize_closed(trim(load_automaton(file))), out_path)),
                   0;
        if (app.got_subcommand(comp_cmd)) {
            Automaton a = load_automaton(file);
            a = a.deterministic() ? complete(a) : determinize_closed(trim(a));
            return emit(automaton_report("complement", complement_det(a), out_path)), 0;
        }
        if (app.got_subcommand(prod_cmd)) {
            Automaton p = product_intersect(load_automaton(file), load_automaton(file2));
            return emit(automaton_report("product", p, out_path)), 0;
        }
        if (app.got_subcommand(proj_cmd)) {
            for (std::size_t& i : keep) {
                if (i == 0) throw BadCoordinates("coordinates are 1-based");
                --i;
            }
            Automaton p = project(load_automaton(file), keep);
            return emit(automaton_report("project", p, out_path)), 0;
        }
        if (app.got_subcommand(sat_cmd))
            return emit(automaton_report("saturate", saturate(trim(load_automaton(file))),
                                         out_path)),
                   0;
        if (app.got_subcommand(isf_cmd)) return run_function_check("is-function", file);
        if (app.got_subcommand(isc_cmd)) return run_function_check("is-continuous", file);
        if (app.got_subcommand(diff_cmd)) return run_diff_check(file);
        if (app.got_subcommand(eval_cmd)) return run_eval(file, at);
        if (app.got_subcommand(slopes_cmd)) return run_slopes(file, depth);
        if (app.got_subcommand(render_cmd)) return run_render(file, depth, format, out_path);
        if (app.got_subcommand(measure_cmd)) return run_measure(file, depth);
        if (app.got_subcommand(kernel_cmd)) return run_kernel(file);
        if (app.got_subcommand(por_cmd)) return run_porosity(file);
        if (app.got_subcommand(paths_cmd)) return run_paths(file, depth);
    } catch (const Error& e) {
        json r{{"schema", 1}, {"error", e.what()}};
        std::cout << r.dump(2) << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
