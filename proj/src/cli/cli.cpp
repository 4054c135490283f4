#include "relaynet/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "relaynet/bounds.hpp"
#include "relaynet/errors.hpp"
#include "relaynet/evaluate.hpp"
#include "relaynet/lattice.hpp"
#include "relaynet/netlist.hpp"
#include "relaynet/render.hpp"
#include "relaynet/robustness.hpp"
#include "relaynet/synthesis.hpp"
#include "relaynet/transform.hpp"
#include "relaynet/upg.hpp"

namespace relaynet::cli {

namespace {

std::string read_text(const std::string &path) {
    if (path == "-") {
        std::stringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot read '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Circuit load_netlist(const std::string &path) { return parse_netlist(read_text(path)); }

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, sep)) {
        out.push_back(part);
    }
    return out;
}

// "r0=0,s1=2"
Assignment parse_assignment(const std::string &text) {
    Assignment out;
    if (text.empty()) {
        return out;
    }
    for (const auto &pair : split(text, ',')) {
        const auto eq = pair.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ValidationError("assignment '" + pair + "' is not name=state");
        }
        const std::string value = pair.substr(eq + 1);
        if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos) {
            throw ValidationError("assignment '" + pair + "' needs a non-negative integer state");
        }
        out[pair.substr(0, eq)] = std::stoi(value);
    }
    return out;
}

std::int64_t denominator_lcm(const Distribution &d) {
    std::int64_t out = 1;
    for (const auto &p : d.probs()) {
        if (!p.den().fits_slong_p()) {
            throw InvalidTargetError("denominator " + p.den().get_str() + " is too large");
        }
        out = std::lcm(out, static_cast<std::int64_t>(p.den().get_si()));
    }
    return out;
}

// Switch set for lattice search: a JSON file ({"switches": [[...], ...],
// "deterministic": bool} or a bare array) or inline "a,b,c;d,e,f".
void load_switch_set(const std::string &text, const LatticePtr &lattice, SearchSpec &spec) {
    if (std::filesystem::is_regular_file(text)) {
        Json j;
        try {
            j = Json::parse(read_text(text));
        } catch (const Json::exception &e) {
            throw ValidationError("switch set file '" + text + "' is not JSON: " + e.what());
        }
        Json list = j;
        if (j.is_object()) {
            if (!j.contains("switches")) {
                throw ValidationError("switch set file needs a \"switches\" array");
            }
            list = j["switches"];
            if (j.contains("deterministic")) {
                if (!j["deterministic"].is_boolean()) {
                    throw ValidationError("\"deterministic\" must be a boolean");
                }
                spec.include_deterministic = j["deterministic"].get<bool>();
            }
        }
        if (!list.is_array()) {
            throw ValidationError("switch set must be an array of distributions");
        }
        for (const auto &entry : list) {
            if (entry.is_string()) {
                spec.switch_set.push_back(LatticeDistribution::parse(lattice, entry.get<std::string>()));
                continue;
            }
            if (!entry.is_array()) {
                throw ValidationError("switch set entries are arrays of rational strings");
            }
            std::vector<Rational> probs;
            for (const auto &p : entry) {
                if (!p.is_string()) {
                    throw ValidationError("rationals must be strings");
                }
                probs.push_back(Rational::parse(p.get<std::string>()));
            }
            spec.switch_set.emplace_back(lattice, std::move(probs));
        }
        return;
    }
    for (const auto &part : split(text, ';')) {
        spec.switch_set.push_back(LatticeDistribution::parse(lattice, part));
    }
}

void print_json(std::ostream &out, const Json &j) { out << j.dump(2) << "\n"; }

struct Options {
    // shared
    std::string netlist;
    std::string target;
    std::string assign;
    // synth
    std::string method = "binary";
    std::int64_t q = 0;
    int n = -1;
    // eval
    int graph_cap = 20;
    std::uint64_t oracle_cap = std::uint64_t{1} << 22;
    // bound
    int states = 0;
    std::string kind = "binary";
    // robustness
    std::string epsilon;
    std::string mode = "corners";
    int trials = 256;
    std::uint64_t seed = 1;
    int corner_cap = 16;
    int grid = 8;
    std::string family;
    // upg
    int bits = 0;
    std::string construction = "bit_removed_sp";
    bool truth_table = false;
    // lattice
    std::string lattice;
    std::string switchset;
    int max_switches = 4;
    bool no_deterministic = false;
    std::size_t search_cap = 2'000'000;
    // render
    std::string format = "ascii";
};

int cmd_synth(const Options &o, std::ostream &out) {
    const Distribution target = Distribution::parse(o.target);
    std::int64_t q = o.q;
    if (q == 0) {
        q = o.method == "binary" ? 2 : std::max<std::int64_t>(2, denominator_lcm(target));
    }
    const TargetSpec spec = o.n >= 0 ? TargetSpec::make(target, q, o.n) : TargetSpec::make(target, q);
    SynthesisReport report = [&] {
        if (o.method == "binary") {
            return synth_binary_nstate(spec);
        }
        if (o.method == "state_reduction") {
            return state_reduction(spec);
        }
        if (o.method == "denominator") {
            return denominator_reduction(spec);
        }
        return composite_synthesis(spec);
    }();
    print_json(out, report_to_json(report));
    return kExitOk;
}

int cmd_eval(const Options &o, std::ostream &out, bool oracle) {
    const Circuit c = load_netlist(o.netlist);
    const Assignment a = parse_assignment(o.assign);
    const Distribution d = oracle ? eval_oracle(c, a, OracleOptions{o.oracle_cap}) : eval(c, a, EvalOptions{o.graph_cap});
    print_json(out, distribution_to_json(d));
    return kExitOk;
}

int cmd_bound(const Options &o, std::ostream &out) {
    std::int64_t value = 0;
    if (o.kind == "binary") {
        value = complexity_bound(o.n, o.states);
    } else if (o.kind == "denominator") {
        value = denominator_bound(o.q == 0 ? 2 : o.q, o.n, o.states);
    } else {
        value = composite_bound(o.q == 0 ? 2 : o.q, o.n, o.states);
    }
    out << value << "\n";
    return kExitOk;
}

int cmd_robustness(const Options &o, std::ostream &out) {
    const Circuit c = load_netlist(o.netlist);
    RobustnessOptions options;
    options.mode = o.mode == "corners" ? SearchMode::corners : SearchMode::sampled;
    options.trials = o.trials;
    options.seed = o.seed;
    options.corner_cap = o.corner_cap;
    options.grid = o.grid;
    const ErrorReport report = worst_case_error(c, Rational::parse(o.epsilon), options);
    if (o.family.empty()) {
        print_json(out, error_report_to_json(report));
    } else {
        const Verdict verdict = check_bounds(report, BoundFamily::parse(o.family));
        print_json(out, error_report_to_json(report, &verdict));
    }
    return kExitOk;
}

int cmd_upg(const Options &o, std::ostream &out) {
    const UpgSpec spec{o.states, o.bits, parse_construction(o.construction)};
    const Circuit c = build_upg(spec);
    if (o.truth_table) {
        print_json(out, truth_table_to_json(upg_truth_table(c, spec.states, spec.bits)));
    } else if (!o.target.empty()) {
        const Distribution target = Distribution::parse(o.target);
        if (target.states() != spec.states) {
            throw DimensionError("target has " + std::to_string(target.states()) + " states, UPG has " +
                                 std::to_string(spec.states));
        }
        const UpgInput input = encode_input(target, spec.bits);
        Json row = Json::object();
        row["inputs"] = input.to_json();
        row["output"] = distribution_to_json(eval(c, input.assignment()));
        print_json(out, row);
    } else {
        out << dump_netlist(c) << "\n";
    }
    return kExitOk;
}

int cmd_lattice(const Options &o, std::ostream &out) {
    auto lattice = std::make_shared<const Lattice>(Lattice::load(o.lattice));
    SearchSpec spec{lattice, {}, !o.no_deterministic, o.max_switches, LatticeDistribution::parse(lattice, o.target),
                    o.search_cap};
    load_switch_set(o.switchset, lattice, spec);
    if (o.no_deterministic) {
        spec.include_deterministic = false;
    }
    print_json(out, search_expressible(spec).to_json());
    return kExitOk;
}

int cmd_render(const Options &o, std::ostream &out) {
    const Circuit c = load_netlist(o.netlist);
    out << (o.format == "dot" ? render_dot(c) : render_ascii(c)) << "\n";
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"relaynet: multivalued stochastic relay circuits", "relaynet"};
    app.require_subcommand(1);
    Options o;

    auto *synth = app.add_subcommand("synth", "synthesize a circuit for a target distribution");
    synth->add_option("--target", o.target, "comma-separated rationals")->required();
    synth->add_option("--method", o.method)
        ->check(CLI::IsMember({"binary", "state_reduction", "denominator", "composite"}));
    synth->add_option("--q", o.q, "denominator base (default: 2 for binary, else the lcm)")
        ->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 31));
    synth->add_option("--n", o.n, "exponent (default: smallest that fits)")->check(CLI::NonNegativeNumber);

    auto *ev = app.add_subcommand("eval", "evaluate a netlist");
    auto *oracle = app.add_subcommand("oracle-eval", "evaluate by brute-force enumeration");
    for (auto *sub : {ev, oracle}) {
        sub->add_option("--netlist", o.netlist, "netlist JSON file or -")->required();
        sub->add_option("--assign", o.assign, "input states, e.g. r0=0,s1=2");
    }
    ev->add_option("--graph-cap", o.graph_cap)->check(CLI::PositiveNumber);
    oracle->add_option("--cap", o.oracle_cap)->check(CLI::PositiveNumber);

    auto *du = app.add_subcommand("dual", "swap series and parallel");
    du->add_option("--netlist", o.netlist)->required();

    auto *bo = app.add_subcommand("bound", "worst-case pswitch count");
    bo->add_option("--n", o.n)->required()->check(CLI::NonNegativeNumber);
    bo->add_option("--states", o.states)->required()->check(CLI::Range(2, 1 << 20));
    bo->add_option("--kind", o.kind)->check(CLI::IsMember({"binary", "denominator", "composite"}));
    bo->add_option("--q", o.q)->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 31));

    auto *ro = app.add_subcommand("robustness", "worst-case output error under switch perturbation");
    ro->add_option("--netlist", o.netlist)->required();
    ro->add_option("--epsilon", o.epsilon)->required();
    ro->add_option("--mode", o.mode)->check(CLI::IsMember({"corners", "sample", "sampled"}));
    ro->add_option("--trials", o.trials)->check(CLI::PositiveNumber);
    ro->add_option("--seed", o.seed);
    ro->add_option("--corner-cap", o.corner_cap)->check(CLI::Range(0, 30));
    ro->add_option("--grid", o.grid)->check(CLI::PositiveNumber);
    ro->add_option("--family", o.family, "binary or denom:q");

    auto *up = app.add_subcommand("upg", "build a universal probability generator");
    up->add_option("--states", o.states)->required()->check(CLI::Range(2, 10));
    up->add_option("--bits", o.bits)->required()->check(CLI::Range(0, 30));
    up->add_option("--construction", o.construction)
        ->check(CLI::IsMember({"exponential", "reduced_sp", "reduced_nonsp", "bit_removed_sp", "bit_removed_nonsp"}));
    auto *tt = up->add_flag("--truth-table", o.truth_table);
    up->add_option("--target", o.target)->excludes(tt);

    auto *la = app.add_subcommand("lattice-search", "bounded search for a join/meet realization");
    la->add_option("--lattice", o.lattice, "diamond, chain:N or a lattice JSON file")->required();
    la->add_option("--target", o.target)->required();
    la->add_option("--switchset", o.switchset, "JSON file or inline a,b,c;d,e,f")->required();
    la->add_option("--max-switches", o.max_switches)->check(CLI::PositiveNumber);
    la->add_flag("--no-deterministic", o.no_deterministic);
    la->add_option("--cap", o.search_cap)->check(CLI::PositiveNumber);

    auto *re = app.add_subcommand("render", "draw a netlist");
    re->add_option("--netlist", o.netlist)->required();
    re->add_option("--format", o.format)->check(CLI::IsMember({"dot", "ascii"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (synth->parsed()) {
            return cmd_synth(o, out);
        }
        if (ev->parsed() || oracle->parsed()) {
            return cmd_eval(o, out, oracle->parsed());
        }
        if (du->parsed()) {
            out << dump_netlist(dual(load_netlist(o.netlist))) << "\n";
            return kExitOk;
        }
        if (bo->parsed()) {
            return cmd_bound(o, out);
        }
        if (ro->parsed()) {
            return cmd_robustness(o, out);
        }
        if (up->parsed()) {
            return cmd_upg(o, out);
        }
        if (la->parsed()) {
            return cmd_lattice(o, out);
        }
        return cmd_render(o, out);
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const CapacityError &e) {
        err << "capacity: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const std::exception &e) {
        err << "failure: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace relaynet::cli
