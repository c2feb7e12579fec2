#include "cli.hpp"

#include "heatlaw/catalog.hpp"
#include "heatlaw/errors.hpp"
#include "heatlaw/harness.hpp"
#include "heatlaw/json_io.hpp"
#include "heatlaw/law.hpp"
#include "heatlaw/modal.hpp"
#include "heatlaw/roots.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>

namespace heatlaw::cli {

namespace {

struct MemorySelection {
    std::string omega = "0";
    std::string kernel = "exponential";
    std::string tau = "1";
    std::string kappa = "0";
    bool extended_omega = false;
};

// Which law to build: a preset with constants, or an explicit parameter
// sequence, optionally with a memory term and its relaxation.
struct LawSelection {
    std::optional<std::string> preset;
    std::map<std::string, std::string> constants;
    std::optional<std::size_t> order;
    std::vector<std::string> epsilon;
    std::vector<std::string> omega;
    std::vector<std::string> kappa;
    std::map<std::size_t, std::string> epsilon_at;  // 1-based
    std::map<std::size_t, std::string> omega_at;    // 1-based
    std::map<std::size_t, std::string> kappa_at;    // 0-based
    std::optional<MemorySelection> memory;
    bool relax = false;
    std::optional<Json> equation;  // an EvolutionEquation given directly

    bool explicit_params() const {
        return order || !epsilon.empty() || !omega.empty() || !kappa.empty() || !epsilon_at.empty() || !omega_at.empty() ||
               !kappa_at.empty();
    }
};

struct ResolvedLaw {
    std::optional<ParameterSequence> params;
    std::optional<HeatLaw> law;
    std::optional<HeatLaw> unrelaxed;  // the memory law when --relax was applied
    EvolutionEquation equation;
    Classification classification;
    std::optional<Rational> stability;
};

std::string value_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return format_double(v.get<double>());
    throw ValidationError("RunConfig: expected a number or rational string, got " + v.dump());
}

std::vector<std::string> text_list(const Json& v) {
    std::vector<std::string> out;
    for (const auto& e : v) out.push_back(value_text(e));
    return out;
}

RationalVec fill(std::size_t count, const std::vector<std::string>& list, const std::map<std::size_t, std::string>& at,
                 std::size_t base, const char* name, const Rational& fallback) {
    if (list.size() > 1 && list.size() != count) {
        throw ValidationError(std::string("ParameterSequence: ") + name + " lists " + std::to_string(list.size()) +
                              " values but " + std::to_string(count) + " are needed");
    }
    RationalVec out(count, list.size() == 1 ? parse_rational(list[0]) : fallback);
    for (std::size_t i = 0; i < list.size() && list.size() == count; ++i) out[i] = parse_rational(list[i]);
    for (const auto& [i, v] : at) {
        if (i < base || i - base >= count) {
            throw ValidationError(std::string("ParameterSequence: ") + name + std::to_string(i) + " is outside the order-" +
                                  std::to_string(base == 1 ? count : count - 1) + " sequence");
        }
        out[i - base] = parse_rational(v);
    }
    return out;
}

Kernel memory_kernel(const MemorySelection& m) {
    if (m.kernel == "dirac") return Kernel::dirac();
    if (m.kernel == "exponential") {
        const Rational tau = parse_rational(m.tau);
        return sgn(tau) == 0 ? Kernel::dirac() : Kernel::exponential(tau);
    }
    throw ValidationError("MemoryTerm: kernel '" + m.kernel + "' must be exponential or dirac");
}

void finish_equation(ResolvedLaw& out) {
    out.classification = classify(out.equation);
    if (out.classification.item == 6) {
        // d_ttt + a d_tt - b Lap d_t - c Lap, after dividing by the leading coefficient.
        const EvolutionEquation eq = out.equation.normalized();
        const Rational lead = eq.time_coeffs.at(3);
        const Rational a = eq.time_coeffs.at(2) / lead;
        const Rational b = eq.laplacian_coeffs.at(1) / lead;
        const Rational c = eq.laplacian_coeffs.at(0) / lead;
        out.stability = stability_number(a, b, c);
    }
}

ResolvedLaw resolve(const LawSelection& sel) {
    ResolvedLaw out;
    if (sel.equation) {
        if (sel.preset || sel.explicit_params() || sel.memory || sel.relax) {
            throw ValidationError("RunConfig: an explicit equation excludes preset, params, memory and relax");
        }
        out.equation = equation_from_json(*sel.equation);
        finish_equation(out);
        return out;
    }
    HeatLaw law;
    if (sel.preset) {
        if (sel.explicit_params()) throw ValidationError("RunConfig: a preset and explicit params are mutually exclusive");
        Constants overrides;
        for (const auto& [k, v] : sel.constants) overrides[k] = parse_rational(v);
        const PresetInstance inst = instantiate(find_preset(*sel.preset), overrides);
        out.params = inst.params;
        law = inst.law;
    } else {
        if (!sel.constants.empty()) throw ValidationError("RunConfig: preset constants given without a preset");
        std::size_t n = sel.order.value_or(0);
        if (!sel.order) {
            n = std::max(sel.epsilon.size(), sel.omega.size());
            if (!sel.kappa.empty()) n = std::max(n, sel.kappa.size() - 1);
            for (const auto& [i, v] : sel.epsilon_at) n = std::max(n, i);
            for (const auto& [i, v] : sel.omega_at) n = std::max(n, i);
            for (const auto& [i, v] : sel.kappa_at) n = std::max(n, i);
        }
        if (n == 0) {
            const RationalVec kappa = fill(1, sel.kappa, sel.kappa_at, 0, "kappa", 1);
            if (!sel.epsilon.empty() || !sel.omega.empty()) throw ValidationError("HeatLaw: order 0 takes no epsilon or omega");
            law = fourier_law(kappa[0]);
        } else {
            ParameterSequence p;
            p.epsilon = fill(n, sel.epsilon, sel.epsilon_at, 1, "epsilon", 1);
            p.omega = fill(n, sel.omega, sel.omega_at, 1, "omega", 0);
            p.kappa = fill(n + 1, sel.kappa, sel.kappa_at, 0, "kappa", 1);
            p.validate();
            out.params = p;
            law = build_law(p);
        }
    }
    if (sel.memory) {
        if (law.has_memory()) throw ValidationError("attach_memory: the preset already carries a memory term");
        LawOptions options;
        options.extended_omega = sel.memory->extended_omega;
        law = attach_memory(law, parse_rational(sel.memory->omega), memory_kernel(*sel.memory), parse_rational(sel.memory->kappa),
                            options);
    }
    if (sel.relax) {
        if (!law.has_memory()) throw ValidationError("relax_exponential: --relax needs a law with a memory term");
        out.unrelaxed = law;
        law = relax_exponential(law);
    }
    out.law = law;
    out.equation = to_evolution(law);
    finish_equation(out);
    return out;
}

LawSelection selection_from_json(const Json& config) {
    LawSelection sel;
    if (config.contains("preset")) sel.preset = config.at("preset").get<std::string>();
    if (config.contains("constants")) {
        for (const auto& [k, v] : config.at("constants").items()) sel.constants[k] = value_text(v);
    }
    if (config.contains("params")) {
        const Json& p = config.at("params");
        if (p.contains("epsilon")) sel.epsilon = text_list(p.at("epsilon"));
        if (p.contains("omega")) sel.omega = text_list(p.at("omega"));
        if (p.contains("kappa")) sel.kappa = text_list(p.at("kappa"));
        sel.order = sel.epsilon.size();
    }
    if (config.contains("memory")) {
        const Json& m = config.at("memory");
        MemorySelection mem;
        if (m.contains("omega")) mem.omega = value_text(m.at("omega"));
        if (m.contains("kappa")) mem.kappa = value_text(m.at("kappa"));
        if (m.contains("extended_omega")) mem.extended_omega = m.at("extended_omega").get<bool>();
        if (m.contains("kernel")) {
            const Json& k = m.at("kernel");
            mem.kernel = k.value("type", std::string("exponential"));
            if (k.contains("tau")) mem.tau = value_text(k.at("tau"));
        }
        sel.memory = mem;
    }
    if (config.contains("relax")) sel.relax = config.at("relax").get<bool>();
    if (config.contains("equation")) sel.equation = config.at("equation");
    return sel;
}

// Lifts --epsilon3 / --kappa0=2 style flags out of the argument list.
std::vector<std::string> extract_indexed(const std::vector<std::string>& args, LawSelection& sel) {
    static const std::regex pattern(R"(--(epsilon|omega|kappa)(\d+)(=(.*))?)");
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::smatch m;
        if (!std::regex_match(args[i], m, pattern)) {
            rest.push_back(args[i]);
            continue;
        }
        std::string value;
        if (m[3].matched) {
            value = m[4].str();
        } else {
            if (i + 1 >= args.size()) throw CLI::ParseError("--" + m[1].str() + m[2].str() + " needs a value", CLI::ExitCodes::ArgumentMismatch);
            value = args[++i];
        }
        const std::size_t index = std::stoul(m[2].str());
        auto& target = m[1] == "epsilon" ? sel.epsilon_at : m[1] == "omega" ? sel.omega_at : sel.kappa_at;
        target[index] = value;
    }
    return rest;
}

struct LawFlags {
    std::size_t order = 0;
    MemorySelection memory;
    bool memory_given = false;
};

void add_law_options(CLI::App* cmd, LawSelection& sel, LawFlags& flags) {
    cmd->add_option("--n", flags.order, "Order n of the heat law");
    cmd->add_option("--epsilon", sel.epsilon, "epsilon_1..epsilon_n (one value is broadcast)")->expected(1, -1);
    cmd->add_option("--omega", sel.omega, "omega_1..omega_n (one value is broadcast)")->expected(1, -1);
    cmd->add_option("--kappa", sel.kappa, "kappa_0..kappa_n (one value is broadcast)")->expected(1, -1);
    cmd->add_option("--preset", sel.preset, "Named equation, see 'derive --list-presets'");
    for (const char* c : {"a", "b", "c", "d", "e"}) {
        cmd->add_option_function<std::string>(std::string("--") + c, [&sel, c](const std::string& v) { sel.constants[c] = v; },
                                              std::string("Preset constant ") + c);
    }
    auto mem = [&flags](auto setter) {
        return [&flags, setter](const std::string& v) {
            flags.memory_given = true;
            setter(flags.memory, v);
        };
    };
    cmd->add_option_function<std::string>("--memory-omega", mem([](MemorySelection& m, const std::string& v) { m.omega = v; }),
                                          "Attach memory: instantaneous fraction omega");
    cmd->add_option_function<std::string>("--memory-kernel", mem([](MemorySelection& m, const std::string& v) { m.kernel = v; }),
                                          "Memory kernel: exponential or dirac");
    cmd->add_option_function<std::string>("--memory-tau", mem([](MemorySelection& m, const std::string& v) { m.tau = v; }),
                                          "Relaxation time of the exponential kernel");
    cmd->add_option_function<std::string>("--memory-kappa", mem([](MemorySelection& m, const std::string& v) { m.kappa = v; }),
                                          "Perturbation conductivity kappa_{n+1}");
    cmd->add_flag_callback("--extended-omega", [&flags] {
        flags.memory_given = true;
        flags.memory.extended_omega = true;
    }, "Allow memory omega > 1");
    cmd->add_flag("--relax", sel.relax, "Replace an exponential memory by the equivalent local law");
}

void finish_selection(CLI::App* cmd, LawSelection& sel, const LawFlags& flags) {
    if (cmd->count("--n")) sel.order = flags.order;
    if (flags.memory_given) sel.memory = flags.memory;
}

// Flags given on the command line override the JSON config.
void merge(LawSelection& base, const LawSelection& flags) {
    const bool params = flags.explicit_params();
    if (flags.preset || params) {
        if (flags.preset) base.preset = flags.preset;
        if (params) {
            base.preset.reset();
            base.order = flags.order;
            base.epsilon = flags.epsilon;
            base.omega = flags.omega;
            base.kappa = flags.kappa;
            base.epsilon_at = flags.epsilon_at;
            base.omega_at = flags.omega_at;
            base.kappa_at = flags.kappa_at;
        }
        if (flags.preset || params) base.constants.clear();
        base.equation.reset();
    }
    for (const auto& [k, v] : flags.constants) base.constants[k] = v;
    if (flags.memory) base.memory = flags.memory;
    if (flags.relax) base.relax = true;
}

Json law_json(const ResolvedLaw& r) {
    Json j;
    if (r.params) {
        j["params"] = *r.params;
        j["coefficients"] = build_table(*r.params);
    }
    if (r.law) {
        Json law;
        to_json(law, *r.law);
        j["law"] = law;
        j["law_text"] = render(*r.law);
    }
    if (r.unrelaxed) {
        Json m;
        to_json(m, *r.unrelaxed);
        j["memory_law"] = m;
    }
    Json eq;
    to_json(eq, r.equation);
    j["equation"] = eq;
    j["equation_text"] = render(r.equation);
    j["classification"] = {{"item", r.classification.item}, {"label", r.classification.label}};
    if (r.stability) j["stability_number"] = to_string(*r.stability);
    return j;
}

void print_text(std::ostream& out, const ResolvedLaw& r) {
    if (r.params) {
        const CoefficientTable t = build_table(*r.params);
        out << "order: " << t.order << "\n";
        out << "alpha:";
        for (const auto& a : t.alpha) out << " " << to_string(a);
        out << "\nbeta:";
        for (const auto& b : t.beta) out << " " << to_string(b);
        out << "\n";
    }
    if (r.unrelaxed) out << "memory law: " << render(*r.unrelaxed) << "\n";
    if (r.law) out << "law: " << render(*r.law) << "\n";
    out << "equation: " << render(r.equation) << "\n";
    out << "classification: " << r.classification.label << "\n";
    if (r.stability) {
        out << "stability number: " << to_string(*r.stability) << " ("
            << (sgn(*r.stability) > 0 ? "exponentially stable" : sgn(*r.stability) < 0 ? "unstable" : "critical") << ")\n";
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("RunConfig: cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream outf(path, std::ios::binary);
    if (!outf) throw ValidationError("output: cannot write '" + path + "'");
    outf << content;
}

Json load_config(const std::string& path) {
    if (path.empty()) return Json::object();
    try {
        return Json::parse(read_file(path));
    } catch (const Json::parse_error& e) {
        throw ValidationError("RunConfig: '" + path + "' is not valid JSON: " + e.what());
    }
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("HEATLAW_SEED"); env && *env) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ValidationError(std::string("verify: HEATLAW_SEED = '") + env + "' is not an unsigned integer");
        }
    }
    return harness::kDefaultSeed;
}

struct SolveSettings {
    double length = 1.0;
    std::size_t modes = 1;
    double final_time = 1.0;
    double dt = 1e-2;
    std::string method = "expm";
    double tolerance = 1e-12;
    unsigned threads = 0;
};

SolveSettings settings_from_json(const Json& config) {
    SolveSettings s;
    if (config.contains("domain")) {
        s.length = config.at("domain").value("L", s.length);
        s.modes = config.at("domain").value("K", s.modes);
    }
    if (config.contains("time")) {
        const Json& t = config.at("time");
        s.final_time = t.value("T", s.final_time);
        s.dt = t.value("dt", s.dt);
        s.method = t.value("method", s.method);
        s.tolerance = t.value("tolerance", s.tolerance);
    }
    s.threads = config.value("threads", 0u);
    return s;
}

std::vector<modal::HistorySpec> history_from_json(const Json& config, std::size_t modes) {
    if (!config.contains("history")) return {};
    const Json& h = config.at("history");
    const std::string type = h.value("type", std::string("null"));
    if (type == "null") return {};
    if (type != "constant") throw ValidationError("HistorySpec: type '" + type + "' must be null or constant");
    std::vector<modal::HistorySpec> out;
    const Json& v = h.at("values");
    if (v.is_number()) {
        out.assign(modes, modal::HistorySpec::constant(v.get<double>()));
    } else {
        if (v.size() != modes) throw ValidationError("HistorySpec: constant history lists " + std::to_string(v.size()) + " values for " + std::to_string(modes) + " modes");
        for (const auto& e : v) out.push_back(modal::HistorySpec::constant(e.get<double>()));
    }
    return out;
}

// Per-mode initial values for the equation being integrated. When the law was
// relaxed, rows may omit the top derivative; it is then read from the memory
// equation at t = 0.
std::vector<std::vector<double>> initial_from_json(const Json& config, const ResolvedLaw& law, const SolveSettings& s,
                                                   const std::vector<modal::HistorySpec>& history) {
    const std::vector<double> lambdas = modal::eigenvalues(s.length, s.modes);
    const std::size_t d = modal::reduce(law.equation, lambdas[0], {}, {}).time_order;
    std::vector<std::vector<double>> rows(s.modes);
    if (config.contains("initial")) {
        const Json& init = config.at("initial");
        if (init.contains("fourier") && init.contains("profile")) {
            throw ValidationError("RunConfig: initial data takes either 'fourier' or 'profile', not both");
        }
        if (init.contains("fourier")) {
            const Json& f = init.at("fourier");
            if (f.size() > s.modes) throw ValidationError("RunConfig: initial data lists more modes than K");
            for (std::size_t k = 0; k < f.size(); ++k) rows[k] = f[k].get<std::vector<double>>();
        } else if (init.contains("profile")) {
            // profile[j] samples d_t^j u on a uniform grid including both ends.
            const Json& p = init.at("profile");
            for (std::size_t j = 0; j < p.size(); ++j) {
                const std::vector<double> coeffs = modal::project_profile(p[j].get<std::vector<double>>(), s.length, s.modes);
                for (std::size_t k = 0; k < s.modes; ++k) {
                    rows[k].resize(p.size(), 0.0);
                    rows[k][j] = coeffs[k];
                }
            }
        }
    }
    const bool compatible = law.unrelaxed && law.unrelaxed->memory->kernel.kind() != Kernel::Kind::Dirac;
    const EvolutionEquation memory_eq = compatible ? to_evolution(*law.unrelaxed) : EvolutionEquation{};
    for (std::size_t k = 0; k < s.modes; ++k) {
        auto& row = rows[k];
        if (row.empty()) row.assign(compatible ? d - 1 : d, 0.0);
        if (compatible && row.size() + 1 == d && memory_eq.variable == law.equation.variable) {
            const modal::HistorySpec h = history.empty() ? modal::HistorySpec::null() : history[k];
            row = modal::compatible_initial_data(memory_eq, lambdas[k], h, row);
        }
        if (row.size() != d) {
            throw ValidationError("RunConfig: mode " + std::to_string(k + 1) + " has " + std::to_string(row.size()) +
                                  " initial values but the equation has time order " + std::to_string(d));
        }
    }
    return rows;
}

int cmd_derive(const LawSelection& sel, const std::string& format, std::ostream& out) {
    const ResolvedLaw r = resolve(sel);
    if (format == "json") {
        out << law_json(r).dump(2) << "\n";
    } else {
        print_text(out, r);
    }
    return 0;
}

void list_presets(std::ostream& out) {
    for (const auto& p : preset_catalog()) {
        out << roman(p.item) << "  " << p.name << ": " << p.title;
        if (!p.defaults.empty()) {
            out << " [";
            bool first = true;
            for (const auto& [k, v] : p.defaults) {
                out << (first ? "" : ", ") << k << "=" << to_string(v);
                first = false;
            }
            out << "]";
        }
        out << "\n";
    }
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hierarchy of heat conduction laws: derivation, modal simulation and verification", "heatlaw"};
    app.require_subcommand(1);

    LawSelection derive_sel, solve_sel, roots_sel;
    LawFlags derive_flags, solve_flags, roots_flags;

    std::string format = "text";
    bool list = false;
    auto* derive = app.add_subcommand("derive", "Build a heat law and its evolution equation");
    add_law_options(derive, derive_sel, derive_flags);
    derive->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    derive->add_flag("--list-presets", list, "List the named equations");

    std::string solve_config, csv_path, meta_path;
    std::optional<double> o_length, o_time, o_dt, o_tol;
    std::optional<std::size_t> o_modes;
    std::optional<std::string> o_method;
    std::optional<unsigned> o_threads;
    auto* solve = app.add_subcommand("solve", "Integrate the modal ODEs and write a trajectory CSV");
    solve->add_option("config", solve_config, "RunConfig JSON file");
    add_law_options(solve, solve_sel, solve_flags);
    solve->add_option("--L", o_length, "Interval length");
    solve->add_option("--K", o_modes, "Number of sine modes");
    solve->add_option("--T", o_time, "Final time");
    solve->add_option("--dt", o_dt, "Output step");
    solve->add_option("--method", o_method, "Integrator")->check(CLI::IsMember({"expm", "rk4"}));
    solve->add_option("--tolerance", o_tol, "RK4 local error tolerance");
    solve->add_option("--threads", o_threads, "Worker threads (0: all cores)");
    solve->add_option("--out", csv_path, "CSV path (default: stdout)");
    solve->add_option("--metadata", meta_path, "Metadata JSON path (default: <out>.meta.json)");

    std::string roots_config;
    std::optional<double> r_length;
    std::optional<std::size_t> r_modes;
    auto* roots = app.add_subcommand("roots", "Characteristic roots of every mode and the spectral abscissa");
    roots->add_option("config", roots_config, "RunConfig JSON file");
    add_law_options(roots, roots_sel, roots_flags);
    roots->add_option("--L", r_length, "Interval length");
    roots->add_option("--K", r_modes, "Number of sine modes");

    std::string suite = "all";
    std::optional<std::uint64_t> seed;
    bool no_timing = false;
    auto* verify = app.add_subcommand("verify", "Run verification suites and print a JSON report");
    std::vector<std::string> suites{"all"};
    for (const auto& n : harness::suite_names()) suites.push_back(n);
    verify->add_option("--suite", suite, "Suite name")->check(CLI::IsMember(suites));
    verify->add_option("--seed", seed, "Random seed (default: HEATLAW_SEED or 42)");
    verify->add_flag("--no-timing", no_timing, "Omit wall_ms so identical runs print identical bytes");

    try {
        LawSelection indexed;
        std::vector<std::string> args = extract_indexed(raw_args, indexed);
        std::reverse(args.begin(), args.end());
        app.parse(args);

        auto with_indexed = [&](LawSelection& sel) {
            sel.epsilon_at = indexed.epsilon_at;
            sel.omega_at = indexed.omega_at;
            sel.kappa_at = indexed.kappa_at;
        };

        if (derive->parsed()) {
            if (list) {
                list_presets(out);
                return 0;
            }
            finish_selection(derive, derive_sel, derive_flags);
            with_indexed(derive_sel);
            return cmd_derive(derive_sel, format, out);
        }

        if (roots->parsed()) {
            const Json config = load_config(roots_config);
            LawSelection sel = selection_from_json(config);
            finish_selection(roots, roots_sel, roots_flags);
            with_indexed(roots_sel);
            merge(sel, roots_sel);
            SolveSettings s = settings_from_json(config);
            if (r_length) s.length = *r_length;
            if (r_modes) s.modes = *r_modes;
            const ResolvedLaw law = resolve(sel);
            const std::vector<double> lambdas = modal::eigenvalues(s.length, s.modes);
            Json report;
            report["equation"] = render(law.equation);
            report["classification"] = law.classification.label;
            report["modes"] = Json::array();
            double abscissa = -INFINITY;
            for (double lambda : lambdas) {
                const RootSet rs = characteristic_roots(law.equation, lambda);
                for (const auto& z : rs.roots) abscissa = std::max(abscissa, z.real());
                report["modes"].push_back(roots_to_json(rs));
            }
            report["degree"] = characteristic_polynomial(law.equation, lambdas[0]).coeffs.size() - 1;
            report["spectral_abscissa"] = abscissa;
            if (law.stability) report["stability_number"] = to_string(*law.stability);
            out << report.dump(2) << "\n";
            return 0;
        }

        if (solve->parsed()) {
            const Json config = load_config(solve_config);
            LawSelection sel = selection_from_json(config);
            finish_selection(solve, solve_sel, solve_flags);
            with_indexed(solve_sel);
            merge(sel, solve_sel);
            SolveSettings s = settings_from_json(config);
            if (o_length) s.length = *o_length;
            if (o_modes) s.modes = *o_modes;
            if (o_time) s.final_time = *o_time;
            if (o_dt) s.dt = *o_dt;
            if (o_method) s.method = *o_method;
            if (o_tol) s.tolerance = *o_tol;
            if (o_threads) s.threads = *o_threads;
            if (config.contains("output")) {
                if (csv_path.empty()) csv_path = config.at("output").value("csv", std::string());
                if (meta_path.empty()) meta_path = config.at("output").value("metadata", std::string());
            }
            if (s.modes < 1) throw ValidationError("RunConfig: domain K must be >= 1");

            const ResolvedLaw law = resolve(sel);
            const std::vector<modal::HistorySpec> history = history_from_json(config, s.modes);
            modal::SimulationSetup setup;
            setup.length = s.length;
            setup.modes = s.modes;
            setup.final_time = s.final_time;
            setup.control.dt = s.dt;
            setup.control.method = s.method == "rk4" ? modal::Method::RungeKutta4 : modal::Method::MatrixExponential;
            setup.control.rk4_tolerance = s.tolerance;
            setup.threads = s.threads;
            setup.history = history;
            setup.initial = initial_from_json(config, law, s, history);
            const modal::Trajectory traj = modal::simulate(law.equation, setup);

            const std::string csv = modal::trajectory_csv(traj);
            if (csv_path.empty()) out << csv;
            else write_file(csv_path, csv);

            Json effective = config;
            effective["domain"] = {{"L", s.length}, {"K", s.modes}};
            effective["time"] = {{"T", s.final_time}, {"dt", s.dt}, {"method", s.method}, {"tolerance", s.tolerance}};
            effective["initial"] = {{"fourier", setup.initial}};
            Json meta;
            meta["effective_config"] = effective;
            meta["law"] = law_json(law);
            meta["steps"] = traj.times.empty() ? 0 : traj.times.size() - 1;
            meta["diverged_at"] = traj.diverged_at ? Json(*traj.diverged_at) : Json(nullptr);
            if (meta_path.empty() && !csv_path.empty()) meta_path = csv_path + ".meta.json";
            if (!meta_path.empty()) write_file(meta_path, meta.dump(2) + "\n");
            if (traj.diverged_at) err << "warning: trajectory diverged at t = " << format_double(*traj.diverged_at) << "\n";
            return 0;
        }

        if (verify->parsed()) {
            const std::uint64_t used = seed.value_or(default_seed());
            const auto started = std::chrono::steady_clock::now();
            const std::vector<harness::SuiteReport> reports = harness::run_suite(suite, used);
            bool passed = true;
            Json j;
            if (reports.size() == 1) {
                j = harness::to_json(reports.front(), !no_timing);
                passed = reports.front().passed();
            } else {
                std::size_t cases = 0;
                Json failures = Json::array();
                Json parts = Json::array();
                for (const auto& r : reports) {
                    cases += r.cases;
                    passed = passed && r.passed();
                    for (const auto& f : r.failures) {
                        failures.push_back({{"case", r.suite + "/" + f.case_id}, {"message", f.message}, {"payload", f.payload}});
                    }
                    parts.push_back(harness::to_json(r, !no_timing));
                }
                j["suite"] = suite;
                j["cases"] = cases;
                j["failures"] = failures;
                j["seed"] = used;
                if (!no_timing) {
                    j["wall_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
                }
                j["passed"] = passed;
                j["suites"] = parts;
            }
            out << j.dump(2) << "\n";
            return passed ? 0 : 1;
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace heatlaw::cli
