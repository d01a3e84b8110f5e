#include "hecke/catalog.hpp"
#include "hecke/corner.hpp"
#include "hecke/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace hecke;
using nlohmann::json;

namespace {

struct Options {
    std::string pair_file;
    bool json_out = false;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Inline JSON or a path to a file holding it.
json load_json(const std::string& arg) {
    auto first = arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return lenient_parse(arg);
    return lenient_parse(slurp(arg));
}

std::string load_text(const std::string& arg) {
    auto first = arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[' || arg[first] == '"')) return arg;
    if (std::ifstream(arg)) return slurp(arg);
    return arg;
}

CatalogPair open_pair(const Options& o) { return build_pair(load_json(o.pair_file)); }

void emit(const Options& o, const json& j, const std::string& text) {
    if (o.json_out)
        std::cout << j.dump() << "\n";
    else
        std::cout << text << "\n";
}

std::string show(const GroupElement& g) { return serialize(g); }

std::string show(const HeckeElement& f) {
    const auto j = to_json(f);
    if (j["terms"].empty()) return "0";
    std::string out;
    const std::string symbol = f.basis() == Basis::Chi ? "chi" : "phi";
    for (const auto& t : j["terms"]) {
        if (!out.empty()) out += " + ";
        out += "(" + t["coeff"].get<std::string>() + ") " + symbol + "[" + t["rep"].dump() + "]";
    }
    return out;
}

std::complex<double> parse_complex(const std::string& text) {
    if (text == "i") return {0.0, 1.0};
    if (text == "-i") return {0.0, -1.0};
    auto comma = text.find(',');
    try {
        if (comma == std::string::npos) return {std::stod(text), 0.0};
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        fail(ErrorCode::ParseError, "parameter must be 're', 're,im' or 'i', got '" + text + "'");
    }
}

std::size_t count_double_cosets(HeckePair& pair) {
    for (const auto& g : pair.group().elements()) pair.double_coset_of(g);
    return pair.coset_count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations with Hecke pairs"};
    app.require_subcommand(1);
    Options o;

    auto add = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--pair", o.pair_file, "pair spec JSON file")->required();
        sub->add_flag("--json", o.json_out, "machine-readable output");
        return sub;
    };

    std::string elem, f_arg, g_arg, candidates, window, samples, kind, param = "1";
    std::size_t bound = 4, max_degree = 4, cap = 10000;
    double tol = 1e-9;
    std::optional<unsigned long> char_q;
    std::optional<std::string> haar_at;

    auto* info = add("pair-info", "describe the pair");
    auto* cmd_L = add("L", "number of left cosets in HxH");
    cmd_L->add_option("elem", elem)->required();
    auto* cmd_delta = add("delta", "modular function");
    cmd_delta->add_option("elem", elem)->required();
    auto* cmd_decompose = add("decompose", "left-coset transversal of HxH");
    cmd_decompose->add_option("elem", elem)->required();
    auto* conv = add("conv", "convolution of two Hecke elements");
    conv->add_option("f", f_arg)->required();
    conv->add_option("g", g_arg)->required();
    auto* star = add("star", "involution");
    star->add_option("f", f_arg)->required();
    auto* norm1 = add("norm1", "l1 norm");
    norm1->add_option("f", f_arg)->required();
    auto* in_t = add("in-T", "membership in the directing semigroup");
    in_t->add_option("elem", elem)->required();
    auto* witness = add("directed-witness", "search s, t in T with s^-1 t = x");
    witness->add_option("elem", elem)->required();
    witness->add_option("--candidates", candidates, "JSON array of T elements (file or inline)")->required();
    witness->add_option("--bound", bound, "maximum word length");
    auto* reduce = add("reduce", "quotient by the core of H (finite)");
    auto* full = add("full", "fullness of p (finite)");
    auto* corner = add("corner-dim", "dimension of the corner pAp (finite)");
    auto* omega = add("omega-full", "Omega = dual of N (finite semidirect)");
    auto* level = add("level", "level quotient of H on a window");
    level->add_option("--window", window, "JSON array of coset representatives")->required();
    auto* haar = add("haar", "Haar measure of x G_F");
    haar->add_option("--window", window, "JSON array of coset representatives")->required();
    haar->add_option("--at", haar_at, "translate x (the result does not depend on it)");
    auto* chars = add("char-check", "verify a character on the phi basis");
    chars->add_option("--kind", kind, "dihedral_pi_c | psl2_hall_z | psl2_hall_z1")->required();
    chars->add_option("--param", param, "complex parameter as 're', 're,im' or 'i'");
    chars->add_option("--max-degree", max_degree);
    chars->add_option("--tol", tol);
    chars->add_option("--q", char_q, "prime for the psl2 kinds (default: the pair's q)");
    auto* orbits = add("orbit-check", "orbit finiteness of tH under sHs^-1");
    orbits->add_option("--samples", samples, "JSON array of [s, t] pairs")->required();
    orbits->add_option("--cap", cap);

    CLI11_PARSE(app, argc, argv);

    try {
        auto cp = open_pair(o);
        auto& pair = *cp.pair;
        const Group& G = pair.group();

        if (info->parsed()) {
            json j = cp.metadata;
            j["max_index"] = pair.max_index();
            emit(o, j, j.dump(2));
        } else if (cmd_L->parsed()) {
            auto x = parse_element(G, elem);
            auto L = pair.hecke_L(x);
            emit(o, {{"element", to_json(x)}, {"L", L}}, "L(" + show(x) + ") = " + std::to_string(L));
        } else if (cmd_delta->parsed()) {
            auto x = parse_element(G, elem);
            auto d = pair.delta(x);
            emit(o, {{"element", to_json(x)}, {"L", pair.hecke_L(x)}, {"R", pair.hecke_R(x)}, {"delta", to_string(d)}},
                 "Delta(" + show(x) + ") = " + to_string(d));
        } else if (cmd_decompose->parsed()) {
            auto x = parse_element(G, elem);
            auto index = pair.index_and_transversal(x);
            json t = json::array(), reps = json::array();
            std::string text = "H" + show(x) + "H = union of " + std::to_string(index.L) + " left cosets:";
            for (std::size_t i = 0; i < index.transversal.size(); ++i) {
                t.push_back(to_json(index.transversal[i]));
                reps.push_back(to_json(index.reps[i]));
                text += "\n  " + show(index.transversal[i]) + " H";
            }
            emit(o, {{"element", to_json(x)}, {"L", index.L}, {"transversal", t}, {"H_reps", reps}}, text);
        } else if (conv->parsed()) {
            auto f = hecke_element_from_json(cp.pair, load_json(f_arg));
            auto g = hecke_element_from_json(cp.pair, load_json(g_arg));
            auto r = convolve(f, g);
            emit(o, to_json(r), show(r));
        } else if (star->parsed()) {
            auto r = involute(hecke_element_from_json(cp.pair, load_json(f_arg)));
            emit(o, to_json(r), show(r));
        } else if (norm1->parsed()) {
            auto n = l1_norm(hecke_element_from_json(cp.pair, load_json(f_arg)));
            emit(o, {{"norm1", to_string(n)}}, "||f||_1 = " + to_string(n));
        } else if (in_t->parsed()) {
            auto x = parse_element(G, elem);
            bool r = pair.in_T(x);
            emit(o, {{"element", to_json(x)}, {"in_T", r}}, show(x) + (r ? " is in T" : " is not in T"));
        } else if (witness->parsed()) {
            auto x = parse_element(G, elem);
            auto cands = parse_elements(G, load_text(candidates));
            auto w = pair.directed_witness(x, cands, bound);
            json j = {{"element", to_json(x)}, {"bound", bound}, {"witness", nullptr}};
            std::string text = "no witness up to length " + std::to_string(bound) + " (not a proof)";
            if (w) {
                j["witness"] = {{"s", to_json(w->first)}, {"t", to_json(w->second)}};
                text = "s = " + show(w->first) + ", t = s x = " + show(w->second);
            }
            emit(o, j, text);
        } else if (reduce->parsed()) {
            auto r = core_reduce(cp.pair);
            auto finite = std::dynamic_pointer_cast<const FiniteGroup>(r.pair->group_ptr());
            json h = json::array();
            for (std::size_t i = 0; i < finite->size(); ++i)
                if (r.pair->in_H(make_finite(i))) h.push_back(i);
            json j = {{"reduced", r.reduced}, {"kernel", r.kernel},     {"order", finite->size()},
                      {"table", finite->table()}, {"H", h}, {"quotient_of", r.quotient_of}};
            emit(o, j,
                 r.reduced ? "pair is reduced"
                           : "kernel of order " + std::to_string(r.kernel.size()) + "; quotient of order " +
                                 std::to_string(finite->size()));
        } else if (full->parsed()) {
            bool r = fullness_test(RegularRep(pair), pair.subgroup());
            emit(o, {{"full", r}}, r ? "p is full" : "p is not full");
        } else if (corner->parsed()) {
            auto d = corner_dimension(RegularRep(pair), pair.subgroup());
            auto c = count_double_cosets(pair);
            emit(o, {{"corner_dim", d}, {"double_cosets", c}},
                 "dim pAp = " + std::to_string(d) + ", double cosets = " + std::to_string(c));
        } else if (omega->parsed()) {
            if (!cp.semidirect) fail(ErrorCode::PairMismatch, "omega-full needs a finite_semidirect pair");
            const auto& s = *cp.semidirect;
            bool r = omega_is_full_dual(*s.N, s.h, *s.Q, s.action);
            emit(o, {{"omega_full", r}}, r ? "Omega is the full dual" : "Omega is a proper subset of the dual");
        } else if (level->parsed()) {
            auto F = parse_elements(G, load_text(window));
            auto lq = h_level_quotient(pair, F);
            emit(o, to_json(lq, F), "[H : H n G_F'] = " + std::to_string(lq.size));
        } else if (haar->parsed()) {
            auto F = parse_elements(G, load_text(window));
            auto x = haar_at ? parse_element(G, *haar_at) : G.identity();
            auto mu = haar_index(pair, x, F);
            emit(o, {{"haar", to_string(mu)}}, "mu(x G_F) = " + to_string(mu));
        } else if (chars->parsed()) {
            CharacterSpec spec;
            spec.kind = parse_character_kind(kind);
            spec.parameter = parse_complex(param);
            spec.q = char_q.value_or(cp.spec.q ? cp.spec.q : 2);
            auto rep = verify_character(cp, spec, max_degree, tol);
            json j = {{"kind", kind},
                      {"checks", rep.checks},
                      {"max_deviation", rep.max_deviation},
                      {"tolerance", rep.tolerance},
                      {"passed", rep.passed}};
            std::ostringstream ss;
            ss << (rep.passed ? "pass" : "FAIL") << ": " << rep.checks << " products, max deviation "
               << rep.max_deviation;
            emit(o, j, ss.str());
            if (!rep.passed) return 1;
        } else if (orbits->parsed()) {
            auto j_samples = load_json(samples);
            if (!j_samples.is_array()) fail(ErrorCode::ParseError, "samples must be an array of [s, t]");
            std::vector<std::pair<GroupElement, GroupElement>> st;
            for (const auto& s : j_samples) {
                if (!s.is_array() || s.size() != 2) fail(ErrorCode::ParseError, "each sample is [s, t]");
                st.emplace_back(G.from_json(s[0]), G.from_json(s[1]));
            }
            auto report = hecke_group_check(pair, st, cap);
            json out = {{"cap", cap}, {"all_finite", report.all_finite()}, {"samples", json::array()}};
            std::string text;
            for (const auto& s : report.samples) {
                json e = {{"s", to_json(s.s)}, {"t", to_json(s.t)}};
                if (s.size)
                    e["size"] = *s.size;
                else
                    e["overflow"] = true;
                out["samples"].push_back(e);
                text += show(s.t) + "H under " + show(s.s) + "H" + show(s.s) + "^-1: " +
                        (s.size ? std::to_string(*s.size) : "overflow (inconclusive)") + "\n";
            }
            text += report.all_finite() ? "all orbits finite at this cap" : "some orbit exceeded the cap";
            emit(o, out, text);
            if (!report.all_finite()) return 3;
        }
    } catch (const Error& e) {
        json j = {{"error", std::string(to_string(e.code()))}, {"detail", e.what()}};
        (o.json_out ? std::cout : std::cerr) << j.dump() << "\n";
        return e.code() == ErrorCode::IndexOverflow ? 3 : 2;
    } catch (const json::exception& e) {
        json j = {{"error", "ParseError"}, {"detail", e.what()}};
        (o.json_out ? std::cout : std::cerr) << j.dump() << "\n";
        return 2;
    }
    return 0;
}
