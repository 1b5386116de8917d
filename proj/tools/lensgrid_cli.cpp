// Command-line front end for lens-space grid diagrams.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lensgrid/corpus.hpp"
#include "lensgrid/homology.hpp"
#include "lensgrid/moves.hpp"

using namespace lensgrid;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "1.0.0";
const auto kStart = std::chrono::steady_clock::now();

// 0: every verdict passed. 1: some verdict failed. 2: bad input or usage.
enum Exit { kOk = 0, kFail = 1, kInput = 2 };

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Diagram load_diagram(const std::string& path) {
    auto text = read_text(path);
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    } catch (const Error& e) {
        throw InputError(path + ": " + e.what());
    }
}

json diagram_json(const Diagram& d) {
    json j{{"p", d.p}, {"q", d.q}, {"n", d.n}, {"X", json::array()}, {"O", json::array()}};
    for (auto& c : d.X) j["X"].push_back({c.c1, c.c2});
    for (auto& c : d.O) j["O"].push_back({c.c1, c.c2});
    return j;
}

json grading_json(const Grading& g) { return {{"S", g.S}, {"M", to_string(g.M)}, {"A", to_string(g.A)}}; }

json check_json(const std::string& name, const CheckResult& r) {
    json j{{"check", name}, {"ok", r.ok}};
    if (!r.ok) j["witness"] = r.witness;
    return j;
}

json base_report(const std::string& command, const Diagram* d) {
    json j{{"schema", 1}, {"version", kVersion}, {"command", command}};
    if (d) {
        j["digest"] = digest(*d);
        // q only matters mod p; the Maslov correction uses index (q-1) mod p.
        j["normalization"] = {{"q_mod_p", pmod(d->q, d->p)}, {"correction_index", pmod(d->q - 1, d->p)},
                              {"negative_q", d->q < 0}};
    }
    return j;
}

Window parse_window(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() != 4) throw InputError("window must be A_lo,A_hi,M_lo,M_hi");
    try {
        return {parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2]), parse_rational(parts[3])};
    } catch (const std::exception&) {
        throw InputError("window entries must be integers or num/den");
    }
}

json window_json(const Window& w) {
    return {{"A", {to_string(w.A_lo), to_string(w.A_hi)}}, {"M", {to_string(w.M_lo), to_string(w.M_hi)}}};
}

std::vector<Ring> parse_rings(const std::string& s) {
    if (s == "both") return {Ring::F2, Ring::Z};
    if (s == "f2") return {Ring::F2};
    if (s == "z") return {Ring::Z};
    throw InputError("ring must be f2, z or both");
}

struct SignOptions {
    std::string file;
    std::string cache_dir;
    bool no_cache = false;
};

fs::path cache_root(const SignOptions& o) {
    if (!o.cache_dir.empty()) return o.cache_dir;
    if (const char* e = std::getenv("LENSGRID_CACHE")) return e;
    if (const char* x = std::getenv("XDG_CACHE_HOME")) return fs::path(x) / "lensgrid";
    if (const char* h = std::getenv("HOME")) return fs::path(h) / ".cache" / "lensgrid";
    return fs::temp_directory_path() / "lensgrid";
}

void write_cache(const fs::path& path, const SignAssignment& S) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp);
        if (!f) return;
        f << S.export_text();
    }
    fs::rename(tmp, path, ec);
}

// An explicit file wins; otherwise the on-disk cache keyed by the diagram's
// digest, falling back to a fresh solve that is written back.
std::shared_ptr<const SignAssignment> load_signs(const Diagram& d, const SignOptions& o, std::string* source = nullptr,
                                                 bool use_file = true) {
    auto g = GridShape::of(d);
    auto note = [&](const char* s) {
        if (source) *source = s;
    };
    if (use_file && !o.file.empty()) {
        note("file");
        return std::make_shared<SignAssignment>(SignAssignment::import_text(g, read_text(o.file)));
    }
    fs::path path;
    if (!o.no_cache) {
        path = cache_root(o) / (digest(d) + ".signs");
        std::error_code ec;
        if (fs::exists(path, ec)) {
            try {
                auto S = SignAssignment::import_text(g, read_text(path.string()));
                note("cache");
                return std::make_shared<SignAssignment>(std::move(S));
            } catch (const Error&) {
                // damaged entry, solve again
            }
        }
    }
    auto S = solved_signs(g);
    note("solved");
    if (!path.empty()) write_cache(path, *S);
    return S;
}

Generator generator_arg(const Diagram& d, const std::string& spec) {
    auto slash = spec.find('/');
    if (slash == std::string::npos) throw InputError("generator must look like sigma/a, e.g. 1,2,0/4,0,3");
    Generator x;
    try {
        x = parse_generator(d.n, spec.substr(0, slash), spec.substr(slash + 1));
    } catch (const std::invalid_argument&) {
        throw InputError("generator entries must be integers");
    }
    if (!is_generator(d, x)) throw InputError("not a generator of this diagram: " + spec);
    return x;
}

void emit(json j) {
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - kStart).count();
    j["timings"] = {{"total_ms", std::round(ms * 10) / 10}};
    std::cout << j.dump(2) << "\n";
}

int verdict(json& report, const json& checks) {
    bool ok = true;
    for (auto& c : checks) ok = ok && c.value("ok", false);
    report["checks"] = checks;
    report["pass"] = ok;
    emit(report);
    return ok ? kOk : kFail;
}

// ---- validate / info / generators / grading ----

int cmd_validate(const std::string& file) {
    auto text = read_text(file);
    json r = base_report("validate", nullptr);
    r["file"] = file;
    try {
        auto d = parse(text);
        r["digest"] = digest(d);
        r["valid"] = true;
        emit(r);
        return kOk;
    } catch (const ParseError& e) {
        std::cerr << file << ": " << e.what() << "\n";
        return kInput;
    } catch (const Error& e) {
        r["valid"] = false;
        r["violations"] = e.what();
        emit(r);
        return kFail;
    }
}

int cmd_info(const std::string& file) {
    auto d = load_diagram(file);
    json r = base_report("info", &d);
    r["diagram"] = diagram_json(d);
    auto cnt = generator_count(d);
    r["generators_projected"] = cnt == UINT64_MAX ? json("overflow") : json(cnt);
    r["generator_ceiling"] = generator_ceiling();
    r["within_ceiling"] = cnt <= generator_ceiling();
    r["components"] = component_count(d);
    r["markings"] = 2 * d.n;
    r["x_O"] = {{"generator", to_string(special_generator_xO(d))},
                {"grading", grading_json(grading(d, special_generator_xO(d)))}};
    emit(r);
    return kOk;
}

int cmd_generators(const std::string& file, std::size_t limit) {
    auto d = load_diagram(file);
    json r = base_report("generators", &d);
    r["count"] = generator_count(d);
    GeneratorSpace sp(d);
    Grader G(d);
    json list = json::array();
    for (std::size_t i = 0; i < sp.size() && i < limit; ++i) {
        auto x = sp.at(i);
        list.push_back({{"generator", to_string(x)}, {"grading", grading_json(G(x))}});
    }
    r["generators"] = list;
    r["truncated"] = sp.size() > limit;
    emit(r);
    return kOk;
}

int cmd_grading(const std::string& file, const std::string& gen, bool xo, const std::vector<long long>& shift) {
    auto d = load_diagram(file);
    if (gen.empty() == !xo) throw InputError("give exactly one of --gen or --xo");
    auto x = xo ? special_generator_xO(d) : generator_arg(d, gen);
    json r = base_report("grading", &d);
    r["generator"] = to_string(x);
    if (!shift.empty()) {
        if (shift.size() != 2) throw InputError("--shift takes dx dy");
        auto s = shift_fundamental_domain(d, shift[0], shift[1]);
        std::vector<Cell> pts;
        for (auto& c : generator_points(d, x)) pts.push_back(shift_point(d, c, shift[0], shift[1]));
        auto y = generator_from_points(s, pts);
        r["shift"] = shift;
        r["shifted_generator"] = to_string(y);
        r["grading"] = grading_json(grading(s, y));
    } else {
        r["grading"] = grading_json(grading(d, x));
    }
    auto parts = maslov_parts(d, x, false), partsX = maslov_parts(d, x, true);
    r["I_counts"] = {{"O", {parts.xx, parts.xm, parts.mx, parts.mm}}, {"X", {partsX.xx, partsX.xm, partsX.mx, partsX.mm}}};
    emit(r);
    return kOk;
}

// ---- homology ----

int cmd_homology(const std::string& file, const std::string& flavor, const std::string& ring_s,
                 const std::string& window_s, const SignOptions& so) {
    auto d = load_diagram(file);
    auto rings = parse_rings(ring_s);
    if (rings.size() != 1) throw InputError("homology takes one ring");
    Ring ring = rings[0];
    if (flavor != "tilde" && flavor != "hat" && flavor != "minus") throw InputError("flavor must be tilde, hat or minus");
    std::optional<Window> w;
    if (!window_s.empty()) w = parse_window(window_s);
    if (flavor != "tilde" && !w) throw InputError("a window is required for the " + flavor + " flavor");
    json r = base_report("homology", &d);
    std::string source;
    std::shared_ptr<const SignAssignment> S;
    if (ring == Ring::Z) S = load_signs(d, so, &source);
    auto G = build_complex(d, ring, S.get());
    TrigradedComplex C = flavor == "tilde" ? tilde(G.C) : flavor == "hat" ? hat_type(G.C) : G.C;
    auto H = homology(C, w);
    if (flavor == "tilde" && w) H = restrict_table(H, *w);
    r["pieces"] = json::parse(table_json(H));
    json meta{{"flavor", flavor}, {"ring", ring_name(ring)}, {"total_rank", total_rank(H)},
              {"torsion", has_torsion(H)}, {"generators", G.gens.size()}};
    if (w) meta["window"] = window_json(*w);
    if (!source.empty()) meta["signs"] = source;
    r["meta"] = meta;
    emit(r);
    return kOk;
}

// ---- verify suites ----

json verify_d2(const Diagram& d, const std::vector<Ring>& rings, const SignOptions& so) {
    json checks = json::array();
    for (Ring ring : rings) {
        std::shared_ptr<const SignAssignment> S;
        if (ring == Ring::Z) S = load_signs(d, so);
        auto G = build_complex(d, ring, S.get());
        std::string tag = ring_name(ring);
        checks.push_back(check_json("d^2 = 0 (" + tag + ")", verify_d_squared(G.C)));
        checks.push_back(check_json("degree (-1, 0) (" + tag + ")",
                                    check_map_degree(G.C.diff, G.C.grading, G.C.grading, Rational(-1), Rational(0))));
    }
    return checks;
}

json verify_gradings(const Diagram& d) {
    json checks = json::array();
    Grader G(d);
    auto corr = maslov_correction(d.p, d.q);
    CheckResult laws, integral, shifted;
    auto fail = [](CheckResult& c, const std::string& w) {
        if (c.ok) c.witness = w;
        c.ok = false;
    };
    auto shifts = std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {d.N() - 1, d.n + 1}};
    std::vector<std::pair<Diagram, Grader>> sh;
    for (auto [dx, dy] : shifts) {
        auto s = shift_fundamental_domain(d, dx, dy);
        sh.emplace_back(s, Grader(s));
    }
    for_each_generator(d, [&](const Generator& x) {
        auto gx = G(x);
        Rational t = d.p * (gx.M - corr - 1);
        if (denominator(t) != 1) fail(integral, to_string(x) + ": p(M - d - 1) = " + to_string(t));
        for (auto& r : empty_parallelograms_from(d, x)) {
            auto gy = G(r.terminal);
            if (gx.S != gy.S || gx.M != gy.M + 1 - 2 * r.total_O() || gx.A != gy.A + r.total_X() - r.total_O())
                fail(laws, parallelogram_key(r));
        }
        for (std::size_t k = 0; k < shifts.size(); ++k) {
            std::vector<Cell> pts;
            for (auto& c : generator_points(d, x)) pts.push_back(shift_point(d, c, shifts[k].first, shifts[k].second));
            if (sh[k].second(generator_from_points(sh[k].first, pts)) != gx) fail(shifted, to_string(x));
        }
    });
    checks.push_back(check_json("parallelogram grading laws", laws));
    checks.push_back(check_json("p(M - d - 1) integral", integral));
    checks.push_back(check_json("fundamental-domain invariance", shifted));
    return checks;
}

const char* axiom_name(Axiom a) { return a == Axiom::S1 ? "S1" : a == Axiom::S2 ? "S2" : "S3"; }

json verify_signs(const Diagram& d, const SignOptions& so) {
    json checks = json::array();
    auto sys = build_constraints(GridShape::of(d));
    auto S = load_signs(d, so);
    AxiomReport rep;
    CheckResult axioms;
    try {
        rep = verify_axioms(sys, *S);
    } catch (const Error& e) {
        axioms.ok = false;
        axioms.witness = e.what();
    }
    if (!rep.ok()) {
        axioms.ok = false;
        auto& e = sys.equations[rep.violations.front()];
        std::string w = std::to_string(rep.violations.size()) + " violated, first " + axiom_name(e.axiom) + ":";
        for (auto k : e.vars) w += " [" + key_text(sys.shape, k) + " " + (S->sign(k) > 0 ? "+1" : "-1") + "]";
        axioms.witness = w;
    }
    auto j = check_json("sign axioms S1-S3", axioms);
    j["equations"] = rep.checked;
    j["violations"] = rep.violations.size();
    j["unclassified_loops"] = sys.unclassified_loops;
    checks.push_back(j);
    if (axioms.ok) {
        auto G = build_complex(d, Ring::Z, S.get());
        checks.push_back(check_json("d^2 = 0 (z)", verify_d_squared(G.C)));
    }
    return checks;
}

// Tilde homology of a stabilized diagram is the old table plus a copy shifted by (-1, -1).
CheckResult stabilized_tables(const Diagram& before, const Diagram& after, Ring ring) {
    std::shared_ptr<const SignAssignment> Sb, Sa;
    if (ring == Ring::Z) {
        Sb = solved_signs(GridShape::of(before));
        Sa = solved_signs(GridShape::of(after));
    }
    auto Hb = homology(tilde(build_complex(before, ring, Sb.get()).C));
    auto Ha = homology(tilde(build_complex(after, ring, Sa.get()).C));
    std::map<PieceKey, std::pair<std::size_t, std::vector<BigInt>>> want, got;
    for (auto* t : {&Hb}) {
        for (auto& [k, h] : *t) want[k] = {h.rank, h.torsion};
        for (auto& [k, h] : shift_table(*t, Rational(-1), Rational(-1))) {
            auto& e = want[k];
            e.first += h.rank;
            e.second.insert(e.second.end(), h.torsion.begin(), h.torsion.end());
        }
    }
    for (auto& [k, h] : Ha) got[k] = {h.rank, h.torsion};
    CheckResult r;
    if (got != want) {
        r.ok = false;
        r.witness = "stabilized table:\n" + table_text(Ha) + "expected from:\n" + table_text(Hb);
    }
    return r;
}

json stabilization_checks(const Stabilization& st, const std::vector<Ring>& rings, const std::string& label) {
    json checks = json::array();
    bool direct = st.kind == StabKind::X_SW || st.kind == StabKind::X_NE;
    for (Ring ring : rings) {
        std::string tag = label + " (" + ring_name(ring) + ")";
        if (direct) {
            auto sp = stabilization_split(st);
            std::shared_ptr<const SignAssignment> Sa;
            if (ring == Ring::Z) Sa = solved_signs(GridShape::of(st.after));
            auto rep = verify_stabilization(sp, ring, Sa.get());
            checks.push_back(check_json(tag + " e grading", rep.e_grading));
            checks.push_back(check_json(tag + " e chain map", rep.e_chain));
            checks.push_back(check_json(tag + " Phi_Xn degree", rep.phi_degree));
            checks.push_back(check_json(tag + " Phi_Xn chain map", rep.phi_chain));
            checks.push_back(check_json(tag + " Phi_On chain map", rep.phi_On_chain));
            checks.push_back(check_json(tag + " Phi_Xn Phi_On = Id", rep.inverse));
            checks.push_back(check_json(tag + " homotopy on N", rep.homotopy));
            checks.push_back(check_json(tag + " square", rep.square));
            checks.push_back(check_json(tag + " cone homology", rep.cone));
        }
        checks.push_back(check_json(tag + " tilde tables", stabilized_tables(st.before, st.after, ring)));
    }
    return checks;
}

json commutation_checks(const Diagram& d, int j, bool rows, const std::vector<Ring>& rings, const std::string& label) {
    json checks = json::array();
    // Row moves are column moves of the transposed diagram.
    Diagram base = rows ? transpose(d) : d;
    auto cd = build_combined(base, j);
    for (Ring ring : rings) {
        std::shared_ptr<const SignAssignment> S;
        if (ring == Ring::Z) S = solved_signs(GridShape::of(base));
        auto rep = verify_commutation(cd, ring, S.get());
        std::string tag = label + " (" + ring_name(ring) + ")";
        checks.push_back(check_json(tag + " chain map", rep.chain_map));
        checks.push_back(check_json(tag + " gradings", rep.grading));
        checks.push_back(check_json(tag + " homotopy", rep.homotopy));
        CheckResult t;
        t.ok = rep.tilde_equal;
        if (!t.ok) t.witness = "tilde homology differs";
        checks.push_back(check_json(tag + " tilde tables", t));
    }
    return checks;
}

json verify_move_script(const Diagram& d0, const std::string& script, const std::vector<Ring>& rings,
                        json& trace) {
    json checks = json::array();
    Diagram d = d0;
    int step = 0;
    for (auto& m : parse_moves(script)) {
        ++step;
        std::string label = "step " + std::to_string(step) + " " + to_string(m);
        json part;
        Diagram next;
        switch (m.type) {
            case Move::Type::CommuteCols:
            case Move::Type::SwitchCols:
            case Move::Type::CommuteRows:
            case Move::Type::SwitchRows: {
                next = apply_move(d, m);
                bool rows = m.type == Move::Type::CommuteRows || m.type == Move::Type::SwitchRows;
                part = commutation_checks(d, m.index, rows, rings, label);
                break;
            }
            case Move::Type::Stab: {
                auto st = stabilize(d, m.index, m.kind);
                next = st.after;
                part = stabilization_checks(st, rings, label);
                break;
            }
            case Move::Type::Destab: {
                next = destabilize(d, m.index);
                part = json::array();
                for (Ring ring : rings)
                    part.push_back(check_json(label + " tilde tables (" + ring_name(ring) + ")", stabilized_tables(next, d, ring)));
                break;
            }
        }
        for (auto& c : part) checks.push_back(c);
        trace.push_back({{"move", to_string(m)}, {"digest", digest(next)}, {"n", next.n}});
        d = next;
    }
    return checks;
}

int cmd_verify(const std::string& file, const std::string& suite, const std::string& ring_s, const std::string& script,
               const std::string& kind, int marking, const SignOptions& so) {
    auto d = load_diagram(file);
    auto rings = parse_rings(ring_s);
    json r = base_report("verify", &d);
    r["suite"] = suite;
    json checks;
    if (suite == "d2") {
        checks = verify_d2(d, rings, so);
    } else if (suite == "gradings") {
        checks = verify_gradings(d);
    } else if (suite == "signs") {
        checks = verify_signs(d, so);
    } else if (suite == "move") {
        if (script.empty()) throw InputError("the move suite needs --script FILE");
        json trace = json::array();
        checks = verify_move_script(d, read_text(script), rings, trace);
        r["trace"] = trace;
    } else if (suite == "stab") {
        StabKind k;
        try {
            k = parse_stab_kind(kind);
        } catch (const Error& e) {
            throw InputError(e.what());
        }
        auto st = stabilize(d, marking, k);
        r["stabilized_digest"] = digest(st.after);
        checks = stabilization_checks(st, rings, "stab " + to_string(k) + " " + std::to_string(marking));
    } else {
        throw InputError("unknown suite '" + suite + "' (d2, gradings, signs, move, stab)");
    }
    return verdict(r, checks);
}

// ---- scans, signs, moves ----

int cmd_scan(const TorsionScanOptions& opt, const std::string& log_file) {
    auto corpus = scan_corpus(opt);
    for (auto& d : corpus)
        if (generator_count(d) > generator_ceiling())
            throw InputError("diagram with " + std::to_string(generator_count(d)) + " generators exceeds the ceiling");
    auto res = scan_torsion(corpus, opt.seed);
    json r = base_report("scan-torsion", nullptr);
    r["options"] = {{"p", {opt.min_p, opt.max_p}}, {"n", {opt.min_n, opt.max_n}}, {"samples", opt.samples}, {"seed", opt.seed}};
    r["scanned"] = res.scanned;
    r["with_torsion"] = res.with_torsion;
    json found = json::array();
    for (auto& f : res.findings)
        if (f.torsion) found.push_back({{"digest", digest(f.d)}, {"diagram", diagram_json(f.d)}, {"table", f.table}});
    r["findings"] = found;
    if (!log_file.empty()) {
        std::ofstream f(log_file);
        if (!f) throw InputError("cannot write " + log_file);
        f << res.log;
        r["log"] = log_file;
    } else {
        r["log_text"] = res.log;
    }
    emit(r);
    return kOk;
}

int cmd_signs_export(const std::string& file, const std::string& out, const SignOptions& so) {
    auto d = load_diagram(file);
    auto S = load_signs(d, so);
    if (out.empty()) {
        std::cout << S->export_text();
    } else {
        std::ofstream f(out);
        if (!f) throw InputError("cannot write " + out);
        f << S->export_text();
    }
    return kOk;
}

int cmd_signs_import(const std::string& file, const std::string& sign_file, const SignOptions& so) {
    auto d = load_diagram(file);
    auto S = SignAssignment::import_text(GridShape::of(d), read_text(sign_file));
    auto sys = build_constraints(GridShape::of(d));
    auto rep = verify_axioms(sys, S);
    json r = base_report("signs-import", &d);
    CheckResult c;
    if (!rep.ok()) {
        c.ok = false;
        c.witness = std::to_string(rep.violations.size()) + " axiom instances violated";
    } else if (!so.no_cache) {
        auto path = cache_root(so) / (digest(d) + ".signs");
        write_cache(path, S);
        r["cached"] = path.string();
    }
    return verdict(r, json::array({check_json("sign axioms S1-S3", c)}));
}

int cmd_apply(const std::string& file, const std::string& script) {
    auto d = load_diagram(file);
    for (auto& m : parse_moves(read_text(script))) d = apply_move(d, m);
    std::cout << serialize(d);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grid diagrams for links in lens spaces: gradings, homology, signs and moves"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    SignOptions so;
    app.add_option("--cache", so.cache_dir, "sign-assignment cache directory");
    app.add_flag("--no-cache", so.no_cache, "do not read or write the sign cache");
    app.add_option("--signs", so.file, "sign assignment file (key -> +1|-1 lines)");

    std::string file, gen, flavor = "tilde", ring = "f2", window, suite, script, kind = "X:SW", out, sign_file, log_file;
    std::string vring = "both";
    bool xo = false;
    std::vector<long long> shift;
    std::size_t limit = 100;
    int marking = 0;
    TorsionScanOptions scan;

    auto* validate_cmd = app.add_subcommand("validate", "check a diagram file");
    validate_cmd->add_option("file", file)->required();
    auto* info_cmd = app.add_subcommand("info", "counts, components and x_O");
    info_cmd->add_option("file", file)->required();
    auto* gens_cmd = app.add_subcommand("generators", "list generators with gradings");
    gens_cmd->add_option("file", file)->required();
    gens_cmd->add_option("--limit", limit, "maximum number listed");
    auto* grading_cmd = app.add_subcommand("grading", "(S, M, A) of one generator");
    grading_cmd->add_option("file", file)->required();
    grading_cmd->add_option("--gen", gen, "sigma/a, e.g. 1,2,0/4,0,3");
    grading_cmd->add_flag("--xo", xo, "use the generator x_O");
    grading_cmd->add_option("--shift", shift, "recompute after moving the fundamental domain by dx dy")->expected(2);
    auto* hom_cmd = app.add_subcommand("homology", "homology table as JSON");
    hom_cmd->add_option("file", file)->required();
    hom_cmd->add_option("--flavor", flavor, "tilde, hat or minus");
    hom_cmd->add_option("--ring", ring, "f2 or z");
    hom_cmd->add_option("--window", window, "A_lo,A_hi,M_lo,M_hi (required for hat and minus)");
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd->add_option("file", file)->required();
    verify_cmd->add_option("suite", suite, "d2, gradings, signs, move or stab")->required();
    verify_cmd->add_option("--ring", vring, "f2, z or both");
    verify_cmd->add_option("--script", script, "move script for the move suite");
    verify_cmd->add_option("--kind", kind, "stabilization kind for the stab suite");
    verify_cmd->add_option("--marking", marking, "marking index for the stab suite");
    auto* scan_cmd = app.add_subcommand("scan-torsion", "look for torsion in sign-refined tilde homology");
    scan_cmd->add_option("--p-min", scan.min_p);
    scan_cmd->add_option("--p-max", scan.max_p);
    scan_cmd->add_option("--n-min", scan.min_n);
    scan_cmd->add_option("--n-max", scan.max_n);
    scan_cmd->add_option("--samples", scan.samples, "random diagrams per n (0: exhaustive, n <= 2)");
    scan_cmd->add_option("--seed", scan.seed);
    scan_cmd->add_option("--log", log_file, "write the text log here");
    auto* signs_cmd = app.add_subcommand("signs", "export or import sign assignments");
    signs_cmd->require_subcommand(1);
    auto* export_cmd = signs_cmd->add_subcommand("export", "print the assignment for a diagram");
    export_cmd->add_option("file", file)->required();
    export_cmd->add_option("--out", out);
    auto* import_cmd = signs_cmd->add_subcommand("import", "check a sign file and store it in the cache");
    import_cmd->add_option("file", file)->required();
    import_cmd->add_option("signfile", sign_file)->required();
    auto* apply_cmd = app.add_subcommand("apply", "apply a move script and print the result");
    apply_cmd->add_option("file", file)->required();
    apply_cmd->add_option("script", script)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInput;
    }

    try {
        if (*validate_cmd) return cmd_validate(file);
        if (*info_cmd) return cmd_info(file);
        if (*gens_cmd) return cmd_generators(file, limit);
        if (*grading_cmd) return cmd_grading(file, gen, xo, shift);
        if (*hom_cmd) return cmd_homology(file, flavor, ring, window, so);
        if (*verify_cmd) return cmd_verify(file, suite, vring, script, kind, marking, so);
        if (*scan_cmd) return cmd_scan(scan, log_file);
        if (*export_cmd) return cmd_signs_export(file, out, so);
        if (*import_cmd) return cmd_signs_import(file, sign_file, so);
        if (*apply_cmd) return cmd_apply(file, script);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }
    return kInput;
}
