#include "vkh/cli.hpp"

#include "vkh/cube.hpp"
#include "vkh/errors.hpp"
#include "vkh/half.hpp"
#include "vkh/homology.hpp"
#include "vkh/invariants.hpp"
#include "vkh/pd.hpp"
#include "vkh/state_sum.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace vkh {

int resolve_jobs(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("VKH_JOBS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<int>(v);
        throw InputError(std::string("VKH_JOBS must be a positive integer, got '") + env + "'");
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

namespace {

std::string read_input(const Request& req) {
    if (!req.input.empty()) return req.input;
    if (req.input_path.empty()) throw InputError("no input: pass --input \"PD[...]\" or a file path");
    if (req.input_path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(req.input_path);
    if (!f) throw InputError("cannot read " + req.input_path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void emit_poly(std::ostream& out, const Request& req, const std::string& name, const LaurentPoly& p) {
    if (req.format == "json") {
        nlohmann::json j{{"invariant", name}, {"polynomial", p.to_json()}, {"text", p.to_text()}};
        out << j.dump() << '\n';
    } else {
        out << p.to_text() << '\n';
    }
}

void emit_table(std::ostream& out, const Request& req, const HomologyTable& t) {
    if (req.format == "json")
        out << t.to_json().dump() << '\n';
    else
        out << t.to_text();
}

std::string set_text(const ComponentSet& s) {
    std::string out = "{";
    for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k]);
    return out + "}";
}

// Small end-to-end checks on built-in diagrams.
int selftest(std::ostream& out, int jobs) {
    struct Case {
        const char* name;
        const char* pd;
    };
    const Case cases[] = {
        {"virtual trefoil", "PD[X[4,3,1,2],X[1,4,2,3]]"},
        {"two-crossing virtual unknot", "PD[X[1,3,2,4],X[4,3,1,2]]"},
        {"virtual Hopf link", "PD[X[1,4,2,5],X[2,1,3,3],X[5,4,6,6]]"},
        {"two-component virtual link", "PD[X[3,4,4,1],X[1,6,2,5],X[2,7,3,6],X[7,5,8,8]]"},
        {"trefoil", "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]"},
    };
    int failures = 0;
    auto check = [&](const std::string& what, bool ok) {
        out << (ok ? "ok    " : "FAIL  ") << what << '\n';
        if (!ok) ++failures;
    };
    for (const Case& c : cases) {
        const Diagram d = parse_diagram(c.pd);
        for (Algebra alg : {Algebra::khovanov, Algebra::lee}) {
            const BigradedComplex cx = build_complex(d, alg, {}, jobs);
            check(std::string(c.name) + ": d^2 = 0 (" + (alg == Algebra::khovanov ? "khovanov" : "lee") + ")",
                  !find_nonzero_square(cx));
        }
        HomologyOptions ho;
        ho.jobs = jobs;
        const LaurentPoly bracket = kauffman_bracket(d, jobs);
        check(std::string(c.name) + ": bracket = graded Euler characteristic",
              graded_euler(bracket_homology(d, ho)) == bracket);
        const int lt2 = lambda_tilde2(d, ParityScheme::multi_core);
        check(std::string(c.name) + ": unoriented Jones = (-1)^lambda~ chi_q(ukh)",
              unoriented_jones(d, ParityScheme::multi_core, jobs) == graded_euler(kh_unoriented(d, ho)).scaled(i_pow(lt2), 0));
    }
    out << (failures ? "selftest failed\n" : "selftest passed\n");
    return failures ? 2 : 0;
}

int dispatch(const Request& req, std::ostream& out, std::ostream& err) {
    if (req.format != "text" && req.format != "json") throw InputError("unknown format '" + req.format + "'");
    const Ring ring = parse_ring(req.ring);
    const ParityScheme scheme = parse_scheme(req.scheme);
    const int jobs = req.jobs > 0 ? req.jobs : 1;
    const std::string& cmd = req.subcommand;
    if (cmd == "selftest") return selftest(out, jobs);

    static const char* known[] = {"bracket", "jones", "ujones", "kh", "ukh", "lee", "decompose", "invariants"};
    if (std::find(std::begin(known), std::end(known), cmd) == std::end(known))
        throw InputError("unknown subcommand '" + cmd + "'");

    const Diagram d = parse_diagram(read_input(req));
    if (req.debug_dump) {
        const Algebra alg = cmd == "lee" ? Algebra::lee : Algebra::khovanov;
        dump_cube(err, d, build_complex(d, alg, {}, jobs));
    }
    HomologyOptions ho;
    ho.ring = ring;
    ho.jobs = jobs;
    ho.verify = true;
    ho.incorporate_sign = req.incorporate_sign;

    if (cmd == "bracket") {
        emit_poly(out, req, "bracket", kauffman_bracket(d, jobs));
    } else if (cmd == "jones") {
        emit_poly(out, req, "jones", jones(d, jobs));
    } else if (cmd == "ujones") {
        emit_poly(out, req, "ujones-" + scheme_name(scheme), unoriented_jones(d, scheme, jobs));
    } else if (cmd == "kh") {
        emit_table(out, req, kh_oriented(d, ho));
    } else if (cmd == "ukh") {
        emit_table(out, req, kh_unoriented(d, ho));
    } else if (cmd == "lee") {
        emit_table(out, req, lee_unoriented(d, ho));
    } else if (cmd == "decompose") {
        const MultiCoreDecomposition dec = multi_core(d);
        if (req.format == "json") {
            out << nlohmann::json{{"cores", dec.cores}, {"mantle", dec.mantle}}.dump() << '\n';
        } else {
            for (std::size_t k = 0; k < dec.cores.size(); ++k)
                out << "core " << k + 1 << ": " << set_text(dec.cores[k]) << '\n';
            out << "mantle: " << set_text(dec.mantle) << '\n';
        }
    } else if (cmd == "invariants") {
        const nlohmann::json j = invariants_report(d, scheme);
        if (req.format == "json") {
            out << j.dump() << '\n';
        } else {
            const CrossingCounts c = crossing_counts(d);
            out << "components: " << d.num_components() << '\n';
            out << "crossings: s+=" << c.s_plus << " s-=" << c.s_minus << " m=" << c.m << " n+=" << c.n_plus
                << " n-=" << c.n_minus << '\n';
            out << "component parities: " << j["parities"]["components"].dump() << '\n';
            out << "pair parities: " << j["parities"]["pairs"].dump() << '\n';
            out << "link parity: " << j["parities"]["link"].get<int>() << '\n';
            const LinkingMatrix lk = linking_matrix(d);
            out << "linking numbers:";
            for (int a = 0; a < d.num_components(); ++a)
                for (int b = a + 1; b < d.num_components(); ++b)
                    out << " Lk(" << a << ',' << b << ")=" << format_half(lk.lk2[a][b]);
            out << '\n';
            const MultiCoreDecomposition dec = multi_core(d);
            out << "cores:";
            for (const auto& core : dec.cores) out << ' ' << set_text(core);
            out << "\nmantle: " << set_text(dec.mantle) << '\n';
            if (scheme != ParityScheme::none) {
                const int lt = j["lambda_tilde"].get<int>();
                out << "lambda~ (" << scheme_name(scheme) << "): " << format_half(lt) << '\n';
                out << "l~: " << format_half(l_tilde2(lt)) << '\n';
            }
        }
    }
    return 0;
}

} // namespace

int run(const Request& req, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(req, out, err);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const ConsistencyError& e) {
        err << "internal consistency failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace vkh
