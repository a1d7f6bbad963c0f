#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <regex>
#include <sstream>

#include "tensorhn/compression.hpp"
#include "tensorhn/report.hpp"

using namespace thn;

namespace {

constexpr uint64_t kDefaultSeed = 20240917;

struct Options {
    uint64_t seed = kDefaultSeed;
    std::string field;
    std::string rho = "1/2";
    std::string theta;
    size_t mode = 3;
    size_t p = 0;
    size_t N = 0;
    std::vector<std::string> inputs;
    std::string extraction_out;
    std::vector<size_t> weights;
    std::vector<size_t> pair{1, 2};
    size_t lab_p = 0, lab_q = 0, lab_n = 10;
    std::vector<std::string> terms;
};

std::optional<FieldSpec> field_override(const Options& o) {
    if (o.field.empty()) return std::nullopt;
    return parse_field_flag(o.field);
}

AnyTensor load_tensor(const std::string& path, const Options& o) {
    return tensor_from_json(read_json_file(path), field_override(o));
}

SupportSet load_support(const Options& o) { return support_from_json(read_json_file(o.inputs.at(0))); }

void write_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("--extraction-out", "cannot write " + path);
    out << j.dump(2) << "\n";
}

Json cmd_hn(const Options& o) { return report_hn(load_tensor(o.inputs.at(0), o), o.mode, o.seed); }

Json cmd_zeta(const Options& o) {
    return report_zeta(load_tensor(o.inputs.at(0), o), o.mode, parse_rho(o.rho), o.seed);
}

Json cmd_acr(const Options& o) { return report_acr(load_tensor(o.inputs.at(0), o), o.mode, o.seed); }

Json cmd_semistable(const Options& o) { return report_semistable(load_tensor(o.inputs.at(0), o), o.mode, o.seed); }

Json cmd_gauge(const Options& o) { return report_gauge(load_tensor(o.inputs.at(0), o), o.mode); }

Json cmd_cr(const Options& o) { return report_cr(load_tensor(o.inputs.at(0), o), o.mode, o.seed); }

Json cmd_balance(const Options& o) { return report_balance(load_support(o)); }

Json cmd_entropy(const Options& o) {
    auto phi = load_support(o);
    if (o.theta.empty()) return report_entropy(phi, parse_rho(o.rho));
    std::vector<Rational> theta;
    std::stringstream ss(o.theta);
    std::string part;
    while (std::getline(ss, part, ',')) theta.push_back(parse_fraction(part, "--theta"));
    return report_entropy(phi, theta);
}

Json cmd_shift(const Options& o) { return report_shift(load_tensor(o.inputs.at(0), o), o.seed); }

Json cmd_compress(const Options& o) {
    auto T = load_tensor(o.inputs.at(0), o);
    if (o.N > 0) {
        auto r = report_power_extract(T, parse_rho(o.rho), o.N, o.seed);
        if (!o.extraction_out.empty()) write_json(o.extraction_out, r["extraction"]);
        return r;
    }
    auto r = report_compress(T, o.p, o.seed);
    if (!o.extraction_out.empty()) {
        if (r["results"].size() != 1) throw InputError("--extraction-out", "choose a single -p to write an extraction");
        write_json(o.extraction_out, r["results"][0]["extraction"]);
    }
    return r;
}

Json cmd_verify(const Options& o) {
    if (o.inputs.size() != 2) throw InputError("", "verify needs an extraction file and a tensor file");
    Rational rho = parse_rho(o.rho);
    auto ej = read_json_file(o.inputs[0]);
    return report_verify(load_tensor(o.inputs[1], o), ej, rho);
}

Json cmd_lab_four_cycle(const Options& o) { return report_four_cycle(o.weights, field_override(o), o.seed); }

Json cmd_lab_tpq(const Options& o) { return report_tpq(o.lab_p, o.lab_q, o.N, o.seed); }

Json cmd_lab_gap(const Options& o) {
    if (o.lab_n > 64) throw InputError("-n", "n must be at most 64");
    return report_gap(unsigned(o.lab_n));
}

Json cmd_lab_subrank(const Options& o) {
    std::vector<std::tuple<unsigned, unsigned, std::string>> terms;
    for (const auto& t : o.terms) {
        static const std::regex re(R"((\d+),(\d+),(\d+))");
        std::smatch m;
        if (!std::regex_match(t, m, re)) throw InputError("--term", "expected i,j,c for c a^i b^j, got '" + t + "'");
        terms.emplace_back(std::stoul(m[1].str()), std::stoul(m[2].str()), m[3].str());
    }
    return report_subrank(terms);
}

Json cmd_lab_mlcr(const Options& o) {
    if (o.pair.size() != 2) throw InputError("--pair", "expected two modes");
    return report_mlcr(load_tensor(o.inputs.at(0), o), o.pair[0], o.pair[1], o.seed);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Harder-Narasimhan tools for tensors"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--seed", o.seed, "random seed");
    app.add_option("--field", o.field, "reinterpret entries: gf:P, gf:P^E or rational");

    std::map<CLI::App*, std::function<Json(const Options&)>> handlers;
    auto verb = [&](const char* name, const char* help, auto fn) {
        auto* c = app.add_subcommand(name, help);
        handlers[c] = fn;
        return c;
    };
    auto tensor_input = [&](CLI::App* c) { c->add_option("tensor", o.inputs, "tensor JSON")->required()->expected(1); };
    auto mode_opt = [&](CLI::App* c) { c->add_option("--mode", o.mode, "edge mode (weight zero), 1-based"); };
    auto rho_opt = [&](CLI::App* c) { c->add_option("--rho", o.rho, "exact fraction a/b"); };

    auto* hn = verb("hn", "Harder-Narasimhan filtration", cmd_hn);
    tensor_input(hn);
    mode_opt(hn);
    auto* zeta = verb("zeta", "edge quantum functional", cmd_zeta);
    tensor_input(zeta);
    mode_opt(zeta);
    rho_opt(zeta);
    auto* ac = verb("acr", "asymptotic commutative rank", cmd_acr);
    tensor_input(ac);
    mode_opt(ac);
    auto* ss = verb("semistable", "semistability test with witness", cmd_semistable);
    tensor_input(ss);
    mode_opt(ss);
    auto* bal = verb("balance", "balance test and block decomposition of a 2-mode support", cmd_balance);
    bal->add_option("support", o.inputs, "support JSON")->required()->expected(1);
    auto* ent = verb("entropy", "weighted support entropy", cmd_entropy);
    ent->add_option("support", o.inputs, "support JSON")->required()->expected(1);
    rho_opt(ent);
    ent->add_option("--theta", o.theta, "comma-separated mode weights for supports of any order");
    auto* cmp = verb("compress", "matrix multiplication restrictions", cmd_compress);
    tensor_input(cmp);
    cmp->add_option("-p", o.p, "single block count");
    cmp->add_option("-N", o.N, "tensor power for the power extraction");
    rho_opt(cmp);
    cmp->add_option("--extraction-out", o.extraction_out, "write the extraction JSON here");
    auto* sh = verb("shift", "basis shift", cmd_shift);
    tensor_input(sh);
    auto* vf = verb("verify", "re-check an extraction against a tensor", cmd_verify);
    vf->add_option("files", o.inputs, "extraction JSON, tensor JSON")->required()->expected(2);
    rho_opt(vf);
    auto* ga = verb("gauge", "flattening rank along one mode", cmd_gauge);
    tensor_input(ga);
    mode_opt(ga);
    auto* cr = verb("cr", "commutative rank with the noncommutative sandwich", cmd_cr);
    tensor_input(cr);
    mode_opt(cr);

    auto* lab = app.add_subcommand("lab", "higher-mode computations");
    lab->require_subcommand(1);
    auto lab_verb = [&](const char* name, const char* help, auto fn) {
        auto* c = lab->add_subcommand(name, help);
        handlers[c] = fn;
        return c;
    };
    lab_verb("four-cycle", "CR_{1,2} of a 4-cycle graph tensor", cmd_lab_four_cycle)
        ->add_option("--weights", o.weights, "n13,n23,n24,n14")
        ->delimiter(',')
        ->required();
    auto* tpq = lab_verb("tpq", "separation numbers of T_{p,q}", cmd_lab_tpq);
    tpq->add_option("-p", o.lab_p)->required();
    tpq->add_option("-q", o.lab_q)->required();
    tpq->add_option("-N", o.N, "also compare pencil ranks at this power");
    lab_verb("gap", "monomial dominance gap", cmd_lab_gap)->add_option("-n", o.lab_n);
    lab_verb("subrank", "two-point subrank of a polynomial in N[a,b]", cmd_lab_subrank)
        ->add_option("--term", o.terms, "i,j,c for c a^i b^j")
        ->required();
    auto* ml = lab_verb("mlcr", "multilinear commutative rank of a d-mode tensor", cmd_lab_mlcr);
    ml->add_option("tensor", o.inputs)->required()->expected(1);
    ml->add_option("--pair", o.pair, "two modes, 1-based")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    CLI::App* chosen = nullptr;
    std::string name;
    for (auto& [c, fn] : handlers)
        if (c->parsed()) {
            chosen = c;
            name = c->get_parent() == lab ? "lab " + c->get_name() : c->get_name();
        }

    Json report{{"schema", "v1"}, {"command", name}, {"seed", o.seed}};
    auto fail = [&](int code, const std::string& path, const std::string& msg) {
        report["error"] = {{"path", path}, {"message", msg}};
        std::cout << report.dump(2) << "\n";
        std::cerr << "error: " << msg << "\n";
        return code;
    };
    try {
        report["result"] = handlers.at(chosen)(o);
    } catch (const VerificationFailure& e) {
        report["result"] = e.result;
        std::cout << report.dump(2) << "\n";
        std::cerr << "verification failed: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        return fail(2, e.path, e.what());
    } catch (const InstabilityError& e) {
        return fail(2, "", e.what());
    } catch (const std::invalid_argument& e) {
        return fail(2, "", e.what());
    } catch (const FieldError& e) {
        return fail(2, "", e.what());
    } catch (const std::exception& e) {
        return fail(1, "", e.what());
    }
    std::cout << report.dump(2) << "\n";
    return 0;
}
