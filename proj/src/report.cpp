#include "tensorhn/report.hpp"

#include <cmath>
#include <regex>

#include "tensorhn/compression.hpp"
#include "tensorhn/lab.hpp"

namespace thn {

namespace {

std::string frac_str(const Rational& r) { return RationalField().to_string(r); }

Json real_json(const Real& v) { return Json{{"decimal", v.str(30)}, {"approx", v.convert_to<double>()}}; }

Json dims_json(const DimData& d) {
    Json a = Json::array();
    for (const auto& x : d) a.push_back({x.n, x.m});
    return a;
}

Json slopes_json(const std::vector<Slope>& s) {
    Json a = Json::array();
    for (const auto& x : s) a.push_back(x.str());
    return a;
}

Json one_based(const std::vector<size_t>& v) {
    Json a = Json::array();
    for (size_t x : v) a.push_back(x + 1);
    return a;
}

Json cr_json(const CRResult& r) {
    Json j{{"value", r.value}, {"method", to_string(r.method)}};
    if (r.method == RankMethod::monte_carlo || r.trials) {
        j["trials"] = r.trials;
        j["field_size"] = r.field_size;
    }
    return j;
}

Json deficiency_method_json(const DeficiencyMethod& m) {
    return Json{{"blowup", m.blowup}, {"draws", m.draws}, {"field_size", m.field_size}, {"exhaustive", m.exhaustive}};
}

template <class F>
Json subspace_json(const Subspace<F>& S) {
    return Json{{"dim", S.dim()}, {"basis", matrix_to_json(S.basis())}};
}

template <class F>
void require_order3(const Tensor<F>& T) {
    if (T.order() != 3) throw InputError("/dims", "this command needs a 3-mode tensor");
}

void check_mode(size_t mode) {
    if (mode < 1 || mode > 3) throw InputError("--mode", "mode must be 1, 2 or 3");
}

Json blocks_json(const BlockDecomposition& b) {
    Json a = Json::array();
    auto ratios = b.ratios();
    for (size_t u = 0; u < b.blocks.size(); ++u)
        a.push_back({{"J", one_based(b.blocks[u].J)}, {"K", one_based(b.blocks[u].K)}, {"ratio", ratios[u].str()}});
    return a;
}

Json distribution_json(const Distribution& d) {
    Json a = Json::array();
    for (size_t i = 0; i < d.points.size(); ++i)
        if (d.weights[i] > 0) a.push_back({{"point", one_based(d.points[i])}, {"weight", double(d.weights[i])}});
    return a;
}

template <class F>
Json extraction_json(const F& f, size_t N, size_t E, size_t H, size_t L, const RestrictionTriple<F>& maps) {
    Extraction<F> ex;
    ex.N = N;
    ex.E = E;
    ex.H = H;
    ex.L = L;
    ex.maps = maps;
    return extraction_to_json(f, ex);
}

template <class F>
Json verify_against(const Tensor<F>& T, const Json& ej, const Rational& rho) {
    require_order3(T);
    auto spec = field_spec_from_json(ej.contains("field") ? ej["field"] : Json(), "/field");
    F f = T.field();
    Tensor<F> source = T;
    if constexpr (std::is_same_v<F, FiniteField>) {
        if (spec.kind == FieldSpec::rational) throw InputError("/field", "extraction field does not match the tensor");
        f = make_finite_field(spec);
        if (f != T.field()) {
            try {
                source = base_change(T, FieldEmbedding(T.field(), f));
            } catch (const FieldError& e) {
                throw InputError("/field", e.what());
            }
        }
    } else {
        if (spec.kind != FieldSpec::rational) throw InputError("/field", "extraction field does not match the tensor");
    }
    auto ex = extraction_from_json(f, ej);
    std::optional<Real> v;
    std::string why;
    try {
        v = value_lower_bound(source, rho, ex);
    } catch (const std::exception& e) {
        why = e.what();
    }
    Json j{{"rho", frac_str(rho)}, {"N", ex.N}, {"target", {ex.E, ex.H, ex.L}}, {"verified", bool(v)}};
    if (!v) {
        j["reason"] = why.empty() ? "maps do not restrict the tensor power onto the target" : why;
        throw VerificationFailure("extraction rejected", j);
    }
    j["bound"] = real_json(*v);
    return j;
}

}  // namespace

Rational parse_fraction(const std::string& s, const std::string& flag) {
    static const std::regex re(R"(\s*(\d+)\s*(/\s*(\d+))?\s*)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw InputError(flag, "expected an exact fraction a/b, got '" + s + "'");
    BigInt num(m[1].str()), den = m[3].matched ? BigInt(m[3].str()) : BigInt(1);
    if (den == 0) throw InputError(flag, "zero denominator");
    return Rational(num, den);
}

Rational parse_rho(const std::string& s) {
    Rational r = parse_fraction(s, "--rho");
    if (r > 1) throw InputError("--rho", "rho must lie in [0,1]");
    return r;
}

Json report_hn(const AnyTensor& any, size_t mode, uint64_t seed) {
    check_mode(mode);
    Rng rng(seed);
    return std::visit(
        [&](const auto& T) {
            require_order3(T);
            auto rep = as_rep(T, mode - 1);
            auto hn = hn_filtration(rep, rng);
            Json steps = Json::array();
            for (const auto& st : hn.steps)
                steps.push_back({{"dims", {st.dims.n, st.dims.m}},
                                 {"slope", st.slope.str()},
                                 {"certificate", st.certificate},
                                 {"U", subspace_json(st.U)},
                                 {"V", subspace_json(st.V)}});
            return Json{{"field", field_to_json(T.field())},
                        {"mode", mode},
                        {"dim_data", dims_json(hn.dim_data())},
                        {"slopes", slopes_json(hn.slopes())},
                        {"steps", steps}};
        },
        any);
}

Json report_zeta(const AnyTensor& any, size_t mode, const Rational& rho, uint64_t seed) {
    check_mode(mode);
    if (rho < 0 || rho > 1) throw InputError("--rho", "rho must lie in [0,1]");
    Rng rng(seed);
    return std::visit(
        [&](const auto& T) {
            require_order3(T);
            auto v = zeta_edge(T, {mode, rho}, rng);
            return Json{{"rho", frac_str(rho)},
                        {"mode", mode},
                        {"value", real_json(v.value)},
                        {"exact_form", dims_json(v.exact_form)},
                        {"slopes", slopes_json(v.slopes)},
                        {"trimmed_infinite", {v.trimmed_infinite.n, v.trimmed_infinite.m}},
                        {"trimmed_zero", {v.trimmed_zero.n, v.trimmed_zero.m}}};
        },
        any);
}

Json report_acr(const AnyTensor& any, size_t mode, uint64_t seed) {
    check_mode(mode);
    Rng rng(seed);
    return std::visit(
        [&](const auto& T) {
            require_order3(T);
            auto a = acr(T, mode, rng);
            return Json{{"mode", mode},
                        {"value", real_json(a.value)},
                        {"argmin_rho", real_json(a.argmin)},
                        {"exact_form", dims_json(a.exact_form)}};
        },
        any);
}

Json report_semistable(const AnyTensor& any, size_t mode, uint64_t seed) {
    check_mode(mode);
    Rng rng(seed);
    return std::visit(
        [&](const auto& T) {
            require_order3(T);
            auto rep = as_rep(T, mode - 1);
            auto c = is_semistable(rep, rng);
            Json j{{"mode", mode},
                   {"semistable", c.semistable},
                   {"deficiency", c.deficiency},
                   {"method", deficiency_method_json(c.method)}};
            if (c.witness) {
                j["witness"] = subspace_json(*c.witness);
                j["image_dim"] = image_of(rep, *c.witness).dim();
                j["witness_checked"] = check_witness(rep, *c.witness);
            }
            return j;
        },
        any);
}

Json report_gauge(const AnyTensor& any, size_t mode) {
    return std::visit(
        [&](const auto& T) {
            if (mode < 1 || mode > T.order()) throw InputError("--mode", "mode out of range");
            return Json{{"mode", mode}, {"value", gauge_point(T, mode)}, {"method", "exact"}};
        },
        any);
}

Json report_cr(const AnyTensor& any, size_t mode, uint64_t seed) {
    check_mode(mode);
    Rng rng(seed);
    return std::visit(
        [&](const auto& T) {
            require_order3(T);
            auto s = cr_ncr_sandwich(T, mode, rng);
            return Json{{"mode", mode}, {"cr", cr_json(s.cr)}, {"ncr", s.ncr}, {"sandwich_holds", s.holds}};
        },
        any);
}

Json report_shift(const AnyTensor& any, uint64_t seed) {
    Rng rng(seed);
    return std::visit(
        [&](const auto& T) {
            require_order3(T);
            auto s = basis_shift(T, rng);
            return Json{{"lambdas", s.lambdas},
                        {"field", field_to_json(s.source.field())},
                        {"extended", s.extended},
                        {"attempts", s.attempts},
                        {"verified", verify_shift(s)},
                        {"A", matrix_to_json(s.A)},
                        {"B", matrix_to_json(s.B)},
                        {"L", matrix_to_json(s.L)}};
        },
        any);
}

Json report_compress(const AnyTensor& any, size_t p, uint64_t seed) {
    Rng rng(seed);
    return std::visit(
        [&](const auto& T) {
            require_order3(T);
            using F = std::decay_t<decltype(T.field())>;
            std::vector<CompressResult<F>> all;
            if (p > 0)
                all.push_back(compress_semistable(T, p, rng));
            else
                all = compress_all(T, rng);
            Json list = Json::array();
            for (const auto& r : all) {
                const auto& K = r.source.field();
                list.push_back({{"p", r.p},
                                {"lambda", r.lambda},
                                {"bound", r.bound},
                                {"target", {r.E, r.H, r.L}},
                                {"swapped", r.swapped},
                                {"extended", r.extended},
                                {"verified", verify_restriction(r.source, r.maps, make_matmul(K, r.E, r.H, r.L))},
                                {"extraction", extraction_json(K, 1, r.E, r.H, r.L, r.maps)}});
            }
            return Json{{"results", list}};
        },
        any);
}

Json report_power_extract(const AnyTensor& any, const Rational& rho, size_t N, uint64_t seed) {
    if (rho < 0 || rho > 1) throw InputError("--rho", "rho must lie in [0,1]");
    if (N == 0) throw InputError("-N", "N must be positive");
    Rng rng(seed);
    return std::visit(
        [&](const auto& T) {
            require_order3(T);
            auto e = power_extract(T, rho, N, rng);
            return Json{{"rho", frac_str(rho)},
                        {"N", N},
                        {"bound", real_json(e.bound)},
                        {"power_data", dims_json(e.power_data)},
                        {"block", e.block + 1},
                        {"hn_consistent", e.hn_consistent},
                        {"identity", e.identity},
                        {"extraction", extraction_to_json(e.source.field(), e.extraction)}};
        },
        any);
}

Json report_verify(const AnyTensor& any, const Json& extraction, const Rational& rho) {
    return std::visit([&](const auto& T) { return verify_against(T, extraction, rho); }, any);
}

Json report_balance(const SupportSet& phi) {
    if (phi.order() != 2) throw InputError("/sizes", "balance needs a 2-mode support");
    if (phi.empty()) throw InputError("/points", "empty support");
    auto r = is_balanced(phi);
    Json j{{"balanced", r.balanced}, {"scale", r.scale}, {"flow", r.flow}, {"certificate_ok", check_balance(phi, r)}};
    if (!r.balanced) {
        j["violating"] = one_based(r.violating);
        j["neighbours"] = one_based(r.neighbours);
    }
    // Blocks live on the trimmed support; indices are mapped back.
    std::vector<std::vector<size_t>> kept;
    auto trimmed = trim(phi, &kept);
    auto b = block_decomposition(trimmed);
    bool ok = verify_block_decomposition(trimmed, b);
    for (auto& blk : b.blocks) {
        for (auto& x : blk.J) x = kept[0][x];
        for (auto& x : blk.K) x = kept[1][x];
    }
    j["blocks"] = blocks_json(b);
    j["blocks_verified"] = ok;
    return j;
}

Json report_entropy(const SupportSet& phi, const Rational& rho) {
    if (phi.empty()) throw InputError("/points", "empty support");
    if (phi.order() != 2) throw InputError("--theta", "supports with more than two modes need --theta");
    if (rho < 0 || rho > 1) throw InputError("--rho", "rho must lie in [0,1]");
    auto e = weighted_entropy_2d(phi, rho);
    return Json{{"rho", frac_str(rho)},
                {"value_bits", double(e.value)},
                {"power", double(std::exp2(e.value))},
                {"method", "block formula"},
                {"blocks", blocks_json(e.blocks)},
                {"maximizer", distribution_json(e.maximizer)}};
}

Json report_entropy(const SupportSet& phi, const std::vector<Rational>& theta) {
    if (phi.empty()) throw InputError("/points", "empty support");
    if (theta.size() != phi.order()) throw InputError("--theta", "one weight per mode is required");
    Rational total = 0;
    std::vector<long double> w;
    Json tj = Json::array();
    for (const auto& t : theta) {
        if (t < 0) throw InputError("--theta", "weights must be nonnegative");
        total += t;
        w.push_back(static_cast<long double>(t));
        tj.push_back(frac_str(t));
    }
    if (total != 1) throw InputError("--theta", "weights must sum to 1");
    auto e = weighted_entropy_general(phi, w);
    return Json{{"theta", tj},
                {"value_bits", double(e.value)},
                {"upper_bits", double(e.upper)},
                {"kkt_gap", double(e.kkt_gap)},
                {"iterations", e.iterations},
                {"converged", e.converged},
                {"method", "iterative"},
                {"maximizer", distribution_json(e.maximizer)}};
}

Json report_four_cycle(const std::vector<size_t>& w, const std::optional<FieldSpec>& field, uint64_t seed) {
    if (w.size() != 4) throw InputError("--weights", "expected n13,n23,n24,n14");
    for (size_t x : w)
        if (x == 0) throw InputError("--weights", "weights must be positive");
    if (field && field->kind == FieldSpec::rational) throw InputError("--field", "four-cycle runs over a finite field");
    Rng rng(seed);
    auto f = field ? make_finite_field(*field) : FiniteField::prime(1009);
    auto T = graph_tensor(f, four_cycle(w[0], w[1], w[2], w[3]));
    return Json{{"weights", w},
                {"dims", T.dims()},
                {"support_size", T.nnz()},
                {"cr12", cr_json(multilinear_cr(T, 0, 1, rng))},
                {"formula", four_cycle_cr(w[0], w[1], w[2], w[3])}};
}

Json report_tpq(size_t p, size_t q, size_t N, uint64_t seed) {
    if (p == 0 || q == 0) throw InputError("-p/-q", "p and q must be positive");
    Rng rng(seed);
    auto t = tpq_numbers(p, q, rng);
    Json j{{"p", t.p},
           {"q", t.q},
           {"acr12", real_json(t.acr12)},
           {"acr12_argmin_rho", real_json(t.acr12_argmin)},
           {"acr34", real_json(t.acr34)},
           {"acr34_closed_form", real_json(t.acr34_closed)},
           {"acr34_exact_form", dims_json(t.acr34_data)},
           {"acr34_integer", t.acr34_integer ? Json(*t.acr34_integer) : Json(nullptr)},
           {"acr34_agrees", t.acr34_agrees},
           {"separated", t.separated}};
    if (N > 0) {
        auto e = tpq_pencil_evidence(p, q, N, rng);
        j["pencil"] = {{"N", e.N}, {"direct", cr_json(e.direct)}, {"predicted", e.predicted}, {"exact_prediction", e.exact_prediction}};
    }
    return j;
}

Json report_gap(unsigned n) {
    if (n > 64) throw InputError("-n", "n must be at most 64");
    auto g = monomial_dominance_gap(n);
    return Json{{"n", g.n},
                {"subrank", g.subrank.str()},
                {"best_monomial", g.best_monomial.str()},
                {"argmax_k", g.argmax},
                {"below_bound", g.below_bound},
                {"gap", g.gap}};
}

Json report_subrank(const std::vector<std::tuple<unsigned, unsigned, std::string>>& terms) {
    NNPoly2 poly;
    for (const auto& [i, j, c] : terms) {
        static const std::regex digits(R"(\d+)");
        if (!std::regex_match(c, digits)) throw InputError("--term", "coefficients must be nonnegative integers");
        poly = poly + NNPoly2::monomial(i, j, BigInt(c));
    }
    return Json{{"at_1_2", poly.eval(1, 2).str()}, {"at_2_1", poly.eval(2, 1).str()}, {"subrank", two_point_subrank(poly).str()}};
}

Json report_mlcr(const AnyTensor& any, size_t a, size_t b, uint64_t seed) {
    Rng rng(seed);
    return std::visit(
        [&](const auto& T) {
            if (T.order() < 3) throw InputError("/dims", "need at least three modes");
            if (a < 1 || b < 1 || a > T.order() || b > T.order() || a == b)
                throw InputError("--pair", "need two distinct modes in 1.." + std::to_string(T.order()));
            return Json{{"pair", {a, b}}, {"cr", cr_json(multilinear_cr(T, a - 1, b - 1, rng))}};
        },
        any);
}

}  // namespace thn
