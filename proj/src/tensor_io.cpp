#include "tensorhn/tensor_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace thn {

namespace {

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, size_t i) { return path + "/" + std::to_string(i); }

const Json& member(const Json& j, const std::string& path, const char* key) {
    if (!j.is_object()) throw InputError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(at(path, key), "missing");
    return *it;
}

uint64_t unsigned_at(const Json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<int64_t>() < 0) throw InputError(path, "expected a nonnegative integer");
    return j.get<uint64_t>();
}

template <class F>
typename F::Elem scalar_at(const F& f, const Json& j, const std::string& path) {
    try {
        if (j.is_number_integer()) return f.from_int(j.get<int64_t>());
        if (!j.is_string()) throw InputError(path, "expected a scalar string");
        auto s = j.get<std::string>();
        if constexpr (std::is_same_v<F, FiniteField>) {
            auto slash = s.find('/');
            if (slash != std::string::npos) {
                if (f.degree() != 1) throw InputError(path, "fractions are only accepted over prime fields");
                Rational r = RationalField().parse(s);
                BigInt p = f.characteristic();
                BigInt num = boost::multiprecision::numerator(r) % p, den = boost::multiprecision::denominator(r) % p;
                if (num < 0) num += p;
                if (den == 0) throw InputError(path, "denominator vanishes modulo " + p.str());
                return f.div(num.convert_to<uint32_t>(), den.convert_to<uint32_t>());
            }
        }
        return f.parse(s);
    } catch (const FieldError& e) {
        throw InputError(path, e.what());
    }
}

template <class F>
Tensor<F> entries_into(const F& f, const std::vector<size_t>& dims, const Json& entries) {
    if (!entries.is_array()) throw InputError("/entries", "expected an array");
    Tensor<F> T(f, dims);
    std::set<size_t> seen;
    for (size_t e = 0; e < entries.size(); ++e) {
        const auto& row = entries[e];
        auto path = at("/entries", e);
        if (!row.is_array() || row.size() != dims.size() + 1)
            throw InputError(path, "expected " + std::to_string(dims.size()) + " coordinates and a value");
        Coord c(dims.size());
        for (size_t k = 0; k < dims.size(); ++k) {
            uint64_t x = unsigned_at(row[k], at(path, k));
            if (x < 1 || x > dims[k]) throw InputError(at(path, k), "coordinate out of range 1.." + std::to_string(dims[k]));
            c[k] = x - 1;
        }
        if (!seen.insert(T.index(c)).second) throw InputError(path, "duplicate coordinate");
        T.at(c) = scalar_at(f, row[dims.size()], at(path, dims.size()));
    }
    return T;
}

}  // namespace

FieldSpec field_spec_from_json(const Json& j, const std::string& path) {
    FieldSpec s;
    const auto& kind = member(j, path, "kind");
    if (!kind.is_string()) throw InputError(at(path, "kind"), "expected a string");
    auto k = kind.get<std::string>();
    if (k == "rational") {
        s.kind = FieldSpec::rational;
        return s;
    }
    if (k != "gf" && k != "gf_ext") throw InputError(at(path, "kind"), "unknown field kind '" + k + "'");
    uint64_t p = unsigned_at(member(j, path, "p"), at(path, "p"));
    if (p >= (1u << 31) || !is_prime_u64(p)) throw InputError(at(path, "p"), "not a prime");
    s.p = uint32_t(p);
    if (k == "gf") return s;
    s.kind = FieldSpec::gf_ext;
    uint64_t e = unsigned_at(member(j, path, "e"), at(path, "e"));
    if (e < 1 || e > 30) throw InputError(at(path, "e"), "extension degree out of range");
    s.e = int(e);
    if (j.contains("modulus")) {
        const auto& m = j["modulus"];
        if (!m.is_array()) throw InputError(at(path, "modulus"), "expected an array of coefficients");
        PolyP poly;
        for (size_t i = 0; i < m.size(); ++i) poly.push_back(uint32_t(unsigned_at(m[i], at(at(path, "modulus"), i)) % s.p));
        s.modulus = poly;
    }
    return s;
}

FieldSpec parse_field_flag(const std::string& s) {
    FieldSpec out;
    if (s == "rational" || s == "q" || s == "Q") {
        out.kind = FieldSpec::rational;
        return out;
    }
    if (s.rfind("gf:", 0) != 0) throw InputError("--field", "expected gf:P, gf:P^E or rational");
    auto body = s.substr(3);
    auto caret = body.find('^');
    try {
        size_t used = 0;
        auto ps = body.substr(0, caret);
        uint64_t p = std::stoull(ps, &used);
        if (used != ps.size() || p >= (1u << 31) || !is_prime_u64(p)) throw InputError("--field", "not a prime: " + ps);
        out.p = uint32_t(p);
        if (caret != std::string::npos) {
            auto es = body.substr(caret + 1);
            int e = std::stoi(es, &used);
            if (used != es.size() || e < 1 || e > 30) throw InputError("--field", "bad extension degree: " + es);
            out.kind = FieldSpec::gf_ext;
            out.e = e;
        }
    } catch (const std::logic_error&) {
        throw InputError("--field", "expected gf:P, gf:P^E or rational");
    }
    return out;
}

FiniteField make_finite_field(const FieldSpec& s) {
    try {
        if (s.kind == FieldSpec::gf) return FiniteField::prime(s.p);
        if (s.kind == FieldSpec::gf_ext) {
            if (s.modulus) return FiniteField::extension(s.p, s.e, *s.modulus);
            return FiniteField::extension(s.p, s.e);
        }
    } catch (const FieldError& e) {
        throw InputError("/field", e.what());
    }
    throw InputError("/field", "not a finite field");
}

Json field_to_json(const FiniteField& f) {
    Json j;
    if (f.degree() == 1) {
        j["kind"] = "gf";
        j["p"] = f.characteristic();
        return j;
    }
    j["kind"] = "gf_ext";
    j["p"] = f.characteristic();
    j["e"] = f.degree();
    j["modulus"] = f.modulus();
    return j;
}

Json field_to_json(const RationalField&) { return Json{{"kind", "rational"}}; }

AnyTensor tensor_from_json(const Json& j, const std::optional<FieldSpec>& override) {
    FieldSpec spec = override ? *override : field_spec_from_json(member(j, "", "field"));
    const auto& dj = member(j, "", "dims");
    if (!dj.is_array() || dj.size() < 2) throw InputError("/dims", "expected at least two dimensions");
    std::vector<size_t> dims;
    for (size_t k = 0; k < dj.size(); ++k) {
        uint64_t d = unsigned_at(dj[k], at("/dims", k));
        if (d == 0) throw InputError(at("/dims", k), "dimensions must be positive");
        dims.push_back(d);
    }
    try {
        checked_volume(dims);
    } catch (const ShapeError& e) {
        throw InputError("/dims", e.what());
    }
    const auto& entries = member(j, "", "entries");
    if (spec.kind == FieldSpec::rational) return entries_into(RationalField{}, dims, entries);
    return entries_into(make_finite_field(spec), dims, entries);
}

template <class F>
Json tensor_to_json(const Tensor<F>& T) {
    Json j;
    j["field"] = field_to_json(T.field());
    j["dims"] = T.dims();
    Json entries = Json::array();
    for (size_t i = 0; i < T.size(); ++i) {
        if (T.field().is_zero(T[i])) continue;
        Json row = Json::array();
        for (size_t c : T.coord(i)) row.push_back(c + 1);
        row.push_back(T.field().to_string(T[i]));
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    return j;
}

SupportSet support_from_json(const Json& j) {
    const auto& sj = member(j, "", "sizes");
    if (!sj.is_array() || sj.size() < 2) throw InputError("/sizes", "expected at least two sizes");
    std::vector<size_t> sizes;
    for (size_t k = 0; k < sj.size(); ++k) {
        uint64_t d = unsigned_at(sj[k], at("/sizes", k));
        if (d == 0) throw InputError(at("/sizes", k), "sizes must be positive");
        sizes.push_back(d);
    }
    const auto& pj = member(j, "", "points");
    if (!pj.is_array()) throw InputError("/points", "expected an array");
    std::vector<Coord> points;
    for (size_t e = 0; e < pj.size(); ++e) {
        auto path = at("/points", e);
        if (!pj[e].is_array() || pj[e].size() != sizes.size())
            throw InputError(path, "expected " + std::to_string(sizes.size()) + " coordinates");
        Coord c;
        for (size_t k = 0; k < sizes.size(); ++k) {
            uint64_t x = unsigned_at(pj[e][k], at(path, k));
            if (x < 1 || x > sizes[k]) throw InputError(at(path, k), "coordinate out of range 1.." + std::to_string(sizes[k]));
            c.push_back(x - 1);
        }
        points.push_back(std::move(c));
    }
    return make_support(std::move(sizes), std::move(points));
}

Json support_to_json(const SupportSet& s) {
    Json j;
    j["sizes"] = s.sizes;
    Json pts = Json::array();
    for (const auto& c : s.points) {
        Json row = Json::array();
        for (size_t x : c) row.push_back(x + 1);
        pts.push_back(std::move(row));
    }
    j["points"] = std::move(pts);
    return j;
}

template <class F>
Json matrix_to_json(const Mat<F>& M) {
    Json rows = Json::array();
    for (size_t i = 0; i < M.rows(); ++i) {
        Json row = Json::array();
        for (size_t k = 0; k < M.cols(); ++k) row.push_back(M.field().to_string(M(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class F>
Mat<F> matrix_from_json(const F& f, const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
        throw InputError(path, "expected a nonempty array of rows");
    Mat<F> M(f, j.size(), j[0].size());
    for (size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array() || j[i].size() != M.cols()) throw InputError(at(path, i), "ragged matrix row");
        for (size_t k = 0; k < M.cols(); ++k) M(i, k) = scalar_at(f, j[i][k], at(at(path, i), k));
    }
    return M;
}

template <class F>
Json extraction_to_json(const F& f, const Extraction<F>& ex) {
    Json j;
    j["field"] = field_to_json(f);
    j["N"] = ex.N;
    j["E"] = ex.E;
    j["H"] = ex.H;
    j["L"] = ex.L;
    Json maps = Json::array();
    for (const auto& A : ex.maps) maps.push_back(matrix_to_json(A));
    j["maps"] = std::move(maps);
    return j;
}

template <class F>
Extraction<F> extraction_from_json(const F& f, const Json& j) {
    Extraction<F> ex;
    ex.N = unsigned_at(member(j, "", "N"), "/N");
    ex.E = unsigned_at(member(j, "", "E"), "/E");
    ex.H = unsigned_at(member(j, "", "H"), "/H");
    ex.L = unsigned_at(member(j, "", "L"), "/L");
    const auto& maps = member(j, "", "maps");
    if (!maps.is_array() || maps.size() != 3) throw InputError("/maps", "expected three matrices");
    for (size_t k = 0; k < 3; ++k) ex.maps.push_back(matrix_from_json(f, maps[k], at("/maps", k)));
    return ex;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("", "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError("", path + ": " + e.what());
    }
}

#define THN_IO_INSTANTIATE(F)                                                \
    template Json tensor_to_json(const Tensor<F>&);                          \
    template Json matrix_to_json(const Mat<F>&);                             \
    template Mat<F> matrix_from_json(const F&, const Json&, const std::string&); \
    template Json extraction_to_json(const F&, const Extraction<F>&);        \
    template Extraction<F> extraction_from_json(const F&, const Json&);

THN_IO_INSTANTIATE(FiniteField)
THN_IO_INSTANTIATE(RationalField)

}  // namespace thn
