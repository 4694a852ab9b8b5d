#include "qldpc/css_code.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qldpc/rng.hpp"

namespace qldpc {

using nlohmann::json;

std::optional<Gf> NbMatrix::at(std::int64_t row, std::int64_t c) const {
    const auto* begin = cols.data() + row * L;
    const auto* end = begin + L;
    const auto* it = std::lower_bound(begin, end, c);
    if (it == end || *it != c) return std::nullopt;
    return vals[row * L + (it - begin)];
}

std::vector<Gf> NbMatrix::apply(const FieldContext& field, std::span<const Gf> x) const {
    std::vector<Gf> y(M, 0);
    for (std::int64_t i = 0; i < M; ++i) {
        Gf acc = 0;
        for (int t = 0; t < L; ++t) acc ^= field.mul(val(i, t), x[col(i, t)]);
        y[i] = acc;
    }
    return y;
}

BitVec binary_check_action(const FieldContext& field, const NbMatrix& H, BinarySide side,
                           const BitVec& x) {
    const int e = field.e();
    if (x.size() != H.N * e) throw DimensionMismatch("binary_check_action: input length");
    BitVec y(H.M * e);
    for (std::int64_t i = 0; i < H.M; ++i)
        for (int t = 0; t < H.L; ++t) {
            const std::uint16_t seg = x.get_segment(H.col(i, t), e);
            if (!seg) continue;
            if (side == BinarySide::Gamma)
                y.xor_segment(i, e, field.mul(H.val(i, t), field.v_inv(seg)));
            else
                y.xor_segment(i, e, field.w_map(field.mul(H.val(i, t), field.w_inv(seg))));
        }
    return y;
}

BitVec binary_check_transpose_action(const FieldContext& field, const NbMatrix& H,
                                     BinarySide side, const BitVec& y) {
    const int e = field.e();
    if (y.size() != H.M * e) throw DimensionMismatch("binary_check_transpose_action: input length");
    BitVec x(H.N * e);
    for (std::int64_t i = 0; i < H.M; ++i) {
        const std::uint16_t seg = y.get_segment(i, e);
        if (!seg) continue;
        for (int t = 0; t < H.L; ++t) {
            if (side == BinarySide::Gamma)
                x.xor_segment(H.col(i, t), e, field.w_map(field.mul(H.val(i, t), field.w_inv(seg))));
            else
                x.xor_segment(H.col(i, t), e, field.mul(H.val(i, t), field.v_inv(seg)));
        }
    }
    return x;
}

BitVec expand_v(const FieldContext& field, std::span<const Gf> symbols) {
    BitVec out(static_cast<std::int64_t>(symbols.size()) * field.e());
    for (size_t j = 0; j < symbols.size(); ++j)
        if (symbols[j]) out.xor_segment(static_cast<std::int64_t>(j), field.e(), field.v_map(symbols[j]));
    return out;
}

BitVec expand_w(const FieldContext& field, std::span<const Gf> symbols) {
    BitVec out(static_cast<std::int64_t>(symbols.size()) * field.e());
    for (size_t j = 0; j < symbols.size(); ++j)
        if (symbols[j]) out.xor_segment(static_cast<std::int64_t>(j), field.e(), field.w_map(symbols[j]));
    return out;
}

NbMatrix nb_from_exponents(const FieldContext& field, const PermArray& array,
                           std::span<const std::int32_t> exps) {
    const std::int64_t N = static_cast<std::int64_t>(array.L) * array.P;
    NbMatrix H;
    H.M = static_cast<std::int64_t>(array.J) * array.P;
    H.N = N;
    H.P = array.P;
    H.J = array.J;
    H.L = array.L;
    H.cols.resize(H.M * H.L);
    H.vals.resize(H.M * H.L);
    for (int j = 0; j < array.J; ++j)
        for (std::int64_t r = 0; r < array.P; ++r) {
            const std::int64_t row = j * array.P + r;
            for (int l = 0; l < array.L; ++l) {
                const std::int64_t c = static_cast<std::int64_t>(l) * array.P + invert(array.at(j, l))(r);
                H.cols[row * H.L + l] = c;
                H.vals[row * H.L + l] = field.alpha_pow(exps[j * N + c]);
            }
        }
    return H;
}

namespace {

std::vector<CycleRecord> build_catalog(const FieldContext& field, const GeneratorPair& gen,
                                       MatrixSide side, std::span<const std::int32_t> exps) {
    const std::int64_t N = static_cast<std::int64_t>(gen.L) * gen.P;
    const int L = gen.L;
    std::vector<CycleRecord> catalog;
    catalog.reserve(3 * gen.P);
    for (int j = 0; j <= 2; ++j)
        for (std::int64_t r = 0; r < gen.P; ++r) {
            const auto pos = unavoidable_cycle_positions(gen, side, j, r);
            CycleRecord rec;
            rec.utcbc_j = j;
            rec.anchor = r;
            rec.labels.reserve(2 * L);
            for (const auto& p : pos) rec.labels.push_back(field.alpha_pow(exps[p.block * N + p.col]));
            rec.cols.reserve(L);
            rec.rows.reserve(L);
            for (int i = 0; i < L; ++i) {
                rec.cols.push_back(pos[2 * i].col);
                rec.rows.push_back(pos[2 * i].global_row(gen.P));
            }
            Gf prod_even = 1, prod_odd = 1;
            for (int i = 0; i < L; ++i) {
                prod_even = field.mul(prod_even, rec.labels[2 * i]);
                prod_odd = field.mul(prod_odd, rec.labels[2 * i + 1]);
            }
            rec.det = field.add(prod_even, prod_odd);
            catalog.push_back(std::move(rec));
        }
    return catalog;
}

void build_dual_bases(CssCode& code) {
    const FieldContext& field = code.field;
    const int e = field.e();
    code.dual_x = BitEchelon(code.n);
    code.dual_z = BitEchelon(code.n);
    std::int64_t rx = 0, rz = 0;
    for (std::int64_t i = 0; i < code.M(); ++i)
        for (int k = 0; k < e; ++k) {
            const Gf ak = field.alpha_pow(k);
            BitVec xrow(code.n), zrow(code.n);
            for (int t = 0; t < code.hgamma.L; ++t)
                xrow.xor_segment(code.hgamma.col(i, t), e,
                                 field.w_map(field.mul(code.hgamma.val(i, t), ak)));
            for (int t = 0; t < code.hdelta.L; ++t)
                zrow.xor_segment(code.hdelta.col(i, t), e, field.mul(code.hdelta.val(i, t), ak));
            rx += code.dual_x.insert(std::move(xrow)) ? 1 : 0;
            rz += code.dual_z.insert(std::move(zrow)) ? 1 : 0;
        }
    code.rank_x = rx;
    code.rank_z = rz;
    code.k = code.n - rx - rz;
}

}  // namespace

OrthogonalityReport verify_orthogonality(const CssCode& code, int binary_samples,
                                         std::uint64_t sample_seed) {
    OrthogonalityReport rep;
    const auto& A = code.hgamma;
    const auto& B = code.hdelta;
    for (std::int64_t ia = 0; ia < A.M && rep.ok; ++ia)
        for (std::int64_t ib = 0; ib < B.M; ++ib) {
            Gf acc = 0;
            int ta = 0, tb = 0;
            while (ta < A.L && tb < B.L) {
                const std::int64_t ca = A.col(ia, ta), cb = B.col(ib, tb);
                if (ca == cb) {
                    acc ^= code.field.mul(A.val(ia, ta), B.val(ib, tb));
                    ++ta;
                    ++tb;
                } else if (ca < cb) {
                    ++ta;
                } else {
                    ++tb;
                }
            }
            ++rep.pairs_checked;
            if (acc != 0) {
                rep.ok = false;
                rep.gamma_row = ia;
                rep.delta_row = ib;
                rep.detail = "rows " + std::to_string(ia) + " and " + std::to_string(ib) +
                             " have nonzero inner product";
                break;
            }
        }

    Rng rng(sample_seed);
    for (int s = 0; s < binary_samples; ++s) {
        BitVec y(code.m);
        for (std::int64_t b = 0; b < code.m; ++b) y.set(b, rng.below(2));
        BitVec x = binary_check_transpose_action(code.field, code.hdelta, BinarySide::Delta, y);
        BitVec z = binary_check_action(code.field, code.hgamma, BinarySide::Gamma, x);
        ++rep.binary_samples;
        if (z.any()) {
            rep.binary_ok = false;
            rep.ok = false;
            rep.detail = "binary product sample " + std::to_string(s) + " is nonzero";
            break;
        }
    }
    return rep;
}

CssCode assemble_code(FieldContext field, GeneratorPair gen, std::vector<std::int32_t> gamma_exps,
                      std::vector<std::int32_t> delta_exps, std::string seed_info, bool verify) {
    auto [hx, hz] = build_arrays(gen);
    CssCode code{std::move(field)};
    code.gen = std::move(gen);
    code.hx_array = std::move(hx);
    code.hz_array = std::move(hz);
    code.gamma_exps = std::move(gamma_exps);
    code.delta_exps = std::move(delta_exps);
    code.seed_info = std::move(seed_info);

    const std::int64_t N = static_cast<std::int64_t>(code.gen.L) * code.gen.P;
    if (static_cast<std::int64_t>(code.gamma_exps.size()) != 2 * N ||
        static_cast<std::int64_t>(code.delta_exps.size()) != 2 * N)
        throw DimensionMismatch("label exponent vectors must have length 2N");
    for (auto v : code.gamma_exps)
        if (v < 0 || static_cast<std::uint32_t>(v) >= code.field.order())
            throw InvariantViolation("gamma exponent out of range");
    for (auto v : code.delta_exps)
        if (v < 0 || static_cast<std::uint32_t>(v) >= code.field.order())
            throw InvariantViolation("delta exponent out of range");

    code.hgamma = nb_from_exponents(code.field, code.hx_array, code.gamma_exps);
    code.hdelta = nb_from_exponents(code.field, code.hz_array, code.delta_exps);
    code.n = static_cast<std::int64_t>(code.field.e()) * N;
    code.m = static_cast<std::int64_t>(code.field.e()) * code.hgamma.M;

    build_dual_bases(code);
    code.catalog_gamma = build_catalog(code.field, code.gen, MatrixSide::Gamma, code.gamma_exps);
    code.catalog_delta = build_catalog(code.field, code.gen, MatrixSide::Delta, code.delta_exps);

    if (verify) {
        const auto rep = verify_orthogonality(code);
        if (!rep.ok) throw InvariantViolation("orthogonality check failed: " + rep.detail);
        for (const auto* cat : {&code.catalog_gamma, &code.catalog_delta})
            for (const auto& rec : *cat)
                if (rec.utcbc_j <= 1 && rec.det != 0)
                    throw InvariantViolation(
                        "rank-deficiency violated on an unavoidable cycle of class " +
                        std::to_string(rec.utcbc_j));
    }
    return code;
}

DimensionReport compute_dimension(const CssCode& code) {
    return {code.k, code.rank_x, code.rank_z};
}

bool dual_membership(const CssCode& code, DualSide side, const BitVec& vec) {
    if (vec.size() != code.n) throw DimensionMismatch("dual_membership: vector length");
    return side == DualSide::X ? code.dual_x.contains(vec) : code.dual_z.contains(vec);
}

namespace {

std::string poly_to_string(std::uint32_t poly, int e) {
    std::string s(e + 1, '0');
    for (int i = 0; i <= e; ++i)
        if (poly >> i & 1) s[i] = '1';
    return s;
}

std::uint32_t poly_from_string(const std::string& s) {
    if (s.size() > 17) throw FormatError("prim_poly string too long");
    std::uint32_t poly = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            poly |= 1u << i;
        else if (s[i] != '0')
            throw FormatError("prim_poly must be a bit string");
    }
    return poly;
}

json rows_to_json(const NbMatrix& H, std::span<const std::int32_t> exps) {
    json rows = json::array();
    const std::int64_t N = H.N;
    for (std::int64_t i = 0; i < H.M; ++i) {
        const std::int64_t block = i / H.P;
        json row = json::array();
        for (int t = 0; t < H.L; ++t) {
            const std::int64_t c = H.col(i, t);
            row.push_back({c, exps[block * N + c]});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<std::int32_t> exps_from_rows(const json& rows, const PermArray& array,
                                         std::int64_t order) {
    const std::int64_t N = static_cast<std::int64_t>(array.L) * array.P;
    const std::int64_t M = static_cast<std::int64_t>(array.J) * array.P;
    if (!rows.is_array() || static_cast<std::int64_t>(rows.size()) != M)
        throw FormatError("label rows: expected " + std::to_string(M) + " rows");
    std::vector<std::int32_t> exps(2 * N, -1);
    for (std::int64_t i = 0; i < M; ++i) {
        const std::int64_t block = i / array.P;
        const std::int64_t r = i % array.P;
        const auto& row = rows[i];
        if (!row.is_array() || static_cast<int>(row.size()) != array.L)
            throw FormatError("label rows: expected " + std::to_string(array.L) + " entries per row");
        std::vector<std::int64_t> expected;
        for (int l = 0; l < array.L; ++l)
            expected.push_back(static_cast<std::int64_t>(l) * array.P +
                               invert(array.at(static_cast<int>(block), l))(r));
        std::sort(expected.begin(), expected.end());
        for (int t = 0; t < array.L; ++t) {
            const auto& pair = row[t];
            if (!pair.is_array() || pair.size() != 2) throw FormatError("label entry must be [col, exp]");
            const std::int64_t c = pair[0].get<std::int64_t>();
            const std::int64_t exp = pair[1].get<std::int64_t>();
            if (!std::binary_search(expected.begin(), expected.end(), c))
                throw InvariantViolation("label support does not match the permutation arrays");
            if (exp < 0 || exp >= order) throw InvariantViolation("label exponent out of range");
            exps[block * N + c] = static_cast<std::int32_t>(exp);
        }
    }
    for (auto v : exps)
        if (v < 0) throw InvariantViolation("label support does not cover the permutation arrays");
    return exps;
}

}  // namespace

std::string serialize(const CssCode& code) {
    json j;
    j["version"] = 1;
    j["e"] = code.field.e();
    j["prim_poly"] = poly_to_string(code.field.poly(), code.field.e());
    j["P"] = code.gen.P;
    j["J"] = 2;
    j["L"] = code.gen.L;
    json f = json::array(), g = json::array();
    for (const auto& p : code.gen.f) f.push_back({p.a, p.b});
    for (const auto& p : code.gen.g) g.push_back({p.a, p.b});
    j["f"] = std::move(f);
    j["g"] = std::move(g);
    j["gamma_rows"] = rows_to_json(code.hgamma, code.gamma_exps);
    j["delta_rows"] = rows_to_json(code.hdelta, code.delta_exps);
    j["seed_info"] = code.seed_info.empty() ? json(nullptr) : json::parse(code.seed_info);
    return j.dump();
}

CssCode deserialize(const std::string& bytes) {
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::parse_error& ex) {
        throw FormatError(std::string("invalid code file: ") + ex.what());
    }
    try {
        if (j.at("version").get<int>() != 1) throw FormatError("unsupported code file version");
        const int e = j.at("e").get<int>();
        FieldContext field(e, poly_from_string(j.at("prim_poly").get<std::string>()));
        GeneratorPair gen;
        gen.P = j.at("P").get<std::int64_t>();
        gen.L = j.at("L").get<int>();
        if (j.at("J").get<int>() != 2) throw FormatError("only J = 2 code files are supported");
        for (const auto& p : j.at("f"))
            gen.f.push_back(make_affine(p.at(0).get<std::int64_t>(), p.at(1).get<std::int64_t>(), gen.P));
        for (const auto& p : j.at("g"))
            gen.g.push_back(make_affine(p.at(0).get<std::int64_t>(), p.at(1).get<std::int64_t>(), gen.P));
        if (static_cast<int>(gen.f.size()) != gen.L / 2 || static_cast<int>(gen.g.size()) != gen.L / 2)
            throw FormatError("f and g must each have L/2 entries");

        auto [hx, hz] = build_arrays(gen);
        auto gamma_exps = exps_from_rows(j.at("gamma_rows"), hx, field.order());
        auto delta_exps = exps_from_rows(j.at("delta_rows"), hz, field.order());
        std::string seed_info = j.contains("seed_info") && !j["seed_info"].is_null()
                                    ? j["seed_info"].dump()
                                    : std::string();
        return assemble_code(std::move(field), std::move(gen), std::move(gamma_exps),
                             std::move(delta_exps), std::move(seed_info));
    } catch (const json::exception& ex) {
        throw FormatError(std::string("invalid code file: ") + ex.what());
    }
}

CssCode load_code_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return deserialize(ss.str());
}

void save_code_file(const CssCode& code, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path);
    out << serialize(code);
    out << "\n";
}

}  // namespace qldpc
