#include "isopair/io.hpp"

#include "isopair/error.hpp"

#include <fstream>
#include <sstream>

namespace isopair::io {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw InputError(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

std::size_t count_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        throw InputError(std::string("field '") + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

} // namespace

json to_json(cx z) { return json::array({z.real(), z.imag()}); }

json to_json(const CVector& v) {
    json a = json::array();
    for (const cx& z : v) {
        a.push_back(to_json(z));
    }
    return a;
}

json to_json(const ComplexMatrix& m) {
    std::size_t nnz = 0;
    for (const cx& z : m.data()) {
        nnz += z != cx{} ? 1 : 0;
    }
    json out{{"rows", m.rows()}, {"cols", m.cols()}};
    if (4 * nnz <= m.rows() * m.cols() && m.rows() * m.cols() > 0) {
        json entries = json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (m(i, j) != cx{}) {
                    entries.push_back(json::array({i, j, m(i, j).real(), m(i, j).imag()}));
                }
            }
        }
        out["entries"] = std::move(entries);
    } else {
        json data = json::array();
        for (const cx& z : m.data()) {
            data.push_back(to_json(z));
        }
        out["data"] = std::move(data);
    }
    return out;
}

json to_json(const bcl::BCLTriple& t) {
    return {{"type", "bcl-triple"}, {"n", t.n}, {"U", to_json(t.U)}, {"P", to_json(t.P)}};
}

json to_json(const models::StructuredPair& p) {
    json labels = json::array();
    for (const auto& l : p.labels) {
        labels.push_back({{"kind", models::to_string(l.kind)}, {"exponents", l.exponents}, {"part", l.part_path}});
    }
    json params = json::object();
    for (const auto& [k, v] : p.params) {
        params[k] = v;
    }
    return {{"type", "structured-pair"},
            {"provenance", models::to_string(p.provenance)},
            {"dim", p.dim},
            {"V1", to_json(p.V1)},
            {"V2", to_json(p.V2)},
            {"interior", p.interior},
            {"labels", std::move(labels)},
            {"params", std::move(params)}};
}

json to_json(const classify::PairInput& in) {
    return std::visit([](const auto& x) { return to_json(x); }, in);
}

json to_json(const classify::ClassificationResult& r) {
    json blocks = json::array();
    for (const auto& b : r.blocks) {
        json jb{{"kind", classify::to_string(b.kind)}, {"alpha", to_json(b.alpha)}, {"f_vector", to_json(b.f_vector)}};
        if (b.kind == classify::BlockKind::ThreeFinite) {
            jb["lambda"] = b.lambda;
            jb["gamma"] = to_json(b.gamma);
        }
        blocks.push_back(std::move(jb));
    }
    json residuals = json::object();
    for (const auto& [k, v] : r.residuals) {
        residuals[k] = v;
    }
    return {{"k", r.k},
            {"fundamental_sequence", to_json(r.fundamental_sequence())},
            {"blocks", std::move(blocks)},
            {"shift_unitary",
             {{"eigs_on_P", to_json(r.shift_unitary.eigs_on_P)},
              {"eigs_on_Pperp", to_json(r.shift_unitary.eigs_on_Pperp)}}},
            {"residuals", std::move(residuals)}};
}

cx complex_from_json(const json& j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw InputError("complex number must be [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

CVector vector_from_json(const json& j) {
    if (!j.is_array()) {
        throw InputError("vector must be an array of [re, im]");
    }
    CVector v;
    v.reserve(j.size());
    for (const auto& z : j) {
        v.push_back(complex_from_json(z));
    }
    return v;
}

ComplexMatrix matrix_from_json(const json& j) {
    const std::size_t rows = count_field(j, "rows");
    const std::size_t cols = count_field(j, "cols");
    ComplexMatrix m(rows, cols);
    if (j.contains("data")) {
        const CVector data = vector_from_json(j.at("data"));
        if (data.size() != rows * cols) {
            throw InputError("matrix data has " + std::to_string(data.size()) + " entries, expected " +
                             std::to_string(rows * cols));
        }
        return {rows, cols, data};
    }
    const json& entries = field(j, "entries");
    if (!entries.is_array()) {
        throw InputError("matrix entries must be an array");
    }
    for (const auto& e : entries) {
        if (!e.is_array() || e.size() != 4 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
            throw InputError("matrix entry must be [i, j, re, im]");
        }
        const auto i = e[0].get<long long>();
        const auto c = e[1].get<long long>();
        if (i < 0 || c < 0 || static_cast<std::size_t>(i) >= rows || static_cast<std::size_t>(c) >= cols) {
            throw InputError("matrix entry index out of range");
        }
        m(static_cast<std::size_t>(i), static_cast<std::size_t>(c)) = {e[2].get<double>(), e[3].get<double>()};
    }
    return m;
}

bcl::BCLTriple triple_from_json(const json& j) {
    bcl::BCLTriple t;
    t.n = count_field(j, "n");
    t.U = matrix_from_json(field(j, "U"));
    t.P = matrix_from_json(field(j, "P"));
    bcl::validate_triple(t);
    return t;
}

models::StructuredPair pair_from_json(const json& j) {
    models::StructuredPair p;
    p.provenance = models::provenance_from_string(field(j, "provenance").get<std::string>());
    p.dim = count_field(j, "dim");
    p.V1 = matrix_from_json(field(j, "V1"));
    p.V2 = matrix_from_json(field(j, "V2"));
    p.interior = field(j, "interior").get<std::vector<std::size_t>>();
    for (const auto& l : field(j, "labels")) {
        p.labels.push_back({models::label_kind_from_string(field(l, "kind").get<std::string>()),
                            field(l, "exponents").get<std::vector<int>>(),
                            l.value("part", std::vector<std::size_t>{})});
    }
    if (j.contains("params")) {
        p.params = j.at("params").get<std::map<std::string, double>>();
    }
    models::validate_pair(p);
    return p;
}

classify::PairInput input_from_json(const json& j) {
    try {
        const std::string type = field(j, "type").get<std::string>();
        if (type == "bcl-triple") {
            return triple_from_json(j);
        }
        if (type == "structured-pair") {
            return pair_from_json(j);
        }
        throw InputError("unknown input type '" + type + "'");
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed input: ") + e.what());
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path.string() + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write '" + path.string() + "'");
    }
    out << text;
}

std::string spectrum_csv(const spectral::SpectralProfile& profile, double cluster_tol) {
    std::ostringstream out;
    out.precision(17);
    out << "index,eigenvalue_re,eigenvalue_im,cluster_label\n";
    for (std::size_t i = 0; i < profile.eigenvalues.size(); ++i) {
        const double v = profile.eigenvalues[i];
        const char* label = v >= 1.0 - cluster_tol    ? "E1"
                            : v <= -1.0 + cluster_tol ? "E-1"
                            : std::abs(v) <= cluster_tol ? "kernel"
                            : v > 0.0                  ? "interior+"
                                                       : "interior-";
        out << i << ',' << v << ",0," << label << '\n';
    }
    return out.str();
}

} // namespace isopair::io
