#include "kfb/constructors.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>

namespace kfb {

AlexPoly AlexPoly::from_terms(std::vector<AlexTerm> terms) {
    if (terms.empty()) throw InputError("Alexander polynomial has no terms");
    if (terms.size() % 2 == 0)
        throw InputError("Alexander polynomial needs an odd number of terms");
    for (size_t k = 0; k < terms.size(); ++k) {
        int want = (k % 2 == 0) ? 1 : -1;
        if (terms[k].sign != want)
            throw InputError("Alexander polynomial signs must alternate starting with +1");
        if (k > 0 && terms[k].exponent >= terms[k - 1].exponent)
            throw InputError("Alexander polynomial exponents must strictly decrease");
    }
    for (size_t k = 0; k < terms.size(); ++k) {
        const AlexTerm& mirror = terms[terms.size() - 1 - k];
        if (mirror.exponent != -terms[k].exponent || mirror.sign != terms[k].sign)
            throw InputError("Alexander polynomial must be symmetric under t -> 1/t");
    }
    AlexPoly p;
    p.terms_ = std::move(terms);
    return p;
}

std::string AlexPoly::str() const {
    std::ostringstream os;
    for (size_t k = 0; k < terms_.size(); ++k) {
        if (k) os << (terms_[k].sign > 0 ? " + " : " - ");
        else if (terms_[k].sign < 0) os << "-";
        os << "t^" << terms_[k].exponent;
    }
    return os.str();
}

namespace {

// Dense integer polynomial in t with nonnegative exponents.
using ZPoly = std::vector<long long>;

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
    ZPoly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

// t^n - 1
ZPoly zp_cyclic(int n) {
    ZPoly p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    return p;
}

ZPoly zp_divexact(ZPoly num, const ZPoly& den) {
    ZPoly q(num.size() - den.size() + 1, 0);
    for (int d = static_cast<int>(q.size()) - 1; d >= 0; --d) {
        long long coeff = num[d + den.size() - 1] / den.back();
        q[d] = coeff;
        for (size_t k = 0; k < den.size(); ++k) num[d + k] -= coeff * den[k];
    }
    for (long long c : num)
        if (c != 0) throw InternalError("inexact polynomial division");
    return q;
}

} // namespace

AlexPoly torus_alexander(int p, int q) {
    if (p < 2 || q < 2) throw InputError("torus parameters must be >= 2");
    if (std::gcd(p, q) != 1) throw InputError("torus parameters must be coprime");

    ZPoly num = zp_mul(zp_cyclic(p * q), zp_cyclic(1));
    ZPoly den = zp_mul(zp_cyclic(p), zp_cyclic(q));
    ZPoly poly = zp_divexact(num, den);

    const int genus = (p - 1) * (q - 1) / 2; // degree of the quotient is 2*genus
    std::vector<AlexTerm> terms;
    for (int d = static_cast<int>(poly.size()) - 1; d >= 0; --d) {
        if (poly[d] == 0) continue;
        if (poly[d] != 1 && poly[d] != -1)
            throw InternalError("torus Alexander polynomial with non-unit coefficient");
        terms.push_back({d - genus, static_cast<int>(poly[d])});
    }
    return AlexPoly::from_terms(std::move(terms));
}

FilteredComplex staircase_from_alexander(const AlexPoly& a) {
    const auto& terms = a.terms();
    FilteredComplex c;

    // Maslov gradings follow from M(x0) = 0 and the Maslov law along the
    // staircase arrows: d(x_{2i+1}) = U^h x_{2i} + x_{2i+2}.
    std::vector<int> maslov(terms.size(), 0);
    for (size_t k = 1; k < terms.size(); ++k) {
        int gap = terms[k - 1].exponent - terms[k].exponent;
        if (k % 2 == 1) maslov[k] = maslov[k - 1] - 2 * gap + 1;
        else maslov[k] = maslov[k - 1] - 1;
    }

    for (size_t k = 0; k < terms.size(); ++k)
        c.add_generator("x" + std::to_string(k), terms[k].exponent, maslov[k]);
    for (size_t k = 1; k + 1 < terms.size(); k += 2) {
        int up = terms[k - 1].exponent - terms[k].exponent;
        c.toggle_arrow(static_cast<int>(k), static_cast<int>(k - 1), up);
        c.toggle_arrow(static_cast<int>(k), static_cast<int>(k + 1), 0);
    }
    c.set_symmetric(true);
    require_valid(c);
    return c;
}

FilteredComplex staircase_torus(int p, int q) {
    return staircase_from_alexander(torus_alexander(p, q));
}

FilteredComplex tensor_product(const FilteredComplex& c1, const FilteredComplex& c2) {
    require_valid(c1);
    require_valid(c2);

    FilteredComplex out;
    std::map<std::pair<int, int>, int> index;
    for (int i = 0; i < c1.size(); ++i)
        for (int j = 0; j < c2.size(); ++j) {
            const auto& g = c1.gen(i);
            const auto& h = c2.gen(j);
            index[{i, j}] = out.add_generator(g.id + "." + h.id,
                                              g.alexander + h.alexander,
                                              g.maslov + h.maslov);
        }
    for (const auto& a : c1.arrows())
        for (int j = 0; j < c2.size(); ++j)
            out.toggle_arrow(index[{a.source, j}], index[{a.target, j}], a.u_power);
    for (const auto& a : c2.arrows())
        for (int i = 0; i < c1.size(); ++i)
            out.toggle_arrow(index[{i, a.source}], index[{i, a.target}], a.u_power);

    out.set_symmetric(c1.symmetric() && c2.symmetric());
    require_valid(out);
    return out;
}

namespace {

const std::vector<std::pair<std::string, std::string>>& bundled_files() {
    static const std::vector<std::pair<std::string, std::string>> table = {
        {"unknot", "unknot.cfk"},
        {"T(2,3)", "t23.cfk"},
        {"T(2,5)", "t25.cfk"},
        {"T(2,7)", "t27.cfk"},
        {"T(3,4)", "t34.cfk"},
        {"T(3,5)", "t35.cfk"},
        {"T(4,5)", "t45.cfk"},
        {"tt(3,4;2,1)", "tt-3-4-2-1.cfk"},
        {"tt(4,5;3,0)", "tt-4-5-3-0.cfk"},
    };
    return table;
}

} // namespace

std::vector<std::string> bundled_labels() {
    std::vector<std::string> out;
    for (const auto& [label, file] : bundled_files()) out.push_back(label);
    return out;
}

std::string default_data_dir() {
    if (const char* env = std::getenv("KFB_DATA_DIR"); env && *env) return env;
#ifdef KFB_SOURCE_DATA_DIR
    return KFB_SOURCE_DATA_DIR;
#else
    return "data";
#endif
}

std::string bundled_path(const std::string& label, const std::string& data_dir) {
    for (const auto& [name, file] : bundled_files())
        if (name == label)
            return (data_dir.empty() ? default_data_dir() : data_dir) + "/" + file;
    throw InputError("unknown bundled complex '" + label + "'");
}

FilteredComplex load_bundled(const std::string& label, const std::string& data_dir) {
    FilteredComplex c = load_cfk_file(bundled_path(label, data_dir));
    ValidationReport rep = validate(c);
    if (!rep.ok())
        throw InternalError("bundled complex '" + label + "' fails validation (packaging bug):\n" +
                            rep.summary());
    return c;
}

} // namespace kfb
