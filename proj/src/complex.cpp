#include "kfb/complex.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace kfb {

int FilteredComplex::add_generator(const std::string& id, int alexander, int maslov) {
    if (find(id)) throw InputError("duplicate generator id '" + id + "'");
    if (id.empty()) throw InputError("empty generator id");
    generators_.push_back({id, alexander, maslov});
    return size() - 1;
}

void FilteredComplex::toggle_arrow(const std::string& source, const std::string& target, int u_power) {
    toggle_arrow(index_of(source), index_of(target), u_power);
}

void FilteredComplex::toggle_arrow(int source, int target, int u_power) {
    if (source < 0 || source >= size() || target < 0 || target >= size())
        throw InputError("arrow endpoint out of range");
    if (u_power < 0) throw InputError("negative U power on arrow");
    Arrow a{source, target, u_power};
    auto it = std::lower_bound(arrows_.begin(), arrows_.end(), a);
    if (it != arrows_.end() && *it == a) arrows_.erase(it);
    else arrows_.insert(it, a);
}

int FilteredComplex::index_of(const std::string& id) const {
    if (auto i = find(id)) return *i;
    throw InputError("unknown generator id '" + id + "'");
}

std::optional<int> FilteredComplex::find(const std::string& id) const {
    for (int i = 0; i < size(); ++i)
        if (generators_[i].id == id) return i;
    return std::nullopt;
}

int FilteredComplex::max_alexander() const {
    int m = 0;
    for (const auto& g : generators_) m = std::max(m, g.alexander);
    return m;
}

int FilteredComplex::min_alexander() const {
    int m = 0;
    for (const auto& g : generators_) m = std::min(m, g.alexander);
    return m;
}

bool ValidationReport::has(const std::string& law) const {
    for (const auto& v : violations)
        if (v.law == law) return true;
    return false;
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (const auto& v : violations)
        os << v.law << ": " << v.detail << "\n";
    return os.str();
}

namespace {

std::string arrow_str(const FilteredComplex& c, const Arrow& a) {
    std::ostringstream os;
    os << c.gen(a.source).id << " -> U^" << a.u_power << " " << c.gen(a.target).id;
    return os.str();
}

// Backtracking search for the symmetry bijection. Candidates are grouped by
// the grading constraints; arrows are checked incrementally.
struct SymmetrySearch {
    const FilteredComplex& c;
    std::vector<std::vector<int>> candidates;
    std::vector<int> phi;
    std::vector<char> used;
    // arrows indexed by source for the incremental check
    std::vector<std::vector<Arrow>> out;
    std::set<std::tuple<int, int, int>> arrow_set;

    explicit SymmetrySearch(const FilteredComplex& cx) : c(cx) {
        const int n = c.size();
        candidates.resize(n);
        phi.assign(n, -1);
        used.assign(n, 0);
        out.resize(n);
        for (const auto& a : c.arrows()) {
            out[a.source].push_back(a);
            arrow_set.insert({a.source, a.target, a.u_power});
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const auto& g = c.gen(i);
                const auto& h = c.gen(j);
                if (h.alexander == -g.alexander &&
                    h.maslov == g.maslov - 2 * g.alexander)
                    candidates[i].push_back(j);
            }
    }

    // Image of arrow (s,t,u) under the assignment, when both ends are mapped.
    bool image_ok(const Arrow& a) const {
        int s = phi[a.source], t = phi[a.target];
        if (s < 0 || t < 0) return true;
        int u = a.u_power + c.gen(a.source).alexander - c.gen(a.target).alexander;
        if (u < 0) return false;
        return arrow_set.count({s, t, u}) > 0;
    }

    bool consistent(int i) const {
        for (const auto& a : out[i])
            if (!image_ok(a)) return false;
        for (const auto& a : c.arrows())
            if (a.target == i && !image_ok(a)) return false;
        return true;
    }

    bool assign(int i) {
        const int n = c.size();
        if (i == n) return check_full();
        for (int j : candidates[i]) {
            if (used[j]) continue;
            phi[i] = j;
            used[j] = 1;
            if (consistent(i) && assign(i + 1)) return true;
            phi[i] = -1;
            used[j] = 0;
        }
        return false;
    }

    // The incremental checks guarantee arrow images exist; a bijection on a
    // finite set with images inside the arrow set of equal cardinality is
    // automatically onto, but verify once for safety.
    bool check_full() const {
        std::set<std::tuple<int, int, int>> images;
        for (const auto& a : c.arrows()) {
            int u = a.u_power + c.gen(a.source).alexander - c.gen(a.target).alexander;
            if (u < 0 || !arrow_set.count({phi[a.source], phi[a.target], u}))
                return false;
            images.insert({phi[a.source], phi[a.target], u});
        }
        return images.size() == c.arrows().size();
    }
};

} // namespace

std::optional<std::vector<int>> find_symmetry(const FilteredComplex& c) {
    SymmetrySearch s(c);
    if (s.assign(0)) return s.phi;
    return std::nullopt;
}

ValidationReport validate(const FilteredComplex& c) {
    ValidationReport rep;

    for (const auto& a : c.arrows()) {
        const auto& src = c.gen(a.source);
        const auto& tgt = c.gen(a.target);
        if (tgt.alexander - a.u_power > src.alexander)
            rep.violations.push_back({"filtration_violated", arrow_str(c, a)});
        if (tgt.maslov - 2 * a.u_power != src.maslov - 1)
            rep.violations.push_back({"maslov_violated", arrow_str(c, a)});
    }

    // d^2 = 0: count two-step paths per (start, end, total U power) mod 2.
    std::map<std::tuple<int, int, int>, int> paths;
    std::vector<std::vector<Arrow>> out(c.size());
    for (const auto& a : c.arrows()) out[a.source].push_back(a);
    for (const auto& a : c.arrows())
        for (const auto& b : out[a.target])
            paths[{a.source, b.target, a.u_power + b.u_power}] ^= 1;
    for (const auto& [key, parity] : paths)
        if (parity) {
            std::ostringstream os;
            os << "d^2(" << c.gen(std::get<0>(key)).id << ") contains U^"
               << std::get<2>(key) << " " << c.gen(std::get<1>(key)).id;
            rep.violations.push_back({"d_squared_nonzero", os.str()});
        }

    if (c.symmetric() && !find_symmetry(c))
        rep.violations.push_back(
            {"symmetry_missing", "no generator bijection realizes (i,j) -> (j,i)"});

    return rep;
}

void require_valid(const FilteredComplex& c) {
    ValidationReport rep = validate(c);
    if (!rep.ok())
        throw ValidationError("invalid complex:\n" + rep.summary());
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& why) {
    throw InputError("cfk parse error at line " + std::to_string(line) + ": " + why);
}

int parse_int(const std::string& tok, int line, const std::string& what) {
    size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
        parse_fail(line, "expected " + what + ", got '" + tok + "'");
    }
    if (pos != tok.size())
        parse_fail(line, "expected " + what + ", got '" + tok + "'");
    return v;
}

bool reserved_id(const std::string& id) {
    if (id == "gen" || id == "d" || id == "symmetric" || id == "=" || id == "+")
        return true;
    if (id.size() > 2 && id[0] == 'U' && id[1] == '^' &&
        id.find_first_not_of("0123456789", 2) == std::string::npos)
        return true;
    return false;
}

} // namespace

FilteredComplex parse_cfk(std::istream& in) {
    FilteredComplex c;
    std::set<int> has_diff; // sources already given a d-line
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view sv(raw);
        if (auto h = sv.find('#'); h != std::string_view::npos) sv = sv.substr(0, h);
        std::istringstream is{std::string(sv)};
        std::vector<std::string> tok;
        for (std::string t; is >> t;) tok.push_back(t);
        if (tok.empty()) continue;

        if (tok[0] == "symmetric") {
            if (tok.size() != 1) parse_fail(line, "unexpected tokens after 'symmetric'");
            c.set_symmetric(true);
        } else if (tok[0] == "gen") {
            if (tok.size() != 4) parse_fail(line, "expected 'gen <id> <alexander> <maslov>'");
            if (reserved_id(tok[1])) parse_fail(line, "reserved generator id '" + tok[1] + "'");
            int a = parse_int(tok[2], line, "integer Alexander grading");
            int m = parse_int(tok[3], line, "integer Maslov grading");
            try {
                c.add_generator(tok[1], a, m);
            } catch (const InputError& e) {
                parse_fail(line, e.what());
            }
        } else if (tok[0] == "d") {
            if (tok.size() < 4 || tok[2] != "=")
                parse_fail(line, "expected 'd <source> = <term> [+ <term> ...]'");
            int src;
            try {
                src = c.index_of(tok[1]);
            } catch (const InputError&) {
                parse_fail(line, "unknown source id '" + tok[1] + "'");
            }
            if (!has_diff.insert(src).second)
                parse_fail(line, "duplicate differential for '" + tok[1] + "'");
            size_t i = 3;
            bool expect_term = true;
            while (i < tok.size()) {
                if (!expect_term) {
                    if (tok[i] != "+") parse_fail(line, "expected '+', got '" + tok[i] + "'");
                    ++i;
                    expect_term = true;
                    continue;
                }
                int power = 0;
                if (tok[i].rfind("U^", 0) == 0) {
                    power = parse_int(tok[i].substr(2), line, "U power");
                    if (power < 0) parse_fail(line, "negative U power");
                    if (++i == tok.size()) parse_fail(line, "U power without target id");
                }
                std::optional<int> tgt = c.find(tok[i]);
                if (!tgt) parse_fail(line, "unknown target id '" + tok[i] + "'");
                c.toggle_arrow(src, *tgt, power);
                ++i;
                expect_term = false;
            }
            if (expect_term) parse_fail(line, "trailing '+' without a term");
        } else {
            parse_fail(line, "unknown directive '" + tok[0] + "'");
        }
    }
    return c;
}

FilteredComplex parse_cfk(const std::string& text) {
    std::istringstream is(text);
    return parse_cfk(is);
}

FilteredComplex load_cfk_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open complex file '" + path + "'");
    return parse_cfk(in);
}

std::string write_cfk(const FilteredComplex& c) {
    std::ostringstream os;
    if (c.symmetric()) os << "symmetric\n";
    for (const auto& g : c.generators())
        os << "gen " << g.id << " " << g.alexander << " " << g.maslov << "\n";
    for (int s = 0; s < c.size(); ++s) {
        bool first = true;
        for (const auto& a : c.arrows()) {
            if (a.source != s) continue;
            if (first) os << "d " << c.gen(s).id << " =";
            else os << " +";
            first = false;
            if (a.u_power == 0) os << " " << c.gen(a.target).id;
            else os << " U^" << a.u_power << " " << c.gen(a.target).id;
        }
        if (!first) os << "\n";
    }
    return os.str();
}

} // namespace kfb
