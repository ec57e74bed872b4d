#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kfb/errors.hpp"

namespace kfb {

// A generator x, understood as the base element [x, 0, A(x)] of the full
// U-module; U^k x then sits at filtration level (-k, A(x)-k) with Maslov
// grading M(x)-2k.
struct Generator {
    std::string id;
    int alexander = 0;
    int maslov = 0;
    bool operator==(const Generator&) const = default;
};

// d(source) contains the term U^u_power * target.
struct Arrow {
    int source = 0; // generator index
    int target = 0;
    int u_power = 0;
    auto operator<=>(const Arrow&) const = default;
};

class FilteredComplex {
public:
    int add_generator(const std::string& id, int alexander, int maslov);
    // Mod-2 semantics: adding an arrow that is already present cancels it.
    void toggle_arrow(const std::string& source, const std::string& target, int u_power);
    void toggle_arrow(int source, int target, int u_power);
    void set_symmetric(bool s) { symmetric_ = s; }

    const std::vector<Generator>& generators() const { return generators_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    bool symmetric() const { return symmetric_; }
    int size() const { return static_cast<int>(generators_.size()); }

    int index_of(const std::string& id) const; // throws InputError
    std::optional<int> find(const std::string& id) const;
    const Generator& gen(int i) const { return generators_[i]; }

    int max_alexander() const;
    int min_alexander() const;

private:
    std::vector<Generator> generators_;
    std::vector<Arrow> arrows_; // kept sorted, duplicates cancelled mod 2
    bool symmetric_ = false;
};

struct Violation {
    // One of: d_squared_nonzero, filtration_violated, maslov_violated,
    // symmetry_missing.
    std::string law;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    bool has(const std::string& law) const;
    std::string summary() const;
};

ValidationReport validate(const FilteredComplex& c);

// Throws ValidationError listing the violated laws.
void require_valid(const FilteredComplex& c);

// Searches for a generator bijection realizing the (i,j) -> (j,i) symmetry:
// A(phi x) = -A(x), M(phi x) = M(x) - 2 A(x), and the arrow set is carried to
// itself by (s,t,u) -> (phi s, phi t, u + A(s) - A(t)).
std::optional<std::vector<int>> find_symmetry(const FilteredComplex& c);

// Line-oriented .cfk format:
//   # comment
//   symmetric
//   gen <id> <alexander> <maslov>
//   d <source> = U^<n> <target> [+ U^<n> <target> ...]   (U^0 written bare)
FilteredComplex parse_cfk(std::istream& in);
FilteredComplex parse_cfk(const std::string& text);
FilteredComplex load_cfk_file(const std::string& path);
std::string write_cfk(const FilteredComplex& c);

} // namespace kfb
