#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kfb/complex.hpp"

using namespace kfb;

namespace {

FilteredComplex trefoil() {
    FilteredComplex c;
    c.add_generator("a", 1, 0);
    c.add_generator("b", 0, -1);
    c.add_generator("c", -1, -2);
    c.toggle_arrow("b", "a", 1);
    c.toggle_arrow("b", "c", 0);
    c.set_symmetric(true);
    return c;
}

} // namespace

TEST_CASE("validate accepts the trefoil and the unknot") {
    CHECK(validate(trefoil()).ok());
    FilteredComplex u;
    u.add_generator("x", 0, 0);
    u.set_symmetric(true);
    CHECK(validate(u).ok());
}

TEST_CASE("validate catches each law separately") {
    // d(a) = b on top of the trefoil: every single law still holds on that
    // arrow (M(b) = M(a)-1, filtration fine) but d^2(a) = U a + c survives.
    FilteredComplex c = trefoil();
    c.toggle_arrow("a", "b", 0);
    auto rep = validate(c);
    CHECK_FALSE(rep.ok());
    CHECK(rep.has("d_squared_nonzero"));
    CHECK(rep.has("symmetry_missing")); // the lone extra arrow has no mirror

    // wrong Maslov drop
    FilteredComplex m = trefoil();
    m.toggle_arrow("a", "c", 0); // M(c) = -2 != M(a) - 1
    CHECK(validate(m).has("maslov_violated"));

    // filtration: u_power too small for the Alexander climb
    FilteredComplex f;
    f.add_generator("p", 0, 0);
    f.add_generator("q", 2, 3);
    f.toggle_arrow("p", "q", 2); // A(q) - 2 = 0 <= 0 fine, M: 3-4 = -1 ok
    CHECK(validate(f).ok());
    FilteredComplex f2;
    f2.add_generator("p", 0, 0);
    f2.add_generator("q", 2, 1);
    f2.toggle_arrow("p", "q", 1); // A(q) - 1 = 1 > 0
    CHECK(validate(f2).has("filtration_violated"));

    FilteredComplex s = trefoil();
    s.toggle_arrow("b", "a", 1); // drop one arrow; symmetry pairs them
    auto srep = validate(s);
    CHECK(srep.has("symmetry_missing"));
}

TEST_CASE("symmetry bijection exists for the trefoil") {
    auto phi = find_symmetry(trefoil());
    REQUIRE(phi.has_value());
    CHECK((*phi)[0] == 2); // a <-> c
    CHECK((*phi)[1] == 1); // b fixed
    CHECK((*phi)[2] == 0);
}

TEST_CASE("cfk parser round trip and semantics") {
    const std::string text =
        "# a comment\n"
        "symmetric\n"
        "gen a 1 0\n"
        "gen b 0 -1\n"
        "gen c -1 -2\n"
        "d b = U^1 a + c\n";
    FilteredComplex c = parse_cfk(text);
    CHECK(c.size() == 3);
    CHECK(c.symmetric());
    CHECK(c.arrows().size() == 2);
    CHECK(validate(c).ok());

    // bare target means U^0
    CHECK(c.arrows()[1].u_power == 0);

    FilteredComplex again = parse_cfk(write_cfk(c));
    CHECK(again.generators() == c.generators());
    CHECK(again.arrows() == c.arrows());
    CHECK(again.symmetric() == c.symmetric());
}

TEST_CASE("writer emits the canonical bit-exact form") {
    CHECK(write_cfk(trefoil()) ==
          "symmetric\n"
          "gen a 1 0\n"
          "gen b 0 -1\n"
          "gen c -1 -2\n"
          "d b = U^1 a + c\n");
}

TEST_CASE("parse errors carry line numbers") {
    auto fails_with = [](const std::string& text, const std::string& needle) {
        try {
            parse_cfk(text);
            return std::string("no error");
        } catch (const InputError& e) {
            std::string what = e.what();
            return what.find(needle) != std::string::npos ? std::string("ok")
                                                          : what;
        }
    };
    CHECK(fails_with("gen a 1\n", "line 1") == "ok");
    CHECK(fails_with("gen a 1 0\ngen a 1 0\n", "line 2") == "ok");
    CHECK(fails_with("gen a 1 0\nd a = U^1 b\n", "unknown target") == "ok");
    CHECK(fails_with("gen a 1 0\nd b = a\n", "unknown source") == "ok");
    CHECK(fails_with("gen a x 0\n", "integer") == "ok");
    CHECK(fails_with("gen a 1 0\nd a = U^1\n", "U power without target") == "ok");
    CHECK(fails_with("gen a 1 0\nd a = a +\n", "trailing '+'") == "ok");
    CHECK(fails_with("wat\n", "unknown directive") == "ok");
    CHECK(fails_with("gen U^3 1 0\n", "reserved") == "ok");
    CHECK(fails_with("gen a 1 0\nd a = a\nd a = a\n", "duplicate differential") == "ok");
}

TEST_CASE("toggle semantics cancel duplicate arrows mod 2") {
    FilteredComplex c;
    c.add_generator("a", 1, 0);
    c.add_generator("b", 0, -1);
    c.toggle_arrow("b", "a", 1);
    c.toggle_arrow("b", "a", 1);
    CHECK(c.arrows().empty());
}

TEST_CASE("unknown generator ids throw") {
    FilteredComplex c = trefoil();
    CHECK_THROWS_AS(c.index_of("zz"), InputError);
    CHECK_THROWS_AS(c.toggle_arrow("zz", "a", 0), InputError);
}
